from typing import Any, Dict

from django.core.management.base import CommandParser

from chaos_watermark.cli.base import WatermarkCommand
from chaos_watermark.cli.serializers import AttackOptionsSerializer
from chaos_watermark.nn.datasets import load_dataset, split_half
from chaos_watermark.nn.metrics import StageAccuracyExporter, evaluate
from chaos_watermark.nn.storage import (
    architecture_path,
    load_model,
    load_train_config,
    save_model,
    save_train_config,
    train_config_path,
)
from chaos_watermark.nn.training import TrainConfig, fine_tune_config, train
from chaos_watermark.tensor_store.cwmt import load_weights


class Command(WatermarkCommand):
    help = (
        "Fine-tuning attack: continues training a model on the first half of a "
        "dataset at a tenth of its learning rate and reports the accuracy on "
        "the second half before and after."
    )
    options_serializer_class = AttackOptionsSerializer

    def add_command_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("model", help="Model file to attack")
        parser.add_argument("data", help="IDX dataset directory")
        parser.add_argument("--out", required=True, help="Attacked model file")
        parser.add_argument("--epochs", type=int, help="Fine-tuning epochs (5)")
        parser.add_argument(
            "--optimizer",
            help="Optimizer, defaults to the one the model was trained with",
        )
        parser.add_argument(
            "--lr",
            type=float,
            help="Fine-tuning learning rate, defaults to a tenth of the training one",
        )

    def handle(self, *args: Any, **options: Any) -> None:
        resolved = self.resolve_options(options)
        seed = self.resolve_seed(options)

        source = self.input_path(options["model"])
        net = load_model(source)
        dtype = load_weights(source).tensors[0].dtype
        data = load_dataset(self.input_path(options["data"]))
        tune_set, eval_set = split_half(data)

        overrides: Dict[str, Any] = {"epochs": resolved["epochs"], "seed": seed}
        if "optimizer" in resolved:
            overrides["optimizer"] = resolved["optimizer"]
        if "lr" in resolved:
            overrides["learning_rate"] = resolved["lr"]
        base = load_train_config(source) or TrainConfig()
        config = fine_tune_config(base, **overrides)

        before = evaluate(net, eval_set)
        attacked = train(net, tune_set, config).net
        after = evaluate(attacked, eval_set)

        out = options["out"]
        save_model(attacked, self.output_path(out), dtype=dtype)
        self.output_path(architecture_path(out))
        save_train_config(config, out)
        self.output_path(train_config_path(out))

        stages = [("before", before), ("after", after)]
        self.save_export(f"{out}.accuracy.csv", StageAccuracyExporter(stages))
        report = "".join(
            f"Accuracy {name}: {metrics.accuracy:.4f} "
            f"on {int(metrics.support.sum())} held-back samples\n"
            for name, metrics in stages
        )
        self.write_text(f"{out}.accuracy.txt", report)

        self.stdout.write(report, ending="")
        self.stdout.write(self.style.SUCCESS(f"Attacked model written to {out}"))
