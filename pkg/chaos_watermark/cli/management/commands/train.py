from typing import Any

from django.core.management.base import CommandParser

from chaos_watermark.cli.base import WatermarkCommand
from chaos_watermark.cli.serializers import TrainOptionsSerializer
from chaos_watermark.nn.datasets import load_dataset, train_test_split
from chaos_watermark.nn.metrics import MetricsExporter, evaluate, format_metrics
from chaos_watermark.nn.network import DenseNet
from chaos_watermark.nn.storage import (
    architecture_path,
    save_model,
    save_train_config,
    train_config_path,
)
from chaos_watermark.nn.training import TrainConfig, train


class Command(WatermarkCommand):
    help = (
        "Trains a dense softmax classifier on an IDX dataset directory and "
        "writes the model with its classification report."
    )
    options_serializer_class = TrainOptionsSerializer

    def add_command_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("data", help="Directory with images.idx and labels.idx")
        parser.add_argument("--out", required=True, help="Model file to write")
        parser.add_argument(
            "--hidden", help='Hidden layer sizes, comma separated (default "128,64")'
        )
        parser.add_argument("--optimizer", help="sgd or adam (default adam)")
        parser.add_argument("--lr", type=float, help="Learning rate (default 0.001)")
        parser.add_argument("--momentum", type=float, help="SGD momentum")
        parser.add_argument("--batch-size", type=int, help="Mini-batch size")
        parser.add_argument("--epochs", type=int, help="Training epochs")
        parser.add_argument("--l2", type=float, help="L2 penalty on the kernels")
        parser.add_argument(
            "--holdout",
            type=float,
            help="Fraction of rows held out for the report (default 0.2)",
        )

    def handle(self, *args: Any, **options: Any) -> None:
        resolved = self.resolve_options(options)
        seed = self.resolve_seed(options)

        data = load_dataset(self.input_path(options["data"]))
        train_set, test_set = train_test_split(
            data, holdout=resolved["holdout"], seed=seed
        )
        config = TrainConfig(
            optimizer=resolved["optimizer"],
            learning_rate=resolved["lr"],
            momentum=resolved["momentum"],
            batch_size=resolved["batch_size"],
            epochs=resolved["epochs"],
            l2=resolved["l2"],
            seed=seed,
        )
        net = DenseNet.build(
            (data.feature_count, *resolved["hidden"], data.class_count), seed=seed
        )
        result = train(net, train_set, config)
        metrics = evaluate(result.net, test_set)

        out = options["out"]
        save_model(result.net, self.output_path(out))
        self.output_path(architecture_path(out))
        save_train_config(config, out)
        self.output_path(train_config_path(out))
        self.save_export(f"{out}.metrics.csv", MetricsExporter(metrics))
        report = format_metrics(metrics)
        self.write_text(f"{out}.metrics.txt", report)

        self.stdout.write(report, ending="")
        self.stdout.write(self.style.SUCCESS(f"Model written to {out}"))
