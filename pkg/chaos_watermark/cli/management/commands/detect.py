from typing import Any

from django.core.management.base import CommandParser

from chaos_watermark.cli.base import WatermarkCommand
from chaos_watermark.cli.serializers import DetectOptionsSerializer
from chaos_watermark.detect.confusion import ConfusionExporter, format_confusion
from chaos_watermark.detect.constants import DEFAULT_BATCH_SIZE
from chaos_watermark.detect.features import RetentionExporter
from chaos_watermark.detect.pipeline import run_detection
from chaos_watermark.nn.datasets import load_dataset
from chaos_watermark.nn.storage import load_model
from chaos_watermark.nn.training import TrainConfig


class Command(WatermarkCommand):
    help = (
        "Trains a logistic regression on confidence-filtered layer activations "
        "to tell the original, watermarked and fine-tuned models apart, and "
        "writes its held-out confusion matrix."
    )
    options_serializer_class = DetectOptionsSerializer

    def add_command_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("original", help="Model before watermarking")
        parser.add_argument("watermarked", help="Watermarked model")
        parser.add_argument("fine_tuned", help="Watermarked and fine-tuned model")
        parser.add_argument("data", help="IDX dataset directory to probe with")
        parser.add_argument(
            "--out",
            required=True,
            help="Prefix of the report files, writes <out>.confusion.csv, "
            "<out>.retention.csv and <out>.txt",
        )
        parser.add_argument(
            "--layer", help="Layer whose activations are collected (dense_0/kernel)"
        )
        parser.add_argument(
            "--threshold",
            type=float,
            help="Minimum prediction confidence, 0.9 by default, 0.7 suits "
            "harder datasets",
        )
        parser.add_argument("--epochs", type=int, help="Detector epochs (100)")
        parser.add_argument("--lr", type=float, help="Detector learning rate")
        parser.add_argument("--l2", type=float, help="Detector L2 penalty")

    def handle(self, *args: Any, **options: Any) -> None:
        resolved = self.resolve_options(options)
        seed = self.resolve_seed(options)

        nets = [
            load_model(self.input_path(options[name]))
            for name in ("original", "watermarked", "fine_tuned")
        ]
        data = load_dataset(self.input_path(options["data"]))

        config = TrainConfig(
            learning_rate=resolved["lr"],
            epochs=resolved["epochs"],
            batch_size=DEFAULT_BATCH_SIZE,
            seed=seed,
        )
        result = run_detection(
            nets,
            data.features,
            resolved["layer"],
            threshold=resolved["threshold"],
            config=config,
            l2=resolved["l2"],
        )

        out = options["out"]
        retention = RetentionExporter(result.features)
        self.save_export(f"{out}.confusion.csv", ConfusionExporter(result.matrix))
        self.save_export(f"{out}.retention.csv", retention)

        lines = [
            f"{row['model']}: kept {row['kept']}, discarded {row['discarded']}, "
            f"used {row['used']}"
            for row in retention.get_rows()
        ]
        text = format_confusion(result.matrix) + "\n".join(lines) + "\n"
        self.write_text(f"{out}.txt", text)
        self.stdout.write(text, ending="")
