import os
from typing import Any

from django.core.management.base import CommandParser

from chaos_watermark.cli.base import WatermarkCommand
from chaos_watermark.cli.serializers import GenDataOptionsSerializer
from chaos_watermark.nn import constants as nn_constants
from chaos_watermark.nn.datasets import make_blobs, save_dataset


class Command(WatermarkCommand):
    help = (
        "Writes a synthetic Gaussian blob classification dataset as an IDX "
        "directory."
    )
    options_serializer_class = GenDataOptionsSerializer

    def add_command_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("out", help="Directory to write the dataset into")
        parser.add_argument("--samples", type=int, help="Number of rows (1000)")
        parser.add_argument("--features", type=int, help="Features per row (16)")
        parser.add_argument("--classes", type=int, help="Number of classes (4)")
        parser.add_argument(
            "--spread", type=float, help="Standard deviation around the centres"
        )

    def handle(self, *args: Any, **options: Any) -> None:
        resolved = self.resolve_options(options)
        seed = self.resolve_seed(options)

        data = make_blobs(
            samples=resolved["samples"],
            features=resolved["features"],
            classes=resolved["classes"],
            spread=resolved["spread"],
            seed=seed,
        )
        out = options["out"]
        save_dataset(out, data)
        for filename in (nn_constants.IMAGES_FILENAME, nn_constants.LABELS_FILENAME):
            self.output_path(os.path.join(out, filename))

        self.stdout.write(
            self.style.SUCCESS(
                f"Wrote {len(data)} rows of {data.feature_count} features "
                f"in {data.class_count} classes to {out}"
            )
        )
