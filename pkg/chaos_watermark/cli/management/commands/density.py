import os
from typing import Any, List

from django.core.management.base import CommandParser

from chaos_watermark.cli.base import WatermarkCommand
from chaos_watermark.cli.serializers import DensityOptionsSerializer
from chaos_watermark.tensor_store.cwmt import load_weights
from chaos_watermark.watermark.density import (
    DensityData,
    DensityDistanceExporter,
    DensityExporter,
    density_histogram,
    shared_edges,
)
from chaos_watermark.watermark.exceptions import ZeroRangeError


def model_label(index: int, path: str) -> str:
    """Position-prefixed file name, unique even when a model is given twice"""
    return f"{index}_{os.path.basename(path)}"


class Command(WatermarkCommand):
    help = (
        "Writes one weight density table per model for external plotting. With "
        "--shared-range all models are binned on one grid and their pairwise L1 "
        "distances are written too."
    )
    options_serializer_class = DensityOptionsSerializer
    uses_seed = False

    def add_command_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("models", nargs="+", help="Model files")
        parser.add_argument("--out", required=True, help="Output directory")
        parser.add_argument("--layer", help="Tensor to histogram (dense_0/kernel)")
        parser.add_argument("--bins", type=int, help="Number of bins (100)")
        parser.add_argument(
            "--shared-range",
            action="store_true",
            help="Bin every model over the combined value range",
        )

    def handle(self, *args: Any, **options: Any) -> None:
        resolved = self.resolve_options(options)
        layer, bins = resolved["layer"], resolved["bins"]

        models = [
            (model_label(i, path), load_weights(self.input_path(path)))
            for i, path in enumerate(options["models"])
        ]
        edges = (
            shared_edges([weights for _, weights in models], layer, bins)
            if options["shared_range"]
            else None
        )

        out = options["out"]
        os.makedirs(out, exist_ok=True)

        densities: List[DensityData] = []
        failed: List[str] = []
        for label, weights in models:
            try:
                density = density_histogram(
                    weights, layer, bin_count=bins, label=label, edges=edges
                )
            except ZeroRangeError as e:
                self.stderr.write(f"{label}: {e}")
                failed.append(label)
                continue
            path = os.path.join(out, f"{label}.csv")
            self.save_export(path, DensityExporter(density))
            densities.append(density)
            self.stdout.write(f"{label}: {len(density.counts)} bins in {path}")

        if edges is not None and len(densities) > 1:
            exporter = DensityDistanceExporter(densities)
            self.save_export(os.path.join(out, "distances.csv"), exporter)
            for row in exporter.get_rows():
                self.stdout.write(f"d({row['a']}, {row['b']}) = {row['distance']}")

        if failed:
            raise ZeroRangeError(
                f"Layer {layer} has no value range in {', '.join(failed)}"
            )
