import logging
import os
from typing import Any

from django.core.management.base import CommandParser

from chaos_watermark.chaos.params import ChaoticParams
from chaos_watermark.cli.base import WatermarkCommand
from chaos_watermark.cli.serializers import EmbedOptionsSerializer
from chaos_watermark.nn.datasets import load_dataset
from chaos_watermark.nn.network import DenseNet
from chaos_watermark.nn.storage import (
    copy_sidecars,
    load_architecture,
    load_train_config,
)
from chaos_watermark.nn.training import TrainConfig, fine_tune
from chaos_watermark.tensor_store.cwmt import load_weights, save_weights
from chaos_watermark.tensor_store.manifest import save_manifest
from chaos_watermark.watermark.embedding import embed

logger = logging.getLogger(__name__)


def same_directory(a: str, b: str) -> bool:
    return os.path.dirname(os.path.abspath(a)) == os.path.dirname(os.path.abspath(b))


class Command(WatermarkCommand):
    help = (
        "Adds epsilon times a logistic map sequence to one layer of a model and "
        "writes the watermarked model with its manifest. With --fine-tune-data "
        "the watermarked model is fine-tuned at a tenth of its learning rate."
    )
    options_serializer_class = EmbedOptionsSerializer

    def add_command_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("model", help="Model file to watermark")
        parser.add_argument("--out", required=True, help="Watermarked model file")
        parser.add_argument(
            "--manifest",
            required=True,
            help="Manifest file, keep it away from the distributed model",
        )
        parser.add_argument("--layer", help="Tensor to watermark (dense_0/kernel)")
        parser.add_argument("--r", type=float, help="Logistic map parameter (3.9)")
        parser.add_argument("--x0", type=float, help="Starting value (0.5)")
        parser.add_argument("--epsilon", type=float, help="Embedding strength (0.01)")
        parser.add_argument(
            "--model-id", help="Identifier stored in the manifest (the file name)"
        )
        parser.add_argument(
            "--fine-tune-data",
            help="IDX dataset directory to fine-tune the watermarked model on",
        )
        parser.add_argument("--epochs", type=int, help="Fine-tuning epochs (5)")

    def handle(self, *args: Any, **options: Any) -> None:
        resolved = self.resolve_options(options)
        fine_tune_data = options.get("fine_tune_data")
        if fine_tune_data:
            self.resolve_seed(options)

        params = ChaoticParams(
            r=resolved["r"], x0=resolved["x0"], epsilon=resolved["epsilon"]
        )
        params.full_clean()

        source = self.input_path(options["model"])
        out = options["out"]
        manifest_path = options["manifest"]
        model_id = resolved.get("model_id") or os.path.basename(out)

        reference = load_weights(source)
        watermarked, manifest = embed(
            reference, resolved["layer"], params, model_id=model_id
        )

        result = watermarked
        if fine_tune_data:
            data = load_dataset(self.input_path(fine_tune_data))
            description = load_architecture(source)
            net = DenseNet.from_weights(
                watermarked,
                activations=[layer["activation"] for layer in description["layers"]],
            )
            base = load_train_config(source) or TrainConfig()
            tuned = fine_tune(
                net, data, base, epochs=resolved["epochs"], seed=self.seed
            )
            result = tuned.to_weights(dtype=reference.get(resolved["layer"]).dtype)

            snapshot = f"{out}.embedded"
            save_weights(watermarked, self.output_path(snapshot))
            copy_sidecars(source, snapshot)

        save_weights(result, self.output_path(out))
        copy_sidecars(source, out)
        save_manifest(manifest, self.output_path(manifest_path))
        if same_directory(manifest_path, out):
            logger.warning("Manifest %s sits next to the model %s", manifest_path, out)
            self.stderr.write(
                self.style.WARNING(
                    f"Manifest {manifest_path} sits next to the model {out}, "
                    "move it before distributing the model"
                )
            )

        self.stdout.write(
            f"Watermarked {manifest.layer} with r={params.r} x0={params.x0} "
            f"epsilon={params.epsilon}"
        )
        self.stdout.write(self.style.SUCCESS(f"Model written to {out}"))
        self.stdout.write(f"Manifest written to {manifest_path}")
