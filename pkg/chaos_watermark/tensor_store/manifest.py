import json
import logging
from dataclasses import dataclass
from datetime import datetime
from typing import Any, Dict, List

from rest_framework import serializers

from chaos_watermark.chaos.params import ChaoticParams
from chaos_watermark.utils.files import atomic_write

from . import constants
from .cwmt import weights_digest
from .exceptions import ManifestError
from .weights import ModelWeights

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WatermarkManifest:
    """
    Binds a model and one of its layers to the watermark key embedded in it.

    This is secret material: whoever holds it can regenerate the watermark.
    """

    model_id: str
    layer: str
    params: ChaoticParams
    reference_digest: str
    created_at: datetime
    flatten_order: str = constants.FLATTEN_ROW_MAJOR
    tensor_scope: str = constants.TENSOR_SCOPE_KERNEL
    format_version: int = constants.MANIFEST_FORMAT_VERSION


class ChaoticParamsSerializer(serializers.Serializer):
    r = serializers.FloatField()
    x0 = serializers.FloatField()
    epsilon = serializers.FloatField()
    length = serializers.IntegerField(min_value=0)


class WatermarkManifestSerializer(serializers.Serializer):
    format_version = serializers.IntegerField(
        min_value=1, max_value=constants.MANIFEST_FORMAT_VERSION
    )
    model_id = serializers.CharField()
    layer = serializers.CharField()
    params = ChaoticParamsSerializer()
    flatten_order = serializers.ChoiceField(choices=[constants.FLATTEN_ROW_MAJOR])
    tensor_scope = serializers.ChoiceField(choices=[constants.TENSOR_SCOPE_KERNEL])
    reference_digest = serializers.RegexField(r"^[0-9a-f]{64}$")
    created_at = serializers.DateTimeField()

    def create(self, validated_data: Dict[str, Any]) -> WatermarkManifest:
        params = ChaoticParams(**validated_data.pop("params"))
        return WatermarkManifest(params=params, **validated_data)


def manifest_to_json(manifest: WatermarkManifest) -> str:
    # json.dumps writes floats with repr, which round-trips exactly
    return json.dumps(WatermarkManifestSerializer(manifest).data, indent=2) + "\n"


def manifest_from_json(text: str) -> WatermarkManifest:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ManifestError(f"Manifest is not valid JSON: {e}") from e

    serializer = WatermarkManifestSerializer(data=data)
    if not serializer.is_valid():
        raise ManifestError(f"Invalid manifest: {json.dumps(serializer.errors)}")
    return serializer.save()


def save_manifest(manifest: WatermarkManifest, path: str) -> None:
    with atomic_write(path, mode="w", encoding="utf-8") as fh:
        fh.write(manifest_to_json(manifest))
    logger.info("Saved manifest for layer %s to %s", manifest.layer, path)


def load_manifest(path: str) -> WatermarkManifest:
    with open(path, encoding="utf-8") as fh:
        return manifest_from_json(fh.read())


def check_manifest(manifest: WatermarkManifest, reference: ModelWeights) -> List[str]:
    """
    Checks the manifest against the weights it claims to describe.

    A missing layer or a length that does not match the layer raises. A digest
    that differs from the reference weights is returned as a warning.
    """
    tensor = reference.get(manifest.layer)
    if manifest.params.length != tensor.size:
        raise ManifestError(
            f"Manifest length {manifest.params.length} does not match "
            f"{tensor.size} elements in layer {manifest.layer!r}"
        )

    warnings = []
    digest = weights_digest(reference)
    if digest != manifest.reference_digest:
        warnings.append(
            f"Reference digest {digest} differs from manifest digest "
            f"{manifest.reference_digest}"
        )

    for warning in warnings:
        logger.warning(warning)
    return warnings
