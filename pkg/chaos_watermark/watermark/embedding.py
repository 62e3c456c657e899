import logging
from dataclasses import dataclass
from datetime import datetime
from typing import Optional, Tuple

from django.core.exceptions import ValidationError
from django.utils import timezone

import numpy as np

from chaos_watermark.chaos.params import ChaoticParams
from chaos_watermark.chaos.sequence import generate_chaotic_sequence
from chaos_watermark.tensor_store.cwmt import weights_digest
from chaos_watermark.tensor_store.manifest import WatermarkManifest
from chaos_watermark.tensor_store.weights import (
    ModelWeights,
    flatten_layer,
    unflatten_layer,
)

from . import constants
from .exceptions import LayerShapeMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DeltaSequence:
    """
    Element-wise difference between a suspect layer and the layer it is
    compared with, in flatten order.
    """

    values: np.ndarray
    layer: str
    suspect_size: int
    reference_size: int
    mode: str = constants.MODE_REFERENCE

    def __len__(self) -> int:
        return int(self.values.size)


def embed(
    reference: ModelWeights,
    layer: str,
    params: ChaoticParams,
    model_id: str = "model",
    created_at: Optional[datetime] = None,
) -> Tuple[ModelWeights, WatermarkManifest]:
    """
    Adds epsilon times the chaotic sequence to the flattened layer.

    The arithmetic runs in float64 and the result is cast back to the layer's
    dtype. An unset `params.length` is bound to the layer's element count.
    """
    tensor = reference.get(layer)

    if params.length is None:
        params = params.with_length(tensor.size)
    elif params.length != tensor.size:
        raise ValidationError(
            "Key length %(length)s does not match %(size)s elements in %(layer)s",
            code="length_mismatch",
            params={"length": params.length, "size": tensor.size, "layer": layer},
        )

    sequence = generate_chaotic_sequence(params)
    original = flatten_layer(reference, layer).astype(np.float64)
    watermarked = reference.replace(
        unflatten_layer(tensor, original + params.epsilon * sequence)
    )

    manifest = WatermarkManifest(
        model_id=model_id,
        layer=layer,
        params=params,
        reference_digest=weights_digest(reference),
        created_at=created_at or timezone.now(),
    )

    logger.info(
        "Embedded %d-element watermark into %s (epsilon=%r)",
        tensor.size,
        layer,
        params.epsilon,
    )
    return watermarked, manifest


def extract(
    suspect: ModelWeights,
    reference: ModelWeights,
    layer: str,
    mode: str = constants.MODE_REFERENCE,
) -> DeltaSequence:
    """
    Returns suspect minus the other operand for the named layer, in float64.

    In "reference" mode the other operand is the pre-watermark reference, which
    leaves epsilon times the sequence plus whatever the suspect picked up since.
    In "literal" mode the caller passes the watermarked model instead and the
    delta only holds the drift since watermarking.
    """
    if mode not in constants.EXTRACTION_MODES:
        raise ValidationError(
            "Unknown extraction mode %(mode)s",
            code="invalid_mode",
            params={"mode": mode},
        )

    suspect_tensor = suspect.get(layer)
    reference_tensor = reference.get(layer)
    if suspect_tensor.shape != reference_tensor.shape:
        raise LayerShapeMismatchError(
            f"Layer {layer!r} has shape {suspect_tensor.shape} in the suspect "
            f"and {reference_tensor.shape} in the reference"
        )

    values = flatten_layer(suspect, layer).astype(np.float64) - flatten_layer(
        reference, layer
    ).astype(np.float64)
    values.setflags(write=False)

    return DeltaSequence(
        values=values,
        layer=layer,
        suspect_size=suspect_tensor.size,
        reference_size=reference_tensor.size,
        mode=mode,
    )
