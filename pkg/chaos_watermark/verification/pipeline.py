import dataclasses
from typing import List, Optional

from chaos_watermark.tensor_store.manifest import WatermarkManifest, check_manifest
from chaos_watermark.tensor_store.weights import ModelWeights
from chaos_watermark.watermark import constants as watermark_constants
from chaos_watermark.watermark.embedding import extract

from .config import GAConfig
from .decision import Tolerances, decide_ownership
from .engine import run_ga
from .reports import VerificationReport


def verify_ownership(
    suspect: ModelWeights,
    reference: ModelWeights,
    manifest: WatermarkManifest,
    config: Optional[GAConfig] = None,
    tolerances: Optional[Tolerances] = None,
    mode: str = watermark_constants.MODE_REFERENCE,
) -> VerificationReport:
    """Extracts the delta, recovers the key and decides against the manifest"""
    warnings: List[str] = []
    if mode == watermark_constants.MODE_REFERENCE:
        warnings = check_manifest(manifest, reference)

    delta = extract(suspect, reference, manifest.layer, mode=mode)
    report = dataclasses.replace(run_ga(delta, config), warnings=tuple(warnings))
    return report.with_decision(decide_ownership(report, manifest.params, tolerances))
