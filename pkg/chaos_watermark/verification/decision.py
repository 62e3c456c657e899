import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, Optional

from chaos_watermark.chaos.params import ChaoticParams

from . import constants
from .config import Individual

if TYPE_CHECKING:
    from .reports import VerificationReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Tolerances:
    r: float = constants.TOLERANCE_R
    x0: float = constants.TOLERANCE_X0
    epsilon: float = constants.TOLERANCE_EPSILON

    def as_dict(self) -> Dict[str, float]:
        return {"r": self.r, "x0": self.x0, "epsilon": self.epsilon}


@dataclass(frozen=True)
class OwnershipDecision:
    decision: str
    differences: Dict[str, float]
    tolerances: Tolerances


def parameter_differences(
    recovered: Individual, claimed: ChaoticParams
) -> Dict[str, float]:
    """
    Absolute differences per parameter. x0 and 1 - x0 start the same orbit,
    so the x0 difference is taken to whichever of the two is closer.
    """
    return {
        "r": abs(recovered.r - claimed.r),
        "x0": min(
            abs(recovered.x0 - claimed.x0), abs((1.0 - recovered.x0) - claimed.x0)
        ),
        "epsilon": abs(recovered.epsilon - claimed.epsilon),
    }


def decide_ownership(
    report: "VerificationReport",
    claimed: ChaoticParams,
    tolerances: Optional[Tolerances] = None,
) -> OwnershipDecision:
    """
    Confirmed when every difference is within its tolerance, rejected when any
    exceeds twice its tolerance, inconclusive in between.
    """
    tolerances = tolerances or Tolerances()
    differences = parameter_differences(report.best, claimed)
    bounds = tolerances.as_dict()

    if all(differences[name] <= bounds[name] for name in differences):
        decision = constants.DECISIONS.confirmed
    elif any(
        differences[name] > constants.REJECTION_FACTOR * bounds[name]
        for name in differences
    ):
        decision = constants.DECISIONS.rejected
    else:
        decision = constants.DECISIONS.inconclusive

    logger.info(
        "Ownership %s (|dr|=%.6g, |dx0|=%.6g, |deps|=%.6g)",
        decision,
        differences["r"],
        differences["x0"],
        differences["epsilon"],
    )
    return OwnershipDecision(
        decision=decision, differences=differences, tolerances=tolerances
    )
