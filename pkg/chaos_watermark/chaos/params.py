import dataclasses
import math
from dataclasses import dataclass
from typing import List, Optional

from django.core.exceptions import ValidationError

from . import constants


@dataclass(frozen=True)
class ChaoticParams:
    """
    Secret watermark key: logistic map control parameter `r`, starting value
    `x0` and embedding strength `epsilon`. `length` is the number of sequence
    elements and stays unset until the key is bound to a layer.
    """

    r: float
    x0: float
    epsilon: float
    length: Optional[int] = None

    def full_clean(self, permissive: bool = False) -> None:
        errors = validate_params(self, permissive=permissive)
        if errors:
            raise ValidationError(errors)

    def with_length(self, length: int) -> "ChaoticParams":
        return dataclasses.replace(self, length=length)


def validate_params(
    params: ChaoticParams, permissive: bool = False
) -> List[ValidationError]:
    """
    Returns every violated constraint, an empty list means the key is valid.

    `permissive` widens r to (0, 4], which is only meant for search boxes.
    """
    errors = []

    if not 0 < params.x0 < 1:
        errors.append(
            ValidationError(
                "x0 must lie in the open interval (0, 1), got %(x0)r",
                code="x0_out_of_range",
                params={"x0": params.x0},
            )
        )

    if permissive:
        r_valid = constants.PERMISSIVE_R_MIN < params.r <= constants.CHAOTIC_R_MAX
    else:
        r_valid = constants.CHAOTIC_R_MIN <= params.r <= constants.CHAOTIC_R_MAX
    if not r_valid:
        errors.append(
            ValidationError(
                "r must lie in the chaotic band [%(low)s, %(high)s], got %(r)r",
                code="r_out_of_range",
                params={
                    "r": params.r,
                    "low": (
                        constants.PERMISSIVE_R_MIN
                        if permissive
                        else constants.CHAOTIC_R_MIN
                    ),
                    "high": constants.CHAOTIC_R_MAX,
                },
            )
        )

    if not (params.epsilon > 0 and math.isfinite(params.epsilon)):
        errors.append(
            ValidationError(
                "epsilon must be a positive number, got %(epsilon)r",
                code="epsilon_not_positive",
                params={"epsilon": params.epsilon},
            )
        )

    if params.length is not None and params.length < 0:
        errors.append(
            ValidationError(
                "length must not be negative, got %(length)r",
                code="negative_length",
                params={"length": params.length},
            )
        )

    return errors
