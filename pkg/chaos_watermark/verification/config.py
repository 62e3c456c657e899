from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from django.core.exceptions import ValidationError

import numpy as np

from chaos_watermark.chaos.params import ChaoticParams, validate_params
from chaos_watermark.utils.validators import (
    validate_range,
    validate_strictly_increasing,
)

from . import constants

Range = Tuple[float, float]


@dataclass(frozen=True)
class Individual:
    r: float
    x0: float
    epsilon: float

    def as_array(self) -> np.ndarray:
        return np.array([self.r, self.x0, self.epsilon], dtype=np.float64)

    @classmethod
    def from_array(cls, values: np.ndarray) -> "Individual":
        r, x0, epsilon = (float(value) for value in values)
        return cls(r=r, x0=x0, epsilon=epsilon)

    def to_params(self, length: Optional[int] = None) -> ChaoticParams:
        return ChaoticParams(r=self.r, x0=self.x0, epsilon=self.epsilon, length=length)


@dataclass(frozen=True)
class FitnessWeights:
    w_corr: float = constants.W_CORR
    w_mse: float = constants.W_MSE

    def full_clean(self) -> None:
        if self.w_corr < 0 or self.w_mse < 0:
            raise ValidationError(
                "Fitness weights must not be negative", code="negative_weight"
            )
        if not np.isclose(self.w_corr + self.w_mse, 1.0, rtol=0, atol=1e-9):
            raise ValidationError(
                "Fitness weights must sum to 1, got %(total)r",
                code="weights_not_normalised",
                params={"total": self.w_corr + self.w_mse},
            )


@dataclass(frozen=True)
class SearchBox:
    r_range: Range = constants.R_RANGE
    x0_range: Range = constants.X0_RANGE
    epsilon_range: Range = constants.EPSILON_RANGE

    @property
    def lower(self) -> np.ndarray:
        return np.array(
            [self.r_range[0], self.x0_range[0], self.epsilon_range[0]],
            dtype=np.float64,
        )

    @property
    def upper(self) -> np.ndarray:
        return np.array(
            [self.r_range[1], self.x0_range[1], self.epsilon_range[1]],
            dtype=np.float64,
        )

    def clamp(self, values: np.ndarray) -> np.ndarray:
        return np.clip(values, self.lower, self.upper)

    def contains(self, individual: Individual) -> bool:
        values = individual.as_array()
        return bool(np.all((values >= self.lower) & (values <= self.upper)))

    def full_clean(self) -> None:
        validate_range(self.r_range, "r")
        validate_range(self.x0_range, "x0")
        validate_range(self.epsilon_range, "epsilon")

        # Both corners must be keys the logistic map accepts
        errors: List[ValidationError] = []
        for corner in (self.lower, self.upper):
            params = Individual.from_array(corner).to_params()
            errors.extend(validate_params(params, permissive=True))
        if errors:
            raise ValidationError(errors)


@dataclass(frozen=True)
class GAConfig:
    """
    Search hyperparameters.

    `alpha` fixes the blend factor; when unset a fresh one is drawn from
    `alpha_range` for every crossover. Fitness is evaluated on leading windows
    of the target that grow through `window_schedule`; an empty schedule
    evaluates the whole target from the first generation.
    """

    population: int = constants.POPULATION
    generations: int = constants.GENERATIONS
    box: SearchBox = field(default_factory=SearchBox)
    tournament_size: int = constants.TOURNAMENT_SIZE
    alpha: Optional[float] = None
    alpha_range: Range = constants.ALPHA_RANGE
    mutation_probability: float = constants.MUTATION_PROBABILITY
    mutation_scale: Tuple[float, float, float] = constants.MUTATION_SCALE
    elite_count: int = constants.ELITE_COUNT
    improvement_threshold: float = constants.IMPROVEMENT_THRESHOLD
    patience: int = constants.PATIENCE
    seed: int = 0
    weights: FitnessWeights = field(default_factory=FitnessWeights)
    target_length: Optional[int] = constants.TARGET_LENGTH
    window_schedule: Tuple[int, ...] = constants.WINDOW_SCHEDULE

    def windows_for(self, target_length: int) -> Tuple[int, ...]:
        """Fitness windows actually used for a target of the given length"""
        windows = sorted(
            {min(window, target_length) for window in self.window_schedule}
        )
        return tuple(windows) or (target_length,)

    def full_clean(self) -> None:
        errors: List[ValidationError] = []

        def check(condition: bool, message: str, code: str) -> None:
            if not condition:
                errors.append(ValidationError(message, code=code))

        check(self.population >= 2, "Population must be at least 2", "population")
        check(self.generations >= 1, "At least one generation is needed", "generations")
        check(
            0 <= self.elite_count < self.population,
            "Elite count must be below the population size",
            "elite_count",
        )
        check(
            2 <= self.tournament_size <= self.population,
            "Tournament size must lie between 2 and the population size",
            "tournament_size",
        )
        check(
            self.alpha is None or 0.0 <= self.alpha <= 1.0,
            "Blend factor alpha must lie in [0, 1]",
            "alpha",
        )
        check(
            len(self.alpha_range) == 2
            and 0.0 <= self.alpha_range[0] <= self.alpha_range[1] <= 1.0,
            "Blend factor range must be an ordered pair inside [0, 1]",
            "alpha_range",
        )
        check(
            0.0 <= self.mutation_probability <= 1.0,
            "Mutation probability must lie in [0, 1]",
            "mutation_probability",
        )
        check(
            len(self.mutation_scale) == 3
            and all(scale >= 0 for scale in self.mutation_scale),
            "Mutation scale needs three non-negative values",
            "mutation_scale",
        )
        check(
            self.improvement_threshold >= 0,
            "Improvement threshold must not be negative",
            "improvement_threshold",
        )
        check(self.patience >= 1, "Patience must be at least 1", "patience")
        check(
            self.target_length is None or self.target_length >= 2,
            "Target length must be at least 2",
            "target_length",
        )
        check(
            all(window >= 2 for window in self.window_schedule),
            "Fitness windows need at least 2 elements",
            "window_schedule",
        )

        try:
            validate_strictly_increasing(self.window_schedule)
        except ValidationError as e:
            errors.extend(e.error_list)

        for clean in (self.box.full_clean, self.weights.full_clean):
            try:
                clean()
            except ValidationError as e:
                errors.extend(e.error_list)

        if errors:
            raise ValidationError(errors)
