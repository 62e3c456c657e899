from typing import List, Optional, Sequence, Tuple

from django.core.exceptions import ValidationError

import numpy as np
from scipy.stats import qmc

from . import constants
from .config import GAConfig, Individual


def lhs_init(config: GAConfig, rng: np.random.Generator) -> List[Individual]:
    """
    Latin hypercube sample of `config.population` individuals over the search
    box: in every dimension each of the equal-width strata holds one value.
    """
    config.box.full_clean()
    sampler = qmc.LatinHypercube(d=3, seed=rng)
    sample = qmc.scale(
        sampler.random(n=config.population), config.box.lower, config.box.upper
    )
    return [Individual.from_array(row) for row in sample]


def tournament_index(
    scores: np.ndarray, k: int, rng: np.random.Generator
) -> int:
    if not 1 <= k <= len(scores):
        raise ValidationError(
            "Tournament size %(k)s must lie between 1 and the population size "
            "%(size)s",
            code="tournament_size",
            params={"k": k, "size": len(scores)},
        )
    contenders = rng.choice(len(scores), size=k, replace=False)
    # Lowest score wins, ties go to the lowest population index
    return int(min(contenders, key=lambda i: (scores[i], i)))


def tournament_select(
    population: Sequence[Individual],
    scores: np.ndarray,
    k: int,
    rng: np.random.Generator,
) -> Individual:
    return population[tournament_index(np.asarray(scores), k, rng)]


def blend_crossover(
    p1: Individual,
    p2: Individual,
    alpha: Optional[float] = None,
    rng: Optional[np.random.Generator] = None,
    alpha_range: Tuple[float, float] = constants.ALPHA_RANGE,
) -> Individual:
    """
    Child = alpha * p1 + (1 - alpha) * p2 for each parameter. Without a fixed
    `alpha`, one is drawn uniformly from `alpha_range` using `rng`.
    """
    if alpha is None:
        if rng is None:
            raise ValueError("A random generator is needed to draw alpha")
        alpha = float(rng.uniform(*alpha_range))
    if not 0.0 <= alpha <= 1.0:
        raise ValidationError(
            "Blend factor %(alpha)r must lie in [0, 1]",
            code="alpha",
            params={"alpha": alpha},
        )
    child = alpha * p1.as_array() + (1.0 - alpha) * p2.as_array()
    return Individual.from_array(child)


def mutate(
    child: Individual, config: GAConfig, rng: np.random.Generator
) -> Individual:
    values = child.as_array()
    for i, scale in enumerate(config.mutation_scale):
        if rng.random() < config.mutation_probability:
            values[i] += rng.normal(0.0, scale)
    return Individual.from_array(config.box.clamp(values))
