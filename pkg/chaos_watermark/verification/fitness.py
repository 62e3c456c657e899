from typing import Tuple

import numpy as np

from chaos_watermark.chaos.sequence import generate_chaotic_batch

from .config import FitnessWeights, Individual
from .exceptions import LengthMismatchError, ZeroVarianceError


def _pair(
    T: np.ndarray, G: np.ndarray, minimum: int
) -> Tuple[np.ndarray, np.ndarray]:
    T = np.asarray(T, dtype=np.float64)
    G = np.asarray(G, dtype=np.float64)
    if T.ndim != 1 or T.shape != G.shape:
        raise LengthMismatchError(
            f"Vectors must be one-dimensional and equally long, got {T.shape} "
            f"and {G.shape}"
        )
    if T.size < minimum:
        raise LengthMismatchError(
            f"At least {minimum} elements are needed, got {T.size}"
        )
    return T, G


def mse(T: np.ndarray, G: np.ndarray) -> float:
    T, G = _pair(T, G, minimum=1)
    return float(np.mean((T - G) ** 2))


def correlation_distance(T: np.ndarray, G: np.ndarray) -> float:
    """One minus the Pearson correlation of T and G, clipped to [0, 2]"""
    T, G = _pair(T, G, minimum=2)
    t = T - T.mean()
    g = G - G.mean()
    denominator = np.sqrt(np.sum(t * t)) * np.sqrt(np.sum(g * g))
    if denominator == 0.0:
        raise ZeroVarianceError("Correlation is undefined for a constant vector")
    return float(np.clip(1.0 - np.sum(t * g) / denominator, 0.0, 2.0))


def candidate_sequences(population: np.ndarray, length: int) -> np.ndarray:
    """epsilon * logistic sequence for each (r, x0, epsilon) row"""
    population = np.atleast_2d(population)
    raw = generate_chaotic_batch(population[:, 0], population[:, 1], length)
    return population[:, 2:3] * raw


def population_fitness(
    population: np.ndarray, target: np.ndarray, weights: FitnessWeights
) -> np.ndarray:
    """
    Weighted correlation distance plus MSE for every row of `population`
    against `target`. Rows whose sequence has no variance score infinity.
    """
    target = np.asarray(target, dtype=np.float64)
    G = candidate_sequences(population, target.size)

    errors = np.mean((G - target) ** 2, axis=1)
    if weights.w_corr == 0:
        return weights.w_mse * errors

    t = target - target.mean()
    g = G - G.mean(axis=1, keepdims=True)
    denominator = np.sqrt(np.sum(g * g, axis=1)) * np.sqrt(np.sum(t * t))
    numerator = g @ t
    valid = denominator > 0
    correlation = np.full(len(G), np.inf)
    correlation[valid] = np.clip(
        1.0 - numerator[valid] / denominator[valid], 0.0, 2.0
    )
    return weights.w_corr * correlation + weights.w_mse * errors


def fitness(
    candidate: Individual, target: np.ndarray, weights: FitnessWeights
) -> float:
    """Lower is better, zero when the candidate regenerates the target exactly"""
    target = np.asarray(target, dtype=np.float64)
    if target.ndim != 1 or target.size < 2:
        raise LengthMismatchError("The target needs at least 2 elements")
    scores = population_fitness(candidate.as_array()[np.newaxis], target, weights)
    return float(scores[0])
