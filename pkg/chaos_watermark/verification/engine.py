import logging
from typing import List, Optional, Tuple, Union

from django.core.exceptions import ValidationError

import numpy as np

from chaos_watermark.watermark.embedding import DeltaSequence

from .config import GAConfig, Individual
from .exceptions import ZeroVarianceError
from .fitness import candidate_sequences, mse, population_fitness
from .operators import blend_crossover, lhs_init, mutate, tournament_index
from .reports import VerificationReport

logger = logging.getLogger(__name__)


def target_vector(
    target: Union[DeltaSequence, np.ndarray], length: Optional[int]
) -> np.ndarray:
    """Leading `length` elements of the delta in flatten order"""
    values = target.values if isinstance(target, DeltaSequence) else target
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1 or values.size < 2:
        raise ValidationError(
            "The target needs at least 2 elements", code="target_too_short"
        )
    return values[:length] if length else values


def stage_budgets(generations: int, stage_count: int) -> List[int]:
    """Even split of the generation budget, the remainder going to later stages"""
    budgets = []
    remaining = generations
    for stage in range(stage_count):
        budget = remaining // (stage_count - stage)
        budgets.append(budget)
        remaining -= budget
    return budgets


class _Search:
    """
    Mutable state of one run: the population sorted by the current stage's
    fitness, plus the running best on the final window.
    """

    def __init__(self, T: np.ndarray, windows: Tuple[int, ...], config: GAConfig):
        self.T = T
        self.windows = windows
        self.config = config
        self.rng = np.random.default_rng(config.seed)
        self.final_target = T[: windows[-1]]

        self.population = np.array(
            [individual.as_array() for individual in lhs_init(config, self.rng)]
        )
        self.scores = np.empty(len(self.population))
        self.best = self.population[0].copy()
        self.best_fitness = np.inf
        self.trace: List[float] = []

    def evaluate(self, window: int) -> None:
        scores = population_fitness(
            self.population, self.T[:window], self.config.weights
        )
        order = np.argsort(scores, kind="stable")
        self.population = self.population[order]
        self.scores = scores[order]

    def record(self) -> None:
        """Scores the elites on the final window and extends the trace"""
        elites = self.population[: max(self.config.elite_count, 1)]
        final_scores = population_fitness(
            elites, self.final_target, self.config.weights
        )
        i = int(np.argmin(final_scores))
        if final_scores[i] < self.best_fitness:
            self.best_fitness = float(final_scores[i])
            self.best = elites[i].copy()
        self.trace.append(self.best_fitness)

    def breed(self) -> None:
        config = self.config
        individuals = [Individual.from_array(row) for row in self.population]
        children = [row.copy() for row in self.population[: config.elite_count]]

        while len(children) < config.population:
            i = tournament_index(self.scores, config.tournament_size, self.rng)
            j = tournament_index(self.scores, config.tournament_size, self.rng)
            child = blend_crossover(
                individuals[i],
                individuals[j],
                alpha=config.alpha,
                rng=self.rng,
                alpha_range=config.alpha_range,
            )
            children.append(mutate(child, config, self.rng).as_array())

        self.population = np.array(children)


def run_ga(
    target: Union[DeltaSequence, np.ndarray], config: Optional[GAConfig] = None
) -> VerificationReport:
    """
    Searches the box for the (r, x0, epsilon) whose scaled logistic sequence
    best matches the target.

    Each generation keeps the elites unchanged and refills the population by
    tournament selection, blend crossover and mutation. The search walks
    through the fitness windows, each with its share of the generation budget;
    a stage ends early once `patience` generations pass without an
    improvement above `improvement_threshold`.
    """
    config = config or GAConfig()
    config.full_clean()

    T = target_vector(target, config.target_length)
    if config.weights.w_corr > 0 and np.all(T == T[0]):
        raise ZeroVarianceError("The target is constant, correlation is undefined")

    windows = config.windows_for(T.size)
    budgets = stage_budgets(config.generations, len(windows))
    search = _Search(T, windows, config)

    search.evaluate(windows[0])
    search.record()

    executed: List[int] = []
    carry = 0
    for stage, (window, budget) in enumerate(zip(windows, budgets)):
        budget += carry
        if stage:
            search.evaluate(window)

        stage_best = search.scores[0]
        stale = 0
        generation = 0
        while generation < budget and stale < config.patience:
            search.breed()
            search.evaluate(window)
            search.record()
            generation += 1

            if stage_best - search.scores[0] > config.improvement_threshold:
                stage_best = search.scores[0]
                stale = 0
            else:
                stale += 1

            logger.debug(
                "Window %d generation %d: stage best %.6g, final best %.6g",
                window,
                generation,
                search.scores[0],
                search.best_fitness,
            )

        if stale >= config.patience:
            logger.info(
                "Window %d stopped after %d generations without improvement",
                window,
                generation,
            )
        carry = budget - generation
        executed.append(generation)

    best = Individual.from_array(search.best)
    best_sequence = candidate_sequences(search.best, windows[-1])[0]
    report = VerificationReport(
        best=best,
        final_fitness=search.best_fitness,
        final_mse=mse(search.final_target, best_sequence),
        trace=tuple(search.trace),
        generations_executed=sum(executed),
        windows=windows,
        stage_generations=tuple(executed),
        target_length=int(T.size),
        best_sequence=best_sequence,
    )
    logger.info(
        "Recovered r=%r x0=%r epsilon=%r with fitness %.6g after %d generations",
        best.r,
        best.x0,
        best.epsilon,
        report.final_fitness,
        report.generations_executed,
    )
    return report
