import factory
import numpy as np
from factory import fuzzy

from . import constants
from .config import GAConfig, Individual
from .reports import VerificationReport


class IndividualFactory(factory.Factory):
    class Meta:
        model = Individual

    r = fuzzy.FuzzyFloat(*constants.R_RANGE)
    x0 = fuzzy.FuzzyFloat(*constants.X0_RANGE)
    epsilon = fuzzy.FuzzyFloat(*constants.EPSILON_RANGE)


class GAConfigFactory(factory.Factory):
    """A search small enough for unit tests"""

    class Meta:
        model = GAConfig

    population = 40
    generations = 40
    elite_count = 2
    patience = 10
    seed = factory.Sequence(lambda n: n)


class VerificationReportFactory(factory.Factory):
    class Meta:
        model = VerificationReport

    best = factory.SubFactory(IndividualFactory)
    final_fitness = 1e-6
    final_mse = 1e-8
    trace = (0.5, 0.25, 0.25, 1e-6)
    generations_executed = 3
    windows = (4, 8)
    stage_generations = (2, 1)
    target_length = 256
    best_sequence = factory.LazyFunction(lambda: np.linspace(0.001, 0.009, 8))
