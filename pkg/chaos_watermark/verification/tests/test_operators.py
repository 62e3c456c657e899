from dataclasses import replace

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

import numpy as np

from ..config import GAConfig, Individual, SearchBox
from ..factories import IndividualFactory
from ..operators import blend_crossover, lhs_init, mutate, tournament_select


class LHSInitTest(SimpleTestCase):
    def test_one_value_per_stratum(self) -> None:
        config = replace(GAConfig(), population=4)
        population = lhs_init(config, np.random.default_rng(0))

        self.assertEqual(len(population), 4)
        strata = sorted(int((ind.r - 3.57) // ((4.0 - 3.57) / 4)) for ind in population)
        self.assertEqual(strata, [0, 1, 2, 3])

    def test_stratified_in_every_dimension(self) -> None:
        config = replace(GAConfig(), population=50)
        population = lhs_init(config, np.random.default_rng(7))
        values = np.array([ind.as_array() for ind in population])
        lower, upper = config.box.lower, config.box.upper

        for dim in range(3):
            with self.subTest(dim=dim):
                width = (upper[dim] - lower[dim]) / 50
                strata = np.floor((values[:, dim] - lower[dim]) / width).astype(int)
                strata = np.minimum(strata, 49)
                self.assertEqual(sorted(strata), list(range(50)))

    def test_deterministic(self) -> None:
        config = replace(GAConfig(), population=16)
        a = lhs_init(config, np.random.default_rng(5))
        b = lhs_init(config, np.random.default_rng(5))
        self.assertEqual(a, b)

    def test_single_sample(self) -> None:
        config = replace(GAConfig(), population=1)
        population = lhs_init(config, np.random.default_rng(0))
        self.assertEqual(len(population), 1)
        self.assertTrue(config.box.contains(population[0]))

    def test_degenerate_range(self) -> None:
        config = replace(GAConfig(), box=SearchBox(x0_range=(0.5, 0.5)))
        with self.assertRaises(ValidationError):
            lhs_init(config, np.random.default_rng(0))


class TournamentSelectTest(SimpleTestCase):
    def setUp(self) -> None:
        self.population = IndividualFactory.build_batch(6)

    def test_exhaustive_tournament_returns_best(self) -> None:
        scores = np.array([0.5, 0.2, 0.9, 0.1, 0.3, 0.4])
        rng = np.random.default_rng(0)
        for _ in range(20):
            winner = tournament_select(self.population, scores, 6, rng)
            self.assertEqual(winner, self.population[3])

    def test_ties_go_to_lowest_index(self) -> None:
        scores = np.array([0.5, 0.1, 0.9, 0.1, 0.3, 0.4])
        winner = tournament_select(
            self.population, scores, 6, np.random.default_rng(1)
        )
        self.assertEqual(winner, self.population[1])

    def test_single_contender_is_uniform(self) -> None:
        scores = np.arange(6, dtype=float)
        rng = np.random.default_rng(2)
        counts = {i: 0 for i in range(6)}
        for _ in range(6000):
            winner = tournament_select(self.population, scores, 1, rng)
            counts[self.population.index(winner)] += 1
        for count in counts.values():
            self.assertGreater(count, 800)
            self.assertLess(count, 1200)

    def test_oversized_tournament(self) -> None:
        with self.assertRaises(ValidationError):
            tournament_select(
                self.population, np.zeros(6), 7, np.random.default_rng(0)
            )


class BlendCrossoverTest(SimpleTestCase):
    def test_alpha_one_returns_first_parent(self) -> None:
        p1, p2 = Individual(3.8, 0.4, 0.01), Individual(4.0, 0.6, 0.03)
        self.assertEqual(blend_crossover(p1, p2, alpha=1.0), p1)

    def test_midpoint(self) -> None:
        child = blend_crossover(
            Individual(3.8, 0.4, 0.01), Individual(4.0, 0.6, 0.03), alpha=0.5
        )
        self.assertAlmostEqual(child.r, 3.9)
        self.assertAlmostEqual(child.x0, 0.5)
        self.assertAlmostEqual(child.epsilon, 0.02)

    def test_identical_parents(self) -> None:
        parent = Individual(3.71, 0.23, 0.017)
        rng = np.random.default_rng(0)
        for alpha in (0.0, 0.3, 0.5, 0.9, None):
            child = blend_crossover(parent, parent, alpha=alpha, rng=rng)
            np.testing.assert_allclose(
                child.as_array(), parent.as_array(), rtol=1e-15, atol=0
            )

    def test_drawn_alpha_stays_between_parents(self) -> None:
        p1, p2 = Individual(3.6, 0.2, 0.01), Individual(4.0, 0.6, 0.05)
        rng = np.random.default_rng(0)
        for _ in range(100):
            child = blend_crossover(p1, p2, rng=rng, alpha_range=(0.3, 0.7))
            self.assertTrue(3.6 + 0.3 * 0.4 - 1e-12 <= child.r <= 3.88 + 1e-12)

    def test_invalid_alpha(self) -> None:
        p = Individual(3.9, 0.5, 0.01)
        with self.assertRaises(ValidationError):
            blend_crossover(p, p, alpha=1.5)


class MutateTest(SimpleTestCase):
    def test_zero_probability_is_identity(self) -> None:
        config = replace(GAConfig(), mutation_probability=0.0)
        rng = np.random.default_rng(0)
        for child in IndividualFactory.build_batch(20):
            self.assertEqual(mutate(child, config, rng), child)

    def test_result_inside_box(self) -> None:
        config = replace(
            GAConfig(), mutation_probability=1.0, mutation_scale=(1.0, 1.0, 1.0)
        )
        rng = np.random.default_rng(0)
        for child in IndividualFactory.build_batch(200):
            self.assertTrue(config.box.contains(mutate(child, config, rng)))

    def test_noise_variance(self) -> None:
        config = replace(
            GAConfig(), mutation_probability=1.0, mutation_scale=(0.01, 0.0, 0.0)
        )
        rng = np.random.default_rng(0)
        child = Individual(3.8, 0.5, 0.02)
        changes = np.array(
            [mutate(child, config, rng).r - child.r for _ in range(100_000)]
        )
        self.assertAlmostEqual(changes.var(), 1e-4, delta=1e-5)
