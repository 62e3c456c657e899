from django.test import SimpleTestCase

from chaos_watermark.chaos.params import ChaoticParams

from ..config import Individual
from ..decision import Tolerances, decide_ownership, parameter_differences
from ..factories import VerificationReportFactory

CLAIM = ChaoticParams(r=3.9, x0=0.5, epsilon=0.01)


class DecideOwnershipTest(SimpleTestCase):
    def test_attacked_model_differences_confirm(self) -> None:
        report = VerificationReportFactory(
            best=Individual(r=3.911288, x0=0.497336, epsilon=0.011182)
        )
        decision = decide_ownership(report, CLAIM)

        self.assertEqual(decision.decision, "confirmed")
        self.assertAlmostEqual(decision.differences["r"], 0.011288)
        self.assertAlmostEqual(decision.differences["x0"], 0.002664)
        self.assertAlmostEqual(decision.differences["epsilon"], 0.001182)
        self.assertEqual(decision.tolerances, Tolerances(0.05, 0.05, 0.005))

    def test_random_model_differences_reject(self) -> None:
        report = VerificationReportFactory(
            best=Individual(r=3.646363, x0=0.27068, epsilon=0.05)
        )
        self.assertEqual(decide_ownership(report, CLAIM).decision, "rejected")

    def test_boundary_is_confirmed(self) -> None:
        claim = ChaoticParams(r=3.5, x0=0.25, epsilon=0.25)
        report = VerificationReportFactory(
            best=Individual(r=3.75, x0=0.5, epsilon=0.125)
        )
        decision = decide_ownership(report, claim, Tolerances(0.25, 0.25, 0.125))
        self.assertEqual(decision.decision, "confirmed")

    def test_between_tolerance_and_twice_is_inconclusive(self) -> None:
        report = VerificationReportFactory(
            best=Individual(r=3.97, x0=0.5, epsilon=0.01)
        )
        self.assertEqual(decide_ownership(report, CLAIM).decision, "inconclusive")

    def test_any_difference_beyond_twice_rejects(self) -> None:
        report = VerificationReportFactory(
            best=Individual(r=3.9, x0=0.5, epsilon=0.0211)
        )
        self.assertEqual(decide_ownership(report, CLAIM).decision, "rejected")


class ParameterDifferencesTest(SimpleTestCase):
    def test_mirrored_start_value(self) -> None:
        differences = parameter_differences(
            Individual(r=3.9, x0=0.8, epsilon=0.01),
            ChaoticParams(r=3.9, x0=0.2, epsilon=0.01),
        )
        self.assertAlmostEqual(differences["x0"], 0.0)
        self.assertEqual(differences["r"], 0.0)
