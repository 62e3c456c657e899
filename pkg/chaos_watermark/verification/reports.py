import dataclasses
import json
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Optional, Tuple

import numpy as np
from rest_framework import serializers

from chaos_watermark.utils.exports import Exporter

from .config import Individual
from .decision import OwnershipDecision


@dataclass(frozen=True)
class VerificationReport:
    """
    Outcome of a parameter search.

    `trace[g]` is the best fitness on the final window seen up to generation
    `g`, with generation 0 being the initial sample. `final_fitness` and
    `final_mse` are measured on the final window as well, and `best_sequence`
    is the best individual's sequence over that window. `warnings` holds the
    manifest checks that did not stop the search, such as a reference digest
    that differs from the manifest.
    """

    best: Individual
    final_fitness: float
    final_mse: float
    trace: Tuple[float, ...]
    generations_executed: int
    windows: Tuple[int, ...]
    stage_generations: Tuple[int, ...]
    target_length: int
    best_sequence: np.ndarray
    decision: Optional[OwnershipDecision] = None
    warnings: Tuple[str, ...] = ()

    @property
    def differences(self) -> Optional[Dict[str, float]]:
        return self.decision.differences if self.decision else None

    def with_decision(self, decision: OwnershipDecision) -> "VerificationReport":
        return dataclasses.replace(self, decision=decision)


class IndividualSerializer(serializers.Serializer):
    r = serializers.FloatField()
    x0 = serializers.FloatField()
    epsilon = serializers.FloatField()


class VerificationReportSerializer(serializers.Serializer):
    best = IndividualSerializer()
    final_fitness = serializers.FloatField()
    final_mse = serializers.FloatField()
    generations_executed = serializers.IntegerField()
    target_length = serializers.IntegerField()
    windows = serializers.ListField(child=serializers.IntegerField())
    stage_generations = serializers.ListField(child=serializers.IntegerField())
    trace = serializers.ListField(child=serializers.FloatField())
    decision = serializers.SerializerMethodField()
    differences = serializers.DictField(child=serializers.FloatField())
    tolerances = serializers.SerializerMethodField()
    warnings = serializers.ListField(child=serializers.CharField())

    def get_decision(self, report: VerificationReport) -> Optional[str]:
        return report.decision.decision if report.decision else None

    def get_tolerances(self, report: VerificationReport) -> Optional[Dict[str, float]]:
        return report.decision.tolerances.as_dict() if report.decision else None


def report_to_json(report: VerificationReport) -> str:
    return json.dumps(VerificationReportSerializer(report).data, indent=2) + "\n"


def format_report(report: VerificationReport) -> str:
    """Human-readable summary followed by the full trace"""
    best = report.best
    lines = [
        "Recovered parameters",
        f"  r       = {best.r!r}",
        f"  x0      = {best.x0!r}",
        f"  epsilon = {best.epsilon!r}",
        f"Final fitness: {report.final_fitness!r}",
        f"Final MSE: {report.final_mse!r}",
        f"Generations executed: {report.generations_executed}",
        f"Target length: {report.target_length}",
        "Fitness windows: "
        + ", ".join(
            f"{window} ({count} generations)"
            for window, count in zip(report.windows, report.stage_generations)
        ),
    ]
    lines.extend(f"Warning: {warning}" for warning in report.warnings)

    if report.decision:
        lines.append(f"Decision: {report.decision.decision}")
        tolerances = report.decision.tolerances.as_dict()
        for name, difference in report.decision.differences.items():
            lines.append(
                f"  |d{name}| = {difference:.6g} (tolerance {tolerances[name]:g})"
            )

    lines.append("Best fitness by generation")
    lines.extend(
        f"  {generation:>5} {value!r}" for generation, value in enumerate(report.trace)
    )
    return "\n".join(lines) + "\n"


class TraceExporter(Exporter):
    fields = ["generation", "best_fitness"]

    def __init__(self, report: VerificationReport):
        self.report = report

    def get_rows(self) -> Iterable[Dict[str, Any]]:
        for generation, value in enumerate(self.report.trace):
            yield {"generation": generation, "best_fitness": repr(float(value))}
