from typing import Any

from django.core.management.base import CommandError, CommandParser

from chaos_watermark.cli.base import WatermarkCommand
from chaos_watermark.cli.constants import DECISION_EXIT_STATUSES, EXIT_OK
from chaos_watermark.cli.serializers import VerifyOptionsSerializer
from chaos_watermark.tensor_store.cwmt import load_weights
from chaos_watermark.tensor_store.manifest import load_manifest
from chaos_watermark.verification.config import GAConfig
from chaos_watermark.verification.decision import Tolerances
from chaos_watermark.verification.pipeline import verify_ownership
from chaos_watermark.verification.reports import (
    TraceExporter,
    format_report,
    report_to_json,
)


class Command(WatermarkCommand):
    help = (
        "Recovers the watermark key from a suspect model with a genetic search "
        "and compares it with the manifest. Exits 0 when ownership is "
        "confirmed, 3 when rejected and 4 when inconclusive."
    )
    options_serializer_class = VerifyOptionsSerializer

    def add_command_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("suspect", help="Model file under suspicion")
        parser.add_argument(
            "reference",
            help="Pre-watermark reference model, or the watermarked model "
            "with --mode literal",
        )
        parser.add_argument("manifest", help="Manifest written by embed")
        parser.add_argument(
            "--out",
            help="Prefix of the report files (default <suspect>.verify), "
            "writes <out>.json, <out>.txt and <out>.trace.csv",
        )
        parser.add_argument("--pop", type=int, help="Population size (200)")
        parser.add_argument("--gens", type=int, help="Generation budget (300)")
        parser.add_argument(
            "--patience", type=int, help="Stagnant generations before a stage ends"
        )
        parser.add_argument("--elite", type=int, help="Elite individuals kept (4)")
        parser.add_argument(
            "--target-length", type=int, help="Leading delta elements used (4096)"
        )
        parser.add_argument(
            "--windows", help='Fitness window schedule (default "4,8,16,32")'
        )
        parser.add_argument("--mode", help="reference (default) or literal")
        parser.add_argument("--tol-r", type=float, help="Tolerance on r (0.05)")
        parser.add_argument("--tol-x0", type=float, help="Tolerance on x0 (0.05)")
        parser.add_argument(
            "--tol-epsilon", type=float, help="Tolerance on epsilon (0.005)"
        )

    def handle(self, *args: Any, **options: Any) -> None:
        resolved = self.resolve_options(options)
        seed = self.resolve_seed(options)

        suspect = load_weights(self.input_path(options["suspect"]))
        reference = load_weights(self.input_path(options["reference"]))
        manifest = load_manifest(self.input_path(options["manifest"]))

        config = GAConfig(
            population=resolved["pop"],
            generations=resolved["gens"],
            patience=resolved["patience"],
            elite_count=resolved["elite"],
            target_length=resolved["target_length"],
            window_schedule=tuple(resolved["windows"]),
            seed=seed,
        )
        tolerances = Tolerances(
            r=resolved["tol_r"], x0=resolved["tol_x0"], epsilon=resolved["tol_epsilon"]
        )
        report = verify_ownership(
            suspect,
            reference,
            manifest,
            config=config,
            tolerances=tolerances,
            mode=resolved["mode"],
        )

        out = options.get("out") or f"{options['suspect']}.verify"
        text = format_report(report)
        self.write_text(f"{out}.json", report_to_json(report))
        self.write_text(f"{out}.txt", text)
        self.save_export(f"{out}.trace.csv", TraceExporter(report))
        self.stdout.write(text, ending="")
        for warning in report.warnings:
            self.stderr.write(self.style.WARNING(warning))

        assert report.decision is not None
        decision = report.decision.decision
        status = DECISION_EXIT_STATUSES[decision]
        if status != EXIT_OK:
            raise CommandError(f"Ownership {decision}", returncode=status)
        self.stdout.write(self.style.SUCCESS(f"Ownership {decision}"))
