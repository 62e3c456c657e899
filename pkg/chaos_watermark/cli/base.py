import json
import logging
import os
import secrets
import sys
import time
from typing import Any, Dict, List, NoReturn, Optional, Tuple, Type

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError, CommandParser
from django.utils import timezone

from rest_framework import serializers

from chaos_watermark.detect.exceptions import DetectionError, NoSamplesRetainedError
from chaos_watermark.nn.exceptions import (
    ArchitectureError,
    DatasetError,
    TrainingError,
)
from chaos_watermark.tensor_store.exceptions import TensorStoreError, UnknownLayerError
from chaos_watermark.utils.exports import Exporter
from chaos_watermark.utils.files import write_text
from chaos_watermark.verification.exceptions import VerificationError
from chaos_watermark.watermark.exceptions import (
    LayerShapeMismatchError,
    WatermarkError,
)

from . import constants
from .runlog import append_run_record

logger = logging.getLogger(__name__)

# First match wins, so subclasses come before their bases
EXIT_STATUSES: List[Tuple[Tuple[Type[Exception], ...], int]] = [
    ((UnknownLayerError, LayerShapeMismatchError), constants.EXIT_LAYER),
    ((NoSamplesRetainedError,), constants.EXIT_NO_SAMPLES),
    (
        (TensorStoreError, DatasetError, ArchitectureError, OSError),
        constants.EXIT_IO,
    ),
    (
        (
            ValidationError,
            TrainingError,
            WatermarkError,
            VerificationError,
            DetectionError,
        ),
        constants.EXIT_USAGE,
    ),
]


def exit_status_for(error: Exception) -> Optional[int]:
    for types, status in EXIT_STATUSES:
        if isinstance(error, types):
            return status
    return None


def error_message(error: Exception) -> str:
    if isinstance(error, ValidationError):
        return "; ".join(error.messages)
    if isinstance(error, OSError) and error.filename:
        return f"{error.strerror}: {error.filename}"
    return str(error)


class UsageExitParser(CommandParser):
    """Exits with status 1 on usage errors, 2 belongs to I/O and format errors"""

    def error(self, message: str) -> NoReturn:
        if self.called_from_command_line:
            self.print_usage(sys.stderr)
            self.exit(constants.EXIT_USAGE, f"{self.prog}: error: {message}\n")
        raise CommandError(f"Error: {message}", returncode=constants.EXIT_USAGE)


def read_config_file(path: str) -> Dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise ValidationError(f"{path} is not valid JSON: {e}", code="config") from e
    if not isinstance(data, dict):
        raise ValidationError(f"{path} must hold a JSON object", code="config")
    return data


class WatermarkCommand(BaseCommand):
    """
    Base for the toolkit's commands.

    Option values come from the command line first, then from the `--config`
    JSON file, then from the defaults of `options_serializer_class`. Module
    errors become a CommandError carrying the matching exit status, and every
    run appends one record to the run log.
    """

    options_serializer_class: Optional[Type[serializers.Serializer]] = None
    uses_seed = True
    requires_system_checks: List[str] = []

    inputs: List[str]
    outputs: List[str]
    resolved: Dict[str, Any]
    seed: Optional[int]

    def create_parser(
        self, prog_name: str, subcommand: str, **kwargs: Any
    ) -> CommandParser:
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.__class__ = UsageExitParser
        return parser

    def add_arguments(self, parser: CommandParser) -> None:
        if self.uses_seed:
            parser.add_argument(
                "--seed",
                type=int,
                help="Seed for all randomness, a random seed is picked and printed "
                "when omitted",
            )
        if self.options_serializer_class is not None:
            parser.add_argument(
                "--config",
                help="JSON object of option values, command-line flags win over it",
            )
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser: CommandParser) -> None:
        pass

    @property
    def command_name(self) -> str:
        return self.__module__.rsplit(".", 1)[-1]

    def resolve_options(self, options: Dict[str, Any]) -> Dict[str, Any]:
        assert self.options_serializer_class is not None
        fields = self.options_serializer_class().fields

        values: Dict[str, Any] = {}
        if options.get("config"):
            values.update(read_config_file(options["config"]))
            unknown = sorted(set(values) - set(fields))
            if unknown:
                raise ValidationError(
                    f"Unknown options in {options['config']}: {', '.join(unknown)}",
                    code="unknown_option",
                )
        values.update(
            {key: options[key] for key in fields if options.get(key) is not None}
        )

        serializer = self.options_serializer_class(data=values)
        if not serializer.is_valid():
            raise ValidationError(
                [
                    f"{name}: {' '.join(str(message) for message in messages)}"
                    for name, messages in serializer.errors.items()
                ],
                code="invalid_option",
            )
        self.resolved = dict(serializer.validated_data)
        return self.resolved

    def resolve_seed(self, options: Dict[str, Any]) -> int:
        seed = options.get("seed")
        if seed is None:
            seed = secrets.randbelow(2**32)
            self.stdout.write(f"No --seed given, using {seed}")
        self.seed = seed
        return seed

    def input_path(self, path: str) -> str:
        self.inputs.append(path)
        return path

    def output_path(self, path: str) -> str:
        self.outputs.append(path)
        return path

    def write_text(self, path: str, text: str) -> None:
        write_text(self.output_path(path), text)

    def save_export(self, path: str, exporter: Exporter) -> None:
        exporter.save(self.output_path(path))

    def execute(self, *args: Any, **options: Any) -> Optional[str]:
        self.inputs = []
        self.outputs = []
        self.resolved = {}
        self.seed = None

        started_at = timezone.now()
        start = time.monotonic()
        status = constants.EXIT_OK
        message: Optional[str] = None
        try:
            return super().execute(*args, **options)
        except CommandError as e:
            status, message = e.returncode, str(e)
            raise
        except Exception as e:
            mapped = exit_status_for(e)
            message = error_message(e)
            if mapped is None:
                status = constants.EXIT_USAGE
                raise
            status = mapped
            logger.debug("%s failed", self.command_name, exc_info=True)
            raise CommandError(message, returncode=status) from e
        finally:
            append_run_record(
                constants.RunRecordType(
                    command=self.command_name,
                    started_at=serializers.DateTimeField().to_representation(
                        started_at
                    ),
                    duration=time.monotonic() - start,
                    seed=self.seed,
                    config=self.resolved,
                    inputs=[os.path.abspath(path) for path in self.inputs],
                    outputs=[os.path.abspath(path) for path in self.outputs],
                    exit_status=status,
                    error=message,
                )
            )
