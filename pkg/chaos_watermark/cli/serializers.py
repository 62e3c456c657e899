"""
Option sets of the management commands. Every field can be given as a flag
or in the `--config` JSON file; the field defaults apply otherwise.
"""
from typing import List

from rest_framework import serializers

from chaos_watermark.chaos import constants as chaos_constants
from chaos_watermark.detect import constants as detect_constants
from chaos_watermark.nn import constants as nn_constants
from chaos_watermark.verification import constants as verification_constants
from chaos_watermark.watermark import constants as watermark_constants


class IntListField(serializers.Field):
    """Comma separated integers, or a JSON list of integers"""

    default_error_messages = {"invalid": "Expected comma separated integers."}

    def to_internal_value(self, data: object) -> List[int]:
        items = data.split(",") if isinstance(data, str) else data
        if isinstance(items, (list, tuple)):
            try:
                return [int(item) for item in items if str(item).strip()]
            except (TypeError, ValueError):
                pass
        raise serializers.ValidationError(
            self.error_messages["invalid"], code="invalid"
        )

    def to_representation(self, value: List[int]) -> str:
        return ",".join(str(item) for item in value)


class TrainingOptionsSerializer(serializers.Serializer):
    optimizer = serializers.ChoiceField(
        choices=nn_constants.OPTIMIZERS, default=nn_constants.DEFAULT_OPTIMIZER
    )
    lr = serializers.FloatField(
        min_value=0.0, default=nn_constants.DEFAULT_LEARNING_RATE
    )
    momentum = serializers.FloatField(
        min_value=0.0, max_value=1.0, default=nn_constants.DEFAULT_MOMENTUM
    )
    batch_size = serializers.IntegerField(
        min_value=1, default=nn_constants.DEFAULT_BATCH_SIZE
    )
    l2 = serializers.FloatField(min_value=0.0, default=0.0)


class TrainOptionsSerializer(TrainingOptionsSerializer):
    hidden = IntListField(default=[128, 64])
    epochs = serializers.IntegerField(min_value=1, default=nn_constants.DEFAULT_EPOCHS)
    holdout = serializers.FloatField(min_value=0.01, max_value=0.9, default=0.2)

    def validate_hidden(self, value: List[int]) -> List[int]:
        if any(size < 1 for size in value):
            raise serializers.ValidationError("Layer sizes must be positive.")
        return value


class EmbedOptionsSerializer(serializers.Serializer):
    layer = serializers.CharField(default=watermark_constants.DEFAULT_LAYER)
    r = serializers.FloatField(default=chaos_constants.DEFAULT_R)
    x0 = serializers.FloatField(default=chaos_constants.DEFAULT_X0)
    epsilon = serializers.FloatField(default=chaos_constants.DEFAULT_EPSILON)
    model_id = serializers.CharField(required=False)
    epochs = serializers.IntegerField(min_value=1, default=5)


class AttackOptionsSerializer(serializers.Serializer):
    # 0 is accepted here so that TrainConfig reports it
    epochs = serializers.IntegerField(min_value=0, default=5)
    optimizer = serializers.ChoiceField(
        choices=nn_constants.OPTIMIZERS, required=False
    )
    lr = serializers.FloatField(min_value=0.0, required=False)


class VerifyOptionsSerializer(serializers.Serializer):
    pop = serializers.IntegerField(default=verification_constants.POPULATION)
    gens = serializers.IntegerField(default=verification_constants.GENERATIONS)
    patience = serializers.IntegerField(default=verification_constants.PATIENCE)
    elite = serializers.IntegerField(default=verification_constants.ELITE_COUNT)
    target_length = serializers.IntegerField(
        min_value=2, default=verification_constants.TARGET_LENGTH
    )
    windows = IntListField(default=list(verification_constants.WINDOW_SCHEDULE))
    mode = serializers.ChoiceField(
        choices=watermark_constants.EXTRACTION_MODES,
        default=watermark_constants.MODE_REFERENCE,
    )
    tol_r = serializers.FloatField(
        min_value=0.0, default=verification_constants.TOLERANCE_R
    )
    tol_x0 = serializers.FloatField(
        min_value=0.0, default=verification_constants.TOLERANCE_X0
    )
    tol_epsilon = serializers.FloatField(
        min_value=0.0, default=verification_constants.TOLERANCE_EPSILON
    )


class DensityOptionsSerializer(serializers.Serializer):
    layer = serializers.CharField(default=watermark_constants.DEFAULT_LAYER)
    bins = serializers.IntegerField(default=watermark_constants.DEFAULT_BIN_COUNT)


class DetectOptionsSerializer(serializers.Serializer):
    layer = serializers.CharField(default=watermark_constants.DEFAULT_LAYER)
    threshold = serializers.FloatField(default=detect_constants.DEFAULT_THRESHOLD)
    epochs = serializers.IntegerField(
        min_value=1, default=detect_constants.DEFAULT_EPOCHS
    )
    lr = serializers.FloatField(
        min_value=0.0, default=detect_constants.DEFAULT_LEARNING_RATE
    )
    l2 = serializers.FloatField(min_value=0.0, default=detect_constants.DEFAULT_L2)


class GenDataOptionsSerializer(serializers.Serializer):
    samples = serializers.IntegerField(min_value=1, default=1000)
    features = serializers.IntegerField(min_value=1, default=16)
    classes = serializers.IntegerField(min_value=2, max_value=255, default=4)
    spread = serializers.FloatField(min_value=0.0, default=0.05)
