"""
Models are stored as a CWMT weight file plus a small JSON descriptor next to
it (`<model>.arch.json`) holding the layer sizes and activation tags.
"""
import json
import logging
import os
from typing import Any, Dict, List, Optional

import numpy as np
from rest_framework import serializers

from chaos_watermark.tensor_store.cwmt import load_weights, save_weights
from chaos_watermark.utils.files import atomic_write

from . import constants
from .exceptions import ArchitectureError
from .network import DenseNet
from .training import TrainConfig

logger = logging.getLogger(__name__)


class LayerSpecSerializer(serializers.Serializer):
    name = serializers.RegexField(r"^dense_\d+$")
    units = serializers.IntegerField(min_value=1)
    activation = serializers.ChoiceField(choices=constants.ACTIVATIONS)


class ArchitectureSerializer(serializers.Serializer):
    format_version = serializers.IntegerField(
        min_value=constants.ARCHITECTURE_FORMAT_VERSION,
        max_value=constants.ARCHITECTURE_FORMAT_VERSION,
    )
    input_dim = serializers.IntegerField(min_value=1)
    layers = LayerSpecSerializer(many=True, allow_empty=False)


def architecture_path(model_path: str) -> str:
    return f"{model_path}{constants.ARCHITECTURE_SUFFIX}"


def describe(net: DenseNet) -> Dict[str, Any]:
    return {
        "format_version": constants.ARCHITECTURE_FORMAT_VERSION,
        "input_dim": net.input_dim,
        "layers": [
            {"name": layer.name, "units": layer.units, "activation": layer.activation}
            for layer in net.layers
        ],
    }


def save_architecture(description: Dict[str, Any], model_path: str) -> None:
    serializer = ArchitectureSerializer(data=description)
    if not serializer.is_valid():
        raise ArchitectureError(f"Invalid architecture: {serializer.errors}")
    with atomic_write(architecture_path(model_path), mode="w", encoding="utf-8") as fh:
        fh.write(json.dumps(serializer.validated_data, indent=2) + "\n")


def load_architecture(model_path: str) -> Dict[str, Any]:
    path = architecture_path(model_path)
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise ArchitectureError(f"{path} is not valid JSON: {e}") from e

    serializer = ArchitectureSerializer(data=data)
    if not serializer.is_valid():
        raise ArchitectureError(f"Invalid architecture in {path}: {serializer.errors}")
    return serializer.validated_data


def copy_architecture(source_model: str, destination_model: str) -> bool:
    """Copies the descriptor of one model file to another, if it has one"""
    if not os.path.exists(architecture_path(source_model)):
        return False
    save_architecture(load_architecture(source_model), destination_model)
    return True


def save_model(net: DenseNet, path: str, dtype: Optional[np.dtype] = None) -> None:
    save_weights(net.to_weights(dtype=dtype), path)
    save_architecture(describe(net), path)


def load_model(path: str) -> DenseNet:
    description = load_architecture(path)
    layers: List[Dict[str, Any]] = description["layers"]
    net = DenseNet.from_weights(
        load_weights(path), activations=[layer["activation"] for layer in layers]
    )

    expected = [description["input_dim"]] + [layer["units"] for layer in layers]
    if list(net.sizes) != expected or [layer.name for layer in net.layers] != [
        layer["name"] for layer in layers
    ]:
        raise ArchitectureError(
            f"Weights in {path} have sizes {list(net.sizes)}, "
            f"descriptor says {expected}"
        )
    logger.debug("Loaded %s network from %s", net.sizes, path)
    return net


class TrainConfigSerializer(serializers.Serializer):
    optimizer = serializers.ChoiceField(choices=constants.OPTIMIZERS)
    learning_rate = serializers.FloatField(min_value=0.0)
    momentum = serializers.FloatField(min_value=0.0, max_value=1.0)
    beta1 = serializers.FloatField(min_value=0.0, max_value=1.0)
    beta2 = serializers.FloatField(min_value=0.0, max_value=1.0)
    eps = serializers.FloatField()
    batch_size = serializers.IntegerField(min_value=1)
    epochs = serializers.IntegerField(min_value=1)
    seed = serializers.IntegerField()
    l2 = serializers.FloatField(min_value=0.0)

    def create(self, validated_data: Dict[str, Any]) -> TrainConfig:
        return TrainConfig(**validated_data)


def train_config_path(model_path: str) -> str:
    return f"{model_path}{constants.TRAIN_CONFIG_SUFFIX}"


def save_train_config(config: TrainConfig, model_path: str) -> None:
    """Keeps the training configuration next to the model for later fine-tuning"""
    data = TrainConfigSerializer(config).data
    with atomic_write(train_config_path(model_path), mode="w", encoding="utf-8") as fh:
        fh.write(json.dumps(data, indent=2) + "\n")


def load_train_config(model_path: str) -> Optional[TrainConfig]:
    path = train_config_path(model_path)
    if not os.path.exists(path):
        return None

    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise ArchitectureError(f"{path} is not valid JSON: {e}") from e

    serializer = TrainConfigSerializer(data=data)
    if not serializer.is_valid():
        raise ArchitectureError(
            f"Invalid training config in {path}: {serializer.errors}"
        )
    return serializer.save()


def copy_sidecars(source_model: str, destination_model: str) -> None:
    """Carries the architecture and training config over to a derived model"""
    copy_architecture(source_model, destination_model)
    config = load_train_config(source_model)
    if config is not None:
        save_train_config(config, destination_model)
