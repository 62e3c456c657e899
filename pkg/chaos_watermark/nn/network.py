import copy
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from chaos_watermark.tensor_store.exceptions import UnknownLayerError
from chaos_watermark.tensor_store.weights import ModelWeights, WeightTensor

from . import constants
from .exceptions import ArchitectureError, DimensionMismatchError


@dataclass
class DenseLayer:
    name: str
    kernel: np.ndarray
    bias: np.ndarray
    activation: str = constants.ACTIVATIONS.relu

    @property
    def input_dim(self) -> int:
        return int(self.kernel.shape[0])

    @property
    def units(self) -> int:
        return int(self.kernel.shape[1])


@dataclass
class DenseNet:
    """
    Feed-forward classifier: rectifier hidden layers and a softmax output.

    Layers are named "dense_0", "dense_1", ... and their tensors
    "dense_i/kernel" (input x units) and "dense_i/bias".
    """

    layers: List[DenseLayer] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.layers:
            raise ArchitectureError("A network needs at least one layer")

        for layer in self.layers:
            if layer.activation not in constants.ACTIVATIONS:
                raise ArchitectureError(
                    f"Unknown activation {layer.activation!r} in {layer.name}"
                )
            if layer.kernel.ndim != 2 or layer.bias.shape != (layer.units,):
                raise ArchitectureError(
                    f"{layer.name} has kernel {layer.kernel.shape} and bias "
                    f"{layer.bias.shape}"
                )

        for previous, layer in zip(self.layers, self.layers[1:]):
            if previous.units != layer.input_dim:
                raise ArchitectureError(
                    f"{previous.name} has {previous.units} units but {layer.name} "
                    f"expects {layer.input_dim} inputs"
                )

        activations = [layer.activation for layer in self.layers]
        if activations.count(constants.ACTIVATIONS.softmax) != 1 or (
            activations[-1] != constants.ACTIVATIONS.softmax
        ):
            raise ArchitectureError("Exactly one softmax layer, the last, is allowed")

    @classmethod
    def build(cls, sizes: Sequence[int], seed: int = 0) -> "DenseNet":
        """
        Fresh network for the given layer sizes, input width first. Kernels
        are drawn uniformly from +-sqrt(6 / fan_in), biases start at zero.
        """
        if len(sizes) < 2 or any(size < 1 for size in sizes):
            raise ArchitectureError(f"Invalid layer sizes {list(sizes)}")

        rng = np.random.default_rng(seed)
        layers = []
        for i, (fan_in, fan_out) in enumerate(zip(sizes, sizes[1:])):
            limit = np.sqrt(6.0 / fan_in)
            layers.append(
                DenseLayer(
                    name=f"dense_{i}",
                    kernel=rng.uniform(-limit, limit, size=(fan_in, fan_out)),
                    bias=np.zeros(fan_out),
                    activation=(
                        constants.ACTIVATIONS.softmax
                        if i == len(sizes) - 2
                        else constants.ACTIVATIONS.relu
                    ),
                )
            )
        return cls(layers=layers)

    @property
    def input_dim(self) -> int:
        return self.layers[0].input_dim

    @property
    def output_dim(self) -> int:
        return self.layers[-1].units

    @property
    def sizes(self) -> Tuple[int, ...]:
        return (self.input_dim,) + tuple(layer.units for layer in self.layers)

    def copy(self) -> "DenseNet":
        return copy.deepcopy(self)

    def get_layer(self, name: str) -> DenseLayer:
        """Looks a layer up by "dense_i" or by one of its tensor names"""
        layer_name = name.split("/", 1)[0]
        for layer in self.layers:
            if layer.name == layer_name:
                return layer
        raise UnknownLayerError(f"Unknown layer {name!r}")

    def parameters(self) -> List[np.ndarray]:
        """Kernel and bias arrays in layer order, shared with the network"""
        params = []
        for layer in self.layers:
            params.extend([layer.kernel, layer.bias])
        return params

    def check_input(self, features: np.ndarray) -> np.ndarray:
        features = np.asarray(features, dtype=np.float64)
        if features.ndim != 2 or features.shape[1] != self.input_dim:
            raise DimensionMismatchError(
                f"Expected rows of {self.input_dim} features, got {features.shape}"
            )
        return features

    def to_weights(self, dtype: Optional[np.dtype] = None) -> ModelWeights:
        tensors = []
        for layer in self.layers:
            tensors.append(
                WeightTensor(
                    name=f"{layer.name}/kernel",
                    values=layer.kernel.astype(dtype or layer.kernel.dtype),
                )
            )
            tensors.append(
                WeightTensor(
                    name=f"{layer.name}/bias",
                    values=layer.bias.astype(dtype or layer.bias.dtype),
                )
            )
        return ModelWeights(tensors=tuple(tensors))

    @classmethod
    def from_weights(
        cls, weights: ModelWeights, activations: Optional[Sequence[str]] = None
    ) -> "DenseNet":
        """
        Rebuilds a network from its kernel/bias tensors. Without explicit
        activations every layer but the last is a rectifier.
        """
        names = weights.names
        if len(names) % 2:
            raise ArchitectureError("Expected kernel and bias tensors per layer")

        count = len(names) // 2
        activations = list(activations or [])
        if not activations:
            activations = [constants.ACTIVATIONS.relu] * (count - 1) + [
                constants.ACTIVATIONS.softmax
            ]
        if len(activations) != count:
            raise ArchitectureError(
                f"{len(activations)} activations given for {count} layers"
            )

        layers = []
        for i, activation in enumerate(activations):
            try:
                kernel = weights.get(f"dense_{i}/kernel")
                bias = weights.get(f"dense_{i}/bias")
            except UnknownLayerError as e:
                raise ArchitectureError(str(e)) from e
            layers.append(
                DenseLayer(
                    name=f"dense_{i}",
                    kernel=np.array(kernel.values, dtype=np.float64),
                    bias=np.array(bias.values, dtype=np.float64),
                    activation=activation,
                )
            )
        return cls(layers=layers)


def relu(z: np.ndarray) -> np.ndarray:
    return np.maximum(z, 0.0)


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


def log_softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))


def forward(
    net: DenseNet, features: np.ndarray
) -> Tuple[List[np.ndarray], np.ndarray]:
    """
    Returns the input to every layer (the features first) and the output
    logits of the last layer.
    """
    activation = net.check_input(features)
    inputs: List[np.ndarray] = []
    logits = activation
    for layer in net.layers:
        inputs.append(activation)
        logits = activation @ layer.kernel + layer.bias
        activation = relu(logits)
    return inputs, logits


def predict(net: DenseNet, features: np.ndarray) -> np.ndarray:
    """Class probabilities, one row per sample"""
    _, logits = forward(net, features)
    return softmax(logits)


def layer_activations(net: DenseNet, features: np.ndarray, layer: str) -> np.ndarray:
    """Post-activation outputs of the named layer, one row per sample"""
    target = net.get_layer(layer)
    activation = net.check_input(features)
    for current in net.layers:
        z = activation @ current.kernel + current.bias
        if current.activation == constants.ACTIVATIONS.softmax:
            activation = softmax(z)
        else:
            activation = relu(z)
        if current is target:
            return activation
    raise UnknownLayerError(f"Unknown layer {layer!r}")


def loss_and_gradients(
    net: DenseNet, features: np.ndarray, labels: np.ndarray, l2: float = 0.0
) -> Tuple[float, List[np.ndarray]]:
    """
    Mean cross-entropy of the softmax output against one-hot labels, plus
    l2 / 2 times the squared kernel norms, and its gradient for every array
    in `net.parameters()`.
    """
    inputs, logits = forward(net, features)
    labels = np.asarray(labels, dtype=np.float64)
    if labels.shape != logits.shape:
        raise DimensionMismatchError(
            f"Labels of shape {labels.shape} do not match outputs {logits.shape}"
        )

    count = len(labels)
    loss = -float(np.sum(labels * log_softmax(logits))) / count
    if l2:
        loss += 0.5 * l2 * sum(float(np.sum(layer.kernel**2)) for layer in net.layers)

    delta = (softmax(logits) - labels) / count
    gradients: List[np.ndarray] = []
    for index in range(len(net.layers) - 1, -1, -1):
        layer = net.layers[index]
        layer_input = inputs[index]
        kernel_grad = layer_input.T @ delta
        if l2:
            kernel_grad = kernel_grad + l2 * layer.kernel
        gradients[:0] = [kernel_grad, delta.sum(axis=0)]
        if index:
            # The input of this layer is relu(z) of the previous one
            delta = (delta @ layer.kernel.T) * (layer_input > 0)
    return loss, gradients
