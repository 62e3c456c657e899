from model_utils import Choices

ACTIVATIONS = Choices(
    ("relu", "Rectified linear"),
    ("softmax", "Softmax output"),
)

OPTIMIZERS = Choices(
    ("sgd", "SGD with momentum"),
    ("adam", "Adaptive moment estimation"),
)

DEFAULT_OPTIMIZER = OPTIMIZERS.adam
DEFAULT_LEARNING_RATE = 1e-3
DEFAULT_MOMENTUM = 0.9
DEFAULT_BETA1 = 0.9
DEFAULT_BETA2 = 0.999
DEFAULT_EPS = 1e-8
DEFAULT_BATCH_SIZE = 32
DEFAULT_EPOCHS = 20

# Fine-tuning divides the base learning rate by this
FINE_TUNE_FACTOR = 10.0

ARCHITECTURE_SUFFIX = ".arch.json"
ARCHITECTURE_FORMAT_VERSION = 1

IMAGES_FILENAME = "images.idx"
LABELS_FILENAME = "labels.idx"

# IDX type byte -> big-endian numpy dtype
IDX_DTYPES = {
    0x08: ">u1",
    0x09: ">i1",
    0x0B: ">i2",
    0x0C: ">i4",
    0x0D: ">f4",
    0x0E: ">f8",
}
IDX_UBYTE = 0x08
IDX_DOUBLE = 0x0E
TRAIN_CONFIG_SUFFIX = ".train.json"
