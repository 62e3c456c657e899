from model_utils import Choices

SOURCES = Choices(
    (0, "original", "Original"),
    (1, "watermarked", "Watermarked"),
    (2, "fine_tuned", "Fine-tuned"),
)

# Confidence filters for digit data and for harder datasets
DEFAULT_THRESHOLD = 0.9
HARD_DATASET_THRESHOLD = 0.7

DEFAULT_L2 = 1e-4
# Eigenvalues below this fraction of the largest are floored when whitening
WHITENING_FLOOR = 1e-8

DEFAULT_LEARNING_RATE = 0.01
DEFAULT_EPOCHS = 100
DEFAULT_BATCH_SIZE = 64

TRAIN_FRACTION = 0.5

SOURCE_NAMES = {
    SOURCES.original: "original",
    SOURCES.watermarked: "watermarked",
    SOURCES.fine_tuned: "fine_tuned",
}
