from model_utils import Choices

DEFAULT_LAYER = "dense_0/kernel"
DEFAULT_BIN_COUNT = 100
MIN_BIN_COUNT = 2

EXTRACTION_MODES = Choices(
    ("reference", "Suspect minus pre-watermark reference"),
    ("literal", "Suspect minus watermarked model"),
)
MODE_REFERENCE = EXTRACTION_MODES.reference
MODE_LITERAL = EXTRACTION_MODES.literal
