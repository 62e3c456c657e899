class WatermarkError(Exception):
    pass


class LayerShapeMismatchError(WatermarkError):
    pass


class ZeroRangeError(WatermarkError):
    pass
