class DetectionError(Exception):
    pass


class NoSamplesRetainedError(DetectionError):
    def __init__(self, message: str, label: int):
        super().__init__(message)
        self.label = label


class SingleClassError(DetectionError):
    pass
