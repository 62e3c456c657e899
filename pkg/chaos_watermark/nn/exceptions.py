class TrainingError(Exception):
    pass


class DimensionMismatchError(TrainingError):
    pass


class DatasetError(Exception):
    pass


class ArchitectureError(Exception):
    pass
