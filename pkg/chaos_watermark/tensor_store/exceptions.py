class TensorStoreError(Exception):
    pass


class BadMagicError(TensorStoreError):
    pass


class UnsupportedVersionError(TensorStoreError):
    pass


class TruncatedPayloadError(TensorStoreError):
    pass


class ShapeCountMismatchError(TensorStoreError):
    pass


class UnknownDtypeError(TensorStoreError):
    pass


class EmptyWeightsError(TensorStoreError):
    pass


class UnknownLayerError(TensorStoreError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class DuplicateTensorError(TensorStoreError):
    pass


class ManifestError(TensorStoreError):
    pass
