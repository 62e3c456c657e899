class VerificationError(Exception):
    pass


class ZeroVarianceError(VerificationError):
    pass


class LengthMismatchError(VerificationError):
    pass
