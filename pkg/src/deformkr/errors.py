class DeformKRError(Exception):
    pass


class InputError(DeformKRError, ValueError):
    """Malformed or out-of-range input (CLI exit code 2)."""


class VerificationError(DeformKRError, AssertionError):
    """An internal consistency check failed (CLI exit code 1)."""


class InfiniteDimensional(DeformKRError):
    pass


class NotInvertible(DeformKRError, ArithmeticError):
    pass


class OutOfScale(DeformKRError):
    pass
