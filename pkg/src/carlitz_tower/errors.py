class CeilingError(RuntimeError):
    """An enumeration or budget limit would be exceeded."""


class PrecisionError(ArithmeticError):
    """Working precision is insufficient for the requested result."""


class InexactDivision(ArithmeticError):
    pass


class VerificationError(AssertionError):
    """A check that theory guarantees came out false."""
