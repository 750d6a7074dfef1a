"""Exception hierarchy shared by every module of the package."""


class SupergeoError(Exception):
    """Base class for all library errors."""


class ContextMismatch(SupergeoError):
    """Operands live in different variable tables."""


class ParityMismatch(SupergeoError):
    """An element of the wrong parity was supplied."""


class NotAUnit(SupergeoError):
    """The element is not invertible in the localized ring."""


class NotInvertible(SupergeoError):
    """Unit-pivot elimination failed on a matrix."""


class ShapeMismatch(SupergeoError):
    pass


class NotHomogeneous(SupergeoError):
    pass


class NotRightD(SupergeoError):
    """The odd endomorphism does not square to the identity."""


class NotUnitEntry(NotAUnit):
    pass


class NotInvariant(SupergeoError):
    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


class LemmaViolation(SupergeoError):
    """A head-term subtraction left a nonzero remainder.

    This can only happen if the zero-invariant lemma is false, so callers
    should treat it as fatal.
    """

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class StructureMismatch(SupergeoError):
    """A module structure does not satisfy its required square law."""


class ExprSyntaxError(SupergeoError):
    def __init__(self, message, position=None, expected=()):
        detail = message
        if position is not None:
            detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {', '.join(expected)})"
        super().__init__(detail)
        self.position = position
        self.expected = tuple(expected)


class UnknownVariable(SupergeoError):
    pass


class NegativePowerOfNonUnit(SupergeoError):
    pass
