"""Exception hierarchy shared by all modules."""


class CantorBaseError(Exception):
    """Base class for every domain error raised by this package."""


class ReduciblePolynomial(CantorBaseError):
    pass


class NonMonic(CantorBaseError):
    pass


class NoRealRootInInterval(CantorBaseError):
    pass


class FieldMismatch(CantorBaseError):
    pass


class DivisionByZero(CantorBaseError, ZeroDivisionError):
    pass


class OutOfUnitInterval(CantorBaseError):
    pass


class PointOutOfRange(CantorBaseError):
    pass


class StateCapExceeded(CantorBaseError):
    def __init__(self, cap, message=None):
        self.cap = cap
        super().__init__(message or f"state cap of {cap} exceeded")


class NotPisot(CantorBaseError):
    pass


class DigitOutOfRange(CantorBaseError):
    pass


class InvalidDeltaExpansion(CantorBaseError):
    pass


class NonUniformMorphism(CantorBaseError):
    pass


class NonUniformInput(CantorBaseError):
    pass


class MalformedSpec(CantorBaseError):
    pass


class ParseError(CantorBaseError):
    pass


class UnknownScenario(CantorBaseError):
    pass
