"""Exception types shared across the package."""


class LgdivError(Exception):
    """Base class for all library errors."""


class DivisionByZero(LgdivError, ZeroDivisionError):
    pass


class CtxMismatch(LgdivError, ValueError):
    """Operands live in different fields, or a symbol is unknown to the field."""


class ZeroDenominator(DivisionByZero):
    pass


class ExprSyntaxError(LgdivError, ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class Pole(LgdivError, ArithmeticError):
    """A rational function has a pole where a value was requested."""


class InsufficientPrecision(LgdivError, ArithmeticError):
    """A local computation ran out of known coefficients."""


class NotIntegral(LgdivError, ValueError):
    pass


class NotASquare(LgdivError, ValueError):
    pass


class NotAFourthPower(NotASquare):
    pass


class BadU(LgdivError, ValueError):
    pass


class BadReduction(LgdivError, ValueError):
    pass


class NotOnCurve(LgdivError, ValueError):
    pass


class Unsupported(LgdivError, ValueError):
    pass


class InconsistentTriple(LgdivError, RuntimeError):
    pass


class TooLarge(LgdivError, ValueError):
    pass


class NotASubgroup(LgdivError, ValueError):
    pass


class SpecError(LgdivError, ValueError):
    """A curve-spec file failed validation."""
