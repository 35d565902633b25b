"""Exception hierarchy shared by all hyperquasi modules."""


class HyperquasiError(Exception):
    """Base class for every error raised by this package."""


class OutOfRangeVertex(HyperquasiError, ValueError):
    pass


class WrongArity(HyperquasiError, ValueError):
    pass


class ParseError(HyperquasiError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class HeaderMismatch(ParseError):
    pass


class BiasOutOfRange(HyperquasiError, ValueError):
    pass


class InvalidGenSpec(HyperquasiError, ValueError):
    pass


class InvalidPartition(HyperquasiError, ValueError):
    pass


class IndexOutOfRange(HyperquasiError, IndexError):
    pass


class DimMismatch(HyperquasiError, ValueError):
    pass


class ArityMismatch(HyperquasiError, ValueError):
    pass


class ArityTooSmall(HyperquasiError, ValueError):
    pass


class LevelOutOfRange(HyperquasiError, ValueError):
    pass


class BudgetExceeded(HyperquasiError, MemoryError):
    """A dense construction or an enumeration would exceed its configured cap."""


class NoConvergence(HyperquasiError, ArithmeticError):
    pass


class DegenerateSpectrum(HyperquasiError, ArithmeticError):
    pass


class LengthTooShort(HyperquasiError, ValueError):
    pass
