"""Exception hierarchy shared by every module of the package."""


class AtiyahError(Exception):
    """Base class for all errors raised by atiyah_config."""


class NonSquare(AtiyahError, ValueError):
    pass


class ShapeMismatch(AtiyahError, ValueError):
    pass


class NotHermitian(AtiyahError, ValueError):
    pass


class NoConvergence(AtiyahError, ArithmeticError):
    pass


class NotUnit(AtiyahError, ValueError):
    pass


class EmptyFactorList(AtiyahError, ValueError):
    pass


class DegreeMismatch(AtiyahError, ValueError):
    pass


class DegenerateConfiguration(AtiyahError, ValueError):
    """Coincident (or numerically indistinguishable) points."""


class ConfigurationFormatError(AtiyahError, ValueError):
    """Malformed configuration input; ``index`` names the offending point."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class IndexOutOfRange(AtiyahError, IndexError):
    pass


class InvalidSpec(AtiyahError, ValueError):
    pass
