"""Exception types raised by kgbf."""


class KGBFError(Exception):
    """Base class for all kgbf errors."""


class DomainError(KGBFError, ValueError):
    """Leaf parameter outside a family's domain, or index/kind mismatch."""


class DegenerateModeError(KGBFError, ArithmeticError):
    """The Wronskian of X^a, X^b vanishes (linearly dependent pair)."""


class DegenerateVacuumError(KGBFError, ArithmeticError):
    """Im(conj(c^a) c^b) = 0, or a required vacuum function is zero."""


class ZeroUpsilonError(KGBFError, ArithmeticError):
    """Upsilon or its leaf derivative vanishes at the requested leaf."""


class PositivityError(KGBFError, ValueError):
    """The vacuum positivity condition -sigma Im(conj(c^a) c^b) W > 0 fails."""


class GridMismatchError(KGBFError, ValueError):
    """Coefficient fields live on different mode grids."""


class ConfigError(KGBFError, ValueError):
    """Malformed scenario configuration."""


class UnknownCheckError(ConfigError):
    """A scenario requested a check id that is not registered."""
