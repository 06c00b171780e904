"""Exception hierarchy shared by all umbratrig modules."""


class UmbraTrigError(Exception):
    """Base class for library errors."""


class DomainError(UmbraTrigError, ValueError):
    """An argument or family parameter lies outside its admissible domain."""


class PoleError(DomainError):
    """Gamma evaluated at a non-positive integer."""


class ConvergenceError(UmbraTrigError, ArithmeticError):
    """A truncated series failed to satisfy its stopping rule."""


class SupportMismatchError(UmbraTrigError, TypeError):
    """A family's coefficient support is incompatible with a block-indexed sequence."""


class QuadratureError(UmbraTrigError, RuntimeError):
    """Quadrature nodes or weights could not be generated."""


class DivergenceError(UmbraTrigError, ArithmeticError):
    """A spectral integral violates its growth contract."""
