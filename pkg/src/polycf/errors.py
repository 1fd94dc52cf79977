"""Exception hierarchy shared by all polycf modules.

Errors are split along the lines callers care about: usage errors
(bad input, bad syntax), math-negative outcomes (no relation found,
divergence), and precision failures (interval too wide to certify).
"""


class PolycfError(Exception):
    """Base class for all library errors."""


class ParseError(PolycfError):
    """Malformed polynomial / CF / grid text."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at {position})")
        self.position = position


class DivisionError(PolycfError):
    """Exact polynomial division requested for a non-divisor."""


class PrecisionError(PolycfError):
    """Requested digits cannot be certified from the available interval."""

    def __init__(self, message, max_digits=None):
        super().__init__(message)
        self.max_digits = max_digits


class InvariantError(PolycfError):
    """Constructed object violates a structural invariant."""


class BadStart(PolycfError):
    """Tail start index does not clear the zeros of B."""

    def __init__(self, n, message=None):
        super().__init__(message or f"B vanishes at integer index {n} past the tail start")
        self.n = n


class PivotError(PolycfError):
    """Backward evaluation hit a pivot a_{k+1} + x_{k+1} ~ 0."""

    def __init__(self, k):
        super().__init__(f"zero pivot at level {k} during backward evaluation")
        self.k = k


class NotConverged(PolycfError):
    """Truncation estimate exceeds the requested tolerance."""

    def __init__(self, best=None, message=None):
        super().__init__(message or "continued fraction did not converge to tolerance")
        self.best = best


class DegenerateRatio(PolycfError):
    """Euler input whose term ratio vanishes or blows up on the index range."""


class DegenerateLambda(PolycfError):
    """Bauer-Muir discriminant lambda_n = 0 for some n in range."""

    def __init__(self, n, message=None):
        super().__init__(message or f"lambda_{n} = 0: Bauer-Muir transform is degenerate")
        self.n = n


class ParamError(PolycfError):
    """Family parameters violate the family constraints."""

    def __init__(self, message, predicate=None):
        super().__init__(message)
        self.predicate = predicate


class OracleMismatch(PolycfError):
    """Two independent methods for a constant disagree (build-stopping)."""


class IdentityViolation(PolycfError):
    """A certified identity check produced an interval excluding zero."""


class NoRelationFound(PolycfError):
    """No integer relation within the height bound."""

    def __init__(self, height, message=None):
        super().__init__(message or f"no integer relation found with height <= {height}")
        self.height = height


class Prop1Violation(PolycfError):
    """Divisibility hypothesis of the CF construction fails."""

    def __init__(self, remainder=None, message=None):
        super().__init__(message or "divisibility hypothesis fails")
        self.remainder = remainder


class NonUniqueness(PolycfError):
    """Kernel dimension above 1 where uniqueness is expected."""

    def __init__(self, dim, message=None):
        super().__init__(message or f"kernel dimension {dim} > 1")
        self.dim = dim


class AccelerationUnstable(PolycfError):
    """Extrapolation estimates collapsed instead of converging."""
