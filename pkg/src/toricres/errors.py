"""Exception hierarchy shared across the package."""


class ToricError(Exception):
    """Base class for every error raised by toricres."""


class NotStronglyConvex(ToricError):
    pass


class NotFullDimensional(ToricError):
    pass


class Unbounded(ToricError):
    pass


class NotGorenstein(ToricError):
    pass


class NonIntegralGamma(ToricError):
    pass


class InvalidFan(ToricError):
    pass


class DimensionUnsupported(ToricError):
    pass


class NotBasic(ToricError):
    pass


class NotFlippable(ToricError):
    pass


class InvalidParameters(ToricError):
    pass


class NotFanoCompatible(ToricError):
    pass


class Inconsistent(ToricError):
    pass


class NoneExists(ToricError):
    """No compact strictly convex support function exists on the refined fan."""


class NotCompact(ToricError):
    pass


class OutsideCone(ToricError):
    """A point is not strictly inside the moment cone."""


class OutsideDomain(ToricError):
    """A point is not strictly inside the polyhedral set C_h."""


class OutsideReebCone(ToricError):
    """A Reeb vector is not strictly inside the dual of the moment cone."""


class DidNotConverge(ToricError):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
