"""Exception hierarchy.

The CLI maps these onto stable exit codes, so every failure raised by the
library is one of the classes below (or a plain ValueError for bad input).
"""


class ReptypeError(Exception):
    """Base class for library errors."""


class InputError(ReptypeError, ValueError):
    """Malformed input data (files, presentations, module specs)."""


class DimensionMismatch(ReptypeError, ValueError):
    pass


class NonTerminating(ReptypeError):
    """Closure of a presentation did not stabilise within the degree bound."""


class InconsistentRelations(ReptypeError):
    """The relations generate the whole free algebra (1 lies in the ideal)."""


class NotAGroup(ReptypeError, ValueError):
    pass


class UnsupportedClass(ReptypeError):
    """Radical-dependent operation requested on an unsupported algebra."""


class UnsupportedSize(ReptypeError):
    pass


class AlgebraMismatch(ReptypeError, ValueError):
    pass


class RelationViolation(ReptypeError, ValueError):
    pass


class NotIdempotent(ReptypeError, ValueError):
    pass


class NotAutomorphism(ReptypeError, ValueError):
    pass


class NoFormFound(ReptypeError):
    """No nondegenerate functional found; evidence the algebra is not Frobenius."""


class TableTooShort(ReptypeError, ValueError):
    pass


class Unstable(ReptypeError):
    """Finite differences of a growth sequence did not stabilise."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class NotACocycle(ReptypeError, ValueError):
    pass


class ZeroCocycle(ReptypeError, ValueError):
    pass


class QuotientMismatch(ReptypeError, ValueError):
    pass


class FactorRuleRefused(ReptypeError, ValueError):
    """The factor-algebra rule only propagates wildness."""
