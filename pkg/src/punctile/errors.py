"""Exception types shared across the package."""


class PunctileError(Exception):
    """Base class for all package errors."""


class IncompatibleOverlap(PunctileError):
    """Two patches assign different labels to a shared cell."""


class MalformedRule(PunctileError):
    """A substitution config is syntactically or structurally invalid."""


class NotPrimitive(PunctileError):
    """The substitution matrix has no entrywise-positive power."""


class DepthTooLarge(PunctileError):
    """A supertile would exceed the configured cell budget."""


class NoSeed(PunctileError):
    """No self-reproducing 2x2 block exists, even allowing period <= 4."""


class NoSaturation(PunctileError):
    """An atlas scan hit the depth budget before stabilizing."""


class TileNotInPatch(PunctileError):
    """A marked tile is not a member of its patch."""


class NotConnected(PunctileError):
    """A patch support fails 4-adjacency connectivity."""


class NotAdmissible(PunctileError):
    """A patch does not occur in the substitution tiling."""


class NotIdempotent(PunctileError):
    """An operation restricted to idempotents got a non-idempotent."""


class NotInDomain(PunctileError):
    """A window lies outside the domain of a partial bijection."""


class InsufficientWindow(PunctileError):
    """A window's truthful radius is too small to decide the query."""


class BudgetExceeded(PunctileError):
    """An enumeration exceeded its configured budget."""


class DomainViolation(PunctileError):
    """A character lies outside the domain of a tight-action map."""


class UniverseTooSmall(PunctileError):
    """A truncated universe lacks a witness that provably exists."""


class NotComposable(PunctileError):
    """Two groupoid arrows do not compose."""


class ZeroProduct(PunctileError):
    """A semigroup product vanished where composability forbids it."""
