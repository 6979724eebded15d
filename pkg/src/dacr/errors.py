"""Exception hierarchy for the dacr package.

Every error raised by the library derives from DacrError so callers can
catch the whole family with one clause. The CLI maps each subclass to a
stable process exit code (see dacr.cli).
"""


class DacrError(Exception):
    """Base class for all dacr errors."""


class SchemaError(DacrError):
    """An input document (robot description, joint state, ...) does not
    match its JSON schema."""


class DomainError(DacrError):
    """A scalar argument is outside its mathematical domain (e.g. a
    non-positive length or radial distance)."""


class DegenerateArrangement(DacrError):
    """The joint arrangement spans less than two degrees of freedom; the
    2x2 Gram matrix of the inverse transform is singular."""


class DimensionMismatch(DacrError):
    """A vector or state has the wrong number of entries for the
    arrangement it is used with."""


class ConventionMismatch(DacrError):
    """A joint state was supplied in the wrong convention (displacement
    vs. joint length), or a robot/state combination is not representable
    in the requested form."""


class ArrangementMismatch(DacrError):
    """Segments of an interdependent chain do not share a compatible
    joint arrangement."""


class UnsupportedArrangement(DacrError):
    """The operation is only defined for arrangements with a common
    radial distance."""


class FilterPropertyUnavailable(DacrError):
    """The requested operation relies on constant vectors being
    annihilated by the forward transform, which holds only when the
    transform rows sum to zero (symmetric arrangements)."""


class OffManifold(DacrError):
    """A joint-space vector is too far from the bending manifold for the
    requested reconstruction."""
