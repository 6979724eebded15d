"""Robot description data model.

A continuum robot is described by an ordered list of segments. Each
segment carries the polar joint locations on its cross-section (the
arrangement), its neutral-axis length, and a type stating which joints
it has beyond bending. All values are unit-agnostic: the caller picks a
length unit and must use it consistently.

Everything here is an immutable value; validation that depends on
numeric content is performed by :func:`validate_robot`, which reports
violations as data instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError

TWO_PI = 2.0 * np.pi

# Tolerances for detecting the evenly-spaced, common-radius pattern.
# Routing between the closed-form transform and the pseudoinverse path
# depends on this check, so the tolerances are deliberately tight.
SYMMETRY_TOL_PSI = 1e-9
SYMMETRY_TOL_D = 1e-9


def _normalize_angles(psi: np.ndarray) -> np.ndarray:
    """Reduce angles into [0, 2*pi). Values that round up to exactly
    2*pi (e.g. tiny negative inputs) are clamped to 0."""
    out = np.mod(psi, TWO_PI)
    out[out >= TWO_PI] = 0.0
    return out


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class JointArrangement:
    """Polar joint locations (psi_i, d_i) on a segment cross-section.

    Attributes:
        psi: joint angles in radians, stored normalized to [0, 2*pi).
        d: radial distances from the neutral axis, in length units.

    Construction enforces structural sanity (1-D arrays of equal length
    n >= 2, finite entries). Value-domain rules such as d_i > 0 are
    checked by :func:`validate_robot` so that defective descriptions can
    be reported rather than rejected mid-parse.
    """

    psi: np.ndarray
    d: np.ndarray

    def __post_init__(self) -> None:
        psi = np.atleast_1d(np.asarray(self.psi, dtype=float))
        d = np.atleast_1d(np.asarray(self.d, dtype=float))
        if psi.ndim != 1 or d.ndim != 1:
            raise DomainError("psi and d must be one-dimensional")
        if psi.shape[0] != d.shape[0]:
            raise DomainError(
                f"psi and d must have the same length, got {psi.shape[0]} and {d.shape[0]}"
            )
        if psi.shape[0] < 2:
            raise DomainError("an arrangement needs at least two joints")
        if not (np.all(np.isfinite(psi)) and np.all(np.isfinite(d))):
            raise DomainError("psi and d must be finite")
        object.__setattr__(self, "psi", _readonly(_normalize_angles(psi)))
        object.__setattr__(self, "d", _readonly(d))

    @property
    def n(self) -> int:
        """Number of joints."""
        return self.psi.shape[0]

    def is_symmetric(self) -> bool:
        """True if psi_i = 2*pi*(i-1)/n within 1e-9 rad and all d_i agree
        with d_1 within 1e-9 relative."""
        pattern = TWO_PI * np.arange(self.n) / self.n
        diff = np.mod(self.psi - pattern + np.pi, TWO_PI) - np.pi
        if np.max(np.abs(diff)) > SYMMETRY_TOL_PSI:
            return False
        d0 = self.d[0]
        if d0 <= 0.0:
            return False
        return bool(np.max(np.abs(self.d - d0)) <= SYMMETRY_TOL_D * abs(d0))


def make_symmetric_arrangement(n: int, d: float) -> JointArrangement:
    """Build the evenly-spaced common-radius arrangement.

    psi_i = 2*pi*(i-1)/n and d_i = d for all i.

    Args:
        n: joint count, at least 3.
        d: common radial distance, strictly positive.

    Raises:
        DomainError: if n < 3 or d <= 0.
    """
    if int(n) != n or n < 3:
        raise DomainError(f"symmetric arrangements need n >= 3 joints, got {n}")
    if not (d > 0.0):
        raise DomainError(f"radial distance must be positive, got {d}")
    n = int(n)
    psi = TWO_PI * np.arange(n) / n
    return JointArrangement(psi=psi, d=np.full(n, float(d)))


class SegmentType(str, Enum):
    """Degrees of freedom of a segment beyond spatial bending.

    TYPE0: bending only (incompressible, torsionally stiff).
    TYPE1: bending plus variable length (joint value beta).
    TYPE2: bending plus proximal twist (joint value alpha).
    TYPE3: bending, variable length, and twist.
    """

    TYPE0 = "type0"
    TYPE1 = "type1"
    TYPE2 = "type2"
    TYPE3 = "type3"

    @property
    def has_length_joint(self) -> bool:
        return self in (SegmentType.TYPE1, SegmentType.TYPE3)

    @property
    def has_twist_joint(self) -> bool:
        return self in (SegmentType.TYPE2, SegmentType.TYPE3)


class Coupling(str, Enum):
    """How the joints of consecutive segments interact.

    INDEPENDENT: each segment is actuated on its own (e.g. pneumatic
    chambers local to the segment).
    INTERDEPENDENT: actuation paths of distal segments run through the
    proximal ones, so joint lengths add up along the chain (e.g. tendons
    routed through earlier segments).
    """

    INDEPENDENT = "independent"
    INTERDEPENDENT = "interdependent"


@dataclass(frozen=True)
class SegmentSpec:
    """One segment: arrangement, initial neutral-axis length, type."""

    arrangement: JointArrangement
    length: float
    seg_type: SegmentType = SegmentType.TYPE0

    def __post_init__(self) -> None:
        object.__setattr__(self, "length", float(self.length))
        object.__setattr__(self, "seg_type", SegmentType(self.seg_type))


@dataclass(frozen=True)
class RobotSpec:
    """Ordered segments plus the actuation coupling between them."""

    segments: tuple[SegmentSpec, ...]
    coupling: Coupling = Coupling.INDEPENDENT

    def __post_init__(self) -> None:
        object.__setattr__(self, "segments", tuple(self.segments))
        object.__setattr__(self, "coupling", Coupling(self.coupling))


@dataclass(frozen=True)
class Violation:
    """A single invariant violation found in a robot description.

    segment is the 0-based segment index, or None for robot-level
    problems.
    """

    segment: int | None
    field: str
    message: str


def arrangements_match(a: JointArrangement, b: JointArrangement, tol: float = SYMMETRY_TOL_PSI) -> bool:
    """True if both arrangements have the same joint count and the same
    angles element-wise within tol (circular difference)."""
    if a.n != b.n:
        return False
    diff = np.mod(a.psi - b.psi + np.pi, TWO_PI) - np.pi
    return bool(np.max(np.abs(diff)) <= tol)


def validate_robot(spec: RobotSpec) -> list[Violation]:
    """Check every robot-description invariant.

    Returns a list of violations; an empty list means the description is
    valid. Violations are data, not errors: a defective description is
    still a description.

    Checked invariants:
      * at least one segment;
      * every radial distance strictly positive;
      * every segment length strictly positive;
      * interdependent coupling: all segments share the joint count and
        the angle list element-wise (joint lengths are added entry by
        entry, which requires aligned routing);
      * interdependent coupling: only bending-only (type-0) segments,
        since length/twist joints have no defined composition rule
        across a shared actuation path.
    """
    violations: list[Violation] = []
    if len(spec.segments) == 0:
        violations.append(Violation(None, "segments", "robot has no segments"))
        return violations

    for j, seg in enumerate(spec.segments):
        for i, di in enumerate(seg.arrangement.d):
            if not (di > 0.0):
                violations.append(
                    Violation(j, "joints.d", f"non-positive radial distance at joint {i}")
                )
        if not (seg.length > 0.0):
            violations.append(Violation(j, "length", "non-positive segment length"))

    if spec.coupling is Coupling.INTERDEPENDENT:
        first = spec.segments[0].arrangement
        for j, seg in enumerate(spec.segments[1:], start=1):
            if not arrangements_match(first, seg.arrangement):
                violations.append(
                    Violation(j, "joints", "arrangement mismatch with segment 0")
                )
        for j, seg in enumerate(spec.segments):
            if seg.seg_type is not SegmentType.TYPE0:
                violations.append(
                    Violation(
                        j,
                        "type",
                        "interdependent coupling supports only type-0 segments",
                    )
                )

    return violations
