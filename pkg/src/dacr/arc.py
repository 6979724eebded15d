"""Bridge between Clarke coordinates and constant-curvature arc parameters.

Under the constant-curvature assumption a bending segment is a circular
arc described by (kappa, theta, l): curvature, bending-plane angle, and
length, with bending angle phi = l * kappa. The Clarke coordinates of a
symmetric segment relate to these as

    cc = d * l * kappa * (cos theta, sin theta)

where d is the common radial distance of the actuation paths. The
length l is not recoverable from cc alone (only the product l * kappa
is), so the inverse direction takes l as an input.

Frame convention for sampled backbones: the base tangent points along
+z and theta is measured from +x in the base cross-section plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .clarke import ClarkeCoordinates, ClarkePair
from .errors import DomainError
from .model import TWO_PI


def _normalize_angle(theta: float) -> float:
    out = float(theta) % TWO_PI
    # A tiny negative input rounds up to exactly 2*pi under %.
    return 0.0 if out >= TWO_PI else out


@dataclass(frozen=True)
class ArcParameters:
    """Constant-curvature description of one segment.

    Attributes:
        kappa: curvature, 1/length units, >= 0 (bending direction is
            carried by theta, not by a sign on kappa).
        theta: bending-plane angle, radians, stored in [0, 2*pi).
        l: segment length, length units, > 0.
        theta_defined: False for a straight segment, where the bending
            plane is meaningless and theta is reported as 0 by
            convention.
    """

    kappa: float
    theta: float
    l: float
    theta_defined: bool = True

    def __post_init__(self) -> None:
        if not (self.kappa >= 0.0):
            raise DomainError(f"curvature must be non-negative, got {self.kappa}")
        if not (self.l > 0.0):
            raise DomainError(f"segment length must be positive, got {self.l}")
        object.__setattr__(self, "kappa", float(self.kappa))
        object.__setattr__(self, "theta", _normalize_angle(self.theta))
        object.__setattr__(self, "l", float(self.l))
        object.__setattr__(self, "theta_defined", bool(self.theta_defined))

    @property
    def phi(self) -> float:
        """Bending angle phi = l * kappa, radians."""
        return self.l * self.kappa


@dataclass(frozen=True)
class BackbonePolyline:
    """Sampled backbone curve: arc lengths s and 3-D points, base at origin."""

    s: np.ndarray
    points: np.ndarray

    def __post_init__(self) -> None:
        s = np.asarray(self.s, dtype=float)
        points = np.asarray(self.points, dtype=float)
        s.flags.writeable = False
        points.flags.writeable = False
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "points", points)


def arc_to_clarke(arc: ArcParameters, d: float) -> ClarkeCoordinates:
    """Clarke coordinates of a constant-curvature segment.

    cc = d * l * kappa * (cos theta, sin theta).

    Raises:
        DomainError: if d <= 0.
    """
    if not (d > 0.0):
        raise DomainError(f"radial distance must be positive, got {d}")
    magnitude = d * arc.l * arc.kappa
    return ClarkeCoordinates(
        magnitude * math.cos(arc.theta), magnitude * math.sin(arc.theta)
    )


def clarke_to_arc(cc: ClarkeCoordinates, d: float, l: float) -> ArcParameters:
    """Arc parameters realizing given Clarke coordinates at known length.

    kappa = |cc| / (d * l), theta = atan2(rho_im, rho_re). The length
    must be supplied: cc only determines the product l * kappa. A zero
    cc is the straight configuration, where theta is undefined and is
    reported as 0 with theta_defined False.

    Raises:
        DomainError: if d <= 0 or l <= 0.
    """
    if not (d > 0.0):
        raise DomainError(f"radial distance must be positive, got {d}")
    if not (l > 0.0):
        raise DomainError(f"segment length must be positive, got {l}")
    norm = math.hypot(cc.rho_re, cc.rho_im)
    if norm == 0.0:
        return ArcParameters(kappa=0.0, theta=0.0, l=float(l), theta_defined=False)
    theta = _normalize_angle(math.atan2(cc.rho_im, cc.rho_re))
    return ArcParameters(kappa=norm / (d * l), theta=theta, l=float(l))


def arc_to_displacements(pair: ClarkePair, arc: ArcParameters, d: float) -> np.ndarray:
    """Joint displacements of a constant-curvature segment.

    rho_i = d * l * kappa * cos(theta - psi_i), evaluated directly from
    the arc parameters; agrees with reconstructing from
    :func:`arc_to_clarke` through the inverse transform. Physically
    meaningful when all joints share the radial distance d.

    Raises:
        DomainError: if d <= 0.
    """
    if not (d > 0.0):
        raise DomainError(f"radial distance must be positive, got {d}")
    magnitude = d * arc.l * arc.kappa
    return magnitude * np.cos(arc.theta - pair.arrangement.psi)


def sample_backbone(arc: ArcParameters, points: int) -> BackbonePolyline:
    """Sample the backbone arc at evenly spaced arc lengths.

    The base is at the origin with tangent +z; the arc bends toward the
    direction (cos theta, sin theta, 0). A zero-curvature segment is a
    straight line along +z.

    Args:
        arc: constant-curvature segment description.
        points: sample count including both endpoints, >= 2.

    Raises:
        DomainError: if points < 2.
    """
    if int(points) != points or points < 2:
        raise DomainError(f"need at least two sample points, got {points}")
    s = np.linspace(0.0, arc.l, int(points))
    if arc.kappa == 0.0:
        xyz = np.column_stack((np.zeros_like(s), np.zeros_like(s), s))
        return BackbonePolyline(s=s, points=xyz)
    radial = (1.0 - np.cos(arc.kappa * s)) / arc.kappa
    xyz = np.column_stack(
        (
            radial * math.cos(arc.theta),
            radial * math.sin(arc.theta),
            np.sin(arc.kappa * s) / arc.kappa,
        )
    )
    return BackbonePolyline(s=s, points=xyz)
