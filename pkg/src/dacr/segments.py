"""Per-segment state mappings for the four segment types.

Joint values can be expressed either as displacements ``rho`` (what the
Clarke transform acts on) or as absolute joint lengths ``q`` with the
convention

    q_i = l - rho_i

for a segment of neutral-axis length l. Because the forward matrix of a
symmetric arrangement annihilates constant vectors, the constant l (and
any other per-segment constant, such as the helical offset induced by a
proximal twist) drops out of ``mp @ q``, which is what makes the q-side
mappings here work.

Segment types: type 0 bends only; type I adds a length joint beta;
type II adds a twist joint alpha; type III has both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .clarke import ClarkeCoordinates, ClarkePair, _as_vector, forward
from .errors import (
    ConventionMismatch,
    DomainError,
    FilterPropertyUnavailable,
    OffManifold,
    UnsupportedArrangement,
)
from .model import JointArrangement

# Relative scale for the default off-manifold tolerance of the q-side
# operations: tol = OFF_MANIFOLD_REL * max(1, max|q_i|).
OFF_MANIFOLD_REL = 1e-6

# recover_length() is validated against the mean-of-q shortcut, which is
# algebraically equal on valid inputs; disagreement beyond this (scaled
# like the off-manifold tolerance) means a numerics bug, not bad input.
_RECOVERY_CROSS_CHECK_REL = 1e-9

# Convergence threshold and iteration cap for the twist-compensation
# fixed point in type3_forward_from_q.
_TWIST_FIXED_POINT_TOL = 1e-9
_TWIST_FIXED_POINT_MAX_ITER = 64


class Convention(str, Enum):
    """Which quantity a joint-space vector holds."""

    RHO = "rho"
    Q = "q"


@dataclass(frozen=True)
class JointState:
    """Joint-space state of one segment in a declared convention.

    beta (length joint) and alpha (twist joint) are present exactly when
    the segment type has them.
    """

    convention: Convention
    values: np.ndarray
    beta: float | None = None
    alpha: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "convention", Convention(self.convention))
        values = _as_vector(self.values, name="values")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        if self.beta is not None:
            object.__setattr__(self, "beta", float(self.beta))
        if self.alpha is not None:
            object.__setattr__(self, "alpha", float(self.alpha))


@dataclass(frozen=True)
class ExtendedClarkeState:
    """Clarke coordinates optionally extended by length/twist joints."""

    cc: ClarkeCoordinates
    beta: float | None = None
    alpha: float | None = None


def joint_lengths(l: float, rho) -> np.ndarray:
    """Joint lengths from displacements: q_i = l - rho_i."""
    rho = _as_vector(rho, name="rho")
    return float(l) - rho


def common_radius(arr: JointArrangement) -> float:
    """The shared radial distance of an arrangement.

    The twist mappings model every actuation path as a helix of the same
    radius, so they are only defined when all d_i agree.

    Raises:
        UnsupportedArrangement: if the d_i differ by more than 1e-9
            relative, or are not positive.
    """
    d0 = float(arr.d[0])
    if d0 <= 0.0 or np.max(np.abs(arr.d - d0)) > 1e-9 * abs(d0):
        raise UnsupportedArrangement(
            "twist mappings need a common positive radial distance across joints"
        )
    return d0


def _default_tol(q: np.ndarray) -> float:
    return OFF_MANIFOLD_REL * max(1.0, float(np.max(np.abs(q))))


def recover_length(pair: ClarkePair, q, tol: float | None = None) -> float:
    """Recover the segment length from joint lengths.

    Computes (1/n) * ones.T @ (I + mp_inv @ mp) @ q, which equals l for
    any q = l*ones - rho with on-manifold rho. Valid only when the
    arrangement has the offset-filtering property; asymmetric
    arrangements do not, and silently averaging their q would hide a
    modeling error.

    Args:
        pair: matrices for the segment's arrangement.
        q: n joint lengths.
        tol: off-manifold residual bound; defaults to
            1e-6 * max(1, max|q_i|).

    Raises:
        FilterPropertyUnavailable: if pair.filter_ok is false.
        OffManifold: if, after removing the recovered constant, q is not
            a valid displacement vector within tol.
        DimensionMismatch: wrong q length.
    """
    if not pair.filter_ok:
        raise FilterPropertyUnavailable(
            "length recovery requires an arrangement whose forward matrix "
            "annihilates constant vectors"
        )
    q = _as_vector(q, pair.n, "q")
    n = pair.n
    ones = np.ones(n)
    length = float(ones @ (q + pair.projector @ q)) / n

    # On valid inputs the projector term contributes nothing to the sum,
    # so the formula degenerates to the plain mean; both routes are kept
    # and compared as an internal consistency check.
    shortcut = float(np.mean(q))
    if abs(length - shortcut) > _RECOVERY_CROSS_CHECK_REL * max(1.0, float(np.max(np.abs(q)))):
        raise ArithmeticError(
            "length recovery disagrees with its mean-of-q cross-check"
        )

    if tol is None:
        tol = _default_tol(q)
    centered = q - length * ones
    residual = float(np.linalg.norm(centered - pair.projector @ centered))
    if residual > tol:
        raise OffManifold(
            f"joint lengths are not consistent with any on-manifold displacement "
            f"(residual {residual:.3e} > tol {tol:.3e})"
        )
    return length


def type1_forward(pair: ClarkePair, rho, beta: float) -> ExtendedClarkeState:
    """Type-I forward map on displacements: cc = mp @ rho, beta unchanged.

    The extended transform is block-diagonal, so the length joint passes
    through untouched.
    """
    return ExtendedClarkeState(cc=forward(pair, rho), beta=float(beta))


def type1_forward_from_q(pair: ClarkePair, q, tol: float | None = None) -> ExtendedClarkeState:
    """Type-I forward map on joint lengths: cc = -mp @ q, beta recovered.

    The sign flips because q = l*ones - rho; the constant l is filtered
    out and reappears as the recovered beta.

    Raises:
        FilterPropertyUnavailable, OffManifold, DimensionMismatch: as in
            :func:`recover_length`.
    """
    beta = recover_length(pair, q, tol=tol)
    q = _as_vector(q, pair.n, "q")
    cc = -(pair.mp @ q)
    return ExtendedClarkeState(
        cc=ClarkeCoordinates(float(cc[0]), float(cc[1])), beta=beta
    )


def type1_inverse_to_q(pair: ClarkePair, state: ExtendedClarkeState) -> np.ndarray:
    """Type-I inverse map to joint lengths: q = -mp_inv @ cc + beta * ones.

    Raises:
        ConventionMismatch: if the state carries no beta.
    """
    if state.beta is None:
        raise ConventionMismatch("type-I inverse needs a length joint value (beta)")
    return -(pair.mp_inv @ state.cc.as_array()) + state.beta * np.ones(pair.n)


def helical_offset(alpha: float, d: float, l: float) -> float:
    """Extra path length from twisting a segment of length l by alpha.

    A path at radius d becomes a helix; its length is the hypotenuse of
    the unrolled triangle with legs alpha*d and l:

        delta = sqrt((alpha*d)**2 + l**2) - l

    evaluated in the rationalized form (alpha*d)**2 / (hypot + l) to
    avoid cancellation for small alpha. Even in alpha, zero at alpha=0,
    strictly increasing in |alpha|.

    Raises:
        DomainError: if d <= 0 or l <= 0.
    """
    if not (d > 0.0):
        raise DomainError(f"radial distance must be positive, got {d}")
    if not (l > 0.0):
        raise DomainError(f"segment length must be positive, got {l}")
    a = float(alpha) * float(d)
    if a == 0.0:
        return 0.0
    return a * a / (math.hypot(a, l) + l)


def type3_forward(pair: ClarkePair, q, beta: float, alpha: float) -> ExtendedClarkeState:
    """Type-III forward map on joint lengths: cc = -mp @ q, beta and alpha unchanged.

    q is expected to follow q_i = (l + delta_alpha) - rho_i; the twist
    enters q only as an additive constant, which the transform filters
    out, so cc depends on q alone — never on alpha.

    Raises:
        DimensionMismatch: wrong q length.
    """
    q = _as_vector(q, pair.n, "q")
    cc = -(pair.mp @ q)
    return ExtendedClarkeState(
        cc=ClarkeCoordinates(float(cc[0]), float(cc[1])),
        beta=float(beta),
        alpha=float(alpha),
    )


def type3_forward_from_q(
    pair: ClarkePair,
    q,
    alpha: float,
    d: float,
    l_hint: float,
    tol: float | None = None,
) -> ExtendedClarkeState:
    """Type-III forward map recovering beta from twist-compensated q.

    The helical offset depends on the segment length, which is itself
    what we are recovering, so the compensation is run as a fixed point:
    start from l_hint, subtract the offset, recover a length, and repeat
    until the recovered value settles (it contracts fast; a handful of
    iterations suffice). The Clarke coordinates are unaffected by the
    compensation — constants are filtered — only beta depends on it.

    Args:
        pair: matrices for the segment's arrangement.
        q: n joint lengths including the helical offset.
        alpha: twist joint value, radians.
        d: common radial distance of the actuation paths.
        l_hint: initial guess for the segment length, > 0.
        tol: off-manifold bound passed to length recovery.

    Raises:
        FilterPropertyUnavailable, OffManifold, DimensionMismatch: as in
            :func:`recover_length`.
        DomainError: non-positive d or l_hint.
    """
    q = _as_vector(q, pair.n, "q")
    if not (l_hint > 0.0):
        raise DomainError(f"length hint must be positive, got {l_hint}")
    length = float(l_hint)
    beta = None
    for _ in range(_TWIST_FIXED_POINT_MAX_ITER):
        compensated = q - helical_offset(alpha, d, length)
        beta = recover_length(pair, compensated, tol=tol)
        if abs(beta - length) < _TWIST_FIXED_POINT_TOL:
            break
        length = beta
    else:
        raise ArithmeticError("twist compensation did not converge")
    # Constants are filtered, so cc does not depend on the compensation
    # at all; computing it from the raw q keeps that exact.
    cc = -(pair.mp @ q)
    return ExtendedClarkeState(
        cc=ClarkeCoordinates(float(cc[0]), float(cc[1])),
        beta=beta,
        alpha=float(alpha),
    )


def type2_forward(pair: ClarkePair, rho, alpha: float) -> ExtendedClarkeState:
    """Type-II forward map: cc = mp @ rho, alpha unchanged, no length joint."""
    return ExtendedClarkeState(cc=forward(pair, rho), alpha=float(alpha))
