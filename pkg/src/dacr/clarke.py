"""Generalized Clarke transform for displacement-actuated segments.

An n-joint bending segment has only two degrees of freedom, so the
n-dimensional displacement vector rho lives on a 2-D linear manifold.
The Clarke transform maps between rho and the two free coordinates
(rho_re, rho_im):

    cc  = mp @ rho          (forward)
    rho = mp_inv @ cc       (inverse)

mp_inv has rows [cos(psi_i), sin(psi_i)]; mp is its Moore-Penrose left
pseudoinverse, which collapses to (2/n) * mp_inv.T for evenly spaced
joints on a common radius. Both matrices depend only on the joint
angles; the radial distances matter only when converting to arc
parameters (see :mod:`dacr.arc`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateArrangement, DimensionMismatch
from .model import JointArrangement

# A 2x2 Gram matrix with determinant below this (relative to its scale,
# (trace/2)^2) is treated as singular: the joints are collinear through
# the axis and one bending direction is unobservable.
GRAM_DEGENERACY_REL = 1e-12

# ``mp @ ones`` below this infinity-norm counts as the offset-filtering
# property holding; constant vectors added to the joint values are then
# annihilated by the forward transform.
FILTER_TOL = 1e-9

# Agreement required between the closed-form matrix for symmetric
# arrangements and the general pseudoinverse route. Looser than the
# test-suite bound because symmetry detection itself admits angle
# perturbations up to 1e-9 rad.
SYMMETRIC_CROSS_CHECK_TOL = 1e-8


@dataclass(frozen=True)
class ClarkeCoordinates:
    """The two free variables of a bending segment, in length units."""

    rho_re: float
    rho_im: float

    def as_array(self) -> np.ndarray:
        return np.array([self.rho_re, self.rho_im])

    @classmethod
    def from_array(cls, cc: np.ndarray) -> ClarkeCoordinates:
        cc = np.asarray(cc, dtype=float)
        if cc.shape != (2,):
            raise DimensionMismatch(f"Clarke coordinates must be a 2-vector, got shape {cc.shape}")
        return cls(float(cc[0]), float(cc[1]))


@dataclass(frozen=True)
class DisplacementCheck:
    """Result of testing whether a vector lies on the 2-DOF manifold."""

    valid: bool
    residual_norm: float


@dataclass(frozen=True)
class ClarkePair:
    """Forward/inverse Clarke matrices for one joint arrangement.

    Attributes:
        arrangement: the joint locations the matrices were built from.
        mp: 2 x n forward matrix (displacements -> Clarke coordinates).
        mp_inv: n x 2 right inverse (Clarke coordinates -> displacements).
        filter_ok: True when mp annihilates constant vectors
            (``mp @ ones(n) ~ 0``). Holds for symmetric arrangements;
            length recovery and the q-side mappings rely on it.
    """

    arrangement: JointArrangement
    mp: np.ndarray
    mp_inv: np.ndarray
    filter_ok: bool

    @property
    def n(self) -> int:
        return self.arrangement.n

    @property
    def projector(self) -> np.ndarray:
        """The n x n idempotent map ``mp_inv @ mp`` onto the manifold."""
        return self.mp_inv @ self.mp


def _as_vector(values, n: int | None = None, name: str = "vector") -> np.ndarray:
    out = np.atleast_1d(np.asarray(values, dtype=float))
    if out.ndim != 1:
        raise DimensionMismatch(f"{name} must be one-dimensional, got shape {out.shape}")
    if n is not None and out.shape[0] != n:
        raise DimensionMismatch(f"{name} has length {out.shape[0]}, expected {n}")
    return out


def build_mp_inv(arr: JointArrangement) -> np.ndarray:
    """Build the n x 2 inverse Clarke matrix, row i = [cos psi_i, sin psi_i]."""
    return np.column_stack((np.cos(arr.psi), np.sin(arr.psi)))


def _pseudoinverse_mp(mp_inv: np.ndarray) -> np.ndarray:
    """Left pseudoinverse of mp_inv via the normal equations.

    The Gram matrix is 2x2, so it is inverted in closed form; no
    iterative or general-purpose solver is involved.

    Raises:
        DegenerateArrangement: if the Gram matrix is singular relative
            to its scale, i.e. all joints lie on one line through the
            cross-section center (psi values in {0, pi} up to shifts).
    """
    gram = mp_inv.T @ mp_inv
    det = gram[0, 0] * gram[1, 1] - gram[0, 1] * gram[1, 0]
    scale = 0.5 * (gram[0, 0] + gram[1, 1])
    if det < GRAM_DEGENERACY_REL * scale * scale:
        raise DegenerateArrangement(
            "joint angles span only one bending direction (singular 2x2 Gram matrix)"
        )
    gram_inv = np.array([[gram[1, 1], -gram[0, 1]], [-gram[1, 0], gram[0, 0]]]) / det
    return gram_inv @ mp_inv.T


def build_pair(arr: JointArrangement) -> ClarkePair:
    """Construct the (mp, mp_inv) matrix pair for an arrangement.

    For symmetric arrangements mp uses the closed form (2/n) * mp_inv.T
    and is cross-checked against the pseudoinverse route; asymmetric
    arrangements use the pseudoinverse route directly.

    Raises:
        DegenerateArrangement: joints collinear through the axis.
    """
    mp_inv = build_mp_inv(arr)
    mp_pinv = _pseudoinverse_mp(mp_inv)
    if arr.is_symmetric():
        mp = (2.0 / arr.n) * mp_inv.T
        if np.max(np.abs(mp - mp_pinv)) > SYMMETRIC_CROSS_CHECK_TOL:
            raise ArithmeticError(
                "closed-form and pseudoinverse Clarke matrices disagree "
                "for a symmetric arrangement"
            )
    else:
        mp = mp_pinv
    filter_ok = bool(np.max(np.abs(mp @ np.ones(arr.n))) <= FILTER_TOL)
    mp = mp.copy()
    mp.flags.writeable = False
    mp_inv.flags.writeable = False
    return ClarkePair(arrangement=arr, mp=mp, mp_inv=mp_inv, filter_ok=filter_ok)


def forward(pair: ClarkePair, rho) -> ClarkeCoordinates:
    """Map a displacement vector to its Clarke coordinates (cc = mp @ rho).

    Args:
        pair: matrices for the segment's arrangement.
        rho: n displacement values, length units.

    Raises:
        DimensionMismatch: if rho does not have length n.
    """
    rho = _as_vector(rho, pair.n, "rho")
    cc = pair.mp @ rho
    return ClarkeCoordinates(float(cc[0]), float(cc[1]))


def inverse(pair: ClarkePair, cc: ClarkeCoordinates) -> np.ndarray:
    """Reconstruct the on-manifold displacement vector (rho = mp_inv @ cc)."""
    return pair.mp_inv @ cc.as_array()


def project(pair: ClarkePair, rho) -> np.ndarray:
    """Project an arbitrary n-vector onto the 2-DOF displacement manifold.

    Returns the unique on-manifold vector with the same Clarke
    coordinates as ``rho``; idempotent. For symmetric arrangements this
    removes any constant offset.

    Raises:
        DimensionMismatch: if rho does not have length n.
    """
    rho = _as_vector(rho, pair.n, "rho")
    return pair.projector @ rho


def validate_displacement(pair: ClarkePair, rho, tol: float = 1e-9) -> DisplacementCheck:
    """Check that a displacement vector lies on the segment's manifold.

    The residual is the Euclidean distance between ``rho`` and its
    projection. For symmetric arrangements a valid vector also has
    (near-)zero component sum, since constant vectors are orthogonal to
    the manifold.

    Args:
        pair: matrices for the segment's arrangement.
        rho: n candidate displacement values.
        tol: largest residual accepted as valid, length units.

    Raises:
        DimensionMismatch: if rho does not have length n.
    """
    rho = _as_vector(rho, pair.n, "rho")
    residual = float(np.linalg.norm(rho - pair.projector @ rho))
    return DisplacementCheck(valid=residual <= tol, residual_norm=residual)
