"""Time-optimal evolution between two pure states.

Under a bound ``2*omega`` on the spread of Hamiltonian eigenvalues the
fastest path from ``psi_I`` to ``psi_F`` is the great circle in the plane
they span,

    psi(xi) = [cos xi - cot(theta/2) sin xi] psi_I + [sin xi / sin(theta/2)] psi_F

with ``xi = omega t / hbar`` running over ``[0, theta/2]`` and
``cos(theta/2) = |<psi_I|psi_F>|``.  ``hbar = 1`` throughout; ``omega`` only
enters through :func:`duration`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePathError, DimensionError, DomainError
from .qstate import PureState

DEGENERATE_THETA = 1e-8
# below this overlap the pair counts as orthogonal and psi_F keeps its phase
ORTHOGONAL_OVERLAP = 1e-10
XI_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class GeodesicPath:
    """An (initial, final) pair in canonical form.

    ``psi_F = cos(theta/2) psi_I + exp(i(phi + pi/2)) sin(theta/2) psi_I_perp``
    up to the global phase removed in ``psi_F_canonical``.
    """

    psi_I: PureState
    psi_F: PureState
    theta: float
    phi: float
    psi_I_perp: PureState
    psi_F_canonical: PureState

    @property
    def shape(self):
        return self.psi_I.shape

    @property
    def xi_end(self) -> float:
        return 0.5 * self.theta


def canonicalize_arrays(psi_I: np.ndarray, psi_F: np.ndarray):
    """Separation angle and phase-aligned final states for stacks of pairs.

    Returns ``(theta, psi_F_canonical)`` where ``<psi_I|psi_F_canonical>`` is
    real and non-negative.  For (numerically) orthogonal pairs the overlap
    phase is noise, while the relative phase of ``psi_F`` selects which
    optimal path is taken, so ``psi_F`` is returned unchanged.
    """
    overlap = np.einsum("...i,...i->...", psi_I.conj(), psi_F)
    mag = np.abs(overlap)
    rotate = mag > ORTHOGONAL_OVERLAP
    phase = np.where(rotate, overlap / np.where(rotate, mag, 1.0), 1.0)
    theta = 2.0 * np.arccos(np.clip(mag, 0.0, 1.0))
    return theta, psi_F * np.conj(phase)[..., None]


def path_amplitudes(psi_I: np.ndarray, psi_F_can: np.ndarray, theta, xi) -> np.ndarray:
    """Evaluate the optimal path on a grid of ``xi`` values.

    Parameters
    ----------
    psi_I, psi_F_can : ndarray, shape (..., D)
        Initial and phase-aligned final amplitudes.
    theta : float or ndarray, shape (...)
    xi : ndarray, shape (..., K)

    Returns
    -------
    ndarray, shape (..., K, D)
        Unnormalized output of the formula; unit norm holds analytically.
    """
    theta = np.asarray(theta, dtype=float)
    xi = np.asarray(xi, dtype=float)
    half = 0.5 * theta[..., None]
    s_half = np.sin(half)
    a = np.cos(xi) - np.cos(half) / s_half * np.sin(xi)
    b = np.sin(xi) / s_half
    return a[..., None] * psi_I[..., None, :] + b[..., None] * psi_F_can[..., None, :]


def decompose(psi_I: PureState, psi_F: PureState) -> GeodesicPath:
    """Bring a pair of states into the canonical form used by :func:`evolve`.

    Raises
    ------
    DegeneratePathError
        If the states are the same ray (``theta < 1e-8``).
    """
    if psi_I.shape != psi_F.shape:
        raise DimensionError(f"shape mismatch: {psi_I.shape} vs {psi_F.shape}")
    a, f = psi_I.amplitudes, psi_F.amplitudes
    theta, f_can = canonicalize_arrays(a, f)
    theta = float(theta)
    if theta < DEGENERATE_THETA:
        raise DegeneratePathError(
            f"separation angle {theta:.3g} below {DEGENERATE_THETA:g}; "
            "initial and final states coincide up to phase"
        )
    # Gram-Schmidt of the final state as given; its phase fixes phi
    perp = f - np.vdot(a, f) * a
    perp = perp / np.linalg.norm(perp)
    coeff = np.vdot(perp, f_can)
    phi = float(np.mod(np.angle(coeff) - 0.5 * np.pi, 2.0 * np.pi))
    return GeodesicPath(
        psi_I=psi_I,
        psi_F=psi_F,
        theta=theta,
        phi=phi,
        psi_I_perp=PureState(perp, psi_I.shape),
        psi_F_canonical=PureState(f_can, psi_I.shape),
    )


def evolve_amplitudes(path: GeodesicPath, xi) -> np.ndarray:
    """Raw amplitudes at one or many ``xi`` values, without renormalization."""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    if np.any(xi < -XI_SLACK) or np.any(xi > path.xi_end + XI_SLACK):
        raise DomainError(f"xi must lie in [0, {path.xi_end:.17g}]")
    xi = np.clip(xi, 0.0, path.xi_end)
    return path_amplitudes(
        path.psi_I.amplitudes, path.psi_F_canonical.amplitudes, path.theta, xi
    )


def evolve(path: GeodesicPath, xi: float) -> PureState:
    """State reached at path parameter ``xi = omega t / hbar``."""
    return PureState(evolve_amplitudes(path, xi)[0], path.shape)


def duration(theta: float, omega: float) -> float:
    """Travel time ``theta / (2 omega)`` in units with ``hbar = 1``."""
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega}")
    return theta / (2.0 * omega)
