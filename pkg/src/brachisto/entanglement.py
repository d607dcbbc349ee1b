"""Linear-entropy entanglement and its time average along optimal paths."""

from __future__ import annotations

import enum
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import DegeneratePathError, ShapeError
from .geodesic import DEGENERATE_THETA, GeodesicPath, canonicalize_arrays, path_amplitudes
from .qstate import PureState, Shape, reduced_purity_array

QUADRATURE_NODES = 64


class Measure(str, enum.Enum):
    BIPARTITE = "bipartite_linear_entropy"
    AVERAGED = "averaged_single_subsystem_bipartitions"


def default_measure(shape: Shape) -> Measure:
    return Measure.BIPARTITE if len(shape) == 2 else Measure.AVERAGED


def check_measure(shape: Shape, measure: Measure) -> None:
    measure = Measure(measure)
    if measure is Measure.BIPARTITE and len(shape) != 2:
        raise ShapeError(f"bipartite linear entropy needs 2 subsystems, got {shape}")
    if measure is Measure.AVERAGED and tuple(shape) != (2, 2, 2):
        raise ShapeError(f"averaged bipartition measure needs shape (2, 2, 2), got {shape}")


def linear_entropy_array(amps: np.ndarray, shape: Shape) -> np.ndarray:
    """``N/(N-1) (1 - Tr rho^2)`` of the smaller subsystem, vectorized over ``amps``."""
    keep = 1 if shape[1] < shape[0] else 0
    n = shape[keep]
    return n / (n - 1) * (1.0 - reduced_purity_array(amps, shape, keep))


def averaged_entropy_array(amps: np.ndarray, shape: Shape) -> np.ndarray:
    """Mean single-qubit-vs-rest linear entropy over every qubit."""
    total = 0.0
    for k in range(len(shape)):
        total = total + 2.0 * (1.0 - reduced_purity_array(amps, shape, k))
    return total / len(shape)


def entanglement_array(amps: np.ndarray, shape: Shape, measure: Optional[Measure] = None):
    measure = default_measure(shape) if measure is None else Measure(measure)
    check_measure(shape, measure)
    if measure is Measure.BIPARTITE:
        return linear_entropy_array(amps, shape)
    return averaged_entropy_array(amps, shape)


def linear_entropy(state: PureState) -> float:
    """Normalized linear entropy of a bipartite pure state, in ``[0, 1]``.

    The reduced state is taken on the subsystem of smaller dimension (ties go
    to the first subsystem).
    """
    check_measure(state.shape, Measure.BIPARTITE)
    return float(linear_entropy_array(state.amplitudes, state.shape))


def multipartite_entanglement(state: PureState) -> float:
    """Three-qubit entanglement: average over the three qubit|pair cuts."""
    check_measure(state.shape, Measure.AVERAGED)
    return float(averaged_entropy_array(state.amplitudes, state.shape))


def entanglement(state: PureState, measure: Optional[Measure] = None) -> float:
    return float(entanglement_array(state.amplitudes, state.shape, measure))


@lru_cache(maxsize=None)
def unit_quadrature(order: int = QUADRATURE_NODES):
    """Gauss-Legendre nodes on ``[0, 1]`` with weights summing to 1."""
    x, w = np.polynomial.legendre.leggauss(order)
    nodes, weights = 0.5 * (x + 1.0), 0.5 * w
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def time_average_arrays(psi_I, psi_F, shape: Shape, measure: Optional[Measure] = None,
                        order: int = QUADRATURE_NODES) -> np.ndarray:
    """Time-averaged entanglement for a stack of (initial, final) pairs.

    Parameters
    ----------
    psi_I, psi_F : ndarray, shape (N, D)
        Normalized amplitude vectors; pairs need not be orthogonal.
    shape : tuple of int
    measure : Measure, optional
        Defaults to :func:`default_measure`.

    Returns
    -------
    ndarray, shape (N,)
    """
    measure = default_measure(shape) if measure is None else Measure(measure)
    check_measure(shape, measure)
    psi_I = np.atleast_2d(psi_I)
    theta, f_can = canonicalize_arrays(psi_I, np.atleast_2d(psi_F))
    if np.any(theta < DEGENERATE_THETA):
        raise DegeneratePathError("pair with coinciding initial and final rays")
    nodes, weights = unit_quadrature(order)
    xi = 0.5 * theta[:, None] * nodes
    states = path_amplitudes(psi_I, f_can, theta, xi)
    return entanglement_array(states, shape, measure) @ weights


def time_averaged_entanglement(path: GeodesicPath, measure: Optional[Measure] = None,
                               order: int = QUADRATURE_NODES) -> float:
    """``(2/theta) * integral_0^{theta/2} E(psi(xi)) dxi`` by Gauss-Legendre quadrature.

    The result does not depend on ``omega``: the time average over
    ``[0, tau]`` is the same integral after substituting ``xi = omega t``.
    """
    measure = default_measure(path.shape) if measure is None else Measure(measure)
    check_measure(path.shape, measure)
    nodes, weights = unit_quadrature(order)
    xi = path.xi_end * nodes
    states = path_amplitudes(
        path.psi_I.amplitudes, path.psi_F_canonical.amplitudes, path.theta, xi
    )
    return float(entanglement_array(states, path.shape, measure) @ weights)


def case_i_closed_form(alpha: float) -> float:
    """Exact time average for ``|00> -> cos(a)(|01>+|10>)/sqrt2 + sin(a)|11>``."""
    c2 = np.cos(alpha) ** 2
    s = np.sin(alpha)
    return float(0.375 * c2 * c2 - 2.0 / np.pi * c2 * s + 0.5 * s * s)


def case_i_pointwise(xi: float, alpha: float) -> float:
    """Instantaneous entanglement along the same family."""
    return float((np.cos(alpha) ** 2 * np.sin(xi) ** 2 - np.sin(alpha) * np.sin(2 * xi)) ** 2)
