"""Pure states on multipartite Hilbert spaces, reduced density matrices and purity.

Amplitudes are stored row-major over subsystem indices with subsystem A
slowest, i.e. ``|i_A i_B>`` lives at index ``i_A * N_B + i_B``.

Besides the immutable :class:`PureState` / :class:`DensityMatrix` objects,
the module exposes array-level helpers (``*_array``) operating on stacks of
amplitude vectors of shape ``(..., D)``; the Monte Carlo code uses those
directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError, SubsystemIndexError

NORM_TOL = 1e-10

Shape = tuple[int, ...]


def _as_shape(shape: Sequence[int]) -> Shape:
    shape = tuple(int(d) for d in shape)
    if not shape or any(d < 2 for d in shape):
        raise DimensionError(f"local dimensions must all be >= 2, got {shape}")
    return shape


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector together with its local dimensions.

    The constructor normalizes its input; a zero vector is rejected.
    """

    amplitudes: np.ndarray
    shape: Shape

    def __post_init__(self):
        shape = _as_shape(self.shape)
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != int(np.prod(shape)):
            raise DimensionError(
                f"{amps.size} amplitudes do not match shape {shape} "
                f"(expected {int(np.prod(shape))})"
            )
        norm = np.linalg.norm(amps)
        if not np.isfinite(norm) or norm == 0.0:
            raise DimensionError("cannot normalize a zero or non-finite vector")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "amplitudes", _frozen(amps / norm))

    @classmethod
    def basis(cls, shape: Sequence[int], *digits: int) -> "PureState":
        """Computational basis state ``|digits[0] digits[1] ...>``."""
        shape = _as_shape(shape)
        if len(digits) != len(shape):
            raise DimensionError(f"need {len(shape)} digits, got {len(digits)}")
        amps = np.zeros(int(np.prod(shape)), dtype=np.complex128)
        amps[np.ravel_multi_index(digits, shape)] = 1.0
        return cls(amps, shape)

    @classmethod
    def product(cls, *factors: Sequence[complex]) -> "PureState":
        """Tensor product of single-subsystem vectors, first factor slowest."""
        vecs = [np.asarray(f, dtype=np.complex128).reshape(-1) for f in factors]
        amps = vecs[0]
        for v in vecs[1:]:
            amps = np.kron(amps, v)
        return cls(amps, tuple(v.size for v in vecs))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.shape)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)

    def __repr__(self):
        return f"PureState(shape={self.shape}, amplitudes={np.round(self.amplitudes, 6)!r})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace matrix. Positivity is checked by :meth:`is_psd`."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"density matrix must be square, got {m.shape}")
        if not np.allclose(m, m.conj().T, rtol=0.0, atol=NORM_TOL):
            raise DimensionError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > NORM_TOL:
            raise DimensionError(f"density matrix trace {np.trace(m).real} != 1")
        object.__setattr__(self, "entries", _frozen(m))

    @classmethod
    def from_state(cls, state: PureState) -> "DensityMatrix":
        a = state.amplitudes
        return cls(np.outer(a, a.conj()))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def is_psd(self, tol: float = NORM_TOL) -> bool:
        return bool(np.linalg.eigvalsh(self.entries).min() >= -tol)


def inner_product(a: PureState, b: PureState) -> complex:
    """Return ``<a|b>`` (``a`` conjugated)."""
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def reduced_density_array(amps: np.ndarray, shape: Shape, keep: int) -> np.ndarray:
    """Reduced density matrices of subsystem ``keep`` for a stack of vectors.

    Parameters
    ----------
    amps : ndarray, shape (..., D)
    shape : tuple of int
        Local dimensions, ``prod(shape) == D``.
    keep : int
        Subsystem that survives the trace.

    Returns
    -------
    ndarray, shape (..., shape[keep], shape[keep])
    """
    lead = amps.shape[:-1]
    n = len(shape)
    t = amps.reshape(lead + tuple(shape))
    t = np.moveaxis(t, len(lead) + keep, len(lead))
    m = t.reshape(lead + (shape[keep], -1))
    return m @ np.conj(np.swapaxes(m, -1, -2))


def purity_array(rho: np.ndarray) -> np.ndarray:
    """``Tr(rho^2)`` for a stack of Hermitian matrices."""
    return np.einsum("...ij,...ij->...", rho, rho.conj()).real


def reduced_purity_array(amps: np.ndarray, shape: Shape, keep: int) -> np.ndarray:
    return purity_array(reduced_density_array(amps, shape, keep))


def partial_trace(state: PureState, keep: int) -> DensityMatrix:
    """Reduced density matrix of subsystem ``keep``, all others traced out."""
    n = len(state.shape)
    if n < 2:
        raise DimensionError("partial trace needs at least two subsystems")
    if not isinstance(keep, (int, np.integer)) or not 0 <= keep < n:
        raise SubsystemIndexError(f"subsystem index {keep!r} not in range({n})")
    rho = reduced_density_array(state.amplitudes, state.shape, int(keep))
    # strip rounding asymmetry so the Hermitian check is exact
    return DensityMatrix(0.5 * (rho + rho.conj().T))


def purity(rho: DensityMatrix) -> float:
    return float(purity_array(rho.entries))
