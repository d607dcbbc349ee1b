"""Haar-random unitaries, random orthogonal pairs and subspace embeddings.

Randomness comes from numpy's PCG64 bit generator seeded through
``SeedSequence(seed, spawn_key=(stream,))``: a ``(seed, stream)`` pair
always reproduces the same draws, and different streams are statistically
independent, so parallel workers never share generator state.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import DomainError, ShapeError
from .qstate import NORM_TOL, PureState, Shape

SYMMETRIC_SHAPES = ((2, 2), (2, 2, 2), (3, 3))


@dataclass(frozen=True)
class RandomSource:
    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(int(self.seed) % 2**64, spawn_key=(int(self.stream),))
        return np.random.Generator(np.random.PCG64(ss))


RngLike = Union[RandomSource, np.random.Generator]


def _generator(rng: RngLike) -> np.random.Generator:
    return rng.generator() if isinstance(rng, RandomSource) else rng


def haar_unitary(dim: int, rng: RngLike, size: int | None = None) -> np.ndarray:
    """Draw unitaries from the Haar measure on U(dim).

    QR of a complex Ginibre matrix, with each column of Q multiplied by the
    phase of the matching diagonal entry of R; without that correction the
    result is not Haar distributed.

    Parameters
    ----------
    dim : int
    rng : RandomSource or numpy Generator
    size : int, optional
        Number of matrices; ``None`` returns a single ``(dim, dim)`` matrix.
    """
    if dim < 1:
        raise DomainError(f"dim must be >= 1, got {dim}")
    gen = _generator(rng)
    lead = () if size is None else (int(size),)
    z = gen.standard_normal(lead + (dim, dim, 2)).view(np.complex128)[..., 0]
    z *= np.sqrt(0.5)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[..., None, :]


@dataclass(frozen=True, eq=False)
class SubspaceEmbedding:
    """Isometry from ``coeff_dim`` coefficients into the full space.

    ``matrix`` holds the orthonormal basis vectors as rows, so a coefficient
    vector ``c`` embeds as ``c @ matrix``.
    """

    matrix: np.ndarray
    full_shape: Shape
    name: str = "custom"

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        shape = tuple(self.full_shape)
        if m.ndim != 2 or m.shape[1] != int(np.prod(shape)):
            raise ShapeError(f"basis rows must have length {int(np.prod(shape))}")
        if not np.allclose(m @ m.conj().T, np.eye(m.shape[0]), rtol=0.0, atol=NORM_TOL):
            raise ShapeError("embedding basis is not orthonormal")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "full_shape", shape)

    @property
    def coeff_dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def basis(self) -> tuple[PureState, ...]:
        return tuple(PureState(row, self.full_shape) for row in self.matrix)

    def embed(self, coeffs: np.ndarray) -> np.ndarray:
        return np.asarray(coeffs) @ self.matrix


def _symmetrized(shape: Shape, occupation: Sequence[int]) -> np.ndarray:
    v = np.zeros(int(np.prod(shape)))
    for digits in set(itertools.permutations(occupation)):
        v[np.ravel_multi_index(digits, shape)] = 1.0
    return v / np.linalg.norm(v)


# row order of the symmetric bases
_OCCUPATIONS = {
    (2, 2): [(0, 0), (0, 1), (1, 1)],
    (2, 2, 2): [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)],
    (3, 3): [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)],
}


def symmetric_basis(shape: Sequence[int]) -> SubspaceEmbedding:
    """Permutation-invariant subspace: Dicke-type states of identical subsystems."""
    shape = tuple(shape)
    if shape not in _OCCUPATIONS:
        raise ShapeError(f"symmetric subspace not supported for shape {shape}")
    rows = [_symmetrized(shape, occ) for occ in _OCCUPATIONS[shape]]
    return SubspaceEmbedding(np.array(rows), shape, "symmetric")


def full_basis(shape: Sequence[int]) -> SubspaceEmbedding:
    shape = tuple(shape)
    return SubspaceEmbedding(np.eye(int(np.prod(shape))), shape, "full")


def random_orthogonal_arrays(embedding: SubspaceEmbedding, rng: RngLike, n: int):
    """``n`` Haar-random orthogonal pairs as two ``(n, D)`` amplitude arrays."""
    if embedding.coeff_dim < 2:
        raise DomainError("need coeff_dim >= 2 for an orthogonal pair")
    u = haar_unitary(embedding.coeff_dim, rng, size=n)
    return embedding.embed(u[..., :, 0]), embedding.embed(u[..., :, 1])


def random_orthogonal_pair(embedding: SubspaceEmbedding, rng: RngLike):
    """Images of the first two columns of a Haar unitary under ``embedding``."""
    a, b = random_orthogonal_arrays(embedding, rng, 1)
    return PureState(a[0], embedding.full_shape), PureState(b[0], embedding.full_shape)
