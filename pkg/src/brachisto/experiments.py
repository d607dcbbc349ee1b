"""Monte Carlo distributions, entanglement-floor search and analytic case studies."""

from __future__ import annotations

import enum
import logging
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from .entanglement import (
    Measure,
    case_i_closed_form,
    check_measure,
    default_measure,
    entanglement_array,
    time_average_arrays,
    time_averaged_entanglement,
    unit_quadrature,
)
from .errors import ConfigError, DomainError, ShapeError
from .geodesic import decompose, evolve_amplitudes
from .qstate import PureState, Shape
from .sampling import (
    SYMMETRIC_SHAPES,
    RandomSource,
    SubspaceEmbedding,
    full_basis,
    random_orthogonal_arrays,
    symmetric_basis,
)

log = logging.getLogger(__name__)

# samples per RNG stream; fixed so results do not depend on the worker count
CHUNK_SIZE = 4096
DEFAULT_BINS = 100
DEFAULT_RESTARTS = 64


class Subspace(str, enum.Enum):
    SYMMETRIC = "symmetric"
    FULL = "full"


def make_embedding(shape: Shape, subspace: Subspace) -> SubspaceEmbedding:
    shape = tuple(shape)
    try:
        subspace = Subspace(subspace)
        if subspace is Subspace.SYMMETRIC:
            emb = symmetric_basis(shape)
        else:
            emb = full_basis(shape)
        check_measure(shape, default_measure(shape))
    except (ShapeError, ValueError) as exc:
        raise ConfigError(f"unsupported shape/subspace {shape}/{subspace}: {exc}") from exc
    return emb


@dataclass(frozen=True)
class ExperimentConfig:
    shape: Shape
    subspace: Subspace = Subspace.FULL
    samples: int = 100_000
    seed: int = 0
    bins: int = DEFAULT_BINS
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "shape", tuple(int(d) for d in self.shape))
        try:
            object.__setattr__(self, "subspace", Subspace(self.subspace))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if self.bins < 2:
            raise ConfigError("bins must be >= 2")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        make_embedding(self.shape, self.subspace)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["shape"] = list(self.shape)
        d["subspace"] = self.subspace.value
        return d


@dataclass(frozen=True, eq=False)
class DistributionSummary:
    """Histogram density of the time-averaged entanglement plus scalar statistics."""

    bin_centers: np.ndarray
    density: np.ndarray
    min: float
    max: float
    mean: float
    mode: float
    samples: int
    seed: int
    values: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def bin_width(self) -> float:
        return 1.0 / len(self.bin_centers)

    @property
    def histogram(self) -> list[tuple[float, float]]:
        return list(zip(self.bin_centers.tolist(), self.density.tolist()))

    def stats(self) -> dict:
        return {
            "min": self.min,
            "max": self.max,
            "mean": self.mean,
            "mode": self.mode,
            "samples": self.samples,
            "seed": self.seed,
        }


def _chunk_values(shape, subspace, seed, stream, n):
    emb = make_embedding(shape, subspace)
    a, b = random_orthogonal_arrays(emb, RandomSource(seed, stream), n)
    return time_average_arrays(a, b, shape)


def sample_time_averages(config: ExperimentConfig) -> np.ndarray:
    """Time-averaged entanglement of ``config.samples`` random orthogonal pairs.

    Chunk ``k`` of :data:`CHUNK_SIZE` samples always uses RNG stream ``k``, and
    chunks are concatenated in stream order, so the output is independent of
    ``config.workers``.
    """
    sizes = [CHUNK_SIZE] * (config.samples // CHUNK_SIZE)
    if config.samples % CHUNK_SIZE:
        sizes.append(config.samples % CHUNK_SIZE)
    args = [(config.shape, config.subspace, config.seed, k, n) for k, n in enumerate(sizes)]
    if config.workers == 1 or len(args) == 1:
        parts = [_chunk_values(*a) for a in args]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            parts = list(pool.map(lambda a: _chunk_values(*a), args))
    return np.concatenate(parts)


def summarize(values: np.ndarray, bins: int, seed: int, keep_values: bool = False):
    values = np.asarray(values, dtype=float)
    # rounding can push values a few ulp outside [0, 1]
    counts, edges = np.histogram(np.clip(values, 0.0, 1.0), bins=bins, range=(0.0, 1.0))
    width = 1.0 / bins
    density = counts / (values.size * width)
    centers = 0.5 * (edges[:-1] + edges[1:])
    return DistributionSummary(
        bin_centers=centers,
        density=density,
        min=float(values.min()),
        max=float(values.max()),
        mean=float(values.mean()),
        mode=float(centers[int(np.argmax(counts))]),
        samples=int(values.size),
        seed=int(seed),
        values=values if keep_values else None,
    )


def run_distribution(config: ExperimentConfig, keep_values: bool = False) -> DistributionSummary:
    log.info("sampling %d pairs for %s/%s", config.samples, config.shape, config.subspace.value)
    values = sample_time_averages(config)
    return summarize(values, config.bins, config.seed, keep_values)


# --- entanglement-floor search -------------------------------------------------

def n_params(coeff_dim: int) -> int:
    """Real parameters describing the first two columns of a U(coeff_dim) matrix."""
    return 4 * coeff_dim - 6


def _givens_chain(v: np.ndarray, start: int, angles, phases) -> np.ndarray:
    # rotations on planes (k, k+1), k = start, start+1, ..., applied in that order
    for j, k in enumerate(range(start, v.shape[0] - 1)):
        c, s = np.cos(angles[j]), np.sin(angles[j])
        e = np.exp(1j * phases[j])
        top, bot = v[k].copy(), v[k + 1].copy()
        v[k] = c * top - np.conj(e) * s * bot
        v[k + 1] = e * s * top + c * bot
    return v


def unitary_columns(params: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Two orthonormal vectors in C^n from ``4n - 6`` Givens angles and phases.

    The unitary is ``C0 @ C1`` with ``C0`` a chain of rotations on planes
    ``(0,1), ..., (n-2,n-1)`` and ``C1`` the same chain starting at plane
    ``(1,2)``.  Its first column sweeps the unit sphere modulo phase, the
    second sweeps the orthogonal complement of the first.
    """
    m0 = n - 1
    m1 = n - 2
    a0, p0 = params[:m0], params[m0:2 * m0]
    a1, p1 = params[2 * m0:2 * m0 + m1], params[2 * m0 + m1:2 * m0 + 2 * m1]
    v = np.zeros((n, 2), dtype=np.complex128)
    v[0, 0] = 1.0
    v[1, 1] = 1.0
    v[:, 1:] = _givens_chain(v[:, 1:], 1, a1, p1)
    v = _givens_chain(v, 0, a0, p0)
    return v[:, 0], v[:, 1]


def _restart(shape, subspace, seed, index, maxfev, maximize=False):
    emb = make_embedding(shape, subspace)
    n = emb.coeff_dim
    measure = default_measure(shape)
    nodes, weights = unit_quadrature()
    xi = 0.5 * np.pi * nodes
    cos, sin = np.cos(xi)[:, None], np.sin(xi)[:, None]
    sign = -1.0 if maximize else 1.0

    def objective(p):
        c0, c1 = unitary_columns(p, n)
        a, b = emb.embed(c0), emb.embed(c1)
        return sign * float(entanglement_array(cos * a + sin * b, shape, measure) @ weights)

    gen = RandomSource(seed, index).generator()
    p = np.concatenate([
        gen.uniform(0.0, 0.5 * np.pi, n - 1),
        gen.uniform(0.0, 2.0 * np.pi, n - 1),
        gen.uniform(0.0, 0.5 * np.pi, n - 2),
        gen.uniform(0.0, 2.0 * np.pi, n - 2),
    ])
    opts = dict(xatol=1e-10, fatol=1e-14, maxfev=maxfev, adaptive=True)
    res = minimize(objective, p, method="Nelder-Mead", options=opts)
    # a second simplex from the converged point escapes premature collapse
    res = minimize(objective, res.x, method="Nelder-Mead", options=opts)
    return sign * float(res.fun), res.x


def _restart_args(args):
    return _restart(*args)


def optimize_avg_entanglement(shape, subspace, budget: int = DEFAULT_RESTARTS, seed: int = 0,
                              maxfev: Optional[int] = None, workers: int = 1,
                              maximize: bool = False):
    """Multi-start Nelder-Mead over orthogonal pairs in a subspace.

    Returns ``(value, (psi_I, psi_F))`` with the extremal time-averaged
    entanglement found over ``budget`` restarts.  Restart ``k`` draws its
    starting simplex from RNG stream ``k``.
    """
    if budget < 1:
        raise DomainError(f"budget must be >= 1, got {budget}")
    shape = tuple(shape)
    subspace = Subspace(subspace)
    emb = make_embedding(shape, subspace)
    if emb.coeff_dim < 2:
        raise DomainError("need coeff_dim >= 2")
    if maxfev is None:
        maxfev = 20000 * emb.coeff_dim
    args = [(shape, subspace, seed, k, maxfev, maximize) for k in range(budget)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_restart_args, args))
    else:
        results = [_restart_args(a) for a in args]
    values = np.array([r[0] for r in results])
    best = int(np.argmax(values) if maximize else np.argmin(values))
    c0, c1 = unitary_columns(results[best][1], emb.coeff_dim)
    psi_I = PureState(emb.embed(c0), shape)
    psi_F = PureState(emb.embed(c1), shape)
    value = float(time_average_arrays(psi_I.amplitudes, psi_F.amplitudes, shape)[0])
    log.info("best of %d restarts: %.10g", budget, value)
    return value, (psi_I, psi_F)


def minimize_avg_entanglement(shape, subspace, budget: int = DEFAULT_RESTARTS, seed: int = 0,
                              maxfev: Optional[int] = None, workers: int = 1):
    """Smallest time-averaged entanglement over orthogonal pairs in a subspace."""
    return optimize_avg_entanglement(shape, subspace, budget, seed, maxfev, workers)


# --- analytic case studies -------------------------------------------------------

@dataclass(frozen=True)
class CaseResult:
    name: str
    computed: float
    reference: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(abs(self.computed - self.reference) <= self.tolerance)

    def to_dict(self) -> dict:
        return {**asdict(self), "passed": self.passed}


CASE_TOLERANCE = 1e-6
ALPHA_MIN = float(np.arcsin(1.0 / np.sqrt(3.0)))


def case_i_pair(alpha: float):
    s2 = 1.0 / np.sqrt(2.0)
    psi_I = PureState.basis((2, 2), 0, 0)
    psi_F = PureState([0.0, np.cos(alpha) * s2, np.cos(alpha) * s2, np.sin(alpha)], (2, 2))
    return psi_I, psi_F


def case_ii_pair():
    s2 = 1.0 / np.sqrt(2.0)
    return PureState([0, s2, s2, 0], (2, 2)), PureState([s2, 0, 0, s2], (2, 2))


def case_iii_pair():
    s2 = 1.0 / np.sqrt(2.0)
    return PureState([s2, 0, 0, -1j * s2], (2, 2)), PureState([1j * s2, 0, 0, -s2], (2, 2))


def run_case_studies() -> list[CaseResult]:
    """Evaluate the two-qubit case studies by quadrature against known values."""
    out = []
    for label, alpha, ref in [
        ("i, alpha=0", 0.0, 0.375),
        ("i, alpha=arcsin(1/sqrt3)", ALPHA_MIN, 0.088298),
        ("i, alpha=pi/2", 0.5 * np.pi, 0.5),
    ]:
        value = time_averaged_entanglement(decompose(*case_i_pair(alpha)))
        out.append(CaseResult(f"case {label}", value, ref, CASE_TOLERANCE))
        out.append(CaseResult(f"case {label} vs closed form", value,
                              case_i_closed_form(alpha), CASE_TOLERANCE))

    path = decompose(*case_ii_pair())
    out.append(CaseResult("case ii", time_averaged_entanglement(path), 0.5, CASE_TOLERANCE))

    path = decompose(*case_iii_pair())
    nodes, _ = unit_quadrature()
    states = evolve_amplitudes(path, path.xi_end * nodes)
    e_nodes = entanglement_array(states, path.shape, Measure.BIPARTITE)
    worst = float(e_nodes[np.argmax(np.abs(e_nodes - 1.0))])
    out.append(CaseResult("case iii, E at every node", worst, 1.0, CASE_TOLERANCE))
    out.append(CaseResult("case iii", time_averaged_entanglement(path), 1.0, CASE_TOLERANCE))
    return out
