"""Independent reference computations used by the tests.

Nothing here imports the package's numerical code.
"""

import itertools

import numpy as np
from scipy.integrate import quad


def brute_reduced_density(amps, shape, keep):
    """Reduced density matrix by explicit summation over basis indices."""
    amps = np.asarray(amps, dtype=complex)
    dk = shape[keep]
    rho = np.zeros((dk, dk), dtype=complex)
    strides = [int(np.prod(shape[k + 1:])) for k in range(len(shape))]
    others = [range(d) if k != keep else [None] for k, d in enumerate(shape)]
    for i in range(dk):
        for j in range(dk):
            total = 0j
            for rest in itertools.product(*others):
                ii = sum((i if k == keep else r) * strides[k] for k, r in enumerate(rest))
                jj = sum((j if k == keep else r) * strides[k] for k, r in enumerate(rest))
                total += amps[ii] * np.conj(amps[jj])
            rho[i, j] = total
    return rho


def brute_linear_entropy(amps, shape, keep):
    rho = brute_reduced_density(amps, shape, keep)
    n = shape[keep]
    return n / (n - 1) * (1.0 - np.trace(rho @ rho).real)


def gaussian_unit_vectors(rng, n, dim):
    """Uniform unit vectors on the complex sphere from normalized Gaussians."""
    z = rng.standard_normal((n, dim)) + 1j * rng.standard_normal((n, dim))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def random_unit(rng, dim):
    return gaussian_unit_vectors(rng, 1, dim)[0]


def adaptive_average(f, a, b):
    """Mean of ``f`` on ``[a, b]`` by adaptive QUADPACK integration."""
    val, _ = quad(f, a, b, epsabs=1e-13, epsrel=1e-13, limit=200)
    return val / (b - a)
