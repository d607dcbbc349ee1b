import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brachisto.entanglement import (
    Measure,
    case_i_closed_form,
    case_i_pointwise,
    entanglement,
    linear_entropy,
    multipartite_entanglement,
    time_averaged_entanglement,
)
from brachisto.errors import ShapeError
from brachisto.experiments import case_i_pair, case_ii_pair, case_iii_pair
from brachisto.geodesic import decompose, duration, evolve
from brachisto.qstate import PureState

from .oracles import brute_linear_entropy, random_unit, adaptive_average

S2 = 1 / np.sqrt(2)
S3 = 1 / np.sqrt(3)


def test_linear_entropy_examples():
    assert linear_entropy(PureState.basis((2, 2), 0, 0)) == pytest.approx(0, abs=1e-15)
    assert linear_entropy(PureState([1, 0, 0, 1], (2, 2))) == pytest.approx(1, abs=1e-15)
    assert linear_entropy(PureState(np.eye(3).ravel(), (3, 3))) == pytest.approx(1, abs=1e-15)


def test_linear_entropy_uses_smaller_subsystem():
    rng = np.random.default_rng(2)
    for shape in [(2, 3), (3, 2), (2, 4)]:
        amps = random_unit(rng, int(np.prod(shape)))
        small = int(np.argmin(shape))
        val = linear_entropy(PureState(amps, shape))
        assert val == pytest.approx(brute_linear_entropy(amps, shape, small), abs=1e-12)
        assert 0 <= val <= 1 + 1e-10


@pytest.mark.parametrize("xi", np.linspace(0, np.pi / 2, 7))
@pytest.mark.parametrize("alpha", [0.0, 0.4, np.arcsin(S3), 1.2, np.pi / 2])
def test_case_i_pointwise_law(xi, alpha):
    path = decompose(*case_i_pair(alpha))
    assert linear_entropy(evolve(path, xi)) == pytest.approx(case_i_pointwise(xi, alpha), abs=1e-12)


def test_linear_entropy_shape_error():
    with pytest.raises(ShapeError):
        linear_entropy(PureState.basis((2, 2, 2), 0, 0, 0))


def test_multipartite_examples():
    assert multipartite_entanglement(PureState.basis((2, 2, 2), 0, 0, 0)) == pytest.approx(0, abs=1e-15)
    ghz = PureState([1, 0, 0, 0, 0, 0, 0, 1], (2, 2, 2))
    assert multipartite_entanglement(ghz) == pytest.approx(1, abs=1e-15)


def test_multipartite_w_state_against_oracle():
    w = np.zeros(8)
    w[[1, 2, 4]] = S3
    oracle = np.mean([brute_linear_entropy(w, (2, 2, 2), k) for k in range(3)])
    assert oracle == pytest.approx(8 / 9, abs=1e-14)
    assert multipartite_entanglement(PureState(w, (2, 2, 2))) == pytest.approx(oracle, abs=1e-14)


@pytest.mark.parametrize("shape", [(2, 2), (2, 2, 2, 2), (3, 3, 3)])
def test_multipartite_shape_error(shape):
    with pytest.raises(ShapeError):
        multipartite_entanglement(PureState.basis(shape, *([0] * len(shape))))


def test_measure_dispatch():
    ghz = PureState([1, 0, 0, 0, 0, 0, 0, 1], (2, 2, 2))
    assert entanglement(ghz) == pytest.approx(1)
    with pytest.raises(ShapeError):
        entanglement(ghz, Measure.BIPARTITE)
    with pytest.raises(ShapeError):
        entanglement(PureState.basis((2, 2), 0, 0), Measure.AVERAGED)


def test_time_average_case_studies():
    assert time_averaged_entanglement(decompose(*case_ii_pair())) == pytest.approx(0.5, abs=1e-12)
    assert time_averaged_entanglement(decompose(*case_i_pair(0.0))) == pytest.approx(3 / 8, abs=1e-12)
    assert time_averaged_entanglement(decompose(*case_iii_pair())) == pytest.approx(1, abs=1e-12)
    fact = decompose(PureState.product([1, 0], [S2, 1j * S2]), PureState.product([0, 1], [S2, 1j * S2]))
    assert time_averaged_entanglement(fact) == pytest.approx(0, abs=1e-14)


def test_case_ii_pointwise():
    # cos(xi)(|01>+|10>)/sqrt2 + sin(xi)(|00>+|11>)/sqrt2 has coefficient
    # determinant (sin^2 - cos^2)/2, so E = cos^2(2 xi); it averages to 1/2
    path = decompose(*case_ii_pair())
    for xi in np.linspace(0, np.pi / 2, 50):
        state = evolve(path, xi)
        assert linear_entropy(state) == pytest.approx(np.cos(2 * xi) ** 2, abs=1e-10)
        assert linear_entropy(state) == pytest.approx(
            brute_linear_entropy(state.amplitudes, (2, 2), 0), abs=1e-12)
    # midpoint is the product state |++>
    assert linear_entropy(evolve(path, np.pi / 4)) == pytest.approx(0, abs=1e-15)


def test_closed_form_values():
    assert case_i_closed_form(0.0) == pytest.approx(0.375, abs=1e-15)
    assert case_i_closed_form(np.pi / 2) == pytest.approx(0.5, abs=1e-15)
    assert case_i_closed_form(np.arcsin(S3)) == pytest.approx(0.088298, abs=5e-7)


def test_closed_form_against_adaptive_quadrature():
    # independent route: integrate the pointwise law directly
    for alpha in (0.1, 0.7, 1.3):
        val = adaptive_average(lambda x: case_i_pointwise(x, alpha), 0.0, np.pi / 2)
        assert case_i_closed_form(alpha) == pytest.approx(val, abs=1e-12)


def test_quadrature_matches_closed_form_sweep():
    for alpha in np.linspace(0, np.pi / 2, 100):
        q = time_averaged_entanglement(decompose(*case_i_pair(alpha)))
        assert abs(q - case_i_closed_form(alpha)) < 1e-10


def test_time_average_non_orthogonal_against_adaptive_quadrature():
    rng = np.random.default_rng(29)
    for shape in [(2, 2), (2, 3), (2, 2, 2)]:
        d = int(np.prod(shape))
        path = decompose(PureState(random_unit(rng, d), shape), PureState(random_unit(rng, d), shape))
        ref = adaptive_average(lambda x: entanglement(evolve(path, x)), 0.0, path.xi_end)
        assert time_averaged_entanglement(path) == pytest.approx(ref, abs=1e-10)


@pytest.mark.parametrize("omegas", [(1.0, 3.7), (0.25, 10.0)])
def test_omega_independence(omegas):
    rng = np.random.default_rng(31)
    x, w = np.polynomial.legendre.leggauss(64)
    for shape in [(2, 2), (3, 3), (2, 2, 2)]:
        d = int(np.prod(shape))
        path = decompose(PureState(random_unit(rng, d), shape), PureState(random_unit(rng, d), shape))
        xi_route = time_averaged_entanglement(path)
        for omega in omegas:
            tau = duration(path.theta, omega)
            t = 0.5 * tau * (x + 1)
            e = np.array([entanglement(evolve(path, omega * ti)) for ti in t])
            t_route = (0.5 * tau * w @ e) / tau
            assert t_route == pytest.approx(xi_route, abs=1e-10)


def product_pair(rng, overlap_one=False):
    phi_r = random_unit(rng, 2)
    phi_s = phi_r * np.exp(1j * rng.uniform(0, 2 * np.pi)) if overlap_one else random_unit(rng, 2)
    zero, one = np.array([1, 0]), np.array([0, 1])
    return PureState.product(zero, phi_r), PureState.product(one, phi_s), abs(np.vdot(phi_r, phi_s))


def test_zero_average_iff_shared_factor():
    rng = np.random.default_rng(37)
    for _ in range(300):
        psi_I, psi_F, ov = product_pair(rng)
        path = decompose(psi_I, psi_F)
        mid = linear_entropy(evolve(path, np.pi / 4))
        assert mid == pytest.approx(1 - ov ** 2, abs=1e-10)
        assert time_averaged_entanglement(path) > 0
        psi_I, psi_F, ov = product_pair(rng, overlap_one=True)
        assert ov == pytest.approx(1, abs=1e-12)
        assert time_averaged_entanglement(decompose(psi_I, psi_F)) < 1e-12


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), swap=st.booleans(), dims=st.sampled_from([(2, 2), (2, 3), (3, 3), (3, 2)]))
def test_shared_factor_pairs_have_zero_average(seed, swap, dims):
    rng = np.random.default_rng(seed)
    da, db = dims
    if swap:  # first subsystem is the idle one
        fixed = random_unit(rng, da)
        a = random_unit(rng, db)
        b = random_unit(rng, db)
        b = b - np.vdot(a, b) * a
        psi_I, psi_F = PureState.product(fixed, a), PureState.product(fixed, b)
    else:
        fixed = random_unit(rng, db)
        a = random_unit(rng, da)
        b = random_unit(rng, da)
        b = b - np.vdot(a, b) * a
        psi_I, psi_F = PureState.product(a, fixed), PureState.product(b, fixed)
    assert time_averaged_entanglement(decompose(psi_I, psi_F)) < 1e-12
