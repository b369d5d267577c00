import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import angle, azimuth, rank2_params, unitary2, weight
from steerkit import states
from steerkit.states import ParameterError, PureState2Q, Rank2Params

Q = math.pi / 4


def test_param_ranges():
    with pytest.raises(ParameterError) as err:
        Rank2Params(2.0, 0, 0, 0, 0.5)
    assert err.value.name == "theta"
    with pytest.raises(ParameterError):
        Rank2Params(0, 0, 0, 2 * math.pi, 0.5)
    with pytest.raises(ParameterError):
        Rank2Params(0, 0, 0, 0, 1.5)
    with pytest.raises(ParameterError):
        Rank2Params(0, float("nan"), 0, 0, 0.5)
    p = Rank2Params(0.1, 0.2, 0.3, 0.4, 0.25)
    assert p.nu2 == 0.75 and p.replace(nu1=1.0).nu2 == 0.0


def test_pure_state_norm_check():
    with pytest.raises(ParameterError):
        PureState2Q(np.array([1.0, 1.0, 0, 0]))
    psi = PureState2Q.normalized([1.0, 1.0, 0, 0])
    assert abs(np.linalg.norm(psi.amplitudes) - 1) < 1e-15


def test_psi2_named_states():
    plus = states.make_psi2(Rank2Params(0.3, 0.0, Q, 1.0, 0.5)).amplitudes
    assert np.allclose(plus, [0, 1 / math.sqrt(2), 1 / math.sqrt(2), 0])
    minus = states.make_psi2(Rank2Params(Q, math.pi / 2, 0.0, 0.0, 0.5)).amplitudes
    assert np.allclose(minus, [1 / math.sqrt(2), 0, 0, -1 / math.sqrt(2)])


@given(rank2_params())
def test_psi1_psi2_orthonormal(p):
    u = states.make_psi1(p.theta).amplitudes
    v = states.make_psi2(p).amplitudes
    assert abs(np.vdot(u, v)) < 1e-14
    assert abs(np.vdot(v, v) - 1) < 1e-14


@given(rank2_params())
def test_density_entries(p):
    t, f, a, b, n1, n2 = p.theta, p.phi, p.alpha, p.beta, p.nu1, p.nu2
    e = np.exp(1j * b)
    ct, sf, cf, sa, ca = math.cos(t), math.sin(f), math.cos(f), math.sin(a), math.cos(a)
    st_ = math.sin(t)
    ref = np.zeros((4, 4), dtype=complex)
    ref[0, 0] = n1 * ct ** 2 + n2 * st_ ** 2 * sf ** 2
    ref[0, 1] = n2 * e * ca * st_ * sf * cf
    ref[0, 2] = n2 * e * sa * st_ * sf * cf
    ref[0, 3] = st_ * ct * (n1 - n2 * sf ** 2)
    ref[1, 1] = n2 * ca ** 2 * cf ** 2
    ref[1, 2] = n2 * sa * ca * cf ** 2
    ref[1, 3] = -n2 * np.conj(e) * ca * ct * sf * cf
    ref[2, 2] = n2 * sa ** 2 * cf ** 2
    ref[2, 3] = -n2 * np.conj(e) * sa * ct * sf * cf
    ref[3, 3] = n1 * st_ ** 2 + n2 * ct ** 2 * sf ** 2
    ref = np.triu(ref) + np.triu(ref, 1).conj().T
    assert np.max(np.abs(states.rank2_density(p) - ref)) < 1e-14


@given(rank2_params())
def test_density_spectrum(p):
    w = np.sort(np.linalg.eigvalsh(states.rank2_density(p)))
    assert np.allclose(w, sorted([p.nu1, p.nu2, 0.0, 0.0]), atol=1e-12)


def test_pure_concurrence_examples():
    assert states.pure_concurrence(states.make_psi1(Q)) == pytest.approx(1.0)
    assert states.pure_concurrence(states.make_psi1(0.0)) == 0.0
    assert states.pure_concurrence(states.make_psi1(math.pi / 6)) == pytest.approx(math.sqrt(3) / 2, abs=1e-15)


@given(angle, angle, angle, azimuth)
def test_psi2_concurrence_formula(t, f, a, b):
    psi = states.make_psi2(Rank2Params(t, f, a, b, 0.0))
    ref = abs(np.exp(2j * b) * math.sin(2 * t) * math.sin(f) ** 2 + math.sin(2 * a) * math.cos(f) ** 2)
    assert abs(states.pure_concurrence(psi) - ref) < 1e-12


def test_schmidt_examples():
    r = states.schmidt_decompose(states.make_psi1(0.3))
    assert (r.kappa1, r.kappa2) == pytest.approx((math.cos(0.3), math.sin(0.3)), abs=1e-14)
    r = states.schmidt_decompose(PureState2Q(np.array([0, 1, 0, 0], dtype=complex)))
    assert (r.kappa1, r.kappa2) == pytest.approx((1.0, 0.0), abs=1e-14)
    psi = PureState2Q(np.array([0, 1, 1, 0], dtype=complex) / math.sqrt(2))
    r = states.schmidt_decompose(psi)
    assert r.kappa1 == pytest.approx(r.kappa2, abs=1e-14)
    assert r.residual(psi) < 1e-14


@given(st.integers(0, 2**32 - 1), unitary2(), unitary2())
def test_schmidt_local_unitary_invariance(seed, ua, ub):
    rng = np.random.default_rng(seed)
    psi = PureState2Q.normalized(rng.normal(size=4) + 1j * rng.normal(size=4))
    moved = PureState2Q.normalized(np.kron(ua, ub) @ psi.amplitudes)
    r0, r1 = states.schmidt_decompose(psi), states.schmidt_decompose(moved)
    assert abs(r0.kappa1 - r1.kappa1) < 1e-10 and abs(r0.kappa2 - r1.kappa2) < 1e-10
    assert r1.residual(moved) < 1e-10
    for u in (r1.u_a, r1.u_b):
        assert np.allclose(u @ u.conj().T, np.eye(2), atol=1e-12)
    assert abs(2 * r1.kappa1 * r1.kappa2 - states.pure_concurrence(moved)) < 1e-10


def _swap_image(p, sw):
    v = np.kron(sw.v_a, sw.v_b)
    return v @ states.rank2_density(p) @ v.conj().T


def test_swap_degenerate_explicit():
    p = Rank2Params(Q, 0.7, Q, 0.0, 0.3)
    sw, q = states.swap_theta_quarter(p)
    c, s = math.cos(0.35), math.sin(0.35)
    assert sw.degenerate
    assert np.allclose(sw.v_a, [[c, -s], [s, c]])
    assert np.allclose(sw.v_b, [[s, c], [c, -s]])
    assert q.nu1 == pytest.approx(0.7) and q.theta == pytest.approx(Q)
    assert np.max(np.abs(_swap_image(p, sw) - states.rank2_density(q))) < 1e-12


def test_swap_phi_zero_passthrough():
    p = Rank2Params(Q, 0.0, Q, 0.0, 0.4)
    sw, q = states.swap_theta_quarter(p)
    assert sw.degenerate and q == p
    assert np.allclose(sw.v_a, np.eye(2)) and np.allclose(sw.v_b, np.eye(2))


def test_swap_rejects_other_theta():
    with pytest.raises(ParameterError):
        states.swap_theta_quarter(Rank2Params(0.5, 0.2, 0.3, 0.0, 0.5))


@given(angle, angle, azimuth, weight)
def test_swap_is_local_unitary_image(f, a, b, n1):
    p = Rank2Params(Q, f, a, b, n1)
    sw, q = states.swap_theta_quarter(p)
    assert q.nu1 == pytest.approx(p.nu2)
    assert np.max(np.abs(_swap_image(p, sw) - states.rank2_density(q))) < 1e-9
