import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import angle, azimuth, rank2_params, random_params, weight
from steerkit import decomp, states
from steerkit.acceptance import separable_family
from steerkit.cmat import bloch_vector, partial_trace_a
from steerkit.entangle import concurrence_closed_form
from steerkit.decomp import MeasurementFrame
from steerkit.states import Rank2Params

frames = st.builds(MeasurementFrame, st.floats(0.0, math.pi), azimuth, azimuth)


def test_alice_basis_poles_and_equator():
    plus, minus, p0, p1 = decomp.alice_basis(MeasurementFrame(xi=0.0, tau=0.0))
    assert np.allclose(plus, [1, 0]) and np.allclose(minus, [0, -1])
    plus, minus, _, _ = decomp.alice_basis(MeasurementFrame(xi=math.pi / 2, tau=math.pi / 2))
    r = 1 / math.sqrt(2)
    assert np.allclose(plus, [r, 1j * r]) and np.allclose(minus, [r, -1j * r])


@given(frames)
def test_alice_basis_orthonormal(frame):
    plus, minus, p0, p1 = decomp.alice_basis(frame)
    assert abs(np.vdot(plus, minus)) < 1e-15
    assert np.allclose(p0 + p1, np.eye(2), atol=1e-15)
    n = np.array([math.sin(frame.xi) * math.cos(frame.tau), math.sin(frame.xi) * math.sin(frame.tau),
                  math.cos(frame.xi)])
    assert np.allclose(bloch_vector(p0), n, atol=1e-14)


def test_product_state_blocks():
    sigma = np.array([[0.6, 0.2j], [-0.2j, 0.4]])
    frame = MeasurementFrame(xi=0.0, tau=0.0)
    dec = decomp.conditional_decompose(np.kron(np.diag([1.0, 0.0]), sigma), frame)
    assert np.allclose(dec.rho0, sigma) and np.allclose(dec.rho1, 0) and np.allclose(dec.m, 0)


def test_bell_block_not_hermitian():
    rho = states.make_psi1(math.pi / 4).projector()
    dec = decomp.conditional_decompose(rho, MeasurementFrame())
    assert decomp.hermiticity_defect(dec.m) > 0.1


def test_hermiticity_defect_example():
    assert decomp.hermiticity_defect([[0, 1], [0, 0]]) == pytest.approx(math.sqrt(2))
    assert decomp.hermiticity_defect(np.eye(2)) == 0.0


@given(rank2_params(), frames)
def test_reconstruction(p, frame):
    rho = states.rank2_density(p)
    dec = decomp.conditional_decompose(rho, frame)
    assert np.max(np.abs(decomp.reconstruct(dec, frame) - rho)) < 1e-13
    assert np.max(np.abs(dec.rho0 + dec.rho1 - partial_trace_a(rho))) < 1e-13


def test_canonical_taus():
    p = Rank2Params(0.3, 0.4, 0.5, math.pi / 3, 0.5)
    assert decomp.canonical_taus(p) == pytest.approx([math.pi / 3, 5 * math.pi / 3])
    assert decomp.canonical_taus(p.replace(phi=0.0)) == [0.0]
    assert decomp.canonical_taus(p.replace(phi=math.pi / 2)) == [0.0]
    assert decomp.canonical_taus(p.replace(beta=0.0)) == [0.0]
    assert decomp.canonical_taus(p.replace(beta=math.pi)) == pytest.approx([math.pi])


def test_residuals_closed_form_vs_blocks():
    rng = np.random.default_rng(7)
    for p in random_params(rng, 1000):
        frame = MeasurementFrame(xi=float(rng.uniform(0, math.pi)), tau=float(rng.uniform(0, 2 * math.pi)))
        dec = decomp.conditional_decompose(states.rank2_density(p), frame)
        got = decomp.residuals_from_block(dec.m)
        ref = decomp.residuals(p, frame)
        assert abs(got.r1 - ref.r1) < 1e-12 and abs(got.r2 - ref.r2) < 1e-12 and abs(got.r3 - ref.r3) < 1e-12
        assert abs(decomp.hermiticity_defect(dec.m) - decomp.residual_defect(p, frame.tau)) < 1e-12


@given(angle, azimuth)
def test_pure_psi1_residual(t, tau):
    r = decomp.residuals(Rank2Params(t, 0.3, 0.2, 0.0, 1.0), MeasurementFrame(tau=tau))
    assert r.r1 == 0 and r.r2 == 0
    assert abs(r.r3 + 0.5 * cmath.exp(1j * tau) * math.sin(2 * t)) < 1e-15


def test_separable_states_pass_at_every_xi():
    for p in separable_family(3, 120):
        for xi in (0.3, math.pi / 2, 2.0):
            d, _ = decomp.min_canonical_defect(p, xi)
            assert d < 1e-9
        assert decomp.ns_separability_check(p)


def test_ns_check_examples():
    assert not decomp.ns_separability_check(Rank2Params(math.pi / 4, 0, 0, 0, 1.0))
    assert decomp.ns_separability_check(Rank2Params(0.0, 0.0, 0.0, 0.0, 1.0))
    assert decomp.ns_separability_check(Rank2Params(0.9, math.pi / 2, 0.4, 2.0, 0.5))


def test_wrong_azimuth_breaks_hermiticity():
    # separable, but only the azimuth equal to beta keeps M hermitian
    p = Rank2Params(0.0, 0.6, 0.0, 1.0, 0.5)
    assert decomp.residual_defect(p, 1.0) < 1e-15
    assert decomp.residual_defect(p, 2 * math.pi - 1.0) > 0.1
    assert decomp.ns_separability_check(p)


def test_separability_verdict():
    assert decomp.separability_verdict(Rank2Params(0.0, 0.0, 0.0, 0.0, 1.0)) == "separable"
    assert decomp.separability_verdict(Rank2Params(0.5, 0.2, 0.3, 1.0, 0.7)) == "entangled"


@given(rank2_params())
def test_verdict_consistent_with_concurrence(p):
    v = decomp.separability_verdict(p)
    c = concurrence_closed_form(p)
    if v == "separable":
        assert c < 1e-7
    elif v == "entangled":
        assert c >= 1e-7
