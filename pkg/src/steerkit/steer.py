"""State-dependent steering inequality, the 3-setting linear inequality and CHSH.

The witness is W = |+><+| (x) |n_B><n_B| with |+> = (|+n> + e^{i delta}|-n>)/sqrt(2)
on Alice's side. A local-hidden-state model can reach at most
C_LHS = (1 + |F|)/4, where F is the Bloch vector of Bob's reduced state. The
quantum maxima over Bob's direction for delta = +pi/2 and -pi/2 are

    W1 = 1/4 + H0/4 + |F + H|/4,    W2 = 1/4 - H0/4 + |F - H|/4,

with H0 and H depending on Alice's azimuth tau.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .cmat import PAULI, bloch_vector, partial_trace_a
from .decomp import (BORDERLINE_C, MeasurementFrame, alice_basis, canonical_taus,
                     conditional_decompose, residual_defect)
from .entangle import concurrence_closed_form, concurrence_wootters
from .states import HALF_PI, Rank2Params, rank2_density

VIOLATION_TOL = 1e-9
DIRECTION_EPS = 1e-12
LINEAR_BOUND = 1.0 / math.sqrt(3.0)


@dataclass(frozen=True)
class SteeringVectors:
    f: np.ndarray
    h: np.ndarray
    h0: float
    tau_used: float


@dataclass(frozen=True)
class SteeringCertificate:
    c_lhs: float
    w1_max: float
    w2_max: float
    best_w: float
    violated: bool
    margin: float
    bob_direction: np.ndarray
    bob_angles: tuple
    vectors: SteeringVectors
    concurrence: float
    delta: float
    degenerate_direction: bool
    verdict: str
    per_tau: tuple = field(default=())


# --- closed forms ---------------------------------------------------------

def bloch_f(params: Rank2Params) -> np.ndarray:
    t, p, a, b = params.theta, params.phi, params.alpha, params.beta
    n1, n2 = params.nu1, params.nu2
    s2p = math.sin(2 * p)
    return np.array([
        -n2 * math.cos(b) * math.sin(a - t) * s2p,
        -n2 * math.sin(b) * math.sin(a + t) * s2p,
        -n2 * math.cos(2 * a) * math.cos(p) ** 2 + math.cos(2 * t) * (n1 - n2 * math.sin(p) ** 2),
    ])


def classical_bound(params: Rank2Params) -> float:
    return 0.25 + 0.25 * float(np.linalg.norm(bloch_f(params)))


def steering_vectors(params: Rank2Params, tau: float) -> SteeringVectors:
    t, p, a, b = params.theta, params.phi, params.alpha, params.beta
    n1, n2 = params.nu1, params.nu2
    s2p = math.sin(2 * p)
    sb, cb, st, ct = math.sin(b), math.cos(b), math.sin(tau), math.cos(tau)
    mix = math.sin(2 * t) * (n1 - n2 * math.sin(p) ** 2)
    cross = n2 * math.cos(p) ** 2 * math.sin(2 * a)
    h0 = n2 * (sb * math.cos(a - t) * ct - cb * math.cos(a + t) * st) * s2p
    h = np.array([
        st * (cross + mix),
        ct * (-cross + mix),
        n2 * (-sb * math.cos(a + t) * ct + cb * math.cos(a - t) * st) * s2p,
    ])
    return SteeringVectors(bloch_f(params), h, h0, tau)


def h3_alternate(params: Rank2Params, tau: float) -> float:
    """H3 written with the overall minus sign pulled out."""
    t, p, a, b = params.theta, params.phi, params.alpha, params.beta
    return -params.nu2 * (math.sin(b) * math.cos(a + t) * math.cos(tau)
                          - math.cos(b) * math.cos(a - t) * math.sin(tau)) * math.sin(2 * p)


def _w_pair(vec: SteeringVectors) -> tuple[float, float]:
    f, h, h0 = vec.f, vec.h, vec.h0
    w1 = 0.25 + 0.25 * h0 + 0.25 * float(np.linalg.norm(f + h))
    w2 = 0.25 - 0.25 * h0 + 0.25 * float(np.linalg.norm(f - h))
    return w1, w2


def w_max_pair(params: Rank2Params, tau: float) -> tuple[float, float]:
    return _w_pair(steering_vectors(params, tau))


# --- direct evaluation ----------------------------------------------------

def alice_witness_state(frame: MeasurementFrame) -> np.ndarray:
    plus, minus, _, _ = alice_basis(frame)
    return (plus + cmath.exp(1j * frame.delta) * minus) / math.sqrt(2.0)


def bob_ket(theta_b: float, phi_b: float) -> np.ndarray:
    return np.array([math.cos(0.5 * theta_b), math.sin(0.5 * theta_b) * cmath.exp(1j * phi_b)])


def witness_operator(frame: MeasurementFrame, theta_b: float, phi_b: float) -> np.ndarray:
    a = alice_witness_state(frame)
    b = bob_ket(theta_b, phi_b)
    return np.kron(np.outer(a, a.conj()), np.outer(b, b.conj()))


def generic_w_expectation(rho, frame: MeasurementFrame, theta_b: float, phi_b: float) -> float:
    return float(np.trace(witness_operator(frame, theta_b, phi_b) @ np.asarray(rho)).real)


def bob_operator(rho, frame: MeasurementFrame) -> np.ndarray:
    """(<+| (x) I) rho (|+> (x) I) for the witness state |+> of the frame."""
    a = alice_witness_state(frame)
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    return np.einsum("i,ijkl,k->jl", a.conj(), r, a)


def numeric_vectors(rho, tau: float, xi: float = HALF_PI) -> SteeringVectors:
    """F, H and H0 read off the Alice-frame blocks of rho."""
    dec = conditional_decompose(rho, MeasurementFrame(xi=xi, tau=tau))
    g = 1j * (dec.m - dec.m.conj().T)
    f = bloch_vector(dec.rho0 + dec.rho1)
    return SteeringVectors(f, bloch_vector(g), float(np.trace(g).real), tau)


# --- certificates ---------------------------------------------------------

def _direction(v: np.ndarray) -> tuple[np.ndarray, tuple, bool]:
    n = float(np.linalg.norm(v))
    if n < DIRECTION_EPS:
        return np.array([0.0, 0.0, 1.0]), (0.0, 0.0), True
    u = v / n
    return u, (math.acos(max(-1.0, min(1.0, u[2]))), math.atan2(u[1], u[0]) % (2 * math.pi)), False


def _certify(vectors_by_tau: list[SteeringVectors], c: float, separable_m: bool, tol: float) -> SteeringCertificate:
    per_tau = []
    chosen = None
    for vec in vectors_by_tau:
        w1, w2 = _w_pair(vec)
        per_tau.append((vec.tau_used, w1, w2))
        # the inequality is only a valid test at the azimuth where product
        # states keep M hermitian; without knowing which canonical value that
        # is, the weakest one is the one reported
        if chosen is None or max(w1, w2) < max(chosen[1], chosen[2]):
            chosen = (vec, w1, w2)
    vec, w1, w2 = chosen
    c_lhs = 0.25 + 0.25 * float(np.linalg.norm(vec.f))
    if w1 >= w2:
        delta, best, axis = HALF_PI, w1, vec.f + vec.h
    else:
        delta, best, axis = -HALF_PI, w2, vec.f - vec.h
    direction, angles, degenerate = _direction(axis)
    margin = best - c_lhs
    violated = margin > tol
    if c < BORDERLINE_C:
        verdict = "separable" if separable_m and not violated else "indeterminate"
    else:
        verdict = "steerable" if violated else "indeterminate"
    return SteeringCertificate(c_lhs, w1, w2, best, violated, margin, direction, angles,
                               vec, c, delta, degenerate, verdict, tuple(per_tau))


def steer_certificate(params: Rank2Params, tol: float = VIOLATION_TOL) -> SteeringCertificate:
    """Evaluate the state-dependent inequality at every canonical azimuth.

    Both signs of delta are tried at each azimuth and the better one kept; the
    azimuth reported is the one with the smaller quantum maximum (ties go to
    the smaller tau).
    """
    taus = canonical_taus(params)
    vecs = [steering_vectors(params, tau) for tau in taus]
    c = concurrence_closed_form(params)
    separable_m = min(residual_defect(params, t) for t in taus) < tol
    return _certify(vecs, c, separable_m, tol)


def steer_certificate_from_density(rho, taus, tol: float = VIOLATION_TOL) -> SteeringCertificate:
    """Same certificate computed from a density matrix through its block decomposition."""
    rho = np.asarray(rho, dtype=complex)
    vecs = [numeric_vectors(rho, tau) for tau in sorted(taus)]
    c, _ = concurrence_wootters(rho)
    separable_m = any(
        np.linalg.norm(d.m - d.m.conj().T) < tol
        for d in (conditional_decompose(rho, MeasurementFrame(tau=t)) for t in taus))
    return _certify(vecs, c, separable_m, tol)


def reduced_bob(rho) -> np.ndarray:
    return partial_trace_a(rho)


# --- 3-setting linear inequality -------------------------------------------

@dataclass(frozen=True)
class LinearSteeringSettings:
    eta: float
    tau: float
    alice_angles: tuple  # (theta1, phi1, theta2, phi2, theta3, phi3)

    def bob_triad(self) -> np.ndarray:
        e, t = self.eta, self.tau
        ce2, se2, s2e = math.cos(e) ** 2, math.sin(e) ** 2, math.sin(2 * e)
        triad = np.array([
            [ce2 - math.cos(2 * t) * se2, -se2 * math.sin(2 * t), -s2e * math.cos(t)],
            [-se2 * math.sin(2 * t), ce2 + math.cos(2 * t) * se2, -s2e * math.sin(t)],
            [math.cos(t) * s2e, math.sin(t) * s2e, math.cos(2 * e)],
        ])
        if np.max(np.abs(triad @ triad.T - np.eye(3))) > 1e-12:
            raise ValueError("Bob's directions are not orthonormal")
        return triad

    def alice_directions(self) -> np.ndarray:
        ang = self.alice_angles
        return np.array([[math.sin(ang[2 * j]) * math.cos(ang[2 * j + 1]),
                          math.sin(ang[2 * j]) * math.sin(ang[2 * j + 1]),
                          math.cos(ang[2 * j])] for j in range(3)])


def _spin(v) -> np.ndarray:
    return v[0] * PAULI[0] + v[1] * PAULI[1] + v[2] * PAULI[2]


def linear_i3_value(rho, settings: LinearSteeringSettings) -> float:
    rho = np.asarray(rho, dtype=complex)
    bob = settings.bob_triad()
    alice = settings.alice_directions()
    total = sum(np.trace(rho @ np.kron(_spin(a), _spin(b))).real for a, b in zip(alice, bob))
    return float(total / 3.0)


def standard_linear_settings(theta3: float) -> LinearSteeringSettings:
    """Fixed angle family: tau = pi/4, eta = atan(sqrt 2)/2, a1 = a2 = -z, a3 tilted by theta3."""
    return LinearSteeringSettings(
        eta=0.5 * math.atan(math.sqrt(2.0)),
        tau=0.25 * math.pi,
        alice_angles=(math.pi, 0.0, math.pi, 0.0, theta3, -0.25 * math.pi),
    )


def family_theta3(params: Rank2Params) -> float:
    return math.atan(math.sqrt(2.0) * (params.nu1 - params.nu2) * math.sin(2 * params.theta))


def linear_i3_for_params(params: Rank2Params) -> float:
    return linear_i3_value(rank2_density(params), standard_linear_settings(family_theta3(params)))


# --- CHSH and the AVN state ----------------------------------------------

def chsh_max(c: float) -> float:
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"concurrence {c!r} outside [0, 1]")
    return 2.0 * math.sqrt(1.0 + c * c)


def avn_params(theta: float, nu1: float) -> Rank2Params:
    """The AVN mixture is the phi = 0 member with alpha = pi/2 - theta."""
    return Rank2Params(theta=theta, phi=0.0, alpha=max(HALF_PI - theta, 0.0), beta=0.0, nu1=nu1)


def avn_state(theta: float, nu1: float) -> np.ndarray:
    if not 0.0 <= theta <= HALF_PI:
        raise ValueError("theta outside [0, pi/2]")
    if not 0.0 <= nu1 <= 1.0:
        raise ValueError("nu1 outside [0, 1]")
    u = np.array([math.cos(theta), 0.0, 0.0, math.sin(theta)], dtype=complex)
    v = np.array([0.0, math.sin(theta), math.cos(theta), 0.0], dtype=complex)
    return nu1 * np.outer(u, u.conj()) + (1.0 - nu1) * np.outer(v, v.conj())
