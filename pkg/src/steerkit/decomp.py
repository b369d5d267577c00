"""Alice-frame block decomposition of a two-qubit state.

For a direction n = (sin xi cos tau, sin xi sin tau, cos xi) on Alice's side,
rho = P0 (x) rho0 + P1 (x) rho1 + |+n><-n| (x) M + |-n><+n| (x) M^dagger.
rho0 and rho1 are Bob's unnormalized conditional states; M is the
off-diagonal block whose hermiticity at the canonical azimuth separates
separable from entangled rank-2 states.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .cmat import as_cmat, dagger
from .entangle import concurrence_closed_form
from .states import TWO_PI, Rank2Params, rank2_density

BORDERLINE_C = 1e-7


@dataclass(frozen=True)
class MeasurementFrame:
    xi: float = 0.5 * math.pi
    tau: float = 0.0
    delta: float = 0.5 * math.pi


@dataclass(frozen=True)
class ConditionalDecomposition:
    rho0: np.ndarray
    rho1: np.ndarray
    m: np.ndarray


@dataclass(frozen=True)
class ResidualTriple:
    r1: complex
    r2: complex
    r3: complex

    def max_abs(self) -> float:
        return max(abs(self.r1), abs(self.r2), abs(self.r3))


def alice_basis(frame: MeasurementFrame):
    """|+n>, |-n> and the projectors onto them.

    |-n> = sin(xi/2)|0> - cos(xi/2) e^{i tau}|1>; this fixes the phase of M
    but not its hermiticity.
    """
    ph = cmath.exp(1j * frame.tau)
    c, s = math.cos(0.5 * frame.xi), math.sin(0.5 * frame.xi)
    plus = np.array([c, s * ph], dtype=complex)
    minus = np.array([s, -c * ph], dtype=complex)
    return plus, minus, np.outer(plus, plus.conj()), np.outer(minus, minus.conj())


def _block(rho4: np.ndarray, bra: np.ndarray, ket: np.ndarray) -> np.ndarray:
    return np.einsum("i,ijkl,k->jl", bra.conj(), rho4, ket)


def conditional_decompose(rho, frame: MeasurementFrame) -> ConditionalDecomposition:
    r = as_cmat(rho, (4,)).reshape(2, 2, 2, 2)
    plus, minus, _, _ = alice_basis(frame)
    return ConditionalDecomposition(_block(r, plus, plus), _block(r, minus, minus), _block(r, plus, minus))


def reconstruct(dec: ConditionalDecomposition, frame: MeasurementFrame) -> np.ndarray:
    plus, minus, p0, p1 = alice_basis(frame)
    up = np.outer(plus, minus.conj())
    return (np.kron(p0, dec.rho0) + np.kron(p1, dec.rho1)
            + np.kron(up, dec.m) + np.kron(dagger(up), dagger(dec.m)))


def hermiticity_defect(m) -> float:
    m = np.asarray(m, dtype=complex)
    return float(np.linalg.norm(m - dagger(m)))


def canonical_taus(params: Rank2Params, eps: float = 1e-15) -> list[float]:
    """Azimuths at which a separable state of the family has M = M^dagger."""
    if abs(math.sin(2.0 * params.phi)) <= eps:
        return [0.0]
    b = params.beta % TWO_PI
    other = (-b) % TWO_PI
    return sorted({b, other})


def residuals(params: Rank2Params, frame: MeasurementFrame) -> ResidualTriple:
    """M - M^dagger entries (m1 - m1*, m4 - m4*, m2 - m3*) in closed form.

    These do not depend on xi.
    """
    t, p, a, b, tau = params.theta, params.phi, params.alpha, params.beta, frame.tau
    n1, n2 = params.nu1, params.nu2
    s2p = math.sin(2 * p)
    r1 = -1j * n2 * math.sin(a) * math.sin(t) * math.sin(b + tau) * s2p
    r2 = -1j * n2 * math.cos(a) * math.cos(t) * math.sin(b - tau) * s2p
    r3 = 0.5 * cmath.exp(-1j * tau) * (
        n2 * math.cos(p) ** 2 * math.sin(2 * a)
        - cmath.exp(2j * tau) * (n1 - n2 * math.sin(p) ** 2) * math.sin(2 * t))
    return ResidualTriple(r1, r2, r3)


def residuals_from_block(m) -> ResidualTriple:
    m = np.asarray(m, dtype=complex)
    return ResidualTriple(m[0, 0] - np.conj(m[0, 0]), m[1, 1] - np.conj(m[1, 1]), m[0, 1] - np.conj(m[1, 0]))


def residual_defect(params: Rank2Params, tau: float) -> float:
    """||M - M^dagger||_F from the closed-form residuals."""
    r = residuals(params, MeasurementFrame(tau=tau))
    return math.sqrt(abs(r.r1) ** 2 + abs(r.r2) ** 2 + 2.0 * abs(r.r3) ** 2)


def min_canonical_defect(params: Rank2Params, xi: float = 0.5 * math.pi) -> tuple[float, float]:
    """Smallest ||M - M^dagger||_F over the canonical azimuths, and the azimuth reaching it."""
    rho = rank2_density(params)
    best = (math.inf, 0.0)
    for tau in canonical_taus(params):
        dec = conditional_decompose(rho, MeasurementFrame(xi=xi, tau=tau))
        d = hermiticity_defect(dec.m)
        if d < best[0]:
            best = (d, tau)
    return best


def ns_separability_check(params: Rank2Params, tol: float = 1e-9, xi: float = 0.5 * math.pi) -> bool:
    """True when M = M^dagger (to tol) at some canonical azimuth."""
    return min_canonical_defect(params, xi)[0] < tol


def separability_verdict(params: Rank2Params, tol: float = 1e-9) -> str:
    """'separable', 'entangled' or 'indeterminate'.

    The hermiticity test and the concurrence must agree; concurrences below
    1e-7 that are not matched by a hermitian M are left undecided.
    """
    herm = ns_separability_check(params, tol)
    c = concurrence_closed_form(params)
    if herm and c < BORDERLINE_C:
        return "separable"
    if not herm and c >= BORDERLINE_C:
        return "entangled"
    return "indeterminate"
