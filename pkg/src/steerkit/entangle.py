"""Concurrence of rank-2 states: the closed form and the Wootters spectrum."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cmat import SY, LinalgError, as_cmat, eigh, hermitian_defect, singular_values
from .states import Rank2Params, rank2_density

RADICAND_CLAMP = 1e-10
# eigenvalues of rho below this are treated as outside its support
SUPPORT_TOL = 1e-13

YY = np.kron(SY, SY)


@dataclass(frozen=True)
class ConcurrenceReport:
    s1: float
    s2: float
    c_closed: float
    wootters_lambdas: tuple
    c_wootters: float
    defect: float


def s_coefficients(params: Rank2Params) -> tuple[float, float]:
    """Coefficients of v^2 (v^2 + s2 v + s1), the characteristic polynomial of rho~ rho."""
    t, p, a, b = params.theta, params.phi, params.alpha, params.beta
    n1, n2 = params.nu1, params.nu2
    s2t, s2a, s2p = math.sin(2 * t), math.sin(2 * a), math.sin(2 * p)
    sp2, cp2 = math.sin(p) ** 2, math.cos(p) ** 2
    c2b = math.cos(2 * b)
    s2 = (-0.5 * n2 * n2 * s2a * s2t * s2p * s2p * c2b
          - n2 * n2 * s2a * s2a * cp2 * cp2
          - s2t * s2t * (n1 * n1 - n1 * n2 * sp2 + n2 * n2 * sp2 * sp2)
          - 0.5 * n1 * n2 * (math.cos(4 * t) + 3.0) * sp2)
    s1 = 0.5 * n1 * n1 * n2 * n2 * (s2a * s2t * s2p * s2p * c2b
                                    + 2.0 * s2a * s2a * s2t * s2t * cp2 * cp2
                                    + 2.0 * sp2 * sp2)
    return s1, s2


def _clamped_sqrt(x: float, what: str) -> float:
    if x < 0.0:
        if x < -RADICAND_CLAMP:
            raise ArithmeticError(f"{what} radicand {x:.3e} is negative")
        return 0.0
    return math.sqrt(x)


def concurrence_closed_form(params: Rank2Params) -> float:
    s1, s2 = s_coefficients(params)
    c = _clamped_sqrt(-s2 - 2.0 * _clamped_sqrt(s1, "s1"), "concurrence")
    return min(c, 1.0)


def spin_flip(rho) -> np.ndarray:
    rho = as_cmat(rho, (4,))
    return YY @ np.conj(rho) @ YY


def _check_density(rho: np.ndarray) -> np.ndarray:
    if hermitian_defect(rho) > 1e-10:
        raise LinalgError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-8:
        raise LinalgError("density matrix does not have unit trace")
    w, v = eigh(rho)
    if w[0] < -1e-10:
        raise LinalgError(f"density matrix has a negative eigenvalue {w[0]:.3e}")
    return w, v


def concurrence_wootters(rho) -> tuple[float, np.ndarray]:
    """Wootters concurrence max(0, l1 - l2 - l3 - l4).

    The l_k are the square roots of the eigenvalues of sqrt(rho) rho~ sqrt(rho).
    That matrix is compressed to the support of rho: with rho = S S^dagger on its
    support, sqrt(rho) rho~ sqrt(rho) has the same nonzero spectrum as
    X X^dagger for X = S^dagger YY S^*, so the l_k come out as singular values
    of X without taking square roots of rounding noise.
    """
    rho = as_cmat(rho, (4,))
    w, v = _check_density(rho)
    keep = w > SUPPORT_TOL
    s = v[:, keep] * np.sqrt(w[keep])
    x = np.conj(s).T @ YY @ np.conj(s)
    lam = np.zeros(4)
    sv = singular_values(x) if x.size else np.zeros(0)
    lam[: sv.size] = sv
    lam = np.sort(lam)[::-1]
    c = lam[0] - lam[1] - lam[2] - lam[3]
    return float(min(max(c, 0.0), 1.0)), lam


def concurrence_report(params: Rank2Params) -> ConcurrenceReport:
    s1, s2 = s_coefficients(params)
    c_closed = concurrence_closed_form(params)
    c_w, lam = concurrence_wootters(rank2_density(params))
    return ConcurrenceReport(s1, s2, c_closed, tuple(float(x) for x in lam), c_w, abs(c_closed - c_w))


def is_separable(params: Rank2Params, tol: float = 1e-9) -> bool:
    return concurrence_closed_form(params) < tol
