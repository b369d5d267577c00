"""Brute-force checks and seeded samplers.

Nothing here uses the closed forms of the steering or concurrence modules;
the maxima come from searching Bob's sphere and the polynomial coefficients
from a general eigensolver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .cmat import LinalgError, eigh, eigvals_general
from .decomp import MeasurementFrame
from .entangle import spin_flip
from .states import HALF_PI, TWO_PI, PureState2Q, Rank2Params
from .steer import bob_operator

RNG_ALGORITHM = "numpy.random.PCG64"
DISTRIBUTIONS = ("uniform-params", "haar-pure", "boundary-biased")
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class GridSpec:
    n_theta: int = 96
    n_phi: int = 192
    refine_iters: int = 40

    def __post_init__(self):
        if min(self.n_theta, self.n_phi, self.refine_iters) < 8:
            raise ValueError("grid counts must be at least 8")


@dataclass(frozen=True)
class SamplerConfig:
    seed: int
    count: int
    distribution: str = "uniform-params"

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be positive")
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"unknown distribution {self.distribution!r}")


# --- sphere search --------------------------------------------------------

def _bob_value(k: np.ndarray, tb: float, pb: float) -> float:
    c, s = math.cos(0.5 * tb), math.sin(0.5 * tb)
    return float(c * c * k[0, 0].real + s * s * k[1, 1].real
                 + 2.0 * c * s * (k[0, 1] * complex(math.cos(pb), math.sin(pb))).real)


def _wrap(t: float, p: float) -> tuple[float, float]:
    if t < 0.0:
        t, p = -t, p + math.pi
    elif t > math.pi:
        t, p = TWO_PI - t, p + math.pi
    return t, p % TWO_PI


def _golden(f, lo: float, hi: float, tol: float = 1e-11) -> tuple[float, float]:
    a, b = lo, hi
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = f(x2)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def maximize_over_bob(rho, frame: MeasurementFrame, grid: GridSpec = GridSpec(),
                      trace: list | None = None) -> tuple[float, float, float]:
    """Maximize Tr(W rho) over Bob's direction (theta_B, phi_B).

    A full grid locates the best cell; golden-section line searches on
    theta_B and phi_B then alternate, each accepted only if it improves the
    incumbent. ``trace`` collects the incumbent after every step.
    """
    k = bob_operator(rho, frame)
    tb = np.linspace(0.0, math.pi, grid.n_theta)
    pb = np.linspace(0.0, TWO_PI, grid.n_phi, endpoint=False)
    c, s = np.cos(0.5 * tb)[:, None], np.sin(0.5 * tb)[:, None]
    vals = (c * c * k[0, 0].real + s * s * k[1, 1].real
            + 2.0 * c * s * (k[0, 1] * np.exp(1j * pb)[None, :]).real)
    # first maximum in row-major order gives the lexicographic tie-break
    i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
    best_t, best_p, best = float(tb[i]), float(pb[j]), float(vals[i, j])
    if trace is not None:
        trace.append(best)
    # along either coordinate the objective is A + B cos(x - x0); a bracket of
    # half-width pi/2 around an incumbent on the rising side is unimodal
    half = 0.5 * math.pi
    for _ in range(grid.refine_iters):
        prev = best
        # theta may step past a pole; the same point is (-theta, phi + pi)
        t_new, v = _golden(lambda t: _bob_value(k, t, best_p), best_t - half, best_t + half)
        if v > best:
            best_t, best_p, best = *_wrap(t_new, best_p), v
        p_new, v = _golden(lambda p: _bob_value(k, best_t, p), best_p - half, best_p + half)
        if v > best:
            best_p, best = p_new % TWO_PI, v
        if trace is not None:
            trace.append(best)
        if best - prev <= 1e-15:
            break
    return best, best_t, best_p


# --- samplers -------------------------------------------------------------

def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _near(rng, centre: float, lo: float, hi: float) -> float:
    # half the time the exact point, otherwise a small neighbourhood
    if rng.random() < 0.5:
        return centre
    return float(min(hi, max(lo, centre + rng.normal(scale=1e-3))))


def sample_params(cfg: SamplerConfig) -> Iterator[Rank2Params]:
    rng = _rng(cfg.seed)
    biased = cfg.distribution == "boundary-biased"
    if cfg.distribution == "haar-pure":
        raise ValueError("use sample_haar_pure for pure states")
    for _ in range(cfg.count):
        theta, phi, alpha = rng.uniform(0.0, HALF_PI, 3)
        beta = rng.uniform(0.0, TWO_PI)
        nu1 = rng.uniform(0.0, 1.0)
        if biased:
            if rng.random() < 0.5:
                phi = _near(rng, float(rng.choice([0.0, HALF_PI])), 0.0, HALF_PI)
            if rng.random() < 0.5:
                alpha = _near(rng, float(rng.choice([0.0, 0.25 * math.pi, HALF_PI])), 0.0, HALF_PI)
            if rng.random() < 0.5:
                nu1 = _near(rng, float(rng.choice([0.0, 0.5, 1.0])), 0.0, 1.0)
        yield Rank2Params(float(theta), float(phi), float(alpha), float(beta) % TWO_PI, float(nu1))


def sample_haar_pure(cfg: SamplerConfig) -> Iterator[PureState2Q]:
    rng = _rng(cfg.seed)
    for _ in range(cfg.count):
        z = rng.normal(size=4) + 1j * rng.normal(size=4)
        yield PureState2Q(z / np.linalg.norm(z))


# --- characteristic polynomial -------------------------------------------

def char_poly_oracle(rho, rank_tol: float = 1e-10) -> tuple[float, float]:
    """(s2, s1) from the two nonzero eigenvalues of rho~ rho."""
    rho = np.asarray(rho, dtype=complex)
    w, _ = eigh(rho)
    if np.sum(w > rank_tol) > 2:
        raise LinalgError("state has rank greater than 2")
    ev = eigvals_general(spin_flip(rho) @ rho)
    ev = ev[np.argsort(-np.abs(ev))]
    v1, v2 = ev[0], ev[1]
    return float(-(v1 + v2).real), float((v1 * v2).real)
