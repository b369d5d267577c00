"""Acceptance criteria A1-A12 as plain functions.

Each returns a :class:`CriterionResult`; ``run_all`` drives them for the
``verify`` command and the test suite. ``scale`` divides every sample count
(``--quick`` uses 10).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import decomp, entangle, oracle, states, steer
from .cmat import eigh, partial_trace_a

DEFAULT_SEED = 20240917


@dataclass(frozen=True)
class CriterionResult:
    key: str
    title: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{self.key} {'PASS' if self.passed else 'FAIL'}  {self.title}: {self.detail}"


def _n(count: int, scale: float) -> int:
    return max(1, int(count / scale))


def _uniform(seed: int, count: int):
    return oracle.sample_params(oracle.SamplerConfig(seed, count, "uniform-params"))


def a1_concurrence_dual_path(seed: int, scale: float = 1) -> CriterionResult:
    worst = 0.0
    for p in _uniform(seed, _n(10_000, scale)):
        c_w, _ = entangle.concurrence_wootters(states.rank2_density(p))
        worst = max(worst, abs(entangle.concurrence_closed_form(p) - c_w))
    return CriterionResult("A1", "closed-form vs Wootters concurrence", worst < 1e-8,
                           f"max defect {worst:.3e} (< 1e-8)")


def a2_ns_equivalence(seed: int, scale: float = 1) -> CriterionResult:
    n = _n(10_000, scale)
    draws = list(_uniform(seed + 1, n - n // 2))
    draws += list(oracle.sample_params(oracle.SamplerConfig(seed + 2, n // 2, "boundary-biased")))
    excluded = disagree = 0
    for p in draws:
        c = entangle.concurrence_closed_form(p)
        if c < decomp.BORDERLINE_C:
            excluded += 1
            continue
        if decomp.ns_separability_check(p) != (c < decomp.BORDERLINE_C):
            disagree += 1
    return CriterionResult("A2", "M = M^dagger criterion vs concurrence", disagree == 0,
                           f"{disagree} disagreements over {len(draws) - excluded} draws, {excluded} borderline excluded")


def a3_classical_bound(seed: int, scale: float = 1) -> CriterionResult:
    worst = 0.0
    for p in _uniform(seed + 3, _n(1000, scale)):
        w, _ = eigh(partial_trace_a(states.rank2_density(p)))
        worst = max(worst, abs(steer.classical_bound(p) - 0.5 * w[-1]))
    return CriterionResult("A3", "C_LHS = lambda_max(rho_B)/2", worst < 1e-12, f"max defect {worst:.3e} (< 1e-12)")


def a4_maxima_vs_oracle(seed: int, scale: float = 1,
                        w_max_fn: Callable = steer.w_max_pair) -> CriterionResult:
    worst, count = 0.0, 0
    for p in _uniform(seed + 4, _n(1000, scale)):
        rho = states.rank2_density(p)
        for tau in decomp.canonical_taus(p):
            pair = w_max_fn(p, tau)
            for k, delta in enumerate((0.5 * math.pi, -0.5 * math.pi)):
                value, _, _ = oracle.maximize_over_bob(rho, decomp.MeasurementFrame(tau=tau, delta=delta))
                worst = max(worst, abs(pair[k] - value))
                count += 1
    return CriterionResult("A4", "closed-form maxima vs sphere search", worst < 1e-6,
                           f"max gap {worst:.3e} over {count} maximizations (< 1e-6)")


def separable_family(seed: int, count: int) -> list[states.Rank2Params]:
    """Exactly separable members: phi = 0 with nu2 sin2a = nu1 sin2t, phi = pi/2 with
    nu1 = nu2, and product endpoints."""
    rng = np.random.Generator(np.random.PCG64(seed))
    hp = states.HALF_PI
    out: list[states.Rank2Params] = []
    while len(out) < count:
        kind = len(out) % 3
        t, a = rng.uniform(0.0, hp, 2)
        b = rng.uniform(0.0, states.TWO_PI)
        if kind == 0:
            n1 = rng.uniform(0.0, 1.0)
            ratio = n1 * math.sin(2 * t) / (1.0 - n1) if n1 < 1.0 else math.inf
            if ratio > 1.0:
                continue
            a = 0.5 * math.asin(ratio)
            if rng.random() < 0.5:
                a = hp - a
            out.append(states.Rank2Params(t, 0.0, a, b, n1))
        elif kind == 1:
            out.append(states.Rank2Params(t, hp, a, b, 0.5))
        else:
            p = rng.uniform(0.0, hp)
            choice = int(rng.integers(5))
            out.append([
                states.Rank2Params(0.0, p, a, b, 1.0),
                states.Rank2Params(hp, p, a, b, 1.0),
                states.Rank2Params(t, 0.0, 0.0, b, 0.0),
                states.Rank2Params(t, 0.0, hp, b, 0.0),
                states.Rank2Params(0.0, hp, a, b, 0.0),
            ][choice])
    return out


def a5_entangled_implies_violation(seed: int, scale: float = 1) -> CriterionResult:
    checked = failures = 0
    smallest = math.inf
    for p in _uniform(seed + 5, _n(100_000, scale)):
        cert = steer.steer_certificate(p)
        if cert.concurrence > 1e-4:
            checked += 1
            smallest = min(smallest, cert.margin)
            if not cert.margin > 0.0:
                failures += 1
    sep = separable_family(seed + 6, _n(3000, scale))
    sep_worst = max(abs(steer.steer_certificate(p).margin) for p in sep)
    ok = failures == 0 and sep_worst < 1e-9
    return CriterionResult("A5", "entangled => margin > 0, separable => margin = 0", ok,
                           f"{failures} of {checked} entangled draws without violation (min margin {smallest:.3e}); "
                           f"max |margin| on {len(sep)} separable states {sep_worst:.3e} (< 1e-9)")


def example_family(kind: str, seed: int, count: int) -> list[states.Rank2Params]:
    rng = np.random.Generator(np.random.PCG64(seed))
    hp = states.HALF_PI
    out = []
    for _ in range(count):
        t, a, p = rng.uniform(0.0, hp, 3)
        b = rng.uniform(0.0, states.TWO_PI)
        n1 = rng.uniform(0.0, 1.0)
        if kind == "i":
            out.append(states.Rank2Params(t, 0.0, a, b, n1))
        elif kind == "ii":
            out.append(states.Rank2Params(t, hp, a, b, n1))
        else:
            p = rng.uniform(1e-3, hp - 1e-3)
            out.append(states.Rank2Params(t, p, 0.0, hp, n1))
    return out


def a6_example_families(seed: int, scale: float = 1) -> CriterionResult:
    worst_w = worst_h = 0.0
    for idx, kind in enumerate(("i", "ii", "iii")):
        for p in example_family(kind, seed + 7 + idx, _n(200, scale)):
            c = entangle.concurrence_closed_form(p)
            for tau in decomp.canonical_taus(p):
                vec = steer.steering_vectors(p, tau)
                w = max(steer.w_max_pair(p, tau))
                f2 = float(vec.f @ vec.f)
                worst_w = max(worst_w, abs(w - 0.25 * (1.0 + math.sqrt(f2 + c * c))))
                worst_h = max(worst_h, abs(float(vec.h @ vec.h) - c * c))
    ok = worst_w < 1e-9 and worst_h < 1e-9
    return CriterionResult("A6", "example families w_max = (1 + sqrt(F^2 + C^2))/4", ok,
                           f"max w defect {worst_w:.3e}, max |H|^2 - C^2 {worst_h:.3e} (< 1e-9)")


def _i3_formula(c: float) -> float:
    return (2.0 + math.sqrt(1.0 + 2.0 * c * c)) / (3.0 * math.sqrt(3.0))


def a7_linear_closed_form(seed: int, scale: float = 1) -> CriterionResult:
    worst = 0.0
    for t in np.linspace(0.0, states.HALF_PI, 50):
        psi = states.make_psi1(float(t))
        settings = steer.standard_linear_settings(math.atan(math.sqrt(2.0) * math.sin(2 * t)))
        worst = max(worst, abs(steer.linear_i3_value(psi.projector(), settings) - _i3_formula(math.sin(2 * t))))
    for t in np.linspace(0.0, states.HALF_PI, 20):
        for n1 in np.linspace(0.0, 1.0, 20):
            p = states.Rank2Params(float(t), states.HALF_PI, 0.0, 0.0, float(n1))
            c = abs(2.0 * n1 - 1.0) * math.sin(2 * t)
            worst = max(worst, abs(steer.linear_i3_for_params(p) - _i3_formula(c)))
    return CriterionResult("A7", "3-setting value (2 + sqrt(1 + 2C^2))/(3 sqrt 3)", worst < 1e-10,
                           f"max defect {worst:.3e} over 50 pure + 400 mixed points (< 1e-10)")


def a8_chsh(seed: int, scale: float = 1) -> CriterionResult:
    worst = 0.0
    for t in np.linspace(0.0, states.HALF_PI, 101):
        c = entangle.concurrence_closed_form(states.Rank2Params(float(t), 0.0, 0.0, 0.0, 1.0))
        worst = max(worst, abs(steer.chsh_max(math.sin(2 * t)) - 2.0 * math.sqrt(1.0 + c * c)))
    bell = abs(steer.chsh_max(math.sin(2 * 0.25 * math.pi)) - 2.0 * math.sqrt(2.0))
    ok = worst < 1e-12 and bell < 1e-12
    return CriterionResult("A8", "CHSH maximum 2 sqrt(1 + C^2)", ok,
                           f"max defect {worst:.3e}; |I(pi/4) - 2 sqrt 2| = {bell:.3e} (< 1e-12)")


def a9_schmidt(seed: int, scale: float = 1) -> CriterionResult:
    worst_r = worst_k = 0.0
    for psi in oracle.sample_haar_pure(oracle.SamplerConfig(seed + 10, _n(10_000, scale), "haar-pure")):
        res = states.schmidt_decompose(psi)
        k1, k2 = states.schmidt_coefficients_svd(psi)
        worst_r = max(worst_r, res.residual(psi))
        worst_k = max(worst_k, abs(res.kappa1 - k1), abs(res.kappa2 - k2))
    ok = worst_r < 1e-9 and worst_k < 1e-10
    return CriterionResult("A9", "Schmidt round trip", ok,
                           f"max residual {worst_r:.3e} (< 1e-9), max kappa gap {worst_k:.3e} (< 1e-10)")


def a10_decomposition(seed: int, scale: float = 1) -> CriterionResult:
    rng = np.random.Generator(np.random.PCG64(seed + 11))
    worst_rec = worst_b = 0.0
    for p in _uniform(seed + 12, _n(1000, scale)):
        rho = states.rank2_density(p)
        rho_b = partial_trace_a(rho)
        frame = decomp.MeasurementFrame(xi=rng.uniform(0.0, math.pi), tau=rng.uniform(0.0, states.TWO_PI),
                                        delta=rng.uniform(0.0, states.TWO_PI))
        dec = decomp.conditional_decompose(rho, frame)
        worst_rec = max(worst_rec, float(np.max(np.abs(decomp.reconstruct(dec, frame) - rho))))
        worst_b = max(worst_b, float(np.max(np.abs(dec.rho0 + dec.rho1 - rho_b))))
    ok = worst_rec < 1e-12 and worst_b < 1e-12
    return CriterionResult("A10", "Alice-frame decomposition completeness", ok,
                           f"max reconstruction error {worst_rec:.3e}, max rho_B drift {worst_b:.3e} (< 1e-12)")


def a11_avn_gap(seed: int, scale: float = 1) -> CriterionResult:
    rho = steer.avn_state(math.pi / 3.0, 0.7)
    cert = steer.steer_certificate_from_density(rho, [0.0])
    found = None
    for t in np.linspace(0.05, states.HALF_PI - 0.05, 12):
        for n1 in np.linspace(0.05, 0.95, 12):
            p = steer.avn_params(float(t), float(n1))
            if entangle.concurrence_closed_form(p) <= 1e-3:
                continue
            settings = steer.standard_linear_settings(steer.family_theta3(p))
            i3 = steer.linear_i3_value(steer.avn_state(float(t), float(n1)), settings)
            if i3 <= steer.LINEAR_BOUND + 1e-9 and steer.steer_certificate(p).violated:
                found = (float(t), float(n1), i3)
                break
        if found:
            break
    ok = cert.violated and found is not None
    where = "none" if found is None else f"theta={found[0]:.4f}, nu1={found[1]:.4f}, I3={found[2]:.6f}"
    return CriterionResult("A11", "AVN state steerable but within the linear bound", ok,
                           f"AVN(pi/3, 0.7) margin {cert.margin:.6f}; linear-bound point: {where}")


def a12_swap(seed: int, scale: float = 1) -> CriterionResult:
    rng = np.random.Generator(np.random.PCG64(seed + 13))
    worst = 0.0
    bad_theta = 0
    for _ in range(_n(200, scale)):
        phi, alpha = rng.uniform(0.0, states.HALF_PI, 2)
        p = states.Rank2Params(0.25 * math.pi, phi, alpha, rng.uniform(0.0, states.TWO_PI), rng.uniform(0.0, 1.0))
        sw, q = states.swap_theta_quarter(p)
        c_in, _ = entangle.concurrence_wootters(states.rank2_density(p))
        c_out, _ = entangle.concurrence_wootters(states.rank2_density(q))
        worst = max(worst, abs(c_in - c_out))
        if not sw.degenerate and abs(sw.theta_prime - 0.25 * math.pi) < 1e-12:
            bad_theta += 1
    ok = worst < 1e-8 and bad_theta == 0
    return CriterionResult("A12", "theta = pi/4 swap", ok,
                           f"max concurrence change {worst:.3e} (< 1e-8); {bad_theta} non-degenerate outputs at pi/4")


CRITERIA = (
    a1_concurrence_dual_path, a2_ns_equivalence, a3_classical_bound, a4_maxima_vs_oracle,
    a5_entangled_implies_violation, a6_example_families, a7_linear_closed_form, a8_chsh,
    a9_schmidt, a10_decomposition, a11_avn_gap, a12_swap,
)


def run_all(seed: int = DEFAULT_SEED, scale: float = 1, emit: Callable[[str], None] | None = None) -> list[CriterionResult]:
    results = []
    for fn in CRITERIA:
        r = fn(seed, scale)
        results.append(r)
        if emit is not None:
            emit(r.line())
    return results
