"""The rank-2 state family, pure-state Schmidt form and the theta = pi/4 swap."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .cmat import SX, dagger, singular_values

HALF_PI = 0.5 * math.pi
TWO_PI = 2.0 * math.pi
NORM_TOL = 1e-10


class ParameterError(ValueError):
    """An angle, weight or amplitude vector is outside its allowed range."""

    def __init__(self, name: str, message: str):
        super().__init__(f"{name}: {message}")
        self.name = name
        self.message = message


def _check_range(name: str, value: float, lo: float, hi: float, hi_open: bool = False) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ParameterError(name, "must be finite")
    if value < lo or value > hi or (hi_open and value >= hi):
        bracket = ")" if hi_open else "]"
        raise ParameterError(name, f"{value!r} outside [{lo:g}, {hi:g}{bracket}")
    return value


@dataclass(frozen=True)
class Rank2Params:
    """Angles (radians) and weight of rho = nu1 |psi1><psi1| + nu2 |psi2><psi2|."""

    theta: float
    phi: float
    alpha: float
    beta: float
    nu1: float

    def __post_init__(self):
        _check_range("theta", self.theta, 0.0, HALF_PI)
        _check_range("phi", self.phi, 0.0, HALF_PI)
        _check_range("alpha", self.alpha, 0.0, HALF_PI)
        _check_range("beta", self.beta, 0.0, TWO_PI, hi_open=True)
        _check_range("nu1", self.nu1, 0.0, 1.0)

    @property
    def nu2(self) -> float:
        return 1.0 - self.nu1

    def replace(self, **changes) -> "Rank2Params":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return {"theta": self.theta, "phi": self.phi, "alpha": self.alpha,
                "beta": self.beta, "nu1": self.nu1}


@dataclass(frozen=True)
class PureState2Q:
    """Amplitudes in the ordering |00>, |01>, |10>, |11>."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (4,):
            raise ParameterError("amplitudes", "need exactly four amplitudes")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise ParameterError("amplitudes", f"norm {norm:.12g} is not 1")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, amps) -> "PureState2Q":
        amps = np.asarray(amps, dtype=complex).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise ParameterError("amplitudes", "zero vector")
        return cls(amps / norm)

    def coefficient_matrix(self) -> np.ndarray:
        """[[c, a], [b, d]] with rows indexed by the first qubit."""
        return self.amplitudes.reshape(2, 2)

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, np.conj(self.amplitudes))


def make_psi1(theta: float) -> PureState2Q:
    theta = _check_range("theta", theta, 0.0, HALF_PI)
    return PureState2Q(np.array([math.cos(theta), 0.0, 0.0, math.sin(theta)], dtype=complex))


def make_psi2(params: Rank2Params) -> PureState2Q:
    t, p, a = params.theta, params.phi, params.alpha
    e = complex(math.cos(params.beta), math.sin(params.beta))
    sp, cp = math.sin(p), math.cos(p)
    return PureState2Q(np.array([
        e * sp * math.sin(t),
        cp * math.cos(a),
        cp * math.sin(a),
        -e * sp * math.cos(t),
    ], dtype=complex))


def rank2_density(params: Rank2Params) -> np.ndarray:
    u = make_psi1(params.theta).amplitudes
    v = make_psi2(params).amplitudes
    return params.nu1 * np.outer(u, u.conj()) + params.nu2 * np.outer(v, v.conj())


def pure_concurrence(psi: PureState2Q) -> float:
    c, a, b, d = psi.amplitudes
    return float(min(1.0, 2.0 * abs(a * b - c * d)))


# --- Schmidt form ---------------------------------------------------------

@dataclass(frozen=True)
class SchmidtResult:
    kappa1: float
    kappa2: float
    u_a: np.ndarray
    u_b: np.ndarray

    def residual(self, psi: PureState2Q) -> float:
        out = np.kron(self.u_a, self.u_b) @ psi.amplitudes
        target = np.array([self.kappa1, 0.0, 0.0, self.kappa2], dtype=complex)
        return float(np.linalg.norm(out - target))


def _su2_from_ratio(num: complex, den: complex) -> np.ndarray:
    """[[A, -B*], [B, A*]] with B*/A = num/den (den = 0 means A = 0)."""
    n = math.hypot(abs(num), abs(den))
    if n == 0.0:
        return np.eye(2, dtype=complex)
    a = den / n
    b = np.conj(num / n)
    return np.array([[a, -np.conj(b)], [b, np.conj(a)]], dtype=complex)


def _bob_ratio(mu1: complex, mu2: float) -> tuple[complex, complex]:
    # root (s - mu2) / (2 mu1) = 2 mu1* / (s + mu2) of mu1 x^2 + mu2 x - mu1* = 0,
    # written as num/den in whichever form avoids cancellation
    s = math.sqrt(mu2 * mu2 + 4.0 * abs(mu1) ** 2)
    if s == 0.0:
        return 0j, 1.0 + 0j
    if mu2 >= 0.0:
        return 2.0 * np.conj(mu1), complex(mu2 + s)
    return complex(s - mu2), 2.0 * mu1


def schmidt_decompose(psi: PureState2Q) -> SchmidtResult:
    """Local unitaries taking psi to kappa1|00> + kappa2|11>, kappa1 >= kappa2 >= 0."""
    c, a, b, d = psi.amplitudes
    mu1 = a * np.conj(c) + np.conj(b) * d
    mu2 = float(2.0 * (abs(a) ** 2 + abs(d) ** 2) - 1.0)
    u_b = _su2_from_ratio(*_bob_ratio(mu1, mu2))
    a1, b1 = u_b[0, 0], u_b[1, 0]

    num = b1 * c + np.conj(a1) * a
    den = b1 * b + np.conj(a1) * d
    if max(abs(num), abs(den)) > 1e-12:
        u_a = _su2_from_ratio(num, den)
    else:
        # the first condition is empty; use the second one, B0/A0* = (-A1 b + B1* d)/(A1 c - B1* a)
        num2 = -a1 * b + np.conj(b1) * d
        den2 = a1 * c - np.conj(b1) * a
        u_a = _su2_from_ratio(np.conj(num2), np.conj(den2))

    out = np.kron(u_a, u_b) @ psi.amplitudes
    eta00, eta11 = out[0], out[3]
    if abs(eta11) > abs(eta00):
        u_a, u_b = SX @ u_a, SX @ u_b
        eta00, eta11 = eta11, eta00
    t1 = np.angle(eta00) if abs(eta00) > 0 else 0.0
    t2 = np.angle(eta11) if abs(eta11) > 0 else 0.0
    phase = np.diag([np.exp(-0.5j * t1), np.exp(-0.5j * t2)])
    return SchmidtResult(float(abs(eta00)), float(abs(eta11)), phase @ u_a, phase @ u_b)


def schmidt_coefficients_svd(psi: PureState2Q) -> tuple[float, float]:
    s = singular_values(psi.coefficient_matrix())
    return float(s[0]), float(s[1])


# --- theta = pi/4 swap ----------------------------------------------------

@dataclass(frozen=True)
class SwapUnitary:
    v_a: np.ndarray
    v_b: np.ndarray
    theta_prime: float
    zeta: float
    degenerate: bool = False


_PSI_PLUS = np.array([0.0, 1.0, 1.0, 0.0], dtype=complex) / math.sqrt(2.0)


def _explicit_degenerate_pair(phi: float) -> tuple[np.ndarray, np.ndarray]:
    c, s = math.cos(0.5 * phi), math.sin(0.5 * phi)
    v_a = np.array([[c, -s], [s, c]], dtype=complex)
    v_b = np.array([[s, c], [c, -s]], dtype=complex)
    return v_a, v_b


def swap_theta_quarter(params: Rank2Params, tol: float = 1e-12) -> tuple[SwapUnitary, Rank2Params]:
    """Re-express a theta = pi/4 state with the roles of psi1 and psi2 exchanged.

    psi1 is a Bell state here, so local unitaries can bring psi2 to Schmidt
    form while psi1 lands on (|01> + |10>)/sqrt(2). The returned parameters
    describe the same state up to V_a (x) V_b with theta' the Schmidt angle of
    psi2 and nu1' = nu2. When psi2 is itself maximally entangled theta' stays
    pi/4 and the result is flagged degenerate.
    """
    if abs(params.theta - 0.25 * math.pi) > tol:
        raise ParameterError("theta", "swap is defined for theta = pi/4 only")
    psi1 = make_psi1(params.theta)
    psi2 = make_psi2(params)
    sr = schmidt_decompose(psi2)
    degenerate = sr.kappa1 - sr.kappa2 < 1e-9

    if degenerate and params.phi == 0.0:
        # both states already canonical, nothing to do
        sw = SwapUnitary(np.eye(2, dtype=complex), np.eye(2, dtype=complex),
                         params.theta, 0.0, True)
        return sw, params

    if degenerate and params.beta == 0.0 and abs(params.alpha - 0.25 * math.pi) < tol:
        v_a, v_b = _explicit_degenerate_pair(params.phi)
    else:
        v_a, v_b = sr.u_a, sr.u_b
        w = v_a @ psi1.coefficient_matrix() @ v_b.T
        if degenerate:
            # psi2 -> Bell state is fixed by U (x) U*; rotate psi1's image onto sigma_x
            # sqrt(2) w is traceless unitary, exp(i g) n.sigma with det = -exp(2ig)
            w = math.sqrt(2.0) * w
            herm = w / np.sqrt(-np.linalg.det(w))
            _, vec = np.linalg.eigh(0.5 * (herm + dagger(herm)))
            had = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2.0)
            u = had @ dagger(vec[:, ::-1])
            v_a, v_b = u @ v_a, np.conj(u) @ v_b
            w = v_a @ psi1.coefficient_matrix() @ v_b.T
        pa, pb = np.angle(w[0, 1]), np.angle(w[1, 0])
        zeta = -0.5 * (pa + pb)
        v_a = np.diag([1.0, np.exp(1j * (zeta + pa))]) @ v_a
        v_b = np.diag([np.exp(1j * zeta), np.exp(-1j * pa)]) @ v_b

    out2 = np.kron(v_a, v_b) @ psi2.amplitudes
    out1 = np.kron(v_a, v_b) @ psi1.amplitudes
    g = np.vdot(_PSI_PLUS, out1)
    if abs(g) > 0:
        ph = np.conj(g) / abs(g)
        v_a = v_a * ph
        out2 = out2 * ph
    zeta = float(np.angle(out2[0])) if abs(out2[0]) > 1e-15 else 0.0
    theta_p = math.atan2(abs(out2[3]), abs(out2[0]))
    if degenerate:
        theta_p = 0.25 * math.pi
    new = Rank2Params(theta=min(max(theta_p, 0.0), HALF_PI), phi=0.0,
                      alpha=0.25 * math.pi, beta=0.0, nu1=params.nu2)
    return SwapUnitary(v_a, v_b, theta_p, zeta, degenerate), new
