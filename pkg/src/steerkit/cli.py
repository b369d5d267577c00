"""Command-line interface: ``steerkit <command> ...``.

All angles are radians. JSON goes to stdout, diagnostics to stderr.
Exit status: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import acceptance, entangle, oracle, states, steer

SCHEMA = "steerkit/1"
EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2
PARAM_NAMES = ("theta", "phi", "alpha", "beta", "nu1")
SCAN_COLUMNS = ("theta", "phi", "alpha", "beta", "nu1", "concurrence", "c_lhs", "w_max", "margin", "i3", "verdict")
STEER_COLUMNS = ("theta", "phi", "alpha", "beta", "nu1", "concurrence", "c_lhs", "w1_max", "w2_max", "best_w",
                 "margin", "violated", "verdict", "tau", "delta", "bob_theta", "bob_phi", "degenerate_direction")
# typed constants such as 1.5708 for pi/2 are pulled onto the range end
SNAP = 1e-4
_UPPER = {"theta": states.HALF_PI, "phi": states.HALF_PI, "alpha": states.HALF_PI, "beta": None, "nu1": 1.0}


class UsageError(Exception):
    pass


def _fmt(x):
    if isinstance(x, (bool, str)) or x is None:
        return x
    if isinstance(x, (float, np.floating)):
        return float(f"{float(x):.15g}")
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, complex):
        return [_fmt(x.real), _fmt(x.imag)]
    if isinstance(x, dict):
        return {k: _fmt(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_fmt(v) for v in (x.tolist() if isinstance(x, np.ndarray) else x)]
    return x


def emit_json(payload: dict, out=None) -> None:
    out = out or sys.stdout
    out.write(json.dumps(_fmt({"schema": SCHEMA, **payload}), indent=2) + "\n")


def _snap(name: str, value: float) -> float:
    hi = _UPPER[name]
    if -SNAP <= value < 0.0:
        return 0.0
    if hi is not None and hi < value <= hi + SNAP:
        return hi
    return value


def build_params(values: dict) -> states.Rank2Params:
    try:
        return states.Rank2Params(**{k: _snap(k, float(values[k])) for k in PARAM_NAMES})
    except states.ParameterError as exc:
        raise UsageError(f"--{exc.name}: {exc.message}") from exc


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    for name in ("theta", "phi", "alpha"):
        p.add_argument(f"--{name}", type=float, required=True, help="radians in [0, pi/2]")
    p.add_argument("--beta", type=float, default=0.0, help="radians in [0, 2pi) (default 0)")
    p.add_argument("--nu1", type=float, required=True, help="weight of psi1, in [0, 1]")


# --- concurrence ------------------------------------------------------------

def cmd_concurrence(args) -> int:
    params = build_params(vars(args))
    rep = entangle.concurrence_report(params)
    emit_json({"params": params.as_dict(), "s1": rep.s1, "s2": rep.s2, "c_closed": rep.c_closed,
               "c_wootters": rep.c_wootters, "wootters_lambdas": list(rep.wootters_lambdas), "defect": rep.defect})
    return EXIT_OK


# --- steer ------------------------------------------------------------------

def certificate_row(params: states.Rank2Params, cert: steer.SteeringCertificate) -> dict:
    return {**params.as_dict(), "concurrence": cert.concurrence, "c_lhs": cert.c_lhs,
            "w1_max": cert.w1_max, "w2_max": cert.w2_max, "best_w": cert.best_w, "margin": cert.margin,
            "violated": cert.violated, "verdict": cert.verdict, "tau": cert.vectors.tau_used,
            "delta": cert.delta, "bob_theta": cert.bob_angles[0], "bob_phi": cert.bob_angles[1],
            "degenerate_direction": cert.degenerate_direction}


def _csv_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.15g}"
    return str(v)


def cmd_steer(args) -> int:
    params = build_params(vars(args))
    cert = steer.steer_certificate(params)
    if args.csv:
        row = certificate_row(params, cert)
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(STEER_COLUMNS)
        w.writerow([_csv_value(row[c]) for c in STEER_COLUMNS])
        return EXIT_OK
    vec = cert.vectors
    emit_json({
        "params": params.as_dict(), "concurrence": cert.concurrence, "c_lhs": cert.c_lhs,
        "w1_max": cert.w1_max, "w2_max": cert.w2_max, "best_w": cert.best_w, "margin": cert.margin,
        "violated": cert.violated, "verdict": cert.verdict, "delta": cert.delta,
        "bob_direction": cert.bob_direction, "bob_angles": {"theta": cert.bob_angles[0], "phi": cert.bob_angles[1]},
        "degenerate_direction": cert.degenerate_direction,
        "vectors": {"f": vec.f, "h": vec.h, "h0": vec.h0, "tau": vec.tau_used},
        "per_tau": [{"tau": t, "w1_max": a, "w2_max": b} for t, a, b in cert.per_tau],
    })
    return EXIT_OK


# --- scan -------------------------------------------------------------------

@dataclass(frozen=True)
class ScanResult:
    params: states.Rank2Params
    concurrence: float
    c_lhs: float
    w_max: float
    margin: float
    i3: float
    verdict: str

    def row(self) -> list[str]:
        p = self.params
        vals = (p.theta, p.phi, p.alpha, p.beta, p.nu1, self.concurrence, self.c_lhs,
                self.w_max, self.margin, self.i3, self.verdict)
        return [_csv_value(v) for v in vals]


def parse_grid(spec: str) -> dict[str, list[float]]:
    """'theta=0:1.5708:25,nu1=1' -> value lists; unlisted parameters default to 0 (nu1 to 1)."""
    axes: dict[str, list[float]] = {}
    for part in filter(None, (s.strip() for s in spec.split(","))):
        name, sep, body = part.partition("=")
        name = name.strip()
        if not sep or name not in PARAM_NAMES:
            raise UsageError(f"--grid: bad axis {part!r}; expected name=start:stop:count with name in {PARAM_NAMES}")
        if name in axes:
            raise UsageError(f"--grid: axis {name} given twice")
        fields = body.split(":")
        try:
            if len(fields) == 1:
                vals = [float(fields[0])]
            elif len(fields) == 3:
                count = int(fields[2])
                if count < 1:
                    raise ValueError
                vals = np.linspace(float(fields[0]), float(fields[1]), count).tolist()
            else:
                raise ValueError
        except ValueError:
            raise UsageError(f"--grid: cannot parse {part!r}") from None
        axes[name] = [_snap(name, v) for v in vals]
    for name in PARAM_NAMES:
        axes.setdefault(name, [1.0 if name == "nu1" else 0.0])
    return axes


def evaluate_point(values: tuple) -> ScanResult:
    params = states.Rank2Params(*values)
    cert = steer.steer_certificate(params)
    return ScanResult(params, cert.concurrence, cert.c_lhs, cert.best_w, cert.margin,
                      steer.linear_i3_for_params(params), cert.verdict)


def _eval_chunk(chunk: list) -> list:
    return [(i, evaluate_point(v)) for i, v in chunk]


def run_scan(axes: dict, jobs: int = 1) -> list[ScanResult]:
    points = list(itertools.product(*(axes[n] for n in PARAM_NAMES)))
    for pt in points:
        build_params(dict(zip(PARAM_NAMES, pt)))
    if jobs <= 1 or len(points) < 2:
        return [evaluate_point(pt) for pt in points]
    indexed = list(enumerate(points))
    size = max(1, math.ceil(len(indexed) / (4 * jobs)))
    chunks = [indexed[i:i + size] for i in range(0, len(indexed), size)]
    out: list = [None] * len(points)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_eval_chunk, chunks):
            for i, res in part:
                out[i] = res
    return out


def write_scan(results: list[ScanResult], stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(SCAN_COLUMNS)
    for r in results:
        w.writerow(r.row())


def atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".steerkit-", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_scan(args) -> int:
    axes = parse_grid(args.grid)
    if args.jobs < 1:
        raise UsageError("--jobs: must be at least 1")
    results = run_scan(axes, args.jobs)
    buf = io.StringIO()
    write_scan(results, buf)
    if args.out:
        atomic_write_text(args.out, buf.getvalue())
        print(f"wrote {len(results)} rows to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


# --- verify -----------------------------------------------------------------

def cmd_verify(args) -> int:
    seed = args.seed
    if seed is None:
        env = os.environ.get("STEERKIT_SEED")
        try:
            seed = int(env) if env else acceptance.DEFAULT_SEED
        except ValueError:
            raise UsageError(f"STEERKIT_SEED: not an integer: {env!r}") from None
    scale = 10_000 / args.n if args.n else 1.0
    if args.quick:
        scale *= 10
    print(f"# seed={seed} rng={oracle.RNG_ALGORITHM} scale={scale:g}")
    results = acceptance.run_all(seed, scale, emit=lambda line: print(line, flush=True))
    failed = [r.key for r in results if not r.passed]
    print(f"# {len(results) - len(failed)}/{len(results)} criteria passed" + (f"; failed: {', '.join(failed)}" if failed else ""))
    return EXIT_VERIFY if failed else EXIT_OK


# --- schmidt ----------------------------------------------------------------

def parse_amps(text: str) -> np.ndarray:
    parts = [p for p in text.split(";")]
    if len(parts) != 4:
        raise UsageError("--amps: need four 're,im' pairs separated by ';'")
    amps = []
    for p in parts:
        try:
            re_, im_ = (float(x) for x in p.split(","))
        except ValueError:
            raise UsageError(f"--amps: cannot parse {p!r}") from None
        amps.append(complex(re_, im_))
    return np.array(amps)


def cmd_schmidt(args) -> int:
    amps = parse_amps(args.amps)
    norm = float(np.linalg.norm(amps))
    if norm == 0.0:
        raise UsageError("--amps: zero vector")
    if abs(norm - 1.0) > 1e-6 and not args.renorm:
        raise UsageError(f"--amps: norm is {norm:.9g}, not 1 (pass --renorm to normalize)")
    psi = states.PureState2Q.normalized(amps)
    res = states.schmidt_decompose(psi)
    emit_json({"kappa1": res.kappa1, "kappa2": res.kappa2,
               "uA": [[complex(z) for z in row] for row in res.u_a],
               "uB": [[complex(z) for z in row] for row in res.u_b],
               "residual": res.residual(psi), "norm_in": norm})
    return EXIT_OK


# --- entry point --------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="steerkit", description="Steering certificates for rank-2 two-qubit states. Angles are in radians.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("concurrence", help="closed-form and Wootters concurrence")
    _add_param_flags(p)
    p.set_defaults(func=cmd_concurrence)

    p = sub.add_parser("steer", help="state-dependent steering certificate")
    _add_param_flags(p)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--csv", action="store_true", help="one header row and one data row")
    p.set_defaults(func=cmd_steer)

    p = sub.add_parser("scan", help="certificates over a parameter grid, as CSV")
    p.add_argument("--grid", required=True, help='e.g. "theta=0:1.5708:25,phi=0,nu1=1" (start:stop:count or a single value)')
    p.add_argument("--out", help="output file, written atomically (default stdout)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (output order does not depend on it)")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--seed", type=int, default=None, help="sampling seed (default $STEERKIT_SEED or built-in)")
    p.add_argument("--n", type=int, default=None, help="draws for the 10^4-sized criteria; others scale with it")
    p.add_argument("--quick", action="store_true", help="ten times fewer draws")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("schmidt", help="Schmidt form of a pure state")
    p.add_argument("--amps", required=True, help='"re,im;re,im;re,im;re,im" for |00>,|01>,|10>,|11>')
    p.add_argument("--renorm", action="store_true", help="normalize instead of rejecting a non-unit vector")
    p.set_defaults(func=cmd_schmidt)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"steerkit {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
