"""Command-line interface: report, sweep, verify, limit.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .correlations import (
    NUMERIC_MAX_QUBITS,
    correlation_report,
    holevo_quantity,
    owd_closed_form,
    owd_numeric,
    saturation_error,
)
from .measurement import MeasurementBasis, apply_measurement, invariance_grid
from .statespace import eig_hermitian, entropy
from .werner import WernerParams, build_werner_dense, werner_spectrum

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

DEFAULT_N_LIST = (2, 3, 4, 5, 10)
MODES = ("closed_form", "numeric", "both")
LIMIT_N_SEQUENCE = (5, 10, 15, 20, 25, 30)


class UsageError(ValueError):
    pass


def fmt(x: float) -> str:
    """12 significant digits; plain notation for magnitudes in [1e-4, 1e4)."""
    return f"{x:.12g}"


def p_grid(p_start: float, p_end: float, p_steps: int) -> list[float]:
    """Inclusive uniform grid; interior points are start + k * (end - start) / (steps - 1)."""
    span = p_end - p_start
    pts = [p_start + span * k / (p_steps - 1) for k in range(p_steps)]
    pts[-1] = p_end
    return pts


@dataclass(frozen=True)
class SweepConfig:
    n_list: tuple[int, ...] = DEFAULT_N_LIST
    p_start: float = 0.0
    p_end: float = 1.0
    p_steps: int = 101
    output_path: str = "owd_sweep.csv"
    mode: str = "closed_form"
    grid_density: int = 8

    def __post_init__(self):
        if not self.n_list:
            raise UsageError("n_list must not be empty")
        if any(n < 2 for n in self.n_list):
            raise UsageError("every n must be at least 2")
        if not (0.0 <= self.p_start < self.p_end <= 1.0):
            raise UsageError("need 0 <= p_start < p_end <= 1")
        if self.p_steps < 2:
            raise UsageError("p_steps must be at least 2")
        if self.mode not in MODES:
            raise UsageError(f"mode must be one of {MODES}")
        if self.mode != "closed_form" and max(self.n_list) > NUMERIC_MAX_QUBITS:
            raise UsageError(f"numeric mode requires every n <= {NUMERIC_MAX_QUBITS}")


def sweep_rows(config: SweepConfig) -> tuple[list[str], list[list[str]]]:
    header = ["n", "p"]
    if config.mode in ("closed_form", "both"):
        header.append("owd_closed")
    if config.mode in ("numeric", "both"):
        header.append("owd_numeric")

    points = [(n, p) for n in sorted(set(config.n_list)) for p in p_grid(config.p_start, config.p_end, config.p_steps)]

    def evaluate(point):
        n, p = point
        params = WernerParams(n, p)
        row = [str(n), fmt(p)]
        if config.mode in ("closed_form", "both"):
            row.append(fmt(owd_closed_form(params)))
        if config.mode in ("numeric", "both"):
            row.append(fmt(owd_numeric(params, config.grid_density)[0]))
        return row

    if config.mode == "closed_form":
        rows = [evaluate(pt) for pt in points]
    else:
        # eigensolves release the GIL; map() keeps row order deterministic
        with ThreadPoolExecutor() as pool:
            rows = list(pool.map(evaluate, points))
    return header, rows


def write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence[str]]) -> None:
    text = "\n".join(",".join(r) for r in [header, *rows]) + "\n"
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# -- verification ---------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    tolerance: float
    max_deviation: float = 0.0
    worst: Optional[str] = None
    failures: list[str] = field(default_factory=list)

    def record(self, deviation: float, where: str) -> None:
        if deviation > self.max_deviation or self.worst is None:
            self.max_deviation = max(deviation, self.max_deviation)
            self.worst = where
        if deviation > self.tolerance:
            self.failures.append(where)

    @property
    def passed(self) -> bool:
        return not self.failures


def _tuple(n, p, theta=None, phi=None) -> str:
    s = f"n={n}, p={fmt(p)}"
    if theta is not None:
        s += f", theta={fmt(theta)}, phi={fmt(phi)}"
    return f"({s})"


def run_verification(n_max: int, grid_density: int) -> list[CheckResult]:
    ns = range(2, n_max + 1)
    tenth = [k / 10 for k in range(11)]
    quarter = [0.0, 0.25, 0.5, 0.75, 1.0]
    hundredth = [k / 100 for k in range(101)]
    bases = invariance_grid(grid_density)

    owd = CheckResult("owd closed form vs numeric minimisation", 1e-8)
    for n in ns:
        for p in tenth:
            params = WernerParams(n, p)
            owd.record(abs(owd_numeric(params, grid_density)[0] - owd_closed_form(params)), _tuple(n, p))

    spectra = CheckResult("dense vs closed-form spectrum", 1e-9)
    for n in ns:
        for p in quarter:
            params = WernerParams(n, p)
            dense = eig_hermitian(build_werner_dense(params)).expanded()
            spectra.record(float(np.max(np.abs(dense - werner_spectrum(params).expanded()))), _tuple(n, p))

    flat = CheckResult("measured-state entropy spread over (theta, phi)", 1e-9)
    holevo = CheckResult("Holevo quantity equals zero", 1e-10)
    for n in ns:
        for p in (0.0, 0.5, 1.0):
            params = WernerParams(n, p)
            rho = build_werner_dense(params)
            values = [entropy(apply_measurement(rho, b)) for b in bases]
            flat.record(max(values) - min(values), _tuple(n, p))
            for b in bases:
                holevo.record(abs(holevo_quantity(params, b)), _tuple(n, p, b.theta, b.phi))

    mono = CheckResult("monotone in p and in n", 1e-12)
    for n in ns:
        curve = [owd_closed_form(WernerParams(n, p)) for p in hundredth]
        for k in range(1, len(curve)):
            mono.record(max(curve[k - 1] - curve[k], 0.0), _tuple(n, hundredth[k]))
        if n < n_max:
            for p, here in zip(hundredth, curve):
                mono.record(max(here - owd_closed_form(WernerParams(n + 1, p)), 0.0), _tuple(n + 1, p))

    limit = CheckResult("saturation towards owd = p", 1e-3)
    errors = [saturation_error(n) for n in LIMIT_N_SEQUENCE]
    limit.record(errors[-1], f"(n={LIMIT_N_SEQUENCE[-1]})")
    for k in range(1, len(errors)):
        # a growing sup-error is a failure regardless of its size
        if errors[k] > errors[k - 1]:
            limit.failures.append(f"(n={LIMIT_N_SEQUENCE[k]}: e(n) increased)")

    return [owd, spectra, flat, holevo, mono, limit]


# -- commands -------------------------------------------------------------


def cmd_report(args) -> int:
    params = WernerParams(args.n, args.p)
    basis = MeasurementBasis(args.theta, args.phi)
    r = correlation_report(params, basis, grid_density=args.grid)
    lines = [
        f"n = {params.n}, p = {fmt(params.p)}, theta = {fmt(basis.theta)}, phi = {fmt(basis.phi)}",
        f"state_entropy     {fmt(r.state_entropy)}",
        f"measured_entropy  {fmt(r.measured_entropy)}",
        f"owd_closed        {fmt(r.owd_closed)}",
    ]
    if r.owd_numeric is not None:
        lines.append(f"owd_numeric       {fmt(r.owd_numeric)}")
    else:
        lines.append(f"owd_numeric       skipped (n > {NUMERIC_MAX_QUBITS})")
    lines.append(f"holevo            {fmt(r.holevo)}" if r.holevo is not None else "holevo            skipped (dense limit)")
    lines.append(f"delta owd_closed - (measured - state)  {r.owd_closed - (r.measured_entropy - r.state_entropy):.3e}")
    if r.owd_numeric is not None:
        lines.append(f"delta owd_numeric - owd_closed         {r.owd_numeric - r.owd_closed:.3e}")
        lines.append(f"basis_at_min      theta = {fmt(r.basis_at_min.theta)}, phi = {fmt(r.basis_at_min.phi)}")
    print("\n".join(lines))
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = SweepConfig(
        n_list=tuple(args.n_list),
        p_start=args.p_start,
        p_end=args.p_end,
        p_steps=args.p_steps,
        output_path=args.out,
        mode=args.mode,
        grid_density=args.grid,
    )
    header, rows = sweep_rows(config)
    try:
        write_csv(config.output_path, header, rows)
    except OSError as exc:
        print(f"error: cannot write {config.output_path}: {exc}", file=sys.stderr)
        return EXIT_IO
    if config.output_path != "-":
        print(f"wrote {len(rows)} rows to {config.output_path}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if not (2 <= args.n_max <= 10):
        raise UsageError("--n-max must lie in [2, 10]")
    if args.grid < 4:
        raise UsageError("--grid must be at least 4")
    results = run_verification(args.n_max, args.grid)
    ok = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.name}: max deviation {r.max_deviation:.3e} (tol {r.tolerance:.0e})")
        if not r.passed:
            ok = False
            print(f"       first failure at {r.failures[0]} ({len(r.failures)} failing points)")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_limit(args) -> int:
    ps = p_grid(0.0, 1.0, args.p_steps)
    for n in args.n_list:
        if n < 2:
            raise UsageError("every n must be at least 2")
        print(f"n = {n}: sup_p |owd - p| = {saturation_error(n, ps):.6e}")
    return EXIT_OK


def _n_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid n list {text!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="werner-owd",
        description="One-way deficit and Holevo quantity of the generalized n-qubit Werner state",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    rp = sub.add_parser("report", help="all quantities at a single (n, p, theta, phi)")
    rp.add_argument("--n", type=int, required=True)
    rp.add_argument("--p", type=float, required=True)
    rp.add_argument("--theta", type=float, default=0.0)
    rp.add_argument("--phi", type=float, default=0.0)
    rp.add_argument("--grid", type=int, default=8, help="grid density for the numeric minimisation")
    rp.set_defaults(func=cmd_report)

    sp = sub.add_parser("sweep", help="owd over a p grid for several n, written as CSV")
    sp.add_argument("--n-list", type=_n_list, default=list(DEFAULT_N_LIST))
    sp.add_argument("--p-start", type=float, default=0.0)
    sp.add_argument("--p-end", type=float, default=1.0)
    sp.add_argument("--p-steps", type=int, default=101)
    sp.add_argument("--out", default="owd_sweep.csv", help="output CSV path, '-' for stdout")
    sp.add_argument("--mode", choices=MODES, default="closed_form")
    sp.add_argument("--grid", type=int, default=8)
    sp.set_defaults(func=cmd_sweep)

    vp = sub.add_parser("verify", help="closed forms against dense numerical oracles")
    vp.add_argument("--n-max", type=int, default=4)
    vp.add_argument("--grid", type=int, default=8)
    vp.set_defaults(func=cmd_verify)

    lp = sub.add_parser("limit", help="sup_p |owd(n, p) - p| for the given n")
    lp.add_argument("--n", dest="n_list", type=_n_list, default=list(LIMIT_N_SEQUENCE))
    lp.add_argument("--p-steps", type=int, default=101)
    lp.set_defaults(func=cmd_limit)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        # UsageError and invalid-parameter errors from the library alike
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
