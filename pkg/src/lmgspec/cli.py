"""Command-line front end.

Subcommands: spectrum, gap-scan, susy-check, ground-state, bench.  Output is
CSV (default) or JSON, written to stdout or --out; floats are formatted as
shortest round-trip decimals so repeated runs are byte-identical.  Grid
scans fan out over a thread pool (--threads, or LMG_THREADS) with results
keyed by grid index, so thread count never changes the emitted values.

Exit status: 0 = success, 1 = verification failure, 2 = usage/config error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .eigensolve import eig_dense_symmetric, spectral_gap
from .errors import LmgError, NotIntegerSpin
from .groundstate import ground_state
from .models import ModelParams, build_lmg_general, build_susy_rotated, extract_hn_blocks, \
    build_nonhermitian, h_minus_elements
from .eigensolve import charpoly_tridiag
from .tridiag import GeneralTridiag
from .spin import SpinJ
from .susy import build_supercharges, classify_spectrum, susy_sorted_hamiltonian, \
    verify_superalgebra

DENSE_DIM_LIMIT = 401           # dense-oracle guard (J <= 200)
SUSY_CHECK_CHARPOLY_MAX_J = 12


class ConfigError(Exception):
    """Invalid flag combination; maps to exit status 2."""


def fmt(value) -> str:
    """Shortest round-trip text for a cell value."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def parse_j_values(text: str) -> list:
    try:
        return [SpinJ.from_j(tok) for tok in text.split(",") if tok]
    except ValueError as exc:
        raise ConfigError(str(exc))


def gamma_grid(args) -> list:
    if args.gamma is not None:
        if args.gamma_min is not None or args.gamma_max is not None:
            raise ConfigError("--gamma conflicts with --gamma-min/--gamma-max")
        return [float(tok) for tok in args.gamma.split(",") if tok]
    if args.gamma_min is None or args.gamma_max is None:
        raise ConfigError("need --gamma or both --gamma-min and --gamma-max")
    steps = args.steps
    if steps < 1:
        raise ConfigError("--steps must be >= 1")
    if steps == 1:
        return [args.gamma_min]
    lo, hi = args.gamma_min, args.gamma_max
    return [lo + i * (hi - lo) / (steps - 1) for i in range(steps)]


def thread_count(args) -> int:
    if args.threads is not None:
        n = args.threads
    elif os.environ.get("LMG_THREADS"):
        n = int(os.environ["LMG_THREADS"])
    else:
        n = os.cpu_count() or 1
    if n < 1:
        raise ConfigError("thread count must be >= 1")
    return n


def parallel_map(fn, cells, threads: int) -> list:
    """Deterministic map: results ordered by cell index regardless of threads."""
    if threads == 1 or len(cells) <= 1:
        return [fn(c) for c in cells]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, cells))


def write_output(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def render_csv(header: list, rows: list, comments: list = ()) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    for comment in comments:
        lines.append(f"# {comment}")
    return "\n".join(lines) + "\n"


def render_json(config: dict, header: list, rows: list, summary: dict) -> str:
    payload = {
        "config": config,
        "rows": [dict(zip(header, row)) for row in rows],
        "summary": summary,
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def emit_plot_script(path: str, command: str, csv_path, j_values) -> None:
    if not csv_path:
        raise ConfigError("--emit-plot needs --out (the script references the CSV file)")
    lines = [
        "# gnuplot script",
        'set datafile separator ","',
        "set key outside",
        "set xlabel 'gamma'",
    ]
    if command == "gap-scan":
        lines += [
            "set ylabel 'gap'",
            "plot \\",
        ]
        parts = [
            f"  '{csv_path}' using 2:($1=={fmt(jv.j)}?$3:1/0) with lines title 'J={jv}', \\"
            for jv in j_values
        ]
        parts.append("  cosh(2*x) with lines lw 2 title 'bound cosh(2*gamma)'")
        lines += parts
    else:
        lines += [
            "set ylabel 'energy'",
            f"plot '{csv_path}' using 2:4 with dots title 'levels'",
        ]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------- spectrum

SPECTRUM_HEADER = ["j", "gamma", "level_index", "eigenvalue", "pair_id", "is_zero_mode"]


def cmd_spectrum(args) -> int:
    j_values = parse_j_values(args.j)
    gammas = gamma_grid(args)
    tol = args.tol
    if args.model == "general":
        missing = [f for f in ("xi", "chi1", "chi2", "lam") if getattr(args, f) is None]
        if missing:
            raise ConfigError("general model requires --xi --chi1 --chi2 --lambda")
        params = ModelParams(
            xi=args.xi, chi1=args.chi1, chi2=args.chi2, lam=args.lam,
            omega0=math.nan, gamma=math.nan,
        )
    for jv in j_values:
        if jv.dim > DENSE_DIM_LIMIT:
            raise ConfigError(f"J={jv} exceeds the dense-oracle limit (dim <= {DENSE_DIM_LIMIT})")

    def run_cell(cell):
        jv, g = cell
        if args.model == "susy":
            h = build_susy_rotated(jv, g)
            eigs = eig_dense_symmetric(h)
            report = classify_spectrum(eigs, jv, tol=tol)
            return [
                (str(jv), g, i, float(e), p if p >= 0 else -1, p == -1)
                for i, (e, p) in enumerate(zip(eigs, report.pair_index))
            ]
        h = build_lmg_general(jv, params)
        eigs = eig_dense_symmetric(h)
        return [(str(jv), g, i, float(e), None, None) for i, e in enumerate(eigs)]

    cells = [(jv, g) for jv in j_values for g in gammas]
    rows = [r for chunk in parallel_map(run_cell, cells, thread_count(args)) for r in chunk]
    config = {
        "command": "spectrum", "j": [str(j) for j in j_values], "gamma": gammas,
        "model": args.model, "tol": tol,
    }
    if args.format == "json":
        text = render_json(config, SPECTRUM_HEADER, rows, {"n_rows": len(rows)})
    else:
        text = render_csv(SPECTRUM_HEADER, rows)
    write_output(text, args.out)
    if args.emit_plot:
        emit_plot_script(args.emit_plot, "spectrum", args.out, j_values)
    return 0


# ---------------------------------------------------------------- gap-scan

GAP_HEADER = ["j", "gamma", "gap", "bound", "satisfied"]


def cmd_gap_scan(args) -> int:
    j_values = parse_j_values(args.j_list)
    gammas = gamma_grid(args)

    def run_cell(cell):
        jv, g = cell
        try:
            res = spectral_gap(jv, g, method="tridiag")
        except NotIntegerSpin:
            return (str(jv), g, None, None, "error")
        return (str(jv), g, res.gap, res.bound, res.satisfied)

    cells = [(jv, g) for jv in j_values for g in gammas]
    rows = parallel_map(run_cell, cells, thread_count(args))
    n_err = sum(1 for r in rows if r[4] == "error")
    config = {"command": "gap-scan", "j": [str(j) for j in j_values], "gamma": gammas}
    summary = {"n_rows": len(rows), "n_errors": n_err}
    if args.format == "json":
        text = render_json(config, GAP_HEADER, rows, summary)
    else:
        text = render_csv(GAP_HEADER, rows)
    write_output(text, args.out)
    if args.emit_plot:
        emit_plot_script(args.emit_plot, "gap-scan", args.out, j_values)
    return 1 if rows and n_err == len(rows) else 0


# ---------------------------------------------------------------- susy-check

def cmd_susy_check(args) -> int:
    jv = SpinJ.from_j(args.j)
    g = float(args.gamma_value)
    tol = args.tol
    checks = []        # (name, passed, detail)

    h_dense = build_susy_rotated(jv, g)
    eigs = eig_dense_symmetric(h_dense)
    report = classify_spectrum(eigs, jv, tol=max(tol, 1e-8))

    if jv.is_integer_spin():
        charges = build_supercharges(jv, g)
        h_sorted = susy_sorted_hamiltonian(jv, g)
        res = verify_superalgebra(charges, h_sorted)
        bound = 1e-10 * max(1.0, res.h_norm)
        checks.append(("superalgebra_q1_sq", res.r_q1_sq <= bound, res.r_q1_sq))
        checks.append(("superalgebra_q2_sq", res.r_q2_sq <= bound, res.r_q2_sq))
        checks.append(("superalgebra_anticommutator", res.r_anti <= bound, res.r_anti))
        checks.append(("superalgebra_commutators", res.r_comm <= bound, res.r_comm))

        if jv.two_j // 2 <= SUSY_CHECK_CHARPOLY_MAX_J and jv.two_j >= 2:
            hn = build_nonhermitian(jv, g)
            blocks = extract_hn_blocks(hn, jv)
            # hn is tridiagonal by construction; the three-term recurrence is
            # far better conditioned than a dense trace recursion here
            lhs = charpoly_tridiag(GeneralTridiag(
                alpha=np.diag(hn), beta=-np.diag(hn, 1), gamma_sub=np.diag(hn, -1),
            ))
            rhs = (charpoly_tridiag(blocks.h_plus) * charpoly_tridiag(blocks.h_minus)).times_lambda()
            scale = np.maximum(1.0, np.abs(rhs.coeffs))
            resid = float(np.max(np.abs(lhs.coeffs - rhs.coeffs) / scale))
            checks.append(("charpoly_factorization", resid <= 1e-8, resid))
            perm_ok = (
                np.array_equal(blocks.h_plus.reversed_conjugate().alpha, blocks.h_minus.alpha)
                and np.allclose(
                    blocks.h_plus.reversed_conjugate().to_dense(),
                    blocks.h_minus.to_dense(), rtol=0, atol=0,
                )
            )
            checks.append(("h_plus_minus_permutation_equivalent", perm_ok, 0.0))
            direct = h_minus_elements(jv, g)
            elem_ok = np.array_equal(direct.to_dense(), blocks.h_minus.to_dense())
            checks.append(("h_minus_elementwise", elem_ok, 0.0))
        checks.append(("spectrum_classification", report.verdict == "SusyPattern", report.verdict))
    else:
        broken_ok = report.verdict == "SusyBroken" and float(eigs[0]) > 0.0
        checks.append(("spectrum_classification_broken", broken_ok, report.verdict))

    all_pass = all(ok for _, ok, _ in checks)
    if args.format == "json":
        payload = {
            "config": {"command": "susy-check", "j": str(jv), "gamma": g},
            "rows": [
                {"check": name, "passed": bool(ok), "detail": fmt(detail)}
                for name, ok, detail in checks
            ],
            "summary": {"verdict": report.verdict, "all_passed": all_pass},
        }
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        lines = [f"susy-check J={jv} gamma={fmt(g)}"]
        for name, ok, detail in checks:
            lines.append(f"  {'PASS' if ok else 'FAIL'}  {name}  {fmt(detail)}")
        lines.append(f"verdict: {report.verdict}")
        text = "\n".join(lines) + "\n"
    write_output(text, args.out)
    return 0 if all_pass else 1


# ---------------------------------------------------------------- ground-state

GROUND_HEADER = ["m", "amplitude"]


def cmd_ground_state(args) -> int:
    jv = SpinJ.from_j(args.j)
    g = float(args.gamma_value)
    state = ground_state(jv, g)
    ms = jv.m_values()
    rows = [(int(m), float(a)) for m, a in zip(ms, state.amplitudes)]
    summary = {
        "norm_direct": state.norm_direct,
        "norm_legendre": state.norm_legendre,
        "energy_residual": state.energy_residual,
    }
    config = {"command": "ground-state", "j": str(jv), "gamma": g}
    if args.format == "json":
        payload = {
            "config": config,
            "rows": [{"m": m, "amplitude": a} for m, a in rows],
            "summary": summary,
            "amplitudes": [float(a) for a in state.amplitudes],
        }
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        comments = [f"{k}={fmt(v)}" for k, v in summary.items()]
        text = render_csv(GROUND_HEADER, rows, comments)
    write_output(text, args.out)
    return 0


# ---------------------------------------------------------------- bench

BENCH_HEADER = ["j", "gamma", "gap", "bound", "satisfied", "seconds", "mem_bytes"]


def cmd_bench(args) -> int:
    j_values = parse_j_values(args.j_list)
    gammas = gamma_grid(args)
    # warm up the jitted kernel so timings reflect steady state
    spectral_gap(SpinJ(20), 0.1, method="tridiag")

    def run_cell(cell):
        jv, g = cell
        start = time.perf_counter()
        res = spectral_gap(jv, g, method="tridiag")
        elapsed = time.perf_counter() - start
        mem = 2 * 8 * (jv.two_j // 2)      # two length-J float64 arrays
        return (str(jv), g, res.gap, res.bound, res.satisfied, elapsed, mem)

    cells = [(jv, g) for jv in j_values for g in gammas]
    rows = parallel_map(run_cell, cells, thread_count(args))
    config = {"command": "bench", "j": [str(j) for j in j_values], "gamma": gammas}
    if args.format == "json":
        text = render_json(config, BENCH_HEADER, rows, {"n_rows": len(rows)})
    else:
        text = render_csv(BENCH_HEADER, rows)
    write_output(text, args.out)
    return 0


# ---------------------------------------------------------------- parser

def _add_common(p, gamma_single=False):
    if gamma_single:
        p.add_argument("--gamma", dest="gamma_value", required=True,
                       help="anisotropy parameter (single value)")
    else:
        p.add_argument("--gamma", help="explicit gamma value(s), comma separated")
        p.add_argument("--gamma-min", type=float)
        p.add_argument("--gamma-max", type=float)
        p.add_argument("--steps", type=int, default=1,
                       help="grid points, endpoints included")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--emit-plot", help="write a gnuplot script referencing the CSV")
    p.add_argument("--tol", type=float, default=1e-8, help="pairing tolerance")
    p.add_argument("--threads", type=int, help="worker threads (env LMG_THREADS)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lmg",
        description="Spectral analysis of the antiferromagnetic LMG model",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="eigenvalues over a gamma grid")
    p.add_argument("--j", required=True, help="total spin value(s), comma separated")
    p.add_argument("--model", choices=["susy", "general"], default="susy")
    p.add_argument("--xi", type=float)
    p.add_argument("--chi1", type=float)
    p.add_argument("--chi2", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("gap-scan", help="spectral gap vs analytic bound")
    p.add_argument("--j-list", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_gap_scan)

    p = sub.add_parser("susy-check", help="verify supersymmetric structure")
    p.add_argument("--j", required=True)
    _add_common(p, gamma_single=True)
    p.set_defaults(func=cmd_susy_check)

    p = sub.add_parser("ground-state", help="closed-form zero mode")
    p.add_argument("--j", required=True)
    _add_common(p, gamma_single=True)
    p.set_defaults(func=cmd_ground_state)

    p = sub.add_parser("bench", help="time the large-J gap path")
    p.add_argument("--j-list", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LmgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
