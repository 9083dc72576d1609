"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

import numpy as np

from quasispec._version import __version__
from quasispec.duality import dual_residual, fibonacci_approximant, fourier_dual
from quasispec.eigen import eigenpairs
from quasispec.lyapunov import le_analytic, le_transfer
from quasispec.model import GOLDEN, Boundary, ModelParams, build_hamiltonian, duality_phase
from quasispec.observables import DEFAULT_IM_TOL, DEFAULT_RE_TOL, ClassTag, diagnose_spectrum
from quasispec.sweep import (
    EGrid,
    SweepConfig,
    emit_table,
    format_le_map,
    format_spectrum_table,
    le_map,
    run_sweep,
    spectrum_row,
    v_range,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

log = logging.getLogger("quasispec")


class UsageError(ValueError):
    pass


def parse_complex(text: str) -> complex:
    """Accepts ``a``, ``bi``, ``a+bi``, ``a-bi`` (``j`` works as well as ``i``)."""
    s = text.strip().replace(" ", "").replace("I", "i").replace("i", "j")
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r} (use forms like 1.5, 2i, 0.3-0.7i)")


def _default_jobs() -> int:
    raw = os.environ.get("QUASISPEC_JOBS")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _add_model_flags(p: argparse.ArgumentParser, L_default: int = 610, V: bool = True) -> None:
    g = p.add_argument_group("model")
    g.add_argument("--L", type=int, default=L_default, help=f"number of sites (default {L_default})")
    if V:
        g.add_argument("--V", type=float, default=1.0, help="potential strength (default 1.0)")
    g.add_argument("--alpha", type=float, default=GOLDEN, help="frequency (default golden mean (sqrt5-1)/2)")
    g.add_argument("--phase", type=float, default=0.0, help="phase offset in [0, 1) (default 0)")
    g.add_argument("--bc", choices=[b.value for b in Boundary], default=Boundary.OPEN.value,
                   help="boundary condition (default open)")
    g.add_argument("--singular-eps", type=float, default=1e-12,
                   help="reject sites with |sin(pi(alpha n + phase))| below this (default 1e-12)")


def _add_tol_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--re-tol", type=float, default=DEFAULT_RE_TOL, help="real-part tolerance (default 1e-6)")
    p.add_argument("--im-tol", type=float, default=DEFAULT_IM_TOL, help="imaginary-part tolerance (default 1e-6)")


def _add_out_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="output table path (required)")
    p.add_argument("--format", choices=["csv", "gnuplot"], default="csv", help="table format (default csv)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quasispec", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"quasispec {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="diagonalise the chain and write the spectrum table")
    _add_model_flags(p)
    _add_tol_flags(p)
    _add_out_flags(p)

    p = sub.add_parser("ipr", help="per-state IPR table plus per-class medians")
    _add_model_flags(p)
    _add_tol_flags(p)
    _add_out_flags(p)

    p = sub.add_parser("le", help="Lyapunov exponent at one energy or on a grid")
    _add_model_flags(p)
    p.add_argument("--E", type=parse_complex, help="energy, e.g. 1.5, 2i, 0.3+0.7i")
    p.add_argument("--method", choices=["analytic", "transfer", "both"], default="analytic")
    p.add_argument("--steps", type=int, default=100_000, help="transfer-matrix steps (default 1e5)")
    p.add_argument("--burn-in", type=int, default=1_000, help="discarded steps (default 1e3)")
    p.add_argument("--seed-phase", type=float, default=None, help="orbit phase (default: --phase)")
    grid = p.add_argument_group("grid mode (analytic map; needs --out)")
    grid.add_argument("--re-min", type=float)
    grid.add_argument("--re-max", type=float)
    grid.add_argument("--re-n", type=int, default=101)
    grid.add_argument("--im-min", type=float, default=0.0)
    grid.add_argument("--im-max", type=float, default=0.0)
    grid.add_argument("--im-n", type=int, default=1)
    _add_out_flags(p)

    p = sub.add_parser("sweep", help="spectrum and diagnostics over a grid of V")
    _add_model_flags(p, V=False)
    p.add_argument("--v-from", type=float, default=0.0)
    p.add_argument("--v-to", type=float, default=3.0)
    p.add_argument("--v-step", type=float, default=0.1)
    p.add_argument("--jobs", type=int, default=_default_jobs(), help="worker processes (default $QUASISPEC_JOBS or 1)")
    p.add_argument("--skip-errors", action="store_true", help="record failing V values instead of aborting")
    _add_tol_flags(p)
    _add_out_flags(p)

    p = sub.add_parser("dual-check", help="dual-equation residuals with a Fibonacci rational frequency")
    p.add_argument("--L", type=int, default=610, help="Fibonacci number of sites (default 610)")
    p.add_argument("--V", type=float, default=1.0)
    p.add_argument("--bc", choices=[b.value for b in Boundary], default=Boundary.OPEN.value)
    p.add_argument("--form", choices=["derived", "printed"], default="derived")
    _add_tol_flags(p)
    p.add_argument("--out", help="output table path (required)")
    return parser


def _params(args, **override) -> ModelParams:
    kw = dict(L=args.L, V=getattr(args, "V", 0.0), alpha=args.alpha, phase=args.phase, bc=args.bc,
              singular_eps=args.singular_eps)
    kw.update(override)
    return ModelParams(**kw)


def _check_tols(args) -> None:
    if args.re_tol <= 0 or args.im_tol <= 0:
        raise UsageError(f"tolerances must be > 0 (re_tol={args.re_tol}, im_tol={args.im_tol})")


def _need_out(args) -> str:
    if not args.out:
        raise UsageError(f"{args.command}: --out is required for table output")
    return args.out


def cmd_spectrum(args) -> int:
    p = _params(args)
    _check_tols(args)
    out = _need_out(args)
    row = spectrum_row(p, args.re_tol, args.im_tol)
    emit_table(format_spectrum_table([row], p, args.format, extra={"re_tol": args.re_tol, "im_tol": args.im_tol}), out)
    log.info("wrote %d eigenvalues to %s", len(row.eigenvalues), out)
    return EXIT_OK


def cmd_ipr(args) -> int:
    p = _params(args)
    _check_tols(args)
    out = _need_out(args)
    row = spectrum_row(p, args.re_tol, args.im_tol)
    emit_table(format_spectrum_table([row], p, args.format, extra={"re_tol": args.re_tol, "im_tol": args.im_tol}), out)
    for tag in ClassTag:
        values = [r.ipr for r in row.eigenvalues if r.tag == tag.value]
        med = f"{np.median(values):.6g}" if values else "nan"
        print(f"{tag.value}: count={len(values)} median_ipr={med}")
    return EXIT_OK


def cmd_le(args) -> int:
    p = _params(args)
    if args.re_min is not None or args.re_max is not None:
        if args.re_min is None or args.re_max is None:
            raise UsageError("grid mode needs both --re-min and --re-max")
        if args.method != "analytic":
            raise UsageError("grid mode supports --method analytic only")
        grid = EGrid(args.re_min, args.re_max, args.re_n, args.im_min, args.im_max, args.im_n)
        out = _need_out(args)
        emit_table(format_le_map(p.V, grid, le_map(p.V, grid), args.format), out)
        return EXIT_OK
    if args.E is None:
        raise UsageError("le: give --E or a grid (--re-min/--re-max)")
    if args.steps <= args.burn_in or args.burn_in < 0:
        raise UsageError(f"need --steps > --burn-in >= 0 (steps={args.steps}, burn_in={args.burn_in})")
    analytic = transfer = None
    if args.method in ("analytic", "both"):
        analytic = le_analytic(args.E, p.V)
    if args.method in ("transfer", "both"):
        est = le_transfer(args.E, p, args.steps, args.burn_in, args.seed_phase)
        transfer = est.gamma
    if args.method == "analytic":
        print(f"{analytic:.17g}")
    elif args.method == "transfer":
        print(f"{transfer:.17g}")
    else:
        print(f"analytic {analytic:.17g}")
        print(f"transfer {transfer:.17g}")
        print(f"difference {transfer - analytic:.17g}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    _check_tols(args)
    if args.jobs < 1:
        raise UsageError(f"--jobs must be >= 1, got {args.jobs}")
    grid = v_range(args.v_from, args.v_to, args.v_step)
    base = _params(args, V=grid[0])
    for v in grid:
        base.with_(V=v)  # validate every V before any diagonalisation
    out = _need_out(args)
    cfg = SweepConfig(v_grid=grid, base=base, re_tol=args.re_tol, im_tol=args.im_tol, jobs=args.jobs,
                      skip_errors=args.skip_errors)
    result = run_sweep(cfg)
    if not result.rows:
        print("sweep produced no rows", file=sys.stderr)
        return EXIT_NUMERIC
    emit_table(format_spectrum_table(result.rows, base, args.format,
                                     extra={"re_tol": args.re_tol, "im_tol": args.im_tol}), out)
    for v, err in result.errors:
        print(f"skipped V={v!r}: {err}", file=sys.stderr)
    return EXIT_OK


def cmd_dual_check(args) -> int:
    _check_tols(args)
    alpha = fibonacci_approximant(args.L)
    phase = duality_phase(args.L)
    p = ModelParams(L=args.L, V=args.V, alpha=float(alpha), phase=phase, bc=args.bc)
    out = _need_out(args)
    pairs = eigenpairs(build_hamiltonian(p))
    diags = diagnose_spectrum(pairs, p, args.re_tol, args.im_tol)
    lines = [
        f"# quasispec dual_check version={__version__}",
        f"# L={p.L}",
        f"# V={p.V!r}",
        f"# alpha={alpha.numerator}/{alpha.denominator}",
        f"# phase={phase!r}",
        f"# bc={p.bc.value}",
        f"# form={args.form}",
        "re_E,im_E,class,residual",
    ]
    residuals = []
    for pair, d in zip(pairs, diags):
        r = dual_residual(fourier_dual(pair.vector), pair.value, p.V, alpha, phase, form=args.form)
        residuals.append(r)
        lines.append(f"{pair.value.real:.17g},{pair.value.imag:.17g},{d.spectral_class.tag.value},{r:.17g}")
    emit_table("\n".join(lines) + "\n", out)
    print(f"mean_residual={np.mean(residuals):.6g} max_residual={np.max(residuals):.6g}")
    return EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "ipr": cmd_ipr,
    "le": cmd_le,
    "sweep": cmd_sweep,
    "dual-check": cmd_dual_check,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        # ValueError covers UsageError, GridMismatch and ModelParams validation
        print(f"quasispec {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"quasispec {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
