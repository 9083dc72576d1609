"""Potential-strength sweeps and Lyapunov-exponent maps with CSV / gnuplot output."""

from __future__ import annotations

import io
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable

import numpy as np

from quasispec._version import __version__
from quasispec.eigen import eigenpairs
from quasispec.lyapunov import le_analytic
from quasispec.model import ModelParams, build_hamiltonian
from quasispec.observables import DEFAULT_IM_TOL, DEFAULT_RE_TOL, diagnose_spectrum

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
SPECTRUM_COLUMNS = ("V", "re_E", "im_E", "class", "ipr", "gamma")
LE_MAP_COLUMNS = ("re_E", "im_E", "gamma")


@dataclass(frozen=True)
class EGrid:
    """Rectangular grid over (Re E, Im E), endpoints included."""

    re_min: float
    re_max: float
    re_n: int
    im_min: float
    im_max: float
    im_n: int

    def __post_init__(self):
        bounds = (self.re_min, self.re_max, self.im_min, self.im_max)
        if not all(np.isfinite(b) for b in bounds):
            raise ValueError(f"grid bounds must be finite, got {bounds}")
        if self.re_n < 1 or self.im_n < 1:
            raise ValueError("grid needs at least one point per axis")
        if self.re_max < self.re_min or self.im_max < self.im_min:
            raise ValueError("grid bounds must be ascending")

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return (np.linspace(self.re_min, self.re_max, self.re_n),
                np.linspace(self.im_min, self.im_max, self.im_n))


@dataclass(frozen=True)
class SweepConfig:
    v_grid: tuple[float, ...]
    base: ModelParams = field(default_factory=ModelParams)
    re_tol: float = DEFAULT_RE_TOL
    im_tol: float = DEFAULT_IM_TOL
    jobs: int = 1
    skip_errors: bool = False

    def __post_init__(self):
        v = tuple(float(x) for x in self.v_grid)
        if not v:
            raise ValueError("v_grid must be nonempty")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("v_grid must be strictly ascending")
        object.__setattr__(self, "v_grid", v)


@dataclass(frozen=True)
class SpectrumRecord:
    re_E: float
    im_E: float
    tag: str
    ipr: float
    gamma: float


@dataclass(frozen=True)
class PhaseDiagramRow:
    V: float
    eigenvalues: tuple[SpectrumRecord, ...]


@dataclass(frozen=True)
class SweepResult:
    rows: list[PhaseDiagramRow]
    errors: list[tuple[float, str]]


class SweepError(ArithmeticError):
    def __init__(self, V: float, message: str):
        self.V = V
        super().__init__(f"sweep failed at V={V!r}: {message}")


def v_range(v_from: float, v_to: float, v_step: float) -> tuple[float, ...]:
    """Inclusive arithmetic grid, rounded to 12 decimals to keep 0.1-steps clean."""
    if v_step <= 0:
        raise ValueError(f"v_step must be > 0, got {v_step}")
    if v_to < v_from:
        raise ValueError(f"v_to must be >= v_from, got {v_from}..{v_to}")
    n = int(np.floor((v_to - v_from) / v_step + 1e-9)) + 1
    return tuple(round(v_from + k * v_step, 12) for k in range(n))


def spectrum_row(p: ModelParams, re_tol: float = DEFAULT_RE_TOL, im_tol: float = DEFAULT_IM_TOL) -> PhaseDiagramRow:
    pairs = eigenpairs(build_hamiltonian(p))
    diags = diagnose_spectrum(pairs, p, re_tol, im_tol)
    records = tuple(
        SpectrumRecord(d.value.real, d.value.imag, d.spectral_class.tag.value, d.ipr, d.gamma_analytic)
        for d in diags
    )
    return PhaseDiagramRow(V=p.V, eigenvalues=records)


def _sweep_task(args):
    p, re_tol, im_tol = args
    try:
        return spectrum_row(p, re_tol, im_tol), None
    except (ArithmeticError, ValueError) as exc:
        return None, f"{type(exc).__name__}: {exc}"


def run_sweep(cfg: SweepConfig) -> SweepResult:
    """Spectrum and diagnostics for each V of the grid, in grid order.

    A failure at some V raises (with the V value in the message) unless
    ``cfg.skip_errors`` is set, in which case it is logged and collected.
    """
    tasks = [(cfg.base.with_(V=v), cfg.re_tol, cfg.im_tol) for v in cfg.v_grid]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            outcomes = list(pool.map(_sweep_task, tasks))
    else:
        outcomes = [_sweep_task(t) for t in tasks]

    rows, errors = [], []
    for v, (row, err) in zip(cfg.v_grid, outcomes):
        if err is None:
            rows.append(row)
            continue
        if not cfg.skip_errors:
            raise SweepError(v, err)
        log.warning("skipping V=%r: %s", v, err)
        errors.append((v, err))
    return SweepResult(rows=rows, errors=errors)


def le_map(V: float, grid: EGrid) -> np.ndarray:
    """Analytic Lyapunov exponent on the grid; array shape (re_n, im_n)."""
    re, im = grid.axes()
    out = np.empty((re.size, im.size))
    for i, x in enumerate(re):
        for j, y in enumerate(im):
            out[i, j] = le_analytic(complex(x, y), V)
    return out


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _header_lines(kind: str, params: dict, tool_version: str) -> list[str]:
    lines = [f"# quasispec {kind} schema={SCHEMA_VERSION} version={tool_version}"]
    for key in sorted(params):
        lines.append(f"# {key}={params[key]}")
    return lines


def _params_echo(p: ModelParams, **extra) -> dict:
    echo = {k: (v.value if hasattr(v, "value") else v) for k, v in asdict(p).items()}
    echo.update(extra)
    return {k: (_fmt(v) if isinstance(v, float) else v) for k, v in echo.items()}


def format_spectrum_table(
    rows: Iterable[PhaseDiagramRow],
    base: ModelParams,
    fmt: str = "csv",
    extra: dict | None = None,
    tool_version: str | None = None,
) -> str:
    rows = list(rows)
    if not rows:
        raise ValueError("nothing to write: no rows")
    params = _params_echo(base, **(extra or {}))
    params.pop("V", None)
    params["v_values"] = " ".join(_fmt(r.V) for r in rows)
    buf = io.StringIO()
    for line in _header_lines("spectrum", params, tool_version or __version__):
        buf.write(line + "\n")
    sep = "," if fmt == "csv" else " "
    head = sep.join(SPECTRUM_COLUMNS)
    buf.write(head + "\n" if fmt == "csv" else "# " + head + "\n")
    for row in rows:
        for rec in row.eigenvalues:
            buf.write(sep.join((_fmt(row.V), _fmt(rec.re_E), _fmt(rec.im_E), rec.tag, _fmt(rec.ipr), _fmt(rec.gamma))) + "\n")
    return buf.getvalue()


def format_le_map(V: float, grid: EGrid, gamma: np.ndarray, fmt: str = "csv", tool_version: str | None = None) -> str:
    re, im = grid.axes()
    params = {k: (_fmt(v) if isinstance(v, float) else v) for k, v in asdict(grid).items()}
    params["V"] = _fmt(V)
    buf = io.StringIO()
    for line in _header_lines("le_map", params, tool_version or __version__):
        buf.write(line + "\n")
    sep = "," if fmt == "csv" else " "
    head = sep.join(LE_MAP_COLUMNS)
    buf.write(head + "\n" if fmt == "csv" else "# " + head + "\n")
    for i, x in enumerate(re):
        for j, y in enumerate(im):
            buf.write(sep.join((_fmt(x), _fmt(y), _fmt(gamma[i, j]))) + "\n")
        if fmt == "gnuplot":
            # blank line between scans: gnuplot's grid-data convention for splot/pm3d
            buf.write("\n")
    return buf.getvalue()


def emit_table(text: str, destination: str | os.PathLike) -> None:
    """Write a formatted table; IO errors carry the path."""
    try:
        with open(destination, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write table to {os.fspath(destination)!r}: {exc.strerror}") from exc
