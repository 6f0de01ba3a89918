"""Command-line driver emitting machine-readable experiment tables.

Every subcommand runs one operation and writes a single CSV or JSON
artifact with a provenance header (version, seed, tolerances).  CSV
columns are frozen per command; new columns may only be appended.  All
stochastic searches are fully determined by --seed.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from dataclasses import dataclass
from typing import Any

import numpy as np

from . import __version__
from .errors import (
    DegenerateNodes,
    Divergence,
    MixedMultiplicity,
    NotHilbert,
    PoleOnDomain,
    TruncationError,
    UnsupportedSpace,
)
from .series import CoeffSeries, SigmaSet
from .spaces import SpaceSpec, bergman_radial, hardy, seq_weighted
from .modelspace import bernstein_ratio, malmquist_basis
from .extremal import PickProblem, carleson_constant, cs_min_norm, pick_min_norm, quotient_norm
from .bounds import bound_sweep, interp_constant, theorem_bounds

COLUMNS = {
    "basis": ("k", "j", "re", "im"),
    "bernstein": ("idx", "n", "r", "order", "ratio", "bound", "ratio_over_bound"),
    "pick": ("value", "certificate", "mode"),
    "cs": ("value", "certificate", "mode"),
    "quotient": ("value", "certificate", "mode"),
    "carleson": ("value", "n", "budget"),
    "constant": ("value", "n", "r", "budget"),
    "bounds": (
        "family", "p", "alpha", "beta", "n", "r", "x",
        "lower", "upper", "phi_scale", "lower_tag", "upper_tag",
    ),
    "sweep": (
        "family", "p", "alpha", "beta", "n", "r", "x", "witness", "estimate",
        "lower", "upper", "phi_scale", "lower_tag", "upper_tag",
    ),
}


class CliError(ValueError):
    """Invalid run configuration (exit status 1)."""


@dataclass
class RunConfig:
    command: str
    space: str = "hardy"
    p: float = 2.0
    alpha: float | None = None
    beta: float | None = None
    sigma: str | None = None
    sigma_file: str | None = None
    nodes: str | None = None
    values: str | None = None
    coeffs: str | None = None
    n: int | None = None
    r: float | None = None
    n_grid: str | None = None
    r_grid: str | None = None
    samples: int = 0
    max_n: int = 6
    max_r: float = 0.8
    order: int = 1
    trunc: int | None = None
    seed: int = 0
    tol: float = 1e-8
    budget: int = 32
    estimate_cap: int = 0
    fmt: str = "csv"
    output: str = "-"
    reproducible: bool = False


class _Parser(argparse.ArgumentParser):
    # validation problems exit 1 with a one-line diagnostic
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_complex_list(text: str, what: str) -> tuple[complex, ...]:
    try:
        return tuple(complex(tok.strip().replace("i", "j")) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise CliError(f"cannot parse {what} {text!r}: {exc}") from exc


def _parse_float_list(text: str, what: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise CliError(f"cannot parse {what} {text!r}: {exc}") from exc


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise CliError(f"cannot parse {what} {text!r}: {exc}") from exc


def read_sigma_file(path: str) -> tuple[complex, ...]:
    """One point per line: `re im [multiplicity]`, `#` starts a comment."""
    points: list[complex] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise CliError(f"{path}:{lineno}: expected `re im [multiplicity]`")
            try:
                re_part, im_part = float(parts[0]), float(parts[1])
                mult = int(parts[2]) if len(parts) == 3 else 1
            except ValueError as exc:
                raise CliError(f"{path}:{lineno}: {exc}") from exc
            if mult < 1:
                raise CliError(f"{path}:{lineno}: multiplicity must be >= 1")
            points.extend([complex(re_part, im_part)] * mult)
    if not points:
        raise CliError(f"{path}: no points found")
    return tuple(points)


def _resolve_sigma(config: RunConfig) -> SigmaSet:
    if config.sigma and config.sigma_file:
        raise CliError("give either --sigma or --sigma-file, not both")
    if config.sigma:
        return SigmaSet(_parse_complex_list(config.sigma, "--sigma"))
    if config.sigma_file:
        return SigmaSet(read_sigma_file(config.sigma_file))
    raise CliError("a node set is required (--sigma or --sigma-file)")


def _resolve_space(config: RunConfig) -> SpaceSpec:
    p = np.inf if config.p in ("inf", np.inf) else float(config.p)
    if config.space == "hardy":
        return hardy(p)
    if config.space == "seq":
        if config.alpha is None:
            raise CliError("--alpha is required for --space seq")
        return seq_weighted(p, config.alpha)
    if config.space == "bergman":
        if config.beta is None:
            raise CliError("--beta is required for --space bergman")
        return bergman_radial(p, config.beta)
    raise CliError(f"unknown space family {config.space!r}")


def _fmt_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        if value != value:  # nan
            return ""
        if value in (np.inf, -np.inf):
            return "inf" if value > 0 else "-inf"
        return format(float(value), ".12g")
    return str(value)


def _emit(config: RunConfig, columns, records: list[dict], meta: dict) -> None:
    full_meta = {
        "version": __version__,
        "command": config.command,
        "seed": config.seed,
        "tol": config.tol,
    }
    full_meta.update(meta)
    if not config.reproducible:
        full_meta["generated"] = datetime.datetime.now(datetime.timezone.utc).isoformat()

    if config.fmt == "json":
        payload = {
            "meta": {k: _json_safe(v) for k, v in full_meta.items()},
            "columns": list(columns),
            "records": [
                {c: _json_safe(rec.get(c)) for c in columns} for rec in records
            ],
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"# discinterp {__version__}"]
        for key, val in full_meta.items():
            if key == "version":
                continue
            lines.append(f"# {key}={_fmt_cell(val)}")
        lines.append(",".join(columns))
        for rec in records:
            lines.append(",".join(_fmt_cell(rec.get(c)) for c in columns))
        text = "\n".join(lines) + "\n"

    if config.output in ("-", ""):
        sys.stdout.write(text)
    else:
        with open(config.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _json_safe(value: Any) -> Any:
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, float) and value in (np.inf, -np.inf):
        return "inf" if value > 0 else "-inf"
    return value


# ---------------------------------------------------------------------------
# subcommand bodies
# ---------------------------------------------------------------------------


def _run_basis(config: RunConfig) -> tuple[list[dict], dict]:
    sigma = _resolve_sigma(config)
    basis = malmquist_basis(sigma, n_trunc=config.trunc)
    records = []
    for k, e in enumerate(basis.series, start=1):
        trimmed = e.trimmed(tol=1e-15)
        for j, c in enumerate(trimmed.coeffs):
            records.append({"k": k, "j": j, "re": float(c.real), "im": float(c.imag)})
    meta = {"sigma": _sigma_text(sigma), "degree": basis.degree}
    return records, meta


def _sigma_text(sigma: SigmaSet) -> str:
    return ";".join(f"{p.real:.12g}{p.imag:+.12g}j" for p in sigma.points)


def _run_bernstein(config: RunConfig) -> tuple[list[dict], dict]:
    rows = []
    if config.samples > 0:
        rng = np.random.default_rng(config.seed)
        sigmas = []
        for _ in range(config.samples):
            count = int(rng.integers(1, config.max_n + 1))
            radii = config.max_r * np.sqrt(rng.uniform(size=count))
            angles = rng.uniform(0.0, 2.0 * np.pi, size=count)
            sigmas.append(SigmaSet(tuple(radii * np.exp(1j * angles))))
    else:
        sigmas = [_resolve_sigma(config)]
    for idx, sigma in enumerate(sigmas):
        ratio = bernstein_ratio(sigma, order=config.order)
        bound = _iterated_bound(sigma, config.order)
        rows.append(
            {
                "idx": idx,
                "n": sigma.n,
                "r": sigma.r,
                "order": config.order,
                "ratio": ratio,
                "bound": bound,
                "ratio_over_bound": ratio / bound if bound else None,
            }
        )
    return rows, {"samples": len(sigmas), "order": config.order}


def _iterated_bound(sigma: SigmaSet, order: int) -> float:
    import math

    return math.factorial(order) * (2.5 * sigma.n / (1.0 - sigma.r)) ** order


def _run_pick(config: RunConfig) -> tuple[list[dict], dict]:
    if not config.nodes or not config.values:
        raise CliError("pick needs --nodes and --values")
    nodes = _parse_complex_list(config.nodes, "--nodes")
    values = _parse_complex_list(config.values, "--values")
    result = pick_min_norm(PickProblem(nodes, values), tol=config.tol)
    rec = {"value": result.value, "certificate": result.certificate, "mode": result.mode}
    return [rec], {"nodes": config.nodes, "values": config.values}


def _run_cs(config: RunConfig) -> tuple[list[dict], dict]:
    if not config.coeffs:
        raise CliError("cs needs --coeffs")
    coeffs = _parse_complex_list(config.coeffs, "--coeffs")
    result = cs_min_norm(np.array(coeffs))
    rec = {"value": result.value, "certificate": result.certificate, "mode": result.mode}
    return [rec], {"coeffs": config.coeffs}


def _run_quotient(config: RunConfig) -> tuple[list[dict], dict]:
    if not config.coeffs:
        raise CliError("quotient needs --coeffs for the target function")
    sigma = _resolve_sigma(config)
    f = CoeffSeries(np.array(_parse_complex_list(config.coeffs, "--coeffs")))
    result = quotient_norm(f, sigma, tol=config.tol)
    rec = {"value": result.value, "certificate": result.certificate, "mode": result.mode}
    return [rec], {"sigma": _sigma_text(sigma)}


def _run_carleson(config: RunConfig) -> tuple[list[dict], dict]:
    sigma = _resolve_sigma(config)
    value = carleson_constant(sigma, tol=config.tol, budget=config.budget, seed=config.seed)
    rec = {"value": value, "n": sigma.n, "budget": config.budget}
    return [rec], {"sigma": _sigma_text(sigma)}


def _run_constant(config: RunConfig) -> tuple[list[dict], dict]:
    sigma = _resolve_sigma(config)
    space = _resolve_space(config)
    value = interp_constant(
        space, sigma, budget=config.budget, tol=config.tol, seed=config.seed
    )
    rec = {"value": value, "n": sigma.n, "r": sigma.r, "budget": config.budget}
    return [rec], {"sigma": _sigma_text(sigma), "space": space.label()}


def _space_cells(space: SpaceSpec) -> dict:
    return {
        "family": space.family,
        "p": float(space.p),
        "alpha": space.alpha,
        "beta": space.beta,
    }


def _run_bounds(config: RunConfig) -> tuple[list[dict], dict]:
    if config.n is None or config.r is None:
        raise CliError("bounds needs --n and --r")
    space = _resolve_space(config)
    report = theorem_bounds(space, config.n, config.r)
    rec = dict(_space_cells(space))
    rec.update(
        {
            "n": report.n,
            "r": report.r,
            "x": report.n / (1.0 - report.r),
            "lower": report.lower,
            "upper": report.upper,
            "phi_scale": report.phi_scale,
            "lower_tag": report.lower_tag,
            "upper_tag": report.upper_tag,
        }
    )
    return [rec], {"space": space.label()}


def _run_sweep(config: RunConfig) -> tuple[list[dict], dict]:
    if not config.n_grid or not config.r_grid:
        raise CliError("sweep needs --n-grid and --r-grid")
    space = _resolve_space(config)
    n_grid = _parse_int_list(config.n_grid, "--n-grid")
    r_grid = _parse_float_list(config.r_grid, "--r-grid")
    workers = max(1, int(os.environ.get("DISCINTERP_THREADS", "1") or 1))
    result = bound_sweep(
        space,
        n_grid,
        r_grid,
        budget=config.budget,
        estimate_cap=config.estimate_cap,
        seed=config.seed,
        tol=config.tol,
        workers=workers,
    )
    records = []
    cells = _space_cells(space)
    for row in result.rows:
        rec = dict(cells)
        rec.update(
            {
                "n": row.n,
                "r": row.r,
                "x": row.x,
                "witness": row.witness,
                "estimate": row.estimate,
                "lower": row.lower,
                "upper": row.upper,
                "phi_scale": row.phi_scale,
                "lower_tag": row.lower_tag,
                "upper_tag": row.upper_tag,
            }
        )
        records.append(rec)
    meta = {
        "space": space.label(),
        "slope_witness": result.slope_witness,
        "slope_estimate": result.slope_estimate,
        "estimate_cap": config.estimate_cap,
        "budget": config.budget,
    }
    return records, meta


_RUNNERS = {
    "basis": _run_basis,
    "bernstein": _run_bernstein,
    "pick": _run_pick,
    "cs": _run_cs,
    "quotient": _run_quotient,
    "carleson": _run_carleson,
    "constant": _run_constant,
    "bounds": _run_bounds,
    "sweep": _run_sweep,
}


def run(config: RunConfig) -> int:
    try:
        records, meta = _RUNNERS[config.command](config)
    except (CliError, DegenerateNodes, MixedMultiplicity, NotHilbert,
            UnsupportedSpace, PoleOnDomain, ValueError) as exc:
        print(f"discinterp {config.command}: error: {exc}", file=sys.stderr)
        return 1
    except (TruncationError, Divergence, np.linalg.LinAlgError) as exc:
        print(
            f"discinterp {config.command}: numerical failure: {exc} "
            f"(seed={config.seed}, tol={config.tol})",
            file=sys.stderr,
        )
        return 2
    _emit(config, COLUMNS[config.command], records, meta)
    return 0


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def _add_output_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    sub.add_argument("--output", default="-", help="output path, '-' for stdout")
    sub.add_argument("--reproducible", action="store_true",
                     help="suppress the timestamp header line")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--tol", type=float, default=1e-8)


def _add_space_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--space", choices=("hardy", "seq", "bergman"), default="hardy")
    sub.add_argument("--p", type=float, default=2.0)
    sub.add_argument("--alpha", type=float, default=None)
    sub.add_argument("--beta", type=float, default=None)


def _add_sigma_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--sigma", default=None,
                     help="comma-separated complex points, e.g. '0.5,-0.2+0.1j'")
    sub.add_argument("--sigma-file", default=None,
                     help="file with one `re im [multiplicity]` per line")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="discinterp", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("basis", parents=[], help="Malmquist basis coefficients")
    _add_sigma_options(sub)
    sub.add_argument("--trunc", type=int, default=None)
    _add_output_options(sub)

    sub = subs.add_parser("bernstein", help="derivative operator norm on the model space")
    _add_sigma_options(sub)
    sub.add_argument("--order", type=int, default=1)
    sub.add_argument("--samples", type=int, default=0,
                     help="draw this many random node sets instead of --sigma")
    sub.add_argument("--max-n", type=int, default=6)
    sub.add_argument("--max-r", type=float, default=0.8)
    _add_output_options(sub)

    sub = subs.add_parser("pick", help="minimal-norm interpolation at distinct nodes")
    sub.add_argument("--nodes", required=True)
    sub.add_argument("--values", required=True)
    _add_output_options(sub)

    sub = subs.add_parser("cs", help="minimal-norm extension of a Taylor jet at 0")
    sub.add_argument("--coeffs", required=True)
    _add_output_options(sub)

    sub = subs.add_parser("quotient", help="distance-to-ideal norm of a series on sigma")
    sub.add_argument("--coeffs", required=True)
    _add_sigma_options(sub)
    _add_output_options(sub)

    sub = subs.add_parser("carleson", help="worst unit-data interpolation (lower estimate)")
    _add_sigma_options(sub)
    sub.add_argument("--budget", type=int, default=64)
    _add_output_options(sub)

    sub = subs.add_parser("constant", help="interpolation constant estimate")
    _add_sigma_options(sub)
    _add_space_options(sub)
    sub.add_argument("--budget", type=int, default=32)
    _add_output_options(sub)

    sub = subs.add_parser("bounds", help="closed-form bound formulas for one (n, r)")
    _add_space_options(sub)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--r", type=float, required=True)
    _add_output_options(sub)

    sub = subs.add_parser("sweep", help="witness/estimate/bound table over a grid")
    _add_space_options(sub)
    sub.add_argument("--n-grid", required=True)
    sub.add_argument("--r-grid", required=True)
    sub.add_argument("--budget", type=int, default=16)
    sub.add_argument("--estimate-cap", type=int, default=0,
                     help="run the constant estimator for n up to this cap")
    _add_output_options(sub)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {f for f in RunConfig.__dataclass_fields__}
    data = {k: v for k, v in vars(args).items() if k in fields and v is not None}
    for flag in ("fmt", "reproducible"):
        if flag in vars(args):
            data[flag] = vars(args)[flag]
    return RunConfig(**data)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    raise SystemExit(main())
