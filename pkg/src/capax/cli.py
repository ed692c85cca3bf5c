"""Command-line surface: capacity queries, verification suites, and sweeps.

Exit codes: 0 when every requested check passes, 1 when a mathematical check
fails, 2 on invalid invocations. All output is deterministic for fixed flags
and seed: CSV uses '.' decimals, ',' separators, LF endings, and a header;
JSON carries schema_version 1 and an error-estimate field next to every
computed number.
"""

import json
import math
import os
import sys
from dataclasses import dataclass

import click
import numpy as np

from .bounds import (DEFAULT_TOL, check_capacity_volume, monotone_functionals,
                     vanishing_sweep)
from .capacity import (Condenser, Exponent, ball_capacity_with_error,
                       global_capacity)
from .errors import CapaxError
from .frequency import frequency_report
from .geometry import make_profile, profile_from_json
from .quadrature import QuadratureSettings
from .suites import CSV_HEADER, SUITE_NAMES, run_suite

SCHEMA_VERSION = 1


@dataclass
class RunConfig:
    """Validated flag set for one command run."""

    profile: object = None
    n: int = None
    p: object = None
    r: float = None
    R: float = None
    R_max: float = None
    alpha: float = None
    beta: float = None
    fmt: str = "json"
    tol: float = None
    seed: int = 0
    grid: tuple = ()

    def resolved_tol(self):
        if self.tol is not None:
            return self.tol
        env = os.environ.get("CAPAX_TOL")
        return float(env) if env else DEFAULT_TOL


def _load_profile(text):
    if text is None:
        raise click.UsageError("missing --profile")
    if os.path.exists(text):
        with open(text, "r", encoding="utf-8") as handle:
            return profile_from_json(handle.read())
    if text.strip().startswith("{"):
        return profile_from_json(text)
    return make_profile(text)


def _parse_p(text):
    try:
        return Exponent.of(text)
    except CapaxError as exc:
        raise click.UsageError(str(exc))


def _parse_grid(text, name):
    if not text:
        return ()
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise click.UsageError(f"{name} must be a comma-separated list of numbers")


def _emit_json(payload):
    click.echo(json.dumps(payload))


def _fail(exc):
    click.echo(f"error: {exc}", err=True)
    sys.exit(2)


@click.group()
def main():
    """Capacity-volume analysis on rotationally symmetric manifolds."""


@main.command("capacity")
@click.option("--profile", "profile_text", required=True,
              help="euclidean | hyperbolic | inline JSON | path to a JSON spec")
@click.option("--n", "n", type=int, required=True)
@click.option("--p", "p_text", required=True)
@click.option("--r", type=float, default=None)
@click.option("--R", "R", type=float, default=None)
@click.option("--global", "global_", is_flag=True,
              help="minimize over outer domains instead of fixing R")
@click.option("--R-max", "R_max", type=float, default=None)
@click.option("--rel-tol", type=float, default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
def cmd_capacity(profile_text, n, p_text, r, R, global_, R_max, rel_tol, fmt):
    """Relative or global p-capacity of a ball condenser."""
    try:
        profile = _load_profile(profile_text)
        p = _parse_p(p_text)
        settings = QuadratureSettings(rel_tol=rel_tol) if rel_tol else None
        if global_:
            if R is not None:
                raise click.UsageError("conflicting flags: --R with --global "
                                       "(use --R-max)")
            if R_max is None or r is None:
                raise click.UsageError("--global needs --r and --R-max")
            result = global_capacity(profile, n, p, r, R_max, settings)
            err = (settings.rel_tol if settings else 1e-10) * abs(result.value)
            payload = {"schema_version": SCHEMA_VERSION, "capacity": result.value,
                       "regime": p.regime, "argmin_radius": result.argmin_radius,
                       "attained": result.attained, "quadrature_error": err}
        else:
            if R_max is not None:
                raise click.UsageError("conflicting flags: --R-max without --global")
            if r is None or R is None:
                raise click.UsageError("need --r and --R (or --global with --R-max)")
            value, err = ball_capacity_with_error(profile, n, p, Condenser(r, R),
                                                  settings)
            payload = {"schema_version": SCHEMA_VERSION, "capacity": value,
                       "regime": p.regime, "quadrature_error": err}
    except CapaxError as exc:
        _fail(exc)
    if fmt == "json":
        _emit_json(payload)
    else:
        keys = [k for k in payload if k != "schema_version"]
        click.echo(",".join(keys))
        click.echo(",".join(format(payload[k], ".12g")
                            if isinstance(payload[k], float) else str(payload[k])
                            for k in keys))


@main.command("verify")
@click.option("--suite", type=click.Choice(SUITE_NAMES + ("all",)), default="all")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tol", type=float, default=None,
              help="inequality tolerance override (also via CAPAX_TOL)")
def cmd_verify(suite, seed, tol):
    """Run a verification suite; CSV rows plus a summary per suite."""
    resolved = tol
    if resolved is None and os.environ.get("CAPAX_TOL"):
        resolved = float(os.environ["CAPAX_TOL"])
    try:
        rows = run_suite(suite, seed=seed, tol=resolved)
    except CapaxError as exc:
        _fail(exc)
    click.echo(CSV_HEADER)
    for row in rows:
        click.echo(row.csv())
    suites = []
    for row in rows:
        if row.suite not in suites:
            suites.append(row.suite)
    total = passed = 0
    for name in suites:
        sub = [r for r in rows if r.suite == name]
        ok = sum(1 for r in sub if r.passed)
        click.echo(f"# suite {name}: {ok}/{len(sub)} passed")
        total += len(sub)
        passed += ok
    click.echo(f"# total: {passed}/{total} passed")
    sys.exit(0 if passed == total else 1)


_SWEEP_KINDS = ("vanishing", "sharpness-subcritical", "sharpness-critical",
                "sharpness-supercritical", "sharpness-lipschitz",
                "functional-core", "functional-critical-core",
                "functional-outer-core", "limit-pinfty")


@main.command("sweep")
@click.option("--kind", type=click.Choice(_SWEEP_KINDS), required=True)
@click.option("--profile", "profile_text", default="euclidean", show_default=True)
@click.option("--n", "n", type=int, default=3, show_default=True)
@click.option("--p", "p_text", default=None)
@click.option("--r", type=float, default=None)
@click.option("--R", "R", type=float, default=None)
@click.option("--alpha", type=float, default=None)
@click.option("--beta", type=float, default=None)
@click.option("--r-grid", "r_grid_text", default=None)
@click.option("--R-grid", "R_grid_text", default=None)
@click.option("--p-grid", "p_grid_text", default=None)
def cmd_sweep(kind, profile_text, n, p_text, r, R, alpha, beta, r_grid_text,
              R_grid_text, p_grid_text):
    """Stream one sweep as CSV (12 significant digits)."""
    try:
        profile = _load_profile(profile_text)
        r_grid = _parse_grid(r_grid_text, "--r-grid")
        R_grid = _parse_grid(R_grid_text, "--R-grid")
        p_grid = _parse_grid(p_grid_text, "--p-grid")

        def num(x):
            return format(x, ".12g")

        if kind == "vanishing":
            if not r_grid or R is None or p_text is None:
                raise click.UsageError("vanishing needs --p, --R, and --r-grid")
            rows = vanishing_sweep(profile, n, _parse_p(p_text), R, r_grid,
                                   alpha=alpha, beta=beta)
            click.echo("r,ratio")
            for rv, ratio in rows:
                click.echo(f"{num(rv)},{num(ratio)}")
        elif kind.startswith("sharpness"):
            if kind == "sharpness-subcritical":
                if not r_grid or R is None or p_text is None:
                    raise click.UsageError(f"{kind} needs --p, --R, and --r-grid")
                cases = [(rv, Condenser(rv, R)) for rv in r_grid]
                p = _parse_p(p_text)
            elif kind == "sharpness-critical":
                if not r_grid or R is None:
                    raise click.UsageError(f"{kind} needs --R and --r-grid")
                cases = [(rv, Condenser(rv, R)) for rv in r_grid]
                p = Exponent.of(n)
            elif kind == "sharpness-supercritical":
                if not R_grid or p_text is None:
                    raise click.UsageError(f"{kind} needs --p and --R-grid")
                cases = [(Rv, Condenser(0.0, Rv)) for Rv in R_grid]
                p = _parse_p(p_text)
            else:
                if not R_grid:
                    raise click.UsageError(f"{kind} needs --R-grid")
                cases = [(Rv, Condenser(1e-8 * Rv, Rv)) for Rv in R_grid]
                p = Exponent.of(math.inf)
            click.echo("radius,lhs,rhs,ratio")
            for radius, cond in cases:
                rep = check_capacity_volume(profile, n, p, cond, beta=beta)
                click.echo(f"{num(radius)},{num(rep.lhs)},{num(rep.rhs)},"
                           f"{num(rep.lhs / rep.rhs)}")
        elif kind == "functional-core":
            if not r_grid or R is None or p_text is None:
                raise click.UsageError(f"{kind} needs --p, --R, and --r-grid")
            samples = monotone_functionals(profile, n, _parse_p(p_text), alpha,
                                           R, r_grid,
                                           which=("cap_core", "cap_core_slope"))
            click.echo("r,core,core_slope")
            for smp in samples:
                click.echo(f"{num(smp.r)},{num(smp.cap_core)},"
                           f"{num(smp.cap_core_slope)}")
        elif kind == "functional-critical-core":
            if not r_grid or R is None:
                raise click.UsageError(f"{kind} needs --R and --r-grid")
            samples = monotone_functionals(profile, n, None, None, R, r_grid,
                                           which=("critical_core",))
            click.echo("r,critical_core")
            for smp in samples:
                click.echo(f"{num(smp.r)},{num(smp.critical_core)}")
        elif kind == "functional-outer-core":
            if not r_grid or p_text is None:
                raise click.UsageError(f"{kind} needs --p and --r-grid")
            top = max(r_grid) * 2.0
            samples = monotone_functionals(profile, n, _parse_p(p_text), None,
                                           top, r_grid, which=("outer_core",))
            click.echo("R,outer_core")
            for smp in samples:
                click.echo(f"{num(smp.r)},{num(smp.outer_core)}")
        else:  # limit-pinfty
            if not p_grid or r is None or R is None:
                raise click.UsageError("limit-pinfty needs --r, --R, and --p-grid")
            target = 1.0 / (R - r)
            click.echo("p,capacity,capacity_root,target")
            for pv in p_grid:
                cap, _ = ball_capacity_with_error(profile, n, pv, Condenser(r, R))
                click.echo(f"{num(pv)},{num(cap)},{num(cap ** (1.0 / pv))},"
                           f"{num(target)}")
    except CapaxError as exc:
        _fail(exc)


@main.command("frequency")
@click.option("--profile", "profile_text", required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--p", "p_text", required=True)
@click.option("--R", "R", type=float, required=True)
@click.option("--grid", type=int, default=512, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def cmd_frequency(profile_text, n, p_text, R, grid, seed):
    """Frequency report for one geodesic ball (JSON)."""
    try:
        p = _parse_p(p_text)
        if not p.is_infinite and p.p < 1.0:
            raise click.UsageError("frequency requires p >= 1")
        profile = _load_profile(profile_text)
        report = frequency_report(profile, n, p, R, grid_size=grid, seed=seed)
    except CapaxError as exc:
        _fail(exc)
    payload = {"schema_version": SCHEMA_VERSION}
    payload.update(report.as_dict())
    payload["quadrature_error"] = 1e-10 * abs(report.gamma)
    _emit_json(payload)
    sys.exit(0 if (report.sandwich_ok and report.bound_ok) else 1)


if __name__ == "__main__":
    main()
