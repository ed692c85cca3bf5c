"""Seeded verification suites behind the command-line `verify` command.

Every suite returns deterministic rows: the case order is fixed, randomness
comes only from the explicit seed through the package PRNG, and all numbers
derive from the same quadrature settings. Rows render to CSV with 12
significant digits.
"""

import math
from dataclasses import dataclass

import numpy as np

from .bounds import (DEFAULT_TOL, check_capacity_volume,
                     global_isocapacitary_check)
from .capacity import Condenser, ball_capacity, beta_critical, \
    exp_capacity_functional
from .errors import CapaxError
from .frequency import frequency_lower_bound, frequency_report, \
    mazya_constant, rayleigh_oracle
from .geometry import ball_volume, make_profile, sphere_area, unit_ball_volume
from .imbedding import (SampledFunction, gradient_pnorm, imbedding_report,
                        make_extremal)
from .oracle import discrete_condenser_energy
from .prng import SplitMix64

SUITE_NAMES = ("capacity-oracle", "capacity-volume", "sharpness", "imbedding",
               "frequency")

_PROFILES = {
    "euclidean": make_profile("euclidean"),
    "hyperbolic": make_profile("hyperbolic"),
}


@dataclass(frozen=True)
class CheckRow:
    """One verification check formatted for the CSV stream."""

    suite: str
    check: str
    case: str
    lhs: float
    rhs: float
    margin: float
    relative_margin: float
    passed: bool

    def csv(self):
        def num(x):
            return format(x, ".12g")
        return ",".join([self.suite, self.check, self.case, num(self.lhs),
                         num(self.rhs), num(self.margin),
                         num(self.relative_margin),
                         "true" if self.passed else "false"])


CSV_HEADER = "suite,check,case,lhs,rhs,margin,relative_margin,pass"


def _row(suite, check, case, lhs, rhs, slack, tol):
    scale = max(abs(lhs), abs(rhs), 1e-300)
    return CheckRow(suite=suite, check=check, case=case, lhs=lhs, rhs=rhs,
                    margin=slack, relative_margin=slack / scale,
                    passed=bool(slack >= -tol * scale))


def _ratio_row(suite, check, case, ratio, deviation_tol, lower=None):
    """Row asserting |ratio - 1| <= deviation_tol (optionally ratio >= lower)."""
    dev = abs(ratio - 1.0)
    ok = dev <= deviation_tol and (lower is None or ratio >= lower)
    return CheckRow(suite=suite, check=check, case=case, lhs=ratio, rhs=1.0,
                    margin=ratio - 1.0, relative_margin=dev, passed=ok)


ORACLE_MATRIX = tuple(
    (kind, n, p, r, R)
    for kind in ("euclidean", "hyperbolic")
    for n in (2, 3, 4)
    for p in (1.5, 2.0, 3.0, 7.0)
    for (r, R) in ((0.25, 1.0), (0.5, 2.0)))


def run_capacity_oracle(seed=0, tol=1e-3, grid=4096):
    """Quadrature capacities against the discrete minimization, full matrix."""
    rows = []
    for kind, n, p, r, R in ORACLE_MATRIX:
        profile = _PROFILES[kind]
        cap = ball_capacity(profile, n, p, Condenser(r, R))
        energy = discrete_condenser_energy(profile, n, p, r, R, grid)
        case = f"{kind}-n{n}-p{p:g}-r{r:g}-R{R:g}"
        gap = abs(energy - cap) / cap
        rows.append(CheckRow(suite="capacity-oracle", check="oracle-agreement",
                             case=case, lhs=energy, rhs=cap,
                             margin=energy - cap, relative_margin=gap,
                             passed=bool(gap <= tol)))
    return rows


def _random_config(rng):
    kind = rng.choice(("euclidean", "hyperbolic", "odd-series"))
    if kind == "odd-series":
        profile = make_profile({"kind": kind, "coefficients": [rng.uniform(0.0, 1.0)]})
    else:
        profile = _PROFILES[kind]
    n = rng.choice((2, 3, 4, 5))
    R = 0.3 + 4.7 * rng.uniform()
    r = R * rng.uniform(0.02, 0.98)
    case = rng.choice(("subcritical", "critical", "supercritical", "lipschitz"))
    alpha = beta = None
    if case == "subcritical":
        # stay clear of the p -> 1 quadrature window and of p = n
        p = 1.0 if rng.uniform() < 0.1 else 1.01 + rng.uniform() * (n - 1.03)
        alpha_min = 1.0 - p / n
        alpha = alpha_min + rng.uniform() * (2.0 - alpha_min)
    elif case == "critical":
        p = float(n)
        beta = beta_critical(n) * rng.uniform(0.05, 1.0)
    elif case == "supercritical":
        p = n + 0.1 + 8.0 * rng.uniform()
    else:
        p = math.inf
    return profile, n, p, r, R, alpha, beta, case


def run_capacity_volume(seed=0, tol=DEFAULT_TOL, count=500):
    """Randomized regime-valid capacity-volume checks (seeded)."""
    rng = SplitMix64(seed)
    rows = []
    for k in range(count):
        profile, n, p, r, R, alpha, beta, case = _random_config(rng)
        report = check_capacity_volume(profile, n, p, Condenser(r, R),
                                       alpha=alpha, beta=beta, tol=tol)
        rows.append(CheckRow(
            suite="capacity-volume", check=report.check,
            case=f"{k:03d}-{profile.kind}-n{n}-{case}",
            lhs=report.lhs, rhs=report.rhs, margin=report.margin,
            relative_margin=report.relative_margin, passed=report.passed))
    return rows


def _sharpness_ratio(profile, n, p, cond, alpha=None, beta=None):
    report = check_capacity_volume(profile, n, p, cond, alpha=alpha, beta=beta)
    return report.lhs / report.rhs


def run_sharpness(seed=0, tol=DEFAULT_TOL):
    """Equality-approach demonstrations for the capacity-volume bounds.

    Subcritical: inner radius to zero. Critical: flat case is an identity,
    curved case approaches equality as the condenser gap closes.
    Supercritical and Lipschitz: the infimal (point) inner set with the
    outer radius shrinking. Each row checks the ratio against its limit.
    """
    rows = []
    for kind in ("euclidean", "hyperbolic"):
        profile = _PROFILES[kind]
        for p in (1.5, 2.0):
            ratio = _sharpness_ratio(profile, 3, p, Condenser(1e-3, 1.0))
            rows.append(_ratio_row("sharpness", "subcritical-smallball",
                                   f"{kind}-n3-p{p:g}", ratio, 1e-2, lower=1.0 - 1e-9))
    for r in (0.1, 0.35, 0.6, 0.85):
        ratio = _sharpness_ratio(_PROFILES["euclidean"], 3, 3, Condenser(r, 1.0))
        rows.append(_ratio_row("sharpness", "critical-flat-identity",
                               f"euclidean-n3-r{r:g}", ratio, 1e-8))
    ratio = _sharpness_ratio(_PROFILES["hyperbolic"], 2, 2, Condenser(0.999, 1.0))
    rows.append(_ratio_row("sharpness", "critical-closing-gap",
                           "hyperbolic-n2-r0.999", ratio, 1e-2))
    for kind in ("euclidean", "hyperbolic"):
        profile = _PROFILES[kind]
        for n, p in ((3, 5.0), (2, 3.0)):
            ratio = _sharpness_ratio(profile, n, p, Condenser(0.0, 1e-2))
            rows.append(_ratio_row("sharpness", "supercritical-pointlimit",
                                   f"{kind}-n{n}-p{p:g}", ratio, 1e-2,
                                   lower=1.0 - 1e-9))
        ratio = _sharpness_ratio(profile, 3, math.inf, Condenser(1e-8, 1e-2))
        rows.append(_ratio_row("sharpness", "lipschitz-pointlimit",
                               f"{kind}-n3", ratio, 1e-2, lower=1.0 - 1e-9))
    # global bounds: flat equalities and curved strict margins
    euc = _PROFILES["euclidean"]
    hyp = _PROFILES["hyperbolic"]
    g = global_isocapacitary_check(euc, 3, 1, 0.5, 10.0)
    rows.append(_ratio_row("sharpness", "isoperimetric-flat", "euclidean-n3-p1",
                           g.lhs / g.rhs, 1e-9))
    g = global_isocapacitary_check(euc, 3, 3, 0.5, 10.0)
    rows.append(_ratio_row("sharpness", "global-critical-flat", "euclidean-n3-p3",
                           g.lhs / g.rhs, 1e-9))
    for check_case, report in (
            ("hyperbolic-n2-p1", global_isocapacitary_check(hyp, 2, 1, 1.0, 10.0)),
            ("hyperbolic-n2-p3", global_isocapacitary_check(hyp, 2, 3, 0.7, 50.0)),
            ("hyperbolic-n3-p2", global_isocapacitary_check(hyp, 3, 2, 1.0, 50.0)),
            ("hyperbolic-n3-pinf", global_isocapacitary_check(hyp, 3, math.inf, 0.5, 50.0))):
        rows.append(CheckRow(suite="sharpness", check="global-strict-margin",
                             case=check_case, lhs=report.lhs, rhs=report.rhs,
                             margin=report.margin,
                             relative_margin=report.relative_margin,
                             passed=bool(report.margin > 0.0)))
    return rows


def _random_radial(rng, bounded):
    knots = sorted(rng.uniform(0.05, 2.5) for _ in range(rng.next_u64() % 9 + 3))
    values = sorted((rng.uniform() for _ in range(len(knots) - 1)), reverse=True)
    if rng.uniform() < 0.4:
        values[0] = 1.0
    samples = list(zip(knots, values + [0.0]))
    u = SampledFunction(samples)
    radius = u.support_radius * (1.0 + rng.uniform(0.05, 1.0)) if bounded else None
    return u, radius


def run_imbedding(seed=0, tol=1e-6, random_cases=200):
    """Sharp imbedding equalities plus randomized inequality checks."""
    rows = []
    euc = _PROFILES["euclidean"]

    for n, p in ((3, 2.0), (4, 2.0), (5, 3.0)):
        u = make_extremal("euclidean_power", {"p": p, "r": 1.0}, n=n)
        rep = imbedding_report(u, euc, n, p)
        rows.append(_ratio_row("imbedding", "equality-subcritical",
                               f"euclidean-n{n}-p{p:g}", rep.lhs / rep.rhs, 1e-6))
    u = make_extremal("euclidean_log", {"r": 0.5, "R": 1.0})
    rep = imbedding_report(u, euc, 2, 2, domain_radius=1.0)
    rows.append(_ratio_row("imbedding", "equality-critical", "euclidean-n2",
                           rep.lhs / rep.rhs, 1e-4))
    for n, p in ((3, 5.0), (2, 3.0)):
        u = make_extremal("euclidean_outer_power", {"p": p, "R": 1.0}, n=n)
        rep = imbedding_report(u, euc, n, p, domain_radius=1.0)
        rows.append(_ratio_row("imbedding", "equality-supercritical",
                               f"euclidean-n{n}-p{p:g}", rep.lhs / rep.rhs, 1e-8))
    for n in (2, 3):
        u = make_extremal("linear_tent", {"R": 1.0})
        rep = imbedding_report(u, euc, n, math.inf, domain_radius=1.0)
        rows.append(_ratio_row("imbedding", "equality-lipschitz",
                               f"euclidean-n{n}", rep.lhs / rep.rhs, 1e-8))
    u = make_extremal("ramp", {"r": 1e-3})
    from .bounds import ConstantKind, sharp_constant
    lhs = imbedding_report(u, euc, 3, 1).lhs
    ratio = lhs / gradient_pnorm(u, euc, 3, 1) / \
        sharp_constant(3, 1, ConstantKind.IMBEDDING_NORM)
    rows.append(_ratio_row("imbedding", "ramp-sharpness", "euclidean-n3-p1",
                           ratio, 1e-2))

    rng = SplitMix64(seed)
    cases = (("subcritical", False), ("critical", True),
             ("supercritical", True), ("lipschitz", True))
    for case_name, bounded in cases:
        for k in range(random_cases):
            kind = rng.choice(("euclidean", "hyperbolic"))
            n = rng.choice((2, 3, 4))
            if case_name == "subcritical":
                p = 1.0 if rng.uniform() < 0.15 else 1.05 + rng.uniform() * (n - 1.1)
            elif case_name == "critical":
                p = float(n)
            elif case_name == "supercritical":
                p = n + 0.5 + 6.0 * rng.uniform()
            else:
                p = math.inf
            u, radius = _random_radial(rng, bounded)
            rep = imbedding_report(u, _PROFILES[kind], n, p,
                                   domain_radius=radius, tol=tol)
            rows.append(CheckRow(
                suite="imbedding", check=rep.check,
                case=f"{case_name}-{k:03d}-{kind}-n{n}",
                lhs=rep.lhs, rhs=rep.rhs, margin=rep.margin,
                relative_margin=rep.relative_margin, passed=rep.passed))
    return rows


FREQUENCY_GRID = tuple((kind, n, p)
                       for p in (1.5, 2.0, 4.0, 8.0)
                       for kind in ("euclidean", "hyperbolic")
                       for n in (2, 3))


def run_frequency(seed=0, tol=DEFAULT_TOL, grid=128):
    """Capacity-volume infima, volumetric bounds, and Rayleigh sandwiches."""
    rows = []
    euc = _PROFILES["euclidean"]

    gamma, argmin = mazya_constant(euc, 3, 2, 1.0)
    rows.append(_ratio_row("frequency", "gamma-flat-n3-p2", "value",
                           gamma / 20.25, 1e-6))
    rows.append(_ratio_row("frequency", "gamma-flat-n3-p2", "argmin",
                           argmin / (2.0 / 3.0), 1e-4))
    for n, R in ((2, 1.0), (3, 1.0), (3, 2.0)):
        g1, _ = mazya_constant(euc, n, 1, R)
        rows.append(_ratio_row("frequency", "gamma-first-exponent",
                               f"euclidean-n{n}-R{R:g}", g1 / (n / R), 1e-9))
    for kind, n, p in FREQUENCY_GRID:
        rep = frequency_report(_PROFILES[kind], n, p, 1.0, grid_size=grid,
                               seed=seed)
        rows.append(CheckRow(
            suite="frequency", check="sandwich",
            case=f"{kind}-n{n}-p{p:g}", lhs=rep.lambda_oracle, rhs=rep.gamma,
            margin=rep.gamma - rep.lambda_oracle,
            relative_margin=(rep.gamma - rep.lambda_oracle) / rep.gamma,
            passed=bool(rep.sandwich_ok)))
        rows.append(CheckRow(
            suite="frequency", check="volumetric-bound",
            case=f"{kind}-n{n}-p{p:g}", lhs=rep.lambda_lower_bound,
            rhs=rep.lambda_oracle,
            margin=rep.lambda_oracle - rep.lambda_lower_bound,
            relative_margin=(rep.lambda_oracle - rep.lambda_lower_bound)
            / max(rep.lambda_oracle, 1e-300),
            passed=bool(rep.bound_ok)))
    chain = []
    for p in (1.5, 2.0, 3.0, 4.0, 6.0, 8.0):
        lam = rayleigh_oracle(euc, 3, p, 1.0, grid_size=grid, seed=seed,
                              restarts=1)
        chain.append(p * lam ** (1.0 / p))
    monotone = all(b >= a * (1.0 - 2e-2) for a, b in zip(chain, chain[1:]))
    rows.append(CheckRow(suite="frequency", check="scaled-root-monotone",
                         case="euclidean-n3", lhs=chain[0], rhs=chain[-1],
                         margin=chain[-1] - chain[0],
                         relative_margin=(chain[-1] - chain[0]) / chain[-1],
                         passed=bool(monotone)))
    for kind in ("euclidean", "hyperbolic"):
        rep = frequency_report(_PROFILES[kind], 3, math.inf, 1.0)
        rows.append(CheckRow(
            suite="frequency", check="limit-proxy-onesided",
            case=f"{kind}-n3", lhs=rep.gamma, rhs=rep.lambda_lower_bound,
            margin=rep.gamma - rep.lambda_lower_bound,
            relative_margin=(rep.gamma - rep.lambda_lower_bound)
            / max(rep.gamma, 1e-300),
            passed=bool(rep.sandwich_ok and rep.bound_ok)))
    return rows


_RUNNERS = {
    "capacity-oracle": run_capacity_oracle,
    "capacity-volume": run_capacity_volume,
    "sharpness": run_sharpness,
    "imbedding": run_imbedding,
    "frequency": run_frequency,
}


def run_suite(name, seed=0, tol=None):
    """Run one named suite (or 'all'); returns the ordered row list."""
    if name == "all":
        rows = []
        for suite in SUITE_NAMES:
            rows.extend(run_suite(suite, seed=seed, tol=tol))
        return rows
    if name not in _RUNNERS:
        raise CapaxError(f"unknown suite {name!r}; expected one of "
                         f"{SUITE_NAMES + ('all',)}")
    kwargs = {"seed": seed}
    if tol is not None:
        kwargs["tol"] = tol
    return _RUNNERS[name](**kwargs)
