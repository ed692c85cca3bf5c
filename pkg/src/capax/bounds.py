"""Sharp capacity-volume constants, inequality checks, and their proof objects.

Each check compares a normalized capacity ratio against its sharp constant
and reports both sides, the signed slack, and a pass flag. The monotone
functionals are the one-dimensional quantities whose signs drive the proofs:
a nonincreasing core whose limit at the pole gives the subcritical constant,
an exponential core for the critical exponent, an outer-radius core for the
supercritical range, and the convexity excess that controls all of them.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .capacity import (FINITE, INFINITY, ONE, Condenser, Exponent,
                       ball_capacity, beta_critical, exp_capacity_functional,
                       global_capacity)
from .errors import DomainError, HypothesisError, RegimeError
from .geometry import (ball_volume, check_dimension, phi_power_integral,
                       sphere_area, unit_ball_volume)
from .quadrature import DEFAULT_SETTINGS

DEFAULT_TOL = 1e-8

# check identifiers carried by BoundReport
CAPVOL_SUBCRITICAL = "capacity-volume/subcritical"
CAPVOL_CRITICAL = "capacity-volume/critical"
CAPVOL_SUPERCRITICAL = "capacity-volume/supercritical"
CAPVOL_LIPSCHITZ = "capacity-volume/lipschitz"
GLOBAL_SUBCRITICAL = "global-capacity/subcritical"
GLOBAL_CRITICAL = "global-capacity/critical"
GLOBAL_SUPERCRITICAL = "global-capacity/supercritical"
GLOBAL_LIPSCHITZ = "global-capacity/lipschitz"
ISOPERIMETRIC = "global-capacity/isoperimetric"
VANISHING_POWER = "vanishing/power"
VANISHING_CRITICAL = "vanishing/critical"


class ConstantKind(Enum):
    """Closed-form constants exposed by sharp_constant."""

    CAP_SUBCRITICAL = "cap-subcritical"        # capacity-volume bound, 1 <= p < n
    CAP_SUPERCRITICAL = "cap-supercritical"    # capacity-volume bound, n < p < inf
    CAP_LIPSCHITZ = "cap-lipschitz"            # capacity-volume bound, p = inf
    EXP_RATE = "exp-rate"                      # sharp exponential rate at p = n
    IMBEDDING_NORM = "imbedding-norm"          # weak-imbedding constant, p in [1, inf]
    FREQUENCY_COEFF = "frequency-coeff"        # frequency lower-bound coefficient


@dataclass(frozen=True)
class BoundReport:
    """One inequality check: compared sides, slack, and pass/fail.

    margin is the signed slack of the inequality (nonnegative when it holds):
    lhs - rhs for lower-bound checks, rhs - lhs for the imbedding direction.
    """

    check: str
    inputs: dict
    lhs: float
    rhs: float
    margin: float
    relative_margin: float
    passed: bool
    tolerance: float
    extras: dict = field(default_factory=dict)

    def as_dict(self):
        out = {
            "check": self.check,
            "inputs": dict(self.inputs),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "relative_margin": self.relative_margin,
            "pass": self.passed,
            "tolerance": self.tolerance,
        }
        if self.extras:
            out["extras"] = dict(self.extras)
        return out


def make_report(check, inputs, lhs, rhs, slack, tol):
    scale = max(abs(lhs), abs(rhs))
    rel = slack / scale if scale > 0.0 else 0.0
    return BoundReport(check=check, inputs=inputs, lhs=lhs, rhs=rhs,
                       margin=slack, relative_margin=rel,
                       passed=slack >= -tol * scale, tolerance=tol)


def sharp_constant(n, p, kind):
    """Closed-form sharp constant of the requested kind at (n, p)."""
    n = check_dimension(n)
    kind = ConstantKind(kind)
    nun = unit_ball_volume(n)
    if kind is ConstantKind.EXP_RATE:
        return beta_critical(n)
    exp = Exponent.of(p)
    pv = exp.p

    if kind is ConstantKind.CAP_SUBCRITICAL:
        if exp.is_infinite or not pv < n:
            raise RegimeError(f"subcritical constant needs 1 <= p < n, got p = {exp}")
        if pv == 1.0:
            return n * nun ** (1.0 / n)
        return n * nun ** (pv / n) * ((n - pv) / (pv - 1.0)) ** (pv - 1.0)

    if kind is ConstantKind.CAP_SUPERCRITICAL:
        if exp.is_infinite or not pv > n:
            raise RegimeError(f"supercritical constant needs n < p < inf, got p = {exp}")
        return n * nun ** (pv / n) * ((pv - n) / (pv - 1.0)) ** (pv - 1.0)

    if kind is ConstantKind.CAP_LIPSCHITZ:
        if not exp.is_infinite:
            raise RegimeError(f"lipschitz constant needs p = inf, got p = {exp}")
        return nun ** (1.0 / n)

    if kind is ConstantKind.IMBEDDING_NORM:
        if exp.is_infinite:
            return nun ** (-1.0 / n)
        if pv == 1.0 or pv == n:
            return nun ** (-1.0 / n) / n
        gap = abs(n - pv)
        return n ** (-1.0 / pv) * nun ** (-1.0 / n) * (gap / (pv - 1.0)) ** ((1.0 - pv) / pv)

    if kind is ConstantKind.FREQUENCY_COEFF:
        if exp.is_infinite:
            return nun ** (1.0 / n)
        if pv == 1.0:
            return n * nun ** (1.0 / n)
        return n * nun ** (pv / n) * pv ** (-pv) * max(n, pv - n) ** (pv - 1.0)

    raise RegimeError(f"unhandled constant kind {kind}")


def check_capacity_volume(profile, n, p, cond, alpha=None, beta=None,
                          settings=None, tol=DEFAULT_TOL):
    """Check the capacity-volume lower bound for one ball condenser.

    The compared ratio depends on the regime of p: for p < n the capacity is
    normalized by |K|^alpha |Omega|^(1 - p/n - alpha) with alpha >= 1 - p/n;
    at p = n the exponential functional is normalized by |K| / |Omega| and
    compared against 1; for p > n and p = inf only |Omega| powers enter.
    """
    n = check_dimension(n)
    exp = Exponent.of(p)
    s = settings or DEFAULT_SETTINGS
    inputs = {"profile": profile.kind, "n": n, "p": str(exp),
              "r": cond.r, "R": cond.R}
    vol_inner = ball_volume(profile, n, cond.r, s)
    vol_outer = ball_volume(profile, n, cond.R, s)

    if exp.regime in (ONE, FINITE) and exp.p < n:
        pv = exp.p
        alpha_min = 1.0 - pv / n
        if alpha is None:
            alpha = alpha_min
        if alpha < alpha_min - 1e-15:
            raise HypothesisError(
                f"alpha = {alpha} is below 1 - p/n = {alpha_min}; the ratio vanishes "
                "there, use vanishing_sweep instead")
        inputs["alpha"] = alpha
        cap = ball_capacity(profile, n, exp, cond, s)
        lhs = cap / (vol_inner ** alpha * vol_outer ** (1.0 - pv / n - alpha))
        rhs = sharp_constant(n, exp, ConstantKind.CAP_SUBCRITICAL)
        report = make_report(CAPVOL_SUBCRITICAL, inputs, lhs, rhs, lhs - rhs, tol)
        if alpha > alpha_min + 1e-15:
            reduced = cap / vol_inner ** alpha_min
            return BoundReport(**{**report.__dict__, "extras": {"reduced_ratio": reduced}})
        return report

    if exp.regime == FINITE and exp.p == n:
        rate = beta_critical(n)
        if beta is None:
            beta = rate
        if not 0.0 < beta <= rate * (1.0 + 1e-12):
            raise HypothesisError(
                f"beta = {beta} is outside (0, {rate:.6g}]; the ratio vanishes for "
                "larger rates, use vanishing_sweep instead")
        inputs["beta"] = beta
        lhs = exp_capacity_functional(profile, n, beta, cond, s) / (vol_inner / vol_outer)
        return make_report(CAPVOL_CRITICAL, inputs, lhs, 1.0, lhs - 1.0, tol)

    if exp.regime == FINITE:
        cap = ball_capacity(profile, n, exp, cond, s)
        lhs = cap * vol_outer ** (exp.p / n - 1.0)
        rhs = sharp_constant(n, exp, ConstantKind.CAP_SUPERCRITICAL)
        return make_report(CAPVOL_SUPERCRITICAL, inputs, lhs, rhs, lhs - rhs, tol)

    cap = ball_capacity(profile, n, exp, cond, s)
    lhs = cap * vol_outer ** (1.0 / n)
    rhs = sharp_constant(n, exp, ConstantKind.CAP_LIPSCHITZ)
    return make_report(CAPVOL_LIPSCHITZ, inputs, lhs, rhs, lhs - rhs, tol)


@dataclass(frozen=True)
class FunctionalSample:
    """Proof functionals evaluated at one grid point.

    Fields are None outside their regime: cap_core and its slope live in
    1 < p < n, outer_core in p > n (as a function of the outer radius), and
    convexity_excess / critical_core are exponent-free.
    """

    r: float
    cap_core: float = None
    cap_core_slope: float = None
    slope_factor: float = None
    convexity_excess: float = None
    critical_core: float = None
    outer_core: float = None


_FUNCTIONAL_NAMES = ("cap_core", "cap_core_slope", "slope_factor",
                     "convexity_excess", "critical_core", "outer_core")


def cap_core_limit(n, p):
    """Pole limit of the subcritical core at alpha = 1 - p/n.

    Its (1-p) power times (n nu_n)^(p/n) reproduces the subcritical sharp
    constant, which pins the value to ((p-1)/(n-p)) * n^((n-p)/(n(1-p))).
    """
    n = check_dimension(n)
    pv = Exponent.of(p).p
    if not 1.0 < pv < n:
        raise RegimeError(f"core limit needs 1 < p < n, got p = {pv}")
    return ((pv - 1.0) / (n - pv)) * n ** ((n - pv) / (n * (1.0 - pv)))


def monotone_functionals(profile, n, p, alpha, R, r_grid, settings=None, which=None):
    """Evaluate the applicable proof functionals on a radius grid.

    alpha = None defaults to 1 - p/n (the exponent for which the core slope
    has a guaranteed sign). `which` restricts the computed set; requesting a
    functional outside its regime raises RegimeError.
    """
    n = check_dimension(n)
    s = settings or DEFAULT_SETTINGS
    exp = Exponent.of(p) if p is not None else None
    pv = exp.p if exp is not None else None
    subcritical = exp is not None and exp.regime == FINITE and pv < n
    supercritical = exp is not None and exp.regime == FINITE and pv > n

    available = {"convexity_excess", "critical_core"}
    if subcritical:
        available |= {"cap_core", "cap_core_slope", "slope_factor"}
    if supercritical:
        available |= {"outer_core"}
    wanted = set(which) if which is not None else available
    unknown = wanted - set(_FUNCTIONAL_NAMES)
    if unknown:
        raise DomainError(f"unknown functionals requested: {sorted(unknown)}")
    out_of_regime = wanted - available
    if out_of_regime:
        raise RegimeError(
            f"functionals {sorted(out_of_regime)} are not defined for p = "
            f"{'none' if exp is None else str(exp)}, n = {n}")

    r_grid = np.asarray(r_grid, dtype=float)
    if np.any(r_grid <= 0.0) or np.any(np.diff(r_grid) <= 0.0) or r_grid[-1] >= R:
        raise DomainError("r_grid must be strictly increasing inside (0, R)")

    if subcritical:
        if alpha is None:
            alpha = 1.0 - pv / n
        e0 = (n - 1) / (1.0 - pv)
    samples = []
    for r in r_grid:
        vals = {}
        area_int, _ = phi_power_integral(profile, float(n - 1), 0.0, r, s)
        phi_r = profile.phi(r)
        if "convexity_excess" in wanted:
            vals["convexity_excess"] = profile.dphi(r) * area_int - phi_r ** n / n
        if "critical_core" in wanted:
            inv_int, _ = phi_power_integral(profile, -1.0, r, R, s)
            vals["critical_core"] = math.exp(n * inv_int) * area_int
        if subcritical and wanted & {"cap_core", "cap_core_slope", "slope_factor"}:
            tail_int, _ = phi_power_integral(profile, e0, r, R, s)
            core = area_int ** (alpha / (pv - 1.0)) * tail_int
            factor = (alpha / (pv - 1.0)) * tail_int - phi_r ** (pv * e0) * area_int
            slope = area_int ** (alpha / (pv - 1.0) - 1.0) * phi_r ** (n - 1) * factor
            if "cap_core" in wanted:
                vals["cap_core"] = core
            if "slope_factor" in wanted:
                vals["slope_factor"] = factor
            if "cap_core_slope" in wanted:
                vals["cap_core_slope"] = slope
        if supercritical and "outer_core" in wanted:
            # function of the outer radius; the grid value plays that role
            e_sup = (n - 1) / (1.0 - pv)
            tail_int, _ = phi_power_integral(profile, e_sup, 0.0, r, s)
            vals["outer_core"] = area_int ** (-(pv - n) / (n * (pv - 1.0))) * tail_int
        samples.append(FunctionalSample(r=float(r), **vals))
    return samples


def vanishing_sweep(profile, n, p, R, r_grid, alpha=None, beta=None, settings=None):
    """Sweep the vanishing-regime ratio over an inner-radius grid.

    For p != n (finite) the ratio is cap_p / |K|^alpha and requires
    alpha < 1 - p/n; at p = inf it is |K|^(1/n) cap_inf; at p = n it is the
    exponential functional over |K| and requires beta above the sharp rate.
    The returned (r, ratio) rows follow the input grid order; the contract is
    an eventually decreasing sequence with tail tending to zero.
    """
    n = check_dimension(n)
    exp = Exponent.of(p)
    s = settings or DEFAULT_SETTINGS
    r_grid = np.asarray(r_grid, dtype=float)
    if np.any(r_grid <= 0.0) or np.any(r_grid >= R):
        raise DomainError("r_grid must lie inside (0, R)")

    rows = []
    if exp.is_infinite:
        if alpha is not None:
            raise HypothesisError("the p = inf sweep uses the fixed volume power 1/n; "
                                  "alpha must be omitted")
        for r in r_grid:
            vol = ball_volume(profile, n, r, s)
            rows.append((float(r), vol ** (1.0 / n) / (R - r)))
        return rows

    pv = exp.p
    if pv == n:
        rate = beta_critical(n)
        if beta is None or beta <= rate * (1.0 + 1e-12):
            raise HypothesisError(
                f"critical vanishing needs beta > {rate:.6g}; for beta <= that rate "
                "the ratio is bounded below, use check_capacity_volume instead")
        for r in r_grid:
            vol = ball_volume(profile, n, r, s)
            value = exp_capacity_functional(profile, n, beta, Condenser(r, R), s)
            rows.append((float(r), value / vol))
        return rows

    alpha_max = 1.0 - pv / n
    if alpha is None or alpha >= alpha_max - 1e-15:
        raise HypothesisError(
            f"vanishing needs alpha < 1 - p/n = {alpha_max}; at or above it the ratio "
            "is bounded below, use check_capacity_volume instead")
    for r in r_grid:
        vol = ball_volume(profile, n, r, s)
        cap = ball_capacity(profile, n, exp, Condenser(r, R), s)
        rows.append((float(r), cap / vol ** alpha))
    return rows


def global_isocapacitary_check(profile, n, p, r, R_max, settings=None, tol=DEFAULT_TOL):
    """Check the global capacity lower bound for the ball of radius r.

    p = 1 is reported in generalized-isoperimetric form (minimal enclosing
    area against the sharp volume power); other regimes normalize the global
    capacity per their defining infimum.
    """
    n = check_dimension(n)
    exp = Exponent.of(p)
    s = settings or DEFAULT_SETTINGS
    result = global_capacity(profile, n, exp, r, R_max, s)
    vol = ball_volume(profile, n, r, s)
    nun = unit_ball_volume(n)
    inputs = {"profile": profile.kind, "n": n, "p": str(exp), "r": r, "R_max": R_max}
    extras = {"argmin_radius": result.argmin_radius, "attained": result.attained}

    if exp.regime == ONE:
        lhs = result.value
        rhs = n * nun ** (1.0 / n) * vol ** (1.0 - 1.0 / n)
        check = ISOPERIMETRIC
    elif exp.regime == FINITE and exp.p < n:
        lhs = result.value / vol ** (1.0 - exp.p / n)
        rhs = sharp_constant(n, exp, ConstantKind.CAP_SUBCRITICAL)
        check = GLOBAL_SUBCRITICAL
    elif exp.regime == FINITE and exp.p == n:
        lhs = result.value / vol
        rhs = 1.0
        check = GLOBAL_CRITICAL
    elif exp.regime == FINITE:
        lhs = result.value
        rhs = sharp_constant(n, exp, ConstantKind.CAP_SUPERCRITICAL)
        check = GLOBAL_SUPERCRITICAL
    else:
        lhs = result.value
        rhs = sharp_constant(n, exp, ConstantKind.CAP_LIPSCHITZ)
        check = GLOBAL_LIPSCHITZ

    report = make_report(check, inputs, lhs, rhs, lhs - rhs, tol)
    return BoundReport(**{**report.__dict__, "extras": extras})
