"""Relative and global p-capacities of ball condensers.

For a condenser made of the closed ball of radius r inside the open ball of
radius R, both centered at the pole, the p-capacity has a one-dimensional
closed form in the warping profile:

    p in (0,1) : 0
    p = 1      : area of the inner sphere
    p in (1,oo): n*nu_n * (integral_r^R phi(t)^((n-1)/(1-p)) dt)^(1-p)
    p = oo     : 1 / (R - r)

Global capacities minimize a volume-weighted relative capacity over the
outer domain.
"""

import logging
import math
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from .errors import (DivergentCondenserError, DivergentTailError, DomainError,
                     HorizonError, RegimeError)
from .geometry import (ball_volume, check_dimension, phi_power_integral,
                       phi_power_log_integral, sphere_area, unit_ball_volume)
from .quadrature import (DEFAULT_SETTINGS, LOG_DOMAIN_EXPONENT,
                         golden_minimize)

logger = logging.getLogger(__name__)

# Finite exponents closer to 1 than this are evaluated through the p -> 1
# limit (the inner sphere area): the quadrature exponent 1/(1-p) degenerates.
P_ONE_WINDOW = 1e-3

SUB_ONE = "sub-one"
ONE = "one"
FINITE = "finite"
INFINITY = "infinity"


@dataclass(frozen=True)
class Exponent:
    """Integrability index p, partitioned into its qualitative regimes."""

    regime: str
    value: float = None

    @classmethod
    def of(cls, p):
        """Normalize a number, 'inf', or an Exponent into an Exponent."""
        if isinstance(p, Exponent):
            return p
        if isinstance(p, str):
            if p.lower() in ("inf", "infinity", "oo"):
                return cls(INFINITY)
            p = float(p)
        p = float(p)
        if math.isinf(p):
            return cls(INFINITY)
        if p <= 0.0:
            raise RegimeError(f"exponent must be positive, got {p}")
        if p < 1.0:
            return cls(SUB_ONE, p)
        if p == 1.0:
            return cls(ONE, 1.0)
        return cls(FINITE, p)

    def __post_init__(self):
        if self.regime not in (SUB_ONE, ONE, FINITE, INFINITY):
            raise RegimeError(f"unknown exponent regime {self.regime!r}")
        if self.regime == FINITE and not (self.value is not None and self.value > 1.0):
            raise RegimeError("finite regime requires p > 1")
        if self.regime == SUB_ONE and not (self.value is not None and 0.0 < self.value < 1.0):
            raise RegimeError("sub-one regime requires 0 < p < 1")

    @property
    def p(self):
        """Numeric value (math.inf for the infinity regime)."""
        if self.regime == INFINITY:
            return math.inf
        if self.regime == ONE:
            return 1.0
        return self.value

    @property
    def is_infinite(self):
        return self.regime == INFINITY

    def __str__(self):
        return "inf" if self.is_infinite else f"{self.p:g}"


@dataclass(frozen=True)
class Condenser:
    """Inner and outer geodesic radii of a concentric ball condenser."""

    r: float
    R: float

    def __post_init__(self):
        if self.r < 0.0:
            raise DomainError(f"inner radius must be nonnegative, got {self.r}")
        if not self.R > self.r:
            raise DomainError("outer radius must exceed inner radius")

    @property
    def gap(self):
        return self.R - self.r


def _require_admissible(profile, n, exp, cond):
    if cond.R > profile.t_max:
        raise HorizonError(
            f"outer radius {cond.R} exceeds the profile horizon t_max = {profile.t_max}")
    if cond.r == 0.0 and not (exp.is_infinite or (exp.regime == FINITE and exp.p > n)):
        raise DivergentCondenserError(
            f"inner radius 0 needs p > n or p = inf (got p = {exp}, n = {n})")


def ball_capacity(profile, n, p, cond, settings=None):
    """Relative p-capacity of the ball condenser; see the module formula table."""
    value, _ = ball_capacity_with_error(profile, n, p, cond, settings)
    return value


def ball_capacity_with_error(profile, n, p, cond, settings=None):
    """(capacity, propagated quadrature error estimate)."""
    n = check_dimension(n)
    exp = Exponent.of(p)
    s = settings or DEFAULT_SETTINGS
    _require_admissible(profile, n, exp, cond)

    if exp.regime == SUB_ONE:
        return 0.0, 0.0
    if exp.is_infinite:
        return 1.0 / cond.gap, 0.0
    if exp.regime == ONE:
        return sphere_area(profile, n, cond.r), 0.0

    pv = exp.p
    if pv < 1.0 + P_ONE_WINDOW:
        logger.warning(
            "p = %.6g is within %.0e of 1; using the p -> 1 limit (inner sphere area)",
            pv, P_ONE_WINDOW)
        return sphere_area(profile, n, cond.r), 0.0

    coeff = n * unit_ball_volume(n)
    e0 = (n - 1) / (1.0 - pv)
    if s.log_domain and abs(e0) > LOG_DOMAIN_EXPONENT and cond.r > 0.0:
        log_integral, rel_err = phi_power_log_integral(profile, e0, cond.r, cond.R, s)
        value = coeff * math.exp((1.0 - pv) * log_integral)
        return value, abs(value) * abs(1.0 - pv) * rel_err
    integral, err = phi_power_integral(profile, e0, cond.r, cond.R, s)
    if integral <= 0.0:
        return math.inf, math.inf
    log_value = math.log(coeff) + (1.0 - pv) * math.log(integral)
    if log_value > 700.0:
        # genuinely beyond float range (tiny gap, large p)
        return math.inf, math.inf
    value = coeff * integral ** (1.0 - pv)
    rel = abs(pv - 1.0) * (err / integral)
    return value, abs(value) * rel


GlobalCapacity = namedtuple("GlobalCapacity", ["value", "argmin_radius", "attained"])

# relative offset of the scan start above the inner radius
_SCAN_OFFSET = 1e-4
_SCAN_POINTS = 64


def global_capacity(profile, n, p, r, R_max, settings=None):
    """Infimum over outer balls of the volume-weighted relative capacity.

    Regimes: p in [1, n) takes the plain capacity in the limit of growing
    domains (evaluated at R_max with a tail-convergence check); p = n
    minimizes vol(R) * exp(-beta_n * cap_n^(1/(1-n))); p > n minimizes
    vol(R)^(p/n - 1) * cap_p; p = inf minimizes vol(R)^(1/n) / (R - r).
    Returns (value, argmin radius, attained flag); the flag is False when the
    minimizer sits on the boundary of the scanned interval.
    """
    n = check_dimension(n)
    exp = Exponent.of(p)
    s = settings or DEFAULT_SETTINGS
    if not (0.0 <= r < R_max <= profile.t_max):
        raise DomainError(
            f"need 0 <= r < R_max <= t_max, got r={r}, R_max={R_max}, t_max={profile.t_max}")
    if exp.regime == SUB_ONE:
        raise RegimeError("global capacity requires p >= 1")
    nun = unit_ball_volume(n)

    if exp.regime == ONE or (exp.regime == FINITE and exp.p < n):
        cap = ball_capacity(profile, n, exp, Condenser(r, R_max), settings)
        if exp.regime == FINITE:
            e0 = (n - 1) / (1.0 - exp.p)
            main, _ = phi_power_integral(profile, e0, r, R_max, s)
            tail, _ = phi_power_integral(profile, e0, R_max, np.inf, s)
            if tail > s.rel_tol * main:
                raise HorizonError(
                    f"capacity tail beyond R_max = {R_max} is {tail / main:.3e} of the "
                    "integral; increase R_max (or loosen rel_tol)")
        return GlobalCapacity(cap, math.inf, False)

    if exp.regime == FINITE and exp.p == n:
        def objective(R):
            return ball_volume(profile, n, R, s) * exp_capacity_functional(
                profile, n, beta_critical(n), Condenser(r, R), s)
    elif exp.regime == FINITE:
        def objective(R):
            vol = ball_volume(profile, n, R, s)
            cap = ball_capacity(profile, n, exp, Condenser(r, R), s)
            return vol ** (exp.p / n - 1.0) * cap
    else:
        def objective(R):
            return ball_volume(profile, n, R, s) ** (1.0 / n) / (R - r)

    lo = max(r * (1.0 + _SCAN_OFFSET), R_max * 1e-12)
    grid = np.geomspace(lo, R_max, _SCAN_POINTS)
    values = [objective(R) for R in grid]
    spread = (max(values) - min(values)) / max(abs(min(values)), 1e-300)
    if spread < 1e-12:
        # degenerate objective (flat-space p = n): constant in R, infimum
        # nowhere attained; report the scan edge
        return GlobalCapacity(values[0], float(grid[0]), False)
    i = int(np.argmin(values))
    if i in (0, len(grid) - 1):
        return GlobalCapacity(values[i], float(grid[i]), False)
    argmin, value = golden_minimize(objective, grid[i - 1], grid[i + 1], rel_xtol=1e-10)
    return GlobalCapacity(value, float(argmin), True)


def beta_critical(n):
    """Sharp exponential normalization rate for the p = n capacity bounds."""
    n = check_dimension(n)
    return n ** (n / (n - 1.0)) * unit_ball_volume(n) ** (1.0 / (n - 1.0))


def capacitary_potential(profile, n, p, r, R, t, settings=None):
    """Value at radius t of the energy-minimizing condenser potential.

    R = None (or inf) selects the whole-manifold potential, which needs
    1 < p < n for its tail integral to converge. Bounded domains accept any
    finite p > 1 (with inner radius 0 admitted only for p > n).
    """
    n = check_dimension(n)
    exp = Exponent.of(p)
    s = settings or DEFAULT_SETTINGS
    if exp.regime != FINITE:
        raise RegimeError(f"capacitary potential needs a finite p > 1, got p = {exp}")
    pv = exp.p
    unbounded = R is None or (isinstance(R, float) and math.isinf(R))
    if unbounded:
        if not pv < n:
            raise DivergentTailError(
                f"whole-manifold potential needs 1 < p < n, got p = {pv}, n = {n}")
        if r <= 0.0:
            raise DomainError("whole-manifold potential needs r > 0")
    else:
        _require_admissible(profile, n, exp, Condenser(r, R))
    t = float(t)
    if t < 0.0:
        raise DomainError(f"t must be nonnegative, got {t}")
    if t <= r:
        return 1.0
    if not unbounded and t >= R:
        return 0.0

    e0 = (n - 1) / (1.0 - pv)
    if s.log_domain and abs(e0) > LOG_DOMAIN_EXPONENT and not unbounded:
        log_num, _ = phi_power_log_integral(profile, e0, r, t, s)
        log_den, _ = phi_power_log_integral(profile, e0, r, R, s)
        return 1.0 - math.exp(log_num - log_den)
    upper = np.inf if unbounded else R
    num, _ = phi_power_integral(profile, e0, r, t, s)
    den, _ = phi_power_integral(profile, e0, r, upper, s)
    return max(0.0, 1.0 - num / den)


def exp_capacity_functional(profile, n, beta, cond, settings=None):
    """exp(-beta * cap_n(r, R)^(1/(1-n))), evaluated without the power round trip.

    cap_n^(1/(1-n)) equals (n nu_n)^(1/(1-n)) times the integral of 1/phi, so
    the exponent is computed directly from that integral.
    """
    n = check_dimension(n)
    s = settings or DEFAULT_SETTINGS
    if beta <= 0.0:
        raise DomainError(f"beta must be positive, got {beta}")
    if cond.r <= 0.0:
        raise DivergentCondenserError("exponential capacity functional needs r > 0")
    if cond.R > profile.t_max:
        raise HorizonError(
            f"outer radius {cond.R} exceeds the profile horizon t_max = {profile.t_max}")
    integral, _ = phi_power_integral(profile, -1.0, cond.r, cond.R, s)
    rate = beta * (n * unit_ball_volume(n)) ** (1.0 / (1.0 - n))
    return math.exp(-rate * integral)
