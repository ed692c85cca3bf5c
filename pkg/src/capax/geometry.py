"""Warped-product geometry of rotationally symmetric manifolds.

A warping profile phi defines the metric dt^2 + phi(t)^2 g_sphere on the
product of a half line with a unit (n-1)-sphere. Supported profiles are
analytic with exact derivatives:

  * euclidean     phi(t) = t
  * hyperbolic    phi(t) = sinh t
  * odd-series    phi(t) = t + c3 t^3 + c5 t^5 + ...   (all ck >= 0)

Every profile satisfies phi(0) = 0, phi'(0) = 1 and phi'' >= 0, hence
phi' >= 1 and phi(t) >= t. Geodesic spheres have area S_t proportional to
phi(t)^(n-1) and ball volumes follow by one radial integration.
"""

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import (ConvexityError, DimensionError, DomainError,
                     HorizonError, ProfileError)
from .quadrature import (DEFAULT_SETTINGS, LOG_DOMAIN_EXPONENT,
                         gauss_legendre_cumulative, integrate)

DEFAULT_T_MAX = 50.0
_CONVEXITY_SAMPLES = 10_000

_BUILTIN_KINDS = ("euclidean", "hyperbolic", "odd-series")


def check_dimension(n, minimum=2):
    """Validate an integer dimension, returning it."""
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise DimensionError(f"dimension must be an integer, got {n!r}")
    if n < minimum:
        raise DimensionError(f"dimension must be >= {minimum}, got {n}")
    return int(n)


def unit_ball_volume(n):
    """Volume of the unit ball in flat n-space: pi^(n/2) / Gamma(n/2 + 1)."""
    n = check_dimension(n, minimum=1)
    return math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)


@dataclass(frozen=True)
class WarpProfile:
    """Validated warping function with exact derivatives.

    coefficients holds the odd-series coefficients (c3, c5, ...); it is empty
    for the builtin kinds. t_max is the validity horizon for numerical use:
    public evaluation beyond it raises HorizonError.
    """

    kind: str
    coefficients: tuple = ()
    t_max: float = DEFAULT_T_MAX

    # powers of t attached to `coefficients` (3, 5, 7, ...)
    @property
    def _powers(self):
        return np.arange(3, 3 + 2 * len(self.coefficients), 2)

    def phi(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "euclidean":
            out = t.copy()
        elif self.kind == "hyperbolic":
            out = np.sinh(t)
        else:
            out = t.copy()
            for c, k in zip(self.coefficients, self._powers):
                if c:
                    out = out + c * t ** k
        return out if out.ndim else float(out)

    def dphi(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "euclidean":
            out = np.ones_like(t)
        elif self.kind == "hyperbolic":
            out = np.cosh(t)
        else:
            out = np.ones_like(t)
            for c, k in zip(self.coefficients, self._powers):
                if c:
                    out = out + c * k * t ** (k - 1)
        return out if out.ndim else float(out)

    def d2phi(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "euclidean":
            out = np.zeros_like(t)
        elif self.kind == "hyperbolic":
            out = np.sinh(t)
        else:
            out = np.zeros_like(t)
            for c, k in zip(self.coefficients, self._powers):
                if c:
                    out = out + c * k * (k - 1) * t ** (k - 2)
        return out if out.ndim else float(out)

    def log_phi(self, t):
        """log(phi(t)), stable for arguments far beyond overflow of phi."""
        t = np.asarray(t, dtype=float)
        if self.kind == "euclidean":
            out = np.log(t)
        elif self.kind == "hyperbolic":
            # sinh t = e^t (1 - e^(-2t)) / 2, valid for all t > 0
            with np.errstate(divide="ignore"):
                small = t < 1e-8
                out = np.where(small, np.log(np.where(t > 0, t, 1.0)),
                               t - math.log(2.0) + np.log1p(-np.exp(-2.0 * np.minimum(t, 700.0))))
        else:
            with np.errstate(over="ignore", divide="ignore"):
                correction = np.zeros_like(t)
                for c, k in zip(self.coefficients, self._powers):
                    if c:
                        correction = correction + c * t ** (k - 1)
                if np.all(np.isfinite(correction)):
                    out = np.log(t) + np.log1p(correction)
                else:
                    # fall back to the leading monomial where the sum overflows
                    k_top = int(self._powers[-1])
                    c_top = float(self.coefficients[-1])
                    lead = math.log(c_top) + k_top * np.log(t)
                    out = np.where(np.isfinite(correction),
                                   np.log(t) + np.log1p(np.where(np.isfinite(correction), correction, 0.0)),
                                   lead)
        return out if out.ndim else float(out)

    @property
    def is_euclidean(self):
        return self.kind == "euclidean" or (self.kind == "odd-series" and not any(self.coefficients))


def make_profile(spec, t_max=None):
    """Build and validate a WarpProfile from a name or a mapping.

    Accepted forms: "euclidean", "hyperbolic", or a dict such as
    {"kind": "odd-series", "coefficients": [c3, c5, ...], "t_max": 50.0}.
    """
    if spec is None or spec == "" or spec == {}:
        raise ProfileError("empty profile spec")
    if isinstance(spec, WarpProfile):
        return spec
    if isinstance(spec, str):
        spec = {"kind": spec}
    if not isinstance(spec, dict):
        raise ProfileError(f"cannot parse profile spec of type {type(spec).__name__}")
    kind = spec.get("kind")
    if kind not in _BUILTIN_KINDS:
        raise ProfileError(f"unknown profile kind {kind!r}; expected one of {_BUILTIN_KINDS}")
    coefficients = tuple(float(c) for c in spec.get("coefficients", ()))
    if kind != "odd-series" and coefficients:
        raise ProfileError(f"coefficients are only valid for odd-series profiles, not {kind!r}")
    horizon = float(spec.get("t_max", DEFAULT_T_MAX) if t_max is None else t_max)
    if not horizon > 0.0:
        raise ProfileError("t_max must be positive")
    for c in coefficients:
        if c < 0.0:
            raise ConvexityError(f"odd-series coefficient {c} is negative, so phi'' < 0 somewhere")
    profile = WarpProfile(kind=kind, coefficients=coefficients, t_max=horizon)
    _validate_profile(profile)
    return profile


def profile_from_json(text):
    """Parse a profile spec from a JSON document (string or mapping)."""
    if isinstance(text, (dict, WarpProfile)):
        return make_profile(text)
    try:
        data = json.loads(text)
    except (TypeError, ValueError) as exc:
        raise ProfileError(f"invalid profile JSON: {exc}") from exc
    return make_profile(data)


def _validate_profile(profile):
    # Chebyshev-distributed sample clusters points at both endpoints.
    j = np.arange(_CONVEXITY_SAMPLES)
    theta = math.pi * (j + 0.5) / _CONVEXITY_SAMPLES
    ts = profile.t_max * 0.5 * (1.0 - np.cos(theta))
    ts = ts[ts > 0.0]
    second = profile.d2phi(ts)
    if np.any(second < -DEFAULT_SETTINGS.abs_tol):
        worst = float(ts[np.argmin(second)])
        raise ConvexityError(f"phi''({worst:.6g}) = {float(np.min(second)):.3e} < 0")
    if abs(profile.phi(0.0)) > 0.0 or abs(profile.dphi(0.0) - 1.0) > 0.0:
        raise ProfileError("profile must satisfy phi(0) = 0 and phi'(0) = 1")


def warp_eval(profile, t):
    """Exact (phi, phi', phi'') at t, with the horizon check applied."""
    t = float(t)
    if t < 0.0:
        raise DomainError(f"t must be nonnegative, got {t}")
    if t > profile.t_max:
        raise HorizonError(f"t = {t} exceeds the profile horizon t_max = {profile.t_max}")
    return profile.phi(t), profile.dphi(t), profile.d2phi(t)


def sphere_area(profile, n, t):
    """Area of the geodesic sphere of radius t."""
    n = check_dimension(n)
    t = float(t)
    if t <= 0.0:
        raise DomainError(f"sphere radius must be positive, got {t}")
    if t > profile.t_max:
        raise HorizonError(f"t = {t} exceeds the profile horizon t_max = {profile.t_max}")
    return n * unit_ball_volume(n) * profile.phi(t) ** (n - 1)


def ball_volume(profile, n, r, settings=None):
    """Volume of the geodesic ball of radius r, by adaptive quadrature."""
    value, _ = ball_volume_with_error(profile, n, r, settings)
    return value


def ball_volume_with_error(profile, n, r, settings=None):
    n = check_dimension(n)
    r = float(r)
    if r < 0.0:
        raise DomainError(f"ball radius must be nonnegative, got {r}")
    if r > profile.t_max:
        raise HorizonError(f"r = {r} exceeds the profile horizon t_max = {profile.t_max}")
    if r == 0.0:
        return 0.0, 0.0
    coeff = n * unit_ball_volume(n)
    value, err = integrate(lambda t: profile.phi(t) ** (n - 1), 0.0, r, settings)
    return coeff * value, coeff * err


def ball_volume_grid(profile, n, radii, order=24):
    """Ball volumes at many radii in one vectorized pass.

    radii must be nonnegative; the result matches ball_volume to roughly
    Gauss-Legendre panel accuracy (1e-13 relative for the supported smooth
    profiles). Used by sweep and supremum searches where thousands of
    adaptive calls would dominate the runtime.
    """
    n = check_dimension(n)
    radii = np.asarray(radii, dtype=float)
    order_grid = np.argsort(radii, kind="stable")
    sorted_r = radii[order_grid]
    if sorted_r.size == 0:
        return np.zeros_like(radii)
    if sorted_r[0] < 0.0:
        raise DomainError("ball radii must be nonnegative")
    breakpoints = np.concatenate(([0.0], sorted_r))
    coeff = n * unit_ball_volume(n)
    cumulative = gauss_legendre_cumulative(lambda t: profile.phi(t) ** (n - 1),
                                           breakpoints, order=order)
    out = np.empty_like(radii)
    out[order_grid] = coeff * cumulative[1:]
    return out


def inverse_volume(profile, n, v, settings=None):
    """Radius of the geodesic ball with volume v (the isoperimetric inverse)."""
    n = check_dimension(n)
    s = settings or DEFAULT_SETTINGS
    v = float(v)
    if v <= 0.0:
        raise DomainError(f"volume must be positive, got {v}")
    v_max = ball_volume(profile, n, profile.t_max, settings)
    if v > v_max * (1.0 + 1e-12):
        raise HorizonError(
            f"volume {v:.6g} exceeds the horizon ball volume {v_max:.6g}; increase t_max")
    v = min(v, v_max)

    def gap(r):
        return ball_volume(profile, n, r, settings) - v

    return brentq(gap, 0.0, profile.t_max,
                  rtol=max(s.rel_tol, 1e-15), xtol=1e-15 * profile.t_max)


# Interval ratio beyond which power integrals switch to log coordinates:
# QUADPACK's first panel on [a, b] with b >> a samples almost nothing of an
# integrand whose mass hugs t = a, and can converge to garbage without
# raising its error flag. In u = log t the mass spreads over O(1) widths.
_LOG_COORD_RATIO = 30.0


def phi_power_integral(profile, exponent, a, b, settings=None):
    """(integral of phi(t)**exponent over [a, b], error estimate).

    b may be numpy.inf. Wide intervals (b/a beyond _LOG_COORD_RATIO) and all
    infinite tails are integrated in log coordinates, where power-law mass is
    spread out; the integrand itself goes through exp(exponent * log phi)
    once |exponent| exceeds the log-domain threshold.
    """
    s = settings or DEFAULT_SETTINGS
    if b != np.inf and b < a:
        raise DomainError(f"integration bounds out of order: [{a}, {b}]")
    if a == 0.0:
        if b == np.inf:
            raise DomainError("integral of a phi power over (0, inf) diverges")
        if b <= _LOG_COORD_RATIO:
            return integrate(_power_integrand(profile, exponent, s), 0.0, b, s)
        v1, e1 = integrate(_power_integrand(profile, exponent, s), 0.0, 1.0, s)
        v2, e2 = _log_coord_integral(profile, exponent, 1.0, b, s)
        return v1 + v2, e1 + e2
    if b == np.inf or b / a > _LOG_COORD_RATIO:
        return _log_coord_integral(profile, exponent, a, b, s)
    return integrate(_power_integrand(profile, exponent, s), a, b, s)


def _power_integrand(profile, exponent, settings):
    if settings.log_domain and abs(exponent) > LOG_DOMAIN_EXPONENT:
        def f(t):
            return math.exp(exponent * profile.log_phi(t))
    else:
        def f(t):
            return profile.phi(t) ** exponent
    return f


def _log_coord_integral(profile, exponent, a, b, settings):
    """Integral of phi**exponent over [a, b] via the substitution t = e^u."""
    def g(u):
        with np.errstate(over="ignore", under="ignore"):
            t = np.exp(u)
            if np.isinf(t):
                # reachable only on convergent infinite tails (exponent < -1,
                # phi >= t), where the integrand has decayed to zero
                return 0.0
            arg = exponent * profile.log_phi(t) + u
            if not np.isfinite(arg):
                return 0.0
            return math.exp(arg) if arg < 700.0 else math.inf
    upper = np.inf if b == np.inf else math.log(b)
    return integrate(g, math.log(a), upper, settings)


def phi_power_log_integral(profile, exponent, a, b, settings=None):
    """log of the integral of phi**exponent over [a, b], plus a relative error.

    Stable for very large negative exponents (p near 1), where the integrand
    spans hundreds of orders of magnitude: the maximum at t = a is factored
    out and the integration window is truncated where the shifted integrand
    has decayed to e^-60 (the remainder is below 1e-20 of the total).
    Requires 0 < a < b < inf and exponent < 0.
    """
    s = settings or DEFAULT_SETTINGS
    if not (0.0 < a < b < np.inf):
        raise DomainError("log-domain integral needs 0 < a < b < inf")
    if exponent >= 0.0:
        raise DomainError("log-domain integral expects a negative exponent")
    shift = exponent * profile.log_phi(a)
    # cutoff where exponent * (log phi(t) - log phi(a)) = -60
    target = profile.log_phi(a) + 60.0 / abs(exponent)
    if profile.log_phi(b) > target:
        cutoff = brentq(lambda t: profile.log_phi(t) - target, a, b, rtol=1e-12)
    else:
        cutoff = b

    def f(t):
        return np.exp(exponent * profile.log_phi(t) - shift)

    value, err = integrate(f, a, cutoff, s)
    rel = err / value if value > 0.0 else math.inf
    return shift + math.log(value), rel
