"""Gagliardo seminorms of radial functions.

For radial u the seminorm reduces to a double integral over radii,

    [u]^p = (N w_N)^2 int_0^inf int_0^inf |u(r) - u(t)|^p K(r, t) dt dr,
    K(r, t) = r^(N-1) t^(N-1) (r^2 + t^2) / |r^2 - t^2|^(N+1).

In log radii a = ln r, b = ln t the weighted kernel depends only on the
offset d = a - b:  K e^(a+b) = kappa(d) = cosh d / (2^N |sinh d|^(N+1)).
Hence

    [u]^p = 2 (N w_N)^2 int_0^inf kappa(d) D(d) dd,
    D(d)  = int |v(b + d) - v(b)|^p db,      v(a) = u(e^a).

For profiles linear in ln r, D is computed exactly: v(b + d) - v(b) is
piecewise linear in b and |.|^p integrates in closed form on each piece.
The remaining integral in d has an integrable singularity d^(p-N-1) at
d = 0 (handled by a Gauss-Jacobi panel), kinks at pairwise breakpoint
offsets (panel edges) and, beyond the total log-width of the profile, a
linear D whose tail integral is analytic.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError
from .exponents import FractionalParams, sphere_area
from .quadrature import adaptive_gk15, gauss_jacobi_panel

LINEAR_IN_LOG_R = "linear_in_log_r"
CONSTANT = "constant"
INTERPOLATIONS = (LINEAR_IN_LOG_R, CONSTANT)

_SERIES_SWITCH = 1e-3


@dataclass(frozen=True)
class RadialProfile:
    """Radial function given by values at radii ``r_0 < ... < r_m``.

    ``u`` equals ``values[0]`` on (0, r_0], is interpolated between
    breakpoints and vanishes for r >= r_m (``values[-1]`` must be 0).
    With ``interpolation="constant"`` the value ``values[i]`` holds on
    [r_i, r_{i+1}).
    """

    breakpoints: tuple
    values: tuple
    interpolation: str = LINEAR_IN_LOG_R

    def __post_init__(self):
        r = tuple(float(x) for x in self.breakpoints)
        v = tuple(float(x) for x in self.values)
        object.__setattr__(self, "breakpoints", r)
        object.__setattr__(self, "values", v)
        if self.interpolation not in INTERPOLATIONS:
            raise DomainError(f"interpolation must be one of {INTERPOLATIONS}, "
                              f"got {self.interpolation!r}")
        if len(r) == 0 or len(r) != len(v):
            raise DomainError("breakpoints and values must be non-empty and of equal length")
        if not all(math.isfinite(x) and x > 0.0 for x in r):
            raise DomainError("breakpoints must be finite and positive")
        if any(b <= a for a, b in zip(r, r[1:])):
            raise DomainError("breakpoints must be strictly increasing")
        if not all(math.isfinite(x) for x in v):
            raise DomainError("profile values must be finite")
        if v[-1] != 0.0:
            raise DomainError("the last value must be 0 (compact support)")

    @property
    def log_breakpoints(self) -> np.ndarray:
        return np.log(np.asarray(self.breakpoints))

    @property
    def support_radius(self) -> float:
        return self.breakpoints[-1]

    @property
    def is_zero(self) -> bool:
        return all(x == 0.0 for x in self.values)

    def value_at(self, r):
        """Evaluate u at radii ``r`` (scalar or array)."""
        r = np.asarray(r, dtype=float)
        out = self._eval_log(np.log(np.maximum(r, 1e-300)))
        return out if out.ndim else float(out)

    def _eval_log(self, a):
        a = np.asarray(a, dtype=float)
        logs = self.log_breakpoints
        vals = np.asarray(self.values)
        if self.interpolation == LINEAR_IN_LOG_R:
            return np.interp(a, logs, vals)
        idx = np.searchsorted(logs, a, side="right") - 1
        out = vals[np.clip(idx, 0, len(vals) - 1)]
        return np.where(a >= logs[-1], 0.0, out)

    def scaled(self, factor: float) -> "RadialProfile":
        """The profile multiplied by ``factor``."""
        return RadialProfile(self.breakpoints, tuple(factor * x for x in self.values),
                             self.interpolation)

    def dilated(self, lam: float) -> "RadialProfile":
        """The profile r -> u(lam * r)."""
        if not lam > 0.0:
            raise DomainError(f"dilation factor must be positive, got {lam!r}")
        return RadialProfile(tuple(x / lam for x in self.breakpoints), self.values,
                             self.interpolation)

    @classmethod
    def from_function(
        cls,
        func: Callable[[float], float],
        breakpoints: Sequence[float],
        interpolation: str = LINEAR_IN_LOG_R,
    ) -> "RadialProfile":
        """Sample ``func`` at ``breakpoints``; the last sample is forced to 0."""
        vals = [float(func(r)) for r in breakpoints]
        vals[-1] = 0.0
        return cls(tuple(breakpoints), tuple(vals), interpolation)

    def to_dict(self) -> dict:
        return {"breakpoints": list(self.breakpoints), "values": list(self.values),
                "interpolation": self.interpolation}

    @classmethod
    def from_dict(cls, data: dict) -> "RadialProfile":
        extra = set(data) - {"breakpoints", "values", "interpolation"}
        if extra:
            raise DomainError(f"unknown profile keys: {sorted(extra)}")
        try:
            return cls(tuple(data["breakpoints"]), tuple(data["values"]),
                       data.get("interpolation", LINEAR_IN_LOG_R))
        except KeyError as exc:
            raise DomainError(f"profile is missing key {exc.args[0]!r}") from None

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "RadialProfile":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"profile is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise DomainError("profile JSON must be an object")
        return cls.from_dict(data)


@dataclass(frozen=True)
class SeminormResult:
    """``value_p`` is [u]^p (not [u])."""

    value_p: float
    error_estimate: float
    panels_used: int


@dataclass(frozen=True)
class MoserDecomposition:
    """The four pieces of [u_eps]^p / (N w_N)^2, split by the regions
    (r < eps, eps < t < 1), (eps < r, t < 1), (r < eps, t > 1), (eps < r < 1, t > 1)."""

    eps: float
    i1: float
    i2: float
    i3: float
    i4: float
    total: float

    def as_dict(self) -> dict:
        return {"eps": self.eps, "i1": self.i1, "i2": self.i2, "i3": self.i3,
                "i4": self.i4, "total": self.total}


# ---------------------------------------------------------------------------
# kernel


def kernel(r: float, t: float, dim: int) -> float:
    """Reduced kernel r^(N-1) t^(N-1) (r^2 + t^2) / |r^2 - t^2|^(N+1)."""
    if r == t:
        raise DomainError("kernel is singular on the diagonal r = t")
    return (r * t) ** (dim - 1) * (r * r + t * t) / abs(r * r - t * t) ** (dim + 1)


def kernel_antiderivative(t: float, r: float, dim: int) -> float:
    """A t-antiderivative of t^(N-1) (r^2 + t^2) / |r^2 - t^2|^(N+1).

    Equal to t^N / (N (r^2 - t^2)^N) times sgn(r^2 - t^2)^(N+1); it vanishes
    at t = 0, so for t < r it is the integral from 0 to t.
    """
    if r == t:
        raise DomainError("antiderivative is singular at t = r")
    diff = r * r - t * t
    sign = 1.0 if diff > 0 or (dim + 1) % 2 == 0 else -1.0
    return sign * t ** dim / (dim * diff ** dim)


def kernel_partial_integral(r: float, eps: float, dim: int) -> float:
    """int_0^eps t^(N-1) (r^2 + t^2) / (r^2 - t^2)^(N+1) dt for r > eps."""
    if not r > eps > 0.0:
        raise DomainError("need r > eps > 0")
    return eps ** dim / (dim * ((r - eps) * (r + eps)) ** dim)


def log_kernel(delta, dim: int):
    """kappa(d) = cosh d / (2^N |sinh d|^(N+1)), the kernel in log radii."""
    d = np.abs(np.asarray(delta, dtype=float))
    return np.cosh(d) / (2.0 ** dim * np.sinh(d) ** (dim + 1))


def _kappa_regular(delta, dim: int):
    # kappa(d) * d^(N+1), analytic at d = 0
    d = np.asarray(delta, dtype=float)
    small = d < 1e-4
    safe = np.where(small, 1.0, d)
    reg = np.cosh(safe) * (safe / np.sinh(safe)) ** (dim + 1) / 2.0 ** dim
    series = (1.0 + d * d * (0.5 - (dim + 1) / 6.0)) / 2.0 ** dim
    return np.where(small, series, reg)


# ---------------------------------------------------------------------------
# exact difference integral D(delta)


def _abs_power_mean(fc, fd, p: float):
    """int_0^1 |fc + tau (fd - fc)|^p dtau, elementwise."""
    mid = 0.5 * (fc + fd)
    half = 0.5 * (fd - fc)
    amid = np.abs(mid)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(amid > 0, half / np.where(amid > 0, mid, 1.0),
                     np.where(half == 0, 0.0, np.inf))
        near = np.abs(t) < _SERIES_SWITCH
        # midpoint expansion, 1 + C(p,2) t^2 / 3 + C(p,4) t^4 / 5
        t2 = np.where(near, t * t, 0.0)
        c2 = p * (p - 1.0) / 6.0
        c4 = p * (p - 1.0) * (p - 2.0) * (p - 3.0) / 120.0
        series = amid ** p * (1.0 + t2 * (c2 + c4 * t2))
        big_f = lambda y: np.abs(y) ** (p + 1.0) * np.sign(y) / (p + 1.0)
        denom = np.where(near, 1.0, fd - fc)
        exact = (big_f(fd) - big_f(fc)) / denom
    return np.where(near, series, exact)


class _DifferenceIntegral:
    """D(d) = int |v(b + d) - v(b)|^p db for a profile linear in ln r."""

    def __init__(self, profile: RadialProfile, p: float):
        self.logs = profile.log_breakpoints
        self.vals = np.asarray(profile.values)
        self.p = p
        self.width = float(self.logs[-1] - self.logs[0])
        self.v0 = float(self.vals[0])

    def _v(self, a):
        return np.interp(a, self.logs, self.vals)

    def __call__(self, delta):
        delta = np.atleast_1d(np.asarray(delta, dtype=float))
        pts = np.concatenate(
            [np.broadcast_to(self.logs, (delta.size, self.logs.size)),
             self.logs[None, :] - delta[:, None]], axis=1)
        pts.sort(axis=1)
        diff = self._v(pts + delta[:, None]) - self._v(pts)
        lengths = np.diff(pts, axis=1)
        pieces = lengths * _abs_power_mean(diff[:, :-1], diff[:, 1:], self.p)
        return pieces.sum(axis=1)

    def kink_offsets(self) -> np.ndarray:
        diffs = (self.logs[None, :] - self.logs[:, None]).ravel()
        diffs = np.unique(diffs[diffs > 0.0])
        # offsets that agree to rounding would create needless tiny panels
        keep = np.concatenate([[True], np.diff(diffs) > 1e-12 * max(1.0, self.width)])
        return diffs[keep]


def _sinh_power_tail(width: float, dim: int, rel_tol: float) -> tuple[float, float]:
    # int_width^inf sinh(d)^(-N) dd; beyond width + 40/N the rest is below e^-40
    top = width + 40.0 / dim + 1.0
    res = adaptive_gk15(lambda d: np.sinh(d) ** (-float(dim)), width, top,
                        rel_tol=rel_tol, max_panels=2000)
    rest = 2.0 ** dim * math.exp(-dim * top) / (dim * (1.0 - math.exp(-2.0 * top)) ** dim)
    return res.value + rest, res.error + rest


def seminorm_radial(
    profile: RadialProfile,
    params: FractionalParams,
    tol: float = 1e-8,
) -> SeminormResult:
    """[u]^p of a radial profile through the one-dimensional log-offset form.

    Parameters
    ----------
    profile : RadialProfile
        Must be linear in ln r; a piecewise-constant profile with a jump has
        infinite seminorm (p > N >= 1) and is rejected unless it is zero.
    params : FractionalParams
    tol : float
        Relative tolerance, in (1e-10, 1e-2).

    Raises
    ------
    ConvergenceError
        If the adaptive refinement does not reach ``tol``.
    """
    if not 1e-10 < tol < 1e-2:
        raise DomainError(f"tol must lie in (1e-10, 1e-2), got {tol!r}")
    if profile.is_zero:
        return SeminormResult(0.0, 0.0, 0)
    if profile.interpolation == CONSTANT:
        raise DomainError("piecewise-constant profile with a jump has infinite seminorm")
    dim, p = params.dim, params.p
    dfun = _DifferenceIntegral(profile, p)
    kinks = dfun.kink_offsets()
    width = dfun.width
    first = min(float(kinks[0]), 1.0)

    # (0, first]: D(d) / d^p is a polynomial of degree one here
    beta = p - dim - 1.0

    def near(d):
        return _kappa_regular(d, dim) * dfun(d) / d ** p

    v_near, e_near = gauss_jacobi_panel(near, 0.0, first, beta, n=30)
    panels = 1

    # (first, width]: smooth between the pairwise breakpoint offsets
    v_mid = e_mid = 0.0
    if width > first:
        def mid(d):
            return log_kernel(d, dim) * dfun(d)

        res = adaptive_gk15(mid, first, width, rel_tol=0.25 * tol,
                            breakpoints=[float(k) for k in kinks], max_panels=20000)
        v_mid, e_mid, panels = res.value, res.error, panels + res.panels

    # (width, inf): D(d) = D(width) + |v0|^p (d - width)
    d_width = float(dfun(width)[0])
    head = math.sinh(width) ** (-dim) / (dim * 2.0 ** dim)
    sinh_tail, sinh_err = _sinh_power_tail(width, dim, 0.25 * tol)
    slope = abs(dfun.v0) ** p
    v_tail = d_width * head + slope * sinh_tail / (dim * 2.0 ** dim)
    e_tail = slope * sinh_err / (dim * 2.0 ** dim) + 1e-15 * abs(v_tail)

    scale = 2.0 * sphere_area(dim) ** 2
    value = scale * math.fsum([v_near, v_mid, v_tail])
    error = scale * (e_near + e_mid + e_tail) + 1e-14 * abs(value)
    if error > tol * abs(value):
        raise ConvergenceError(
            f"seminorm_radial reached only {error / abs(value):.3g} relative error",
            {"value": value, "error": error, "panels": panels,
             "near_error": e_near, "mid_error": e_mid},
        )
    return SeminormResult(value, error, panels + 1)


# ---------------------------------------------------------------------------
# Moser family


def moser_profile(eps: float, params: FractionalParams) -> RadialProfile:
    """u_eps: |ln eps|^((N-s)/N) on [0, eps], |ln r| / |ln eps|^(s/N) on (eps, 1)."""
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps!r}")
    big_l = -math.log(eps)
    plateau = big_l ** ((params.dim - params.s) / params.dim)
    return RadialProfile((eps, 1.0), (plateau, 0.0), LINEAR_IN_LOG_R)


def _split_singular(f_reg, upper: float, beta: float, tol: float) -> tuple[float, float]:
    # int_0^upper y^beta f_reg(y) dy: Jacobi panel on [0, c], Kronrod beyond
    c = min(1.0, upper)
    val, err = gauss_jacobi_panel(f_reg, 0.0, c, beta, n=30)
    if upper > c:
        res = adaptive_gk15(lambda y: y ** beta * f_reg(y), c, upper,
                            rel_tol=0.5 * tol, max_panels=4000)
        val += res.value
        err += res.error
    return val, err


def moser_decomposition(
    eps: float,
    params: FractionalParams,
    tol: float = 1e-9,
) -> MoserDecomposition:
    """I_1..I_4 of the Moser profile, each from a one-dimensional reduction.

    With L = |ln eps| and kappa the log-radius kernel:

    * I_1 = I_4 = 2/(N L) int_0^L y^p (2 sinh y)^(-N) dy,
    * I_2 = 2 int_0^L (1 - y/L) y^p kappa(y) dy,
    * I_3 = 2 eps^N L^(p-1)/N int_0^1 t^(N-1) (1 - eps^2 t^2)^(-N) dt.

    The sum times (N w_N)^2 is [u_eps]^p.
    """
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps!r}")
    if not 1e-12 < tol < 1e-2:
        raise DomainError(f"tol must lie in (1e-12, 1e-2), got {tol!r}")
    dim, p = params.dim, params.p
    big_l = -math.log(eps)

    def edge_reg(y):
        # y^N / (2 sinh y)^N with the y^(p-N) factor carried by the weight
        y = np.asarray(y, dtype=float)
        safe = np.where(y < 1e-8, 1.0, y)
        return np.where(y < 1e-8, 2.0 ** (-dim), (safe / (2.0 * np.sinh(safe))) ** dim)

    edge, _ = _split_singular(edge_reg, big_l, p - dim, tol)
    i1 = 2.0 * edge / (dim * big_l)

    def inner_reg(y):
        return (1.0 - np.asarray(y) / big_l) * _kappa_regular(y, dim)

    inner, _ = _split_singular(inner_reg, big_l, p - dim - 1.0, tol)
    i2 = 2.0 * inner

    res = adaptive_gk15(lambda t: t ** (dim - 1) / (1.0 - eps * eps * t * t) ** dim,
                        0.0, 1.0, rel_tol=tol)
    i3 = 2.0 * eps ** dim * big_l ** (p - 1.0) / dim * res.value

    i4 = i1
    total = math.fsum([i1, i2, i3, i4])
    return MoserDecomposition(eps, i1, i2, i3, i4, total)
