"""Independent numerical checks of the radial reduction chain.

The routines here deliberately avoid the package's own quadrature engine:
one-dimensional integrals use ``scipy.integrate.quad`` and Bessel values in
integrands use ``scipy.special.ive``.  The full 2N-dimensional seminorm is
estimated by importance-sampled Monte Carlo.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from . import specfun
from .errors import DomainError, VerificationError
from .exponents import FractionalParams, sphere_area, unit_ball_volume
from .radialnorm import LINEAR_IN_LOG_R, RadialProfile

SPHERE_TOL = 1e-9
BESSEL_INTEGRAL_TOL = 1e-8

# samples per independent batch; each batch draws from its own spawned stream
BATCH_SIZE = 1 << 16
# below this |ln(ry/rx)| the MC increment is taken to first order
_TAYLOR_SWITCH = 1e-6


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    samples: int
    seed: int

    def as_dict(self) -> dict:
        return {"mean": self.mean, "std_error": self.std_error,
                "samples": self.samples, "seed": self.seed}


@dataclass(frozen=True)
class CheckRecord:
    """One line of a verification report."""

    check_name: str
    status: str
    discrepancy: float
    tolerance: float

    def as_dict(self) -> dict:
        return {"check_name": self.check_name, "status": self.status,
                "discrepancy": self.discrepancy, "tolerance": self.tolerance}


def _quad(f, a, b, **kw):
    val, _ = integrate.quad(f, a, b, epsabs=0.0, epsrel=1e-13, limit=400, **kw)
    return val


# ---------------------------------------------------------------------------
# lemma checks


def sphere_exp_closed_form(beta: float, dim: int) -> float:
    """2 pi^(N/2) (2/beta)^(N/2-1) I_{N/2-1}(beta), via specfun.bessel_i."""
    nu = dim / 2.0 - 1.0
    return (2.0 * math.pi ** (dim / 2.0) * (2.0 / beta) ** nu
            * specfun.bessel_i(nu, beta).value)


def _sphere_pair(beta: float, dim: int) -> tuple[float, float]:
    lower = (dim - 1) * unit_ball_volume(dim - 1)
    # factor out e^beta so the integrand stays of order one
    body = _quad(lambda th: math.exp(beta * (math.cos(th) - 1.0)) * math.sin(th) ** (dim - 2),
                 0.0, math.pi)
    return lower * body * math.exp(beta), sphere_exp_closed_form(beta, dim)


def sphere_exp_integral(beta: float, dim: int) -> float:
    """int over S^{N-1} of exp(beta <sigma, e>), as a 1D quadrature.

    Computes (N-1) w_{N-1} int_0^pi e^(beta cos theta) sin(theta)^(N-2) dtheta
    and compares with the Bessel closed form.

    Raises
    ------
    VerificationError
        If quadrature and closed form differ by more than 1e-9 relative.
    """
    if not beta > 0.0:
        raise DomainError(f"beta must be positive, got {beta!r}")
    if int(dim) != dim or dim < 2:
        raise DomainError(f"dim must be an integer >= 2, got {dim!r}")
    quad_value, closed = _sphere_pair(beta, dim)
    rel = abs(quad_value - closed) / abs(closed)
    if rel > SPHERE_TOL:
        raise VerificationError(
            f"sphere integral: quadrature {quad_value!r} vs Bessel form {closed!r} "
            f"(relative {rel:.3g})"
        )
    return quad_value


def bessel_integral_closed_form(r: float, t: float, dim: int) -> float:
    """Gamma(N)/Gamma(N/2) (rt)^(N/2-1) (r^2 + t^2) / |r^2 - t^2|^(N+1)."""
    g = math.gamma(dim) / math.gamma(dim / 2.0)
    return g * (r * t) ** (dim / 2.0 - 1.0) * (r * r + t * t) / abs(r * r - t * t) ** (dim + 1)


def bessel_integral_check(r: float, t: float, dim: int) -> float:
    """Relative discrepancy between quadrature and closed form of
    int_0^inf h^(N/2) e^(-h (r^2 + t^2)) I_{N/2-1}(2 r t h) dh.
    """
    if not (r > 0.0 and t > 0.0):
        raise DomainError("r and t must be positive")
    if r == t:
        raise DomainError("the Bessel integral diverges for r = t")
    if int(dim) != dim or dim < 2:
        raise DomainError(f"dim must be an integer >= 2, got {dim!r}")
    nu = dim / 2.0 - 1.0
    rate = (r - t) ** 2
    two_rt = 2.0 * r * t

    # e^{-h(r^2+t^2)} I_nu(2rth) = ive(nu, 2rth) e^{-h (r-t)^2}
    def f(h):
        return h ** (dim / 2.0) * special.ive(nu, two_rt * h) * math.exp(-h * rate)

    # integrand ~ h^((N-1)/2) e^{-h (r-t)^2}; it is below 1e-30 past `top`
    scale = 1.0 / rate
    top = scale * (80.0 + 2.0 * dim * math.log(1.0 + scale))
    edges = [0.0] + [scale * k for k in (0.5, 2.0, 8.0, 32.0) if scale * k < top] + [top]
    value = math.fsum(_quad(f, a, b) for a, b in zip(edges[:-1], edges[1:]))
    closed = bessel_integral_closed_form(r, t, dim)
    return abs(value - closed) / abs(closed)


def hyper_identity_discrepancy(dim: int, z: float) -> float:
    """|2F1(N/2, (N+1)/2; N/2; z) (1 - z)^((N+1)/2) - 1|, series taken as literally defined."""
    val = specfun.hyp2f1(dim / 2.0, (dim + 1.0) / 2.0, dim / 2.0, z).value
    return abs(val * (1.0 - z) ** ((dim + 1.0) / 2.0) - 1.0)


def hurwitz_half_discrepancy(sarg: float) -> float:
    """Relative gap in zeta(s, 1/2) = (2^s - 1) zeta(s)."""
    lhs = specfun.hurwitz_zeta(sarg, 0.5).value
    rhs = (2.0 ** sarg - 1.0) * specfun.riemann_zeta(sarg).value
    return abs(lhs - rhs) / abs(rhs)


# ---------------------------------------------------------------------------
# Monte Carlo


def _uniform_sphere(rng, n: int, dim: int) -> np.ndarray:
    g = rng.standard_normal((n, dim))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def _inner_scale(profile: RadialProfile) -> float:
    # lower end of the log-uniform radius component
    return profile.breakpoints[0] / 8.0


def _increment(profile: RadialProfile, rx, ry, sq_diff):
    """u(ry) - u(rx), with ``sq_diff`` = ry^2 - rx^2 computed without cancellation.

    For nearly coincident radii the difference of interpolated values is
    rounding noise, which the diagonal weight would amplify; there the
    increment is taken to first order in ln(ry / rx).
    """
    diff = profile.value_at(ry) - profile.value_at(rx)
    if profile.interpolation != LINEAR_IN_LOG_R:
        return diff
    dlog = np.log1p(sq_diff / (rx * (rx + ry)))
    logs = profile.log_breakpoints
    slopes = np.diff(np.asarray(profile.values)) / np.diff(logs)
    idx = np.searchsorted(logs, np.log(rx), side="right") - 1
    inside = (idx >= 0) & (idx < len(slopes))
    slope = np.where(inside, slopes[np.clip(idx, 0, len(slopes) - 1)], 0.0)
    return np.where(np.abs(dlog) < _TAYLOR_SWITCH, slope * dlog, diff)


def _batch_sums(profile, params, n, rng):
    dim, p = params.dim, params.p
    big_r = profile.support_radius
    r_lo = _inner_scale(profile)
    ball = unit_ball_volume(dim) * big_r ** dim
    area = sphere_area(dim)
    log_span = math.log(big_r / r_lo)

    # x: equal mixture of uniform-in-ball and log-uniform radius on [r_lo, R]
    uniform = rng.random(n) < 0.5
    radius = np.where(uniform, big_r * rng.random(n) ** (1.0 / dim),
                      r_lo * np.exp(log_span * rng.random(n)))
    x = _uniform_sphere(rng, n, dim) * radius[:, None]
    q_x = 0.5 / ball + np.where(radius >= r_lo,
                                0.5 / (area * radius ** dim * log_span), 0.0)

    # rho = |y - x| on (0, 2R]: density ~ rho^(p-N-1) below h, ~ h^p rho^(-N-1) above,
    # with the break h tracking the local scale |x|
    expo = p - dim
    top = 2.0 * big_r
    h = np.clip(radius, r_lo, top)
    mass_lo = h ** expo / expo
    mass_hi = h ** p * (h ** (-dim) - top ** (-dim)) / dim
    total = mass_lo + mass_hi
    u1, u2 = rng.random(n), 1.0 - rng.random(n)
    low = u1 * total < mass_lo
    rho_lo = h * u2 ** (1.0 / expo)
    rho_hi = (h ** (-dim) - u2 * (h ** (-dim) - top ** (-dim))) ** (-1.0 / dim)
    rho = np.where(low, rho_lo, rho_hi)
    # rho^(-N-1) / f(rho), written so the diagonal factor rho^(-p) stays explicit
    ratio = np.where(low, rho ** (-p), h ** (-p)) * total

    e = _uniform_sphere(rng, n, dim)
    y = x + rho[:, None] * e
    ry = np.linalg.norm(y, axis=1)
    w = np.abs(_increment(profile, radius, ry, rho * (2.0 * np.einsum("ij,ij->i", x, e) + rho))) ** p
    # pairs with y outside the ball stand in for the mirrored (x outside, y inside) region
    w = np.where(ry > big_r, 2.0 * w, w)
    vals = area * w * ratio / q_x
    return float(vals.sum()), float((vals * vals).sum())


def _far_field(profile: RadialProfile, params: FractionalParams) -> float:
    # |x - y| > 2R forces y outside the support: 2 w_N (2R)^-N int_{B_R} |u|^p dx
    dim, p = params.dim, params.p
    big_r = profile.support_radius
    pts = sorted({0.0, *profile.breakpoints})
    body = math.fsum(
        _quad(lambda r: abs(profile.value_at(r)) ** p * r ** (dim - 1), a, b)
        for a, b in zip(pts[:-1], pts[1:])
    )
    return 2.0 * unit_ball_volume(dim) * (2.0 * big_r) ** (-dim) * sphere_area(dim) * body


def mc_gagliardo(
    profile: RadialProfile,
    params: FractionalParams,
    samples: int = 1_000_000,
    seed: int = 0,
    *,
    target_rel_error: float | None = None,
) -> McEstimate:
    """Monte Carlo estimate of the full-space integral of |u(x)-u(y)|^p / |x-y|^(2N).

    The first point x is drawn from an equal mixture of the uniform law on
    B_R (R the support radius) and a law with log-uniform radius, so that
    every concentration scale of the profile is visited.  The step length
    rho = |y - x| in (0, 2R] has density proportional to rho^(p-N-1) below
    the local scale |x|, which cancels the diagonal behaviour of the
    integrand, and to rho^(-N-1) above it.  The far stratum rho > 2R is
    integrated deterministically.

    Samples are drawn in batches of ``BATCH_SIZE`` from PCG64 streams spawned
    off ``SeedSequence(seed)``, so the estimate depends only on
    ``(samples, seed)``.
    """
    if params.dim not in (2, 3):
        raise DomainError(f"Monte Carlo oracle supports N in {{2, 3}}, got {params.dim}")
    if samples < 10_000:
        raise DomainError(f"need at least 1e4 samples, got {samples}")
    if profile.is_zero:
        return McEstimate(0.0, 0.0, samples, seed)
    n_batches = -(-samples // BATCH_SIZE)
    streams = np.random.SeedSequence(seed).spawn(n_batches)
    total = total_sq = 0.0
    for i, ss in enumerate(streams):
        n = min(BATCH_SIZE, samples - i * BATCH_SIZE)
        s1, s2 = _batch_sums(profile, params, n, np.random.Generator(np.random.PCG64(ss)))
        total += s1
        total_sq += s2
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    std_error = math.sqrt(var / (samples - 1))
    estimate = mean + _far_field(profile, params)
    if target_rel_error is not None and std_error > target_rel_error * abs(estimate):
        warnings.warn(
            f"Monte Carlo std error {std_error:.3g} misses the requested "
            f"{target_rel_error:g} relative; returning the partial estimate",
            RuntimeWarning,
            stacklevel=2,
        )
    return McEstimate(estimate, std_error, samples, seed)


# ---------------------------------------------------------------------------
# suites used by the `verify` command


def _record(name, disc, tol):
    status = "pass" if disc <= tol else "fail"
    return CheckRecord(name, status, float(disc), float(tol))


SPHERE_POINTS = ((1.0, 2), (2.0, 3), (1e-6, 2), (1e-6, 3), (0.5, 4),
                 (5.0, 2), (3.0, 5), (10.0, 3), (0.1, 6), (7.5, 4))
BESSEL_POINTS = ((1.0, 2.0, 2), (0.5, 3.0, 3), (2.0, 1.0, 2), (0.7, 0.4, 4),
                 (1.0, 1.5, 3), (0.2, 0.9, 2), (3.0, 2.5, 5), (1.2, 0.3, 3),
                 (0.9, 1.1, 2), (4.0, 1.0, 4))
HURWITZ_POINTS = (1.5, 2.0, 3.7, 10.0)
HYPER_DIMS = (2, 3, 4, 5)
HYPER_Z = tuple(round(0.1 * k, 1) for k in range(1, 10))


def sphere_suite() -> list[CheckRecord]:
    out = []
    for beta, dim in SPHERE_POINTS:
        q, closed = _sphere_pair(beta, dim)
        out.append(_record(f"sphere_exp_integral(beta={beta:g}, N={dim})",
                           abs(q - closed) / abs(closed), SPHERE_TOL))
    return out


def lemma_suite() -> list[CheckRecord]:
    out = sphere_suite()
    for r, t, dim in BESSEL_POINTS:
        out.append(_record(f"bessel_integral(r={r:g}, t={t:g}, N={dim})",
                           bessel_integral_check(r, t, dim), BESSEL_INTEGRAL_TOL))
    for dim in HYPER_DIMS:
        for z in HYPER_Z:
            out.append(_record(f"hyper_identity(N={dim}, z={z:g})",
                               hyper_identity_discrepancy(dim, z), 1e-10))
    for sarg in HURWITZ_POINTS:
        out.append(_record(f"hurwitz_half_shift(s={sarg:g})",
                           hurwitz_half_discrepancy(sarg), 1e-11))
    return out


def specfun_suite() -> list[CheckRecord]:
    """specfun against scipy.special at fixed points."""
    out = []
    for x in (0.1, 0.5, 1.0, 2.5, 7.3, 33.3, 120.0, 169.5):
        ref = special.gamma(x)
        out.append(_record(f"gamma({x:g})", abs(specfun.gamma(x).value - ref) / ref, 1e-13))
    for x, y in ((0.5, 1.5), (2.0, 3.0), (1.3, 2.4), (40.0, 150.0)):
        ref = special.beta(x, y)
        out.append(_record(f"beta({x:g}, {y:g})", abs(specfun.beta(x, y).value - ref) / ref, 1e-12))
    for nu, z in ((0.0, 1.0), (0.5, 1.0), (1.0, 3.0), (-1.0, 2.0), (2.5, 10.0)):
        ref = special.iv(nu, z)
        out.append(_record(f"bessel_i({nu:g}, {z:g})",
                           abs(specfun.bessel_i(nu, z).value - ref) / ref, 1e-13))
    for a, b, c, z in ((1.0, 1.5, 1.0, 0.5), (1.5, 2.0, 1.5, 0.25), (0.3, 0.7, 1.9, -0.8)):
        ref = special.hyp2f1(a, b, c, z)
        out.append(_record(f"hyp2f1({a:g}, {b:g}; {c:g}; {z:g})",
                           abs(specfun.hyp2f1(a, b, c, z).value - ref) / abs(ref), 1e-12))
    for sarg, q in ((2.0, 1.0), (3.0, 1.0), (1.001, 1.0), (60.0, 1.0), (2.0, 0.5),
                    (3.5, 1.5), (4.0, 2.5)):
        ref = special.zeta(sarg, q)
        out.append(_record(f"hurwitz_zeta({sarg:g}, {q:g})",
                           abs(specfun.hurwitz_zeta(sarg, q).value - ref) / ref, 1e-12))
    return out


def reduction_profiles() -> dict[str, RadialProfile]:
    """Three test profiles: a Moser-type profile, a smooth bump and a tent."""
    from .radialnorm import moser_profile

    radii = np.geomspace(0.02, 1.0, 40)
    bump = RadialProfile.from_function(lambda r: (1.0 - r * r) ** 2, radii)
    tent = RadialProfile((0.3, 0.6, 1.0), (1.0, 0.8, 0.0))
    return {
        "moser_eps_0.1": moser_profile(0.1, FractionalParams(2, 0.5)),
        "bump": bump,
        "tent": tent,
    }


REDUCTION_PARAMS = ((2, 0.5), (2, 0.7), (3, 0.5))


def reduction_suite(samples: int = 1_000_000, seed: int = 0) -> list[CheckRecord]:
    """Monte Carlo in 2N dimensions against the radial reduction.

    The reported discrepancy is |mc - radial| / max(3 sigma, 0.02 radial), so
    a check passes when it is at most 1.
    """
    from .radialnorm import seminorm_radial

    out = []
    for dim, s in REDUCTION_PARAMS:
        params = FractionalParams(dim, s)
        for name, prof in reduction_profiles().items():
            radial = seminorm_radial(prof, params, 1e-8).value_p
            mc = mc_gagliardo(prof, params, samples, seed)
            allowed = max(3.0 * mc.std_error, 0.02 * radial)
            out.append(_record(f"reduction({name}, N={dim}, s={s:g})",
                               abs(mc.mean - radial) / allowed, 1.0))
    return out
