"""Threshold constants for the fractional Moser-Trudinger problem.

With ``sp = N`` the concentration limit of the Moser family is

    gamma_{s,N} = 2 (N w_N)^2 Gamma(p+1) / N! * S(N, p),
    S(N, p)     = sum_{k>=0} (N+k-1)!/k! * (N+2k)^(-p),

and the blow-up exponent is ``alpha*_{s,N} = N gamma_{s,N}^(s/(N-s))``.

``S`` is evaluated three ways:

* ``direct``: partial sums of the summand (in log form) with an
  Euler-Maclaurin tail, or, with ``accelerate=False``, bare partial sums
  under a rigorous integral-comparison bound;
* ``hurwitz_closed``: the factorial ratio re-centred at ``k + N/2`` with
  exact rational coefficients, giving a finite combination of Hurwitz zetas;
* ``small_N_closed``: Riemann-zeta forms for N = 1..4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import specfun
from .errors import ConvergenceError, DomainError
from .quadrature import gauss_jacobi_panel

DIRECT = "direct"
HURWITZ = "hurwitz_closed"
SMALL_N = "small_N_closed"
METHODS = (DIRECT, HURWITZ, SMALL_N)

_EPS = 2.220446049250313e-16
_ZETA_ARG_MARGIN = 1e-9


@dataclass(frozen=True)
class FractionalParams:
    """Dimension ``dim`` and order ``s`` under the constraint ``s * p = dim``."""

    dim: int
    s: float
    p: float = field(init=False)

    def __post_init__(self):
        if isinstance(self.dim, bool) or int(self.dim) != self.dim or self.dim < 1:
            raise DomainError(f"dimension must be an integer >= 1, got {self.dim!r}")
        if not 0.0 < self.s < 1.0:
            raise DomainError(
                f"s must lie in (0, 1) so that p = N/s > N (sp = N), got s={self.s!r}"
            )
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "s", float(self.s))
        object.__setattr__(self, "p", self.dim / self.s)

    @classmethod
    def from_p(cls, dim: int, p: float) -> "FractionalParams":
        return cls(dim, dim / p)

    @property
    def mt_exponent(self) -> float:
        """Power N/(N-s) of |u| inside the exponential."""
        return self.dim / (self.dim - self.s)

    def as_dict(self) -> dict:
        return {"N": self.dim, "s": self.s, "p": self.p}


@dataclass(frozen=True)
class SeriesEvaluation:
    value: float
    method: str
    terms_used: int
    tail_bound: float


@dataclass(frozen=True)
class GammaConstant:
    params: FractionalParams
    gamma_value: float
    series: SeriesEvaluation
    rel_error: float


def unit_ball_volume(dim: int) -> float:
    """Volume of the unit ball in R^dim, pi^(N/2) / Gamma(N/2 + 1)."""
    if int(dim) != dim or dim < 1:
        raise DomainError(f"dimension must be an integer >= 1, got {dim!r}")
    return math.pi ** (dim / 2.0) / specfun.gamma(dim / 2.0 + 1.0).value


def sphere_area(dim: int) -> float:
    """Surface measure of the unit sphere S^{N-1}, equal to N * w_N."""
    return dim * unit_ball_volume(dim)


# ---------------------------------------------------------------------------
# direct summation


def _log_summand(k, dim: int, p: float):
    # log[(N+k-1)!/k! * (N+2k)^-p] for real k >= 0.  The factorial ratio is
    # the product (k+1)...(k+N-1); summing its logs avoids both overflow and
    # the cancellation of log_gamma(N+k) - log_gamma(k+1) at large k.
    k = np.asarray(k, dtype=float)
    acc = -p * np.log(dim + 2.0 * k)
    for j in range(1, dim):
        acc = acc + np.log(k + j)
    return acc if acc.ndim else float(acc)


def _summand_taylor(x0: float, dim: int, p: float, order: int) -> list[float]:
    """Taylor coefficients of the (continuous) summand about x0."""
    # log f(x0 + h) = sum_j log(x0 + j + h) - p log(N + 2 x0 + 2h)
    c = [0.0] * (order + 1)
    c[0] = _log_summand(x0, dim, p)
    w = dim + 2.0 * x0
    for n in range(1, order + 1):
        sign = 1.0 if n % 2 == 1 else -1.0
        acc = sum(sign / (n * (x0 + j) ** n) for j in range(1, dim))
        acc -= p * sign * (2.0 / w) ** n / n
        c[n] = acc
    g = [0.0] * (order + 1)
    g[0] = math.exp(c[0])
    for n in range(1, order + 1):
        g[n] = sum(k * c[k] * g[n - k] for k in range(1, n + 1)) / n
    return g


def _tail_integral(cut: float, dim: int, p: float) -> tuple[float, float]:
    # int_cut^inf f(x) dx with x = cut/u; integrand ~ u^(p-N-1) near u = 0
    expo = p - dim - 1.0

    def smooth(u):
        x = cut / u
        return np.exp(_log_summand(x, dim, p) - (expo + 2.0) * np.log(u)) * cut

    val, err = gauss_jacobi_panel(smooth, 0.0, 1.0, expo, n=40)
    return val, err


def _direct_accelerated(params: FractionalParams, rel_tol: float) -> SeriesEvaluation:
    dim, p = params.dim, params.p
    cut = max(32, 4 * dim)
    while cut <= 4096:
        ks = np.arange(cut, dtype=float)
        head = math.fsum(np.exp(_log_summand(ks, dim, p))[::-1])
        order = 13
        g = _summand_taylor(float(cut), dim, p, order)
        deriv = [math.factorial(m) * g[m] for m in range(order + 1)]
        integral, q_err = _tail_integral(float(cut), dim, p)
        corrections = [0.5 * deriv[0]]
        for j in range(1, 7):
            b2j = specfun._BERNOULLI[j - 1]
            corrections.append(-b2j / math.factorial(2 * j) * deriv[2 * j - 1])
        next_term = specfun._BERNOULLI[6] / math.factorial(14) * deriv[13]
        value = head + integral + math.fsum(corrections)
        bound = 2.0 * abs(next_term) + 4.0 * q_err + 16 * cut * _EPS * abs(value)
        if bound <= rel_tol * abs(value):
            return SeriesEvaluation(value, DIRECT, cut, bound)
        cut *= 2
    raise ConvergenceError(
        f"direct series for N={dim}, p={p} missed rel_tol={rel_tol}; use the Hurwitz method",
        {"value": value, "tail_bound": bound, "terms": cut // 2},
    )


_PLAIN_TERM_CAP = 1 << 22


def _direct_plain(params: FractionalParams, rel_tol: float) -> SeriesEvaluation:
    dim, p = params.dim, params.p
    total = 0.0
    start = 0
    chunk = 4096
    while start < _PLAIN_TERM_CAP:
        ks = np.arange(start, start + chunk, dtype=float)
        total += math.fsum(np.exp(_log_summand(ks, dim, p))[::-1])
        start += chunk
        chunk *= 2
        cut = float(start)
        # (N+k-1)!/k! <= k^(N-1) (1+N/k)^(N-1) and (N+2k)^-p <= (2k)^-p
        lead = (1.0 + dim / cut) ** (dim - 1) * 2.0 ** (-p)
        tail = lead * (cut ** (dim - 1 - p) + cut ** (dim - p) / (p - dim))
        if tail <= rel_tol * total:
            return SeriesEvaluation(total, DIRECT, start, tail)
    raise ConvergenceError(
        f"plain partial sums for N={dim}, p={p} cannot reach rel_tol={rel_tol} "
        f"within {_PLAIN_TERM_CAP} terms (p too close to N); use the Hurwitz method",
        {"value": total, "tail_bound": tail, "terms": start},
    )


def series_direct(
    params: FractionalParams, rel_tol: float = 1e-12, *, accelerate: bool = True
) -> SeriesEvaluation:
    """Sum S(N, p) from its defining series.

    With ``accelerate`` (default) the tail beyond the cut is the
    Euler-Maclaurin expansion of the continuous summand through the B_12
    term; ``tail_bound`` is twice the first omitted correction plus the
    tail-integral quadrature error.  Without it, terms are summed until the
    integral-comparison bound on the tail drops below ``rel_tol * value``.

    Raises
    ------
    ConvergenceError
        If the requested tolerance cannot be met.
    """
    if not 1e-15 <= rel_tol < 1e-2:
        raise DomainError(f"rel_tol must lie in [1e-15, 1e-2), got {rel_tol!r}")
    if accelerate:
        return _direct_accelerated(params, rel_tol)
    return _direct_plain(params, rel_tol)


# ---------------------------------------------------------------------------
# closed forms


def factorial_ratio_coefficients(dim: int) -> list[Fraction]:
    """Coefficients b_d with (N+k-1)!/k! = sum_d b_d (k + N/2)^d, exactly."""
    shift = Fraction(dim, 2)
    coeffs = [Fraction(1)]
    for j in range(1, dim):
        c = Fraction(j) - shift  # X + j = Y + (j - N/2), Y = X + N/2
        out = [Fraction(0)] * (len(coeffs) + 1)
        for d, b in enumerate(coeffs):
            out[d + 1] += b
            out[d] += c * b
        coeffs = out
    return coeffs


def series_hurwitz_closed(params: FractionalParams) -> SeriesEvaluation:
    """S(N, p) = 2^-p * sum_d b_d zeta(p - d, N/2) with exact rational b_d."""
    dim, p = params.dim, params.p
    coeffs = factorial_ratio_coefficients(dim)
    q = dim / 2.0
    parts = []
    err = 0.0
    for d, b in enumerate(coeffs):
        if b == 0:
            continue
        arg = p - d
        if arg <= 1.0 + _ZETA_ARG_MARGIN:
            raise DomainError(
                f"Hurwitz form needs zeta arguments > 1, got {arg} (N={dim}, p={p})"
            )
        z = specfun.hurwitz_zeta(arg, q)
        parts.append(float(b) * z.value)
        err += abs(float(b)) * z.abs_error_bound
    scale = 2.0 ** (-p)
    value = scale * math.fsum(parts)
    rounding = 4 * len(parts) * _EPS * sum(abs(x) for x in parts) * scale
    return SeriesEvaluation(value, HURWITZ, len(parts), scale * err + rounding)


def series_small_n_closed(params: FractionalParams) -> SeriesEvaluation:
    """Riemann-zeta forms of S(N, p) for N = 1, 2, 3, 4."""
    dim, p = params.dim, params.p
    zeta = specfun.riemann_zeta
    if dim == 1:
        z = zeta(p)
        val = (1.0 - 2.0 ** (-p)) * z.value
        err = z.abs_error_bound
    elif dim == 2:
        z = zeta(p - 1.0)
        val = 2.0 ** (-p) * z.value
        err = 2.0 ** (-p) * z.abs_error_bound
    elif dim == 3:
        z2, z0 = zeta(p - 2.0), zeta(p)
        a = (2.0 ** (p - 2.0) - 1.0) * z2.value
        b = 0.25 * (2.0 ** p - 1.0) * z0.value
        val = 2.0 ** (-p) * (a - b)
        err = (2.0 ** (-2.0) * z2.abs_error_bound + 0.25 * z0.abs_error_bound
               + 4 * _EPS * (abs(a) + abs(b)) * 2.0 ** (-p))
    elif dim == 4:
        z3, z1 = zeta(p - 3.0), zeta(p - 1.0)
        val = 2.0 ** (-p) * (z3.value - z1.value)
        err = 2.0 ** (-p) * (z3.abs_error_bound + z1.abs_error_bound
                             + 4 * _EPS * (z3.value + z1.value))
    else:
        raise DomainError(f"small-N closed form exists for N <= 4 only, got N={dim}")
    return SeriesEvaluation(val, SMALL_N, 0, err)


def evaluate_series(params: FractionalParams, method: str = "auto") -> SeriesEvaluation:
    if method == "auto":
        try:
            return series_hurwitz_closed(params)
        except DomainError:
            return series_direct(params)
    if method in (DIRECT, "direct"):
        return series_direct(params)
    if method in (HURWITZ, "hurwitz"):
        return series_hurwitz_closed(params)
    if method in (SMALL_N, "small_n"):
        return series_small_n_closed(params)
    raise DomainError(f"unknown series method {method!r}")


# ---------------------------------------------------------------------------
# gamma, alpha*


def gamma_prefactor(params: FractionalParams) -> float:
    """2 (N w_N)^2 Gamma(p+1) / N!"""
    dim, p = params.dim, params.p
    area = sphere_area(dim)
    if p + 1.0 < 170.0:
        return 2.0 * area * area * specfun.gamma(p + 1.0).value / math.factorial(dim)
    return math.exp(math.log(2.0 * area * area) + specfun.log_gamma(p + 1.0)
                    - specfun.log_gamma(dim + 1.0))


def gamma_constant(params: FractionalParams, method: str = "auto") -> GammaConstant:
    """Concentration limit gamma_{s,N} of [u_eps]^p for the Moser family."""
    series = evaluate_series(params, method)
    value = gamma_prefactor(params) * series.value
    rel = series.tail_bound / abs(series.value) + 1e-13
    return GammaConstant(params, value, series, rel)


def alpha_star(params: FractionalParams, method: str = "auto") -> float:
    """Blow-up exponent N * gamma^(s/(N-s)).

    Uses the Hurwitz closed form when available, otherwise direct summation.
    """
    g = gamma_constant(params, method).gamma_value
    return params.dim * g ** (params.s / (params.dim - params.s))


def bbm_constant(p: float, dim: int) -> float:
    """(1/p) * int_{S^{N-1}} |<sigma, e>|^p dH^{N-1} = S_{N-2} B((p+1)/2, (N-1)/2) / p."""
    if not p >= 1.0:
        raise DomainError(f"bbm_constant requires p >= 1, got {p!r}")
    if int(dim) != dim or dim < 2:
        raise DomainError(f"bbm_constant requires integer dim >= 2, got {dim!r}")
    lower_sphere = (dim - 1) * unit_ball_volume(dim - 1)
    return lower_sphere * specfun.beta((p + 1.0) / 2.0, (dim - 1.0) / 2.0).value / p


def gamma_limit_s_to_1(dim: int) -> float:
    """lim_{s->1-} (1-s) gamma_{s,N} = N w_N^2 / 2^(N-1)."""
    w = unit_ball_volume(dim)
    return dim * w * w / 2.0 ** (dim - 1)


def moser_classical_exponent(dim: int) -> float:
    """Optimal exponent N (N w_N)^(1/(N-1)) of the integer-order inequality."""
    return dim * sphere_area(dim) ** (1.0 / (dim - 1))


# ---------------------------------------------------------------------------
# limits


def extrapolate_limit(
    hs: Sequence[float],
    values: Sequence[float],
    basis: Sequence[Callable[[float], float]] | None = None,
) -> float:
    """Value at h = 0 of the interpolant of ``values`` in the given basis.

    The default basis is ``1, h, h^2, ...`` (Richardson / Neville
    extrapolation).  The first basis function must be the constant.
    """
    hs = [float(h) for h in hs]
    n = len(hs)
    if basis is None:
        basis = [lambda h, k=k: h ** k for k in range(n)]
    basis = list(basis)[:n]
    if len(basis) != n:
        raise ValueError("need as many basis functions as sample points")
    mat = np.array([[phi(h) for phi in basis] for h in hs])
    coef = np.linalg.solve(mat, np.asarray(values, dtype=float))
    return float(coef[0] * basis[0](0.0))


def _h_log_h(h):
    return h * math.log(h) if h > 0 else 0.0


def _h2_log2_h(h):
    return h * h * math.log(h) ** 2 if h > 0 else 0.0


ALPHA_LIMIT_BASIS = (lambda h: 1.0, _h_log_h, lambda h: h, _h2_log2_h)

DEFAULT_S_GRID = (0.9, 0.95, 0.99, 0.995)


def extrapolated_gamma_limit(dim: int, s_values: Sequence[float] = DEFAULT_S_GRID) -> float:
    """Extrapolate (1-s) gamma_{s,N} to s = 1 (polynomial in 1-s; it is analytic there)."""
    hs = [1.0 - s for s in s_values]
    vals = [(1.0 - s) * gamma_constant(FractionalParams(dim, s)).gamma_value for s in s_values]
    return extrapolate_limit(hs, vals)


def extrapolated_alpha_limit(dim: int = 2, s_values: Sequence[float] = DEFAULT_S_GRID) -> float:
    """Extrapolate (1-s) alpha*_{s,N} to s = 1.

    For N = 2 the expansion carries an ``h log h`` term, so the fit uses
    ``1, h log h, h, h^2 log^2 h`` with ``h = 1 - s``.
    """
    hs = [1.0 - s for s in s_values]
    vals = [(1.0 - s) * alpha_star(FractionalParams(dim, s)) for s in s_values]
    return extrapolate_limit(hs, vals, ALPHA_LIMIT_BASIS)
