"""One-dimensional quadrature engine.

Two building blocks:

* :func:`adaptive_gk15` -- globally adaptive Gauss-Kronrod (7/15) bisection.
  The error estimate is the plain |K15 - G7| difference, which is
  conservative for smooth integrands.
* :func:`gauss_jacobi_panel` -- one panel with an algebraic endpoint weight
  ``|x - x0|**beta``, for integrands of the form ``|x - x0|**beta * h(x)``
  where ``h`` is smooth.

Integrands are vectorized: they receive a 1-D ``ndarray`` of nodes.
Panel contributions are accumulated in left-to-right order, so results do
not depend on the refinement history.
"""

from __future__ import annotations

import functools
import heapq
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.special import roots_jacobi

from .errors import ConvergenceError

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# 15 nodes on [-1, 1] and the matching Kronrod / Gauss weights
NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[1:7:2] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[9:14:2] = _WG[2::-1]

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    panels: int


def gk15_panel(f: Integrand, a: float, b: float) -> tuple[float, float]:
    """Apply the 15-point Kronrod rule on [a, b]; return (value, |K15 - G7|)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fx = np.asarray(f(mid + half * NODES), dtype=float)
    k = half * float(KRONROD_WEIGHTS @ fx)
    g = half * float(GAUSS_WEIGHTS @ fx)
    return k, abs(k - g)


def adaptive_gk15(
    f: Integrand,
    a: float,
    b: float,
    *,
    rel_tol: float = 1e-10,
    abs_tol: float = 0.0,
    breakpoints: Sequence[float] = (),
    max_panels: int = 4000,
) -> QuadResult:
    """Integrate ``f`` over [a, b] by global adaptive bisection.

    Interior ``breakpoints`` (kinks or jumps of the integrand) become initial
    panel edges.  Refinement stops when the summed error estimate is at most
    ``max(abs_tol, rel_tol * |value|)``.

    Raises
    ------
    ConvergenceError
        If the tolerance is not met within ``max_panels`` panels.
    """
    if b < a:
        res = adaptive_gk15(f, b, a, rel_tol=rel_tol, abs_tol=abs_tol,
                            breakpoints=breakpoints, max_panels=max_panels)
        return QuadResult(-res.value, res.error, res.panels)
    edges = sorted({a, b, *[x for x in breakpoints if a < x < b]})
    heap = []
    done = {}
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi <= lo:
            continue
        val, err = gk15_panel(f, lo, hi)
        heapq.heappush(heap, (-err, lo, hi, val))
    total_err = sum(-h[0] for h in heap)
    total_val = sum(h[3] for h in heap)
    n_panels = len(heap)
    while heap and total_err > max(abs_tol, rel_tol * abs(total_val)):
        if n_panels >= max_panels:
            raise ConvergenceError(
                f"adaptive_gk15 on [{a}, {b}] exceeded {max_panels} panels",
                {"value": total_val, "error": total_err, "panels": n_panels},
            )
        neg_err, lo, hi, val = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            # panel can no longer be split in floating point
            done[(lo, hi)] = (val, -neg_err)
            continue
        v1, e1 = gk15_panel(f, lo, mid)
        v2, e2 = gk15_panel(f, mid, hi)
        total_val += v1 + v2 - val
        total_err += e1 + e2 + neg_err
        heapq.heappush(heap, (-e1, lo, mid, v1))
        heapq.heappush(heap, (-e2, mid, hi, v2))
        n_panels += 1
    for neg_err, lo, hi, val in heap:
        done[(lo, hi)] = (val, -neg_err)
    keys = sorted(done)
    value = math.fsum(done[k][0] for k in keys)
    error = math.fsum(done[k][1] for k in keys)
    if error > max(abs_tol, rel_tol * abs(value)) and error > 64 * np.finfo(float).eps * abs(value):
        raise ConvergenceError(
            f"adaptive_gk15 on [{a}, {b}] stalled at error {error:.3g}",
            {"value": value, "error": error, "panels": len(keys)},
        )
    return QuadResult(value, error, len(keys))


@functools.lru_cache(maxsize=256)
def _jacobi_rule(n: int, beta: float):
    x, w = roots_jacobi(n, 0.0, beta)
    return x, w


def gauss_jacobi_panel(
    h: Integrand,
    x0: float,
    x1: float,
    beta: float,
    *,
    n: int = 30,
) -> tuple[float, float]:
    """Integrate ``|x - x0|**beta * h(x)`` over the panel between x0 and x1.

    ``x0`` is the singular endpoint and may lie on either side of ``x1``.
    The error estimate compares ``n`` against ``2n/3`` nodes.
    """
    if not beta > -1.0:
        raise ValueError(f"endpoint exponent must exceed -1, got {beta}")
    width = abs(x1 - x0)
    direction = 1.0 if x1 > x0 else -1.0

    def rule(m):
        y, w = _jacobi_rule(m, beta)  # weight (1 + y)^beta on [-1, 1]
        x = x0 + direction * width * 0.5 * (1.0 + y)
        return (0.5 * width) ** (beta + 1.0) * float(w @ np.asarray(h(x), dtype=float))

    fine = rule(n)
    coarse = rule(max(4, (2 * n) // 3))
    return fine, abs(fine - coarse)
