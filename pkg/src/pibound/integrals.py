"""Logarithmic integral and exact integrals of the prime step functions.

Li(x) = integral of dt/log t from 2 (lower limit 2 throughout) comes in
two flavors: an adaptive-Simpson point evaluation and a cumulative
per-unit-interval Gauss-Legendre grid for scans. The two prime
integrals — theta(t)/(t log^2 t) and pi(t)/t from 2 to x — are computed
exactly piecewise: the integrand numerators are constant between
consecutive primes, so each piece has a closed-form antiderivative and
the only error is accumulated rounding, reported as c*n*eps*|value|.
The two Abel residuals are the analytically-zero combinations tying
pi, theta, and these integrals together; they measure the combined
floating-point error of the whole stack.
"""

from __future__ import annotations

import math
import sys
import weakref
from dataclasses import dataclass

import numpy as np

from .accum import compensated_prefix
from .errors import DomainError

EPS = sys.float_info.epsilon
PIECEWISE_C = 64  # covers worst-case per-piece log/reciprocal rounding through 1e8 scale
SIMPSON_MAX_DEPTH = 60
_PANEL_CHUNK = 1 << 18

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


@dataclass(frozen=True)
class IntegralValue:
    """A computed integral with an error bound.

    piecewise_exact values are exact up to rounding and carry the
    c*n*eps*|value| bound (n = piece count); adaptive_quadrature values
    carry max(tol, rounding bound).
    """

    value: float
    abs_error_bound: float
    method: str


def _inv_log(t: float) -> float:
    return 1.0 / math.log(t)


def _simpson(h: float, fa: float, fm: float, fb: float) -> float:
    return h / 6.0 * (fa + 4.0 * fm + fb)


def li(x: float, tol: float = 1e-10) -> IntegralValue:
    """Adaptive-Simpson Li(x) with Richardson extrapolation.

    Splits the local tolerance in half per subdivision; recursion depth
    is capped at 60, far past what 1/log t ever needs on [2, x].
    """
    x = float(x)
    if x < 2:
        raise DomainError(f"Li is taken from 2; x must be >= 2, got {x!r}")
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    if x == 2:
        return IntegralValue(0.0, 0.0, "adaptive_quadrature")
    panels = 0

    def adapt(a: float, b: float, fa: float, fm: float, fb: float,
              whole: float, tol: float, depth: int) -> float:
        nonlocal panels
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = _inv_log(lm), _inv_log(rm)
        left = _simpson(m - a, fa, flm, fm)
        right = _simpson(b - m, fm, frm, fb)
        delta = left + right - whole
        if depth >= SIMPSON_MAX_DEPTH or abs(delta) <= 15.0 * tol:
            panels += 2
            return left + right + delta / 15.0
        half = 0.5 * tol
        return (adapt(a, m, fa, flm, fm, left, half, depth + 1)
                + adapt(m, b, fm, frm, fb, right, half, depth + 1))

    fa, fb = _inv_log(2.0), _inv_log(x)
    fm = _inv_log(0.5 * (2.0 + x))
    whole = _simpson(x - 2.0, fa, fm, fb)
    value = adapt(2.0, x, fa, fm, fb, whole, tol, 0)
    bound = max(tol, 8.0 * panels * EPS * abs(value))
    return IntegralValue(value, bound, "adaptive_quadrature")


def li_int_prefix(hi: int) -> np.ndarray:
    """Li at every integer in [2, hi]: out[i] = Li(2 + i).

    One 8-point Gauss-Legendre panel per unit interval, accumulated in
    chunks; absolute error stays under ~1e-8 through hi = 10^6.
    """
    hi = int(hi)
    if hi < 2:
        raise DomainError(f"hi must be >= 2, got {hi}")
    out = np.empty(hi - 1, dtype=np.float64)
    out[0] = 0.0
    offset = 0.0
    pos = 1
    half_nodes = 0.5 * (_GL_NODES + 1.0)
    for lo in range(2, hi, _PANEL_CHUNK):
        stop = min(lo + _PANEL_CHUNK, hi)
        starts = np.arange(lo, stop, dtype=np.float64)
        mids = starts[:, None] + half_nodes[None, :]
        vals = (0.5 * _GL_WEIGHTS / np.log(mids)).sum(axis=1)
        seg = np.cumsum(vals)
        out[pos : pos + seg.size] = offset + seg
        offset = float(out[pos + seg.size - 1])
        pos += seg.size
    return out


def li_at(xs: np.ndarray, prefix: np.ndarray) -> np.ndarray:
    """Li at arbitrary points using an integer prefix plus one partial panel."""
    xs = np.asarray(xs, dtype=np.float64)
    hi = prefix.size + 1
    if xs.size and (xs.min() < 2 or math.floor(float(xs.max())) > hi):
        raise DomainError(f"points must lie in [2, {hi + 1})")
    k = np.floor(xs).astype(np.int64)
    base = prefix[k - 2]
    h = 0.5 * (xs - k)
    mids = k[:, None] + (_GL_NODES[None, :] + 1.0) * h[:, None]
    # zero-width panels put all nodes at k; the h factor kills the contribution
    partial = (h[:, None] * _GL_WEIGHTS[None, :] / np.log(np.maximum(mids, 2.0))).sum(axis=1)
    return base + partial


_PREFIX_CACHE: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def _piece_prefixes(table):
    """Cumulative full-piece integrals up to each prime, cached per table.

    Index i holds the integral from 2 to primes[i] over the pieces on
    which the step numerator is constant.
    """
    cached = _PREFIX_CACHE.get(table)
    if cached is not None:
        return cached
    lp = np.log(table.primes.astype(np.float64))
    inv = 1.0 / lp
    theta_vals = table.theta_prefix[0] + table.theta_prefix[1]
    n = lp.size
    pi_terms = np.arange(1, n, dtype=np.float64) * np.diff(lp)
    theta_terms = theta_vals[:-1] * (inv[:-1] - inv[1:])
    pi_pre = np.zeros(n, dtype=np.float64)
    theta_pre = np.zeros(n, dtype=np.float64)
    for terms, pre in ((pi_terms, pi_pre), (theta_terms, theta_pre)):
        vals, corr = compensated_prefix(terms.tolist())
        if vals:
            pre[1:] = np.asarray(vals) + np.asarray(corr)
    cached = (lp, inv, pi_pre, theta_pre)
    _PREFIX_CACHE[table] = cached
    return cached


def _query_index(table, x: float) -> int:
    if x < 2:
        raise DomainError(f"integrals are taken from 2; x must be >= 2, got {x!r}")
    k = table.pi(x) - 1
    assert k >= 0
    return k


def pi_integral(x: float, table) -> IntegralValue:
    """Exact integral of pi(t)/t from 2 to x: pieces are C*log(b/a)."""
    x = float(x)
    k = _query_index(table, x)
    lp, _, pi_pre, _ = _piece_prefixes(table)
    value = float(pi_pre[k] + (k + 1) * (math.log(x) - lp[k]))
    return IntegralValue(value, PIECEWISE_C * (k + 1) * EPS * abs(value), "piecewise_exact")


def theta_integral(x: float, table) -> IntegralValue:
    """Exact integral of theta(t)/(t log^2 t) from 2 to x.

    Antiderivative of C/(t log^2 t) is -C/log t, so each piece is
    C*(1/log a - 1/log b).
    """
    x = float(x)
    k = _query_index(table, x)
    _, inv, _, theta_pre = _piece_prefixes(table)
    value = float(theta_pre[k] + table.theta(x) * (inv[k] - 1.0 / math.log(x)))
    return IntegralValue(value, PIECEWISE_C * (k + 1) * EPS * abs(value), "piecewise_exact")


def pi_integral_at(xs: np.ndarray, table):
    """Vectorized pi_integral; returns (values, error_bounds)."""
    xs = np.asarray(xs, dtype=np.float64)
    if xs.size and xs.min() < 2:
        raise DomainError("integrals are taken from 2; all points must be >= 2")
    lp, _, pi_pre, _ = _piece_prefixes(table)
    idx = table.pi_at(xs)
    k = idx - 1
    values = pi_pre[k] + idx * (np.log(xs) - lp[k])
    return values, PIECEWISE_C * idx * EPS * np.abs(values)


def theta_integral_at(xs: np.ndarray, table):
    """Vectorized theta_integral; returns (values, error_bounds)."""
    xs = np.asarray(xs, dtype=np.float64)
    if xs.size and xs.min() < 2:
        raise DomainError("integrals are taken from 2; all points must be >= 2")
    _, inv, _, theta_pre = _piece_prefixes(table)
    idx = table.pi_at(xs)
    k = idx - 1
    values = theta_pre[k] + table.theta_at(xs) * (inv[k] - 1.0 / np.log(xs))
    return values, PIECEWISE_C * idx * EPS * np.abs(values)


def abel_pi_residual(x: float, table) -> float:
    """pi(x) - theta(x)/log x - theta_integral(x); analytically zero."""
    x = float(x)
    if x < 2:
        raise DomainError(f"x must be >= 2, got {x!r}")
    return table.pi(x) - table.theta(x) / math.log(x) - theta_integral(x, table).value


def abel_theta_residual(x: float, table) -> float:
    """theta(x) - pi(x) log x + pi_integral(x); analytically zero."""
    x = float(x)
    if x < 2:
        raise DomainError(f"x must be >= 2, got {x!r}")
    return table.theta(x) - table.pi(x) * math.log(x) + pi_integral(x, table).value
