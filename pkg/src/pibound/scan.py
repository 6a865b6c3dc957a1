"""Range verification scans over a grid of evaluation points.

Grids combine by comma: "integers", "log:N" (N log-spaced points), and
"prime-adjacent" (each prime p in range plus the float just below it,
where an upper bound on the pi step function is locally tightest). The
union is sorted, deduplicated, filtered to the kind's domain, and
evaluated in chunks with the vectorized margin path; results aggregate
min margin, every violating point, and ceiling near-ties.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bounds as _bounds
from .bounds import BoundKind
from .errors import DomainError, OutOfRangeError
from .integrals import li_at, li_int_prefix

_CHUNK = 1 << 20


@dataclass(frozen=True)
class ScanResult:
    """Aggregate of one bound scanned over one grid.

    violations holds every evaluated (x, margin) with margin < 0;
    asserted_violations is its subset at x past the kind's validity
    threshold — the part that fails verification. near_ties lists x
    whose pre-ceiling value sat within 2^-40 of an integer.
    """

    kind: BoundKind
    lo: float
    hi: float
    grid: str
    points_evaluated: int
    min_margin: float
    argmin_x: float
    violations: tuple
    near_ties: tuple
    asserted_violations: tuple

    @property
    def ok(self) -> bool:
        return not self.asserted_violations


def build_grid(lo: float, hi: float, grid: str, table) -> np.ndarray:
    """Sorted unique union of the comma-separated grid parts."""
    if not (2 <= lo <= hi):
        raise DomainError(f"need 2 <= lo <= hi, got lo={lo!r}, hi={hi!r}")
    if hi > table.limit:
        raise OutOfRangeError(f"hi={hi!r} exceeds table limit {table.limit}")
    parts = []
    for spec in grid.split(","):
        spec = spec.strip()
        if spec == "integers":
            parts.append(np.arange(math.ceil(lo), math.floor(hi) + 1, dtype=np.float64))
        elif spec == "prime-adjacent":
            ps = table.primes_in(lo - 1, hi).astype(np.float64)
            ps = ps[ps >= lo]
            below = np.nextafter(ps, -np.inf)
            parts.append(ps)
            parts.append(below[below >= lo])
        elif spec.startswith("log:"):
            try:
                n = int(spec[4:])
            except ValueError:
                raise DomainError(f"bad grid spec {spec!r}") from None
            if n < 1:
                raise DomainError(f"log grid needs >= 1 points, got {n}")
            parts.append(np.geomspace(lo, hi, n))
        else:
            raise DomainError(f"unknown grid spec {spec!r}")
    xs = np.unique(np.concatenate(parts)) if parts else np.empty(0)
    return xs[(xs >= lo) & (xs <= hi)]


def scan_bound(kind: BoundKind, lo: float, hi: float, table,
               grid: str = "integers") -> ScanResult:
    """Evaluate kind over the grid and aggregate margins."""
    xs = build_grid(float(lo), float(hi), grid, table)
    xs = xs[_bounds.domain_mask(kind, xs)]
    info = kind.info
    prefix = None
    if info.needs_li and xs.size:
        prefix = li_int_prefix(int(math.floor(float(xs.max()))))
    min_margin = math.inf
    argmin_x = math.nan
    violations: list[tuple[float, float]] = []
    ties: list[float] = []
    asserted_violations: list[tuple[float, float]] = []
    for start in range(0, xs.size, _CHUNK):
        chunk = xs[start : start + _CHUNK]
        pis = table.pi_at(chunk)
        thetas = table.theta_at(chunk) if info.needs_theta else None
        lis = li_at(chunk, prefix) if info.needs_li else None
        _, margins, tie_mask = _bounds.margins_at(kind, chunk, pis, thetas, lis)
        i = int(np.argmin(margins)) if margins.size else -1
        if i >= 0 and margins[i] < min_margin:
            min_margin = float(margins[i])
            argmin_x = float(chunk[i])
        bad = np.flatnonzero(margins < 0)
        if bad.size:
            amask = _bounds.asserted_mask(kind, chunk[bad])
            for x_bad, m_bad, a in zip(chunk[bad], margins[bad], amask):
                v = (float(x_bad), float(m_bad))
                violations.append(v)
                if a:
                    asserted_violations.append(v)
        if tie_mask is not None and tie_mask.any():
            ties.extend(float(t) for t in chunk[tie_mask])
    return ScanResult(
        kind=kind, lo=float(lo), hi=float(hi), grid=grid,
        points_evaluated=int(xs.size), min_margin=min_margin, argmin_x=argmin_x,
        violations=tuple(violations), near_ties=tuple(ties),
        asserted_violations=tuple(asserted_violations),
    )


def evaluate_columns(xs: np.ndarray, table, kinds):
    """Per-point pi, theta, and (value, margin) columns for each kind.

    Points outside a kind's domain get nan in that kind's columns.
    Returns (pis, thetas, [(kind, values, margins), ...]).
    """
    xs = np.asarray(xs, dtype=np.float64)
    pis = table.pi_at(xs)
    thetas = table.theta_at(xs)
    prefix = None
    if any(k.info.needs_li for k in kinds):
        in_li = xs[xs >= 3]
        if in_li.size:
            prefix = li_int_prefix(max(3, int(math.floor(float(in_li.max())))))
    cols = []
    for kind in kinds:
        mask = _bounds.domain_mask(kind, xs)
        values = np.full(xs.size, math.nan)
        margins = np.full(xs.size, math.nan)
        if mask.any():
            sub = xs[mask]
            lis = li_at(sub, prefix) if kind.info.needs_li else None
            th = thetas[mask] if kind.info.needs_theta else None
            v, m, _ = _bounds.margins_at(kind, sub, pis[mask], th, lis)
            values[mask] = v
            margins[mask] = m
        cols.append((kind, values, margins))
    return pis, thetas, cols


@dataclass(frozen=True)
class ThresholdResult:
    """Empirical validity threshold of a bound on a scan grid.

    x0 is the smallest scanned point from which every later scanned
    point has nonnegative margin (None when the last point itself
    violates); stated_from is the kind's stated threshold when one
    exists, for side-by-side reporting.
    """

    kind: BoundKind
    x0: float | None
    stated_from: float | None
    empirical: bool
    scan: ScanResult


def threshold_scan(kind: BoundKind, table, lo: float = 2.0,
                   hi: float | None = None, grid: str = "integers") -> ThresholdResult:
    """Find the empirical x0 for kind over the scanned grid."""
    hi = float(table.limit if hi is None else hi)
    result = scan_bound(kind, lo, hi, table, grid=grid)
    xs = build_grid(float(lo), hi, grid, table)
    xs = xs[_bounds.domain_mask(kind, xs)]
    info = kind.info
    if not result.violations:
        x0 = float(xs[0]) if xs.size else None
    else:
        worst = max(x for x, _ in result.violations)
        nxt = int(np.searchsorted(xs, worst, side="right"))
        x0 = float(xs[nxt]) if nxt < xs.size else None
    stated_from = None if info.empirical else info.asserted_from
    return ThresholdResult(kind=kind, x0=x0, stated_from=stated_from,
                           empirical=info.empirical or stated_from is None, scan=result)
