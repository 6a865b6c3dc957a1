"""Bound expressions for the prime counting function.

Eleven registered kinds: the ceiling and sharp forms of the counting
bound, its geometric partial sums, the 1.3-constant and linear
simplifications, the classical comparison bounds (Chebyshev pair, the
intro upper bound, the Dusart pair), and the Li gap bound. Each kind
carries a direction, an evaluable domain, and the x-threshold from
which the inequality is asserted; margins are direction-aware so that
holds <=> margin >= 0 for every kind. Scalar evaluation produces
BoundReports; margins_at is the vectorized path used by range scans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

LN2 = math.log(2.0)
CHEBYSHEV_C1 = 0.92129
DEFAULT_J_MAX = 64
NEAR_TIE_EPS = 2.0 ** -40
LI_GAP_EMPIRICAL_FROM = 11.0  # smallest integer from which the gap bound held on a full scan


@dataclass(frozen=True)
class KindInfo:
    direction: str  # "upper" | "lower" | "gap"
    domain_min: float
    domain_open: bool
    asserted_from: float | None
    asserted_open: bool = False
    empirical: bool = False
    needs_theta: bool = False
    needs_li: bool = False


KINDS: dict[str, KindInfo] = {
    "theorem1_ceiling": KindInfo("upper", 2.0, False, 2.0, needs_theta=True),
    "theorem1_sharp": KindInfo("upper", 2.0, True, 2.0, asserted_open=True, needs_theta=True),
    "geometric": KindInfo("upper", 2.0, True, None, needs_theta=True),
    "asymptotic_13": KindInfo("upper", 1.0, True, 2.0),
    "linear_rest": KindInfo("upper", -math.inf, True, 3.0),
    "chebyshev_lower": KindInfo("lower", 1.0, True, None),
    "chebyshev_upper": KindInfo("upper", 1.0, True, None),
    "intro_upper": KindInfo("upper", 1.0, True, 2.0),
    "dusart_lower": KindInfo("lower", math.e, True, 5393.0),
    "dusart_upper": KindInfo("upper", math.exp(1.1), True, 60184.0),
    "li_gap": KindInfo("gap", 3.0, False, LI_GAP_EMPIRICAL_FROM, empirical=True, needs_li=True),
}


@dataclass(frozen=True)
class BoundKind:
    """A registered bound tag plus the params that tag requires.

    geometric requires j_max, the chebyshev pair requires c1; required
    params left as None are filled with the canonical defaults, and
    params a tag does not take must stay None.
    """

    tag: str
    j_max: int | None = None
    c1: float | None = None

    def __post_init__(self) -> None:
        if self.tag not in KINDS:
            raise DomainError(f"unknown bound tag {self.tag!r}")
        if self.tag == "geometric":
            j = DEFAULT_J_MAX if self.j_max is None else int(self.j_max)
            if j < 0:
                raise DomainError("j_max must be nonnegative")
            object.__setattr__(self, "j_max", j)
        elif self.j_max is not None:
            raise DomainError(f"{self.tag} takes no j_max")
        if self.tag in ("chebyshev_lower", "chebyshev_upper"):
            c1 = CHEBYSHEV_C1 if self.c1 is None else float(self.c1)
            if c1 <= 0:
                raise DomainError("c1 must be positive")
            object.__setattr__(self, "c1", c1)
        elif self.c1 is not None:
            raise DomainError(f"{self.tag} takes no c1")

    @property
    def info(self) -> KindInfo:
        return KINDS[self.tag]


@dataclass(frozen=True)
class BoundReport:
    """One bound evaluated at one point.

    margin is bound - pi for upper kinds, pi - bound for lower kinds,
    and RHS - |pi - Li| for the gap kind, so holds <=> margin >= 0
    uniformly. asserted is False where the kind's validity threshold
    (stated or empirical) has not been reached; near_tie marks a
    pre-ceiling value within 2^-40 of an integer.
    """

    x: float
    pi_x: int
    bound: float
    margin: float
    holds: bool
    kind: BoundKind
    asserted: bool = True
    near_tie: bool = False


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


def in_domain(kind: BoundKind, x: float) -> bool:
    info = kind.info
    return x > info.domain_min if info.domain_open else x >= info.domain_min


def is_asserted(kind: BoundKind, x: float) -> bool:
    info = kind.info
    if info.asserted_from is None:
        return False
    return x > info.asserted_from if info.asserted_open else x >= info.asserted_from


def ceiling_pre(x: float, theta_x: float) -> float:
    """The ratio under the ceiling: (((x-1)/2) log2 + theta(x)) / log x."""
    _require(x >= 2, f"x must be >= 2, got {x!r}")
    return (0.5 * (x - 1) * LN2 + theta_x) / math.log(x)


def near_tie(pre: float) -> bool:
    return abs(pre - round(pre)) < NEAR_TIE_EPS


def bound_theorem1_ceiling(x: float, theta_x: float) -> float:
    """Ceiling of the counting ratio; integer-valued upper bound on pi."""
    return float(math.ceil(ceiling_pre(x, theta_x)))


def bound_theorem1_sharp(x: float, theta_x: float) -> float:
    """Same numerator over log x - log 2; the pre-ceiling sharp form."""
    _require(x > 2, f"x must be > 2, got {x!r}")
    return (0.5 * (x - 1) * LN2 + theta_x) / (math.log(x) - LN2)


def bound_geometric(x: float, theta_x: float, j_max: int) -> tuple[float, float]:
    """Partial geometric expansion of the sharp form.

    Returns (partial sum, truncation remainder bound); the remainder
    bound is first_factor * r^(j_max+1) / (1 - r) with r = log2/logx,
    which also bounds |partial - sharp| since the tail is geometric.
    """
    _require(x > 2, f"x must be > 2, got {x!r}")
    _require(j_max >= 0, "j_max must be nonnegative")
    first = ceiling_pre(x, theta_x)
    r = LN2 / math.log(x)
    total = 0.0
    term = first
    for _ in range(j_max + 1):
        total += term
        term *= r
    return total, term / (1.0 - r)


def bound_asymptotic_13(x: float) -> float:
    """(1 + log2/2) x / log x."""
    _require(x > 1, f"x must be > 1, got {x!r}")
    return (1.0 + LN2 / 2.0) * x / math.log(x)


def bound_linear_rest(x: float) -> float:
    """(log2/2) x + 2; evaluable everywhere, asserted from x = 3."""
    return 0.5 * LN2 * x + 2.0


def bound_chebyshev(x: float, c1: float = CHEBYSHEV_C1, *, upper: bool) -> float:
    _require(x > 1, f"x must be > 1, got {x!r}")
    coeff = 6.0 * c1 / 5.0 if upper else c1
    return coeff * x / math.log(x)


def bound_intro_upper(x: float) -> float:
    """(x/log x)(1 + 3/(2 log x))."""
    _require(x > 1, f"x must be > 1, got {x!r}")
    lx = math.log(x)
    return x / lx * (1.0 + 1.5 / lx)


def bound_dusart(x: float, upper: bool) -> float:
    shift = 1.1 if upper else 1.0
    _require(math.log(x) > shift if x > 0 else False,
             f"x must exceed e^{shift} for a positive denominator, got {x!r}")
    return x / (math.log(x) - shift)


def li_gap_rhs(x: float) -> float:
    return 0.5 * (x - 1) * LN2 + math.log(x) - x / math.log(x)


def bound_li_gap(x: float, pi_x: int, li_x: float) -> BoundReport:
    """Report on |pi - Li| <= ((x-1)/2) log2 + log x - x/log x."""
    _require(x >= 3, f"x must be >= 3, got {x!r}")
    kind = BoundKind("li_gap")
    rhs = li_gap_rhs(x)
    margin = rhs - abs(pi_x - li_x)
    return BoundReport(
        x=float(x), pi_x=int(pi_x), bound=rhs, margin=margin, holds=margin >= 0,
        kind=kind, asserted=is_asserted(kind, x),
    )


def comparison_bounds(x: float, c1: float = CHEBYSHEV_C1):
    """Classical bounds at x with their validity flags.

    Returns (kind, value, applicable) triples; value is nan where x is
    outside the expression's own domain (Dusart poles), and applicable
    is True only at or beyond the kind's stated threshold — the
    Chebyshev pair has none ("sufficiently large"), so it is never
    flagged applicable.
    """
    _require(x >= 2, f"x must be >= 2, got {x!r}")
    out = []
    for tag in ("chebyshev_lower", "chebyshev_upper", "intro_upper",
                "dusart_lower", "dusart_upper"):
        kind = BoundKind(tag, c1=c1) if tag.startswith("chebyshev") else BoundKind(tag)
        try:
            value = _scalar_value(kind, x, theta_x=None)
        except DomainError:
            value = math.nan
        out.append((kind, value, is_asserted(kind, x)))
    return out


def _scalar_value(kind: BoundKind, x: float, theta_x: float | None) -> float:
    tag = kind.tag
    if tag == "theorem1_ceiling":
        return bound_theorem1_ceiling(x, theta_x)
    if tag == "theorem1_sharp":
        return bound_theorem1_sharp(x, theta_x)
    if tag == "geometric":
        return bound_geometric(x, theta_x, kind.j_max)[0]
    if tag == "asymptotic_13":
        return bound_asymptotic_13(x)
    if tag == "linear_rest":
        return bound_linear_rest(x)
    if tag == "chebyshev_lower":
        return bound_chebyshev(x, kind.c1, upper=False)
    if tag == "chebyshev_upper":
        return bound_chebyshev(x, kind.c1, upper=True)
    if tag == "intro_upper":
        return bound_intro_upper(x)
    if tag == "dusart_lower":
        return bound_dusart(x, upper=False)
    if tag == "dusart_upper":
        return bound_dusart(x, upper=True)
    if tag == "li_gap":
        return li_gap_rhs(x)
    raise DomainError(f"unknown bound tag {tag!r}")


def evaluate(kind: BoundKind, x: float, table) -> BoundReport:
    """Evaluate one kind at one point against a PrimeTable."""
    x = float(x)
    if not in_domain(kind, x):
        info = kind.info
        rel = ">" if info.domain_open else ">="
        raise DomainError(f"{kind.tag} requires x {rel} {info.domain_min}, got {x!r}")
    info = kind.info
    pi_x = table.pi(x)
    tie = False
    if kind.tag == "li_gap":
        from .integrals import li

        return bound_li_gap(x, pi_x, li(x, 1e-12).value)
    theta_x = table.theta(x) if info.needs_theta else None
    value = _scalar_value(kind, x, theta_x)
    if kind.tag == "theorem1_ceiling":
        tie = near_tie(ceiling_pre(x, theta_x))
    margin = pi_x - value if info.direction == "lower" else value - pi_x
    return BoundReport(
        x=x, pi_x=pi_x, bound=value, margin=margin, holds=margin >= 0,
        kind=kind, asserted=is_asserted(kind, x), near_tie=tie,
    )


def domain_mask(kind: BoundKind, xs: np.ndarray) -> np.ndarray:
    info = kind.info
    return xs > info.domain_min if info.domain_open else xs >= info.domain_min


def asserted_mask(kind: BoundKind, xs: np.ndarray) -> np.ndarray:
    info = kind.info
    if info.asserted_from is None:
        return np.zeros(xs.shape, dtype=bool)
    return xs > info.asserted_from if info.asserted_open else xs >= info.asserted_from


def margins_at(
    kind: BoundKind,
    xs: np.ndarray,
    pi_xs: np.ndarray,
    theta_xs: np.ndarray | None = None,
    li_xs: np.ndarray | None = None,
):
    """Vectorized (values, margins, near_tie_mask) at in-domain points.

    Mirrors the scalar formulas exactly; callers supply pi/theta/Li
    arrays so scans control how those are produced. near_tie_mask is
    None except for theorem1_ceiling.
    """
    xs = np.asarray(xs, dtype=np.float64)
    tag = kind.tag
    lx = np.log(xs)
    ties = None
    if tag in ("theorem1_ceiling", "theorem1_sharp", "geometric"):
        if theta_xs is None:
            raise DomainError(f"{tag} needs theta values")
        numer = 0.5 * (xs - 1.0) * LN2 + theta_xs
        if tag == "theorem1_ceiling":
            pre = numer / lx
            values = np.ceil(pre)
            ties = np.abs(pre - np.rint(pre)) < NEAR_TIE_EPS
        elif tag == "theorem1_sharp":
            values = numer / (lx - LN2)
        else:
            first = numer / lx
            r = LN2 / lx
            values = np.zeros_like(first)
            term = first.copy()
            for _ in range(kind.j_max + 1):
                values += term
                term *= r
    elif tag == "asymptotic_13":
        values = (1.0 + LN2 / 2.0) * xs / lx
    elif tag == "linear_rest":
        values = 0.5 * LN2 * xs + 2.0
    elif tag == "chebyshev_lower":
        values = kind.c1 * xs / lx
    elif tag == "chebyshev_upper":
        values = 6.0 * kind.c1 / 5.0 * xs / lx
    elif tag == "intro_upper":
        values = xs / lx * (1.0 + 1.5 / lx)
    elif tag == "dusart_lower":
        values = xs / (lx - 1.0)
    elif tag == "dusart_upper":
        values = xs / (lx - 1.1)
    elif tag == "li_gap":
        if li_xs is None:
            raise DomainError("li_gap needs Li values")
        values = 0.5 * (xs - 1.0) * LN2 + lx - xs / lx
        margins = values - np.abs(pi_xs - li_xs)
        return values, margins, None
    else:
        raise DomainError(f"unknown bound tag {tag!r}")
    if kind.info.direction == "lower":
        margins = pi_xs - values
    else:
        margins = values - pi_xs
    return values, margins, ties
