"""Exact integer replay of the even-integer counting argument.

For odd x, the numbers p * 2^alpha <= x (p prime, alpha >= 1) are
distinct even integers below x, so their count s_exact is at most
(x-1)/2, the number of even integers below x. s_exact is computed
purely in integer arithmetic; the companion real-valued sums split each
count into value and fractional part so every inequality link of the
argument can be checked independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .accum import NeumaierSum
from .bounds import LN2
from .errors import DomainError, OutOfRangeError

CHAIN_TOL_PER_PRIME = 1e-9  # comparison tolerance is this times pi(x)


def floor_log2_ratio(x: int, p: int) -> int:
    """Largest k >= 0 with p * 2^k <= x, by integer doubling only."""
    if p < 1 or p > x:
        raise DomainError(f"need 1 <= p <= x, got p={p!r}, x={x!r}")
    k = 0
    m = p
    while m * 2 <= x:
        m *= 2
        k += 1
    return k


@dataclass(frozen=True)
class CountingChain:
    """The counting quantities at an odd x.

    evens_available = (x-1)/2; s_exact sums floor_log2_ratio(x, p) over
    primes p <= x; value_sum and frac_sum are the compensated sums of
    log2(x/p) and of its fractional part, so s_exact = value_sum -
    frac_sum up to rounding.
    """

    x: int
    evens_available: int
    s_exact: int
    frac_sum: float
    value_sum: float

    @property
    def s_pow2_variant(self) -> int:
        """Count with the powers of two tallied as 2,4,...  instead of
        as the p=2 column: exactly one more term."""
        return self.s_exact + 1


@dataclass(frozen=True)
class ChainLink:
    name: str
    relation: str  # ">=" or "<="
    lhs: float
    rhs: float
    holds: bool


def _check_odd(x: int, limit: int) -> int:
    if x != int(x) or int(x) % 2 == 0:
        raise DomainError(f"x must be an odd integer, got {x!r}")
    x = int(x)
    if x < 3:
        raise DomainError(f"x must be >= 3, got {x}")
    if x > limit:
        raise OutOfRangeError(f"x={x} exceeds table limit {limit}")
    return x


def counting_chain(x: int, table) -> CountingChain:
    """All counting quantities at odd x; integer parts never touch floats."""
    x = _check_odd(x, table.limit)
    s = 0
    values = NeumaierSum()
    fracs = NeumaierSum()
    for p in table.primes_in(0, x).tolist():
        k = floor_log2_ratio(x, p)
        y = math.log2(x / p)
        f = y - k
        if f < 0.0:
            f = 0.0
        elif f >= 1.0:
            f = math.nextafter(1.0, 0.0)
        s += k
        values.add(y)
        fracs.add(f)
    return CountingChain(
        x=x, evens_available=(x - 1) // 2, s_exact=s,
        frac_sum=fracs.result, value_sum=values.result,
    )


def verify_proof_chain(x: int, table) -> list[ChainLink]:
    """Each inequality of the counting argument, checked independently.

    Floating-point comparisons get a tolerance of 1e-9 * pi(x); the
    first link is exact integer against exact integer.
    """
    chain = counting_chain(x, table)
    pi_x = table.pi(chain.x)
    theta_x = table.theta(chain.x)
    lx = math.log(chain.x)
    tol = CHAIN_TOL_PER_PRIME * pi_x
    half_log = 0.5 * (chain.x - 1) * LN2

    def ge(name: str, lhs: float, rhs: float) -> ChainLink:
        return ChainLink(name, ">=", lhs, rhs, lhs >= rhs - tol)

    def le(name: str, lhs: float, rhs: float) -> ChainLink:
        return ChainLink(name, "<=", lhs, rhs, lhs <= rhs + tol)

    links = [
        ChainLink("evens_vs_doubling_count", ">=",
                  float(chain.evens_available), float(chain.s_exact),
                  chain.evens_available >= chain.s_exact),
        ge("floor_split_identity", float(chain.s_exact),
           chain.value_sum - chain.frac_sum),
        ge("weighted_count_vs_pi_log", half_log + LN2 * chain.frac_sum,
           pi_x * lx - theta_x),
        le("pi_vs_frac_form", float(pi_x),
           (half_log + LN2 * chain.frac_sum + theta_x) / lx),
        le("pi_vs_sharp_form", float(pi_x), (half_log + theta_x) / (lx - LN2)),
    ]
    return links


def floor_sum_all_odd(table, hi: int):
    """s_exact for every odd x in [3, hi] at once, all in integers.

    Uses the pair-count identity: summing floor_log2_ratio over primes
    equals summing pi(x >> alpha) over alpha >= 1, since both count the
    pairs (p, alpha) with p * 2^alpha <= x. Returns (xs, s).
    """
    hi = int(hi)
    if hi < 3:
        raise DomainError(f"hi must be >= 3, got {hi}")
    if hi > table.limit:
        raise OutOfRangeError(f"hi={hi} exceeds table limit {table.limit}")
    xs = np.arange(3, hi + 1, 2, dtype=np.int64)
    s = np.zeros(xs.size, dtype=np.int64)
    if hi <= (1 << 24):
        dense = np.zeros(hi + 1, dtype=np.int32)
        dense[table.primes[table.primes <= hi]] = 1
        dense = np.cumsum(dense, dtype=np.int32)
        alpha = 1
        while (hi >> alpha) >= 2:
            s += dense[xs >> alpha]
            alpha += 1
    else:
        alpha = 1
        while (hi >> alpha) >= 2:
            s += table.pi_at(xs >> alpha)
            alpha += 1
    return xs, s
