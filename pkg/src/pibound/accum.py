"""Compensated floating-point accumulation.

Two accumulators with the same interface: Neumaier (running correction,
the default everywhere) and a two-double variant that keeps the running
sum as an exact head/tail pair. Both expose the partial sum as a
(value, correction) pair so callers can store prefixes losslessly.
"""

from __future__ import annotations

import math


def two_sum(a: float, b: float) -> tuple[float, float]:
    """Error-free transform: a + b = s + e exactly, s = fl(a + b)."""
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


class NeumaierSum:
    """Kahan summation with Neumaier's branch for large addends."""

    __slots__ = ("value", "correction")

    def __init__(self) -> None:
        self.value = 0.0
        self.correction = 0.0

    def add(self, term: float) -> None:
        s = self.value + term
        if abs(self.value) >= abs(term):
            self.correction += (self.value - s) + term
        else:
            self.correction += (term - s) + self.value
        self.value = s

    @property
    def result(self) -> float:
        return self.value + self.correction


class TwoDoubleSum:
    """Running sum as an unevaluated head + tail pair (two-sum cascade).

    Costlier per add than NeumaierSum but keeps the tail exact rather
    than first-order compensated.
    """

    __slots__ = ("value", "correction")

    def __init__(self) -> None:
        self.value = 0.0
        self.correction = 0.0

    def add(self, term: float) -> None:
        s, e = two_sum(self.value, term)
        t, e2 = two_sum(self.correction, e)
        self.value, self.correction = two_sum(s, t)
        self.correction += e2

    @property
    def result(self) -> float:
        return self.value + self.correction


def compensated_prefix(terms, two_double: bool = False):
    """Prefix sums of an iterable of floats as two parallel lists.

    Returns (values, corrections); values[i] + corrections[i] is the
    compensated sum of terms[0..i].
    """
    acc = TwoDoubleSum() if two_double else NeumaierSum()
    values: list[float] = []
    corrections: list[float] = []
    for t in terms:
        acc.add(t)
        values.append(acc.value)
        corrections.append(acc.correction)
    return values, corrections


def fsum(terms) -> float:
    """Exactly rounded sum; thin alias so call sites stay greppable."""
    return math.fsum(terms)
