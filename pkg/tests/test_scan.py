"""Grid construction, range scans, and empirical thresholds."""

import math

import numpy as np
import pytest

import pibound.bounds as bounds_mod
from pibound import (
    BoundKind,
    DomainError,
    OutOfRangeError,
    evaluate,
    scan_bound,
    threshold_scan,
)
from pibound.scan import build_grid, evaluate_columns

LI_GAP_MIN_MARGIN_AT_3 = -1.8205333961033472


class TestBuildGrid:
    def test_integers(self, small_table):
        assert build_grid(2, 10, "integers", small_table).tolist() == [
            2, 3, 4, 5, 6, 7, 8, 9, 10]
        assert build_grid(2.3, 9.7, "integers", small_table).tolist() == [
            3, 4, 5, 6, 7, 8, 9]

    def test_prime_adjacent(self, small_table):
        xs = build_grid(2, 12, "prime-adjacent", small_table)
        primes = [2.0, 3.0, 5.0, 7.0, 11.0]
        below = [math.nextafter(p, -math.inf) for p in primes[1:]]
        # the float below 2 sits under lo and is clipped away
        assert sorted(primes + below) == xs.tolist()

    def test_log_grid(self, small_table):
        xs = build_grid(2, 1000, "log:5", small_table)
        assert len(xs) == 5
        assert xs[0] == 2.0 and math.isclose(xs[-1], 1000.0)
        ratios = xs[1:] / xs[:-1]
        assert np.allclose(ratios, ratios[0])

    def test_union_is_sorted_and_unique(self, small_table):
        xs = build_grid(2, 100, "integers,prime-adjacent,log:17", small_table)
        assert (np.diff(xs) > 0).all()
        assert len(xs) > 99

    def test_bad_specs(self, small_table):
        for bad in ("nope", "log:x", "log:0", ""):
            with pytest.raises(DomainError):
                build_grid(2, 10, bad, small_table)
        with pytest.raises(DomainError):
            build_grid(1.0, 10, "integers", small_table)
        with pytest.raises(DomainError):
            build_grid(10, 5, "integers", small_table)
        with pytest.raises(OutOfRangeError):
            build_grid(2, 1001, "integers", small_table)


class TestScanBound:
    def test_ceiling_over_integers(self, table):
        res = scan_bound(BoundKind("theorem1_ceiling"), 2, 100, table)
        assert res.points_evaluated == 99
        assert res.min_margin == 0.0
        assert res.argmin_x == 5.0  # first x where the ceiling is exact
        assert res.violations == ()
        assert res.near_ties == ()
        assert res.ok

    def test_domain_filtering_drops_x2(self, table):
        res = scan_bound(BoundKind("theorem1_sharp"), 2, 100, table)
        assert res.points_evaluated == 98  # x=2 excluded, domain is open there

    def test_li_gap_violations(self, table):
        res = scan_bound(BoundKind("li_gap"), 3, 100, table)
        assert [x for x, _ in res.violations] == [3.0, 4.0, 5.0, 6.0, 10.0]
        assert res.asserted_violations == ()
        assert res.ok
        assert math.isclose(res.min_margin, LI_GAP_MIN_MARGIN_AT_3, abs_tol=1e-9)
        assert res.argmin_x == 3.0
        # grid quadrature agrees with the scalar report at the x=10 failure
        viol = dict(res.violations)
        rep = evaluate(BoundKind("li_gap"), 10.0, table)
        assert math.isclose(viol[10.0], rep.margin, abs_tol=1e-9)

    def test_lower_bound_direction(self, table):
        res = scan_bound(BoundKind("dusart_lower"), 5393, 100_000, table)
        assert res.violations == ()
        assert res.min_margin >= 0

    def test_prime_adjacent_probes_tighten(self, table):
        only_int = scan_bound(BoundKind("theorem1_ceiling"), 2, 1000, table)
        probed = scan_bound(BoundKind("theorem1_ceiling"), 2, 1000, table,
                            grid="integers,prime-adjacent")
        assert probed.points_evaluated > only_int.points_evaluated
        assert probed.min_margin <= only_int.min_margin
        assert probed.ok

    def test_forced_violation_fails_scan(self, table, monkeypatch):
        real = bounds_mod.margins_at

        def flipped(kind, xs, pis, thetas=None, lis=None):
            values, margins, ties = real(kind, xs, pis, thetas, lis)
            return values, -margins, ties

        monkeypatch.setattr(bounds_mod, "margins_at", flipped)
        res = scan_bound(BoundKind("asymptotic_13"), 2, 100, table)
        assert res.violations
        assert res.asserted_violations
        assert not res.ok


class TestEvaluateColumns:
    def test_nan_outside_domain(self, table):
        kinds = [BoundKind("theorem1_sharp"), BoundKind("linear_rest")]
        xs = np.array([2.0, 10.0])
        pis, thetas, cols = evaluate_columns(xs, table, kinds)
        assert pis.tolist() == [1, 4]
        sharp_vals = cols[0][1]
        assert math.isnan(sharp_vals[0]) and not math.isnan(sharp_vals[1])
        assert not math.isnan(cols[1][1][0])

    def test_matches_scalar_reports(self, table):
        kinds = [BoundKind(t) for t in ("theorem1_ceiling", "li_gap", "chebyshev_lower")]
        xs = np.array([5.0, 10.0, 100.0, 9973.0])
        _, _, cols = evaluate_columns(xs, table, kinds)
        for kind, values, margins in cols:
            for x, v, m in zip(xs, values, margins):
                rep = evaluate(kind, float(x), table)
                assert math.isclose(v, rep.bound, rel_tol=1e-12)
                assert math.isclose(m, rep.margin, rel_tol=1e-9, abs_tol=1e-9)


class TestThreshold:
    def test_li_gap_empirical(self, table):
        res = threshold_scan(BoundKind("li_gap"), table, lo=3, hi=10_000)
        assert res.x0 == 11.0
        assert res.stated_from is None
        assert res.empirical

    def test_asymptotic_13_holds_from_two(self, table):
        res = threshold_scan(BoundKind("asymptotic_13"), table, hi=10_000)
        assert res.x0 == 2.0
        assert res.stated_from == 2.0
        assert not res.empirical

    def test_dusart_pair_matches_stated(self, table):
        up = threshold_scan(BoundKind("dusart_upper"), table, hi=100_000)
        assert up.x0 == 60184.0 == up.stated_from
        lo = threshold_scan(BoundKind("dusart_lower"), table, hi=100_000)
        assert lo.x0 == 5393.0 == lo.stated_from

    def test_chebyshev_upper_still_violating(self, table):
        res = threshold_scan(BoundKind("chebyshev_upper"), table, hi=10_000)
        assert res.x0 is None
        assert res.empirical
