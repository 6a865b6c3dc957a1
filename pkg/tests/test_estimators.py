"""sklearn wrappers: fit/transform/predict over the functional core."""

import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from pibound import BoundKind, PrimeBoundPredictor, PrimeCountingFeaturizer, evaluate

X = np.array([[5.0], [100.0], [1000.0]])


@pytest.fixture(scope="module")
def fitted():
    return PrimeCountingFeaturizer(limit=10_000, kinds=["theorem1_ceiling", "li_gap"]).fit(X)


class TestFeaturizer:
    def test_shape_and_names(self, fitted):
        out = fitted.transform(X)
        assert out.shape == (3, 6)
        assert fitted.get_feature_names_out().tolist() == [
            "pi", "theta", "theorem1_ceiling", "li_gap",
            "theorem1_ceiling_margin", "li_gap_margin",
        ]

    def test_values_match_scalar_evaluate(self, fitted):
        out = fitted.transform(X)
        assert out[:, 0].tolist() == [3.0, 25.0, 168.0]
        for row, x in zip(out, X[:, 0]):
            ceil_rep = evaluate(BoundKind("theorem1_ceiling"), x, fitted.table_)
            gap_rep = evaluate(BoundKind("li_gap"), x, fitted.table_)
            assert row[2] == ceil_rep.bound
            assert math.isclose(row[3], gap_rep.bound, rel_tol=1e-12)
            assert row[4] == ceil_rep.margin
            assert math.isclose(row[5], gap_rep.margin, abs_tol=1e-9)

    def test_default_kinds_cover_registry(self):
        f = PrimeCountingFeaturizer(limit=1000).fit(X[:1])
        assert len(f.get_feature_names_out()) == 2 + 2 * 11

    def test_nan_outside_domain(self):
        f = PrimeCountingFeaturizer(limit=1000, kinds=["theorem1_sharp"]).fit(X)
        out = f.transform(np.array([[2.0], [10.0]]))
        assert math.isnan(out[0, 2]) and not math.isnan(out[1, 2])

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            PrimeCountingFeaturizer().transform(X)

    def test_rejects_multicolumn(self, fitted):
        with pytest.raises(ValueError):
            fitted.transform(np.ones((2, 2)))

    def test_rejects_duplicate_kinds(self):
        with pytest.raises(ValueError):
            PrimeCountingFeaturizer(limit=1000, kinds=["li_gap", "li_gap"]).fit(X)

    def test_rejects_points_beyond_limit(self, fitted):
        with pytest.raises(Exception):
            fitted.transform(np.array([[20_000.0]]))

    def test_clone_and_params(self):
        f = PrimeCountingFeaturizer(limit=5000, kinds=["linear_rest"], two_double=True)
        params = f.get_params()
        assert params["limit"] == 5000 and params["two_double"]
        g = clone(f)
        assert g.get_params() == params
        g.set_params(limit=2000)
        assert g.limit == 2000 and f.limit == 5000


class TestPredictor:
    def test_predicts_bound_values(self):
        p = PrimeBoundPredictor(tag="asymptotic_13", limit=10_000).fit(X)
        got = p.predict(X)
        for x, v in zip(X[:, 0], got):
            rep = evaluate(BoundKind("asymptotic_13"), x, p.table_)
            assert math.isclose(v, rep.bound, rel_tol=1e-12)

    def test_parameterized_kind(self):
        p = PrimeBoundPredictor(tag="geometric", limit=1000, j_max=1).fit(X)
        assert p.kind_.j_max == 1
        v = p.predict(np.array([[10.0]]))[0]
        assert math.isclose(v, 4.783697701748953, rel_tol=1e-14)

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            PrimeBoundPredictor().predict(X)

    def test_clone(self):
        p = PrimeBoundPredictor(tag="dusart_upper", limit=3000)
        q = clone(p)
        assert q.get_params() == p.get_params()
