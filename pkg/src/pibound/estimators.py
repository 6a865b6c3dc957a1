"""scikit-learn estimators wrapping the table and bound evaluators."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .bounds import KINDS, BoundKind
from .scan import evaluate_columns
from .sieve import build_table

DEFAULT_TAGS = tuple(KINDS)


def _resolve_kinds(kinds) -> tuple[BoundKind, ...]:
    tags = DEFAULT_TAGS if kinds is None else kinds
    out = tuple(k if isinstance(k, BoundKind) else BoundKind(str(k)) for k in tags)
    seen = [k.tag for k in out]
    if len(set(seen)) != len(seen):
        raise ValueError(f"duplicate bound tags in kinds: {seen}")
    return out


def _column(X) -> np.ndarray:
    X = check_array(X, dtype=np.float64, ensure_2d=True)
    if X.shape[1] != 1:
        raise ValueError(f"expected a single column of evaluation points, got {X.shape[1]}")
    return X


class PrimeCountingFeaturizer(TransformerMixin, BaseEstimator):
    """Turn evaluation points into [pi, theta, bound values, bound margins].

    X is a single column of points in [0, limit]. fit builds the prime
    table; transform emits pi(x), theta(x), then one value column and
    one margin column per configured bound kind, nan where a point
    falls outside that kind's domain.
    """

    def __init__(self, limit: int = 1_000_000, kinds=None, two_double: bool = False):
        self.limit = limit
        self.kinds = kinds
        self.two_double = two_double

    def fit(self, X, y=None):
        X = _column(X)
        self.kinds_ = _resolve_kinds(self.kinds)
        self.table_ = build_table(self.limit, two_double=self.two_double)
        self.n_features_in_ = 1
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "table_")
        X = _column(X)
        xs = X[:, 0]
        pis, thetas, cols = evaluate_columns(xs, self.table_, self.kinds_)
        blocks = [pis.astype(np.float64), thetas]
        blocks += [values for _, values, _ in cols]
        blocks += [margins for _, _, margins in cols]
        return np.column_stack(blocks)

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        check_is_fitted(self, "kinds_")
        names = ["pi", "theta"]
        names += [k.tag for k in self.kinds_]
        names += [f"{k.tag}_margin" for k in self.kinds_]
        return np.asarray(names, dtype=object)


class PrimeBoundPredictor(RegressorMixin, BaseEstimator):
    """Predict one bound's value at each evaluation point.

    A deliberately tiny regressor-shaped wrapper: fit builds the prime
    table, predict evaluates the configured bound kind, so the output
    is a computed envelope for pi rather than a fitted curve.
    """

    def __init__(self, tag: str = "theorem1_ceiling", limit: int = 1_000_000,
                 j_max: int | None = None, c1: float | None = None):
        self.tag = tag
        self.limit = limit
        self.j_max = j_max
        self.c1 = c1

    def fit(self, X, y=None):
        X = _column(X)
        self.kind_ = BoundKind(self.tag, j_max=self.j_max, c1=self.c1)
        self.table_ = build_table(self.limit)
        self.n_features_in_ = 1
        return self

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "table_")
        X = _column(X)
        xs = X[:, 0]
        _, _, cols = evaluate_columns(xs, self.table_, (self.kind_,))
        return cols[0][1]
