"""scikit-learn style wrappers around the hyperplane census.

Inputs are functionals on GF(2)^(2^N) given as 0/1 rows of width 2^N
(column ``I`` is tensor coordinate ``I``).  Fitting only fixes N and
builds the census; the classification itself is exact, not learned.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .hyperplanes import classify_hyperplanes, type_lookup
from .segre import build_segre
from .symmetry import invariant_quadric_or_none, tensor_weights

MAX_N = 4


def check_functionals(X, n: int | None = None) -> tuple[np.ndarray, int]:
    """Validate a (m, 2^N) array of 0/1 entries; return bit-packed keys and N."""
    X = np.asarray(X)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-D array, got shape {X.shape}")
    width = X.shape[1]
    if width < 2 or width & (width - 1):
        raise ValueError(f"row width must be a power of two >= 2, got {width}")
    n_x = width.bit_length() - 1
    if n is not None and n_x != n:
        raise ValueError(f"rows have width {width}, estimator was fitted with N={n}")
    if n_x > MAX_N:
        raise ValueError(f"N={n_x} exceeds the supported maximum {MAX_N}")
    if X.dtype == bool:
        X = X.astype(np.int64)
    if not np.issubdtype(X.dtype, np.integer):
        if not np.all(np.isfinite(X)) or not np.all(X == np.round(X)):
            raise ValueError("entries must be 0 or 1")
        X = X.astype(np.int64)
    if X.size and not np.isin(X, (0, 1)).all():
        raise ValueError("entries must be 0 or 1")
    weights = np.left_shift(1, np.arange(width, dtype=np.int64))
    return X.astype(np.int64) @ weights, n_x


def functionals_to_array(keys, n: int) -> np.ndarray:
    """Inverse of :func:`check_functionals`: expand int keys into 0/1 rows."""
    keys = np.asarray(keys, dtype=np.int64)
    return (keys[:, None] >> np.arange(1 << n)) & 1


class _CensusEstimator(BaseEstimator):
    def _fit_n(self, X):
        keys, n = check_functionals(X, self.n)
        self.n_ = n
        self.n_features_in_ = 1 << n
        return keys

    def _keys(self, X):
        check_is_fitted(self, "n_")
        keys, _ = check_functionals(X, self.n_)
        if np.any(keys == 0):
            raise ValueError("the zero functional does not define an ordinary hyperplane")
        return keys


class HyperplaneClassifier(ClassifierMixin, _CensusEstimator):
    """Predict the hyperplane type (1 = largest) of each functional.

    ``n`` pins the number of factors; by default it is read off the row width.
    """

    def __init__(self, n: int | None = None):
        self.n = n

    def fit(self, X, y=None):
        self._fit_n(X)
        census = classify_hyperplanes(build_segre(self.n_))
        self.classes_ = np.array([int(e.label) for e in census.entries])
        self.cardinalities_ = np.array(census.cardinalities)
        return self

    def predict(self, X):
        keys = self._keys(X)
        return type_lookup(self.n_)[keys]


class TensorWeightTransformer(TransformerMixin, _CensusEstimator):
    """Map each functional to (weight, type, point count, on-quadric flag)."""

    feature_names = ("weight", "type", "points", "on_quadric")

    def __init__(self, n: int | None = None):
        self.n = n

    def fit(self, X, y=None):
        self._fit_n(X)
        return self

    def transform(self, X):
        keys = self._keys(X)
        n = self.n_
        weights = tensor_weights(n)[keys]
        types = type_lookup(n)[keys]
        sizes = np.array([e.signature.n_points for e in classify_hyperplanes(build_segre(n)).entries])
        q = invariant_quadric_or_none(n)
        on = (q.evaluate_many(keys) == 0).astype(np.int64) if q is not None else np.full(len(keys), -1)
        return np.column_stack([weights, types, sizes[types - 1], on])

    def get_feature_names_out(self, input_features=None):
        return np.array(self.feature_names, dtype=object)
