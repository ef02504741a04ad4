"""scikit-learn style wrappers around the Fekete and lattice searches.

The functional API in :mod:`intcheb.fekete` and :mod:`intcheb.intsearch`
remains the primary interface; these classes only adapt it to the
``fit`` / ``transform`` / ``predict`` conventions.
"""

from __future__ import annotations

from typing import Optional

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .fekete import _Basis, _float_points, fekete_search
from .intsearch import search
from .regions import PointSet


def _as_region(X):
    if hasattr(X, "dim") and hasattr(X, "__dataclass_fields__"):
        return X
    raise TypeError("fit expects a Region (Box, Polydisk, Lemniscate, GraphSegment or PointSet)")


class FeketePoints(TransformerMixin, BaseEstimator):
    """Grid-restricted Fekete points of degree ``degree``.

    ``fit(E)`` accepts a region, or an ``(m, d)`` array of candidate points
    (exact rationals are recovered with ``Fraction.from_float``).
    ``transform(X)`` returns the Lagrange basis values ``l_j(x)``, shape
    ``(len(X), h_n)``.
    """

    def __init__(self, degree: int = 4, iters: int = 1000, seed: Optional[int] = None, density: Optional[int] = None):
        self.degree = degree
        self.iters = iters
        self.seed = seed
        self.density = density

    def fit(self, X, y=None):
        if isinstance(X, np.ndarray) or isinstance(X, list):
            arr = check_array(X, dtype=None)
            from fractions import Fraction

            E = PointSet([tuple(Fraction(float(v)) for v in row) for row in arr])
        else:
            E = _as_region(X)
        F = fekete_search(E, self.degree, iters=self.iters, seed=self.seed, density=self.density)
        if F.degenerate:
            raise ValueError("no unisolvent configuration in the supplied set")
        self.fekete_ = F
        self.points_ = _float_points(F.points)
        self.log_abs_vandermonde_ = float(F.log_abs_V)
        self.diam_estimate_ = float(F.diam_estimate)
        self.n_features_in_ = F.d
        return self

    def transform(self, X):
        check_is_fitted(self, "fekete_")
        X = check_array(X, dtype=None)
        X = X.astype(complex) if np.iscomplexobj(X) or np.iscomplexobj(self.points_) else X.astype(float)
        nodes = self.points_.astype(X.dtype)
        basis = _Basis(np.concatenate([X, nodes]), self.fekete_.d, self.fekete_.n)
        L = np.linalg.solve(basis(nodes).T, basis(X).T).T
        return L.real if not np.iscomplexobj(self.points_) and not np.iscomplexobj(X) else L


class IntegerChebyshevSearch(BaseEstimator):
    """Small integer polynomial of degree ``degree`` on a region.

    ``fit(E)`` runs :func:`intcheb.intsearch.search`; ``predict(X)`` returns
    ``|P(x)|`` at float points.
    """

    def __init__(self, degree: int = 2, strategy: str = "auto", tol: float = 1e-9):
        self.degree = degree
        self.strategy = strategy
        self.tol = tol

    def fit(self, X, y=None):
        from fractions import Fraction

        E = _as_region(X)
        res = search(E, self.degree, self.strategy, Fraction(self.tol).limit_denominator(10**15))
        self.result_ = res
        self.poly_ = res.poly
        self.norm_ = float(res.norm.upper if res.norm.upper is not None else res.norm.lower)
        self.n_features_in_ = E.dim
        return self

    def predict(self, X):
        check_is_fitted(self, "poly_")
        X = check_array(X, dtype=None)
        return np.abs(self.poly_.eval_float(X))
