from fractions import Fraction

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from intcheb import Box, Poly, Polydisk
from intcheb.estimators import FeketePoints, IntegerChebyshevSearch


def test_fekete_points_estimator():
    est = FeketePoints(degree=2, seed=0).fit(Box(((-1, 1),)))
    assert sorted(est.points_.ravel().tolist()) == [-1.0, 0.0, 1.0]
    L = est.transform(np.array([[-1.0], [0.0], [1.0], [0.5]]))
    assert L.shape == (4, 3)
    # at the nodes the basis is a permutation of the identity
    assert np.allclose(np.sort(np.abs(L[:3]), axis=1), [[0, 0, 1]] * 3, atol=1e-12)
    assert np.allclose(L.sum(axis=1), 1.0)  # Lagrange basis reproduces constants
    assert est.n_features_in_ == 1


def test_fekete_points_from_array():
    X = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    est = FeketePoints(degree=1).fit(X)
    assert est.points_.shape == (3, 2)


def test_fekete_unfitted_and_clone():
    est = FeketePoints(degree=3)
    with pytest.raises(NotFittedError):
        est.transform(np.zeros((1, 1)))
    assert clone(est).get_params() == est.get_params()


def test_integer_search_estimator():
    est = IntegerChebyshevSearch(degree=2).fit(Box(((0, 1),)))
    assert est.poly_ == Poly.from_coeffs([0, 1, -1])
    assert est.norm_ == 0.25
    assert np.allclose(est.predict(np.array([[0.5], [0.0]])), [0.25, 0.0])
    est = IntegerChebyshevSearch(degree=3).fit(Polydisk((Fraction(1, 2), Fraction(1, 3))))
    assert est.norm_ == pytest.approx(1 / 27)
    with pytest.raises(TypeError):
        IntegerChebyshevSearch().fit("not a region")
