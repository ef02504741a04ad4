from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import vandermonde_1d_abs

from intcheb import (
    Box,
    DegreeDims,
    PointSet,
    Polydisk,
    fekete_search,
    lagrange_sup_check,
    tdiam_estimate,
    vandermonde_exact,
    vandermonde_logabs,
)
from intcheb.fekete import lagrange_value_exact


def test_degree_dims():
    assert (DegreeDims(1, 4).h, DegreeDims(1, 4).l) == (5, 10)
    assert (DegreeDims(2, 2).h, DegreeDims(2, 2).l) == (6, 8)
    for d in range(1, 5):
        for n in range(1, 13):
            assert DegreeDims(d, n).ratio() == Fraction(d, d + 1)


def test_vandermonde_examples():
    assert abs(vandermonde_exact([(Fraction(-1),), (Fraction(0),), (Fraction(1),)], 1, 2)) == 2
    assert abs(vandermonde_exact([(0, 0), (1, 0), (0, 1)], 2, 1)) == 1
    logv, _ = vandermonde_logabs([(0, 0), (1, 1), (2, 2)], 2, 1)
    assert logv == -mpmath.inf


@settings(max_examples=30, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=50), min_size=2, max_size=7, unique=True))
def test_logabs_matches_pairwise_product(pts):
    n = len(pts) - 1
    logv, _ = vandermonde_logabs([(p,) for p in pts], 1, n)
    with mpmath.workdps(50):
        ref = mpmath.log(vandermonde_1d_abs([mpmath.mpf(p.numerator) / p.denominator for p in pts]))
        assert abs(logv - ref) < mpmath.mpf(10) ** -30
    assert abs(vandermonde_exact([(p,) for p in pts], 1, n)) == _exact_pairwise(pts)


def _exact_pairwise(pts):
    v = Fraction(1)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            v *= abs(pts[j] - pts[i])
    return v


def test_fekete_interval_examples():
    F = fekete_search(Box(((-1, 1),)), 2, seed=0)
    assert sorted(p[0] for p in F.points) == [-1, 0, 1]
    assert abs(mpmath.exp(F.log_abs_V) - 2) < 1e-40
    F = fekete_search(Box(((0, 1),)), 1, seed=0)
    assert sorted(p[0] for p in F.points) == [0, 1]


def test_fekete_pointset_exact():
    S = PointSet([(0, 0), (1, 0), (0, 1)])
    F = fekete_search(S, 1)
    assert sorted(F.points) == sorted(S.points) and not F.degenerate
    F = fekete_search(PointSet([(0, 0), (1, 0)]), 1)
    assert F.degenerate


@pytest.mark.parametrize(
    "E,n",
    [
        (Box(((0, 1),)), 5),
        (Box(((0, 1), (0, 1))), 3),
        (Polydisk((Fraction(1, 2), Fraction(1, 3))), 2),
        (Polydisk((1,)), 6),
    ],
)
def test_exchange_monotone_and_lagrange_bounded(E, n):
    F = fekete_search(E, n, seed=7)
    hist = list(F.history)
    assert all(b > a for a, b in zip(hist, hist[1:]))
    assert F.converged
    assert lagrange_sup_check(F) <= 1 + 1e-6


def test_lagrange_exact_interpolates():
    F = fekete_search(Box(((0, 1),)), 3, seed=0)
    for j, pt in enumerate(F.points):
        for i, q in enumerate(F.points):
            assert lagrange_value_exact(F, j, q) == (1 if i == j else 0)


def test_seed_determinism():
    a = fekete_search(Box(((0, 1), (0, 1))), 3, seed=5)
    b = fekete_search(Box(((0, 1), (0, 1))), 3, seed=5)
    assert a.points == b.points and a.log_abs_V == b.log_abs_V


def test_tdiam_interval_trend():
    rows = tdiam_estimate(Box(((-1, 1),)), 8, seed=0)
    assert [r.n for r in rows] == list(range(1, 9))
    diam = [float(r.diam) for r in rows]
    # the estimate decreases towards the capacity 1/2 from above
    assert diam[-1] < diam[0]
    assert all(d > 0.5 for d in diam)


def test_region_errors():
    with pytest.raises(ValueError):
        fekete_search(Box(((0, 1),)), 0)
