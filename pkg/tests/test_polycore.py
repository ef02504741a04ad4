from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intcheb import (
    Poly,
    QComplex,
    arith,
    chebyshev_classical,
    compose,
    eval_exact,
    exact_divide,
    homogeneous_part,
    monomials_upto,
    order_compare,
    restrict_to_graph,
)
from intcheb.polycore import DimensionError, affine_substitute, format_rational, parse_rational

x2, y2 = Poly.var(0, 2), Poly.var(1, 2)
x1 = Poly.var(0, 1)
C5 = x2 * y2 * (y2 - 1) * (x2 - 1) * (x2 - y2)
Q5 = Poly.from_coeffs([0, 0, -1, 4, -5, 2])


def polys(dim=2, max_deg=3, max_terms=5, lo=-5, hi=5):
    mono = st.tuples(*[st.integers(0, max_deg)] * dim)
    return st.dictionaries(mono, st.integers(lo, hi), max_size=max_terms).map(lambda d: Poly(dim, d))


# -- examples --------------------------------------------------------------


def test_order_examples():
    assert order_compare((0, 1), (1, 0)) == -1
    assert order_compare((2, 0), (0, 3)) == -1
    assert order_compare((1, 1), (1, 1)) == 0


def test_monomials_upto_grlex():
    assert monomials_upto(2, 2) == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]
    assert len(monomials_upto(3, 4)) == 35


def test_arith_example():
    p = Poly(2, {(1, 0): 1, (0, 1): -1})
    q = Poly(2, {(0, 0): 1, (1, 0): -1, (0, 1): -1})
    assert arith(p, q, "mul") == Poly(2, {(1, 0): 1, (0, 1): -1, (2, 0): -1, (0, 2): 1})
    assert arith(p, q, "add") == Poly(2, {(0, 0): 1, (0, 1): -2})
    assert arith(p, q, "sub") == Poly(2, {(0, 0): -1, (1, 0): 2})
    assert arith(x1 - 1, 3, "pow") == Poly.from_coeffs([-1, 3, -3, 1])
    with pytest.raises(ValueError):
        arith(x1, -1, "pow")


def test_restriction_identity():
    r = compose(C5, [x1, 1 - x1])
    assert r == Q5
    assert restrict_to_graph(C5, [1, -1]) == Q5
    assert str(Q5.coeffs_univariate()) == "[0, 0, -1, 4, -5, 2]"


def test_divisibility_suite():
    for f in (x2, y2, x2 - 1, y2 - 1, x2 - y2):
        q = exact_divide(C5, f)
        assert q is not None and q * f == C5
    assert exact_divide(C5, 1 - x2 - y2) is None


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        x1 + x2


def test_homogeneous_part():
    p = x2**2 + x2 * y2 + y2 + 3
    assert homogeneous_part(p, 2) == x2**2 + x2 * y2
    assert homogeneous_part(p, 0) == Poly.const(3, 2)


def test_chebyshev_classical_examples():
    t, norm = chebyshev_classical(2, -1, 1)
    assert t == Poly.from_coeffs([Fraction(-1, 2), 0, 1])
    assert norm == Fraction(1, 2)
    t, norm = chebyshev_classical(1, 0, 3)
    assert t == Poly.from_coeffs([Fraction(-3, 2), 1])
    assert norm == Fraction(3, 2)


def test_chebyshev_more_examples():
    assert chebyshev_classical(3, 0, 1)[1] == Fraction(1, 32)
    assert chebyshev_classical(1, 0, 4)[1] == 2
    with pytest.raises(ValueError):
        chebyshev_classical(2, 1, 1)


def test_chebyshev_norm_formula():
    for n in range(1, 8):
        for a, b in ((0, 1), (-1, 1), (0, 3)):
            t, norm = chebyshev_classical(n, a, b)
            assert t.leading_term()[1] == 1 and t.degree == n
            assert norm == 2 * (Fraction(b - a) / 4) ** n


def test_eval_exact_and_complex():
    assert eval_exact(Q5, (Fraction(1, 2),)) == 0
    z = QComplex(Fraction(0), Fraction(1))
    assert eval_exact(x1 * x1 + 1, (z,)) == 0
    assert eval_exact(C5, (Fraction(1, 3), Fraction(1, 5))) == C5.evaluate((Fraction(1, 3), Fraction(1, 5)))


def test_rational_parsing():
    assert parse_rational("-1/2") == Fraction(-1, 2)
    assert parse_rational("0.25") == Fraction(1, 4)
    with pytest.raises(TypeError):
        parse_rational(0.5)
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-1, 81)) == "-1/81"


def test_json_round_trip():
    for p in (C5, Q5, Poly.from_coeffs([Fraction(1, 3), -2])):
        assert Poly.from_json_obj(p.to_json_obj()) == p
    with pytest.raises((ValueError, KeyError, TypeError)):
        Poly.from_json_obj({"dim": 1, "terms": [[1, 2, "1"]]})


def test_vector_round_trip():
    v = C5.to_vector(5)
    assert Poly.from_vector(2, 5, v) == C5


def test_affine_substitute():
    p = Poly.from_coeffs([0, 0, 1])
    q = affine_substitute(p, [Fraction(1)], [Fraction(2)])
    # p(1 + 2t) = (1 + 2t)^2
    assert q == Poly.from_coeffs([1, 4, 4])


# -- properties ------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Poly.zero(2)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(max_terms=3))
def test_divide_round_trip(p, f):
    if f.is_zero():
        return
    assert exact_divide(p * f, f) == p


@settings(max_examples=40, deadline=None)
@given(polys(max_deg=2), polys(max_deg=2, max_terms=3), polys(max_deg=2, max_terms=3), st.fractions(), st.fractions())
def test_compose_evaluation(p, a, b, u, v):
    c = compose(p, [a, b])
    z = (Fraction(u), Fraction(v))
    assert c.evaluate(z) == p.evaluate((a.evaluate(z), b.evaluate(z)))


@settings(max_examples=40, deadline=None)
@given(polys(max_deg=3))
def test_compose_identity_round_trip(p):
    assert compose(p, [x2, y2]) == p
    swapped = compose(compose(p, [y2, x2]), [y2, x2])
    assert swapped == p


@settings(max_examples=200, deadline=None)
@given(st.tuples(*[st.integers(0, 4)] * 3), st.tuples(*[st.integers(0, 4)] * 3), st.tuples(*[st.integers(0, 4)] * 3))
def test_order_total(a, b, c):
    assert order_compare(a, b) == -order_compare(b, a)
    assert (order_compare(a, b) == 0) == (a == b)
    if order_compare(a, b) <= 0 and order_compare(b, c) <= 0:
        assert order_compare(a, c) <= 0


@settings(max_examples=40, deadline=None)
@given(polys())
def test_json_property(p):
    assert Poly.from_json_obj(p.to_json_obj()) == p
