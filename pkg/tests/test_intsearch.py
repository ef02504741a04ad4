from fractions import Fraction

import mpmath
import pytest
from oracles import three_point_tz

from intcheb import (
    Box,
    Lemniscate,
    PointSet,
    Poly,
    PolyMap,
    Polydisk,
    SearchRefused,
    SearchResult,
    closed_form,
    coefficient_box,
    exhaustive_search,
    fekete_search,
    lattice_search,
    minkowski_construct,
    search,
    tz_sequence,
)
from intcheb.intsearch import canonical, certify_poly
from intcheb.supnorm import NormEnclosure

z = Poly.var(0, 1)
x, y = Poly.var(0, 2), Poly.var(1, 2)
UNIT = Box(((0, 1),))
SQUARE = Box(((0, 1), (0, 1)))
PD = Polydisk((Fraction(1, 2), Fraction(1, 3)))
Q5 = Poly.from_coeffs([0, 0, -1, 4, -5, 2])


def test_coefficient_box_examples():
    assert coefficient_box(UNIT, 1, 1, points=[(Fraction(0),), (Fraction(1),)]) == [1, 2]
    assert coefficient_box(Polydisk((Fraction(1, 2),)), 0, Fraction(1, 2)) == [0]


@pytest.mark.parametrize("n", [1, 2])
def test_exhaustive_matches_three_point_oracle(n):
    res = exhaustive_search(UNIT, n)
    ref, _ = three_point_tz(n)
    assert res.certified_optimal and res.norm.upper == ref and res.norm.lower == ref
    assert res.strategy == "exhaustive"


def test_exhaustive_examples():
    assert exhaustive_search(UNIT, 1).poly == z
    assert exhaustive_search(UNIT, 2).poly == z - z * z
    r = exhaustive_search(PD, 3)
    assert r.poly == y**3 and r.norm.upper == Fraction(1, 27)


def test_exhaustive_guard():
    with pytest.raises(SearchRefused):
        exhaustive_search(SQUARE, 6)


def test_monotone_under_inclusion():
    for n in (1, 2):
        small = exhaustive_search(Box(((0, Fraction(1, 2)),)), n)
        big = exhaustive_search(UNIT, n)
        assert small.norm.lower <= big.norm.upper


def test_lattice_degree5_interval():
    res = lattice_search(UNIT, 5)
    assert res.norm.upper <= Fraction(17888544, 10**9) + Fraction(1, 10**9)
    assert res.poly in (Q5, -Q5)
    assert not res.certified_optimal


def test_lattice_polydisk():
    assert lattice_search(PD, 4).poly == y**4
    assert lattice_search(PD, 4).norm.upper == Fraction(1, 81)


def test_minkowski_bound_realised():
    F = fekete_search(UNIT, 4, seed=0)
    res = minkowski_construct(F, UNIT)
    assert not res.poly.is_zero()
    assert res.bound_realized
    up = res.norm.upper
    assert mpmath.mpf(up.numerator) / up.denominator <= res.target * (1 + mpmath.mpf(10) ** -9)


def test_minkowski_degenerate():
    F = fekete_search(PointSet([(0, 0), (1, 0)]), 1)
    with pytest.raises(ValueError):
        minkowski_construct(F, PointSet([(0, 0), (1, 0)]))


def test_search_trivial_answers():
    # every coordinate radius >= 1 forces the constant 1
    r = search(Polydisk((2, 3)), 3)
    assert r.poly == Poly.const(1, 2) and r.norm.upper == 1
    r = search(Box(((0, 4),)), 2)
    assert r.norm.upper == 1


def test_search_closed_form_agrees():
    for n in range(1, 5):
        cf = closed_form(PD, n)
        assert search(PD, n).poly == cf.poly
    E = Lemniscate(PolyMap((x * x + y, y * y)), (Fraction(1, 2), Fraction(1, 3)))
    assert closed_form(E, 2).poly == y * y


def test_sequence_submultiplicative():
    rows = tz_sequence(UNIT, 4)
    norms = {r.n: r.result.norm.upper for r in rows}
    assert norms[4] <= norms[2] ** 2 + Fraction(1, 10**9)
    assert norms[2] <= norms[1] ** 2
    mins = [r.running_min for r in rows]
    assert all(b <= a for a, b in zip(mins, mins[1:]))


def test_canonical_sign_and_result_validation():
    assert canonical(z * z - z) == z - z * z
    with pytest.raises(ValueError):
        SearchResult(Poly.zero(1), NormEnclosure(Fraction(0), Fraction(0), None, "x"), 1, "lattice", False)
    with pytest.raises(ValueError):
        SearchResult(z, NormEnclosure(Fraction(1), Fraction(1), None, "x"), 1, "lattice", True)


def test_result_json():
    res = exhaustive_search(UNIT, 2)
    obj = res.to_json_obj()
    assert obj["certified_optimal"] is True and obj["norm"]["upper"] == "1/4"
    assert obj["strategy"] == "exhaustive"


def test_certify_poly_lemniscate_witness():
    E = Lemniscate(PolyMap((3 * z - 1,)), (Fraction(1, 3),))
    e = certify_poly(3 * z - 1, E)
    assert e.lower == e.upper == Fraction(1, 3)
