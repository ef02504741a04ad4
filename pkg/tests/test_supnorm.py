import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import univariate_sup_exact

from intcheb import (
    Box,
    Lemniscate,
    Poly,
    PolyMap,
    QComplex,
    chebyshev_classical,
    compose,
    supnorm_box,
    supnorm_polydisk,
    supnorm_region,
)
from intcheb.intsearch import certify_poly
from intcheb.polycore import abs2
from intcheb.supnorm import BudgetExceeded, abs_lower, sqrt_lower, sqrt_upper

x, y = Poly.var(0, 2), Poly.var(1, 2)
z = Poly.var(0, 1)
C5 = x * y * (y - 1) * (x - 1) * (x - y)
Q5 = Poly.from_coeffs([0, 0, -1, 4, -5, 2])
TOL = Fraction(1, 10**9)
PROBES = 1000


def rand_frac(rng, lo, hi):
    return lo + (hi - lo) * Fraction(rng.randrange(10**9 + 1), 10**9)


def box_probes(E, rng, k=PROBES):
    return [tuple(rand_frac(rng, lo, hi) for lo, hi in E.bounds) for _ in range(k)]


def disk_probes(radii, rng, k=PROBES):
    pts = []
    while len(pts) < k:
        p = tuple(QComplex(rand_frac(rng, -r, r), rand_frac(rng, -r, r)) for r in radii)
        if all(abs2(c) <= r * r for c, r in zip(p, radii)):
            pts.append(p)
    return pts


def assert_sound(p, enc, probes):
    up2 = enc.upper * enc.upper
    for pt in probes:
        assert abs2(p.evaluate(pt)) <= up2
    if enc.witness is not None:
        w = p.evaluate(enc.witness)
        assert abs2(w) >= enc.lower * enc.lower


# -- examples ---------------------------------------------------------------


def test_box_examples():
    e = supnorm_box(x * y - x * x, Box(((0, 1), (0, 1))))
    assert e.lower <= Fraction(1) <= e.upper and e.upper - e.lower <= TOL
    e = supnorm_box(z - z * z, Box(((0, 1),)))
    assert e.lower <= Fraction(1, 4) <= e.upper and e.upper - e.lower <= TOL
    e = supnorm_box(Q5, Box(((0, 1),)))
    assert float(e.lower) <= 5**-2.5 <= float(e.upper) + 1e-15


def test_polydisk_examples():
    e = supnorm_polydisk(y**3, (Fraction(1, 2), Fraction(1, 3)))
    assert e.lower == e.upper == Fraction(1, 27)
    e = supnorm_polydisk(x + y, (Fraction(1, 2), Fraction(1, 3)))
    assert e.lower <= Fraction(5, 6) <= e.upper and e.upper - e.lower <= TOL


def test_lemniscate_composition_example():
    E = Lemniscate(PolyMap((x * x + y, y * y)), (Fraction(1, 2), Fraction(1, 3)))
    for k in (1, 2, 3):
        e = certify_poly((y * y) ** k, E)
        assert e.lower == e.upper == Fraction(1, 3**k)
    e = supnorm_region(3 * z - 1, Lemniscate(PolyMap((3 * z - 1,)), (Fraction(1, 3),)), witness=z)
    assert e.lower == e.upper == Fraction(1, 3)
    # without a witness only a lower bound is available
    e = supnorm_region(y * y, E)
    assert e.upper is None and e.lower <= Fraction(1, 3)


def test_zero_polynomial():
    e = supnorm_box(Poly.zero(1), Box(((0, 1),)))
    assert e.lower == e.upper == 0


def test_budget_exhaustion():
    with pytest.raises(BudgetExceeded):
        supnorm_box(Q5, Box(((0, 1),)), tol=Fraction(1, 10**30), budget=5, strict=True)
    e = supnorm_box(Q5, Box(((0, 1),)), tol=Fraction(1, 10**30), budget=5)
    assert not e.converged and e.lower <= e.upper


def test_rational_helpers():
    for q in (Fraction(2), Fraction(1, 3), Fraction(10**20 + 7, 3)):
        assert sqrt_lower(q) ** 2 <= q <= sqrt_upper(q) ** 2
    v = QComplex(Fraction(3), Fraction(4))
    assert abs_lower(v) <= 5


# -- oracle cross-checks -----------------------------------------------------


@pytest.mark.parametrize("coeffs", [[0, 1, -1], [0, 1, -3, 2], [0, 0, -1, 4, -5, 2], [1, -7, 3, 0, 2]])
def test_interval_matches_critical_point_oracle(coeffs):
    p = Poly.from_coeffs(coeffs)
    e = supnorm_box(p, Box(((0, 1),)))
    ref = univariate_sup_exact(coeffs, 0, 1)
    assert float(e.lower) - 1e-15 <= ref <= float(e.upper) + 1e-15


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("ab", [(0, 1), (-1, 1), (0, 3)])
def test_chebyshev_identity(n, ab):
    t, norm = chebyshev_classical(n, *ab)
    e = supnorm_box(t, Box((ab,)))
    assert e.lower <= norm <= e.upper and e.upper - e.lower <= TOL


# -- invariants --------------------------------------------------------------


def test_scaling_and_powers():
    E = Box(((0, 1),))
    p = z - z * z
    e1 = supnorm_box(p, E)
    e3 = supnorm_box(3 * p, E)
    assert e3.lower <= 3 * e1.upper and 3 * e1.lower <= e3.upper
    e2 = supnorm_box(p * p, E)
    assert e2.lower <= e1.upper**2 and e1.lower**2 <= e2.upper


def test_monotone_in_region():
    small = supnorm_box(Q5, Box(((0, Fraction(1, 2)),)))
    big = supnorm_box(Q5, Box(((0, 1),)))
    assert small.lower <= big.upper


# -- soundness on random probes ----------------------------------------------


@pytest.mark.parametrize(
    "p,E",
    [
        (Q5, Box(((0, 1),))),
        (z - z * z, Box(((0, 1),))),
        (C5, Box(((0, 1), (0, 1)))),
        (x * y - x * x + 2 * y - 1, Box(((-1, 1), (0, 2)))),
    ],
)
def test_box_soundness_1000_probes(p, E):
    rng = random.Random(11)
    enc = supnorm_box(p, E)
    assert_sound(p, enc, box_probes(E, rng) + list(_corners(E)))


def _corners(E):
    import itertools

    return itertools.product(*E.bounds)


@pytest.mark.parametrize(
    "p,radii",
    [
        (x + y, (Fraction(1, 2), Fraction(1, 3))),
        (x * x - 2 * x * y + 3 * y - 1, (Fraction(1, 2), Fraction(1, 3))),
        (2 * z**3 - z + 1, (Fraction(3, 4),)),
    ],
)
def test_polydisk_soundness_1000_probes(p, radii):
    rng = random.Random(12)
    enc = supnorm_polydisk(p, radii)
    assert_sound(p, enc, disk_probes(radii, rng))


def test_lemniscate_soundness_1000_probes():
    E = Lemniscate(PolyMap((x * x + y, y * y)), (Fraction(1, 2), Fraction(1, 3)))
    g = x + y * y
    p = compose(g, list(E.map.components))
    enc = supnorm_region(p, E, witness=g)
    rng = random.Random(13)
    R = E.coordinate_bound()
    probes = []
    while len(probes) < PROBES:
        pt = tuple(QComplex(rand_frac(rng, -R, R), rand_frac(rng, -R, R)) for _ in range(2))
        if E.contains(pt):
            probes.append(pt)
    up2 = enc.upper**2
    assert all(abs2(p.evaluate(pt)) <= up2 for pt in probes)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=6), st.integers(0, 2**31))
def test_random_interval_soundness(coeffs, seed):
    p = Poly.from_coeffs(coeffs)
    E = Box(((-1, 2),))
    enc = supnorm_box(p, E)
    rng = random.Random(seed)
    assert_sound(p, enc, box_probes(E, rng, 200))
    if not p.is_zero():
        ref = univariate_sup_exact(coeffs, -1, 2)
        assert float(enc.lower) - 1e-12 <= ref <= float(enc.upper) + 1e-12
