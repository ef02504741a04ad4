from fractions import Fraction

import pytest

from intcheb import (
    Box,
    GraphSegment,
    Lemniscate,
    PointSet,
    PolyMap,
    Polydisk,
    Poly,
    is_simple_map,
    project,
    region_from_json,
    region_to_json,
    sample_grid,
)
from intcheb.polycore import abs2
from intcheb.regions import circle_points, lobatto_nodes

x, y = Poly.var(0, 2), Poly.var(1, 2)
z = Poly.var(0, 1)
Q = (x * x + y, y * y)
LEM = Lemniscate(PolyMap(Q), (Fraction(1, 2), Fraction(1, 3)))
REGIONS = [
    Box(((0, 1),)),
    Box(((0, 1), (0, 1))),
    Polydisk((Fraction(1, 2), Fraction(1, 3))),
    LEM,
    Lemniscate(PolyMap((3 * z - 1,)), (Fraction(1, 3),)),
    GraphSegment((0, 1), (1, -1)),
    PointSet([(0, 0), (1, 0), (0, 1)]),
]


def test_simple_map_examples():
    assert is_simple_map(Q).ok and is_simple_map(Q).degree == 2
    bad = is_simple_map((x * y, y * y))
    assert not bad.ok and bad.offending == 0
    assert is_simple_map((3 * z - 1,)).ok
    with pytest.raises(ValueError):
        PolyMap((x * y, y * y))


def test_box_validation():
    with pytest.raises(ValueError):
        Box(((1, 0),))
    with pytest.raises(ValueError):
        Polydisk((0,))


def test_projection_examples():
    assert project(Box(((0, 1), (2, 3))), 2).region == Box(((2, 3),))
    assert project(Polydisk((Fraction(1, 2), Fraction(1, 3))), 1).region == Polydisk((Fraction(1, 2),))
    p = project(GraphSegment((0, 1), (1, -1)), 2)
    assert p.region == Box(((0, 1),)) and not p.superset
    pl = project(LEM, 1)
    assert pl.superset
    with pytest.raises(IndexError):
        project(Box(((0, 1),)), 2)


def test_lemniscate_coordinate_bound_contains_samples():
    R = LEM.coordinate_bound()
    for pt in sample_grid(LEM, 8, seed=1):
        assert all(abs2(c) <= R * R for c in pt)


@pytest.mark.parametrize("E", REGIONS, ids=lambda E: type(E).__name__)
def test_sample_grid_membership_and_determinism(E):
    a = sample_grid(E, 6, seed=3)
    b = sample_grid(E, 6, seed=3)
    assert a == b and a
    assert all(E.contains(p) for p in a)


@pytest.mark.parametrize("E", REGIONS, ids=lambda E: type(E).__name__)
def test_region_json_round_trip(E):
    assert region_from_json(region_to_json(E)) == E


def test_region_json_errors():
    with pytest.raises((ValueError, KeyError, TypeError)):
        region_from_json({"type": "torus"})
    with pytest.raises((ValueError, KeyError, TypeError)):
        region_from_json({"type": "box", "bounds": [["1", "0"]]})


def test_lobatto_and_circle_points_exact():
    nodes = lobatto_nodes(0, 1, 5)
    assert nodes[0] == 0 and nodes[-1] == 1 and len(nodes) == 5
    assert all(isinstance(t, Fraction) for t in nodes)
    for w in circle_points(12):
        assert abs2(w) == 1


def test_lemniscate_circle_membership():
    E = Lemniscate(PolyMap((3 * z - 1,)), (Fraction(1, 3),))
    assert E.contains((Fraction(1, 3),))
    assert E.contains((Fraction(4, 9),))
    assert not E.contains((Fraction(1, 2),))
