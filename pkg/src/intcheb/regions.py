"""Compact sets in C^d: boxes, polydisks, polylemniscates, graph segments, point sets.

Every region is immutable. ``sample_grid`` returns exact rational points so
that downstream certificates never depend on floating rounding.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import mpmath
import numpy as np

from .polycore import (
    Poly,
    QComplex,
    abs2,
    format_rational,
    homogeneous_part,
    parse_rational,
)

_COS_DIGITS = 40


def _round_rational(x: mpmath.mpf, digits: int = _COS_DIGITS) -> Fraction:
    scale = 10**digits
    return Fraction(int(mpmath.nint(x * scale)), scale)


def _lobatto_unit(m: int) -> list[Fraction]:
    """Chebyshev-Lobatto nodes ``-cos(pi i/(m-1))`` of [-1, 1] as 40-digit rationals."""
    if m == 1:
        return [Fraction(0)]
    with mpmath.workdps(_COS_DIGITS + 10):
        return [_round_rational(-mpmath.cos(mpmath.pi * i / (m - 1))) for i in range(m)]


def lobatto_nodes(a, b, m: int) -> list[Fraction]:
    a, b = Fraction(a), Fraction(b)
    mid, half = (a + b) / 2, (b - a) / 2
    return [mid + half * u for u in _lobatto_unit(m)]


def unit_circle_point(theta) -> QComplex:
    """Rational point exactly on |w| = 1 close to angle ``theta``.

    Uses the parametrisation ((1-t^2), 2t)/(1+t^2) with a rational
    approximation of t = tan(theta/2); quarter turns are exact.
    """
    with mpmath.workdps(_COS_DIGITS + 10):
        theta = mpmath.mpf(theta)
        turns = theta / (2 * mpmath.pi)
        q = _round_rational(4 * (turns - mpmath.floor(turns)), 30)
        exact = {0: (1, 0), 1: (0, 1), 2: (-1, 0), 3: (0, -1), 4: (1, 0)}
        if q.denominator == 1:
            re, im = exact[int(q)]
            return QComplex(re, im)
        t = _round_rational(mpmath.tan(theta / 2))
    den = 1 + t * t
    return QComplex((1 - t * t) / den, 2 * t / den)


def circle_points(m: int, offset: int = 0) -> list[QComplex]:
    with mpmath.workdps(_COS_DIGITS + 10):
        return [unit_circle_point(2 * mpmath.pi * (i + offset / 2) / m) for i in range(m)]


# ---------------------------------------------------------------------------
# polynomial maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimpleMapCheck:
    ok: bool
    degree: int | None = None
    offending: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def is_simple_map(q: Sequence[Poly]) -> SimpleMapCheck:
    """Check that every component has top homogeneous part ``z_j ** l``.

    In one variable the leading coefficient may be any nonzero integer, so
    that ``a z - b`` describes the circle ``|a z - b| = r``.
    """
    if not q:
        raise ValueError("empty polynomial map")
    d = q[0].dim
    if any(p.dim != d for p in q) or len(q) != d:
        return SimpleMapCheck(False, reason=f"need {d} components in {d} variables")
    for j, p in enumerate(q):
        if p.is_zero() or p.degree < 1:
            return SimpleMapCheck(False, offending=j, reason="constant component")
    l = int(q[0].degree)
    for j, p in enumerate(q):
        if p.degree != l:
            return SimpleMapCheck(False, offending=j, reason=f"degree {p.degree} != {l}")
        top = homogeneous_part(p, l)
        k = tuple(l if i == j else 0 for i in range(d))
        if d == 1:
            if not p.is_integral():
                return SimpleMapCheck(False, offending=j, reason="non-integer coefficients")
            continue
        if top != Poly.monomial(k):
            return SimpleMapCheck(False, offending=j, reason=f"top part {top} is not z_{j+1}^{l}")
        if not p.is_integral():
            return SimpleMapCheck(False, offending=j, reason="non-integer coefficients")
    return SimpleMapCheck(True, degree=l)


@dataclass(frozen=True)
class PolyMap:
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        chk = is_simple_map(self.components)
        if not chk:
            raise ValueError(f"not a simple polynomial map: {chk.reason}")

    @property
    def dim(self) -> int:
        return self.components[0].dim

    @property
    def degree(self) -> int:
        return int(self.components[0].degree)

    def __call__(self, z):
        return tuple(p.evaluate(z) for p in self.components)

    def __len__(self):
        return len(self.components)

    def __getitem__(self, j):
        return self.components[j]


# ---------------------------------------------------------------------------
# regions
# ---------------------------------------------------------------------------


def _fracs(xs) -> tuple:
    return tuple(Fraction(x) for x in xs)


@dataclass(frozen=True)
class Box:
    """Real rectangle ``[a_1, b_1] x ... x [a_d, b_d]``."""

    bounds: tuple

    def __post_init__(self):
        b = tuple(_fracs(iv) for iv in self.bounds)
        for lo, hi in b:
            if lo > hi:
                raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "bounds", b)

    @property
    def dim(self) -> int:
        return len(self.bounds)

    def contains(self, z) -> bool:
        return all(
            not isinstance(c, QComplex) or c.im == 0 for c in z
        ) and all(lo <= Fraction(QComplex.lift(c).re) <= hi for c, (lo, hi) in zip(z, self.bounds))


@dataclass(frozen=True)
class Polydisk:
    """Product of closed disks ``|z_j| <= r_j`` centred at the origin."""

    radii: tuple

    def __post_init__(self):
        r = _fracs(self.radii)
        if any(x <= 0 for x in r):
            raise ValueError("radii must be positive")
        object.__setattr__(self, "radii", r)

    @property
    def dim(self) -> int:
        return len(self.radii)

    def contains(self, z) -> bool:
        return all(abs2(c) <= r * r for c, r in zip(z, self.radii))


@dataclass(frozen=True)
class Lemniscate:
    """Filled polylemniscate ``q^{-1}(D_r)`` for a simple integer map ``q``."""

    map: PolyMap
    radii: tuple

    def __post_init__(self):
        if not isinstance(self.map, PolyMap):
            object.__setattr__(self, "map", PolyMap(tuple(self.map)))
        r = _fracs(self.radii)
        if any(x <= 0 for x in r):
            raise ValueError("radii must be positive")
        if len(r) != self.map.dim:
            raise ValueError("one radius per map component")
        object.__setattr__(self, "radii", r)

    @property
    def dim(self) -> int:
        return self.map.dim

    def contains(self, z) -> bool:
        return all(abs2(v) <= r * r for v, r in zip(self.map(z), self.radii))

    def coordinate_bound(self) -> Fraction:
        """Rational R with every point of the set in the polydisk ``|z_j| <= R``.

        If the largest coordinate modulus is M, the top term of the
        corresponding component gives ``|a| M^l - S(M) <= r`` where ``S``
        collects the lower-order coefficient moduli. R is an upper bound on
        the single positive root of that polynomial in M.
        """
        l = self.map.degree
        best = Fraction(0)
        for j, p in enumerate(self.map.components):
            k_top = tuple(l if i == j else 0 for i in range(self.dim))
            lead = abs(Fraction(p.coeff(k_top)))
            lower = [Fraction(0)] * (l + 1)
            for k, c in p.items():
                if sum(k) < l:
                    lower[sum(k)] += abs(Fraction(c))
            lower[0] += self.radii[j]

            def g(m):
                return lead * m**l - sum(c * m**e for e, c in enumerate(lower))

            hi = Fraction(1)
            while g(hi) <= 0:
                hi *= 2
            lo = Fraction(0)
            for _ in range(40):
                mid = (lo + hi) / 2
                if g(mid) > 0:
                    hi = mid
                else:
                    lo = mid
            best = max(best, hi)
        return Fraction(best).limit_denominator(10**6) + Fraction(1, 10**6)


@dataclass(frozen=True)
class GraphSegment:
    """Segment ``{(x, l(x)) : x in [a, b]}`` of an integer linear function ``l``."""

    base: tuple
    line: tuple  # (c0, c1) meaning l(x) = c0 + c1 x

    def __post_init__(self):
        a, b = _fracs(self.base)
        if a > b:
            raise ValueError("empty base interval")
        if any(Fraction(c).denominator != 1 for c in self.line):
            raise ValueError("line must have integer coefficients")
        line = tuple(int(Fraction(c)) for c in self.line)
        object.__setattr__(self, "base", (a, b))
        object.__setattr__(self, "line", line)

    dim = 2

    def ell(self, x):
        return self.line[0] + self.line[1] * x

    def parametrisation(self) -> list[Poly]:
        x = Poly.var(0, 1)
        return [x, self.line[0] + self.line[1] * x]

    def contains(self, z) -> bool:
        x, y = (Fraction(QComplex.lift(c).re) for c in z)
        if any(isinstance(c, QComplex) and c.im for c in z):
            return False
        return self.base[0] <= x <= self.base[1] and y == self.ell(x)


@dataclass(frozen=True)
class PointSet:
    points: tuple

    def __post_init__(self):
        pts = tuple(tuple(c if isinstance(c, QComplex) else Fraction(c) for c in p) for p in self.points)
        if not pts:
            raise ValueError("empty point set")
        if len({len(p) for p in pts}) != 1:
            raise ValueError("points of mixed dimension")
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def contains(self, z) -> bool:
        z = tuple(c if isinstance(c, QComplex) else Fraction(c) for c in z)
        return any(tuple(QComplex.lift(c) for c in z) == tuple(QComplex.lift(c) for c in p) for p in self.points)


Region = Union[Box, Polydisk, Lemniscate, GraphSegment, PointSet]


def is_real_region(E: Region) -> bool:
    if isinstance(E, (Box, GraphSegment)):
        return True
    if isinstance(E, PointSet):
        return all(not isinstance(c, QComplex) or c.im == 0 for p in E.points for c in p)
    return False


# ---------------------------------------------------------------------------
# projections and sampling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Projection:
    region: Region
    superset: bool = False  # True when only a hull of the projection is known


def project(E: Region, j: int) -> Projection:
    """Projection onto coordinate ``j`` (1-based, as in ``E_j``)."""
    if not 1 <= j <= E.dim:
        raise IndexError(f"coordinate {j} out of range 1..{E.dim}")
    i = j - 1
    if isinstance(E, Box):
        return Projection(Box((E.bounds[i],)))
    if isinstance(E, Polydisk):
        return Projection(Polydisk((E.radii[i],)))
    if isinstance(E, PointSet):
        return Projection(PointSet(sorted({(p[i],) for p in E.points}, key=lambda t: _sort_key(t[0]))))
    if isinstance(E, GraphSegment):
        if i == 0:
            return Projection(Box((E.base,)))
        ends = sorted((E.ell(E.base[0]), E.ell(E.base[1])))
        return Projection(Box((tuple(ends),)))
    if isinstance(E, Lemniscate):
        return Projection(Polydisk((E.coordinate_bound(),)), superset=True)
    raise TypeError(type(E).__name__)


def _sort_key(c):
    c = QComplex.lift(c)
    return (c.re, c.im)


def sample_grid(E: Region, density: int, seed: int | None = None) -> list[tuple]:
    """Deterministic exact point cloud inside ``E``.

    ``density`` is the number of nodes per real direction (angles per circle
    for polydisks). With ``seed`` set, ``density`` extra pseudo-random
    members of ``E`` are appended.
    """
    if density < 2:
        raise ValueError("density must be >= 2")
    rng = random.Random(seed) if seed is not None else None
    if isinstance(E, PointSet):
        return list(E.points)
    if isinstance(E, Box):
        axes = [lobatto_nodes(lo, hi, density) if lo < hi else [lo] for lo, hi in E.bounds]
        pts = _tensor(axes)
        if rng:
            for _ in range(density):
                pts.append(tuple(lo + (hi - lo) * Fraction(rng.randrange(10**12), 10**12) for lo, hi in E.bounds))
        return pts
    if isinstance(E, GraphSegment):
        xs = lobatto_nodes(*E.base, density)
        return [(x, Fraction(E.ell(x))) for x in xs]
    if isinstance(E, Polydisk):
        circ = circle_points(density)
        axes = [[c * r for c in circ] for r in E.radii]
        pts = _tensor(axes)
        if rng:
            for _ in range(density):
                pts.append(tuple(unit_circle_point(rng.random() * 6.283185307179586) * r for r in E.radii))
        return pts
    if isinstance(E, Lemniscate):
        return _lemniscate_grid(E, density, rng)
    raise TypeError(type(E).__name__)


def _tensor(axes: list[list]) -> list[tuple]:
    pts: list[tuple] = [()]
    for ax in axes:
        pts = [p + (c,) for p in pts for c in ax]
    return pts


def _lemniscate_grid(E: Lemniscate, density: int, rng) -> list[tuple]:
    q = E.map
    R = E.coordinate_bound()
    if E.dim == 1 and q.degree == 1:
        # exact disk: centre b/a, radius r/|a|
        a, b = Fraction(q[0].coeff((1,))), Fraction(q[0].coeff((0,)))
        c, rho = -b / a, E.radii[0] / abs(a)
        xs, ys = lobatto_nodes(c - rho, c + rho, density), lobatto_nodes(-rho, rho, density)
    else:
        xs = ys = lobatto_nodes(-R, R, density)
    plane = [QComplex(x, y) for x in xs for y in ys]
    cand = _tensor([plane] * E.dim)
    fl = np.array([[complex(c) for c in p] for p in cand]).reshape(len(cand), E.dim)
    keep = np.ones(len(cand), dtype=bool)
    for comp, r in zip(q.components, E.radii):
        keep &= np.abs(comp.eval_float(fl)) <= float(r) * (1 + 1e-9)
    pts = [p for p, k in zip(cand, keep) if k and E.contains(p)]
    if E.dim == 1 and q.degree == 1:
        # affine univariate map: the boundary circle is parametrised exactly
        a, b = q[0].coeff((1,)), q[0].coeff((0,))
        for w in circle_points(4 * density):
            pts.append(((w * E.radii[0] - b) / a,))
    if rng:
        added = 0
        while added < density:
            z = tuple(
                QComplex(R * Fraction(rng.randrange(-10**9, 10**9), 10**9), R * Fraction(rng.randrange(-10**9, 10**9), 10**9))
                for _ in range(E.dim)
            )
            if E.contains(z):
                pts.append(z)
                added += 1
    return pts


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def _point_to_json(p) -> list:
    out = []
    for c in p:
        if isinstance(c, QComplex):
            out.append([format_rational(c.re), format_rational(c.im)])
        else:
            out.append(format_rational(c))
    return out


def _point_from_json(p) -> tuple:
    return tuple(
        QComplex(parse_rational(c[0]), parse_rational(c[1])) if isinstance(c, list) else parse_rational(c)
        for c in p
    )


def region_to_json(E: Region) -> dict:
    if isinstance(E, Box):
        return {"type": "box", "bounds": [[format_rational(a), format_rational(b)] for a, b in E.bounds]}
    if isinstance(E, Polydisk):
        return {"type": "polydisk", "radii": [format_rational(r) for r in E.radii]}
    if isinstance(E, Lemniscate):
        return {
            "type": "lemniscate",
            "map": [p.to_json_obj() for p in E.map.components],
            "radii": [format_rational(r) for r in E.radii],
        }
    if isinstance(E, GraphSegment):
        return {
            "type": "graph",
            "base": [format_rational(x) for x in E.base],
            "line": [str(c) for c in E.line],
        }
    if isinstance(E, PointSet):
        return {"type": "points", "points": [_point_to_json(p) for p in E.points]}
    raise TypeError(type(E).__name__)


def region_from_json(obj: dict) -> Region:
    kind = obj.get("type")
    if kind == "box":
        return Box(tuple((parse_rational(a), parse_rational(b)) for a, b in obj["bounds"]))
    if kind == "polydisk":
        return Polydisk(tuple(parse_rational(r) for r in obj["radii"]))
    if kind == "lemniscate":
        return Lemniscate(
            PolyMap(tuple(Poly.from_json_obj(p) for p in obj["map"])),
            tuple(parse_rational(r) for r in obj["radii"]),
        )
    if kind == "graph":
        return GraphSegment(tuple(parse_rational(x) for x in obj["base"]), tuple(parse_rational(c) for c in obj["line"]))
    if kind == "points":
        return PointSet(tuple(_point_from_json(p) for p in obj["points"]))
    raise ValueError(f"unknown region type {kind!r}")


point_to_json = _point_to_json
point_from_json = _point_from_json
