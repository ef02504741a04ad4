"""Certified two-sided enclosures of sup norms over the supported regions.

Boxes use Bernstein range bounds with adaptive bisection. The Bernstein
coefficients are kept as exact integers over a common denominator, so each
midpoint split (de Casteljau at t = 1/2) costs only integer additions and
shifts and every enclosure endpoint is an exact rational.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, isqrt, lcm
from typing import Optional, Sequence

import numpy as np

from .polycore import Poly, QComplex, affine_substitute, compose, format_rational
from .regions import (
    Box,
    GraphSegment,
    Lemniscate,
    PointSet,
    Polydisk,
    Region,
    unit_circle_point,
    point_to_json,
    sample_grid,
)

DEFAULT_TOL = Fraction(1, 10**9)
DEFAULT_BUDGET = 100_000


class BudgetExceeded(RuntimeError):
    """Raised only when a caller asks for strict convergence."""


@dataclass(frozen=True)
class NormEnclosure:
    """``lower <= ||p||_E <= upper``; ``upper`` is None when not certified."""

    lower: Fraction
    upper: Optional[Fraction]
    witness: Optional[tuple]
    method: str
    converged: bool = True
    boxes: int = 0
    notes: tuple = field(default=())

    @property
    def certified(self) -> bool:
        return self.upper is not None

    @property
    def width(self) -> Optional[Fraction]:
        return None if self.upper is None else self.upper - self.lower

    def scaled(self, c) -> "NormEnclosure":
        c = abs(Fraction(c))
        return NormEnclosure(
            self.lower * c,
            None if self.upper is None else self.upper * c,
            self.witness,
            self.method,
            self.converged,
            self.boxes,
            self.notes,
        )

    def to_json_obj(self) -> dict:
        return {
            "lower": format_rational(self.lower),
            "upper": None if self.upper is None else format_rational(self.upper),
            "witness": None if self.witness is None else point_to_json(self.witness),
            "method": self.method,
            "certified": self.certified,
            "converged": self.converged,
        }


def sqrt_lower(q: Fraction, bits: int = 120) -> Fraction:
    """Rational r with r <= sqrt(q), exact when q is a rational square."""
    q = Fraction(q)
    if q <= 0:
        return Fraction(0)
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    s = 1 << bits
    return Fraction(isqrt(n * s * s // d), s)


def sqrt_upper(q: Fraction, bits: int = 120) -> Fraction:
    q = Fraction(q)
    r = sqrt_lower(q, bits)
    if r * r == q:
        return r
    return r + Fraction(1, 1 << bits)


def abs_lower(v) -> Fraction:
    """Rational lower bound of |v| (exact for real v)."""
    if isinstance(v, QComplex):
        return abs(v.re) if v.im == 0 else sqrt_lower(v.abs2())
    return abs(Fraction(v))


# ---------------------------------------------------------------------------
# Bernstein machinery
# ---------------------------------------------------------------------------


def _to_bernstein_matrix(n: int) -> np.ndarray:
    # b_i = sum_{m <= i} C(i, m) / C(n, m) a_m
    T = np.empty((n + 1, n + 1), dtype=object)
    for i in range(n + 1):
        for m in range(n + 1):
            T[i, m] = Fraction(comb(i, m), comb(n, m)) if m <= i else Fraction(0)
    return T


def bernstein_coefficients(p: Poly, box: Box) -> tuple[np.ndarray, int, tuple]:
    """Tensor Bernstein coefficients of ``p`` on ``box`` as (integers, denominator, degrees)."""
    lo = [b[0] for b in box.bounds]
    w = [b[1] - b[0] for b in box.bounds]
    q = affine_substitute(p, lo, w)
    degs = tuple(max(q.degree_in(j), 0) for j in range(p.dim))
    A = np.empty(tuple(n + 1 for n in degs), dtype=object)
    A.fill(Fraction(0))
    for k, c in q.items():
        A[k] = Fraction(c)
    for j, n in enumerate(degs):
        if n == 0:
            continue
        A = np.moveaxis(np.tensordot(_to_bernstein_matrix(n), A, axes=([1], [j])), 0, j)
    den = 1
    for c in A.flat:
        den = lcm(den, Fraction(c).denominator)
    ints = np.empty(A.shape, dtype=object)
    for idx, c in np.ndenumerate(A):
        c = Fraction(c)
        ints[idx] = c.numerator * (den // c.denominator)
    return ints, den, degs


def _split(arr: np.ndarray, axis: int) -> tuple[np.ndarray, np.ndarray, int]:
    """Halve along ``axis``; returns children scaled by 2**n and that exponent n."""
    a = np.moveaxis(arr, axis, 0)
    n = a.shape[0] - 1
    cur = [a[i] for i in range(n + 1)]
    left, right = [cur[0]], [cur[n]]
    for _ in range(n):
        cur = [cur[i] + cur[i + 1] for i in range(len(cur) - 1)]
        left.append(cur[0])
        right.append(cur[-1])
    L = np.empty(a.shape, dtype=object)
    R = np.empty(a.shape, dtype=object)
    for i in range(n + 1):
        L[i] = left[i] * (1 << (n - i))
        R[i] = right[n - i] * (1 << i)
    return np.moveaxis(L, 0, axis), np.moveaxis(R, 0, axis), n


def _max_abs(arr: np.ndarray) -> int:
    return max(abs(int(x)) for x in arr.flat)


def _corner_values(arr, lo, hi):
    d = arr.ndim
    for mask in range(1 << d):
        idx = tuple(-1 if (mask >> j) & 1 else 0 for j in range(d))
        pt = tuple(hi[j] if (mask >> j) & 1 else lo[j] for j in range(d))
        yield abs(int(arr[idx])), pt


def supnorm_box(
    p: Poly,
    E: Box,
    tol=DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
    strict: bool = False,
) -> NormEnclosure:
    """Enclose ``max |p|`` over a real box by Bernstein subdivision."""
    if p.dim != E.dim:
        raise ValueError(f"polynomial in {p.dim} variables, box of dimension {E.dim}")
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    lo0 = tuple(b[0] for b in E.bounds)
    hi0 = tuple(b[1] for b in E.bounds)
    if p.is_zero():
        return NormEnclosure(Fraction(0), Fraction(0), lo0, "bernstein")
    arr, den, degs = bernstein_coefficients(p, E)

    best, witness = Fraction(-1), lo0
    counter = 0
    heap: list = []

    def consider(arr, den, lo, hi):
        nonlocal best, witness, counter
        for v, pt in _corner_values(arr, lo, hi):
            val = Fraction(v, den)
            if val > best:
                best, witness = val, pt
        ub = Fraction(_max_abs(arr), den)
        if ub > best:
            counter += 1
            heapq.heappush(heap, (-ub, counter, lo, hi, arr, den))

    consider(arr, den, lo0, hi0)
    boxes = 1
    upper = best
    converged = True
    while heap:
        neg_ub, _, lo, hi, arr, den = heap[0]
        ub = -neg_ub
        if ub <= best:
            heapq.heappop(heap)
            continue
        if ub - best <= tol:
            upper = ub
            break
        if boxes >= budget:
            upper, converged = ub, False
            break
        heapq.heappop(heap)
        mid = tuple((a + b) / 2 for a, b in zip(lo, hi))
        v = abs_lower(p.evaluate(mid))
        if v > best:
            best, witness = v, mid
        axis = max(
            (j for j in range(E.dim) if degs[j] > 0 and hi[j] > lo[j]),
            key=lambda j: (hi[j] - lo[j]) * degs[j],
        )
        left, right, n = _split(arr, axis)
        cden = den << n
        lhi = tuple(mid[j] if j == axis else hi[j] for j in range(E.dim))
        rlo = tuple(mid[j] if j == axis else lo[j] for j in range(E.dim))
        consider(left, cden, lo, lhi)
        consider(right, cden, rlo, hi)
        boxes += 2
    else:
        upper = best
    upper = max(upper, best)
    if strict and not converged:
        raise BudgetExceeded(f"width {upper - best} after {boxes} boxes")
    return NormEnclosure(best, upper, witness, "bernstein", converged, boxes)


# ---------------------------------------------------------------------------
# polydisks
# ---------------------------------------------------------------------------


_PI_UPPER = Fraction(355, 113)


def _polydisk_float(p: Poly, radii: Sequence[Fraction], thetas: np.ndarray) -> np.ndarray:
    r = np.array([float(x) for x in radii])
    return np.abs(p.eval_float(r * np.exp(1j * thetas)))


def supnorm_polydisk(
    p: Poly,
    radii: Sequence,
    tol=DEFAULT_TOL,
    max_points: int = 1 << 18,
    exact_top: int = 8,
) -> NormEnclosure:
    """Enclose ``max |p|`` over a polydisk via its distinguished boundary.

    Lower bound: exact evaluation at rational torus points obtained by locally
    refining the best float grid angles. Upper bound: the smaller of the
    coefficient sum and a grid bound from Bernstein's inequality. If the
    maximum ``M`` sits at angle ``t*``, then ``f = Re(e^{-i phi} p)`` has
    ``f(t*) = M`` and ``|f''| <= sigma^2 M`` along any segment of angular
    length ``pi/m`` per coordinate, with ``sigma = pi sum n_j / m``. So every
    grid maximum ``G`` satisfies ``M <= G / (1 - sigma^2 / 2)``.
    """
    from scipy.optimize import minimize

    radii = tuple(Fraction(r) for r in radii)
    if p.dim != len(radii):
        raise ValueError("dimension mismatch")
    tol = Fraction(tol)
    coeff_sum = Fraction(0)
    for k, c in p.items():
        t = abs(Fraction(c))
        for r, e in zip(radii, k):
            t *= r**e
        coeff_sum += t
    if p.is_zero():
        return NormEnclosure(Fraction(0), Fraction(0), tuple(radii), "torus-grid")
    upper = coeff_sum
    d = p.dim
    total_deg = sum(p.degree_in(j) for j in range(d))
    best, witness = Fraction(-1), None
    tried: set = set()
    m = max(8, 4 * total_deg)
    while True:
        axis = 2 * np.pi * np.arange(m) / m
        grid = np.stack(np.meshgrid(*([axis] * d), indexing="ij"), axis=-1).reshape(-1, d)
        vals = _polydisk_float(p, radii, grid)
        sigma2 = (_PI_UPPER * total_deg / m) ** 2
        shrink = 1 - sigma2 / 2
        if shrink > 0:
            g = Fraction(float(vals.max())) + coeff_sum * Fraction(1, 10**10)
            upper = min(upper, g / shrink)
        for i in np.argsort(-vals, kind="stable")[:exact_top]:
            res = minimize(
                lambda th: -_polydisk_float(p, radii, th[None, :])[0] ** 2,
                grid[int(i)],
                method="Nelder-Mead",
                options={"xatol": 1e-13, "fatol": 1e-15, "maxiter": 400 * d},
            )
            key = tuple(np.round(res.x % (2 * np.pi), 12))
            if key in tried:
                continue
            tried.add(key)
            z = tuple(unit_circle_point(float(t)) * r for t, r in zip(res.x, radii))
            v = abs_lower(p.evaluate(z))
            if v > best:
                best, witness = v, z
        upper = max(upper, best)
        if upper - best <= tol or (2 * m) ** d > max_points:
            break
        m *= 2
    return NormEnclosure(best, upper, witness, "torus-grid", upper - best <= tol)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def supnorm_points(p: Poly, points: Sequence) -> NormEnclosure:
    best, witness, upper = Fraction(-1), None, Fraction(0)
    for z in points:
        v = p.evaluate(z)
        lo = abs_lower(v)
        up = abs(Fraction(v)) if not isinstance(v, QComplex) else sqrt_upper(v.abs2())
        if lo > best:
            best, witness = lo, z
        upper = max(upper, up)
    return NormEnclosure(best, upper, witness, "exact-point")


def supnorm_region(
    p: Poly,
    E: Region,
    tol=DEFAULT_TOL,
    witness: Optional[Poly] = None,
    budget: int = DEFAULT_BUDGET,
    density: int = 12,
) -> NormEnclosure:
    """Sup-norm enclosure on any supported region.

    For a :class:`Lemniscate`, pass ``witness=g`` with ``p == g o q`` to get a
    certified value (the map sends the lemniscate onto the polydisk).
    Without it only a sampled lower bound is returned and ``upper`` is None.
    """
    if p.dim != E.dim:
        raise ValueError(f"polynomial in {p.dim} variables, region of dimension {E.dim}")
    if p.degree <= 0:
        c = abs(Fraction(p.coeff((0,) * p.dim))) if not p.is_zero() else Fraction(0)
        pt = sample_grid(E, 2)[0] if not isinstance(E, PointSet) else E.points[0]
        return NormEnclosure(c, c, pt, "exact-point")
    if isinstance(E, Box):
        return supnorm_box(p, E, tol, budget)
    if isinstance(E, Polydisk):
        return supnorm_polydisk(p, E.radii, tol)
    if isinstance(E, PointSet):
        return supnorm_points(p, E.points)
    if isinstance(E, GraphSegment):
        r = compose(p, E.parametrisation())
        enc = supnorm_box(r, Box((E.base,)), tol, budget)
        w = (enc.witness[0], Fraction(E.ell(enc.witness[0])))
        return NormEnclosure(enc.lower, enc.upper, w, "bernstein", enc.converged, enc.boxes, ("restricted to graph",))
    if isinstance(E, Lemniscate):
        if witness is not None:
            if compose(witness, list(E.map.components)) != p:
                raise ValueError("witness g does not satisfy p == g o q")
            enc = supnorm_polydisk(witness, E.radii, tol)
            return NormEnclosure(
                enc.lower, enc.upper, None, "composition", enc.converged, 0,
                ("value attained on q^-1 of the torus; witness point lies in the image",),
            )
        enc = supnorm_points(p, sample_grid(E, density))
        return NormEnclosure(enc.lower, None, enc.witness, "exact-point", False, 0, ("upper bound not certified",))
    raise TypeError(type(E).__name__)


def estimate_norms(polys_vectors: np.ndarray, vander: np.ndarray) -> np.ndarray:
    """Float sup estimates ``max_i |V a|`` for coefficient rows against a sample Vandermonde."""
    return np.max(np.abs(vander @ polys_vectors.T), axis=0)
