"""Search for small integer polynomials on a region.

Four strategies share one result type:

* ``exhaustive`` enumerates a certified coefficient box (tiny degrees only);
* ``lattice`` reduces the sample-value lattice and enumerates short vectors;
* ``minkowski`` does the same on the values at Fekete points and checks the
  a-priori bound ``h_n |V|^(1/h_n)``;
* ``closed-form`` returns the known extremal polynomials of polydisks and
  simple polylemniscates.

Whatever a strategy finds internally, the reported norm is always a fresh
certified enclosure of the returned integer polynomial.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence

import mpmath
import numpy as np

from . import lattice
from .fekete import PRECISION_DIGITS, FeketeSet, _float_points, fekete_search, vandermonde_rows
from .polycore import Poly, QComplex, compose, format_rational, monomials_upto
from .regions import Lemniscate, PointSet, Polydisk, Region, sample_grid
from .supnorm import DEFAULT_TOL, BudgetExceeded, NormEnclosure, abs_lower, sqrt_upper, supnorm_region

EXHAUSTIVE_MAX_H = 12
EXHAUSTIVE_MAX_BOX = 10**7
LATTICE_SCALE = 10**24
ENUM_BUDGET = 1_000_000


class SearchRefused(RuntimeError):
    """A guard of the requested strategy is exceeded; nothing was computed."""


@dataclass(frozen=True)
class SearchResult:
    poly: Poly
    norm: NormEnclosure
    degree: int
    strategy: str
    certified_optimal: bool = False
    target: Optional[mpmath.mpf] = None  # minkowski: h_n |V|^(1/h_n)
    bound_realized: Optional[bool] = None
    notes: tuple = field(default=())

    def __post_init__(self):
        if self.poly.is_zero():
            raise ValueError("search results must be nonzero polynomials")
        if self.certified_optimal and self.strategy != "exhaustive":
            raise ValueError("only exhaustive results can be certified optimal")

    @property
    def certified(self) -> bool:
        return self.norm.certified

    def root(self) -> mpmath.mpf:
        """``||P||^(1/n)`` from the certified upper bound (lower when uncertified)."""
        v = self.norm.upper if self.norm.upper is not None else self.norm.lower
        with mpmath.workdps(PRECISION_DIGITS):
            return mpmath.root(mpmath.mpf(v.numerator) / v.denominator, self.degree)

    def to_json_obj(self) -> dict:
        out = {
            "degree": self.degree,
            "strategy": self.strategy,
            "certified": self.certified,
            "certified_optimal": self.certified_optimal,
            "coeffs": self.poly.to_json_obj(),
            "norm": {
                "lower": format_rational(self.norm.lower),
                "upper": None if self.norm.upper is None else format_rational(self.norm.upper),
                "method": self.norm.method,
                "converged": self.norm.converged,
            },
        }
        if self.target is not None:
            out["target"] = {"value": mpmath.nstr(self.target, 30), "estimate": True}
            out["bound_realized"] = self.bound_realized
        if self.notes:
            out["notes"] = list(self.notes)
        return out


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def canonical(p: Poly) -> Poly:
    """``p`` or ``-p``, whichever has a positive lowest-order coefficient."""
    if p.is_zero():
        return p
    k0 = next(iter(p.terms))  # terms are stored in increasing graded-lex order
    return -p if p.terms[k0] < 0 else p


def tiebreak_key(p: Poly, n: int) -> tuple:
    return tuple(canonical(p).to_vector(n))


def _rank(res: SearchResult, n: int) -> tuple:
    enc = res.norm
    value = enc.upper if enc.upper is not None else enc.lower
    return (enc.upper is None, value, tiebreak_key(res.poly, n))


def certify_poly(p: Poly, E: Region, tol=DEFAULT_TOL, witness: Optional[Poly] = None) -> NormEnclosure:
    """Certified enclosure, using the composition rule on lemniscates when possible."""
    if isinstance(E, Lemniscate) and witness is None:
        witness = _lemniscate_witness(p, E)
    return supnorm_region(p, E, tol, witness=witness)


def _lemniscate_witness(p: Poly, E: Lemniscate) -> Optional[Poly]:
    """``g`` with ``p == g o q``, or None.

    For a simple map the leading term of ``q^e`` is ``c^|e| z^(l e)`` (``c``
    the top coefficient, 1 unless d = 1), so ``g`` is recovered by repeatedly
    cancelling the leading term of the remainder.
    """
    q = list(E.map.components)
    l = E.map.degree
    tops = [Fraction(qj.coeff(tuple(l if i == j else 0 for i in range(E.dim)))) for j, qj in enumerate(q)]
    rest, g_terms = p, {}
    cache: dict = {}
    while not rest.is_zero():
        k, c = rest.leading_term()
        if any(v % l for v in k):
            return None
        e = tuple(v // l for v in k)
        coef = Fraction(c)
        for t, ej in zip(tops, e):
            coef /= t**ej
        if e not in cache:
            cache[e] = compose(Poly.monomial(e), q)
        g_terms[e] = g_terms.get(e, 0) + coef
        rest = rest - cache[e].scale(coef)
    return Poly(E.dim, g_terms)


def _float_vander(fl: np.ndarray, basis: Sequence[tuple]) -> np.ndarray:
    cols = []
    for k in basis:
        col = np.ones(fl.shape[0], dtype=fl.dtype)
        for j, e in enumerate(k):
            if e:
                col = col * fl[:, j] ** e
        cols.append(col)
    return np.stack(cols, axis=1)


def search_density(E: Region, n: int) -> int:
    d = E.dim
    if isinstance(E, Polydisk):
        return max(8, 4 * n + 4) if d == 1 else max(8, 2 * n + 6)
    if isinstance(E, Lemniscate):
        return max(8, 2 * n + 6) if d == 1 else max(6, n + 4)
    if d == 1:
        return max(17, 8 * n + 1)
    return max(9, 3 * n + 1)


def _make(p: Poly, E: Region, n: int, strategy: str, tol, **kw) -> SearchResult:
    return SearchResult(p, certify_poly(p, E, tol), n, strategy, **kw)


def trivial_candidates(E: Region, n: int) -> list[Poly]:
    """The constant 1 and every monomial of degree <= n."""
    d = E.dim
    out = [Poly.const(1, d)]
    out += [Poly.monomial(k) for k in monomials_upto(d, n) if sum(k) > 0]
    return out


# ---------------------------------------------------------------------------
# coefficient box
# ---------------------------------------------------------------------------


def _exact_inverse(rows: list[list]) -> list[list]:
    h = len(rows)
    A = [[QComplex.lift(v) for v in row] + [QComplex.lift(int(i == j)) for j in range(h)] for i, row in enumerate(rows)]
    for col in range(h):
        piv = next((r for r in range(col, h) if A[r][col] != QComplex.lift(0)), None)
        if piv is None:
            raise ZeroDivisionError("singular point set")
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [v / p for v in A[col]]
        for r in range(h):
            if r != col and A[r][col] != QComplex.lift(0):
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [row[h:] for row in A]


def coefficient_box(E: Region, n: int, B, points: Optional[Sequence] = None) -> list[int]:
    """Integer bounds ``|a_k| <= bound_k`` valid for every ``P`` with ``||P||_E <= B``.

    With unisolvent points ``z_i`` in ``E``, ``a = V^{-1} (P(z_i))`` and each
    value has modulus at most ``B``, so ``|a_k| <= B * rho_k`` with ``rho_k``
    the row 1-norm of the exact inverse Vandermonde. Polydisks use the
    Cauchy estimate ``|a_k| <= B / r^k`` instead. Order follows
    ``monomials_upto(d, n)``.
    """
    B = Fraction(B)
    if B < 0:
        raise ValueError("B must be nonnegative")
    d = E.dim
    basis = monomials_upto(d, n)
    if B == 0:
        return [0] * len(basis)
    if isinstance(E, Polydisk) and points is None:
        out = []
        for k in basis:
            rk = Fraction(1)
            for r, e in zip(E.radii, k):
                rk *= r**e
            out.append(math.floor(B / rk))
        return out
    if points is None:
        if n == 0:
            points = sample_grid(E, 2)[:1] if not isinstance(E, PointSet) else E.points[:1]
        else:
            F = fekete_search(E, n)
            if F.degenerate:
                raise ZeroDivisionError("no unisolvent point set found in the region")
            points = F.points
    rows = vandermonde_rows(points, d, n)
    inv = _exact_inverse(rows)
    out = []
    for row in inv:
        rho = sum((sqrt_upper(v.abs2()) for v in row), Fraction(0))
        out.append(math.floor(B * rho))
    return out


# ---------------------------------------------------------------------------
# exhaustive
# ---------------------------------------------------------------------------


def exhaustive_search(
    E: Region,
    n: int,
    tol=DEFAULT_TOL,
    density: Optional[int] = None,
    max_h: int = EXHAUSTIVE_MAX_H,
    max_box: int = EXHAUSTIVE_MAX_BOX,
) -> SearchResult:
    """Certified integer Chebyshev polynomial of degree ``<= n`` by enumeration.

    Every nonzero vector of the coefficient box for the best norm seen so far
    is either rejected by an exact sample value exceeding that norm or
    certified by a sup-norm enclosure. Ties (enclosures within ``tol``) go to
    the smallest canonical coefficient vector.
    """
    d = E.dim
    h = comb(d + n, n)
    if n < 1:
        raise ValueError("n must be >= 1")
    if h > max_h:
        raise SearchRefused(f"h_n = {h} exceeds the exhaustive limit {max_h}")
    tol = Fraction(tol)
    basis = monomials_upto(d, n)

    seeds = trivial_candidates(E, n)
    cf = _closed_form_poly(E, n)
    if cf is not None:
        seeds.append(cf)
    # a good heuristic start shrinks the coefficient box; soundness only
    # needs the start to be certified, which _make checks below
    try:
        seeds.append(lattice_search(E, n, tol=tol).poly)
    except (lattice.DegenerateLattice, BudgetExceeded, ValueError):
        pass
    results = [_make(p, E, n, "exhaustive", tol) for p in seeds]
    certified = [r for r in results if r.norm.certified]
    if not certified:
        raise SearchRefused("no certified starting bound for this region")
    best = min(certified, key=lambda r: _rank(r, n))

    bounds = coefficient_box(E, n, best.norm.upper)
    volume = math.prod(2 * b + 1 for b in bounds)
    if volume > max_box:
        raise SearchRefused(f"coefficient box has {volume} vectors, limit {max_box}")

    pts = sample_grid(E, density or search_density(E, n))
    fl = _float_points(pts)
    S = _float_vander(fl, basis)
    seen = {tiebreak_key(r.poly, n): r for r in results}

    # enumerate the last few coordinates as a numpy block
    inner = 0
    block = 1
    while inner < h and block * (2 * bounds[h - 1 - inner] + 1) <= 20000:
        block *= 2 * bounds[h - 1 - inner] + 1
        inner += 1
    outer_ranges = [range(-b, b + 1) for b in bounds[: h - inner]]
    inner_grid = np.array(
        list(itertools.product(*[range(-b, b + 1) for b in bounds[h - inner :]])), dtype=float
    ).reshape(-1, inner)
    S_out, S_in = S[:, : h - inner], S[:, h - inner :]
    inner_vals = S_in @ inner_grid.T  # samples x block
    scale = float(np.abs(S).sum(axis=1).max()) * (max(bounds) + 1)

    ties: list[SearchResult] = [best]
    for outer in itertools.product(*outer_ranges):
        ov = S_out @ np.array(outer, dtype=float) if outer else np.zeros(S.shape[0], dtype=S.dtype)
        vals = np.abs(ov[:, None] + inner_vals).max(axis=0)
        thresh = float(best.norm.upper) + 1e-12 * scale + float(tol)
        for idx in np.nonzero(vals <= thresh)[0]:
            vec = list(outer) + [int(v) for v in inner_grid[idx]]
            if not any(vec):
                continue
            p = canonical(Poly.from_vector(d, n, vec))
            key = tuple(p.to_vector(n))
            if key in seen:
                continue
            # exact necessary condition at the best float sample
            i_best = int(np.argmax(np.abs(S @ np.array(key, dtype=float))))
            if abs_lower(p.evaluate(pts[i_best])) > best.norm.upper:
                continue
            r = _make(p, E, n, "exhaustive", tol)
            seen[key] = r
            if not r.norm.certified:
                continue
            if r.norm.upper < best.norm.upper - tol:
                best = r
                ties = [r]
            elif r.norm.lower <= best.norm.upper + tol:
                ties.append(r)
    ties = [t for t in ties if t.norm.lower <= best.norm.upper and t.norm.upper is not None]
    ties = [t for t in ties if t.norm.upper <= best.norm.upper + tol]
    winner = min(ties, key=lambda r: tiebreak_key(r.poly, n))
    winner = SearchResult(
        canonical(winner.poly), certify_poly(canonical(winner.poly), E, tol), n, "exhaustive", True,
        notes=(f"coefficient box volume {volume}",),
    )
    return winner


# ---------------------------------------------------------------------------
# lattice
# ---------------------------------------------------------------------------


def _integer_gram(rows: list[list], scale: int = LATTICE_SCALE, dps: int = 60) -> list[list[int]]:
    """``round(scale * Re(M^H M) / max diag)`` from exact sample rows."""
    with mpmath.workdps(dps):
        M = []
        for row in rows:
            M.append([_mpc(v) for v in row])
        h = len(M[0])
        G = [[mpmath.mpf(0)] * h for _ in range(h)]
        for row in M:
            conj = [mpmath.conj(v) for v in row]
            for i in range(h):
                ci = conj[i]
                Gi = G[i]
                for j in range(i, h):
                    Gi[j] += mpmath.re(ci * row[j])
        for i in range(h):
            for j in range(i):
                G[i][j] = G[j][i]
        mx = max(G[i][i] for i in range(h))
        if mx == 0:
            raise lattice.DegenerateLattice("all sample rows vanish")
        return [[int(mpmath.nint(G[i][j] * scale / mx)) for j in range(h)] for i in range(h)], mx


def _mpc(v):
    v = QComplex.lift(v)
    re = mpmath.mpf(v.re.numerator) / v.re.denominator
    if v.im == 0:
        return re
    return mpmath.mpc(re, mpmath.mpf(v.im.numerator) / v.im.denominator)


class _Collector:
    """Keeps the ``k`` best enumerated vectors by max |value| at the form points."""

    def __init__(self, Vf: np.ndarray, H, k: int, radius_of):
        self.Vf, self.H, self.k = Vf, H, k
        self.radius_of = radius_of
        self.best: list[tuple[float, tuple]] = []
        self.visits = 0

    def __call__(self, x, qx):
        self.visits += 1
        c = lattice.combine(x, self.H)
        s = float(np.abs(self.Vf @ np.array(c, dtype=float)).max())
        self.best.append((s, tuple(c)))
        if len(self.best) > 4 * self.k:
            self.best.sort()
            del self.best[self.k :]
        if len(self.best) >= self.k:
            self.best.sort()
            return self.radius_of(self.best[self.k - 1][0])
        return None

    def vectors(self):
        self.best.sort()
        out, seen = [], set()
        for s, c in self.best:
            if c not in seen:
                seen.add(c)
                out.append((s, c))
        return out[: self.k]


def _reduce_and_enumerate(rows, Vf, radius_of_sup, initial_sup, k, delta, budget):
    G, mx = _integer_gram(rows)
    H, G_red = lattice.lll_gram(G, delta)
    coll = _Collector(Vf, H, k, lambda s: radius_of_sup(s, mx))
    r2 = radius_of_sup(initial_sup, mx)
    nodes, done = lattice.enumerate_short(np.array(G_red, dtype=float), r2, coll, budget)
    # the reduced basis itself is always a source of candidates
    for i in range(len(H)):
        x = tuple(int(i == j) for j in range(len(H)))
        coll(x, G_red[i][i])
    return coll.vectors(), nodes, done


def lattice_search(
    E: Region,
    n: int,
    samples: Optional[int] = None,
    lll_delta=Fraction(99, 100),
    enum_budget: int = ENUM_BUDGET,
    tol=DEFAULT_TOL,
    top_k: int = 12,
    extra: Iterable[Poly] = (),
) -> SearchResult:
    """Short vectors of the lattice with ``Q(a) = sum_i P(z_i)^2`` over samples.

    The enumeration radius tracks the best sampled sup ``s`` found so far as
    ``N s^2``, so every polynomial whose sampled values beat ``s`` stays in
    range. The ``top_k`` best by sampled sup, plus trivial and injected
    candidates, are certified and the best enclosure wins.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    d = E.dim
    basis = monomials_upto(d, n)
    tol = Fraction(tol)
    pts = sample_grid(E, samples or search_density(E, n))
    if len(pts) < len(basis):
        raise lattice.DegenerateLattice("fewer samples than monomials; enlarge samples")
    rows = vandermonde_rows(pts, d, n)
    Vf = _float_vander(_float_points(pts), basis)
    N = len(pts)

    cands: list[Poly] = trivial_candidates(E, n)
    cf = _closed_form_poly(E, n)
    if cf is not None:
        cands.append(cf)
    cands += [p for p in extra if not p.is_zero() and p.degree <= n]
    init = min(float(np.abs(Vf @ np.array(p.to_vector(n), dtype=float)).max()) for p in cands)

    def radius(s, mx):
        return N * s * s * LATTICE_SCALE / float(mx) * (1 + 1e-6) + len(basis)

    try:
        vecs, nodes, done = _reduce_and_enumerate(rows, Vf, radius, init, top_k, lll_delta, enum_budget)
    except lattice.DegenerateLattice as exc:
        raise lattice.DegenerateLattice(f"degenerate sample Gram ({exc}); enlarge samples") from exc
    for _, c in vecs:
        if any(c):
            cands.append(Poly.from_vector(d, n, c))
    notes = [f"enumeration nodes {nodes}", "enumeration complete" if done else "enumeration budget exhausted"]
    res = _best_of(cands, E, n, "lattice", tol, top_k + 4, Vf)
    return SearchResult(res.poly, res.norm, n, "lattice", False, notes=tuple(notes))


def _best_of(cands: list[Poly], E: Region, n: int, strategy: str, tol, limit: int, Vf) -> SearchResult:
    uniq: dict = {}
    for p in cands:
        p = canonical(p)
        uniq.setdefault(tuple(p.to_vector(n)), p)
    scored = sorted(
        uniq.items(), key=lambda kv: (float(np.abs(Vf @ np.array(kv[0], dtype=float)).max()), kv[0])
    )
    results = [_make(p, E, n, strategy, tol) for _, p in scored[:limit]]
    return min(results, key=lambda r: _rank(r, n))


# ---------------------------------------------------------------------------
# Minkowski construction at Fekete points
# ---------------------------------------------------------------------------


def minkowski_construct(
    F: FeketeSet,
    E: Optional[Region] = None,
    tol=DEFAULT_TOL,
    enum_budget: int = ENUM_BUDGET,
    top_k: int = 12,
) -> SearchResult:
    """Integer ``P != 0`` with small values at the Fekete points.

    Minkowski's linear-forms theorem gives a nonzero integer vector with
    ``|P(zeta_j)| <= |V|^(1/h_n)`` for all ``j``; the lattice with
    ``Q(a) = sum_j |P(zeta_j)|^2`` is reduced and enumerated inside the
    ball that contains that box. The certified norm is compared with
    ``h_n |V|^(1/h_n)`` and the outcome recorded in ``bound_realized``.
    """
    if F.degenerate:
        raise ValueError("degenerate Fekete configuration (|V| = 0)")
    E = E if E is not None else F.region
    tol = Fraction(tol)
    d, n, h = F.d, F.n, F.h
    rows = vandermonde_rows(F.points, d, n)
    basis = monomials_upto(d, n)
    Vf = _float_vander(_float_points(F.points), basis)
    with mpmath.workdps(PRECISION_DIGITS):
        T = mpmath.exp(F.log_abs_V / h)
        target = h * T
    Tf = float(T)

    def radius(s, mx):
        return h * s * s * LATTICE_SCALE / float(mx) * (1 + 1e-6) + h

    vecs: list = []
    nodes, done = 0, True
    for grow in range(6):
        vecs, nodes, done = _reduce_and_enumerate(rows, Vf, radius, Tf * 2**grow, top_k, Fraction(99, 100), enum_budget)
        if any(s <= Tf * (1 + 1e-9) for s, _ in vecs):
            break
    cands = [Poly.from_vector(d, n, c) for _, c in vecs if any(c)]
    res = _best_of(cands, E, n, "minkowski", tol, top_k, Vf)
    realized = None
    if res.norm.upper is not None:
        with mpmath.workdps(PRECISION_DIGITS):
            up = mpmath.mpf(res.norm.upper.numerator) / res.norm.upper.denominator
            realized = bool(up <= target * (1 + mpmath.mpf(tol.numerator) / tol.denominator))
    note = "bound realized" if realized else "bound not realized; still a valid upper bound"
    return SearchResult(
        res.poly, res.norm, n, "minkowski", False, target=target, bound_realized=realized,
        notes=(note, f"enumeration nodes {nodes}"),
    )


# ---------------------------------------------------------------------------
# closed forms and sequences
# ---------------------------------------------------------------------------


def _closed_form_poly(E: Region, n: int) -> Optional[Poly]:
    from .certify import closed_form

    try:
        res = closed_form(E, n)
    except (TypeError, ValueError):
        return None
    return None if res is None else res.poly


def search(E: Region, n: int, strategy: str = "auto", tol=DEFAULT_TOL, **kw) -> SearchResult:
    """Dispatch by strategy name; ``auto`` tries closed form, exhaustive, lattice."""
    from .certify import closed_form

    if strategy == "exhaustive":
        return exhaustive_search(E, n, tol, **kw)
    if strategy == "lattice":
        return lattice_search(E, n, tol=tol, **kw)
    if strategy == "minkowski":
        return minkowski_construct(fekete_search(E, n), E, tol, **kw)
    if strategy == "closed-form":
        res = closed_form(E, n, tol)
        if res is None:
            raise SearchRefused(f"no closed form for this region at degree {n}")
        return res
    if strategy != "auto":
        raise ValueError(f"unknown strategy {strategy!r}")
    res = closed_form(E, n, tol) if isinstance(E, (Polydisk, Lemniscate)) else None
    if res is not None:
        return res
    try:
        return exhaustive_search(E, n, tol)
    except SearchRefused:
        return lattice_search(E, n, tol=tol, **kw)


@dataclass(frozen=True)
class SequenceRow:
    n: int
    result: SearchResult
    root: mpmath.mpf
    running_min: mpmath.mpf


def tz_sequence(E: Region, n_max: int, strategy: str = "auto", tol=DEFAULT_TOL) -> list[SequenceRow]:
    """Best certified norms for ``n = 1..n_max`` and the running ``min ||P||^(1/n)``.

    Powers and products of earlier winners are always injected, so the
    sequence never loses the submultiplicative bound ``best(m+n) <= best(m) best(n)``.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    rows: list[SequenceRow] = []
    winners: dict[int, Poly] = {}
    running = mpmath.inf
    for n in range(1, n_max + 1):
        extra = [winners[m] * winners[n - m] for m in range(1, n) if m <= n - m]
        if strategy == "lattice" or strategy == "auto":
            try:
                res = search(E, n, strategy, tol) if strategy == "auto" else None
            except SearchRefused:
                res = None
            if res is None or (res.strategy == "lattice"):
                lat = lattice_search(E, n, tol=tol, extra=extra)
                res = lat if res is None or _rank(lat, n) < _rank(res, n) else res
            elif extra and not res.certified_optimal:
                alt = _best_of(extra, E, n, res.strategy, tol, len(extra), _float_vander(
                    _float_points(sample_grid(E, search_density(E, n))), monomials_upto(E.dim, n)))
                if _rank(alt, n) < _rank(res, n):
                    res = alt
        else:
            res = search(E, n, strategy, tol)
        winners[n] = res.poly
        r = res.root()
        running = min(running, r)
        rows.append(SequenceRow(n, res, r, running))
    return rows
