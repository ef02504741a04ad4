"""Exact certificates and closed-form bounds.

* ``n_certificate`` computes the integer ``N = prod_j a_j^(n prod_{k!=j} m_k)
  prod_{lambda in Lambda} P(lambda)`` by iterated resultants. A nonzero ``N``
  has ``|N| >= 1``, which turns into a lower bound for the norm of every
  integer polynomial of degree ``<= n`` once the lattice lies in the region.
* ``vanishing_check`` decides at which lattice points a polynomial vanishes.
* ``closed_form`` returns the extremal polynomials of polydisks and simple
  polylemniscates, ``projection_bound`` and ``hilbert_fekete_bound`` the two
  a-priori upper bounds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import mpmath

from . import univariate as U
from .polycore import Poly, QComplex, compose, format_rational, parse_rational
from .regions import Box, GraphSegment, Lemniscate, PointSet, Polydisk, Region, project
from .supnorm import DEFAULT_TOL, supnorm_region

DPS = 60


# ---------------------------------------------------------------------------
# minimal polynomials and lattices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MinimalPoly:
    """Integer polynomial (low-to-high coefficients) whose roots form one conjugate set.

    Primitivity is checked on construction; irreducibility is a declared
    attribute and is recorded as such in every certificate.
    """

    coeffs: tuple
    coordinate: int = 1  # 1-based
    irreducible: bool = True

    def __post_init__(self):
        cs = []
        for c in self.coeffs:
            q = parse_rational(c) if isinstance(c, str) else Fraction(c)
            if q.denominator != 1:
                raise ValueError("minimal polynomial coefficients must be integers")
            cs.append(int(q))
        cs = U.trim(cs)
        if len(cs) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if U.content(cs) != 1:
            raise ValueError(f"minimal polynomial {cs} is not primitive")
        if self.coordinate < 1:
            raise ValueError("coordinate index is 1-based")
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def real_root_intervals(self, width=None) -> list[tuple[Fraction, Fraction]]:
        return U.isolate_real_roots(list(self.coeffs), width)

    def squarefree(self) -> bool:
        return len(U.poly_gcd(list(self.coeffs), U.derivative(list(self.coeffs)))) <= 1

    def all_roots_real(self) -> bool:
        return self.squarefree() and len(self.real_root_intervals()) == self.degree

    def numeric_roots(self, dps: int = DPS) -> list:
        with mpmath.workdps(dps):
            return mpmath.polyroots(list(reversed(self.coeffs)), maxsteps=200, extraprec=2 * dps)

    def to_json_obj(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs], "coordinate": self.coordinate, "irreducible": self.irreducible}

    @classmethod
    def from_json_obj(cls, obj) -> "MinimalPoly":
        return cls(tuple(obj["coeffs"]), int(obj.get("coordinate", 1)), bool(obj.get("irreducible", False)))


@dataclass(frozen=True)
class AlgebraicLattice:
    """Product set ``Lambda_1 x ... x Lambda_d`` of conjugate sets.

    ``factors[j]`` lists the conjugate sets making up coordinate ``j + 1``
    (usually one; several when a coordinate is a union such as {0, 1}).
    """

    factors: tuple

    def __post_init__(self):
        fs = tuple(tuple(f) if isinstance(f, (list, tuple)) else (f,) for f in self.factors)
        if not fs or any(not f for f in fs):
            raise ValueError("every coordinate needs at least one minimal polynomial")
        object.__setattr__(self, "factors", fs)

    @classmethod
    def from_polys(cls, polys: Sequence[MinimalPoly]) -> "AlgebraicLattice":
        d = max(p.coordinate for p in polys)
        per = [[] for _ in range(d)]
        for p in polys:
            per[p.coordinate - 1].append(p)
        return cls(tuple(tuple(x) for x in per))

    @property
    def dim(self) -> int:
        return len(self.factors)

    @property
    def simple(self) -> bool:
        return all(len(f) == 1 for f in self.factors)

    def combinations(self):
        return itertools.product(*self.factors)

    def membership(self, E: Region) -> tuple[bool, list[str]]:
        """Whether every point of the lattice lies in ``E`` (checked per coordinate)."""
        msgs = []
        ok = True
        if isinstance(E, (GraphSegment, Lemniscate)) or (isinstance(E, PointSet) and E.dim > 1):
            return False, [f"membership is not checked for {type(E).__name__} regions"]
        for j, fs in enumerate(self.factors):
            proj = project(E, j + 1).region if E.dim > 1 else E
            for f in fs:
                good, why = _roots_in(f, proj)
                ok &= good
                msgs.append(f"coordinate {j + 1}, {list(f.coeffs)}: {why}")
        return ok, msgs

    def to_json_obj(self) -> list:
        return [f.to_json_obj() for fs in self.factors for f in fs]

    @classmethod
    def from_json_obj(cls, obj) -> "AlgebraicLattice":
        if isinstance(obj, dict):
            obj = obj.get("polys", [obj])
        return cls.from_polys([MinimalPoly.from_json_obj(o) for o in obj])


def _roots_in(f: MinimalPoly, proj: Region) -> tuple[bool, str]:
    if isinstance(proj, Box):
        a, b = proj.bounds[0]
        if not f.all_roots_real():
            return False, "not all roots are real and simple"
        ivs = f.real_root_intervals()
        # the root in (lo, hi] lies in [a, b] iff no root of f escapes [a, b]
        inside = U.count_real_roots(list(f.coeffs), a, b) + (1 if U.evaluate(f.coeffs, a) == 0 else 0)
        if inside == len(ivs):
            return True, f"all {len(ivs)} roots in [{a}, {b}] (Sturm count)"
        return False, f"only {inside} of {len(ivs)} roots in [{a}, {b}]"
    if isinstance(proj, Polydisk):
        r = proj.radii[0]
        with mpmath.workdps(DPS):
            roots = f.numeric_roots()
            worst = max(abs(z) for z in roots)
            ok = worst < mpmath.mpf(r.numerator) / r.denominator - mpmath.mpf(10) ** (-DPS // 2)
        return bool(ok), f"max |root| = {mpmath.nstr(worst, 12)} vs radius {r} (numerical, {DPS} digits)"
    if isinstance(proj, PointSet):
        pts = {QComplex.lift(p[0]) for p in proj.points}
        ivs = f.real_root_intervals()
        if f.all_roots_real() and all(lo == hi and QComplex.lift(lo) in pts for lo, hi in ivs):
            return True, "all roots rational and listed"
        return False, "roots are not all listed points"
    return False, f"membership not supported for {type(proj).__name__}"


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Hypothesis:
    text: str
    status: str  # "verified" | "declared" | "failed"

    def to_json_obj(self):
        return {"text": self.text, "status": self.status}


@dataclass(frozen=True)
class Certificate:
    kind: str  # n-integer | closed-form | projection | hilbert-fekete | finite-lower
    value: object
    claim: str
    hypotheses: tuple = ()
    lower: Optional[Fraction] = None  # rational value below the exact bound
    exact: Optional[str] = None  # symbolic exact form of the bound
    details: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return all(h.status != "failed" for h in self.hypotheses)

    def to_json_obj(self) -> dict:
        v = self.value
        if isinstance(v, (int, Fraction)):
            v = format_rational(v)
        elif isinstance(v, mpmath.mpf):
            v = mpmath.nstr(v, 30)
        out = {
            "kind": self.kind,
            "value": v,
            "claim": self.claim,
            "hypotheses": [h.to_json_obj() for h in self.hypotheses],
        }
        if self.lower is not None:
            out["lower"] = format_rational(self.lower)
        if self.exact is not None:
            out["exact"] = self.exact
        if self.details:
            out["details"] = self.details
        return out


class Inapplicable(ValueError):
    """A precondition of the requested certificate fails; the message names it."""


def _as_poly_coeffs(P: Poly) -> list[int]:
    cs = P.coeffs_univariate()
    return [int(c) for c in cs]


def _y_coeffs_at(P: Poly, x0: int) -> list[int]:
    """Coefficients in ``y`` of ``P(x0, y)``."""
    out: dict[int, int] = {}
    for (i, j), c in P.items():
        out[j] = out.get(j, 0) + int(c) * x0**i
    m = max(out) if out else -1
    return U.trim([out.get(j, 0) for j in range(m + 1)])


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[int]:
    """Exact Newton interpolation; coefficients low-to-high (must be integers)."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [Fraction(0)] * n
        for k in range(n - 1):
            new[k + 1] += poly[k]
            new[k] -= xs[i] * poly[k]
        new[0] += coef[i]
        poly = new
    if any(c.denominator != 1 for c in poly):
        raise ArithmeticError("interpolated resultant polynomial is not integral")
    return U.trim([int(c) for c in poly])


def _n_value(P: Poly, fs: Sequence[MinimalPoly], n: int) -> int:
    d = P.dim
    if d == 1:
        f = fs[0]
        p = U.trim(_as_poly_coeffs(P))
        if not p:
            return 0
        return f.leading ** (n - (len(p) - 1)) * U.resultant(list(f.coeffs), p)
    f1, f2 = fs
    m2 = f2.degree
    deg_r = m2 * n
    xs = list(range(deg_r + 1))
    ys = []
    for x0 in xs:
        g = _y_coeffs_at(P, x0)
        if not g:
            ys.append(0)
            continue
        e = len(g) - 1
        ys.append(f2.leading ** (n - e) * U.resultant(list(f2.coeffs), g))
    R = _interpolate(xs, ys)
    if not R:
        return 0
    return f1.leading ** (m2 * n - (len(R) - 1)) * U.resultant(list(f1.coeffs), R)


def n_certificate(P: Poly, L: AlgebraicLattice, n: Optional[int] = None) -> Certificate:
    """Exact integer ``N`` for ``P`` on the lattice ``L`` at degree ``n``.

    ``n`` defaults to ``deg P``. For lattices whose coordinates are unions of
    several conjugate sets the value is the product of the per-combination
    integers, listed in ``details``. ``N = 0`` iff ``P`` vanishes somewhere
    on the lattice.
    """
    if not P.is_integral():
        raise ValueError("P must have integer coefficients")
    if P.dim != L.dim:
        raise ValueError(f"polynomial in {P.dim} variables, lattice of dimension {L.dim}")
    if P.dim >= 3:
        raise NotImplementedError("exact lattice certificates are limited to d <= 2")
    if P.is_zero():
        raise ValueError("P must be nonzero")
    n = int(P.degree) if n is None else n
    if n < P.degree:
        raise ValueError(f"n = {n} is below deg P = {P.degree}")
    total = 1
    parts = {}
    for combo in L.combinations():
        v = _n_value(P, combo, n)
        parts[" x ".join(str(list(f.coeffs)) for f in combo)] = str(v)
        total *= v
    hyps = [Hypothesis("minimal polynomials primitive", "verified")]
    for fs in L.factors:
        for f in fs:
            hyps.append(Hypothesis(f"{list(f.coeffs)} irreducible", "declared" if f.irreducible else "failed"))
    return Certificate(
        "n-integer", total, f"N for degree {n}" + (" (zero: P vanishes on the lattice)" if total == 0 else ""),
        tuple(hyps), details={"combinations": parts, "n": n},
    )


def _rational_below_root(num: int, den: int, k: int, digits: int = 30) -> Fraction:
    """Largest ``q = p/10^digits`` with ``q^k <= num/den`` (exact check)."""
    target = Fraction(num, den)
    with mpmath.workdps(digits + 20):
        approx = mpmath.root(mpmath.mpf(num) / den, k)
        q = Fraction(int(mpmath.floor(approx * 10**digits)), 10**digits)
    while q**k > target:
        q -= Fraction(1, 10**digits)
    return q


def finite_lower_bound(L: AlgebraicLattice, n: int, E: Optional[Region] = None) -> Certificate:
    """Certified ``||C_n||_E >= prod_j |a_j|^(-n/m_j)`` when ``N != 0`` is forced.

    d = 1 needs ``m > n``; d = 2 needs ``m_1 > m_2 n`` and additionally
    ``m_2 > n`` so that ``P(x, lambda_2)`` cannot vanish identically. All
    conjugate sets must be declared irreducible and lie in ``E`` (checked).
    """
    if n < 1:
        raise Inapplicable("n must be >= 1")
    if not L.simple:
        raise Inapplicable("one conjugate set per coordinate is required")
    fs = [f[0] for f in L.factors]
    d = L.dim
    hyps = [Hypothesis("minimal polynomials primitive", "verified")]
    for f in fs:
        if not f.irreducible:
            raise Inapplicable(f"{list(f.coeffs)} is not declared irreducible")
        hyps.append(Hypothesis(f"{list(f.coeffs)} irreducible", "declared"))
    if d == 1:
        m = fs[0].degree
        if not m > n:
            raise Inapplicable(f"m > n violated: m = {m}, n = {n}")
        hyps.append(Hypothesis(f"m = {m} > n = {n}", "verified"))
    elif d == 2:
        m1, m2 = fs[0].degree, fs[1].degree
        if not m1 > m2 * n:
            raise Inapplicable(f"m_1 > m_2 n violated: m_1 = {m1}, m_2 n = {m2 * n}")
        if not m2 > n:
            raise Inapplicable(f"m_2 > n violated: m_2 = {m2}, n = {n}")
        hyps.append(Hypothesis(f"m_1 = {m1} > m_2 n = {m2 * n}", "verified"))
        hyps.append(Hypothesis(f"m_2 = {m2} > n = {n}", "verified"))
    else:
        raise Inapplicable("exact lattice certificates are limited to d <= 2")
    if E is not None:
        ok, msgs = L.membership(E)
        if not ok:
            raise Inapplicable("lattice not contained in the region: " + "; ".join(msgs))
        numerical = isinstance(E, Polydisk) or isinstance(E, Lemniscate)
        hyps.append(Hypothesis("lattice contained in E: " + "; ".join(msgs), "declared" if numerical else "verified"))
    else:
        hyps.append(Hypothesis("lattice contained in E", "declared"))
    # ||C||^(prod m) >= prod |a_j|^(-n prod_{k != j} m_k)
    M = math.prod(f.degree for f in fs)
    den = math.prod(abs(f.leading) ** (n * M // f.degree) for f in fs)
    q = _rational_below_root(1, den, M)
    exact = " * ".join(f"{abs(f.leading)}^(-{n}/{f.degree})" for f in fs)
    with mpmath.workdps(DPS):
        value = mpmath.root(mpmath.mpf(1) / den, M)
    r = math.isqrt(den) if M == 2 else None
    if r is not None and r * r == den:
        value = Fraction(1, r)
    return Certificate(
        "finite-lower", value, f"||C_{n}||_E >= {exact}", tuple(hyps), lower=q, exact=exact,
        details={"n": n, "power": M, "denominator": str(den)},
    )


def asymptotic_lower_bound(families: Sequence[Sequence[MinimalPoly]]) -> Certificate:
    """Finite surrogate ``prod_j max_members |a_j|^(-1/m_j)`` of the limsup bound.

    The limsup hypothesis over infinitely many sets cannot be checked from
    finitely many members; the output is labelled accordingly.
    """
    if not families or any(len(f) == 0 for f in families):
        raise ValueError("every coordinate needs a nonempty family")
    per = []
    exact_parts = []
    with mpmath.workdps(DPS):
        for fam in families:
            best = max(fam, key=lambda f: mpmath.root(mpmath.mpf(1) / abs(f.leading), f.degree))
            per.append(mpmath.root(mpmath.mpf(1) / abs(best.leading), best.degree))
            exact_parts.append((abs(best.leading), best.degree))
        value = mpmath.fprod(per)
    L = math.lcm(*[m for _, m in exact_parts])
    X = math.prod(a ** (L // m) for a, m in exact_parts)
    r = round(X ** (1 / L))
    exact_val = None
    for cand in (r - 1, r, r + 1):
        if cand > 0 and cand**L == X:
            exact_val = Fraction(1, cand)
    hyps = [Hypothesis("limsup over infinitely many conjugate sets", "declared")]
    if any(len(f) < 2 for f in families):
        hyps.append(Hypothesis("fewer than two members in some family", "declared"))
    return Certificate(
        "asymptotic-surrogate", exact_val if exact_val is not None else value,
        "surrogate for t_Z(E) >= prod s_j; depends on supplied families — not a standalone certificate",
        tuple(hyps), exact=" * ".join(f"{a}^(-1/{m})" for a, m in exact_parts),
        details={"per_coordinate": [mpmath.nstr(v, 30) for v in per]},
    )


# ---------------------------------------------------------------------------
# vanishing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PointVerdict:
    point: tuple  # per coordinate: exact rational or isolating interval (lo, hi)
    verdict: str  # "vanishes" | "nonzero" | "undetermined"
    reason: str

    def to_json_obj(self):
        pt = []
        for c in self.point:
            pt.append(format_rational(c) if isinstance(c, Fraction) else [format_rational(c[0]), format_rational(c[1])])
        return {"point": pt, "verdict": self.verdict, "reason": self.reason}


def _iv_mul(a, b):
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(ps), max(ps))


def _iv_eval(P: Poly, box: Sequence[tuple]) -> tuple[Fraction, Fraction]:
    lo = hi = Fraction(0)
    for k, c in P.items():
        t = (Fraction(c), Fraction(c))
        for iv, e in zip(box, k):
            for _ in range(e):
                t = _iv_mul(t, iv)
        lo, hi = lo + t[0], hi + t[1]
    return lo, hi


def vanishing_check(P: Poly, L: AlgebraicLattice, max_refine: int = 200) -> list[PointVerdict]:
    """Per-point verdicts over the real points of the lattice.

    Rational points are evaluated exactly. Irrational points use the exact
    integer ``N`` of their conjugate combination (``N != 0`` proves
    ``nonzero``), the gcd test in one variable, and interval evaluation on
    refined isolating intervals otherwise.
    """
    if P.dim != L.dim:
        raise ValueError("dimension mismatch")
    if L.dim > 2:
        raise NotImplementedError("vanishing checks are limited to d <= 2")
    out: list[PointVerdict] = []
    n = max(int(P.degree), 0) if not P.is_zero() else 0
    for combo in L.combinations():
        N = _n_value(P, combo, n) if not P.is_zero() else 0
        seqs = [(f, U.sturm_sequence(list(f.coeffs))) for f in combo]
        root_lists = [
            [(Fraction(-f.coeffs[0], f.coeffs[1]),) * 2] if f.degree == 1 else f.real_root_intervals() for f in combo
        ]
        for pt in itertools.product(*root_lists):
            exact = all(lo == hi for lo, hi in pt)
            coords = tuple(lo if lo == hi else (lo, hi) for lo, hi in pt)
            if exact:
                v = P.evaluate(tuple(lo for lo, _ in pt))
                out.append(PointVerdict(coords, "vanishes" if v == 0 else "nonzero", "exact rational evaluation"))
                continue
            if N != 0:
                out.append(PointVerdict(coords, "nonzero", f"N = {N} != 0 for this conjugate combination"))
                continue
            if P.dim == 1:
                g = U.poly_gcd(list(combo[0].coeffs), [Fraction(c) for c in _as_poly_coeffs(P)])
                lo, hi = pt[0]
                hit = len(g) > 1 and U.count_real_roots(g, lo, hi) == 1
                out.append(PointVerdict(coords, "vanishes" if hit else "nonzero", "gcd with the minimal polynomial"))
                continue
            fixed = [i for i, (lo, hi) in enumerate(pt) if lo == hi]
            if fixed:
                # one rational coordinate: substitute it and use the univariate test
                i = fixed[0]
                j = 1 - i
                t = Poly.var(0, 1)
                sub = [t, t]
                sub[i] = Poly.const(pt[i][0], 1)
                Pj = compose(P, sub)
                g = U.poly_gcd(list(combo[j].coeffs), [Fraction(c) for c in Pj.coeffs_univariate()]) if not Pj.is_zero() else [0, 1]
                hit = Pj.is_zero() or (len(g) > 1 and U.count_real_roots(g, *pt[j]) == 1)
                out.append(PointVerdict(coords, "vanishes" if hit else "nonzero", "rational coordinate substituted; gcd test"))
                continue
            box = list(pt)
            verdict = "undetermined"
            for _ in range(max_refine):
                lo, hi = _iv_eval(P, box)
                if lo > 0 or hi < 0:
                    verdict = "nonzero"
                    break
                box = [
                    iv if iv[0] == iv[1] else U.refine_root(list(f.coeffs), iv, (iv[1] - iv[0]) / 4, seq)
                    for iv, (f, seq) in zip(box, seqs)
                ]
            out.append(PointVerdict(coords, verdict, "interval evaluation" if verdict == "nonzero" else "N = 0 and interval brackets 0"))
    return out


# ---------------------------------------------------------------------------
# closed forms and a-priori bounds
# ---------------------------------------------------------------------------


def _min_radius(radii) -> tuple[int, Fraction]:
    m = min(range(len(radii)), key=lambda j: (radii[j], j))
    return m, radii[m]


def closed_form(E: Region, n: int, tol=DEFAULT_TOL):
    """Extremal polynomial for polydisks (any n) and simple polylemniscates (n = l k).

    Returns a :class:`~intcheb.intsearch.SearchResult` with strategy
    ``closed-form`` or ``None`` when no closed form is known.
    """
    from .intsearch import SearchResult

    if n < 1:
        raise ValueError("n must be >= 1")
    if isinstance(E, Polydisk):
        m, r = _min_radius(E.radii)
        d = E.dim
        if r >= 1:
            p = Poly.const(1, d)
            note = "r_m >= 1: C_n = 1, t_Z = 1"
        else:
            p = Poly.monomial(tuple(n if j == m else 0 for j in range(d)))
            note = f"t_Z = {format_rational(r)}"
        return SearchResult(p, supnorm_region(p, E, tol), n, "closed-form", notes=(note,))
    if isinstance(E, Lemniscate):
        q = E.map
        l = q.degree
        if E.dim == 1 and abs(q[0].leading_term()[1]) != 1:
            return None
        m, r = _min_radius(E.radii)
        if r >= 1 or n % l:
            return None
        k = n // l
        g = Poly.monomial(tuple(k if j == m else 0 for j in range(E.dim)))
        p = q[m] ** k
        enc = supnorm_region(p, E, tol, witness=g)
        tz = format_rational(r) if l == 1 else f"({format_rational(r)})^(1/{l})"
        return SearchResult(p, enc, n, "closed-form", notes=(f"t_Z = {tz}",))
    raise TypeError(f"closed forms exist only for polydisks and polylemniscates, not {type(E).__name__}")


def closed_form_certificate(E: Region, n: int, tol=DEFAULT_TOL) -> Optional[Certificate]:
    res = closed_form(E, n, tol)
    if res is None:
        return None
    return Certificate(
        "closed-form", res.norm.upper, f"t_Z({n}, E) = {format_rational(res.norm.upper)} attained by {res.poly}",
        (Hypothesis("region is a polydisk or a simple polylemniscate", "verified"),),
        details={"poly": res.poly.to_json_obj(), "notes": list(res.notes)},
    )


def _exact_root(q: Fraction, k: int) -> Optional[Fraction]:
    def iroot(v):
        r = round(v ** (1 / k)) if v < 2**1000 else int(mpmath.nint(mpmath.root(v, k)))
        for c in (r - 1, r, r + 1):
            if c >= 0 and c**k == v:
                return c
        return None

    a, b = iroot(q.numerator), iroot(q.denominator)
    return None if a is None or b is None else Fraction(a, b)


@dataclass(frozen=True)
class HFBound:
    value: mpmath.mpf
    exact: Optional[Fraction]
    d: int

    def __float__(self):
        return float(self.value)

    def to_json_obj(self):
        return {
            "value": format_rational(self.exact) if self.exact is not None else mpmath.nstr(self.value, 30),
            "estimate": self.exact is None,
        }


def hilbert_fekete_bound(tC, d: int) -> HFBound:
    """``tC^(d/(d+1))``; exact when ``tC`` is rational and the power is rational."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if isinstance(tC, (int, Fraction, str)):
        tC = parse_rational(tC) if isinstance(tC, str) else Fraction(tC)
        if tC < 0:
            raise ValueError("tC must be nonnegative")
        ex = _exact_root(tC**d, d + 1)
        with mpmath.workdps(DPS):
            val = mpmath.power(mpmath.mpf(tC.numerator) / tC.denominator, mpmath.mpf(d) / (d + 1))
        return HFBound(val, ex, d)
    with mpmath.workdps(DPS):
        tC = mpmath.mpf(tC)
        if tC < 0:
            raise ValueError("tC must be nonnegative")
        return HFBound(mpmath.power(tC, mpmath.mpf(d) / (d + 1)), None, d)


@dataclass(frozen=True)
class ProjectionBound:
    upper: Optional[Union[Fraction, mpmath.mpf]]
    exact_one: bool
    reason: str

    def to_json_obj(self):
        up = self.upper
        if isinstance(up, (int, Fraction)):
            up = format_rational(up)
        elif up is not None:
            up = mpmath.nstr(up, 30)
        return {"upper": up, "exact_one": self.exact_one, "reason": self.reason}


def _projection_cap_at_least_one(proj) -> bool:
    if proj.superset:
        return False
    R = proj.region
    if isinstance(R, Box):
        a, b = R.bounds[0]
        return b - a >= 4
    if isinstance(R, Polydisk):
        return R.radii[0] >= 1
    return False


def projection_bound(E: Region, per_coordinate=None) -> ProjectionBound:
    """``t_Z(E) <= min_j t_Z(E_j)``; exactly 1 when every projection has capacity >= 1."""
    projs = [project(E, j) for j in range(1, E.dim + 1)]
    if all(_projection_cap_at_least_one(p) for p in projs):
        return ProjectionBound(Fraction(1), True, "every projection has transfinite diameter >= 1, so C_n = 1")
    if per_coordinate is None:
        return ProjectionBound(None, False, "no per-coordinate bounds supplied")
    if not isinstance(per_coordinate, (list, tuple)):
        per_coordinate = [per_coordinate] * E.dim
    vals = []
    for v in per_coordinate:
        if isinstance(v, str):
            v = parse_rational(v)
        vals.append(v if isinstance(v, (int, Fraction)) else mpmath.mpf(v))
    j = min(range(len(vals)), key=lambda i: vals[i])
    return ProjectionBound(vals[j], False, f"minimum over coordinates attained at coordinate {j + 1}")
