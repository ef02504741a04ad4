"""Exact sparse multivariate polynomials over the integers and rationals.

Monomials are indexed by tuples of non-negative exponents. All iteration
happens in graded-lex order (total degree first, then lexicographic on the
exponent tuple), which is also the column order used for Vandermonde
matrices in :mod:`intcheb.fekete`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

MultiIndex = tuple  # tuple[int, ...]
Coeff = Union[int, Fraction]


class DimensionError(ValueError):
    """Operands live in spaces of different dimension."""


def _norm_coeff(c) -> Coeff:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _norm_coeff(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return _norm_coeff(Fraction(c))
    raise TypeError(f"coefficient must be an exact rational, got {type(c).__name__}")


def parse_rational(s) -> Fraction:
    """Parse ``"3"``, ``"-1/2"``, ``"0.25"`` or an int into a Fraction."""
    if isinstance(s, float):
        raise TypeError("binary floats are not accepted as exact input")
    return Fraction(s)


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# exact complex rationals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QComplex:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def lift(x) -> "QComplex":
        return x if isinstance(x, QComplex) else QComplex(Fraction(x), Fraction(0))

    def __add__(self, o):
        o = QComplex.lift(o)
        return QComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QComplex(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-QComplex.lift(o))

    def __rsub__(self, o):
        return QComplex.lift(o) - self

    def __mul__(self, o):
        o = QComplex.lift(o)
        return QComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = QComplex.lift(o)
        den = o.abs2()
        if den == 0:
            raise ZeroDivisionError("complex division by zero")
        num = self * o.conjugate()
        return QComplex(num.re / den, num.im / den)

    def __rtruediv__(self, o):
        return QComplex.lift(o) / self

    def __pow__(self, k: int):
        if k < 0:
            return QComplex(1) / (self ** (-k))
        out, base = QComplex(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        if isinstance(o, (int, Fraction, QComplex)):
            o = QComplex.lift(o)
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def conjugate(self) -> "QComplex":
        return QComplex(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))


def abs2(v) -> Fraction:
    """Exact squared modulus of a rational or QComplex value."""
    if isinstance(v, QComplex):
        return v.abs2()
    v = Fraction(v)
    return v * v


def point_is_real(z: Sequence) -> bool:
    return all(not isinstance(c, QComplex) or c.im == 0 for c in z)


def to_float_point(z: Sequence) -> np.ndarray:
    if point_is_real(z):
        return np.array([float(c.re if isinstance(c, QComplex) else c) for c in z])
    return np.array([complex(QComplex.lift(c)) for c in z])


# ---------------------------------------------------------------------------
# monomial order
# ---------------------------------------------------------------------------


def grlex_key(k: Sequence[int]):
    return (sum(k), tuple(k))


def order_compare(k1: Sequence[int], k2: Sequence[int]) -> int:
    """Graded-lex comparison: -1 if ``k1`` precedes ``k2``, 0 if equal, 1 otherwise.

    Smaller total degree comes first; on equal degree ``k1`` precedes ``k2``
    when the first nonzero entry of ``k1 - k2`` is negative.
    """
    if len(k1) != len(k2):
        raise DimensionError(f"multi-indices of length {len(k1)} and {len(k2)}")
    a, b = grlex_key(k1), grlex_key(k2)
    return (a > b) - (a < b)


def monomials_upto(d: int, n: int) -> list[tuple[int, ...]]:
    """All multi-indices of length ``d`` and degree ``<= n`` in graded-lex order."""
    if d < 1 or n < 0:
        raise ValueError("need d >= 1 and n >= 0")
    out: list[tuple[int, ...]] = []
    for deg in range(n + 1):
        out.extend(_compositions(deg, d))
    return out


def _compositions(total: int, parts: int):
    # lexicographically ascending
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def num_monomials(d: int, n: int) -> int:
    return comb(d + n, n)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


class Poly:
    """Immutable sparse polynomial in ``dim`` variables with exact coefficients.

    Coefficients are Python ints (arbitrary precision) or Fractions; a Fraction
    with denominator one is stored as an int, so ``is_integral`` is cheap.
    """

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[Sequence[int], object] | Iterable = ()):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], Coeff] = {}
        for k, c in items:
            k = tuple(int(e) for e in k)
            if len(k) != dim:
                raise DimensionError(f"multi-index {k} does not have length {dim}")
            if any(e < 0 for e in k):
                raise ValueError(f"negative exponent in {k}")
            acc[k] = acc.get(k, 0) + _norm_coeff(c)
        self.dim = dim
        self._terms = {k: _norm_coeff(acc[k]) for k in sorted(acc, key=grlex_key) if acc[k] != 0}
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, c, dim: int = 1) -> "Poly":
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def zero(cls, dim: int = 1) -> "Poly":
        return cls(dim)

    @classmethod
    def var(cls, j: int, dim: int) -> "Poly":
        """The coordinate function ``z_j`` (0-based ``j``)."""
        if not 0 <= j < dim:
            raise IndexError(j)
        k = [0] * dim
        k[j] = 1
        return cls(dim, {tuple(k): 1})

    @classmethod
    def monomial(cls, k: Sequence[int], c=1) -> "Poly":
        return cls(len(k), {tuple(k): c})

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "Poly":
        """Univariate polynomial from low-to-high coefficients."""
        return cls(1, {(i,): c for i, c in enumerate(coeffs)})

    @classmethod
    def from_vector(cls, dim: int, n: int, vec: Sequence) -> "Poly":
        """Inverse of :meth:`to_vector` for the basis ``monomials_upto(dim, n)``."""
        basis = monomials_upto(dim, n)
        if len(vec) != len(basis):
            raise ValueError(f"expected {len(basis)} coefficients, got {len(vec)}")
        return cls(dim, zip(basis, vec))

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, k: Sequence[int]) -> Coeff:
        return self._terms.get(tuple(k), 0)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> float:
        if not self._terms:
            return float("-inf")
        return max(sum(k) for k in self._terms)

    def degree_in(self, j: int) -> int:
        return max((k[j] for k in self._terms), default=0)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def leading_term(self) -> tuple[tuple[int, ...], Coeff]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        k = next(reversed(self._terms))
        return k, self._terms[k]

    def to_vector(self, n: int | None = None) -> list:
        n = int(self.degree) if n is None else n
        if self._terms and self.degree > n:
            raise ValueError(f"degree {self.degree} exceeds {n}")
        return [self.coeff(k) for k in monomials_upto(self.dim, max(n, 0))]

    def coeffs_univariate(self) -> list:
        if self.dim != 1:
            raise DimensionError("not univariate")
        if not self._terms:
            return []
        return [self.coeff((i,)) for i in range(int(self.degree) + 1)]

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.dim != self.dim:
                raise DimensionError(f"dimension {self.dim} vs {other.dim}")
            return other
        return Poly.const(_norm_coeff(other), self.dim)

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return Poly(self.dim, acc)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.dim, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        acc: dict = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                acc[k] = acc.get(k, 0) + c1 * c2
        return Poly(self.dim, acc)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        out, base = Poly.const(1, self.dim), self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def scale(self, c) -> "Poly":
        c = _norm_coeff(c)
        return Poly(self.dim, {k: c * v for k, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.dim == other.dim and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other, self.dim)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, tuple(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({self.dim}, {self._terms!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        names = ["x", "y", "z", "w"] if self.dim <= 4 else [f"z{i+1}" for i in range(self.dim)]
        parts = []
        for k, c in reversed(self._terms.items()):
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(k) if e
            )
            cs = format_rational(c)
            if mono:
                cs = "" if c == 1 else "-" if c == -1 else cs + "*"
                parts.append(cs + mono)
            else:
                parts.append(cs)
        return " + ".join(parts).replace("+ -", "- ")

    # -- evaluation ---------------------------------------------------------
    def __call__(self, *z):
        return self.evaluate(z)

    def evaluate(self, z: Sequence):
        """Exact value at a point of rationals and/or :class:`QComplex`."""
        if len(z) != self.dim:
            raise DimensionError(f"point of length {len(z)} for dim {self.dim}")
        z = [c if isinstance(c, QComplex) else Fraction(c) for c in z]
        powers: list[dict[int, object]] = [{0: 1} for _ in range(self.dim)]

        def pw(j, e):
            cache = powers[j]
            if e not in cache:
                cache[e] = z[j] ** e
            return cache[e]

        total = 0
        for k, c in self._terms.items():
            t = c
            for j, e in enumerate(k):
                if e:
                    t = t * pw(j, e)
            total = total + t
        if isinstance(total, QComplex) and total.im == 0:
            return total.re
        return Fraction(total) if not isinstance(total, QComplex) else total

    def eval_float(self, pts: np.ndarray) -> np.ndarray:
        """Vectorised floating evaluation at an ``(m, dim)`` array of points."""
        pts = np.atleast_2d(np.asarray(pts))
        out = np.zeros(pts.shape[0], dtype=np.result_type(pts.dtype, float))
        for k, c in self._terms.items():
            t = np.full(pts.shape[0], float(c), dtype=out.dtype)
            for j, e in enumerate(k):
                if e:
                    t = t * pts[:, j] ** e
            out = out + t
        return out

    # -- serialization ------------------------------------------------------
    def to_json_obj(self) -> dict:
        return {
            "dim": self.dim,
            "terms": [list(k) + [format_rational(c)] for k, c in self._terms.items()],
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "Poly":
        dim = int(obj["dim"])
        terms = []
        for row in obj["terms"]:
            if len(row) != dim + 1:
                raise ValueError(f"term {row!r} has wrong length for dim {dim}")
            terms.append((row[:dim], parse_rational(row[dim])))
        return cls(dim, terms)

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj())


IntPoly = Poly


def eval_exact(p: Poly, z: Sequence):
    return p.evaluate(z)


def arith(p: Poly, q, op: str) -> Poly:
    """Dispatch ring operations by name: ``add``, ``sub``, ``mul`` or ``pow``."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "pow":
        return p ** int(q)
    raise ValueError(f"unknown op {op!r}")


def homogeneous_part(p: Poly, l: int) -> Poly:
    return Poly(p.dim, {k: c for k, c in p.items() if sum(k) == l})


def compose(p: Poly, q: Sequence[Poly]) -> Poly:
    """Substitute ``z_j -> q[j]`` in ``p``."""
    if len(q) != p.dim:
        raise DimensionError(f"{p.dim} variables but {len(q)} substitutions")
    if not q:
        raise DimensionError("empty substitution")
    e = q[0].dim
    if any(qj.dim != e for qj in q):
        raise DimensionError("substituted polynomials must share a dimension")
    cache: list[dict[int, Poly]] = [{0: Poly.const(1, e), 1: qj} for qj in q]

    def pw(j, k):
        c = cache[j]
        if k not in c:
            c[k] = pw(j, k // 2) * pw(j, k - k // 2)
        return c[k]

    out = Poly.zero(e)
    for k, c in p.items():
        t = Poly.const(c, e)
        for j, kj in enumerate(k):
            if kj:
                t = t * pw(j, kj)
        out = out + t
    return out


def exact_divide(p: Poly, f: Poly) -> Poly | None:
    """Quotient ``p / f`` if ``f`` divides ``p`` over the integers, else ``None``.

    Reduction by the single divisor uses its graded-lex leading term; since the
    order is a monomial order, a zero remainder is equivalent to divisibility.
    """
    f = p._coerce(f)
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lk, lc = f.leading_term()
    rest = dict(p.terms)
    quot: dict = {}
    while rest:
        k = max(rest, key=grlex_key)
        c = rest[k]
        if any(a < b for a, b in zip(k, lk)):
            return None  # leading term of the remainder is not reducible
        qk = tuple(a - b for a, b in zip(k, lk))
        qc = Fraction(c) / lc
        quot[qk] = qc
        for fk, fc in f.items():
            mk = tuple(a + b for a, b in zip(qk, fk))
            v = rest.get(mk, 0) - qc * fc
            if v == 0:
                rest.pop(mk, None)
            else:
                rest[mk] = v
    q = Poly(p.dim, quot)
    if p.is_integral() and f.is_integral() and not q.is_integral():
        return None
    return q


def affine_substitute(p: Poly, shift: Sequence, scale: Sequence) -> Poly:
    """``p(shift + scale * t)`` coordinatewise, exactly."""
    d = p.dim
    qs = [Poly(d, {(0,) * d: shift[j], tuple(int(i == j) for i in range(d)): scale[j]}) for j in range(d)]
    return compose(p, qs)


def chebyshev_classical(n: int, a, b) -> tuple[Poly, Fraction]:
    """Monic Chebyshev polynomial of degree ``n`` for ``[a, b]`` and its norm.

    Returns ``(t_n, 2 * ((b - a) / 4) ** n)`` with exact rational coefficients.
    """
    a, b = Fraction(a), Fraction(b)
    if n < 1:
        raise ValueError("n must be >= 1")
    if a >= b:
        raise ValueError(f"degenerate interval [{a}, {b}]")
    x = Poly.var(0, 1)
    t_prev, t_cur = Poly.const(1), x
    for _ in range(n - 1):
        t_prev, t_cur = t_cur, 2 * x * t_cur - t_prev
    monic = t_cur.scale(Fraction(1, 2 ** (n - 1)))
    u = Poly.from_coeffs([-(a + b) / (b - a), Fraction(2) / (b - a)])
    tn = compose(monic, [u]).scale(((b - a) / 2) ** n)
    return tn, 2 * ((b - a) / 4) ** n


def restrict_to_graph(p: Poly, line: Sequence) -> Poly:
    """``p(x, c0 + c1 x)`` for a bivariate ``p`` and ``line = (c0, c1)``."""
    if p.dim != 2:
        raise DimensionError("graph restriction needs a bivariate polynomial")
    x = Poly.var(0, 1)
    return compose(p, [x, Poly.from_coeffs(list(line))])
