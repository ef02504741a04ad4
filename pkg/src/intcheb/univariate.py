"""Univariate integer polynomial tools: resultants and real-root isolation.

Polynomials are plain coefficient lists, low degree first. Integer inputs
stay integral throughout the subresultant sequence.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def deg(p: Sequence) -> int:
    p = trim(p)
    return len(p) - 1 if p else -1


def content(p: Sequence[int]) -> int:
    g = 0
    for c in p:
        g = gcd(g, int(c))
    return g


def primitive_part(p: Sequence[int]) -> list[int]:
    p = trim(p)
    g = content(p)
    if g == 0:
        return []
    if p[-1] < 0:
        g = -g
    return [c // g for c in p]


def evaluate(p: Sequence, x):
    v = 0
    for c in reversed(p):
        v = v * x + c
    return v


def prem(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Pseudo-remainder: ``lc(b)**(deg a - deg b + 1) * a mod b`` over the integers."""
    a, b = trim(a), trim(b)
    db = len(b) - 1
    if db < 0:
        raise ZeroDivisionError("prem by zero polynomial")
    lb = b[-1]
    e = len(a) - len(b) + 1
    r = list(a)
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        lr = r[-1]
        r = [lb * c for c in r]
        for i, c in enumerate(b):
            r[i + shift] -= lr * c
        r = trim(r)
        e -= 1
    if e > 0:
        r = [c * lb**e for c in r]
    return r


def resultant(a: Sequence[int], b: Sequence[int]) -> int:
    """Resultant of two integer polynomials via the subresultant PRS."""
    a, b = trim([int(c) for c in a]), trim([int(c) for c in b])
    if not a or not b:
        return 0
    s = 1
    if len(a) < len(b):
        a, b = b, a
        if (len(a) - 1) % 2 and (len(b) - 1) % 2:
            s = -1
    da, db = len(a) - 1, len(b) - 1
    if db == 0:
        return s * b[0] ** da
    ca, cb = content(a), content(b)
    a = [c // ca for c in a]
    b = [c // cb for c in b]
    t = ca**db * cb**da
    g = h = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = prem(a, b)
        if not r:
            return 0
        a = b
        div = g * h**delta
        b = [c // div for c in r]
        g = a[-1]
        h = g**delta // h ** (delta - 1) if delta >= 1 else h * g**delta
        if len(b) - 1 == 0:
            break
    da = len(a) - 1
    h = b[-1] ** da // h ** (da - 1) if da >= 1 else h ** (1 - da) * b[-1] ** da
    return s * t * h


# ---------------------------------------------------------------------------
# Sturm sequences
# ---------------------------------------------------------------------------


def _qrem(a: list, b: list) -> list:
    r = [Fraction(c) for c in a]
    lb = Fraction(b[-1])
    while len(r) >= len(b) and r:
        q = r[-1] / lb
        shift = len(r) - len(b)
        for i, c in enumerate(b):
            r[i + shift] -= q * c
        r = trim(r)
    return r


def poly_gcd(a: Sequence, b: Sequence) -> list:
    a, b = trim([Fraction(c) for c in a]), trim([Fraction(c) for c in b])
    while b:
        a, b = b, _qrem(a, b)
    if not a:
        return []
    return [c / a[-1] for c in a]


def derivative(p: Sequence) -> list:
    return [i * c for i, c in enumerate(p)][1:]


def squarefree_part(p: Sequence[int]) -> list:
    p = trim(p)
    g = poly_gcd(p, derivative(p))
    if len(g) <= 1:
        return [Fraction(c) for c in p]
    # exact division p / g
    num = [Fraction(c) for c in p]
    out = [Fraction(0)] * (len(num) - len(g) + 1)
    for i in range(len(out) - 1, -1, -1):
        out[i] = num[i + len(g) - 1] / g[-1]
        for j, c in enumerate(g):
            num[i + j] -= out[i] * c
    return out


def sturm_sequence(p: Sequence) -> list[list]:
    p = squarefree_part(p)
    seq = [p, derivative(p)]
    while True:
        r = _qrem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return seq


def _sign_changes(seq: list[list], x) -> int:
    signs = []
    for q in seq:
        v = evaluate(q, x)
        if v:
            signs.append(v > 0)
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_real_roots(p: Sequence, lo, hi, seq=None) -> int:
    """Number of distinct real roots in the half-open interval ``(lo, hi]``."""
    seq = seq or sturm_sequence(p)
    return _sign_changes(seq, Fraction(lo)) - _sign_changes(seq, Fraction(hi))


def root_bound(p: Sequence) -> Fraction:
    p = trim(p)
    lead = abs(Fraction(p[-1]))
    return 1 + max((abs(Fraction(c)) / lead for c in p[:-1]), default=Fraction(0))


def isolate_real_roots(p: Sequence, width=None) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(lo, hi)``, one per distinct real root, sorted.

    A degenerate interval ``lo == hi`` marks an exact rational root. With
    ``width`` given, every non-degenerate interval is refined below it.
    """
    p = trim(p)
    if len(p) <= 1:
        return []
    seq = sturm_sequence(p)
    sf = seq[0]
    b = root_bound(p)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        k = count_real_roots(sf, lo, hi, seq)
        if k == 0:
            continue
        if k == 1:
            out.append((hi, hi) if evaluate(sf, hi) == 0 else (lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    out.sort()
    if width is not None:
        out = [refine_root(sf, iv, width, seq) for iv in out]
    return out


def refine_root(p: Sequence, interval, width, seq=None):
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    width = Fraction(width)
    if lo == hi:
        return lo, hi
    seq = seq or sturm_sequence(p)
    sf = seq[0]
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = evaluate(sf, mid)
        if v == 0:
            return mid, mid
        if count_real_roots(sf, lo, mid, seq) == 1:
            hi = mid
        else:
            lo = mid
    return lo, hi
