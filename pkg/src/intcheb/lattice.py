"""Integral LLL reduction from a Gram matrix and short-vector enumeration.

The lattice is described only by its integer Gram matrix ``G`` (positive
definite). Reduction follows the all-integer variant that tracks the
subdeterminants ``d_i`` and scaled Gram-Schmidt coefficients, so no
rounding happens inside the reduction. Enumeration runs in floating point on
the reduced Gram matrix; callers re-verify every vector they keep.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np


class DegenerateLattice(ValueError):
    """The Gram matrix is not positive definite."""


def _round_div(a: int, b: int) -> int:
    # nearest integer to a/b for b > 0, ties toward +inf
    return (2 * a + b) // (2 * b)


def lll_gram(G: Sequence[Sequence[int]], delta: Fraction = Fraction(99, 100)):
    """LLL-reduce the lattice with integer Gram matrix ``G``.

    Returns ``(H, G_red)`` where the rows of the unimodular ``H`` express the
    reduced basis in terms of the input basis and ``G_red = H G H^T``.
    """
    n = len(G)
    G = [[int(v) for v in row] for row in G]
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta <= 1:
        raise ValueError("delta must lie in (1/4, 1]")
    p, q = delta.numerator, delta.denominator
    H = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 0:
        return H, []
    lam = [[0] * n for _ in range(n)]
    d = [0] * (n + 1)  # d[i + 1] holds d_i; d[0] = 1 plays d_{-1}
    d[0] = 1
    d[1] = G[0][0]
    if d[1] <= 0:
        raise DegenerateLattice("zero vector in basis")
    k, kmax = 1, 0

    def gram(i, j):
        hi, hj = H[i], H[j]
        s = 0
        for a, ha in enumerate(hi):
            if ha:
                row = G[a]
                s += ha * sum(hb * row[b] for b, hb in enumerate(hj) if hb)
        return s

    def red(k, l):
        dl = d[l + 1]
        if 2 * abs(lam[k][l]) > dl:
            r = _round_div(lam[k][l], dl)
            Hk, Hl = H[k], H[l]
            for c in range(n):
                Hk[c] -= r * Hl[c]
            lam[k][l] -= r * dl
            for i in range(l):
                lam[k][i] -= r * lam[l][i]

    def swap(k):
        H[k], H[k - 1] = H[k - 1], H[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lk = lam[k][k - 1]
        dk, dk1, dk2 = d[k + 1], d[k], d[k - 1]
        B = (dk2 * dk + lk * lk) // dk1
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (dk * lam[i][k - 1] - lk * t) // dk1
            lam[i][k - 1] = (B * t + lk * lam[i][k]) // dk
        d[k] = B

    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = gram(k, j)
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    if u <= 0:
                        raise DegenerateLattice(f"basis vectors dependent at index {k}")
                    d[k + 1] = u
        while True:
            red(k, k - 1)
            lk = lam[k][k - 1]
            if q * (d[k + 1] * d[k - 1] + lk * lk) < p * d[k] * d[k]:
                swap(k)
                k = max(1, k - 1)
            else:
                for l in range(k - 2, -1, -1):
                    red(k, l)
                k += 1
                break
    G_red = [[gram(i, j) for j in range(n)] for i in range(n)]
    return H, G_red


def gram_schmidt_float(G: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``mu`` and squared norms ``B`` with ``x^T G x = sum_i B_i (x_i + sum_{j>i} mu_ji x_j)^2``."""
    G = np.asarray(G, dtype=float)
    n = G.shape[0]
    mu = np.zeros((n, n))
    B = np.zeros(n)
    for i in range(n):
        for j in range(i):
            mu[i, j] = (G[i, j] - np.dot(mu[j, :j] * mu[i, :j], B[:j])) / B[j]
        B[i] = G[i, i] - np.dot(mu[i, :i] ** 2, B[:i])
        if B[i] <= 0:
            raise DegenerateLattice("Gram matrix numerically singular")
    return mu, B


def enumerate_short(
    G: np.ndarray,
    radius2: float,
    visit: Callable[[tuple, float], Optional[float]],
    budget: int = 1_000_000,
) -> tuple[int, bool]:
    """Visit every nonzero ``x`` (up to sign) with ``x^T G x <= radius2``.

    ``visit(x, qx)`` may return a smaller radius to prune the remaining
    search. Returns ``(nodes, exhausted)``; ``exhausted`` is False when the
    node budget stopped the search early.
    """
    mu, B = gram_schmidt_float(G)
    n = len(B)
    x = [0] * n
    state = {"nodes": 0, "r2": float(radius2)}
    slack = 1e-9

    def rec(i: int, partial: float, all_zero_above: bool) -> bool:
        c = -sum(mu[j, i] * x[j] for j in range(i + 1, n))
        r2 = state["r2"] * (1 + slack)
        rem = r2 - partial
        if rem < 0:
            return True
        half = np.sqrt(rem / B[i])
        lo, hi = int(np.ceil(c - half)), int(np.floor(c + half))
        if all_zero_above:
            lo = max(lo, 0)
        # zig-zag from the centre keeps short vectors first
        for v in _zigzag(int(round(c)), lo, hi):
            state["nodes"] += 1
            if state["nodes"] > budget:
                return False
            x[i] = v
            val = partial + B[i] * (v - c) ** 2
            if val > state["r2"] * (1 + slack):
                continue
            if i == 0:
                if all_zero_above and v == 0:
                    continue
                new_r = visit(tuple(x), val)
                if new_r is not None:
                    state["r2"] = min(state["r2"], float(new_r))
            else:
                if not rec(i - 1, val, all_zero_above and v == 0):
                    x[i] = 0
                    return False
        x[i] = 0
        return True

    done = rec(n - 1, 0.0, True)
    return state["nodes"], done


def _zigzag(start: int, lo: int, hi: int):
    if lo > hi:
        return
    start = min(max(start, lo), hi)
    yield start
    t = 1
    while start + t <= hi or start - t >= lo:
        if start + t <= hi:
            yield start + t
        if start - t >= lo:
            yield start - t
        t += 1


def combine(x: Sequence[int], H: Sequence[Sequence[int]]) -> list[int]:
    """Coordinates ``x`` in the reduced basis -> coefficient vector ``x H``."""
    n = len(H[0])
    out = [0] * n
    for xi, row in zip(x, H):
        if xi:
            for c in range(n):
                out[c] += xi * row[c]
    return out
