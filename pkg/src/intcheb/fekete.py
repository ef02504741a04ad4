"""Vandermonde determinants, Fekete point search and transfinite diameter estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

import mpmath
import numpy as np
import scipy.linalg

from .polycore import QComplex, monomials_upto, point_is_real
from .regions import Lemniscate, PointSet, Polydisk, Region, sample_grid

PRECISION_DIGITS = 70


@dataclass(frozen=True)
class DegreeDims:
    d: int
    n: int

    @property
    def h(self) -> int:
        return comb(self.d + self.n, self.n)

    @property
    def l(self) -> int:
        return self.d * comb(self.d + self.n, self.d + 1)

    def ratio(self) -> Fraction:
        """``l_n / (n h_n)``, which equals ``d / (d + 1)`` for every n >= 1."""
        return Fraction(self.l, self.n * self.h)


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------


def vandermonde_rows(points: Sequence, d: int, n: int) -> list[list]:
    basis = monomials_upto(d, n)
    rows = []
    for z in points:
        if len(z) != d:
            raise ValueError(f"point {z} is not in dimension {d}")
        z = [c if isinstance(c, QComplex) else Fraction(c) for c in z]
        pw = [[1] for _ in range(d)]
        for j in range(d):
            for _ in range(n):
                pw[j].append(pw[j][-1] * z[j])
        row = []
        for k in basis:
            t = 1
            for j, e in enumerate(k):
                if e:
                    t = t * pw[j][e]
            row.append(t)
        rows.append(row)
    return rows


def _check_count(points, d, n):
    h = comb(d + n, n)
    if len(points) != h:
        raise ValueError(f"need h_n = {h} points for d={d}, n={n}, got {len(points)}")


def _to_mp(v):
    if isinstance(v, QComplex):
        if v.im == 0:
            return mpmath.mpf(v.re.numerator) / v.re.denominator
        return mpmath.mpc(
            mpmath.mpf(v.re.numerator) / v.re.denominator, mpmath.mpf(v.im.numerator) / v.im.denominator
        )
    v = Fraction(v)
    return mpmath.mpf(v.numerator) / v.denominator


def vandermonde_logabs(points: Sequence, d: int, n: int, dps: int = PRECISION_DIGITS):
    """``(log|V|, phase)`` of the Vandermonde determinant in graded-lex column order.

    Computed by Gaussian elimination with partial pivoting at ``dps`` digits.
    ``phase`` is the sign (real case) or unit complex number; a singular
    configuration returns ``(-inf, 0)``.
    """
    _check_count(points, d, n)
    rows = vandermonde_rows(points, d, n)
    with mpmath.workdps(dps):
        A = [[_to_mp(v) for v in row] for row in rows]
        h = len(A)
        logabs = mpmath.mpf(0)
        phase = mpmath.mpf(1)
        for col in range(h):
            piv = max(range(col, h), key=lambda r: abs(A[r][col]))
            if A[piv][col] == 0:
                return -mpmath.inf, mpmath.mpf(0)
            if piv != col:
                A[col], A[piv] = A[piv], A[col]
                phase = -phase
            p = A[col][col]
            logabs += mpmath.log(abs(p))
            phase *= p / abs(p)
            for r in range(col + 1, h):
                f = A[r][col] / p
                if f:
                    Ar, Ac = A[r], A[col]
                    for c in range(col + 1, h):
                        Ar[c] -= f * Ac[c]
        return +logabs, +phase


def vandermonde_exact(points: Sequence, d: int, n: int):
    """Exact determinant (Fraction or QComplex); intended for ``h_n <= 12``."""
    _check_count(points, d, n)
    A = [[v if isinstance(v, QComplex) else Fraction(v) for v in row] for row in vandermonde_rows(points, d, n)]
    h = len(A)
    det = Fraction(1)
    for col in range(h):
        piv = next((r for r in range(col, h) if A[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        p = A[col][col]
        det = det * p
        for r in range(col + 1, h):
            f = A[r][col] / p
            if f != 0:
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return det


# ---------------------------------------------------------------------------
# conditioned basis for the search
# ---------------------------------------------------------------------------


class _Basis:
    """Per-coordinate affinely normalised basis with the same graded-lex span.

    Real coordinates use Chebyshev polynomials of the normalised variable,
    complex ones plain powers of it. Both are triangular against monomials in
    graded-lex order, so determinant ratios agree with the monomial ones.
    """

    def __init__(self, pts: np.ndarray, d: int, n: int):
        self.d, self.n = d, n
        self.real = not np.iscomplexobj(pts)
        self.basis = monomials_upto(d, n)
        if self.real:
            lo, hi = pts.min(axis=0), pts.max(axis=0)
            self.center = (lo + hi) / 2
            self.scale = np.where(hi > lo, (hi - lo) / 2, 1.0)
        else:
            re_c = (pts.real.min(axis=0) + pts.real.max(axis=0)) / 2
            im_c = (pts.imag.min(axis=0) + pts.imag.max(axis=0)) / 2
            self.center = re_c + 1j * im_c
            s = np.abs(pts - self.center).max(axis=0)
            self.scale = np.where(s > 0, s, 1.0)

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        u = (pts - self.center) / self.scale
        m = pts.shape[0]
        tables = []
        for j in range(self.d):
            T = np.empty((self.n + 1, m), dtype=u.dtype)
            T[0] = 1
            if self.n >= 1:
                T[1] = u[:, j]
            for k in range(2, self.n + 1):
                T[k] = 2 * u[:, j] * T[k - 1] - T[k - 2] if self.real else u[:, j] * T[k - 1]
            tables.append(T)
        out = np.empty((m, len(self.basis)), dtype=u.dtype)
        for c, k in enumerate(self.basis):
            col = np.ones(m, dtype=u.dtype)
            for j, e in enumerate(k):
                if e:
                    col = col * tables[j][e]
            out[:, c] = col
        return out


def _float_points(points: Sequence) -> np.ndarray:
    if all(point_is_real(z) for z in points):
        return np.array([[float(QComplex.lift(c).re) for c in z] for z in points], dtype=float)
    return np.array([[complex(QComplex.lift(c)) for c in z] for z in points], dtype=complex)


# ---------------------------------------------------------------------------
# Fekete search
# ---------------------------------------------------------------------------


@dataclass
class FeketeSet:
    points: tuple
    d: int
    n: int
    log_abs_V: mpmath.mpf
    diam_estimate: mpmath.mpf
    history: tuple = ()
    converged: bool = True
    density: Optional[int] = None
    seed: Optional[int] = None
    region: Optional[Region] = field(default=None, repr=False)

    @property
    def h(self) -> int:
        return comb(self.d + self.n, self.n)

    @property
    def degenerate(self) -> bool:
        return self.log_abs_V == -mpmath.inf

    def abs_V_root(self) -> mpmath.mpf:
        """``|V|^(1/h_n)``, the Minkowski target for the point values."""
        with mpmath.workdps(PRECISION_DIGITS):
            return mpmath.exp(self.log_abs_V / self.h)


def default_density(E: Region, n: int) -> int:
    d = E.dim
    if isinstance(E, Polydisk):
        return max(8, 4 * n + 4) if d == 1 else max(8, 2 * n + 4)
    if isinstance(E, Lemniscate):
        return max(8, 3 * n + 4) if d == 1 else max(6, n + 4)
    if d == 1:
        return max(16, 8 * n + 1)
    return max(8, 3 * n + 1)


def fekete_search(
    E: Region,
    n: int,
    iters: int = 1000,
    seed: Optional[int] = None,
    density: Optional[int] = None,
    candidates: Optional[Sequence] = None,
) -> FeketeSet:
    """Grid-restricted approximate Fekete points of degree ``n`` in ``E``.

    Greedy selection by column-pivoted QR on the candidate Vandermonde, then
    single-point exchanges while some candidate strictly increases ``|V|``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    d = E.dim
    h = comb(d + n, n)
    density = density or default_density(E, n)
    cand = list(candidates) if candidates is not None else sample_grid(E, density, seed)
    # deduplicate while keeping order
    seen, uniq = set(), []
    for z in cand:
        key = tuple(QComplex.lift(c) for c in z)
        if key not in seen:
            seen.add(key)
            uniq.append(z)
    cand = uniq
    if len(cand) < h:
        if not isinstance(E, PointSet):
            raise ValueError(f"candidate grid has {len(cand)} points, need {h}; raise the density")
        # a finite set with fewer than h_n points is never unisolvent
        return FeketeSet(tuple(cand), d, n, -mpmath.inf, mpmath.mpf(0), (), True, density, seed, E)
    fl = _float_points(cand)
    basis = _Basis(fl, d, n)
    A = basis(fl)
    _, _, piv = scipy.linalg.qr(A.T, pivoting=True, mode="economic")
    S = list(piv[:h])
    M = A[S]
    sign, logdet = np.linalg.slogdet(M)
    if sign == 0 or not np.isfinite(logdet):
        pts = tuple(cand[i] for i in S)
        return FeketeSet(pts, d, n, -mpmath.inf, mpmath.mpf(0), (), True, density, seed, E)
    history = [float(logdet)]
    converged = False
    for _ in range(iters):
        L = np.linalg.solve(M.T, A.T).T  # L[c, j] = det ratio with row j replaced by c
        absL = np.abs(L)
        flat = int(np.argmax(absL))
        c, j = divmod(flat, h)
        gain = absL[c, j]
        if gain <= 1 + 1e-12:
            converged = True
            break
        S[j] = c
        M = A[S]
        history.append(history[-1] + math.log(gain))
        assert history[-1] > history[-2]
    pts = tuple(cand[i] for i in S)
    logv, _ = vandermonde_logabs(pts, d, n)
    dims = DegreeDims(d, n)
    with mpmath.workdps(PRECISION_DIGITS):
        diam = mpmath.exp(logv / dims.l) if logv != -mpmath.inf else mpmath.mpf(0)
    return FeketeSet(pts, d, n, logv, diam, tuple(history), converged, density, seed, E)


def lagrange_sup_check(F: FeketeSet, E: Optional[Region] = None, samples: Optional[int] = None) -> float:
    """Largest ``|l_j(z)|`` over a sample of ``E``, where ``l_j`` is the Lagrange
    basis of the Fekete configuration.

    With ``samples`` omitted the search grid of ``F`` is reused, which is
    where grid-restricted maximality guarantees a value of at most 1.
    """
    if F.degenerate:
        raise ZeroDivisionError("degenerate Fekete configuration")
    E = E if E is not None else F.region
    pts = sample_grid(E, samples or F.density or default_density(E, F.n), F.seed if samples is None else None)
    pts = list(pts) + list(F.points)
    fl = _float_points(pts)
    nodes = _float_points(F.points)
    both = np.concatenate([fl, nodes]) if fl.dtype == nodes.dtype else np.concatenate([fl.astype(complex), nodes.astype(complex)])
    basis = _Basis(both, F.d, F.n)
    M = basis(nodes.astype(both.dtype))
    A = basis(fl.astype(both.dtype))
    L = np.linalg.solve(M.T, A.T).T
    return float(np.abs(L).max())


def lagrange_value_exact(F: FeketeSet, j: int, z: Sequence):
    """Exact ``l_j(z)`` as a ratio of Vandermonde determinants (small ``h_n``)."""
    pts = list(F.points)
    den = vandermonde_exact(pts, F.d, F.n)
    if den == 0:
        raise ZeroDivisionError("degenerate Fekete configuration")
    pts[j] = tuple(z)
    return vandermonde_exact(pts, F.d, F.n) / den


@dataclass(frozen=True)
class DiamRow:
    n: int
    h: int
    l: int
    log_abs_V: mpmath.mpf
    diam: mpmath.mpf
    converged: bool


def tdiam_estimate(
    E: Region,
    n_max: int,
    degrees: Optional[Sequence[int]] = None,
    iters: int = 1000,
    seed: Optional[int] = None,
    density: Optional[int] = None,
) -> list[DiamRow]:
    """``|V(Fekete)|^(1/l_n)`` for ``n = 1..n_max`` (or the listed ``degrees``)."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    out = []
    for n in degrees or range(1, n_max + 1):
        F = fekete_search(E, n, iters=iters, seed=seed, density=density)
        dims = DegreeDims(E.dim, n)
        out.append(DiamRow(n, dims.h, dims.l, F.log_abs_V, F.diam_estimate, F.converged))
    return out
