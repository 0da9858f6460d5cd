"""Exact rational linear algebra: echelon forms, kernels, ranks, and a float-rank oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match declared rows/cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        entries = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if cols is None:
            if not entries:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(entries[0])
        return cls(len(entries), cols, entries)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)], cols)

    def apply(self, vec: Sequence) -> tuple[Fraction, ...]:
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum((a * b for a, b in zip(r, vec) if a), Fraction(0)) for r in self.entries)

    def to_numpy(self) -> np.ndarray:
        if self.rows == 0:
            return np.zeros((0, self.cols))
        return np.array([[float(x) for x in r] for r in self.entries], dtype=float)


def _integer_row(row) -> list[int]:
    den = math.lcm(*(x.denominator for x in row)) if row else 1
    return [int(x * den) for x in row]


def _primitive(row: list[int]) -> list[int]:
    g = math.gcd(*row)
    if g > 1:
        return [x // g for x in row]
    return row


def rref(mat: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (nonzero rows only) and the pivot columns.

    Pivot choice: scanning columns left to right, the first remaining row with a
    nonzero entry in that column. Elimination runs on gcd-reduced integer rows;
    the echelon rows are normalized to Fractions at the end.
    """
    work = [r for r in (_integer_row(r) for r in mat.entries) if any(r)]
    pivots: list[int] = []
    echelon: list[list[int]] = []
    for c in range(mat.cols):
        if not work:
            break
        k = next((i for i, r in enumerate(work) if r[c]), None)
        if k is None:
            continue
        piv = _primitive(work.pop(k))
        p = piv[c]
        nxt = []
        for r in work:
            f = r[c]
            if f:
                r = _primitive([p * a - f * b for a, b in zip(r, piv)])
                if not any(r):
                    continue
            nxt.append(r)
        work = nxt
        pivots.append(c)
        echelon.append(piv)

    # back substitution, still over the integers
    for i in range(len(echelon) - 1, -1, -1):
        c = pivots[i]
        for j in range(i):
            f = echelon[j][c]
            if f:
                p = echelon[i][c]
                echelon[j] = _primitive([p * a - f * b for a, b in zip(echelon[j], echelon[i])])
    reduced = []
    for row, c in zip(echelon, pivots):
        p = row[c]
        reduced.append([Fraction(x, p) for x in row])
    return reduced, pivots


def rank_exact(mat: RationalMatrix) -> int:
    return len(rref(mat)[1])


def nullspace(mat: RationalMatrix) -> list[tuple[Fraction, ...]]:
    """Right-kernel basis: one vector per free column, 1 in that column."""
    reduced, pivots = rref(mat)
    pivset = set(pivots)
    basis = []
    for f in range(mat.cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * mat.cols
        v[f] = Fraction(1)
        for row, c in zip(reduced, pivots):
            v[c] = -row[f]
        basis.append(tuple(v))
    return basis


def rank_float(mat: RationalMatrix, tol: float = 1e-8) -> int:
    """Numerical rank: singular values above tol * largest singular value."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = mat.to_numpy()
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def is_proportional(u: Sequence, v: Sequence) -> bool:
    """u and v are nonzero and parallel."""
    k = next((i for i, x in enumerate(v) if x), None)
    if k is None or not u[k]:
        return False
    ratio = Fraction(u[k]) / Fraction(v[k])
    return all(Fraction(a) == ratio * b for a, b in zip(u, v))


@dataclass(frozen=True)
class HermitianBasis:
    """Real d^2-parameter basis of d x d Hermitian matrices.

    Order: E_11..E_dd, then for each i<j (row-major) E_ij+E_ji followed by
    i(E_ij-E_ji). Indices in ``elements`` are 0-based.
    """

    d: int

    @property
    def elements(self) -> list[tuple[str, int, int]]:
        out = [("diag", i, i) for i in range(self.d)]
        for i in range(self.d):
            for j in range(i + 1, self.d):
                out.append(("sym", i, j))
                out.append(("asym", i, j))
        return out

    def __len__(self):
        return self.d * self.d

    def identity_vector(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(kind == "diag")) for kind, _, _ in self.elements)

    def to_matrix(self, vec: Sequence) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
        """Real and imaginary parts of sum_k vec[k] * B_k."""
        if len(vec) != len(self):
            raise ValueError(f"expected {len(self)} parameters, got {len(vec)}")
        d = self.d
        re = [[Fraction(0)] * d for _ in range(d)]
        im = [[Fraction(0)] * d for _ in range(d)]
        for x, (kind, i, j) in zip(vec, self.elements):
            x = Fraction(x)
            if kind == "diag":
                re[i][i] += x
            elif kind == "sym":
                re[i][j] += x
                re[j][i] += x
            else:
                im[i][j] += x
                im[j][i] -= x
        return re, im

    def from_matrix(self, re, im) -> tuple[Fraction, ...]:
        out = []
        for kind, i, j in self.elements:
            if kind == "diag":
                out.append(Fraction(re[i][i]))
            elif kind == "sym":
                out.append(Fraction(re[i][j]))
            else:
                out.append(Fraction(im[i][j]))
        return tuple(out)

    def expectation_row(self, bra: Sequence[int], ket: Sequence[int]):
        """Coefficients of Re and Im of <bra|H|ket> as linear forms in the parameters (real kets)."""
        re_row, im_row = [], []
        for kind, i, j in self.elements:
            if kind == "diag":
                re_row.append(bra[i] * ket[i])
                im_row.append(0)
            elif kind == "sym":
                re_row.append(bra[i] * ket[j] + bra[j] * ket[i])
                im_row.append(0)
            else:
                re_row.append(0)
                im_row.append(bra[i] * ket[j] - bra[j] * ket[i])
        return re_row, im_row


def positive_definite_exact(re, im) -> bool:
    """Exact test that the Hermitian matrix re + i*im is positive definite.

    Uses the real symmetric embedding [[re, -im], [im, re]] and checks that every
    leading principal minor is positive, via pivot signs of unpivoted elimination.
    """
    d = len(re)
    n = 2 * d
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(d):
        for j in range(d):
            m[i][j] = Fraction(re[i][j])
            m[i + d][j + d] = Fraction(re[i][j])
            m[i][j + d] = -Fraction(im[i][j])
            m[i + d][j] = Fraction(im[i][j])
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for r in range(k + 1, n):
            f = m[r][k] / m[k][k]
            if f:
                for c in range(k, n):
                    m[r][c] -= f * m[k][c]
    return True
