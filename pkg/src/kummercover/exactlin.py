"""Exact integer linear algebra: extended gcd, Smith normal forms, unimodular inverses.

Everything here is done with Python's unbounded integers; no floating point
is ever involved.  Matrices are immutable values.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class ExactLinError(ValueError):
    """Invalid input to an exact linear algebra operation."""


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major, arbitrary precision entries."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ExactLinError("matrix dimensions must be positive")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ExactLinError("entry count does not match dimensions")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]]) -> "IntMatrix":
        t = tuple(tuple(int(x) for x in r) for r in rows)
        return IntMatrix(len(t), len(t[0]) if t else 0, t)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ExactLinError("dimension mismatch in matrix product")
        rows = [
            [sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
             for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(rows)

    def mul_vector(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ExactLinError("dimension mismatch in matrix-vector product")
        return tuple(sum(self.entries[i][k] * v[k] for k in range(self.cols))
                     for i in range(self.rows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)])

    def det(self) -> int:
        """Exact determinant via fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise ExactLinError("determinant of a non-square matrix")
        n = self.rows
        a = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def to_json(self) -> str:
        return json.dumps(self.to_obj())

    def to_obj(self) -> dict:
        # entries as decimal strings: they can exceed 2**63
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(x) for x in r] for r in self.entries],
        }

    @staticmethod
    def from_obj(obj: dict) -> "IntMatrix":
        return IntMatrix.from_rows([[int(x) for x in r] for r in obj["entries"]])


@dataclass(frozen=True)
class SnfResult:
    """Row Smith normal form: input_row . r_matrix = (gcd, 0, ..., 0)."""

    gcd: int
    r_matrix: IntMatrix


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, u, v) with u*a + v*b = g = gcd(|a|, |b|) >= 0."""
    if a == 0 and b == 0:
        raise ExactLinError("gcd(0, 0) is undefined")
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def smith_row(d: Sequence[int]) -> SnfResult:
    """Smith normal form of a 1 x m row: find unimodular R with d.R = (g, 0, .., 0)."""
    d = [int(x) for x in d]
    if not d:
        raise ExactLinError("empty input row")
    if any(x == 0 for x in d):
        raise ExactLinError("zero entry in input row")
    m = len(d)
    row = list(d)
    # R accumulates the column operations applied to the row
    r = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def add_col(src: int, dst: int, c: int):
        row[dst] += c * row[src]
        for i in range(m):
            r[i][dst] += c * r[i][src]

    def swap_col(i: int, j: int):
        row[i], row[j] = row[j], row[i]
        for k in range(m):
            r[k][i], r[k][j] = r[k][j], r[k][i]

    def neg_col(i: int):
        row[i] = -row[i]
        for k in range(m):
            r[k][i] = -r[k][i]

    while True:
        nz = [j for j in range(m) if row[j] != 0]
        pivot = min(nz, key=lambda j: abs(row[j]))
        if pivot != 0:
            swap_col(0, pivot)
        changed = False
        for j in range(1, m):
            if row[j] != 0:
                q = row[j] // row[0]
                if q != 0:
                    add_col(0, j, -q)
                changed = changed or row[j] != 0
        if all(row[j] == 0 for j in range(1, m)):
            break
        if not changed:  # pragma: no cover - euclid always progresses
            raise ExactLinError("row reduction stalled")
    if row[0] < 0:
        neg_col(0)
    return SnfResult(gcd=row[0], r_matrix=IntMatrix.from_rows(r))


def smith_full(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Full Smith normal form: L.A.R = D diagonal with divisor chain, L, R unimodular."""
    m, n = a.rows, a.cols
    mat = [list(r) for r in a.entries]
    lm = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    rm = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_add(src, dst, c):
        for j in range(n):
            mat[dst][j] += c * mat[src][j]
        for j in range(m):
            lm[dst][j] += c * lm[src][j]

    def row_swap(i, j):
        mat[i], mat[j] = mat[j], mat[i]
        lm[i], lm[j] = lm[j], lm[i]

    def row_neg(i):
        mat[i] = [-x for x in mat[i]]
        lm[i] = [-x for x in lm[i]]

    def col_add(src, dst, c):
        for i in range(m):
            mat[i][dst] += c * mat[i][src]
        for i in range(n):
            rm[i][dst] += c * rm[i][src]

    def col_swap(i, j):
        for k in range(m):
            mat[k][i], mat[k][j] = mat[k][j], mat[k][i]
        for k in range(n):
            rm[k][i], rm[k][j] = rm[k][j], rm[k][i]

    t = 0
    while t < min(m, n):
        # pivot: minimal absolute nonzero entry in the trailing block
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if mat[i][j] != 0 and (pivot is None or abs(mat[i][j]) < abs(mat[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            row_swap(t, pivot[0])
        if pivot[1] != t:
            col_swap(t, pivot[1])
        while True:
            for i in range(t + 1, m):
                if mat[i][t] != 0:
                    row_add(t, i, -(mat[i][t] // mat[t][t]))
            for j in range(t + 1, n):
                if mat[t][j] != 0:
                    col_add(t, j, -(mat[t][j] // mat[t][t]))
            if any(mat[i][t] for i in range(t + 1, m)) or any(mat[t][j] for j in range(t + 1, n)):
                # a remainder became the new, smaller pivot candidate
                best = (t, t)
                for i in range(t, m):
                    v = mat[i][t]
                    if v != 0 and abs(v) < abs(mat[best[0]][best[1]]):
                        best = (i, t)
                for j in range(t, n):
                    v = mat[t][j]
                    if v != 0 and abs(v) < abs(mat[best[0]][best[1]]):
                        best = (t, j)
                if best[0] != t:
                    row_swap(t, best[0])
                elif best[1] != t:
                    col_swap(t, best[1])
                continue
            # pivot must divide every entry of the trailing block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if mat[i][j] % mat[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(bad, t, 1)
        if mat[t][t] < 0:
            row_neg(t)
        t += 1
    return (IntMatrix.from_rows(lm), IntMatrix.from_rows(mat), IntMatrix.from_rows(rm))


def unimodular_inverse(r: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix with determinant +-1."""
    if r.rows != r.cols:
        raise ExactLinError("inverse of a non-square matrix")
    if r.det() not in (1, -1):
        raise ExactLinError("matrix is not unimodular")
    n = r.rows
    # Gauss-Jordan over Fractions; result is integral because det = +-1
    a = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(r.entries)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    out = [[a[i][n + j] for j in range(n)] for i in range(n)]
    assert all(x.denominator == 1 for row in out for x in row)
    return IntMatrix.from_rows([[int(x) for x in row] for row in out])


def bezout_coefficients(d: Sequence[int]) -> tuple[int, list[int]]:
    """Coefficients h with sum(h_i * d_i) = gcd(d) > 0."""
    d = [int(x) for x in d]
    g = d[0]
    h = [1] + [0] * (len(d) - 1)
    if g < 0:
        g, h[0] = -g, -1
    for i in range(1, len(d)):
        g2, u, v = egcd(g, d[i])
        h = [u * x for x in h]
        h[i] = v
        g = g2
    return g, h


def structured_smith(d: Sequence[int], n: int) -> tuple[IntMatrix, int, bool]:
    """Candidate SNF transform built from Bezout coefficients and the ratios
    d_i/(d_1,d_i), d_1/(d_1,d_i); it is a valid Smith transform iff |det| = 1."""
    d = [int(x) for x in d]
    if len(d) < 2:
        raise ExactLinError("need at least two entries")
    if any(x <= 0 for x in d):
        raise ExactLinError("entries must be positive")
    m = len(d)
    g, h = bezout_coefficients(d)
    rows = [[0] * m for _ in range(m)]
    for i in range(m):
        rows[i][0] = h[i]
    for j in range(1, m):
        gj = math.gcd(d[0], d[j])
        rows[0][j] = -(d[j] // gj)   # -delta_j
        rows[j][j] = d[0] // gj      # Delta_j
    candidate = IntMatrix.from_rows(rows)
    det = candidate.det()
    is_snf = abs(det) == 1
    return candidate, det, is_snf


def solve_congruence_param(d: Sequence[int], n: int, t: Sequence[int],
                           integral: bool = False) -> tuple[int, ...]:
    """Parametrized solution l of sum(l_i d_i) = 0 mod n (or = 0 exactly when
    integral, which zeroes the first parameter slot)."""
    d = [int(x) for x in d]
    snf = smith_row(d)
    if math.gcd(snf.gcd, n) != 1:
        raise ExactLinError("gcd of exponents shares a factor with the cover order")
    if len(t) != len(d):
        raise ExactLinError("parameter vector has wrong length")
    vec = [0 if integral else n * int(t[0])] + [int(x) for x in t[1:]]
    return snf.r_matrix.mul_vector(vec)
