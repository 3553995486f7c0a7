"""Group ring of the deck group, the Fox-calculus relation matrix and the
character multiplicities of the first homology of the complete curve, computed
by three independent routes that must agree."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cover import CurveParams, genus, ramification
from .freegroup import FormalSum, Word, fox_derivative


class OracleDisagreement(RuntimeError):
    """Two independent computations of the same quantity differ."""


class RankInstability(RuntimeError):
    """A singular value fell inside the guard band around the rank threshold."""


@dataclass(frozen=True)
class GroupRingElem:
    """Element of the rational group ring of a cyclic group of order n;
    coeffs[k] is the coefficient of the k-th power of the generator."""

    n: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n:
            raise ValueError("coefficient vector must have length n")

    @staticmethod
    def zero(n: int) -> "GroupRingElem":
        return GroupRingElem(n, tuple(Fraction(0) for _ in range(n)))

    @staticmethod
    def sigma_power(n: int, k: int) -> "GroupRingElem":
        c = [Fraction(0)] * n
        c[k % n] = Fraction(1)
        return GroupRingElem(n, tuple(c))

    @staticmethod
    def one(n: int) -> "GroupRingElem":
        return GroupRingElem.sigma_power(n, 0)

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        return GroupRingElem(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "GroupRingElem") -> "GroupRingElem":
        return GroupRingElem(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "GroupRingElem") -> "GroupRingElem":
        c = [Fraction(0)] * self.n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        c[(i + j) % self.n] += a * b
        return GroupRingElem(self.n, tuple(c))

    def scale(self, k) -> "GroupRingElem":
        return GroupRingElem(self.n, tuple(Fraction(k) * a for a in self.coeffs))

    def evaluate(self, z: complex) -> complex:
        """Specialize the generator to the complex number z."""
        return sum(float(a) * z ** k for k, a in enumerate(self.coeffs))


def norm_element(p: CurveParams, i: int) -> GroupRingElem:
    """1 + sigma^{d_i} + ... + sigma^{d_i (e_i - 1)}."""
    bp = ramification(p).points[i - 1]
    acc = GroupRingElem.zero(p.n)
    for v in range(bp.e):
        acc = acc + GroupRingElem.sigma_power(p.n, v * bp.d)
    return acc


def sigma_module_character(p: CurveParams, i: int) -> frozenset[int]:
    """Characters occurring in the module spanned by the i-th norm element:
    the multiples of e_i."""
    bp = ramification(p).points[i - 1]
    chars = frozenset(v for v in range(p.n) if (v * bp.gcd) % p.n == 0)
    assert len(chars) == bp.gcd
    return chars


@dataclass(frozen=True)
class AlexanderMatrix:
    """s x (s+1) relation matrix over the group ring of the deck group."""

    n: int
    s: int
    entries: tuple[tuple[GroupRingElem, ...], ...]

    def evaluate(self, z: complex) -> np.ndarray:
        return np.array([[e.evaluate(z) for e in row] for row in self.entries],
                        dtype=complex)


def _alexander_closed_form(p: CurveParams) -> AlexanderMatrix:
    s, n = p.s, p.n
    zero = GroupRingElem.zero(n)
    rows = []
    for i in range(1, s + 1):
        row = [zero] * (s + 1)
        row[i - 1] = norm_element(p, i)
        row[s] = GroupRingElem.sigma_power(n, sum(p.d[:i - 1]))
        rows.append(tuple(row))
    return AlexanderMatrix(n=n, s=s, entries=tuple(rows))


def _specialize(p: CurveParams, fs: FormalSum) -> GroupRingElem:
    """Map a group-ring element of the rank-s free group through x_i -> sigma^{d_i}."""
    acc = GroupRingElem.zero(p.n)
    for w, c in fs.terms:
        k = sum(e * d for e, d in zip(w.exponent_vector(), p.d))
        acc = acc + GroupRingElem.sigma_power(p.n, k).scale(c)
    return acc


def _alexander_from_fox(p: CurveParams) -> AlexanderMatrix:
    s = p.s
    ram = ramification(p).points
    relators = [Word.generator(s, j + 1) ** ram[j].e for j in range(s)]
    relators.append(Word.make(s, [(j, 1) for j in range(1, s + 1)]))
    rows = []
    for i in range(1, s + 1):
        rows.append(tuple(_specialize(p, fox_derivative(r, i)) for r in relators))
    return AlexanderMatrix(n=p.n, s=s, entries=tuple(rows))


def alexander_matrix(p: CurveParams) -> AlexanderMatrix:
    """Closed-form relation matrix, cross-checked entrywise against the Fox
    derivative construction."""
    closed = _alexander_closed_form(p)
    fox = _alexander_from_fox(p)
    if closed.entries != fox.entries:
        raise OracleDisagreement("closed-form and Fox relation matrices differ")
    return closed


def multiplicity_closed_form(p: CurveParams, nu: int) -> int:
    """Count of branch points with n not dividing nu*(n, d_i), minus two."""
    nu %= p.n
    if nu == 0:
        return 0
    count = sum(1 for di in p.d if (nu * math.gcd(p.n, di)) % p.n != 0)
    if count < 2:
        raise RuntimeError(f"multiplicity count {count} < 2 at nu={nu}; params leak")
    return count - 2


def multiplicity_rank_oracle(p: CurveParams, nu: int, tol: float = 1e-8,
                             matrix: AlexanderMatrix | None = None) -> int:
    """Numeric-rank route: specialize the relation matrix at the nu-th root of
    unity and read the multiplicity off the rank defect."""
    if not 0 < tol <= 1e-4:
        raise ValueError("tol must be in (0, 1e-4]")
    nu %= p.n
    q = matrix if matrix is not None else alexander_matrix(p)
    z = cmath.exp(2j * cmath.pi * nu / p.n)
    a = q.evaluate(z)
    svals = np.linalg.svd(a, compute_uv=False)
    threshold = tol * svals[0]
    if any(0.1 * threshold <= sv <= 10 * threshold for sv in svals):
        raise RankInstability(f"singular value near threshold at nu={nu}")
    rnk = int(np.sum(svals > threshold))
    m = (p.s - rnk) - 1 + (1 if nu == 0 else 0)
    if m < 0:
        raise RuntimeError(f"negative multiplicity at nu={nu}")
    return m


def chevalley_weil(p: CurveParams, nu: int, use_gcd_exponent: bool = False) -> int:
    """Multiplicity of the nu-th character on holomorphic differentials:
    -1 + [nu=0] + sum_i <(-nu d_i)/n>.

    The alternative exponent convention <(-nu d_i (n,d_i))/n> is exposed
    behind use_gcd_exponent for comparison; it does not sum to the genus.
    """
    nu %= p.n
    lam = 1 if nu == 0 else 0
    total = Fraction(-1 + lam)
    for di in p.d:
        num = -nu * di * (math.gcd(p.n, di) if use_gcd_exponent else 1)
        total += Fraction(num % p.n, p.n)
    if total.denominator != 1 or total < 0:
        raise RuntimeError(f"non-integral multiplicity {total} at nu={nu}")
    return int(total)


@dataclass(frozen=True)
class HomologyDecomposition:
    n: int
    genus: int
    multiplicities: tuple[int, ...]   # M_0 .. M_{n-1}
    cw_table: tuple[int, ...]         # m_0 .. m_{n-1}

    def to_obj(self) -> dict:
        return {"n": self.n, "genus": self.genus,
                "M": list(self.multiplicities), "cw": list(self.cw_table)}


def homology_decomposition(p: CurveParams, tol: float = 1e-8) -> HomologyDecomposition:
    """All three multiplicity routes; any disagreement raises naming the nu."""
    g = genus(p)
    q = alexander_matrix(p)
    ms = [chevalley_weil(p, nu) for nu in range(p.n)]
    big = []
    for nu in range(p.n):
        closed = multiplicity_closed_form(p, nu)
        by_rank = multiplicity_rank_oracle(p, nu, tol=tol, matrix=q)
        hodge = ms[nu] + ms[(p.n - nu) % p.n]
        if not closed == by_rank == hodge:
            raise OracleDisagreement(
                f"nu={nu}: closed form {closed}, rank oracle {by_rank}, "
                f"Hodge sum {hodge}")
        big.append(closed)
    if big[0] != 0:
        raise OracleDisagreement("M_0 != 0")
    if sum(big) != 2 * g:
        raise OracleDisagreement(f"sum M = {sum(big)} != 2g = {2 * g}")
    if sum(ms) != g:
        raise OracleDisagreement(f"sum m = {sum(ms)} != g = {g}")
    return HomologyDecomposition(n=p.n, genus=g,
                                 multiplicities=tuple(big), cw_table=tuple(ms))
