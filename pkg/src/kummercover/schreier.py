"""Schreier transversals and explicit free generating sets for the kernels of
the winding map and its reduction mod n."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cover import CurveParams, CurveValidationError, alpha, alpha_mod_n
from .exactlin import smith_row
from .freegroup import Word, lift_unimodular


class TransversalError(CurveValidationError):
    """gcd(d_1, ..., d_{s-1}) shares a factor with n: the powers of y_1 do not
    form a transversal."""


@dataclass(frozen=True)
class KernelGenerators:
    mode: str                       # "modn" or "integral"
    y_basis: tuple[Word, ...]
    generators: tuple[Word, ...]
    window: int | None = None       # half-width N, integral mode only


def _check_partial_gcd(p: CurveParams) -> int:
    g = math.gcd(*p.d[:p.rank])
    if math.gcd(g, p.n) != 1:
        raise TransversalError(
            f"gcd(d_1..d_{p.rank}) = {g} shares a factor with n = {p.n}")
    return g


def y_basis(p: CurveParams) -> tuple[Word, ...]:
    """Free basis y_1, ..., y_{s-1} with alpha values (gcd, 0, ..., 0), obtained
    by lifting the row Smith transform of (d_1, ..., d_{s-1})."""
    snf = smith_row(p.d[:p.rank])
    tau = lift_unimodular(snf.r_matrix)
    ys = tau.images
    assert alpha(p, ys[0]) == snf.gcd
    assert all(alpha(p, y) == 0 for y in ys[1:])
    return ys


def kernel_generators_mod_n(p: CurveParams) -> KernelGenerators:
    """The (s-2)n + 1 free generators y_1^v y_j y_1^-v (0 <= v < n, j >= 2)
    together with y_1^n, reduced in the x-alphabet."""
    _check_partial_gcd(p)
    ys = y_basis(p)
    gens: list[Word] = []
    y1 = ys[0]
    for v in range(p.n):
        c = y1 ** v
        ci = c.inverse()
        for j in range(1, p.rank):
            gens.append(c * ys[j] * ci)
    gens.append(y1 ** p.n)
    assert len(gens) == (p.s - 2) * p.n + 1
    assert all(alpha_mod_n(p, g) == 0 for g in gens)
    return KernelGenerators(mode="modn", y_basis=ys, generators=tuple(gens))


def kernel_generators_integral(p: CurveParams, window: int = 3) -> KernelGenerators:
    """Truncation |v| <= window of the infinite family y_1^v y_j y_1^-v."""
    if window < 0:
        raise ValueError("window must be >= 0")
    _check_partial_gcd(p)
    ys = y_basis(p)
    y1 = ys[0]
    gens: list[Word] = []
    for v in range(-window, window + 1):
        c = y1 ** v
        ci = c.inverse()
        for j in range(1, p.rank):
            gens.append(c * ys[j] * ci)
    assert all(alpha(p, g) == 0 for g in gens)
    return KernelGenerators(mode="integral", y_basis=ys,
                            generators=tuple(gens), window=window)


def transversal_reduce(p: CurveParams, w: Word) -> tuple[int, Word]:
    """Coset representative exponent v (so that H w = H y_1^v) and the kernel
    element w * y_1^-v."""
    g = _check_partial_gcd(p)
    ys = y_basis(p)
    v = (alpha_mod_n(p, w) * pow(g, -1, p.n)) % p.n
    word = w * ys[0] ** (-v)
    assert alpha_mod_n(p, word) == 0
    return v, word
