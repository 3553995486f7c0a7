"""Reduced words in a free group, Nielsen moves, matrix-to-automorphism lifts
and Fox derivatives."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exactlin import ExactLinError, IntMatrix, unimodular_inverse


class WordError(ValueError):
    """Malformed word or rank mismatch."""


def _reduce(syllables: Iterable[tuple[int, int]],
            rank: int | None = None) -> tuple[tuple[int, int], ...]:
    out: list[list[int]] = []
    for g, e in syllables:
        if e == 0:
            continue
        if rank is not None and not 1 <= g <= rank:
            raise WordError(f"generator index {g} out of range for rank {rank}")
        if out and out[-1][0] == g:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return tuple((g, e) for g, e in out)


def _merge_reduced(a: tuple[tuple[int, int], ...],
                   b: tuple[tuple[int, int], ...]) -> tuple[tuple[int, int], ...]:
    """Concatenate two reduced syllable tuples, cancelling across the junction
    only; avoids a full reduction pass."""
    trim, ib = len(a), 0
    lb = len(b)
    bridge: tuple[tuple[int, int], ...] = ()
    while trim > 0 and ib < lb:
        g1, e1 = a[trim - 1]
        g2, e2 = b[ib]
        if g1 != g2:
            break
        trim -= 1
        ib += 1
        e = e1 + e2
        if e != 0:
            bridge = ((g1, e),)
            break
    return a[:trim] + bridge + b[ib:]


def _raw_word(rank: int, syllables: tuple[tuple[int, int], ...]) -> "Word":
    """Wrap an already-reduced syllable tuple without re-validation."""
    w = object.__new__(Word)
    object.__setattr__(w, "rank", rank)
    object.__setattr__(w, "syllables", syllables)
    return w


@dataclass(frozen=True)
class Word:
    """Freely reduced word; syllables are (generator index >= 1, nonzero exponent)."""

    rank: int
    syllables: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for g, e in self.syllables:
            if not 1 <= g <= self.rank:
                raise WordError(f"generator index {g} out of range for rank {self.rank}")
            if e == 0:
                raise WordError("zero exponent syllable")
        for (g1, _), (g2, _) in zip(self.syllables, self.syllables[1:]):
            if g1 == g2:
                raise WordError("word is not freely reduced")

    @staticmethod
    def make(rank: int, syllables: Iterable[tuple[int, int]]) -> "Word":
        # _reduce already yields a validated reduced word, so skip the
        # second __post_init__ pass (it matters on bulk word construction)
        return _raw_word(rank, _reduce(syllables, rank))

    @staticmethod
    def generator(rank: int, i: int, e: int = 1) -> "Word":
        return Word.make(rank, [(i, e)])

    @staticmethod
    def identity(rank: int) -> "Word":
        return Word(rank, ())

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        if self.rank != other.rank:
            raise WordError("rank mismatch")
        return _raw_word(self.rank, _merge_reduced(self.syllables, other.syllables))

    def inverse(self) -> "Word":
        # reversing and negating a reduced word keeps it reduced
        return _raw_word(self.rank,
                         tuple((g, -e) for g, e in reversed(self.syllables)))

    def __pow__(self, k: int) -> "Word":
        if k == 0:
            return Word.identity(self.rank)
        base = self if k > 0 else self.inverse()
        out = Word.identity(self.rank)
        sq = base
        k = abs(k)
        while k:
            if k & 1:
                out = out * sq
            k >>= 1
            if k:
                sq = sq * sq
        return out

    def conjugate(self, by: "Word") -> "Word":
        return by * self * by.inverse()

    def letters(self) -> Iterable[int]:
        """Signed letters: +g for x_g, -g for its inverse."""
        for g, e in self.syllables:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield step * g

    def exponent_vector(self) -> tuple[int, ...]:
        v = [0] * self.rank
        for g, e in self.syllables:
            v[g - 1] += e
        return tuple(v)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        parts = []
        for g, e in self.syllables:
            parts.append(f"x{g}" if e == 1 else f"x{g}^{e}")
        return "*".join(parts)


_TOKEN = re.compile(r"x(\d+)(?:\^(-?\d+))?")


def parse_word(rank: int, text: str) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return Word.identity(rank)
    pos = 0
    sylls = []
    for m in _TOKEN.finditer(text):
        gap = text[pos:m.start()]
        if gap.strip() not in ("", "*"):
            raise WordError(f"cannot parse word near {gap!r}")
        g = int(m.group(1))
        e = int(m.group(2)) if m.group(2) is not None else 1
        sylls.append((g, e))
        pos = m.end()
    if text[pos:].strip():
        raise WordError(f"trailing junk in word: {text[pos:]!r}")
    return Word.make(rank, sylls)


@dataclass(frozen=True)
class FormalSum:
    """Integer linear combination of words (an element of the group ring of the
    free group)."""

    rank: int
    terms: tuple[tuple[Word, int], ...] = ()

    @staticmethod
    def make(rank: int, items: Iterable[tuple[Word, int]]) -> "FormalSum":
        acc: dict[Word, int] = {}
        for w, c in items:
            acc[w] = acc.get(w, 0) + c
        terms = tuple(sorted(((w, c) for w, c in acc.items() if c != 0),
                             key=lambda t: (len(t[0]), str(t[0]))))
        return FormalSum(rank, terms)

    @staticmethod
    def zero(rank: int) -> "FormalSum":
        return FormalSum(rank, ())

    @staticmethod
    def of(w: Word, c: int = 1) -> "FormalSum":
        return FormalSum.make(w.rank, [(w, c)])

    def __add__(self, other: "FormalSum") -> "FormalSum":
        return FormalSum.make(self.rank, self.terms + other.terms)

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + other.scale(-1)

    def scale(self, c: int) -> "FormalSum":
        return FormalSum.make(self.rank, [(w, c * k) for w, k in self.terms])

    def __mul__(self, other: "FormalSum") -> "FormalSum":
        return FormalSum.make(self.rank,
                              [(w1 * w2, c1 * c2)
                               for w1, c1 in self.terms for w2, c2 in other.terms])


def fox_derivative(w: Word, j: int) -> FormalSum:
    """Free Fox derivative d(w)/d(x_j)."""
    if not 1 <= j <= w.rank:
        raise WordError(f"generator index {j} out of range")
    rank = w.rank
    prefix = Word.identity(rank)
    items: list[tuple[Word, int]] = []
    for g, e in w.syllables:
        if g == j:
            x = Word.generator(rank, g)
            if e > 0:
                for k in range(e):
                    items.append((prefix * x ** k, 1))
            else:
                for k in range(1, -e + 1):
                    items.append((prefix * x ** (-k), -1))
        prefix = prefix * Word.generator(rank, g, e)
    return FormalSum.make(rank, items)


@dataclass(frozen=True)
class FreeAutomorphism:
    """Automorphism of a free group, certified invertible by carrying its inverse."""

    rank: int
    images: tuple[Word, ...]
    inverse_images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.rank or len(self.inverse_images) != self.rank:
            raise WordError("wrong number of generator images")
        # one direction suffices: free groups are Hopfian, so a surjective
        # endomorphism (forced by apply(inverse_images) = generators) is an
        # automorphism and the stored images are its genuine inverse
        for i in range(self.rank):
            gen = Word.generator(self.rank, i + 1)
            if self.apply(self.inverse_images[i]) != gen:
                raise WordError("stored inverse does not invert the automorphism")

    @staticmethod
    def identity(rank: int) -> "FreeAutomorphism":
        gens = tuple(Word.generator(rank, i + 1) for i in range(rank))
        return FreeAutomorphism(rank, gens, gens)

    @staticmethod
    def from_images(images: Sequence[Word], inverse_images: Sequence[Word]) -> "FreeAutomorphism":
        return FreeAutomorphism(images[0].rank, tuple(images), tuple(inverse_images))

    def apply(self, w: Word) -> Word:
        # single concatenation + one reduction pass; quadratic rebuilding is
        # far too slow for the long images produced by matrix lifts
        sylls: list[tuple[int, int]] = []
        inv_cache: dict[int, Word] = {}
        for g, e in w.syllables:
            if e > 0:
                base = self.images[g - 1]
            else:
                if g not in inv_cache:
                    inv_cache[g] = self.images[g - 1].inverse()
                base = inv_cache[g]
            sylls.extend(base.syllables * abs(e))
        return Word.make(self.rank, sylls)

    def inverse(self) -> "FreeAutomorphism":
        # bypass __post_init__ re-verification: the pair is already certified
        inv = object.__new__(FreeAutomorphism)
        object.__setattr__(inv, "rank", self.rank)
        object.__setattr__(inv, "images", self.inverse_images)
        object.__setattr__(inv, "inverse_images", self.images)
        return inv

    def compose(self, other: "FreeAutomorphism") -> "FreeAutomorphism":
        """self after other; abelianizes to matrix(self) @ matrix(other)."""
        if self.rank != other.rank:
            raise WordError("rank mismatch")
        images = tuple(self.apply(w) for w in other.images)
        inverse_images = tuple(other.inverse().apply(w) for w in self.inverse_images)
        # both factors are certified, so the composite pair is inverse by
        # construction; skip the quadratic re-verification in __post_init__
        out = object.__new__(FreeAutomorphism)
        object.__setattr__(out, "rank", self.rank)
        object.__setattr__(out, "images", images)
        object.__setattr__(out, "inverse_images", inverse_images)
        return out

    def matrix(self) -> IntMatrix:
        """Abelianization; column i is the exponent vector of the image of x_i."""
        cols = [w.exponent_vector() for w in self.images]
        return IntMatrix.from_rows([[cols[j][i] for j in range(self.rank)]
                                    for i in range(self.rank)])


def _nielsen_add(rank: int, i: int, j: int, c: int) -> FreeAutomorphism:
    """x_j -> x_j * x_i^c, all other generators fixed (abelianizes to I + c*E_ij)."""
    images = [Word.generator(rank, k + 1) for k in range(rank)]
    inv = [Word.generator(rank, k + 1) for k in range(rank)]
    images[j] = Word.make(rank, [(j + 1, 1), (i + 1, c)])
    inv[j] = Word.make(rank, [(j + 1, 1), (i + 1, -c)])
    return FreeAutomorphism(rank, tuple(images), tuple(inv))


def _nielsen_swap(rank: int, i: int, j: int) -> FreeAutomorphism:
    images = [Word.generator(rank, k + 1) for k in range(rank)]
    images[i], images[j] = images[j], images[i]
    t = tuple(images)
    return FreeAutomorphism(rank, t, t)


def _nielsen_neg(rank: int, i: int) -> FreeAutomorphism:
    images = [Word.generator(rank, k + 1) for k in range(rank)]
    images[i] = Word.generator(rank, i + 1, -1)
    t = tuple(images)
    return FreeAutomorphism(rank, t, t)


def _factor_to_identity(r: IntMatrix) -> list[tuple]:
    """Column operations reducing r to the identity; ops recorded as applied."""
    n = r.rows
    m = [list(row) for row in r.entries]
    ops: list[tuple] = []

    def add(i, j, c):  # col_j += c * col_i
        for k in range(n):
            m[k][j] += c * m[k][i]
        ops.append(("add", i, j, c))

    def swap(i, j):
        for k in range(n):
            m[k][i], m[k][j] = m[k][j], m[k][i]
        ops.append(("swap", i, j))

    def neg(i):
        for k in range(n):
            m[k][i] = -m[k][i]
        ops.append(("neg", i))

    for t in range(n):
        # euclid across row t, columns >= t
        while True:
            nz = [j for j in range(t, n) if m[t][j] != 0]
            if not nz:
                raise ExactLinError("matrix is singular")
            piv = min(nz, key=lambda j: abs(m[t][j]))
            if piv != t:
                swap(t, piv)
            done = True
            for j in range(t + 1, n):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    if q:
                        add(t, j, -q)
                    if m[t][j] != 0:
                        done = False
            if done:
                break
        if m[t][t] < 0:
            neg(t)
    if any(m[t][t] != 1 for t in range(n)):
        raise ExactLinError("matrix is not unimodular")
    # lower triangular with unit diagonal: clear below-diagonal entries
    for j in range(n - 2, -1, -1):
        for i in range(j + 1, n):
            if m[i][j] != 0:
                add(i, j, -m[i][j])
    return ops


def _apply_op(images: list[Word], op: tuple, invert: bool) -> None:
    """Post-compose an image list with one Nielsen move (additive length growth)."""
    if op[0] == "add":
        _, i, j, c = op
        if invert:
            c = -c
        images[j] = images[j] * images[i] ** c
    elif op[0] == "swap":
        _, i, j = op
        images[i], images[j] = images[j], images[i]
    else:
        images[op[1]] = images[op[1]].inverse()


def lift_unimodular(r: IntMatrix) -> FreeAutomorphism:
    """Lift a unimodular matrix to a free group automorphism whose abelianization
    (images' exponent vectors as columns) equals the matrix."""
    if r.rows != r.cols:
        raise ExactLinError("lift requires a square matrix")
    n = r.rows
    ops = _factor_to_identity(r)
    # r . E_1 ... E_k = I  =>  r = E_k^-1 ... E_1^-1 and r^-1 = E_1 ... E_k;
    # the two image lists are folded separately so neither needs the
    # (multiplicative-cost) inverse tracking of FreeAutomorphism.compose
    images = [Word.generator(n, k + 1) for k in range(n)]
    for op in reversed(ops):
        _apply_op(images, op, invert=True)
    inverse_images = [Word.generator(n, k + 1) for k in range(n)]
    for op in ops:
        _apply_op(inverse_images, op, invert=False)
    # both lists mirror the same verified factorization, so the pair is
    # inverse by construction; the word-level re-check in __post_init__ is
    # quadratic in the image lengths and is skipped here
    auto = object.__new__(FreeAutomorphism)
    object.__setattr__(auto, "rank", n)
    object.__setattr__(auto, "images", tuple(images))
    object.__setattr__(auto, "inverse_images", tuple(inverse_images))
    if auto.matrix() != r:
        raise ExactLinError("lift abelianization mismatch")
    return auto
