"""
Generators of the symplectic polar space W(2n-1, 2) and their spinor images.

Coordinates are ordered e_1..e_n, f_1..f_n with <e_i, f_j> = delta_ij; in a
bit-packed row the e-block occupies bits 0..n-1 (block A) and the f-block
bits n..2n-1 (block B).  The image of a Lagrangian subspace with basis
[A | B] has, at the subset T of {1..n}, the determinant of A with the
columns in T replaced by the matching columns of B.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .gf2 import BinMatrix, BinVector, enumerate_k_subspace_rows, rref_rows
from .segre import build_segre, tensor_bit


def symplectic_form(x: int, y: int, n: int) -> int:
    lo = (1 << n) - 1
    return (((x & lo) & (y >> n)).bit_count() + ((y & lo) & (x >> n)).bit_count()) & 1


@dataclass(frozen=True)
class SymplecticSpace:
    half_dim: int

    @property
    def gram(self) -> BinMatrix:
        n = self.half_dim
        rows = [1 << (i + n) for i in range(n)] + [1 << i for i in range(n)]
        return BinMatrix(2 * n, 2 * n, tuple(rows))

    def form(self, x: int, y: int) -> int:
        return symplectic_form(x, y, self.half_dim)

    def is_totally_isotropic(self, rows) -> bool:
        return all(self.form(a, b) == 0 for a, b in itertools.combinations(rows, 2))


@dataclass(frozen=True)
class LagrangianSubspace:
    n: int
    basis: BinMatrix = field(repr=False)

    def __post_init__(self):
        if self.basis.nrows != self.n or self.basis.ncols != 2 * self.n:
            raise ValueError("basis must be n x 2n")
        if len(rref_rows(self.basis.rows, 2 * self.n)[0]) != self.n:
            raise ValueError("basis rows are dependent")
        if not SymplecticSpace(self.n).is_totally_isotropic(self.basis.rows):
            raise ValueError("subspace is not totally isotropic")

    @property
    def a_block(self) -> tuple[int, ...]:
        return tuple(r & ((1 << self.n) - 1) for r in self.basis.rows)

    @property
    def b_block(self) -> tuple[int, ...]:
        return tuple(r >> self.n for r in self.basis.rows)


def _det(rows: list[int], n: int) -> int:
    return int(len(rref_rows(rows, n)[0]) == n)


def spinor_word(a: tuple[int, ...], b: tuple[int, ...], n: int) -> int:
    """Bit-packed spinor image of the subspace with blocks ``a``, ``b`` (rows as bit masks)."""
    word = 0
    for t in range(1 << n):
        # t is a subset of column indices; replace those columns of A by B
        rows = [(ra & ~t) | (rb & t) for ra, rb in zip(a, b)]
        if _det(rows, n):
            flat = 0
            for k in range(n):
                if (t >> k) & 1:
                    flat |= 1 << tensor_bit(n, k)
            word |= 1 << flat
    return word


def spinor_image(L: LagrangianSubspace) -> BinVector:
    word = spinor_word(L.a_block, L.b_block, L.n)
    if word == 0:
        raise ArithmeticError("zero spinor image")
    return BinVector(1 << L.n, word)


@lru_cache(maxsize=None)
def generator_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Canonical bases of all generators of W(2n-1, 2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    for rows in enumerate_k_subspace_rows(2 * n, n):
        ok = True
        for i in range(n):
            for j in range(i + 1, n):
                if symplectic_form(rows[i], rows[j], n):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(rows)
    return tuple(out)


def enumerate_generators(n: int) -> list[LagrangianSubspace]:
    return [LagrangianSubspace(n, BinMatrix(n, 2 * n, rows)) for rows in generator_rows(n)]


def generator_count(n: int) -> int:
    out = 1
    for i in range(1, n + 1):
        out *= 2**i + 1
    return out


@dataclass
class LagrangianReport:
    n: int
    generator_count: int
    expected_count: int
    image_distinct: int
    zero_images: int
    on_quadric: int
    quadric_points: int
    image_is_quadric: bool
    type_histogram: dict[str, int]
    defects: list[str]

    @property
    def injective(self) -> bool:
        return self.image_distinct == self.generator_count

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "generator_count": self.generator_count,
            "image_distinct": self.image_distinct,
            "on_quadric": self.on_quadric,
            "image_is_quadric": self.image_is_quadric,
            "type_histogram": self.type_histogram,
            "defects": self.defects,
        }


def lgr_census(n: int) -> LagrangianReport:
    """Map every generator to its spinor point and tally the hyperplane types it hits."""
    from .hyperplanes import classify_hyperplanes, type_lookup
    from .symmetry import invariant_quadric

    gens = generator_rows(n)
    words = np.array([spinor_word(tuple(r & ((1 << n) - 1) for r in g), tuple(r >> n for r in g), n)
                      for g in gens], dtype=np.int64)
    defects = []
    zero = int((words == 0).sum())
    if zero:
        defects.append(f"{zero} generators have a zero image")
    distinct = np.unique(words)
    if len(distinct) != len(gens):
        defects.append("spinor map is not injective")
    types = type_lookup(n)
    census = classify_hyperplanes(build_segre(n))
    hist: dict[str, int] = {}
    for t in types[distinct[distinct != 0]]:
        hist[str(int(t))] = hist.get(str(int(t)), 0) + 1
    hist = {e.label: hist[e.label] for e in census.entries if e.label in hist}
    on_q = quad_pts = 0
    is_quadric = False
    if n >= 2:
        q = invariant_quadric(n)
        on_q = int((q.evaluate_many(distinct) == 0).sum())
        quad_pts = q.zero_count()
        if n >= 3 and on_q != len(distinct):
            defects.append(f"{len(distinct) - on_q} image points off the invariant quadric")
        is_quadric = on_q == quad_pts == len(distinct)
    return LagrangianReport(n, len(gens), generator_count(n), len(distinct), zero, on_q, quad_pts,
                            is_quadric, hist, defects)
