"""
Dense linear algebra over GF(2) on bit-packed words.

A vector of length ``n`` is stored as a Python ``int`` whose bit ``i`` is
coordinate ``i``.  Matrices are tuples of such row words.  The thin
:class:`BinVector` / :class:`BinMatrix` wrappers exist for the public API;
the hot loops elsewhere in the package work on the raw ints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def parity(x: int) -> int:
    return x.bit_count() & 1


def dot(x: int, y: int) -> int:
    return (x & y).bit_count() & 1


def bits_to_int(bits: Iterable[int]) -> int:
    word = 0
    for i, b in enumerate(bits):
        if b & 1:
            word |= 1 << i
    return word


def int_to_bits(word: int, length: int) -> list[int]:
    return [(word >> i) & 1 for i in range(length)]


@dataclass(frozen=True)
class BinVector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("vector length must be positive")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits 0x{self.bits:x} do not fit in length {self.length}")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BinVector":
        return cls(len(bits), bits_to_int(bits))

    @classmethod
    def zero(cls, length: int) -> "BinVector":
        return cls(length, 0)

    def __getitem__(self, i: int) -> int:
        if not -self.length <= i < self.length:
            raise IndexError(i)
        return (self.bits >> (i % self.length)) & 1

    def __len__(self) -> int:
        return self.length

    def __iter__(self) -> Iterator[int]:
        return iter(self.to_list())

    def __add__(self, other: "BinVector") -> "BinVector":
        self._check(other)
        return BinVector(self.length, self.bits ^ other.bits)

    __xor__ = __add__
    __sub__ = __add__

    def __bool__(self) -> bool:
        return self.bits != 0

    def dot(self, other: "BinVector") -> int:
        self._check(other)
        return dot(self.bits, other.bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def to_list(self) -> list[int]:
        return int_to_bits(self.bits, self.length)

    def __repr__(self) -> str:
        return "BinVector(" + "".join(map(str, self.to_list())) + ")"

    def _check(self, other: "BinVector") -> None:
        if self.length != other.length:
            raise ValueError(f"length mismatch: {self.length} != {other.length}")


def rref_rows(rows: Iterable[int], ncols: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Reduced row echelon form of bit-packed rows.

    Pivots are taken leftmost first (column 0 is bit 0).  Returns the nonzero
    reduced rows, sorted by pivot column, and the pivot columns.
    """
    basis: dict[int, int] = {}  # pivot column -> row
    for row in rows:
        row &= (1 << ncols) - 1
        for col, prow in basis.items():
            if (row >> col) & 1:
                row ^= prow
        if not row:
            continue
        col = (row & -row).bit_length() - 1
        for c in list(basis):
            if (basis[c] >> col) & 1:
                basis[c] ^= row
        basis[col] = row
    pivots = tuple(sorted(basis))
    return tuple(basis[c] for c in pivots), pivots


@dataclass(frozen=True)
class BinMatrix:
    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("negative matrix shape")
        if len(self.rows) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(self.rows)}")
        mask = (1 << self.ncols) - 1
        if any(r < 0 or r & ~mask for r in self.rows):
            raise ValueError("row does not fit in column count")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], ncols: int | None = None) -> "BinMatrix":
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        if any(len(r) != ncols for r in entries):
            raise ValueError("ragged matrix")
        return cls(len(entries), ncols, tuple(bits_to_int(r) for r in entries))

    @classmethod
    def identity(cls, n: int) -> "BinMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BinMatrix":
        return cls(nrows, ncols, (0,) * nrows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(ij)
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [int_to_bits(r, self.ncols) for r in self.rows]

    def transpose(self) -> "BinMatrix":
        cols = []
        for j in range(self.ncols):
            cols.append(bits_to_int((r >> j) & 1 for r in self.rows))
        return BinMatrix(self.ncols, self.nrows, tuple(cols))

    def apply(self, x: int) -> int:
        """``M x`` for a bit-packed column vector ``x`` of length ``ncols``."""
        return bits_to_int(dot(r, x) for r in self.rows)

    def __matmul__(self, other: "BinMatrix") -> "BinMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.rows:
            acc = 0
            k = r
            while k:
                low = k & -k
                acc ^= other.rows[low.bit_length() - 1]
                k ^= low
            out.append(acc)
        return BinMatrix(self.nrows, other.ncols, tuple(out))

    def rref(self) -> "BinMatrix":
        rows, _ = rref_rows(self.rows, self.ncols)
        return BinMatrix(len(rows), self.ncols, rows)

    def __repr__(self) -> str:
        body = ",".join("".join(map(str, r)) for r in self.to_lists())
        return f"BinMatrix({self.nrows}x{self.ncols}:{body})"


def rank(m: BinMatrix) -> int:
    return len(rref_rows(m.rows, m.ncols)[0])


def kernel_basis(m: BinMatrix) -> list[BinVector]:
    """Basis of the right null space ``{x : m x = 0}``."""
    if m.ncols == 0:
        return []
    return [BinVector(m.ncols, v) for v in kernel_words(m.rows, m.ncols)]


def kernel_words(rows: Iterable[int], ncols: int) -> list[int]:
    red, pivots = rref_rows(rows, ncols)
    pivot_set = set(pivots)
    out = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = 1 << free
        for row, p in zip(red, pivots):
            if (row >> free) & 1:
                v |= 1 << p
        out.append(v)
    return out


def gaussian_binomial(n: int, k: int, q: int = 2) -> int:
    if not 0 <= k <= n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


def enumerate_k_subspaces(n: int, k: int) -> Iterator[BinMatrix]:
    """Yield every k-dimensional subspace of GF(2)^n once, as its RREF basis."""
    for rows in enumerate_k_subspace_rows(n, k):
        yield BinMatrix(k, n, rows)


def enumerate_k_subspace_rows(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        # free slots: row i may carry a 1 in any non-pivot column right of its pivot
        slots = [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, n) if c not in pivot_set]
        base = [1 << p for p in pivots]
        for mask in range(1 << len(slots)):
            rows = list(base)
            m = mask
            j = 0
            while m:
                if m & 1:
                    i, c = slots[j]
                    rows[i] |= 1 << c
                m >>= 1
                j += 1
            yield tuple(rows)
