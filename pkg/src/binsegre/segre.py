"""
The binary Segre variety S_(N) = PG(1,2) x ... x PG(1,2).

Points are N-tuples over {0, 1, 2}; entry ``c`` names the point of the
factor line with coordinate vector ``FACTOR_VECTORS[c]``.  A point embeds
into PG(2^N - 1, 2) as the Kronecker product of its factor vectors, with
the first factor on the most significant bit of the flat tensor index.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import NamedTuple

import numpy as np

from .gf2 import BinVector

# (x_0, x_1) for the three points of PG(1,2)
FACTOR_VECTORS = ((0, 1), (1, 0), (1, 1))

Point = tuple[int, ...]


class SegreLine(NamedTuple):
    free_axis: int
    fixed_coords: tuple[int, ...]

    def points(self) -> list[Point]:
        a, rest = self.free_axis, self.fixed_coords
        return [rest[:a] + (c,) + rest[a:] for c in range(3)]


class SubSegre(NamedTuple):
    axis: int
    level: int
    member_points: tuple[int, ...]  # point indices


class Spread(NamedTuple):
    axis: int
    member_lines: tuple[int, ...]  # line indices


def point_index(p: Point) -> int:
    idx = 0
    for c in p:
        idx = 3 * idx + c
    return idx


def tensor_bit(n: int, axis: int) -> int:
    """Bit position inside a flat tensor index that carries factor ``axis``."""
    return n - 1 - axis


def embed_word(p: Point) -> int:
    n = len(p)
    word = 0
    for flat in range(1 << n):
        v = 1
        for axis, c in enumerate(p):
            v &= FACTOR_VECTORS[c][(flat >> tensor_bit(n, axis)) & 1]
        if v:
            word |= 1 << flat
    return word


def embed(p: Point) -> BinVector:
    """Kronecker product of the factor vectors of ``p`` as a length-2^N vector."""
    if not p or any(c not in (0, 1, 2) for c in p):
        raise ValueError(f"not a Segre point: {p!r}")
    return BinVector(1 << len(p), embed_word(p))


def graph_distance(p: Point, q: Point) -> int:
    """Collinearity-graph distance: the number of coordinates where p and q differ."""
    if len(p) != len(q):
        raise ValueError("points of different varieties")
    return sum(a != b for a, b in zip(p, q))


def _contraction_indices(n: int, axis: int) -> tuple[np.ndarray, np.ndarray]:
    """Flat indices of S_(N) tensor slots with factor ``axis`` at 0 and 1,
    listed in the flat order of the S_(N-1) tensor obtained by dropping it."""
    b = tensor_bit(n, axis)
    low = np.arange(1 << (n - 1))
    hi = (low >> b) << (b + 1)
    lo = low & ((1 << b) - 1)
    i0 = hi | lo
    return i0, i0 | (1 << b)


@lru_cache(maxsize=None)
def _restriction_plan(n: int, axis: int):
    i0, i1 = _contraction_indices(n, axis)
    return tuple(int(x) for x in i0), tuple(int(x) for x in i1)


def restrict_functional(f: int, n: int, axis: int, level: int) -> int:
    """Functional on the sub-Segre ``coords[axis] == level`` (coordinate dropped).

    Zero means the whole sub-Segre lies in the hyperplane of ``f``.
    """
    i0, i1 = _restriction_plan(n, axis)
    w0, w1 = FACTOR_VECTORS[level]
    g = 0
    for j, (a, b) in enumerate(zip(i0, i1)):
        bit = (w0 & (f >> a)) ^ (w1 & (f >> b))
        g |= (bit & 1) << j
    return g


def restrict_functionals(fs: np.ndarray, n: int, axis: int, level: int) -> np.ndarray:
    """Vectorised :func:`restrict_functional` over an integer array."""
    fs = np.asarray(fs, dtype=np.int64)
    i0, i1 = _contraction_indices(n, axis)
    w0, w1 = FACTOR_VECTORS[level]
    g = np.zeros_like(fs)
    for j in range(1 << (n - 1)):
        bit = (w0 * (fs >> int(i0[j]))) ^ (w1 * (fs >> int(i1[j])))
        g |= (bit & 1) << j
    return g


def lift_functional(slices: tuple[int, int], n: int, axis: int) -> int:
    """Inverse of restriction: the S_(N) functional whose slot-0 / slot-1
    slices along ``axis`` are ``slices`` (S_(N-1) functionals)."""
    i0, i1 = _restriction_plan(n, axis)
    f = 0
    s0, s1 = slices
    for j, (a, b) in enumerate(zip(i0, i1)):
        f |= ((s0 >> j) & 1) << a
        f |= ((s1 >> j) & 1) << b
    return f


@dataclass(frozen=True, eq=False)
class SegreVariety:
    """Point-line incidence structure of S_(N) with stable integer ids.

    Points and lines are numbered in lexicographic order of their tuples;
    a line sorts by ``(free_axis, fixed_coords)``.
    """

    n: int
    points: list[Point] = field(init=False, repr=False)
    lines: list[SegreLine] = field(init=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"factor count must be >= 1, got {self.n}")
        pts = list(itertools.product(range(3), repeat=self.n))
        lines = [
            SegreLine(a, rest)
            for a in range(self.n)
            for rest in itertools.product(range(3), repeat=self.n - 1)
        ]
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "lines", lines)

    @property
    def dim(self) -> int:
        """Length of the embedding vectors, 2^N."""
        return 1 << self.n

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def n_lines(self) -> int:
        return len(self.lines)

    def index(self, p: Point) -> int:
        if len(p) != self.n or any(c not in (0, 1, 2) for c in p):
            raise ValueError(f"{p!r} is not a point of S_({self.n})")
        return point_index(p)

    @cached_property
    def line_points(self) -> np.ndarray:
        """(lines, 3) array of point indices."""
        return np.array([[point_index(p) for p in ln.points()] for ln in self.lines], dtype=np.intp)

    @cached_property
    def point_lines(self) -> np.ndarray:
        """(points, N) array: the line through each point along each axis."""
        out = np.empty((self.n_points, self.n), dtype=np.intp)
        for li, row in enumerate(self.line_points):
            axis = self.lines[li].free_axis
            out[row, axis] = li
        return out

    @cached_property
    def incidence(self) -> np.ndarray:
        """(lines, points) 0/1 incidence matrix."""
        m = np.zeros((self.n_lines, self.n_points), dtype=np.int64)
        for li, row in enumerate(self.line_points):
            m[li, row] = 1
        return m

    @cached_property
    def embeddings(self) -> np.ndarray:
        """Embedded points as bit-packed ints, indexed like ``points``."""
        return np.array([embed_word(p) for p in self.points], dtype=np.int64)

    def embed(self, p: Point) -> BinVector:
        self.index(p)
        return embed(p)

    def sub_segres(self) -> list[SubSegre]:
        """The 3N copies of S_(N-1), grouped by axis (three per axis)."""
        coords = np.array(self.points, dtype=np.int8).reshape(-1, self.n)
        return [
            SubSegre(a, lvl, tuple(int(i) for i in np.flatnonzero(coords[:, a] == lvl)))
            for a in range(self.n)
            for lvl in range(3)
        ]

    def distinguished_spreads(self) -> list[Spread]:
        return [
            Spread(a, tuple(i for i, ln in enumerate(self.lines) if ln.free_axis == a))
            for a in range(self.n)
        ]

    def graph_distance(self, p: Point, q: Point) -> int:
        self.index(p)
        self.index(q)
        return graph_distance(p, q)

    @cached_property
    def distance_matrix(self) -> np.ndarray:
        c = np.array(self.points, dtype=np.int8).reshape(-1, self.n)
        return (c[:, None, :] != c[None, :, :]).sum(axis=2)

    def __repr__(self) -> str:
        return f"SegreVariety(n={self.n}, points={self.n_points}, lines={self.n_lines})"


@lru_cache(maxsize=None)
def build_segre(n: int) -> SegreVariety:
    return SegreVariety(n)
