"""
Geometric hyperplanes of S_(N) and their invariants.

Every ordinary hyperplane is the zero set ``{p : f . embed(p) = 0}`` of a
nonzero functional ``f`` on GF(2)^(2^N), so hyperplanes are keyed by ``f``
(a bit-packed int).  Key 0 is reserved for the extraordinary hyperplane,
the full point set.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator

import numpy as np

from .gf2 import BinVector, dot
from .segre import Point, SegreVariety, build_segre, embed_word, restrict_functionals

EXTRAORDINARY = 0
DEEP = "D"


@dataclass(frozen=True)
class GeometricHyperplane:
    n: int
    key: int  # functional as a bit-packed int; 0 = extraordinary
    mask: int  # bit i set iff point i belongs to the hyperplane

    @property
    def extraordinary(self) -> bool:
        return self.key == EXTRAORDINARY

    @property
    def functional(self) -> BinVector:
        return BinVector(1 << self.n, self.key)

    @property
    def point_set(self) -> frozenset[int]:
        return frozenset(self.point_indices)

    @property
    def point_indices(self) -> tuple[int, ...]:
        m, out, i = self.mask, [], 0
        while m:
            if m & 1:
                out.append(i)
            m >>= 1
            i += 1
        return tuple(out)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, idx: int) -> bool:
        return bool((self.mask >> idx) & 1)


def _mask_from_functional(v: SegreVariety, f: int) -> int:
    mask = 0
    for i, e in enumerate(v.embeddings):
        if not dot(f, int(e)):
            mask |= 1 << i
    return mask


def _as_key(f: BinVector | int, dim: int) -> int:
    if isinstance(f, BinVector):
        if f.length != dim:
            raise ValueError(f"functional must have length {dim}, got {f.length}")
        return f.bits
    f = int(f)
    if f < 0 or f >> dim:
        raise ValueError(f"functional 0x{f:x} does not fit in {dim} bits")
    return f


def hyperplane_from_functional(v: SegreVariety, f: BinVector | int) -> GeometricHyperplane:
    key = _as_key(f, v.dim)
    if key == 0:
        raise ValueError("zero functional; use extraordinary_hyperplane()")
    return GeometricHyperplane(v.n, key, _mask_from_functional(v, key))


def extraordinary_hyperplane(v: SegreVariety) -> GeometricHyperplane:
    return GeometricHyperplane(v.n, EXTRAORDINARY, (1 << v.n_points) - 1)


def singular_functional(p: Point) -> int:
    """Functional of the singular hyperplane whose deepest point is ``p``.

    It is the rank-one tensor built from the factor functionals vanishing at
    each coordinate of ``p``; with the fixed index map these are the factor
    vectors of the point with 0 and 1 exchanged.
    """
    return embed_word(tuple((1, 0, 2)[c] for c in p))


def _point_indices(v: SegreVariety, s) -> set[int]:
    if isinstance(s, GeometricHyperplane):
        return set(s.point_indices)
    out = set()
    for p in s:
        out.add(v.index(tuple(p)) if not isinstance(p, (int, np.integer)) else int(p))
    return out


def is_geometric_hyperplane(v: SegreVariety, s) -> bool:
    """Whether the point collection ``s`` is a proper subset meeting every line in 1 or 3 points."""
    idx = _point_indices(v, s)
    if len(idx) >= v.n_points:
        return False
    member = np.zeros(v.n_points, dtype=bool)
    member[list(idx)] = True
    hits = member[v.line_points].sum(axis=1)
    return bool(np.all((hits == 1) | (hits == 3)))


def enumerate_hyperplanes(v: SegreVariety, include_extraordinary: bool = False) -> Iterator[GeometricHyperplane]:
    for f in range(1, 1 << v.dim):
        yield hyperplane_from_functional(v, f)
    if include_extraordinary:
        yield extraordinary_hyperplane(v)


def brute_force_hyperplanes(v: SegreVariety) -> list[int]:
    """All geometric hyperplanes as point masks, by exhaustive subset search.

    Only practical for N <= 2 (2^9 subsets).
    """
    if v.n_points > 16:
        raise ValueError("subset search is limited to at most 16 points")
    found = []
    for mask in range(1 << v.n_points):
        if is_geometric_hyperplane(v, [i for i in range(v.n_points) if (mask >> i) & 1]):
            found.append(mask)
    return found


def point_order(v: SegreVariety, h: GeometricHyperplane, p: Point | int) -> int:
    idx = p if isinstance(p, (int, np.integer)) else v.index(p)
    if idx not in h:
        raise ValueError(f"point {p!r} is not in the hyperplane")
    count = 0
    for li in v.point_lines[idx]:
        if all(int(q) in h for q in v.line_points[li]):
            count += 1
    return count


def contained_lines(v: SegreVariety, mask: int) -> list[int]:
    return [li for li, row in enumerate(v.line_points) if all((mask >> int(q)) & 1 for q in row)]


def deepest_point(v: SegreVariety, h: GeometricHyperplane) -> Point | None:
    if h.extraordinary:
        return None
    dist = v.distance_matrix
    for i in h.point_indices:
        singular = np.flatnonzero(dist[i] < v.n)
        if len(singular) == len(h) and all(int(j) in h for j in singular):
            return v.points[i]
    return None


class HyperplaneTable:
    """Invariants of every ordinary hyperplane of S_(N), computed in bulk.

    Row ``k`` describes the functional ``k + 1``.
    """

    def __init__(self, n: int):
        self.variety = v = build_segre(n)
        self.n = n
        self.keys = np.arange(1, 1 << v.dim, dtype=np.int64)
        emb = v.embeddings
        self.membership = (np.bitwise_count(self.keys[:, None] & emb[None, :]) & 1) == 0
        self.sizes = self.membership.sum(axis=1)

    @cached_property
    def lines_in(self) -> np.ndarray:
        lp = self.variety.line_points
        m = self.membership
        return m[:, lp[:, 0]] & m[:, lp[:, 1]] & m[:, lp[:, 2]]

    @cached_property
    def n_lines(self) -> np.ndarray:
        return self.lines_in.sum(axis=1)

    @cached_property
    def orders(self) -> np.ndarray:
        """Point orders, -1 for points outside the hyperplane."""
        li = self.lines_in
        pl = self.variety.point_lines
        orders = np.zeros(self.membership.shape, dtype=np.int8)
        for a in range(self.n):
            orders += li[:, pl[:, a]]
        return np.where(self.membership, orders, -1)

    @cached_property
    def order_hist(self) -> np.ndarray:
        o = self.orders
        return np.stack([(o == k).sum(axis=1) for k in range(self.n + 1)], axis=1)

    @cached_property
    def restrictions(self) -> np.ndarray:
        """(functionals, N, 3) restrictions to the sub-Segres, by axis and level."""
        out = np.empty((len(self.keys), self.n, 3), dtype=np.int64)
        for a in range(self.n):
            for lvl in range(3):
                out[:, a, lvl] = restrict_functionals(self.keys, self.n, a, lvl)
        return out

    def row(self, f: int) -> int:
        return f - 1


@lru_cache(maxsize=None)
def hyperplane_table(n: int) -> HyperplaneTable:
    return HyperplaneTable(n)


@dataclass(frozen=True)
class HyperplaneSignature:
    n_points: int
    n_lines: int
    order_histogram: tuple[int, ...]
    sub_profile: tuple[int, ...]  # (Deep, H1, ..., Hk) counts over the 3N sub-Segres
    on_quadric: bool | None = None
    weight: int | None = None

    def sort_key(self) -> tuple:
        # more points first, then more deep points, then more points of order N-1,
        # then the rest of the histogram from the top order down
        hist = self.order_histogram
        return (-self.n_points, *(-c for c in reversed(hist)))

    def profile_dict(self) -> dict[str, int]:
        labels = [DEEP] + [f"H{i}" for i in range(1, len(self.sub_profile))]
        return dict(zip(labels, self.sub_profile))


@dataclass
class CensusEntry:
    label: str
    signature: object
    cardinality: int
    representative: int
    weight: int | None = None
    on_quadric: bool | None = None
    vl_provenance: frozenset[str] = frozenset()
    notes: str = ""


@dataclass
class TypeCensus:
    """A classification report: type label -> signature, size and attributes."""

    n: int
    kind: str  # "hyperplanes" | "vlines"
    entries: list[CensusEntry]
    labels: np.ndarray  # per-object type index into ``entries`` (object order is kind-specific)
    defects: list[str]

    @property
    def total(self) -> int:
        return sum(e.cardinality for e in self.entries)

    @property
    def cardinalities(self) -> list[int]:
        return [e.cardinality for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, label) -> CensusEntry:
        label = str(label)
        for e in self.entries:
            if e.label == label:
                return e
        raise KeyError(label)


@lru_cache(maxsize=None)
def type_lookup(n: int) -> np.ndarray:
    """Array indexed by functional giving its hyperplane type number (0 for zero)."""
    census = classify_hyperplanes(build_segre(n))
    out = np.zeros(1 << (1 << n), dtype=np.int64)
    out[1:] = census.labels + 1
    return out


def sub_segre_labels(table: HyperplaneTable) -> np.ndarray:
    """(functionals, 3N) sub-Segre intersection types: 0 = Deep, t = H_t."""
    n = table.n
    lookup = type_lookup(n - 1)
    return lookup[table.restrictions.reshape(len(table.keys), 3 * n)]


def sub_segre_profile(v: SegreVariety, h: GeometricHyperplane) -> dict[str, int]:
    """Multiset of intersection types of ``h`` with the 3N sub-Segres."""
    if v.n < 2:
        raise ValueError("sub-Segre profile needs N >= 2")
    if h.extraordinary:
        return {DEEP: 3 * v.n}
    table = hyperplane_table(v.n)
    row = sub_segre_labels(table)[table.row(h.key)]
    k = int(type_lookup(v.n - 1).max())
    counts = np.bincount(row, minlength=k + 1)
    labels = [DEEP] + [f"H{i}" for i in range(1, k + 1)]
    return {lab: int(c) for lab, c in zip(labels, counts) if c}


def classify_hyperplanes(v: SegreVariety) -> TypeCensus:
    """Group every ordinary hyperplane of ``v`` by its invariant signature.

    Types are numbered by descending point count, then descending counts of
    points of order N, N-1, ..., 0.
    """
    return _classify(v.n)


@lru_cache(maxsize=None)
def _classify(n: int) -> TypeCensus:
    from .symmetry import invariant_quadric_or_none, tensor_weights

    table = hyperplane_table(n)
    cols = [table.sizes[:, None], table.n_lines[:, None], table.order_hist]
    if n >= 2:
        sub = sub_segre_labels(table)
        k = int(type_lookup(n - 1).max())
        prof = np.stack([(sub == t).sum(axis=1) for t in range(k + 1)], axis=1)
        cols.append(prof)
    feats = np.concatenate(cols, axis=1)
    uniq, inverse = np.unique(feats, axis=0, return_inverse=True)
    inverse = inverse.ravel()

    weights = tensor_weights(n)[table.keys]
    quadric = invariant_quadric_or_none(n)
    onq = quadric.evaluate_many(table.keys) == 0 if quadric is not None else None

    sigs = []
    for row in uniq:
        row = [int(x) for x in row]
        sigs.append(HyperplaneSignature(row[0], row[1], tuple(row[2:3 + n]), tuple(row[3 + n:])))
    order = sorted(range(len(uniq)), key=lambda i: sigs[i].sort_key())
    rank = np.empty(len(order), dtype=np.int64)
    rank[order] = np.arange(len(order))
    labels = rank[inverse]

    entries, defects = [], []
    for t, gi in enumerate(order):
        members = np.flatnonzero(inverse == gi)
        ws = set(weights[members].tolist())
        on = None
        if onq is not None:
            on_set = set(onq[members].tolist())
            if len(on_set) > 1:
                defects.append(f"type {t + 1} is split by the invariant quadric")
            on = bool(onq[members[0]])
        if len(ws) > 1:
            defects.append(f"type {t + 1} has mixed tensor weights {sorted(ws)}")
        s = sigs[gi]
        sig = HyperplaneSignature(s.n_points, s.n_lines, s.order_histogram, s.sub_profile,
                                  on, int(weights[members[0]]))
        entries.append(CensusEntry(str(t + 1), sig, len(members), int(table.keys[members[0]]),
                                   weight=sig.weight, on_quadric=on))
    return TypeCensus(n, "hyperplanes", entries, labels, defects)


def hyperplane_type(v: SegreVariety, h: GeometricHyperplane | int) -> int:
    key = h.key if isinstance(h, GeometricHyperplane) else int(h)
    if key == 0:
        raise ValueError("the extraordinary hyperplane has no ordinary type")
    return int(type_lookup(v.n)[key])


def singular_hyperplane(v: SegreVariety, p: Point) -> GeometricHyperplane:
    return hyperplane_from_functional(v, singular_functional(p))

