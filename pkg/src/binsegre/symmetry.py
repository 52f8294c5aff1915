"""
Stabilizer group of S_(N), orbit partitions, tensor weight and the
invariant hyperbolic quadric.

The stabilizer is GL(2,2) acting on each tensor factor, together with
permutations of the factors; it is realised by 2^N x 2^N matrices acting
on bit-packed tensors.  Functionals (hyperplanes) transform by the inverse
transpose so that ``f . x == g^-T f . g x``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .gf2 import BinMatrix, BinVector, kernel_words, rref_rows
from .segre import build_segre, embed_word, tensor_bit

log = logging.getLogger(__name__)

# generators of GL(2,2) on factor vectors (x_0, x_1); rows are images of bit masks
SWAP = ((0, 1), (1, 0))
SHEAR = ((1, 1), (0, 1))


def _local_matrix(n: int, axis: int, a: Sequence[Sequence[int]]) -> BinMatrix:
    """``a`` acting on tensor factor ``axis`` (identity elsewhere), as columns -> rows."""
    b = tensor_bit(n, axis)
    dim = 1 << n
    cols = []
    for flat in range(dim):
        s = (flat >> b) & 1
        img = 0
        for r in range(2):
            if a[r][s]:
                img |= 1 << ((flat & ~(1 << b)) | (r << b))
        cols.append(img)
    return BinMatrix(dim, dim, tuple(cols)).transpose()


def _factor_permutation(n: int, perm: Sequence[int]) -> BinMatrix:
    """Move tensor factor k to position perm[k]."""
    dim = 1 << n
    cols = []
    for flat in range(dim):
        out = 0
        for k in range(n):
            if (flat >> tensor_bit(n, k)) & 1:
                out |= 1 << tensor_bit(n, perm[k])
        cols.append(1 << out)
    return BinMatrix(dim, dim, tuple(cols)).transpose()


def invert(m: BinMatrix) -> BinMatrix:
    n = m.nrows
    if m.ncols != n:
        raise ValueError("not square")
    aug = [m.rows[i] | (1 << (n + i)) for i in range(n)]
    red, pivots = rref_rows(aug, 2 * n)
    if pivots[:n] != tuple(range(n)) or len(red) != n:
        raise ValueError("matrix is singular")
    # [m | I] reduces to [I | m^-1]
    return BinMatrix(n, n, tuple(r >> n for r in red))


def apply_many(m: BinMatrix, xs: np.ndarray) -> np.ndarray:
    """``m x`` for every bit-packed vector in ``xs``."""
    xs = np.asarray(xs, dtype=np.int64)
    cols = m.transpose().rows
    out = np.zeros_like(xs)
    for j, col in enumerate(cols):
        out ^= np.where((xs >> j) & 1, col, 0)
    return out


@dataclass(frozen=True)
class StabilizerGroup:
    n: int
    generators: tuple[BinMatrix, ...]
    names: tuple[str, ...]

    @cached_property
    def dual_generators(self) -> tuple[BinMatrix, ...]:
        return tuple(invert(g).transpose() for g in self.generators)

    @cached_property
    def point_permutations(self) -> np.ndarray:
        """(generators, 3^N) permutations induced on point indices."""
        v = build_segre(self.n)
        lookup = {int(e): i for i, e in enumerate(v.embeddings)}
        perms = []
        for g in self.generators:
            imgs = apply_many(g, v.embeddings)
            try:
                perms.append([lookup[int(x)] for x in imgs])
            except KeyError as exc:
                raise ValueError("generator does not preserve the Segre point set") from exc
        return np.array(perms, dtype=np.intp).reshape(len(self.generators), v.n_points)

    @cached_property
    def functional_permutations(self) -> np.ndarray:
        """(generators, 2^(2^N)) action on all functionals (contragredient)."""
        allf = np.arange(1 << (1 << self.n), dtype=np.int64)
        return np.stack([apply_many(g, allf) for g in self.dual_generators])

    def order(self) -> int:
        return len(group_elements(self))


@lru_cache(maxsize=None)
def stabilizer_generators(n: int) -> StabilizerGroup:
    if n < 1:
        raise ValueError("n must be >= 1")
    gens, names = [], []
    for axis in range(n):
        for name, a in (("swap", SWAP), ("shear", SHEAR)):
            gens.append(_local_matrix(n, axis, a))
            names.append(f"{name}[{axis}]")
    if n >= 2:
        transposition = [1, 0] + list(range(2, n))
        gens.append(_factor_permutation(n, transposition))
        names.append("transpose(0,1)")
    if n >= 3:
        cycle = [(k + 1) % n for k in range(n)]
        gens.append(_factor_permutation(n, cycle))
        names.append(f"cycle({n})")
    return StabilizerGroup(n, tuple(gens), tuple(names))


def group_elements(g: StabilizerGroup) -> np.ndarray:
    """All group elements as permutations of the point set, by closure."""
    gens = g.point_permutations
    ident = np.arange(gens.shape[1], dtype=np.intp)
    seen = {ident.tobytes()}
    elems = [ident]
    frontier = ident[None, :]
    while len(frontier):
        nxt = []
        for p in gens:
            comp = frontier[:, p]  # frontier after generator
            for row in comp:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    nxt.append(row)
        frontier = np.array(nxt, dtype=np.intp).reshape(-1, gens.shape[1])
        elems.extend(nxt)
    return np.array(elems)


@dataclass
class Orbit:
    representative: int  # minimum key
    size: int
    members: np.ndarray


def orbits_from_permutations(perms: np.ndarray, n_objects: int) -> tuple[np.ndarray, list[Orbit]]:
    """Orbits of a group given by generator permutations of ``range(n_objects)``.

    Returns the per-object orbit index and the orbits, ordered by
    representative (the smallest member index).
    """
    rows = np.concatenate([np.arange(n_objects)] * len(perms))
    cols = np.concatenate(list(perms))
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n_objects, n_objects))
    _, comp = connected_components(graph, directed=True, connection="weak")
    # relabel components by first occurrence so orbit order follows object order
    _, first, inverse = np.unique(comp, return_index=True, return_inverse=True)
    order = np.argsort(first)
    relabel = np.empty_like(order)
    relabel[order] = np.arange(len(order))
    comp = relabel[inverse.ravel()]
    orbits = []
    for k in range(len(order)):
        members = np.flatnonzero(comp == k)
        orbits.append(Orbit(int(members[0]), len(members), members))
    return comp, orbits


def hyperplane_orbits(n: int) -> tuple[np.ndarray, list[Orbit]]:
    """Orbits on nonzero functionals; object ``k`` is functional ``k + 1``."""
    g = stabilizer_generators(n)
    perms = g.functional_permutations[:, 1:] - 1
    comp, orbits = orbits_from_permutations(perms, perms.shape[1])
    for o in orbits:
        o.representative += 1
        o.members = o.members + 1
    return comp, orbits


def orbit_partition(g: StabilizerGroup, objects: Sequence, act: Callable[[int, object], object]) -> list[list]:
    """Generic orbit partition of a finite, group-closed set of hashable objects.

    ``act(k, obj)`` applies generator ``k``.  Orbits are sorted by their
    minimum member.
    """
    index = {obj: i for i, obj in enumerate(objects)}
    perms = np.empty((len(g.generators), len(objects)), dtype=np.intp)
    for k in range(len(g.generators)):
        for i, obj in enumerate(objects):
            img = act(k, obj)
            if img not in index:
                raise ValueError(f"object set is not closed under generator {g.names[k]}")
            perms[k, i] = index[img]
    _, orbits = orbits_from_permutations(perms, len(objects))
    return sorted((sorted(objects[i] for i in o.members) for o in orbits), key=lambda m: m[0])


@lru_cache(maxsize=None)
def rank_one_tensors(n: int) -> np.ndarray:
    return np.array(sorted(embed_word(p) for p in itertools.product(range(3), repeat=n)), dtype=np.int64)


@lru_cache(maxsize=None)
def tensor_weights(n: int) -> np.ndarray:
    """Minimal number of rank-one tensors summing to each functional (0 for zero).

    Breadth-first over layers of sums of rank-one tensors.
    """
    size = 1 << (1 << n)
    w = np.full(size, -1, dtype=np.int64)
    w[0] = 0
    frontier = np.array([0], dtype=np.int64)
    r1 = rank_one_tensors(n)
    layer = 0
    while len(frontier):
        layer += 1
        cand = np.unique((frontier[:, None] ^ r1[None, :]).ravel())
        cand = cand[w[cand] < 0]
        w[cand] = layer
        frontier = cand
    return w


def tensor_weight(f: BinVector | int, n: int | None = None) -> int:
    """Tensor rank of a nonzero functional (a BinVector, or an int plus ``n``)."""
    if isinstance(f, BinVector):
        n = f.length.bit_length() - 1
        if 1 << n != f.length:
            raise ValueError(f"length {f.length} is not a power of two")
        f = f.bits
    elif n is None:
        raise ValueError("pass n together with an int functional")
    if f == 0:
        raise ValueError("the zero functional has no weight")
    return int(tensor_weights(n)[int(f)])


# ---------------------------------------------------------------- quadrics


@dataclass(frozen=True)
class QuadraticForm:
    """``Q(x) = sum_{i<=j} c_ij x_i x_j`` on GF(2)^dim."""

    dim: int
    coeffs: frozenset[tuple[int, int]]

    def evaluate(self, x: int) -> int:
        val = 0
        for i, j in self.coeffs:
            val ^= (x >> i) & (x >> j) & 1
        return val

    def evaluate_many(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        val = np.zeros_like(xs)
        for i, j in self.coeffs:
            val ^= (xs >> i) & (xs >> j) & 1
        return val

    def zero_count(self) -> int:
        """Number of projective points (nonzero vectors) on the quadric."""
        xs = np.arange(1, 1 << self.dim, dtype=np.int64)
        return int((self.evaluate_many(xs) == 0).sum())

    def polar(self, x: int, y: int) -> int:
        return self.evaluate(x ^ y) ^ self.evaluate(x) ^ self.evaluate(y)

    def is_nondegenerate(self) -> bool:
        gram = []
        for i in range(self.dim):
            gram.append(sum(self.polar(1 << i, 1 << j) << j for j in range(self.dim)))
        return len(rref_rows(gram, self.dim)[0]) == self.dim

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"x{i}^2" if i == j else f"x{i}*x{j}" for i, j in sorted(self.coeffs))


def _monomials(dim: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(dim) for j in range(i, dim)]


def _substitute(g: BinMatrix, mono: tuple[int, int], index: dict) -> int:
    """Coefficient vector of ``(g x)_i (g x)_j`` in the monomial basis."""
    i, j = mono
    ri, rj = g.rows[i], g.rows[j]
    out = 0
    if i == j:
        for k in range(g.ncols):
            if (ri >> k) & 1:
                out ^= 1 << index[(k, k)]
        return out
    for k in range(g.ncols):
        for l in range(k, g.ncols):
            if k == l:
                c = (ri >> k) & (rj >> k) & 1
            else:
                c = ((ri >> k) & (rj >> l) ^ (ri >> l) & (rj >> k)) & 1
            if c:
                out ^= 1 << index[(k, l)]
    return out


@lru_cache(maxsize=None)
def invariant_form_space(n: int) -> list[QuadraticForm]:
    """Basis of quadratic forms vanishing on the Segre points and fixed by the stabilizer."""
    dim = 1 << n
    monos = _monomials(dim)
    index = {m: k for k, m in enumerate(monos)}
    nm = len(monos)
    rows = []
    for x in rank_one_tensors(n):
        x = int(x)
        rows.append(sum(1 << index[(i, j)] for i, j in monos if (x >> i) & (x >> j) & 1))
    for g in stabilizer_generators(n).generators:
        cols = [_substitute(g, m, index) ^ (1 << k) for k, m in enumerate(monos)]
        rows.extend(BinMatrix(nm, nm, tuple(cols)).transpose().rows)
    forms = []
    for vec in kernel_words(rows, nm):
        forms.append(QuadraticForm(dim, frozenset(monos[k] for k in range(nm) if (vec >> k) & 1)))
    return forms


class QuadricDefect(RuntimeError):
    pass


@lru_cache(maxsize=None)
def invariant_quadric(n: int) -> QuadraticForm:
    """The unique stabilizer-invariant quadric through the embedded S_(N)."""
    if n < 2:
        raise ValueError("invariant quadric needs n >= 2")
    space = invariant_form_space(n)
    if len(space) != 1:
        raise QuadricDefect(f"invariant form space for n={n} has dimension {len(space)}, expected 1")
    form = space[0]
    closed = complementary_pair_form(n)
    if closed != form:
        log.warning("closed-form quadric differs from the fixed-space form for n=%d", n)
    return form


def invariant_quadric_or_none(n: int) -> QuadraticForm | None:
    return invariant_quadric(n) if n >= 2 else None


def complementary_pair_form(n: int) -> QuadraticForm:
    """``sum over I < complement(I) of x_I x_complement(I)``."""
    dim = 1 << n
    full = dim - 1
    return QuadraticForm(dim, frozenset((i, i ^ full) for i in range(dim) if i < i ^ full))


def hyperbolic_point_count(dim: int) -> int:
    m = dim // 2
    return (2 ** (m - 1) + 1) * (2**m - 1)



@dataclass
class QuadricReport:
    n: int
    form: str
    fixed_space_dim: int
    quadric_points: int
    expected_points: int
    nondegenerate: bool
    closed_form_agrees: bool
    per_type: dict[str, tuple[int, int]]  # type -> (on, off)
    defects: list[str]

    @property
    def types_on_quadric(self) -> list[str]:
        return [t for t, (on, _) in self.per_type.items() if on]

    @property
    def on_total(self) -> int:
        return sum(on for on, _ in self.per_type.values())

    @property
    def ok(self) -> bool:
        return (not self.defects and self.fixed_space_dim == 1
                and self.quadric_points == self.expected_points == self.on_total)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "form": self.form,
            "fixed_space_dim": self.fixed_space_dim,
            "quadric_points": self.quadric_points,
            "expected_points": self.expected_points,
            "types_on_quadric": self.types_on_quadric,
            "per_type_counts": {t: {"on": on, "off": off} for t, (on, off) in self.per_type.items()},
            "defects": self.defects,
        }


def quadric_census(n: int) -> QuadricReport:
    """Evaluate the invariant quadric on every hyperplane functional, per type."""
    from .hyperplanes import classify_hyperplanes

    space = invariant_form_space(n)
    defects = []
    if len(space) != 1:
        defects.append(f"fixed-space dimension {len(space)} != 1")
        return QuadricReport(n, "", len(space), 0, hyperbolic_point_count(1 << n), False, False, {}, defects)
    form = space[0]
    census = classify_hyperplanes(build_segre(n))
    keys = np.arange(1, 1 << (1 << n), dtype=np.int64)
    on = form.evaluate_many(keys) == 0
    per_type = {}
    for t, e in enumerate(census.entries):
        sel = on[census.labels == t]
        k_on = int(sel.sum())
        per_type[e.label] = (k_on, len(sel) - k_on)
        if 0 < k_on < len(sel):
            defects.append(f"type {e.label} is split by the quadric")
    return QuadricReport(n, str(form), 1, form.zero_count(), hyperbolic_point_count(1 << n),
                         form.is_nondegenerate(), form == complementary_pair_form(n), per_type, defects)


@dataclass
class WeightDistanceReport:
    n: int
    by_distance: dict[int, dict[str, int]]  # distance -> {type: pair count}

    @property
    def ok(self) -> bool:
        want = {2: "2", 3: "3", 4: "4"}
        return all(set(self.by_distance.get(d, {})) == {t} for d, t in want.items() if d <= self.n)


def weight_distance_rule(n: int = 4) -> WeightDistanceReport:
    """Type of the Veldkamp sum of every pair of singular hyperplanes, by distance of their deepest points."""
    from .hyperplanes import singular_functional, type_lookup

    types = type_lookup(n)
    pts = list(itertools.product(range(3), repeat=n))
    funcs = [singular_functional(p) for p in pts]
    out: dict[int, dict[str, int]] = {}
    for (p, f), (q, g) in itertools.combinations(zip(pts, funcs), 2):
        d = sum(a != b for a, b in zip(p, q))
        t = str(int(types[f ^ g]))
        bucket = out.setdefault(d, {})
        bucket[t] = bucket.get(t, 0) + 1
    return WeightDistanceReport(n, dict(sorted(out.items())))
