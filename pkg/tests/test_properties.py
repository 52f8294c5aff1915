"""Randomized invariants over the bit-packed representations."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from binsegre.gf2 import BinMatrix, BinVector, kernel_basis, rank, rref_rows
from binsegre.hyperplanes import hyperplane_from_functional, is_geometric_hyperplane, type_lookup
from binsegre.lagrangian import generator_rows, spinor_word
from binsegre.segre import build_segre, graph_distance, lift_functional, restrict_functional
from binsegre.symmetry import invariant_quadric, stabilizer_generators, tensor_weights
from binsegre.veldkamp import VeldkampLine, blow_up_functional, project_hyperplane

ns = st.integers(min_value=1, max_value=4)


@st.composite
def matrices(draw):
    r = draw(st.integers(1, 6))
    c = draw(st.integers(1, 8))
    rows = draw(st.lists(st.integers(0, (1 << c) - 1), min_size=r, max_size=r))
    return BinMatrix(r, c, tuple(rows))


@st.composite
def functionals(draw, n=None):
    n = draw(ns) if n is None else n
    return n, draw(st.integers(1, (1 << (1 << n)) - 1))


@given(matrices())
def test_rank_nullity(m):
    basis = kernel_basis(m)
    assert rank(m) + len(basis) == m.ncols
    for x in basis:
        assert all(BinVector(m.ncols, r).dot(x) == 0 for r in m.rows)


@given(matrices())
def test_rref_is_idempotent(m):
    rows, _ = rref_rows(m.rows, m.ncols)
    assert rref_rows(rows, m.ncols)[0] == rows


@given(st.integers(1, 8).flatmap(lambda k: st.tuples(st.just(k), st.integers(0, 2**k - 1), st.integers(0, 2**k - 1))))
def test_addition_is_an_involution(t):
    k, x, y = t
    a, b = BinVector(k, x), BinVector(k, y)
    assert (a + b) + b == a


@given(ns.flatmap(lambda n: st.tuples(st.tuples(*[st.integers(0, 2)] * n), st.tuples(*[st.integers(0, 2)] * n))))
def test_distance_bounds(pq):
    p, q = pq
    d = graph_distance(p, q)
    assert 0 <= d <= len(p)
    assert (d == 0) == (p == q)


@given(functionals())
def test_functional_gives_hyperplane(nf):
    n, f = nf
    v = build_segre(n)
    h = hyperplane_from_functional(v, f)
    assert is_geometric_hyperplane(v, h)


@given(functionals(), functionals())
def test_veldkamp_line_property(a, b):
    if a[0] != b[0] or a[1] == b[1]:
        return
    n = a[0]
    v = build_segre(n)
    h1, h2 = hyperplane_from_functional(v, a[1]), hyperplane_from_functional(v, b[1])
    h3 = hyperplane_from_functional(v, a[1] ^ b[1])
    full = (1 << v.n_points) - 1
    assert h3.mask == full & ~(h1.mask ^ h2.mask)
    assert h1.mask & h2.mask == h1.mask & h3.mask == h2.mask & h3.mask


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, (1 << (1 << n)) - 1), st.integers(0, n - 1))))
def test_project_then_blow_up(t):
    n, f, axis = t
    v = build_segre(n)
    line = project_hyperplane(v, f, axis)
    layers = tuple(restrict_functional(f, n, axis, lvl) for lvl in range(3))
    assert sorted(layers) == list(line.members)
    assert blow_up_functional(layers, n, axis) == f
    assert lift_functional((layers[1], layers[0]), n, axis) == f


@given(functionals())
def test_stabilizer_preserves_type_and_weight(nf):
    n, f = nf
    types, w = type_lookup(n), tensor_weights(n)
    for fp in stabilizer_generators(n).functional_permutations:
        assert types[fp[f]] == types[f]
        assert w[fp[f]] == w[f]


@given(functionals(4), functionals(4))
def test_weight_subadditive(a, b):
    w = tensor_weights(4)
    if a[1] != b[1]:
        assert w[a[1] ^ b[1]] <= w[a[1]] + w[b[1]]


@settings(max_examples=50)
@given(st.integers(3, 4).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, len(generator_rows(n)) - 1))))
def test_spinor_images_on_quadric(t):
    n, i = t
    rows = generator_rows(n)[i]
    lo = (1 << n) - 1
    word = spinor_word(tuple(r & lo for r in rows), tuple(r >> n for r in rows), n)
    assert word != 0
    assert invariant_quadric(n).evaluate(word) == 0


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, (1 << (1 << n)) - 1),
                                                      st.integers(1, (1 << (1 << n)) - 1))))
def test_line_constructor_accepts_xor_triples(t):
    n, a, b = t
    if a != b:
        line = VeldkampLine(n, (a, b, a ^ b))
        assert line.ordinary and np.bitwise_xor.reduce(line.members) == 0
