import pytest

from binsegre.gf2 import BinMatrix
from binsegre.lagrangian import (
    LagrangianSubspace,
    SymplecticSpace,
    enumerate_generators,
    generator_count,
    generator_rows,
    lgr_census,
    spinor_image,
    spinor_word,
    symplectic_form,
)
from binsegre.symmetry import invariant_quadric


def test_form_is_alternating_and_nondegenerate():
    for n in (1, 2, 3):
        dim = 2 * n
        for x in range(1 << dim):
            assert symplectic_form(x, x, n) == 0
        for x in range(1, 1 << dim):
            assert any(symplectic_form(x, y, n) for y in range(1 << dim))
    g = SymplecticSpace(2).gram
    assert g == g.transpose()


def test_subspace_validation():
    with pytest.raises(ValueError):
        LagrangianSubspace(2, BinMatrix(2, 4, (0b0001, 0b0100)))  # e1, f1 pair to 1
    with pytest.raises(ValueError):
        LagrangianSubspace(2, BinMatrix(2, 4, (0b0001, 0b0001)))


def test_spinor_examples():
    ident_zero = LagrangianSubspace(2, BinMatrix(2, 4, (0b0001, 0b0010)))
    assert spinor_image(ident_zero).bits == 1  # only T = {} is nonzero
    graph_of_identity = LagrangianSubspace(2, BinMatrix(2, 4, (0b0101, 0b1010)))
    assert spinor_image(graph_of_identity).bits == 0b1111


@pytest.mark.parametrize("n,count", [(1, 3), (2, 15), (3, 135), (4, 2295)])
def test_generator_counts(n, count):
    assert len(generator_rows(n)) == count == generator_count(n)


def test_generators_are_valid():
    for L in enumerate_generators(3):
        assert SymplecticSpace(3).is_totally_isotropic(L.basis.rows)


def test_image_independent_of_basis():
    for rows in generator_rows(3)[::7]:
        a = tuple(r & 7 for r in rows)
        b = tuple(r >> 3 for r in rows)
        # replace the first row by the sum of the first two
        rows2 = (rows[0] ^ rows[1],) + rows[1:]
        a2 = tuple(r & 7 for r in rows2)
        b2 = tuple(r >> 3 for r in rows2)
        assert spinor_word(a, b, 3) == spinor_word(a2, b2, 3)


def test_n2_image_is_all_of_pg3():
    words = {spinor_image(L).bits for L in enumerate_generators(2)}
    assert words == set(range(1, 16))


def test_n3_image_is_the_quadric():
    rep = lgr_census(3)
    assert rep.injective and rep.image_is_quadric
    assert rep.type_histogram == {"1": 27, "2": 54, "4": 54}
    q = invariant_quadric(3)
    zeros = {x for x in range(1, 256) if q.evaluate(x) == 0}
    words = {spinor_image(L).bits for L in enumerate_generators(3)}
    assert words == zeros


def test_n4_image():
    rep = lgr_census(4)
    assert rep.generator_count == rep.image_distinct == rep.on_quadric == 2295
    assert rep.type_histogram == {"1": 81, "2": 324, "5": 648, "8": 108, "12": 162, "21": 972}
    assert rep.defects == []
