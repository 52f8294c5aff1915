import itertools
from collections import deque

import numpy as np
import pytest

from binsegre.gf2 import BinVector
from binsegre.segre import build_segre, embed, graph_distance


@pytest.mark.parametrize("n,points,lines", [(1, 3, 1), (2, 9, 6), (3, 27, 27), (4, 81, 108)])
def test_counts(n, points, lines):
    v = build_segre(n)
    assert (v.n_points, v.n_lines) == (points, lines)


def test_rejects_bad_n():
    with pytest.raises(ValueError):
        build_segre(0)


def test_embed_examples():
    assert embed((0, 0)) == BinVector.from_bits([0, 0, 0, 1])
    assert embed((2, 2)) == BinVector.from_bits([1, 1, 1, 1])
    assert embed((2,)) == BinVector.from_bits([1, 1])
    with pytest.raises(ValueError):
        embed((3, 0))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_embedded_lines_sum_to_zero(n):
    v = build_segre(n)
    e = v.embeddings
    assert np.all(e[v.line_points[:, 0]] ^ e[v.line_points[:, 1]] ^ e[v.line_points[:, 2]] == 0)
    assert len(set(e.tolist())) == v.n_points


@pytest.mark.parametrize("n", [2, 3, 4])
def test_double_count(n):
    v = build_segre(n)
    assert v.point_lines.size == v.line_points.size == 3 * n * 3 ** (n - 1)


@pytest.mark.parametrize("n,count", [(2, 6), (3, 9), (4, 12)])
def test_sub_segres_partition(n, count):
    v = build_segre(n)
    subs = v.sub_segres()
    assert len(subs) == count
    for axis in range(n):
        triple = [s for s in subs if s.axis == axis]
        assert len(triple) == 3
        pts = [set(s.member_points) for s in triple]
        assert set().union(*pts) == set(range(v.n_points))
        assert sum(len(p) for p in pts) == v.n_points


@pytest.mark.parametrize("n,size", [(2, 3), (3, 9), (4, 27)])
def test_spreads(n, size):
    v = build_segre(n)
    spreads = v.distinguished_spreads()
    assert len(spreads) == n
    for s in spreads:
        assert len(s.member_lines) == size
        covered = sorted(int(p) for li in s.member_lines for p in v.line_points[li])
        assert covered == list(range(v.n_points))


def bfs_distances(v, src):
    dist = {src: 0}
    queue = deque([src])
    while queue:
        p = queue.popleft()
        for li in v.point_lines[p]:
            for q in v.line_points[li]:
                q = int(q)
                if q not in dist:
                    dist[q] = dist[p] + 1
                    queue.append(q)
    return dist


def test_distance_examples():
    assert graph_distance((0, 0, 0, 0), (0, 0, 0, 0)) == 0
    assert graph_distance((0, 0, 0, 0), (1, 0, 0, 0)) == 1
    assert graph_distance((0, 0, 0, 0), (1, 1, 1, 2)) == 4


@pytest.mark.parametrize("n", [2, 3, 4])
def test_distance_matches_bfs(n):
    v = build_segre(n)
    for i in range(v.n_points):
        d = bfs_distances(v, i)
        assert [d[j] for j in range(v.n_points)] == v.distance_matrix[i].tolist()
    assert v.distance_matrix.max() == n


def test_distance_is_metric():
    v = build_segre(3)
    d = v.distance_matrix
    assert np.array_equal(d, d.T)
    for a, b, c in itertools.product(range(0, 27, 4), repeat=3):
        assert d[a, c] <= d[a, b] + d[b, c]
