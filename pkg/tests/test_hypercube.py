from fractions import Fraction as F

import pytest

from cubelink.exactq import dot, point, rank, sub
from cubelink.hypercube import (
    CostError,
    HypercubeModel,
    axis,
    center,
    direction_vector,
    no_three_collinear,
    node,
    node_id,
    nodes,
    plane_count,
    plane_nodes,
    plane_of_node,
    rectangle_side_squares,
)

h = F(1, 2)


def nid(*bits):
    return node_id(point(*bits))


@pytest.mark.parametrize("k,l,expected", [
    (4, 0, (-h, -h, -h, 0)),
    (4, 3, (-h, h, h, 0)),
    (2, 0, (-h, 0)),
    (5, 4, (-h, h, -h, -h, 0)),
])
def test_direction_vector(k, l, expected):
    assert direction_vector(k, l) == expected


@pytest.mark.parametrize("k,l", [(4, 4), (4, -1), (2, 1)])
def test_direction_vector_out_of_range(k, l):
    with pytest.raises(ValueError):
        direction_vector(k, l)


def test_steiner_points_of_first_and_last_triangle():
    # C + 3 s for the first and last plane at k = 4
    c = center(4)
    assert tuple(x + 3 * y for x, y in zip(c, direction_vector(4, 0))) == point(-1, -1, -1, 0)
    assert tuple(x + 3 * y for x, y in zip(c, direction_vector(4, 3))) == point(-1, 2, 2, 0)


@pytest.mark.parametrize("k,l,expected", [
    (3, 1, [(0, 1, 1), (0, 1, 0), (1, 0, 0), (1, 0, 1)]),
    (2, 0, [(0, 1), (0, 0), (1, 0), (1, 1)]),
    (4, 0, [(0, 0, 0, 1), (0, 0, 0, 0), (1, 1, 1, 0), (1, 1, 1, 1)]),
])
def test_plane_nodes(k, l, expected):
    assert tuple(plane_nodes(k, l)) == tuple(nid(*b) for b in expected)


@pytest.mark.parametrize("k,bits,expected", [
    (4, (0, 0, 0, 1), (0, 1)),
    (3, (1, 0, 0), (1, 3)),
    (2, (1, 1), (0, 4)),
])
def test_plane_of_node(k, bits, expected):
    assert plane_of_node(k, nid(*bits)) == expected


def test_node_roundtrip_and_bad_points():
    for b in range(16):
        assert node_id(node(4, b)) == b
    with pytest.raises(ValueError):
        node_id(point(h, 0))
    with pytest.raises(ValueError):
        node(3, 8)


def test_model_and_bad_dimension():
    m = HypercubeModel(5)
    assert (m.node_count, m.plane_count) == (32, 8)
    assert m.center == (h, h, h, h, 0) and m.axis == (0, 0, 0, 0, 1)
    with pytest.raises(ValueError):
        HypercubeModel(1)
    with pytest.raises(ValueError):
        plane_count(1)


def brute_side_squares(k):
    """Squared distances |V1 V2|^2 and |V2 V3|^2 in plane 0, straight from coordinates."""
    v1, v2, v3, _ = (node(k, n) for n in plane_nodes(k, 0))
    d = lambda a, b: sum((x - y) ** 2 for x, y in zip(a, b))
    return d(v1, v2), d(v2, v3)


@pytest.mark.parametrize("k,expected", [(2, (1, 1)), (3, (1, 2)), (4, (1, 3))])
def test_rectangle_side_squares_examples(k, expected):
    assert brute_side_squares(k) == expected
    assert rectangle_side_squares(k) == expected


@pytest.mark.parametrize("k", range(2, 9))
def test_rectangle_side_squares_against_every_plane(k):
    base2, height2 = rectangle_side_squares(k)
    assert (base2, height2) == (1, k - 1)
    for l in range(min(plane_count(k), 16)):
        v1, v2, v3, v4 = (node(k, n) for n in plane_nodes(k, l))
        assert dot(sub(v1, v2), sub(v1, v2)) == base2
        assert dot(sub(v3, v2), sub(v3, v2)) == height2


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_no_three_collinear(k):
    assert no_three_collinear(k)


def test_no_three_collinear_refuses_large_k():
    with pytest.raises(CostError):
        no_three_collinear(7)


@pytest.mark.parametrize("k", range(2, 11))
def test_partition(k):
    seen = set()
    for l in range(plane_count(k)):
        quad = plane_nodes(k, l)
        assert len(set(quad)) == 4
        assert not seen & set(quad)
        seen |= set(quad)
        for pos, n in enumerate(quad, start=1):
            assert plane_of_node(k, n) == (l, pos)
    assert seen == set(range(1 << k))


@pytest.mark.parametrize("k", range(2, 8))
def test_quadruple_shape(k):
    for l in range(plane_count(k)):
        v1, v2, v3, v4 = (node(k, n) for n in plane_nodes(k, l))
        assert v1[-1] == v4[-1] == 1 and v2[-1] == v3[-1] == 0
        assert v1[0] == v2[0] == 0 and v3[0] == v4[0] == 1


@pytest.mark.parametrize("k", range(2, 8))
def test_coplanarity_with_axis_line(k):
    c, e = center(k), axis(k)
    top = tuple(x + y for x, y in zip(c, e))
    for l in range(plane_count(k)):
        pts = [node(k, n) for n in plane_nodes(k, l)] + [top]
        assert rank([sub(p, c) for p in pts]) == 2


@pytest.mark.parametrize("k", range(2, 8))
def test_rectangle_orthogonal_and_parallel(k):
    for l in range(plane_count(k)):
        v1, v2, v3, v4 = (node(k, n) for n in plane_nodes(k, l))
        assert dot(sub(v2, v1), sub(v3, v2)) == 0
        assert dot(sub(v3, v2), sub(v4, v3)) == 0
        assert sub(v2, v1) == sub(v3, v4)
        assert sub(v3, v2) == sub(v4, v1)


def test_nodes_enumeration():
    pts = list(nodes(3))
    assert len(pts) == 8 and len(set(pts)) == 8
    assert all(set(p) <= {0, 1} for p in pts)
