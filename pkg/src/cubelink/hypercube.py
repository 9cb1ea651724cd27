"""Nodes of the unit k-cube and the sheaf of planes that splits them into rectangles.

Every plane of the sheaf contains the line through ``C = (1/2, ..., 1/2, 0)``
with direction ``e_k`` (last coordinate axis) and is spanned by one more
direction ``s_l``: first component -1/2, last component 0, middle components
+-1/2. Each plane holds exactly four nodes, ``C + t*e_k + u*s_l`` for
``(t, u)`` in ``(1, 1), (0, 1), (0, -1), (1, -1)``, and the planes partition
the node set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, NamedTuple, Tuple

from .exactq import Point, Vector, add, norm2, scale, sub

HALF = Fraction(1, 2)

# (t, u) for the four nodes of a plane, in chain order
PLANE_OFFSETS = ((1, 1), (0, 1), (0, -1), (1, -1))


class CostError(ValueError):
    """Requested computation is beyond the supported size."""


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {k!r}")


def node_count(k: int) -> int:
    return 1 << k


def plane_count(k: int) -> int:
    _check_k(k)
    return 1 << (k - 2)


def node(k: int, bits: int) -> Point:
    """Coordinates of node ``bits``; bit ``i`` is coordinate ``i + 1``."""
    if not 0 <= bits < (1 << k):
        raise ValueError(f"node id {bits} out of range for k={k}")
    return tuple(Fraction((bits >> i) & 1) for i in range(k))


def node_id(p) -> int:
    """Inverse of :func:`node`; raises ValueError if ``p`` is not a 0/1 point."""
    bits = 0
    for i, x in enumerate(p):
        if x == 1:
            bits |= 1 << i
        elif x != 0:
            raise ValueError(f"{p!r} is not a node")
    return bits


def nodes(k: int) -> Iterator[Point]:
    return (node(k, b) for b in range(1 << k))


@dataclass(frozen=True)
class HypercubeModel:
    k: int

    def __post_init__(self):
        _check_k(self.k)

    @property
    def center(self) -> Point:
        return center(self.k)

    @property
    def axis(self) -> Vector:
        return axis(self.k)

    @property
    def node_count(self) -> int:
        return 1 << self.k

    @property
    def plane_count(self) -> int:
        return 1 << (self.k - 2)


def center(k: int) -> Point:
    """``C``: all coordinates 1/2 except the last, which is 0."""
    _check_k(k)
    return (HALF,) * (k - 1) + (Fraction(0),)


def axis(k: int) -> Vector:
    _check_k(k)
    return (Fraction(0),) * (k - 1) + (Fraction(1),)


def _check_plane(k: int, l: int) -> None:
    _check_k(k)
    if not 0 <= l < (1 << (k - 2)):
        raise ValueError(f"plane index {l} out of range [0, {1 << (k - 2)}) for k={k}")


def direction_vector(k: int, l: int) -> Vector:
    """``s_l``. Coordinate 2 carries the most significant bit of ``l``;
    a set bit means +1/2, a clear bit -1/2."""
    _check_plane(k, l)
    m = k - 2
    middle = tuple(HALF if (l >> (m - 1 - i)) & 1 else -HALF for i in range(m))
    return (-HALF,) + middle + (Fraction(0),)


class PlaneQuadruple(NamedTuple):
    v1: int
    v2: int
    v3: int
    v4: int


def plane_point(k: int, l: int, t, u) -> Point:
    return add(add(center(k), scale(t, axis(k))), scale(u, direction_vector(k, l)))


def plane_nodes(k: int, l: int) -> PlaneQuadruple:
    """Node ids of the rectangle in plane ``l``, in chain order."""
    _check_plane(k, l)
    ids = []
    for t, u in PLANE_OFFSETS:
        p = plane_point(k, l, t, u)
        ids.append(sum(1 << i for i, x in enumerate(p) if x == 1))
        assert all(x in (0, 1) for x in p), p
    return PlaneQuadruple(*ids)


def plane_of_node(k: int, bits: int) -> Tuple[int, int]:
    """``(l, position)`` with ``plane_nodes(k, l)[position - 1] == bits``."""
    _check_k(k)
    if not 0 <= bits < (1 << k):
        raise ValueError(f"node id {bits} out of range for k={k}")
    x1 = bits & 1
    t = (bits >> (k - 1)) & 1
    u = 1 if x1 == 0 else -1
    l = 0
    for i in range(1, k - 1):
        xi = (bits >> i) & 1
        # sign of s_l in coordinate i+1 is (x - 1/2) * u
        positive = (xi == 1) if u == 1 else (xi == 0)
        l = (l << 1) | int(positive)
    position = PLANE_OFFSETS.index((t, u)) + 1
    return l, position


def rectangle_side_squares(k: int) -> Tuple[Fraction, Fraction]:
    """Squared side lengths ``(|V1 V2|^2, |V2 V3|^2)`` of a plane's rectangle.

    Computed from the actual nodes of plane 0, which gives ``(1, k - 1)``.
    """
    q = plane_nodes(k, 0)
    v1, v2, v3 = node(k, q.v1), node(k, q.v2), node(k, q.v3)
    return norm2(sub(v1, v2)), norm2(sub(v2, v3))


def _collinear(a, b, c) -> bool:
    u = [y - x for x, y in zip(a, b)]
    v = [y - x for x, y in zip(a, c)]
    n = len(u)
    return all(u[i] * v[j] == u[j] * v[i] for i in range(n) for j in range(i + 1, n))


def no_three_collinear(k: int, max_k: int = 6) -> bool:
    """True iff no three distinct nodes of the k-cube are collinear (exhaustive)."""
    _check_k(k)
    if k > max_k:
        raise CostError(f"no_three_collinear is O(2^(3k)); refusing k={k} > {max_k}")
    pts = [tuple((b >> i) & 1 for i in range(k)) for b in range(1 << k)]
    return not any(_collinear(a, b, c) for a, b, c in combinations(pts, 3))
