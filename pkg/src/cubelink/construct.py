"""Builders for covering cycles of the k-cube nodes and the star covering tree.

Every cycle here is a sequence of triangles, one per plane of the sheaf.
Triangle ``i`` (plane ``l = i``) runs apex -> ``C + p*s_l`` -> ``C - q*s_l``
and on to the next apex. Its four nodes sit on the three links at

* link 0: ``V1`` at ``1/p``
* link 1: ``V2`` at ``(p-1)/(p+q)`` and ``V3`` at ``(p+1)/(p+q)``
* link 2: ``V4`` at ``(q-1)/q``

provided the apex heights satisfy ``h = p/(p-1)`` for the outgoing link and
``h' = q/(q-1)`` for the closing one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .exactq import Point, Segment, add
from .exactq import scale as vscale
from .hypercube import axis, center, direction_vector, node, plane_count, plane_nodes

SHARED_APEX = "shared-apex"
PERFECT = "perfect"
STAR = "star"


def _q(x) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


@dataclass(frozen=True)
class TriangleMeta:
    plane: int
    height: Fraction  # apex height of this triangle
    p: Fraction  # outgoing Steiner point is C + p*s
    q: Fraction  # return Steiner point is C - q*s


@dataclass(frozen=True)
class ConstructionMeta:
    variant: str
    triangles: Tuple[TriangleMeta, ...]
    scale: Optional[Fraction] = None
    heights: Optional[Tuple[Fraction, ...]] = None


@dataclass(frozen=True)
class PolyChain:
    """Polygonal chain; a closed chain repeats its first vertex at the end."""

    k: int
    vertices: Tuple[Point, ...]
    closed: bool = False
    meta: Optional[ConstructionMeta] = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(tuple(_q(x) for x in v) for v in self.vertices))
        if len(self.vertices) < 2:
            raise ValueError("a chain needs at least two vertices")
        for v in self.vertices:
            if len(v) != self.k:
                raise ValueError(f"vertex {v} does not have dimension {self.k}")
        for a, b in zip(self.vertices, self.vertices[1:]):
            if a == b:
                raise ValueError("consecutive vertices coincide")
        if self.closed and self.vertices[0] != self.vertices[-1]:
            raise ValueError("closed chain must end at its first vertex")

    @property
    def link_count(self) -> int:
        return len(self.vertices) - 1

    @property
    def links(self) -> List[Segment]:
        return [Segment(a, b) for a, b in zip(self.vertices, self.vertices[1:])]

    def without_link(self, i: int) -> List["PolyChain"]:
        """Pieces left after deleting link ``i`` (zero, one or two open chains)."""
        head, tail = self.vertices[: i + 1], self.vertices[i + 1:]
        return [PolyChain(self.k, part) for part in (head, tail) if len(part) >= 2]


@dataclass(frozen=True)
class SegmentSet:
    k: int
    segments: Tuple[Segment, ...]

    def __post_init__(self):
        for s in self.segments:
            if s.dim != self.k:
                raise ValueError(f"segment of dimension {s.dim} in a k={self.k} set")


@dataclass(frozen=True)
class PerfectParams:
    """Apex heights of a perfect cycle, one per plane; all > 1 and distinct."""

    heights: Tuple[Fraction, ...]

    def __post_init__(self):
        hs = tuple(Fraction(h) for h in self.heights)
        object.__setattr__(self, "heights", hs)
        for h in hs:
            if h <= 1:
                raise ValueError(f"apex height must exceed 1, got {h}")
        if len(set(hs)) != len(hs):
            raise ValueError("apex heights must be pairwise distinct")

    @classmethod
    def default(cls, k: int) -> "PerfectParams":
        return cls(tuple(Fraction(l + 2, 2) for l in range(1, plane_count(k) + 1)))


class Incidence(NamedTuple):
    link: int
    node: int
    t: Fraction


def apex_height(p: Fraction) -> Fraction:
    """Apex height that puts ``V1`` on the link towards ``C + p*s``."""
    return p / (p - 1)


def _assemble(k: int, triangles: Sequence[TriangleMeta], meta_kwargs) -> PolyChain:
    c, e = center(k), axis(k)
    verts = []
    for tri in triangles:
        s = direction_vector(k, tri.plane)
        verts.append(add(c, vscale(tri.height, e)))
        verts.append(add(c, vscale(tri.p, s)))
        verts.append(add(c, vscale(-tri.q, s)))
    verts.append(verts[0])
    meta = ConstructionMeta(triangles=tuple(triangles), **meta_kwargs)
    return PolyChain(k, tuple(verts), closed=True, meta=meta)


def build_shared_apex_cycle(k: int, scale: Fraction = Fraction(3)) -> PolyChain:
    """Closed chain of ``3 * 2^(k-2)`` links whose triangles all share one apex.

    ``scale`` is the distance factor of the base Steiner points ``C +- scale*s_l``;
    the apex sits at height ``scale/(scale - 1)`` above ``C``.
    """
    p = Fraction(scale)
    if p <= 1:
        raise ValueError(f"scale must exceed 1, got {p}")
    h = apex_height(p)
    tris = [TriangleMeta(l, h, p, p) for l in range(plane_count(k))]
    return _assemble(k, tris, {"variant": SHARED_APEX, "scale": p})


def build_perfect_cycle(k: int, params: Optional[PerfectParams] = None) -> PolyChain:
    """Closed chain of ``3 * 2^(k-2)`` links with pairwise distinct Steiner points.

    Triangle ``i`` climbs to height ``h_i``; its return point is chosen so the
    closing link reaches the next triangle's apex (cyclically) through ``V4``.
    """
    if params is None:
        params = PerfectParams.default(k)
    elif not isinstance(params, PerfectParams):
        params = PerfectParams(tuple(params))
    n = plane_count(k)
    hs = params.heights
    if len(hs) != n:
        raise ValueError(f"k={k} needs {n} heights, got {len(hs)}")
    ps = [h / (h - 1) for h in hs]
    tris = [TriangleMeta(l, hs[l], ps[l], ps[(l + 1) % n]) for l in range(n)]
    return _assemble(k, tris, {"variant": PERFECT, "heights": hs})


def build_star_tree(k: int) -> SegmentSet:
    """``2^(k-1)`` segments joining each node with first coordinate 0 to its complement."""
    full = (1 << k) - 1
    segs = tuple(Segment(node(k, b), node(k, full ^ b)) for b in range(0, 1 << k, 2))
    return SegmentSet(k, segs)


def rebuild(k: int, variant: str, scale=None, heights=None) -> PolyChain:
    if variant == SHARED_APEX:
        return build_shared_apex_cycle(k, Fraction(3) if scale is None else scale)
    if variant == PERFECT:
        return build_perfect_cycle(k, None if heights is None else PerfectParams(tuple(heights)))
    raise ValueError(f"unknown chain variant {variant!r}")


def incidence_table(chain: PolyChain) -> List[Incidence]:
    """Node incidences predicted by the construction formulas (no geometric search)."""
    if chain.meta is None:
        raise ValueError("chain carries no construction metadata")
    out = []
    for i, tri in enumerate(chain.meta.triangles):
        v1, v2, v3, v4 = plane_nodes(chain.k, tri.plane)
        p, q = tri.p, tri.q
        out.append(Incidence(3 * i, v1, 1 / p))
        out.append(Incidence(3 * i + 1, v2, (p - 1) / (p + q)))
        out.append(Incidence(3 * i + 1, v3, (p + 1) / (p + q)))
        out.append(Incidence(3 * i + 2, v4, (q - 1) / q))
    return out
