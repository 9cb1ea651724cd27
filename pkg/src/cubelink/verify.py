"""Exact coverage checks and path/cycle classification for polygonal chains."""

from __future__ import annotations

import enum
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .construct import PolyChain, incidence_table
from .exactq import Point, Segment, on_segment
from .hypercube import node, plane_of_node

FULL = "full"
FAST = "fast"


class Classification(enum.IntEnum):
    NOT_COVERING = 0
    COVERING_TRAIL = 1
    COVERING_PATH = 2
    COVERING_CYCLE = 3
    PERFECT_COVERING_CYCLE = 4

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def from_label(cls, label: str) -> "Classification":
        return cls[label.upper()]


@dataclass(frozen=True)
class VerificationReport:
    k: int
    link_length: int
    covered: int
    uncovered: Tuple[int, ...]
    node_link_multiplicity: Dict[int, int]
    vertex_link_multiplicity: Dict[Point, int]
    classification: Classification
    optimal: bool
    mode: str = field(default=FULL, compare=False)


def lower_bound(k: int) -> int:
    """Fewest links any chain through all ``2^k`` nodes can have: ``3 * 2^(k-2)``."""
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {k!r}")
    return 3 << (k - 2)


def nodes_on_segment(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Tuple[int, Fraction]]:
    """All ``(node id, t)`` with the node on the closed segment ``a``-``b``.

    Any node on the supporting line has coordinate 0 or 1 at the first axis
    where the direction is nonzero, so only two parameters need checking.
    """
    d = [y - x for x, y in zip(a, b)]
    j = next(i for i, x in enumerate(d) if x != 0)
    hits = []
    for target in (0, 1):
        t = (target - a[j]) / d[j]
        if t < 0 or t > 1:
            continue
        bits = 0
        for i, (ai, di) in enumerate(zip(a, d)):
            x = ai + t * di
            if x == 1:
                bits |= 1 << i
            elif x != 0:
                break
        else:
            hits.append((bits, t))
    return hits


def count_nodes_on_chain(chain: PolyChain, k: Optional[int] = None) -> int:
    """Number of distinct cube nodes on the union of the chain's links."""
    if k is not None and k != chain.k:
        raise ValueError(f"chain has dimension {chain.k}, expected {k}")
    seen = set()
    for a, b in zip(chain.vertices, chain.vertices[1:]):
        seen.update(n for n, _ in nodes_on_segment(a, b))
    return len(seen)


def _as_float(points: Sequence[Sequence[Fraction]]) -> np.ndarray:
    return np.array([[float(x) for x in p] for p in points], dtype=float).reshape(len(points), -1)


def segment_hits(points: Sequence[Point], segments: Sequence[Segment]) -> List[List[Tuple[int, Fraction]]]:
    """For every segment, the ``(point index, t)`` of each point lying on it.

    Every pair is tested. A float filter discards pairs that are clearly apart
    (its tolerance is far above rounding error); survivors are decided with
    exact rational arithmetic, so the result never depends on floating point.
    """
    out: List[List[Tuple[int, Fraction]]] = [[] for _ in segments]
    if not points or not segments:
        return out
    P = _as_float(points)
    ends = _as_float([s.a for s in segments] + [s.b for s in segments])
    A, B = ends[: len(segments)], ends[len(segments):]
    finite = np.isfinite(P).all() and np.isfinite(ends).all()
    mag = 1.0 + (max(np.abs(P).max(), np.abs(ends).max()) if finite else 0.0)
    tol = 1e-9 * mag
    for si, seg in enumerate(segments):
        if finite:
            D = B[si] - A[si]
            W = P - A[si]
            t = W @ D / (D @ D)
            R = W - t[:, None] * D
            keep = (np.abs(R).max(axis=1) <= tol) & (t >= -1e-9) & (t <= 1 + 1e-9)
            cand = np.nonzero(keep)[0]
        else:
            cand = range(len(points))
        for pi in cand:
            tt = on_segment(points[pi], seg)
            if tt is not None:
                out[si].append((int(pi), tt))
    return out


def _classify(chain: PolyChain, uncovered, node_mult, vertex_mult) -> Classification:
    if uncovered:
        return Classification.NOT_COVERING
    if any(m > 1 for m in node_mult.values()):
        return Classification.COVERING_TRAIL
    if not chain.closed:
        return Classification.COVERING_PATH
    if any(m > 2 for m in vertex_mult.values()):
        return Classification.COVERING_CYCLE
    return Classification.PERFECT_COVERING_CYCLE


def _report(chain: PolyChain, node_mult: Dict[int, int], vertex_mult, mode: str) -> VerificationReport:
    k = chain.k
    uncovered = tuple(n for n in range(1 << k) if node_mult[n] == 0)
    covered = (1 << k) - len(uncovered)
    cls = _classify(chain, uncovered, node_mult, vertex_mult)
    optimal = not uncovered and chain.link_count == lower_bound(k)
    return VerificationReport(
        k=k,
        link_length=chain.link_count,
        covered=covered,
        uncovered=uncovered,
        node_link_multiplicity=dict(node_mult),
        vertex_link_multiplicity=dict(vertex_mult),
        classification=cls,
        optimal=optimal,
        mode=mode,
    )


def _distinct_vertices(chain: PolyChain) -> List[Point]:
    return list(dict.fromkeys(chain.vertices))


def _verify_full(chain: PolyChain) -> VerificationReport:
    k = chain.k
    links = chain.links
    node_pts = [node(k, b) for b in range(1 << k)]
    node_mult = {b: 0 for b in range(1 << k)}
    for hits in segment_hits(node_pts, links):
        for b, _ in hits:
            node_mult[b] += 1
    verts = _distinct_vertices(chain)
    vertex_mult = {v: 0 for v in verts}
    for hits in segment_hits(verts, links):
        for vi, _ in hits:
            vertex_mult[verts[vi]] += 1
    return _report(chain, node_mult, vertex_mult, FULL)


def _verify_fast(chain: PolyChain) -> Optional[VerificationReport]:
    """Check only the predicted incidences; None if any prediction fails."""
    k = chain.k
    links = chain.links
    table = incidence_table(chain)
    node_mult = Counter()
    for link, b, t in table:
        if on_segment(node(k, b), links[link]) != t:
            return None
        tri = chain.meta.triangles[link // 3]
        if plane_of_node(k, b)[0] != tri.plane:
            return None
        node_mult[b] += 1
    if sorted(node_mult) != list(range(1 << k)) or any(m != 1 for m in node_mult.values()):
        return None
    # by construction no vertex lies inside a link it does not bound
    incident = defaultdict(set)
    for i, (a, b) in enumerate(zip(chain.vertices, chain.vertices[1:])):
        incident[a].add(i)
        incident[b].add(i)
    vertex_mult = {v: len(incident[v]) for v in _distinct_vertices(chain)}
    return _report(chain, dict(node_mult), vertex_mult, FAST)


def verify_chain(chain: PolyChain, k: Optional[int] = None, mode: str = FULL) -> VerificationReport:
    """Coverage and classification of ``chain`` over the nodes of the k-cube.

    ``mode="fast"`` uses the builder's incidence predictions and needs
    construction metadata; without it (or if a prediction fails) the full
    pairwise scan runs instead, and ``report.mode`` says which one ran.
    """
    if k is not None and k != chain.k:
        raise ValueError(f"chain has dimension {chain.k}, expected {k}")
    lower_bound(chain.k)
    if mode not in (FULL, FAST):
        raise ValueError(f"unknown verification mode {mode!r}")
    if mode == FAST and chain.meta is not None:
        rep = _verify_fast(chain)
        if rep is not None:
            return rep
    return _verify_full(chain)
