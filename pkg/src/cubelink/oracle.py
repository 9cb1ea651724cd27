"""Machine check that no 3-link chain passes through 5 nodes of the k-cube.

Exhaustive search
-----------------
No three nodes are collinear, so a link holds at most two nodes, and a
3-link chain through five distinct nodes splits them into groups of sizes
``(2, 2, 1)``, ``(2, 1, 2)`` or ``(1, 2, 2)`` along its links. Enumerating
every 5-subset with every such grouping is therefore complete.

A 2-node group pins its link to the line through the two nodes; put them at
parameters 0 and 1. The link's endpoints must then lie outside the open
interval (0, 1), since the link contains both nodes.

* Two consecutive pinned links meet at their shared Steiner point, which
  must be the lines' crossing, outside (0, 1) on both lines. The 1-node link
  can always be added afterwards.
* Pinned first and last links leave the middle link free: its endpoints
  range over a closed ray on each line, and the middle node must lie in the
  union of segments between the two rays. With ``0 < a < 1`` that is the
  linear system ``n = a*A + (1-a)*B + p*u + q*v``, ``p, q >= 0``; the
  endpoints ``a = 0`` and ``a = 1`` are the two rays themselves.

Every reported counterexample carries explicit Steiner points and the node
count obtained by replaying them through :func:`count_nodes_on_chain`.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .construct import PolyChain, build_shared_apex_cycle
from .exactq import (
    AffineFeasibility,
    Bound,
    Feasible,
    Line,
    Meet,
    Point,
    add,
    line_intersection,
    on_line_param,
    row_reduce,
    scale,
    solve_feasibility,
    sub,
)
from .hypercube import CostError, no_three_collinear, node
from .verify import count_nodes_on_chain

PATTERNS = ((2, 2, 1), (2, 1, 2), (1, 2, 2))
ASSIGNMENTS_PER_SUBSET = 90
MIN_K, MAX_K = 3, 5
ZERO, ONE = Fraction(0), Fraction(1)


@dataclass(frozen=True)
class Assignment:
    """Five nodes split into per-link groups according to ``pattern``."""

    nodes: Tuple[int, ...]
    pattern: Tuple[int, int, int]
    groups: Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]

    def __post_init__(self):
        if tuple(len(g) for g in self.groups) != self.pattern:
            raise ValueError("group sizes do not match the pattern")
        if sorted(n for g in self.groups for n in g) != sorted(self.nodes):
            raise ValueError("groups must partition the nodes")
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("nodes must be distinct")


@dataclass(frozen=True)
class Counterexample:
    assignment: Optional[Assignment]
    steiner: Tuple[Point, ...]
    replay_count: int


@dataclass
class OracleOutcome:
    k: int
    mode: str
    holds: bool
    counterexamples: List[Counterexample]
    assignments: int = 0
    feasibility_calls: int = 0
    samples: int = 0
    max_observed: Optional[int] = None
    histogram: Dict[int, int] = field(default_factory=dict)
    elapsed: float = field(default=0.0, compare=False)

    @property
    def confirmed(self) -> List[Counterexample]:
        """Counterexamples whose Steiner points really pass through 5+ nodes."""
        return [c for c in self.counterexamples if c.replay_count >= 5]


def assignments_for(five: Sequence[int]):
    """All 90 groupings of five nodes, in a fixed order."""
    five = tuple(five)
    for pattern in PATTERNS:
        singles = pattern.index(1)
        pair_slots = [i for i in range(3) if i != singles]
        for first in combinations(five, 2):
            rest = [n for n in five if n not in first]
            for second in combinations(rest, 2):
                single = tuple(n for n in rest if n not in second)
                groups = [None, None, None]
                groups[pair_slots[0]] = first
                groups[pair_slots[1]] = second
                groups[singles] = single
                yield Assignment(five, pattern, tuple(groups))


def _chain(k, pts) -> Optional[PolyChain]:
    try:
        return PolyChain(k, tuple(pts))
    except ValueError:
        return None


def _far_node(a: Point, b: Point, t: Fraction) -> Point:
    """Node of the pair on the other side from parameter ``t`` (a at 0, b at 1)."""
    return b if t <= Fraction(1, 2) else a


class Searcher:
    """Feasibility decisions for one dimension, with per-instance caches.

    ``strict_crossing=False`` drops the requirement that two pinned links
    meet outside (0, 1); it exists only to show the search is not vacuous.
    """

    def __init__(self, k: int, strict_crossing: bool = True):
        self.k = k
        self.strict_crossing = strict_crossing
        self.points = [node(k, b) for b in range(1 << k)]
        self._cross: Dict[tuple, Optional[tuple]] = {}
        self._join: Dict[tuple, tuple] = {}
        self.calls = 0

    # -- two pinned consecutive links -------------------------------------
    def crossing(self, pair1, pair2) -> Optional[Tuple[Point, Fraction, Fraction]]:
        """Shared Steiner point of two pinned consecutive links, or None."""
        self.calls += 1
        key = (pair1, pair2)
        if key not in self._cross:
            a1, b1 = (self.points[n] for n in pair1)
            a2, b2 = (self.points[n] for n in pair2)
            meet = line_intersection(Line.through(a1, b1), Line.through(a2, b2))
            res = None
            if meet.kind is Meet.POINT:
                inside = lambda t: ZERO < t < ONE
                if not self.strict_crossing or not (inside(meet.t1) or inside(meet.t2)):
                    res = (meet.point, meet.t1, meet.t2)
            self._cross[key] = res
        return self._cross[key]

    # -- pinned first and last links --------------------------------------
    def _rays(self, pair):
        a, b = (self.points[n] for n in pair)
        # (ray origin, outward direction, node at the far end)
        return ((a, sub(a, b), b), (b, sub(b, a), a))

    def _on_ray(self, p, origin, direction) -> bool:
        t = on_line_param(p, origin, direction)
        return t is not None and t >= 0

    def join(self, pair1, middle, pair3) -> Optional[Tuple[Point, Point, Point, Point]]:
        """Steiner points S1..S4 with the middle link through ``middle``, or None."""
        if pair3 < pair1:
            # reversing the chain swaps the pinned links
            res = self.join(pair3, middle, pair1)
            return None if res is None else res[::-1]
        key = (pair1, middle, pair3)
        if key in self._join:
            calls, res = self._join[key]
            self.calls += calls
            return res
        n3 = self.points[middle]
        calls, res = 0, None
        if not self._in_hull(n3, pair1, pair3):
            # every ray pair spans the same affine hull
            calls = 4
        else:
            for A, u, far1 in self._rays(pair1):
                for B, v, far3 in self._rays(pair3):
                    calls += 1
                    if self._on_ray(n3, A, u):
                        res = (far1, n3, B, far3)
                    elif self._on_ray(n3, B, v):
                        res = (far1, A, n3, far3)
                    else:
                        res = self._join_interior(n3, A, u, far1, B, v, far3)
                    if res is not None:
                        break
                if res is not None:
                    break
        self._join[key] = (calls, res)
        self.calls += calls
        return res

    def _in_hull(self, p, pair1, pair3) -> bool:
        a1, b1 = (self.points[n] for n in pair1)
        a3, b3 = (self.points[n] for n in pair3)
        cols = (sub(a1, a3), sub(b1, a1), sub(b3, a3))
        rows = [[c[i] for c in cols] for i in range(self.k)]
        return row_reduce(rows, sub(p, a3)) is not None

    def _join_interior(self, n3, A, u, far1, B, v, far3):
        # n3 - B = a*(A - B) + p*u + q*v,  0 < a < 1,  p, q >= 0
        AB = sub(A, B)
        f = AffineFeasibility.build(
            [[AB[i], u[i], v[i]] for i in range(self.k)],
            sub(n3, B),
            (Bound(ZERO, ONE, open_lo=True, open_hi=True), Bound(lo=ZERO), Bound(lo=ZERO)),
        )
        sol = solve_feasibility(f)
        if not isinstance(sol, Feasible):
            return None
        a, p, q = sol.witness
        S2 = add(A, scale(p / a, u))
        S3 = add(B, scale(q / (1 - a), v))
        return (far1, S2, S3, far3)

    # -- one assignment ---------------------------------------------------
    def decide(self, asg: Assignment) -> Optional[Tuple[Point, ...]]:
        """Witness Steiner points S1..S4 if the assignment is realizable, else None."""
        g1, g2, g3 = asg.groups
        if asg.pattern == (2, 2, 1):
            hit = self.crossing(g1, g2)
            if hit is None:
                return None
            X, t1, t2 = hit
            a1, b1 = (self.points[n] for n in g1)
            a2, b2 = (self.points[n] for n in g2)
            return (_far_node(a1, b1, t1), X, _far_node(a2, b2, t2), self.points[g3[0]])
        if asg.pattern == (1, 2, 2):
            hit = self.crossing(g2, g3)
            if hit is None:
                return None
            X, t2, t3 = hit
            a2, b2 = (self.points[n] for n in g2)
            a3, b3 = (self.points[n] for n in g3)
            return (self.points[g1[0]], _far_node(a2, b2, t2), X, _far_node(a3, b3, t3))
        return self.join(g1, g2[0], g3)

    def replay(self, steiner) -> int:
        ch = _chain(self.k, steiner)
        return 0 if ch is None else count_nodes_on_chain(ch)


def _check_exhaustive_k(k: int) -> None:
    if not isinstance(k, int) or k < MIN_K:
        raise CostError(f"exhaustive search needs k >= {MIN_K} (at least 5 nodes), got {k}")
    if k > MAX_K:
        raise CostError(
            f"exhaustive search for k={k} would enumerate {comb(1 << k, 5) * ASSIGNMENTS_PER_SUBSET:,} "
            f"assignments; supported up to k={MAX_K}"
        )


def _search_chunk(k: int, subsets: Sequence[Tuple[int, ...]], strict_crossing: bool):
    s = Searcher(k, strict_crossing)
    found, count = [], 0
    for five in subsets:
        for asg in assignments_for(five):
            count += 1
            witness = s.decide(asg)
            if witness is not None:
                found.append(Counterexample(asg, witness, s.replay(witness)))
    return found, count, s.calls


def lemma1_exhaustive(k: int, chunks: int = 1, workers: int = 1,
                      strict_crossing: bool = True) -> OracleOutcome:
    """Decide every 5-node assignment for 3-link chains in the k-cube, ``3 <= k <= 5``.

    The 5-subsets are split into ``chunks`` contiguous pieces (run on
    ``workers`` processes when > 1); the merged outcome does not depend on
    either setting.
    """
    _check_exhaustive_k(k)
    if not no_three_collinear(k):
        raise AssertionError(f"three collinear nodes in k={k}; enumeration would be incomplete")
    start = time.perf_counter()
    subsets = list(combinations(range(1 << k), 5))
    chunks = max(1, min(chunks, len(subsets)))
    size = -(-len(subsets) // chunks)
    pieces = [subsets[i:i + size] for i in range(0, len(subsets), size)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_search_chunk, [k] * len(pieces), pieces,
                                    [strict_crossing] * len(pieces)))
    else:
        results = [_search_chunk(k, piece, strict_crossing) for piece in pieces]
    found = [c for r in results for c in r[0]]
    return OracleOutcome(
        k=k,
        mode="exhaustive",
        holds=not found,
        counterexamples=found,
        assignments=sum(r[1] for r in results),
        feasibility_calls=sum(r[2] for r in results),
        elapsed=time.perf_counter() - start,
    )


# --- random sampling -------------------------------------------------------

_AIM_FACTORS = tuple(Fraction(n, 2) for n in range(2, 9))  # 1, 3/2, ..., 4
MAX_DENOMINATOR = 64


def _fits(p, box) -> bool:
    return all(abs(x) <= box and x.denominator <= MAX_DENOMINATOR for x in p)


def _uniform_point(rng: random.Random, k: int, box: Fraction) -> Point:
    out = []
    for _ in range(k):
        den = rng.randint(1, MAX_DENOMINATOR)
        lim = int(box * den)
        out.append(Fraction(rng.randint(-lim, lim), den))
    return tuple(out)


def random_chain(rng: random.Random, k: int, box: Fraction) -> PolyChain:
    """A 3-link chain with small rational vertices in ``[-box, box]^k``.

    Most links are aimed through a random node (the next vertex continues past
    it by a factor from 1 to 4), so node-rich chains are actually sampled.
    """
    if rng.random() < 0.5:
        pts = [node(k, rng.randrange(1 << k))]
    else:
        pts = [_uniform_point(rng, k, box)]
    while len(pts) < 4:
        prev = pts[-1]
        cand = None
        if rng.random() < 0.8:
            target = node(k, rng.randrange(1 << k))
            cand = add(prev, scale(rng.choice(_AIM_FACTORS), sub(target, prev)))
            if not _fits(cand, box):
                cand = None
        while cand is None or cand == prev:
            cand = _uniform_point(rng, k, box)
        pts.append(cand)
    return PolyChain(k, tuple(pts))


def lemma1_sample(k: int, samples: int, seed: int, box: Fraction = Fraction(3)) -> OracleOutcome:
    """Count nodes on ``samples`` random 3-link chains; deterministic in ``seed``."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    box = Fraction(box)
    if box <= 0:
        raise ValueError("box must be positive")
    start = time.perf_counter()
    rng = random.Random(seed)
    hist: Counter = Counter()
    found = []
    for _ in range(samples):
        ch = random_chain(rng, k, box)
        n = count_nodes_on_chain(ch)
        hist[n] += 1
        if n >= 5:
            found.append(Counterexample(None, ch.vertices, n))
    return OracleOutcome(
        k=k,
        mode="random",
        holds=not found,
        counterexamples=found,
        samples=samples,
        max_observed=max(hist),
        histogram=dict(sorted(hist.items())),
        elapsed=time.perf_counter() - start,
    )


def four_node_witness(k: int, scale: Fraction = Fraction(3)) -> PolyChain:
    """First triangle of the shared-apex cycle: 3 links through exactly 4 nodes."""
    cyc = build_shared_apex_cycle(k, scale)
    return PolyChain(k, cyc.vertices[:4], closed=True)
