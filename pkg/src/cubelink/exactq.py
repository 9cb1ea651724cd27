"""Exact rational arithmetic and small linear geometry over Q^k.

Scalars are :class:`fractions.Fraction` (arbitrary precision, always in lowest
terms with a positive denominator). Points and vectors are plain tuples of
fractions. Nothing in here touches floating point.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

Rational = Fraction
Point = Tuple[Fraction, ...]
Vector = Tuple[Fraction, ...]
Number = Union[int, Fraction]

_RATIONAL_TEXT = re.compile(r"^([-−]?)(\d+)(?:/(\d+))?$")


class DimensionError(ValueError):
    """Operands live in spaces of different dimension."""


def rat_make(n: int, d: int = 1) -> Fraction:
    """Canonical rational ``n/d``; raises ZeroDivisionError when ``d == 0``."""
    return Fraction(n, d)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"-p/q"`` or a bare integer.

    Both the ASCII hyphen and U+2212 are accepted as the minus sign. Decimal
    notation is rejected on purpose so that nothing inexact slips in.
    """
    m = _RATIONAL_TEXT.match(text.strip())
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    sign, num, den = m.groups()
    value = Fraction(int(num), int(den) if den is not None else 1)
    return -value if sign else value


def format_rational(x: Fraction) -> str:
    """Canonical text form: ``"p/q"`` in lowest terms, or ``"n"`` for integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def point(*coords: Union[Number, str]) -> Point:
    """Build a point from ints, fractions or rational literals."""
    return tuple(parse_rational(c) if isinstance(c, str) else Fraction(c) for c in coords)


def _check_dim(*vs: Sequence[Fraction]) -> int:
    k = len(vs[0])
    for v in vs[1:]:
        if len(v) != k:
            raise DimensionError(f"dimension mismatch: {k} vs {len(v)}")
    return k


def add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Point:
    _check_dim(a, b)
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    _check_dim(a, b)
    return tuple(x - y for x, y in zip(a, b))


def scale(c: Number, v: Sequence[Fraction]) -> Vector:
    return tuple(c * x for x in v)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    _check_dim(a, b)
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def norm2(v: Sequence[Fraction]) -> Fraction:
    """Squared Euclidean length (stays in Q)."""
    return dot(v, v)


def lerp(a: Sequence[Fraction], b: Sequence[Fraction], t: Number) -> Point:
    """``a + t*(b - a)``."""
    _check_dim(a, b)
    return tuple(x + t * (y - x) for x, y in zip(a, b))


def is_zero(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


@dataclass(frozen=True)
class Segment:
    """Closed segment between two distinct points."""

    a: Point
    b: Point

    def __post_init__(self):
        _check_dim(self.a, self.b)
        if tuple(self.a) == tuple(self.b):
            raise ValueError("degenerate segment: endpoints coincide")

    @property
    def dim(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class Line:
    """Parametric line ``origin + t*direction``."""

    origin: Point
    direction: Vector

    def __post_init__(self):
        _check_dim(self.origin, self.direction)
        if is_zero(self.direction):
            raise ValueError("line direction must be nonzero")

    @classmethod
    def through(cls, a: Point, b: Point) -> "Line":
        """Line with ``a`` at parameter 0 and ``b`` at parameter 1."""
        return cls(tuple(a), sub(b, a))

    def at(self, t: Number) -> Point:
        return tuple(o + t * d for o, d in zip(self.origin, self.direction))


def on_line_param(p: Sequence[Fraction], origin: Sequence[Fraction],
                  direction: Sequence[Fraction]) -> Optional[Fraction]:
    """Parameter ``t`` with ``p == origin + t*direction``, or None if ``p`` is off the line."""
    _check_dim(p, origin, direction)
    t = None
    for pi, oi, di in zip(p, origin, direction):
        if di != 0:
            t = (pi - oi) / di
            break
    if t is None:
        raise ValueError("zero direction")
    for pi, oi, di in zip(p, origin, direction):
        if pi != oi + t * di:
            return None
    return t


def on_segment(p: Sequence[Fraction], s: Segment) -> Optional[Fraction]:
    """Parameter ``t`` in [0, 1] with ``p == s.a + t*(s.b - s.a)``, else None.

    Endpoints count (closed segment).
    """
    if len(p) != s.dim:
        raise DimensionError(f"point has dimension {len(p)}, segment {s.dim}")
    t = on_line_param(p, s.a, sub(s.b, s.a))
    if t is None or t < 0 or t > 1:
        return None
    return t


class Meet(enum.Enum):
    EMPTY = "empty"
    POINT = "point"
    IDENTICAL = "identical"


@dataclass(frozen=True)
class LineMeet:
    """Outcome of :func:`line_intersection`; ``point``, ``t1``, ``t2`` only for ``Meet.POINT``."""

    kind: Meet
    point: Optional[Point] = None
    t1: Optional[Fraction] = None
    t2: Optional[Fraction] = None


def _parallel(u: Sequence[Fraction], v: Sequence[Fraction]) -> bool:
    n = len(u)
    return all(u[i] * v[j] == u[j] * v[i] for i in range(n) for j in range(i + 1, n))


def line_intersection(l1: Line, l2: Line) -> LineMeet:
    """Exact classification of two lines in Q^k (parallel, skew, crossing or equal)."""
    _check_dim(l1.origin, l2.origin)
    d1, d2 = l1.direction, l2.direction
    w = sub(l2.origin, l1.origin)
    if _parallel(d1, d2):
        if _parallel(w, d1):
            return LineMeet(Meet.IDENTICAL)
        return LineMeet(Meet.EMPTY)
    # t1*d1 - t2*d2 = w, k equations in two unknowns
    rows = [[a, -b] for a, b in zip(d1, d2)]
    sol = solve_linear(rows, list(w))
    if sol is None:
        return LineMeet(Meet.EMPTY)
    t1, t2 = sol
    return LineMeet(Meet.POINT, l1.at(t1), t1, t2)


# --- linear systems -------------------------------------------------------

def row_reduce(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Reduced row echelon form of ``[rows | rhs]``.

    Returns ``(matrix, rhs, pivots)`` for the consistent case, ``None`` if the
    system has no solution. ``pivots[i]`` is the pivot column of row ``i``.
    """
    m = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    for row in m[r:]:
        if row[-1] != 0:
            return None
    return [row[:-1] for row in m[:r]], [row[-1] for row in m[:r]], pivots


def solve_linear(rows, rhs) -> Optional[Tuple[Fraction, ...]]:
    """Unique solution of a linear system, or None if inconsistent.

    Raises ValueError when the solution is not unique.
    """
    red = row_reduce(rows, rhs)
    if red is None:
        return None
    _, b, pivots = red
    n = len(rows[0])
    if len(pivots) < n:
        raise ValueError("system is underdetermined")
    return tuple(b)


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    red = row_reduce(rows, [0] * len(rows))
    return len(red[2])


# --- feasibility ----------------------------------------------------------

@dataclass(frozen=True)
class Bound:
    """Optional lower/upper bound on one variable; ``open_*`` makes it strict."""

    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    open_lo: bool = False
    open_hi: bool = False


@dataclass(frozen=True)
class AffineFeasibility:
    """``A x = b`` together with per-variable bounds; at most three variables."""

    matrix: Tuple[Tuple[Fraction, ...], ...]
    rhs: Tuple[Fraction, ...]
    bounds: Tuple[Bound, ...]

    def __post_init__(self):
        n = len(self.bounds)
        if n > 3:
            raise ValueError("at most 3 variables are supported")
        if len(self.matrix) != len(self.rhs):
            raise ValueError("matrix and rhs row counts differ")
        for row in self.matrix:
            if len(row) != n:
                raise ValueError("row length must equal the number of variables")

    @classmethod
    def build(cls, matrix, rhs, bounds) -> "AffineFeasibility":
        return cls(
            tuple(tuple(Fraction(x) for x in row) for row in matrix),
            tuple(Fraction(x) for x in rhs),
            tuple(bounds),
        )

    @property
    def nvars(self) -> int:
        return len(self.bounds)

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        for row, b in zip(self.matrix, self.rhs):
            if sum((a * v for a, v in zip(row, x)), Fraction(0)) != b:
                return False
        for v, bd in zip(x, self.bounds):
            if bd.lo is not None and (v < bd.lo or (bd.open_lo and v == bd.lo)):
                return False
            if bd.hi is not None and (v > bd.hi or (bd.open_hi and v == bd.hi)):
                return False
        return True


@dataclass(frozen=True)
class Feasible:
    witness: Tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    pass


INFEASIBLE = Infeasible()


@dataclass
class _Ineq:
    # sum(coef[i] * y[i]) <= rhs  (or < when strict)
    coef: list
    rhs: Fraction
    strict: bool = False


def _eliminate(ineqs, var):
    lower, upper, rest = [], [], []
    for q in ineqs:
        c = q.coef[var]
        if c > 0:
            upper.append(q)
        elif c < 0:
            lower.append(q)
        else:
            rest.append(q)
    out = list(rest)
    for lo in lower:
        for up in upper:
            a, b = up.coef[var], -lo.coef[var]
            coef = [b * u + a * l for u, l in zip(up.coef, lo.coef)]
            coef[var] = Fraction(0)
            out.append(_Ineq(coef, b * up.rhs + a * lo.rhs, lo.strict or up.strict))
    return out


def _pick(ineqs, var, values):
    """Choose a value for ``var`` satisfying every inequality once the
    variables already in ``values`` are substituted."""
    lo = hi = None
    lo_strict = hi_strict = False
    for q in ineqs:
        c = q.coef[var]
        if c == 0:
            continue
        rest = q.rhs - sum((q.coef[j] * v for j, v in values.items()), Fraction(0))
        bound = rest / c
        if c > 0:
            if hi is None or bound < hi or (bound == hi and q.strict):
                hi, hi_strict = bound, q.strict
        else:
            if lo is None or bound > lo or (bound == lo and q.strict):
                lo, lo_strict = bound, q.strict
    if lo is not None and hi is not None:
        return (lo + hi) / 2
    if lo is not None:
        return lo + 1 if lo_strict else lo
    if hi is not None:
        return hi - 1 if hi_strict else hi
    return Fraction(0)


def solve_feasibility(f: AffineFeasibility):
    """Decide ``f`` exactly: Gaussian elimination on the equalities, then
    Fourier-Motzkin on the remaining free variables against the bounds.

    Returns :class:`Feasible` with one exact witness, or ``INFEASIBLE``.
    """
    n = f.nvars
    if f.matrix:
        red = row_reduce(f.matrix, f.rhs)
        if red is None:
            return INFEASIBLE
        m, b, pivots = red
    else:
        m, b, pivots = [], [], []
    free = [j for j in range(n) if j not in pivots]
    nf = len(free)

    # x[pivot_i] = b_i - sum_f m[i][f] * y_f ; x[free_j] = y_j
    affine = {}
    for i, pc in enumerate(pivots):
        affine[pc] = ([-m[i][fc] for fc in free], b[i])
    for j, fc in enumerate(free):
        coef = [Fraction(0)] * nf
        coef[j] = Fraction(1)
        affine[fc] = (coef, Fraction(0))

    ineqs = []
    for var, bd in enumerate(f.bounds):
        coef, const = affine[var]
        if bd.hi is not None:
            ineqs.append(_Ineq(list(coef), bd.hi - const, bd.open_hi))
        if bd.lo is not None:
            ineqs.append(_Ineq([-c for c in coef], const - bd.lo, bd.open_lo))

    stages = [ineqs]
    for var in range(nf):
        stages.append(_eliminate(stages[-1], var))
    for q in stages[-1]:
        if q.rhs < 0 or (q.strict and q.rhs == 0):
            return INFEASIBLE

    values = {}
    for var in reversed(range(nf)):
        values[var] = _pick(stages[var], var, values)
    y = [values[j] for j in range(nf)]
    witness = tuple(
        const + sum((c * v for c, v in zip(coef, y)), Fraction(0))
        for coef, const in (affine[var] for var in range(n))
    )
    return Feasible(witness)
