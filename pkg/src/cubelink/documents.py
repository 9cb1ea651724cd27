"""JSON documents for chains, segment sets, verification reports and oracle outcomes.

Rationals are always written as strings (``"3/2"``, ``"-1"``), never floats.
Key order is fixed and no document carries timestamps or timings, so equal
inputs serialize to identical bytes.
"""

from __future__ import annotations

import json
from collections import Counter
from fractions import Fraction
from typing import Any, Dict, List, Union

from .construct import PERFECT, SHARED_APEX, STAR, PolyChain, SegmentSet, rebuild
from .exactq import Segment, format_rational, parse_rational
from .hypercube import node
from .oracle import OracleOutcome
from .verify import VerificationReport

FORMAT_VERSION = 1


class DocumentError(ValueError):
    """Malformed or inconsistent document."""


def _coords(p) -> List[str]:
    return [format_rational(x) for x in p]


def _parse_coord(x) -> Fraction:
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    raise DocumentError(f"coordinate {x!r} must be a rational string or an integer")


def _parse_point(raw, k: int):
    if not isinstance(raw, list) or len(raw) != k:
        raise DocumentError(f"expected a list of {k} coordinates, got {raw!r}")
    try:
        return tuple(_parse_coord(x) for x in raw)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def chain_document(chain: PolyChain) -> Dict[str, Any]:
    doc: Dict[str, Any] = {"format_version": FORMAT_VERSION, "k": chain.k, "closed": chain.closed}
    meta = chain.meta
    if meta is not None:
        doc["variant"] = meta.variant
        if meta.scale is not None:
            doc["scale"] = format_rational(meta.scale)
        if meta.heights is not None:
            doc["heights"] = [format_rational(h) for h in meta.heights]
    doc["vertices"] = [_coords(v) for v in chain.vertices]
    return doc


def star_document(tree: SegmentSet) -> Dict[str, Any]:
    return {
        "format_version": FORMAT_VERSION,
        "k": tree.k,
        "variant": STAR,
        "segments": [[_coords(s.a), _coords(s.b)] for s in tree.segments],
    }


def dumps(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False) + "\n"


def to_document(obj) -> Dict[str, Any]:
    if isinstance(obj, PolyChain):
        return chain_document(obj)
    if isinstance(obj, SegmentSet):
        return star_document(obj)
    if isinstance(obj, VerificationReport):
        return report_document(obj)
    if isinstance(obj, OracleOutcome):
        return outcome_document(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def serialize(obj) -> str:
    return dumps(to_document(obj))


def _require(doc, key, kind):
    if key not in doc:
        raise DocumentError(f"missing field {key!r}")
    val = doc[key]
    if not isinstance(val, kind) or (kind is int and isinstance(val, bool)):
        raise DocumentError(f"field {key!r} has the wrong type")
    return val


def parse_document(data: Union[str, bytes, Dict[str, Any]]) -> Union[PolyChain, SegmentSet]:
    """Inverse of :func:`serialize` for chains and star trees.

    A chain document naming a construction (``variant`` plus ``scale`` or
    ``heights``) gets its construction metadata back only when its vertices
    are exactly what the builder produces; otherwise it is a plain chain.
    """
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object")
    version = _require(data, "format_version", int)
    if version != FORMAT_VERSION:
        raise DocumentError(f"unsupported format_version {version}")
    k = _require(data, "k", int)
    if k < 2:
        raise DocumentError(f"k must be >= 2, got {k}")
    variant = data.get("variant")
    if variant == STAR:
        raw = _require(data, "segments", list)
        try:
            segs = tuple(Segment(_parse_point(a, k), _parse_point(b, k)) for a, b in raw)
        except (TypeError, ValueError) as exc:
            raise DocumentError(f"bad segment: {exc}") from None
        return SegmentSet(k, segs)

    closed = _require(data, "closed", bool)
    verts = tuple(_parse_point(v, k) for v in _require(data, "vertices", list))
    try:
        chain = PolyChain(k, verts, closed=closed)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    if variant is None:
        return chain
    if variant not in (SHARED_APEX, PERFECT):
        raise DocumentError(f"unknown variant {variant!r}")
    try:
        ref = _reference_chain(data, k, variant)
    except ValueError as exc:
        raise DocumentError(f"bad construction parameters: {exc}") from None
    meta = ref.meta if ref.vertices == chain.vertices and ref.closed == closed else None
    return PolyChain(k, verts, closed=closed, meta=meta)


def _reference_chain(data, k: int, variant: str) -> PolyChain:
    scale = data.get("scale")
    heights = data.get("heights")
    return rebuild(
        k,
        variant,
        scale=None if scale is None else parse_rational(scale),
        heights=None if heights is None else [parse_rational(h) for h in heights],
    )


def construction_notes(data: Dict[str, Any], chain: PolyChain) -> List[str]:
    """Differences between a document's vertices and the construction it names."""
    variant = data.get("variant")
    if variant not in (SHARED_APEX, PERFECT) or chain.meta is not None:
        return []
    try:
        ref = _reference_chain(data, chain.k, variant)
    except ValueError:
        return []
    notes = []
    if len(ref.vertices) != len(chain.vertices):
        notes.append(f"document has {len(chain.vertices)} vertices, construction has {len(ref.vertices)}")
    for i, (got, want) in enumerate(zip(chain.vertices, ref.vertices), start=1):
        if got != want:
            notes.append(
                f"vertex {i}: document ({','.join(_coords(got))}), "
                f"construction ({','.join(_coords(want))})"
            )
    return notes


def report_document(rep: VerificationReport, notes: List[str] = ()) -> Dict[str, Any]:
    node_hist = Counter(rep.node_link_multiplicity.values())
    vert_hist = Counter(rep.vertex_link_multiplicity.values())
    doc: Dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "kind": "verification",
        "k": rep.k,
        "mode": rep.mode,
        "link_length": rep.link_length,
        "lower_bound": 3 << (rep.k - 2),
        "covered": rep.covered,
        "uncovered": [[int(x) for x in node(rep.k, n)] for n in rep.uncovered],
        "node_link_multiplicity": {str(m): node_hist[m] for m in sorted(node_hist)},
        "nodes_on_several_links": [
            [[int(x) for x in node(rep.k, n)], m]
            for n, m in sorted(rep.node_link_multiplicity.items()) if m > 1
        ],
        "vertex_link_multiplicity": {str(m): vert_hist[m] for m in sorted(vert_hist)},
        "vertices_on_more_than_two_links": [
            [_coords(v), m] for v, m in rep.vertex_link_multiplicity.items() if m > 2
        ],
        "classification": rep.classification.label,
        "optimal": rep.optimal,
    }
    if notes:
        doc["notes"] = list(notes)
    return doc


def outcome_document(out: OracleOutcome, **extra) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "kind": "oracle",
        "k": out.k,
        "mode": out.mode,
        "holds": out.holds,
    }
    if out.mode == "exhaustive":
        doc["assignments"] = out.assignments
        doc["feasibility_calls"] = out.feasibility_calls
    else:
        doc["samples"] = out.samples
        doc["max_observed"] = out.max_observed
        doc["histogram"] = {str(n): c for n, c in out.histogram.items()}
    doc.update(extra)
    doc["counterexamples"] = [
        {
            "assignment": None if c.assignment is None else {
                "nodes": list(c.assignment.nodes),
                "pattern": list(c.assignment.pattern),
                "groups": [list(g) for g in c.assignment.groups],
            },
            "steiner": [_coords(p) for p in c.steiner],
            "replay_count": c.replay_count,
        }
        for c in out.counterexamples
    ]
    return doc
