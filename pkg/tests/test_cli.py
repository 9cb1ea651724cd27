import json
import random
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubelink.cli import main
from cubelink.construct import PerfectParams, PolyChain, build_perfect_cycle, build_shared_apex_cycle, build_star_tree
from cubelink.documents import DocumentError, parse_document, serialize
from cubelink.render import to_csv, to_svg

from figures import FIGURE_3, FIGURE_4, chain, vertices

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def doc_vertices(doc):
    return tuple(tuple(F(x) for x in v) for v in doc["vertices"])


# --- generate ------------------------------------------------------------------

def test_generate_shared_apex_figure3(tmp_path, capsys):
    out = tmp_path / "c4.json"
    code, _, _ = run(capsys, "generate", "--k", 4, "--variant", "shared-apex", "--out", out)
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["variant"] == "shared-apex" and doc["scale"] == "3"
    assert len(doc["vertices"]) == 13
    assert doc_vertices(doc) == vertices(FIGURE_3)
    assert list(doc)[:3] == ["format_version", "k", "closed"]


def test_generate_perfect_figure4(capsys):
    code, out, _ = run(capsys, "generate", "--k", 3, "--variant", "perfect", "--heights", "2,5/2")
    assert code == 0
    doc = json.loads(out)
    assert doc["heights"] == ["2", "5/2"]
    assert doc_vertices(doc) == vertices(FIGURE_4)


def test_generate_star(capsys):
    code, out, _ = run(capsys, "generate", "--k", 2, "--variant", "star")
    assert code == 0
    doc = json.loads(out)
    assert doc["variant"] == "star" and len(doc["segments"]) == 2


@pytest.mark.parametrize("argv", [
    ["generate", "--k", "3", "--variant", "perfect", "--scale", "2"],
    ["generate", "--k", "3", "--variant", "shared-apex", "--heights", "2,3"],
    ["generate", "--k", "3", "--variant", "shared-apex", "--scale", "1"],
    ["generate", "--k", "3", "--variant", "perfect", "--heights", "2,2"],
    ["generate", "--k", "3", "--variant", "perfect", "--heights", "2"],
    ["generate", "--k", "3", "--scale", "x"],
    ["generate", "--k", "1"],
    ["generate"],
    ["frobnicate"],
])
def test_generate_usage_errors(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


# --- verify --------------------------------------------------------------------

def generate(tmp_path, capsys, *args):
    path = tmp_path / "chain.json"
    assert run(capsys, "generate", *args, "--out", path)[0] == 0
    return path


def test_verify_figure3(tmp_path, capsys):
    path = generate(tmp_path, capsys, "--k", 4)
    code, out, _ = run(capsys, "verify", path)
    rep = json.loads(out)
    assert code == 0
    assert rep["classification"] == "covering_cycle" and rep["optimal"] is True
    assert rep["covered"] == 16 and rep["uncovered"] == []
    assert "notes" not in rep


def test_verify_accepts_in_flag_and_fast_mode(tmp_path, capsys):
    path = generate(tmp_path, capsys, "--k", 5, "--variant", "perfect")
    code, out, _ = run(capsys, "verify", "--in", path, "--mode", "fast")
    rep = json.loads(out)
    assert code == 0 and rep["mode"] == "fast"
    assert rep["classification"] == "perfect_covering_cycle"


def test_verify_printed_figure5(capsys):
    code, out, _ = run(capsys, "verify", FIXTURES / "figure5_printed.json")
    rep = json.loads(out)
    assert code == 1
    assert rep["classification"] == "not_covering" and rep["optimal"] is False
    assert {(0, 0, 1, 0), (1, 1, 0, 0)} <= {tuple(n) for n in rep["uncovered"]}
    # the printed vertex also throws the following link off V4 = (1,1,0,1)
    assert {tuple(n) for n in rep["uncovered"]} == {(0, 0, 1, 0), (1, 1, 0, 0), (1, 1, 0, 1)}
    assert rep["notes"] == ["vertex 6: document (4/3,-1/3,-1/3,0), construction (4/3,4/3,-1/3,0)"]


def test_verify_corrected_figure5(capsys):
    code, out, _ = run(capsys, "verify", FIXTURES / "figure5_corrected.json")
    rep = json.loads(out)
    assert code == 0 and rep["classification"] == "perfect_covering_cycle"
    assert "notes" not in rep


def test_verify_truncated(tmp_path, capsys):
    doc = json.loads(serialize(build_shared_apex_cycle(4)))
    doc["vertices"] = doc["vertices"][:-1]
    doc["closed"] = False
    path = tmp_path / "cut.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", path)
    rep = json.loads(out)
    assert code == 1 and rep["classification"] == "not_covering"
    assert rep["notes"][0] == "document has 12 vertices, construction has 13"


def test_verify_non_optimal_covering_is_negative(tmp_path, capsys):
    # a covering cycle with a spare link still exits 1: not optimal
    vs = list(build_shared_apex_cycle(2).vertices)
    vs.insert(1, (F(1, 2), F(3)))
    path = tmp_path / "long.json"
    path.write_text(serialize(PolyChain(2, tuple(vs), closed=True)))
    code, out, _ = run(capsys, "verify", path)
    assert code == 1 and json.loads(out)["optimal"] is False


@pytest.mark.parametrize("content", [
    "not json",
    "[]",
    '{"format_version": 2, "k": 2, "closed": false, "vertices": [["0","0"],["1","1"]]}',
    '{"format_version": 1, "k": 3, "closed": false, "vertices": [["0","0"],["1","1"]]}',
    '{"format_version": 1, "k": 2, "closed": false, "vertices": [["0","0"],["0.5","1"]]}',
    '{"format_version": 1, "k": 2, "closed": true, "vertices": [["0","0"],["1","1"]]}',
    '{"format_version": 1, "k": 2, "vertices": [["0","0"],["1","1"]]}',
    '{"format_version": 1, "k": 2, "closed": false, "variant": "spiral", "vertices": [["0","0"],["1","1"]]}',
])
def test_verify_parse_errors(tmp_path, capsys, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    assert run(capsys, "verify", path)[0] == 2


def test_verify_missing_file_and_star(tmp_path, capsys):
    assert run(capsys, "verify", tmp_path / "nope.json")[0] == 2
    assert run(capsys, "verify")[0] == 2
    star = tmp_path / "star.json"
    star.write_text(serialize(build_star_tree(3)))
    assert run(capsys, "verify", star)[0] == 2


def test_verify_large_k_needs_explicit_mode(tmp_path, capsys):
    path = generate(tmp_path, capsys, "--k", 11)
    code, _, err = run(capsys, "verify", path)
    assert code == 2 and "--mode fast" in err
    assert run(capsys, "verify", path, "--mode", "fast")[0] == 0


# --- oracle --------------------------------------------------------------------

def test_oracle_exhaustive_k3(capsys):
    code, out, _ = run(capsys, "oracle", "--k", 3, "--mode", "exhaustive")
    doc = json.loads(out)
    assert code == 0
    assert doc["holds"] is True and doc["assignments"] == 5040 and doc["counterexamples"] == []
    assert "elapsed" not in doc


def test_oracle_random(capsys):
    code, out, _ = run(capsys, "oracle", "--k", 3, "--mode", "random", "--samples", 3000, "--seed", 7)
    doc = json.loads(out)
    assert code == 0 and doc["holds"] and doc["max_observed"] == 4
    again = run(capsys, "oracle", "--k", 3, "--mode", "random", "--samples", 3000, "--seed", 7)[1]
    assert again == out


@pytest.mark.parametrize("argv", [
    ["oracle", "--k", "9"],
    ["oracle", "--k", "2"],
    ["oracle", "--k", "3", "--mode", "random", "--samples", "0"],
])
def test_oracle_refusals(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_oracle_cost_message(capsys):
    _, _, err = run(capsys, "oracle", "--k", "9", "--mode", "exhaustive")
    assert "assignments" in err


# --- export --------------------------------------------------------------------

def test_export_figure1_svg(tmp_path, capsys):
    path = generate(tmp_path, capsys, "--k", 2)
    code, svg, _ = run(capsys, "export", path, "--format", "svg", "--proj", "0,1")
    assert code == 0
    assert svg.count("<circle") == 4
    assert svg.count("<polyline") == 1
    pts = svg.split('<polyline points="')[1].split('"')[0].split()
    assert len(pts) == 4 and pts[0] == pts[-1]
    assert run(capsys, "export", path, "--format", "svg", "--proj", "0,1")[1] == svg


def test_export_figure3_projection_shows_apex(tmp_path, capsys):
    path = generate(tmp_path, capsys, "--k", 4)
    svg = run(capsys, "export", path, "--proj", "0,3")[1]
    ys = {p.split(",")[1] for p in svg.split('<polyline points="')[1].split('"')[0].split()}
    # canvas spans x4 in [-1/2, 2]; the apex (x4 = 3/2) sits 180 px above the x4 = 0 layer
    assert ys == {"60.00", "240.00"}


def test_export_csv(tmp_path, capsys):
    path = generate(tmp_path, capsys, "--k", 3, "--variant", "perfect")
    code, csv_text, _ = run(capsys, "export", "--in", path, "--format", "csv")
    lines = csv_text.strip().splitlines()
    assert code == 0
    assert lines[0] == "index,x1,x2,x3"
    assert len(lines) - 1 == 7
    assert lines[1] == "0,1/2,1/2,3/2"  # default first height is 3/2


@pytest.mark.parametrize("proj", ["0,0", "0,4", "-1,1", "1", "a,b"])
def test_export_bad_projection(tmp_path, capsys, proj):
    path = generate(tmp_path, capsys, "--k", 4)
    assert run(capsys, "export", path, "--proj", proj)[0] == 2


def test_export_needs_input(capsys):
    assert run(capsys, "export")[0] == 2


def test_star_exports():
    tree = build_star_tree(3)
    svg = to_svg(tree)
    assert svg.count("<polyline") == 4
    assert to_csv(tree).count("\n") == 1 + 8


# --- documents -----------------------------------------------------------------

def test_canonical_text():
    c = PolyChain(2, ((F(6, 4), F(-2, 1)), (F(0), F(1, 3))))
    assert serialize(c) == ('{"format_version":1,"k":2,"closed":false,'
                            '"vertices":[["3/2","-2"],["0","1/3"]]}\n')


def test_builder_documents_keep_metadata():
    for c in (build_shared_apex_cycle(3, F(5, 2)), build_perfect_cycle(4, PerfectParams((2, 3, 4, 5)))):
        back = parse_document(serialize(c))
        assert back == c and back.meta == c.meta
    tree = build_star_tree(4)
    assert parse_document(serialize(tree)) == tree


def test_edited_document_loses_metadata():
    doc = json.loads(serialize(build_shared_apex_cycle(2)))
    doc["vertices"][1] = ["-2", "0"]
    assert parse_document(doc).meta is None


def test_integer_coordinates_accepted_bools_rejected():
    ok = {"format_version": 1, "k": 2, "closed": False, "vertices": [[0, 0], ["1", 1]]}
    assert parse_document(ok).vertices == ((0, 0), (1, 1))
    bad = {"format_version": 1, "k": 2, "closed": False, "vertices": [[True, 0], [1, 1]]}
    with pytest.raises(DocumentError):
        parse_document(bad)


def random_document_chain(rng):
    k = rng.randint(2, 6)
    n = rng.randint(2, 8)
    coord = lambda: F(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
    vs = [tuple(coord() for _ in range(k)) for _ in range(n)]
    closed = rng.random() < 0.5
    if closed:
        vs.append(vs[0])
    return PolyChain(k, tuple(vs), closed=closed)


def test_thousand_random_roundtrips():
    rng = random.Random(2024)
    for _ in range(1000):
        c = random_document_chain(rng)
        text = serialize(c)
        back = parse_document(text)
        assert back == c
        assert serialize(back) == text


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.fractions(max_denominator=1000), st.fractions(max_denominator=1000)),
                min_size=2, max_size=6))
def test_roundtrip_property(pts):
    if any(a == b for a, b in zip(pts, pts[1:])):
        return
    c = PolyChain(2, tuple(pts))
    assert parse_document(serialize(c)) == c


def test_svg_csv_byte_stable():
    for c in (chain(FIGURE_3), build_perfect_cycle(5), build_star_tree(4)):
        assert to_svg(c) == to_svg(c)
        assert to_csv(c) == to_csv(c)
