import io as _io
import json

import pytest

from conftest import REEB_CP2_TWO
from toricres import io
from toricres.cli import main


def call(*argv):
    out, err = _io.StringIO(), _io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--json")
    return code, json.loads(out) if out.strip() else None, err


def test_analyze_two_points():
    code, doc, _ = call_json("analyze", "examples/cp2_two_points.json")
    assert code == 0
    assert [io.decode(x) for x in doc["gorenstein"]["gamma"]] == [0, 0, -1]
    assert doc["slice"]["interior_count"] == 1


def test_analyze_conifold_human():
    code, out, _ = call("analyze", "conifold")
    assert code == 0
    assert "interior" in out


def test_analyze_garbage(tmp_path):
    bad = tmp_path / "garbage.json"
    bad.write_text("{not json")
    assert call("analyze", str(bad))[0] == 2
    bad.write_text(json.dumps({"dim": 3, "rays": [[1, 0]], "cones": [[0]]}))
    assert call("analyze", str(bad))[0] == 2
    assert call("analyze", str(tmp_path / "missing.json"))[0] == 2


def test_analyze_invalid_fan(tmp_path):
    f = tmp_path / "overlap.json"
    f.write_text(json.dumps({"dim": 2, "rays": [[1, 0], [0, 1], [1, 2]], "cones": [[0, 1], [0, 2]]}))
    assert call("analyze", str(f))[0] == 3


def test_resolve_counts():
    code, doc, _ = call_json("resolve", "ypq_5_3")
    assert code == 0 and len(doc["simplices"]) == 10
    assert all(c["passed"] for c in doc["checks"].values())
    code, doc, _ = call_json("resolve", "conifold")
    assert code == 0 and len(doc["simplices"]) == 2
    assert doc["note"] == "no interior points"


def test_resolve_flop_conifold():
    _, before, _ = call_json("resolve", "conifold")
    code, after, _ = call_json("resolve", "conifold", "--flop", "0")
    assert code == 0 and after["flops"] == [0]

    def diagonal(doc):
        a, b = [set(s) for s in doc["simplices"]]
        return a & b
    assert diagonal(before) != diagonal(after)
    assert diagonal(before) | diagonal(after) == {0, 1, 2, 3}


def test_resolve_bad_flop():
    assert call("resolve", "conifold", "--flop", "7")[0] == 2


def test_resolve_unsupported_dimension():
    assert call("resolve", "canonical_cp1")[0] == 0
    code, _, err = call("render", "canonical_cp1")
    assert code == 4 and err


def test_support():
    code, doc, _ = call_json("support", "examples/conifold.json")
    assert code == 5
    assert "interior lattice points" in doc["message"]
    code, doc, _ = call_json("support", "canonical_cp2")
    assert code == 0
    assert all(c["passed"] for c in doc["checks"].values())


def test_reeb():
    code, doc, _ = call_json("reeb", "examples/cp2_two_points.json")
    assert code == 0
    assert abs(doc["xi"][0] - REEB_CP2_TWO) <= 1e-6
    assert doc["xi"][0] == doc["xi"][1] and doc["xi"][2] == 3


def test_verify():
    code, doc, _ = call_json("verify", "examples/ypq_2_1.json", "--samples", "100")
    assert code == 0 and doc["passed"]
    assert all(c["passed"] for c in doc["checks"].values())
    assert "resolved_hessian_positive_definite" in doc["checks"]
    assert doc["checks"]["reeb_identity"]["value"] < 1e-9


def test_verify_conifold_skips_resolved():
    code, doc, _ = call_json("verify", "conifold", "--samples", "10")
    assert code == 0
    assert doc["resolved"].startswith("skipped")


def test_render(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert call("render", "cp2_two_points", "--out", str(a))[0] == 0
    assert call("render", "cp2_two_points", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    svg = a.read_text()
    assert svg.count('fill="#d03020"') == 1
    _, out, _ = call("render", "ypq_5_3")
    assert out.startswith("<?xml")
    assert out.count("<polygon") == 1


def test_example_outputs(tmp_path):
    code, doc, _ = call_json("example", "ypq", "--p", "2", "--q", "1")
    assert code == 0
    assert doc["rays"] == [[0, 0, 1], [1, 0, 1], [2, 2, 1], [0, 1, 1]]
    code, doc, _ = call_json("example", "affine-space", "--n", "3")
    assert sorted(doc["rays"]) == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    target = tmp_path / "conifold.json"
    assert call("example", "conifold", "--out", str(target))[0] == 0
    code, doc, _ = call_json("analyze", str(target))
    assert doc["slice"]["interior_count"] == 0
    assert call("example", "nonsense")[0] == 2
    assert call("example", "ypq", "--p", "2", "--q", "2")[0] == 2


def test_result_round_trip(tmp_path):
    code, doc, _ = call_json("support", "canonical_cp2")
    path = tmp_path / "result.json"
    io.write_result(io.decode(doc), path)
    back = io.read_result(path)
    assert back == io.decode(doc)
    assert "1/3" in path.read_text()


@pytest.mark.parametrize("name", io.bundled_names())
def test_full_pipeline(name):
    fan = io.load_bundled(name)
    assert call("analyze", name)[0] == 0
    if fan.dim != 3:
        return
    assert call("resolve", name)[0] == 0
    code = call("support", name)[0]
    if name == "conifold":
        assert code == 5
        return
    assert code == 0
    assert call("reeb", name)[0] == 0
    assert call("verify", name, "--samples", "20")[0] == 0


def test_determinism():
    for cmd in (("resolve", "ypq_5_3", "--json"), ("render", "ypq_5_3"), ("reeb", "ypq_2_1", "--json")):
        assert call(*cmd)[1] == call(*cmd)[1]
