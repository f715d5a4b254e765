"""CLI behavior: parsing, exit codes, determinism, export round-trip."""

import json
import os

import pytest

from tannaka.cli import main, run
from tannaka.errors import ParseError
from tannaka.model import parse_model

MODELS = os.path.join(os.path.dirname(__file__), "..", "demos", "models")


def model(name):
    return os.path.join(MODELS, name)


def report_of(tmp_path, *argv):
    path = tmp_path / "report.json"
    code = main([*argv, "--report", str(path)])
    data = json.loads(path.read_text()) if path.exists() else None
    return code, data


def test_parse_comatrix_model():
    doc = parse_model(model("comatrix_f5.json"))
    assert doc.category is not None
    assert doc.functor is not None
    assert doc.category.rank("*", "*") == 1


def test_parse_error_dimension():
    with pytest.raises(ParseError) as err:
        parse_model(model("bad_shape.json"))
    assert "delta" in str(err.value)


def test_parse_error_modulus():
    with pytest.raises(ParseError) as err:
        parse_model(model("bad_ring.json"))
    assert "modulus" in str(err.value)


def test_reconstruct_comatrix_exit0(tmp_path):
    code, data = report_of(tmp_path, "reconstruct", model("comatrix_f5.json"))
    assert code == 0
    coend_check = next(c for c in data["checks"] if c["id"] == "coend")
    assert coend_check["data"]["carrier_rank"] == 4
    assert data["overall"] == "pass"


def test_check_broken_pentagon_exit1(tmp_path):
    code, data = report_of(tmp_path, "check", model("broken_pentagon_f5.json"))
    assert code == 1
    fails = [c for c in data["checks"] if c["verdict"] == "fail"]
    assert fails
    cited = {w["check"] for c in fails for w in c["witnesses"]}
    assert "pentagon" in cited or "triangle" in cited


def test_parse_error_exit2():
    assert main(["check", model("bad_shape.json")]) == 2
    assert main(["check", model("bad_ring.json")]) == 2
    assert main(["check", model("no_such_file.json")]) == 2


def test_unsupported_exit3(tmp_path):
    p = tmp_path / "only_ring.json"
    p.write_text('{"ring": {"kind": "PrimeField", "p": 3}}')
    assert main(["check", str(p)]) == 3
    assert main(["fl", model("fl_p2_n1.json"), "--p", "3"]) == 3


def test_counit_exits(tmp_path):
    code, data = report_of(tmp_path, "counit", model("grouplike_counit_f3.json"))
    assert code == 0
    assert data["checks"][0]["data"]["verdict"] == "iso"
    code, data = report_of(tmp_path, "counit", model("grouplike_counit_one_line_f3.json"))
    assert code == 1
    assert data["checks"][0]["data"]["verdict"] == "not_epi"
    assert data["checks"][0]["witnesses"]


def test_recognize_biproduct(tmp_path):
    code, data = report_of(tmp_path, "recognize", model("biproduct_f2.json"))
    assert code == 0
    verdicts = {c["id"]: c["verdict"] for c in data["checks"]}
    assert verdicts["condition-i"] == "pass"
    assert verdicts["condition-ii"] == "pass"
    assert verdicts["condition-iii"] == "unverified"


def test_fl_command(tmp_path):
    code, data = report_of(tmp_path, "fl", model("fl_p2_n1.json"), "--p", "2", "--n", "1")
    assert code == 0
    recon = next(c for c in data["checks"] if c["id"] == "fl-reconstruction")
    assert recon["data"]["carrier_rank"] == 2
    free = next(c for c in data["checks"] if c["id"] == "fl-carrier-free-both-sides")
    assert free["verdict"] == "pass"


def test_basechange_command(tmp_path):
    code, data = report_of(tmp_path, "basechange", model("comatrix_z4_basechange.json"))
    assert code == 0
    compat = next(c for c in data["checks"] if c["id"] == "base-change-compatibility")
    assert compat["verdict"] == "pass"


def test_determinism(tmp_path):
    strips = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        main(["reconstruct", model("c2_hopf_f3.json"), "--report", str(path)])
        data = json.loads(path.read_text())
        data.pop("timing_ms")
        strips.append(json.dumps(data, sort_keys=True))
    assert strips[0] == strips[1]


def test_export_roundtrip(tmp_path):
    out = tmp_path / "exported.json"
    code = main(["reconstruct", model("c2_hopf_f3.json"), "--export", str(out),
                 "--report", str(tmp_path / "r.json")])
    assert code == 0
    code, data = report_of(tmp_path, "check", str(out))
    assert code == 0
    ids = {c["id"] for c in data["checks"]}
    assert "coalgebroid-axioms" in ids
    assert "bialgebroid-axioms" in ids
    assert data["overall"] == "pass"


def test_fl_export_roundtrip(tmp_path):
    out = tmp_path / "fl_cat.json"
    code = main(["fl", model("fl_p2_n1.json"), "--export", str(out),
                 "--report", str(tmp_path / "r.json")])
    assert code == 0
    code, data = report_of(tmp_path, "check", str(out))
    assert code == 0
    assert data["overall"] == "pass"


def test_run_api_unknown_command():
    doc = parse_model(model("comatrix_f5.json"))
    from tannaka.errors import UnsupportedError

    with pytest.raises(UnsupportedError):
        run("frobnicate", doc)
