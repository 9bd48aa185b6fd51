import io as _io
import json
import subprocess
import sys

import pytest

from crossed_leibniz import io
from crossed_leibniz.cli import run
from fixtures import CONTEXTS, DEFORMATIONS, algebra, formal
from test_acceptance import PINNED_N2

N2 = {"dim": 2, "basis": ["e1", "e2"], "brackets": [{"i": 1, "j": 1, "value": {"e2": "1"}}]}


@pytest.fixture
def files(tmp_path):
    def put(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)

    out = {
        "abelian": put("abelian.json", {"dim": 2, "brackets": []}),
        "bad_alg": put("bad.json", io.algebra_to_json(algebra("idempotent"))),
        "ctx": put("ctx.json", {"g": N2, "h": "g", "action": "regular"}),
        "minus_id": put("minus_id.json", {"matrix": [["-1", "0"], ["0", "-1"]]}),
        "id": put("id.json", {"matrix": [[1, 0], [0, 1]]}),
        "lie_ctx": put("lie.json", io.context_to_json(CONTEXTS["lie2_reg"])),
        "lie_H": put("lie_H.json", {"matrix": [[0, 0], [0, -1]]}),
        "lie_H1": put("lie_H1.json", {"matrix": [[0, 0], [1, 0]]}),
        "a1_ctx": put("a1.json", io.context_to_json(CONTEXTS["a1_n2_zero"])),
        "stuck": put("stuck.json", io.formal_map_to_json(formal(*DEFORMATIONS[0]))),
        "free": put("free.json", io.formal_map_to_json(formal(*DEFORMATIONS[1]))),
        "family": put("family.json", {"family": [[0, 1]]}),
        "garbage": str(tmp_path / "garbage.json"),
    }
    (tmp_path / "garbage.json").write_text("{oops")
    return out


def cli(*argv):
    out, err = _io.StringIO(), _io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    text = out.getvalue()
    return code, (json.loads(text) if text and not text.startswith(" ") and "--pretty" not in argv else text), err.getvalue()


def test_validate_algebra(files):
    code, out, _ = cli("validate", "--algebra", files["abelian"])
    assert code == 0 and out["ok"]
    code, out, _ = cli("validate", "--algebra", files["bad_alg"])
    assert code == 1 and out["first_failure"]["check"] == "leibniz"


def test_validate_context(files):
    code, out, _ = cli("validate", "--ctx", files["ctx"])
    assert code == 0 and out["leibniz_g_representation"]["ok"]


def test_crossed_check_pass_and_fail(files):
    code, out, _ = cli("crossed", "check", "--ctx", files["ctx"], "--map", files["minus_id"])
    assert code == 0 and out["audits"]["agree"]
    code, out, _ = cli("crossed", "check", "--ctx", files["ctx"], "--map", files["id"])
    assert code == 1
    ff = out["first_failure"]
    assert ff["basis"] == ["e1", "e1"] and ff["indices"] == [1, 1]
    assert out["audits"] == {"mc_residual_zero": False, "hat_iso": False,
                             "graph_embedding": False, "agree": True}


def test_mc_residual(files):
    code, out, _ = cli("mc", "residual", "--ctx", files["ctx"], "--map", files["id"])
    assert code == 1 and not out["zero"] and out["agree"]
    code, out, _ = cli("mc", "residual", "--ctx", files["lie_ctx"], "--map", files["lie_H1"],
                       "--base", files["lie_H"])
    assert out["agree"]


def test_semidirect(files):
    code, out, _ = cli("semidirect", "--ctx", files["ctx"], "--map", files["minus_id"])
    assert code == 0 and out["dim"] == 4
    code, _, _ = cli("semidirect", "--ctx", files["ctx"], "--map", files["id"])
    assert code == 1


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_cohomology_matches_pinned(files, k):
    code, out, _ = cli("cohomology", "--ctx", files["ctx"], "--map", files["minus_id"], "--degree", str(k))
    assert code == 0
    assert (out["dimC"], out["dimZ"], out["dimB"], out["dimH"]) == PINNED_N2[k]
    assert len(out["representatives"]) == out["dimH"]


def test_cohomology_degree_cap(files):
    code, _, err = cli("cohomology", "--ctx", files["ctx"], "--map", files["minus_id"], "--degree", "4")
    assert code == 2 and "cap exceeded" in err


def test_deform_commands(files):
    code, out, _ = cli("deform", "check-linear", "--ctx", files["lie_ctx"], "--map", files["lie_H"],
                       "--h1", files["lie_H1"])
    assert code == 0 and out["cocycle"]
    code, out, _ = cli("deform", "check-formal", "--ctx", files["a1_ctx"], "--deformation", files["stuck"])
    assert code == 0 and out["order"] == 1
    code, out, _ = cli("deform", "obstruction", "--ctx", files["a1_ctx"], "--deformation", files["stuck"])
    assert code == 1 and out["is_cocycle"] and not out["vanishes"]
    code, out, _ = cli("deform", "extend", "--ctx", files["a1_ctx"], "--deformation", files["stuck"])
    assert code == 1 and out == {"extensible": False, "order": 1}
    code, out, _ = cli("deform", "extend", "--ctx", files["a1_ctx"], "--deformation", files["free"])
    assert code == 0 and out["order"] == 2 and len(out["terms"]) == 3


def test_nijenhuis_and_rigidity(files):
    code, out, _ = cli("nijenhuis", "check", "--ctx", files["lie_ctx"], "--map", files["lie_H"], "--x", "0,1")
    assert code == 0 and out["H1"] == {"matrix": [["0", "0"], ["1", "0"]]}
    code, out, _ = cli("nijenhuis", "check", "--ctx", files["lie_ctx"], "--map", files["lie_H"], "--x=-1,-1")
    assert code == 1 and not out["ok"]
    code, out, _ = cli("rigidity", "certify", "--ctx", files["lie_ctx"], "--map", files["lie_H"],
                       "--family", files["family"])
    assert code == 1 and out["dimZ1"] == 3 and out["span_rank"] == 1


def test_input_errors_are_distinct(files):
    code, _, err = cli("validate", "--algebra", "/nonexistent.json")
    assert code == 2 and "cannot read" in err
    code, _, err = cli("validate", "--algebra", files["garbage"])
    assert code == 2 and "invalid JSON" in err
    code, _, err = cli("crossed", "check", "--ctx", files["ctx"], "--map", files["ctx"])
    assert code == 2 and err.startswith("input error")
    code, _, err = cli("validate", "--ctx", files["ctx"], "--max-dim", "3")
    assert code == 2 and "cap exceeded" in err
    assert cli("no-such-command")[0] == 2


def test_pretty_output(files):
    code, text, _ = cli("crossed", "check", "--ctx", files["ctx"], "--map", files["minus_id"], "--pretty")
    assert code == 0 and "ok: true" in text and not text.lstrip().startswith("{")


def test_byte_for_byte_determinism(files):
    argv = ["cohomology", "--ctx", files["ctx"], "--map", files["minus_id"], "--degree", "2"]
    runs = []
    for _ in range(2):
        buf = _io.StringIO()
        run(argv, stdout=buf, stderr=_io.StringIO())
        runs.append(buf.getvalue())
    assert runs[0] == runs[1]


def test_console_script(files):
    proc = subprocess.run([sys.executable, "-m", "crossed_leibniz.cli", "validate", "--algebra", files["abelian"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["ok"]
