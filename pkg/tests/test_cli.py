import json
import shutil
import subprocess
import sys


from skewbrace.cli import run
from skewbrace.fixtures import fixture_dir


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_zero(tmp_path, capsys):
    p = tmp_path / "zero.json"
    p.write_text('{"add": [[0]], "mul": [[0]]}')
    code, out, _ = call(capsys, "validate", str(p))
    assert code == 0 and json.loads(out)["valid"]


def test_validate_invalid(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"add": [[0, 1], [1, 0]], "mul": [[0, 1], [0, 1]]}')
    code, out, _ = call(capsys, "validate", str(p))
    assert code == 1 and not json.loads(out)["valid"]


def test_usage_errors(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text("{")
    assert call(capsys, "validate", str(p))[0] == 2
    assert call(capsys, "validate", str(tmp_path / "absent.json"))[0] == 2
    assert call(capsys, "frobnicate")[0] == 2
    assert call(capsys, "commutator", "b16")[0] == 2
    assert call(capsys, "series", "b16", "--kind", "b_lower")[0] == 2
    assert call(capsys, "ideals", "b16", "--kind", "normal")[0] == 2
    assert call(capsys, "subideal", "b16", "--set", "0,99")[0] == 2


def test_cocycle_input_and_canonical_emit(tmp_path, capsys):
    from skewbrace.fixtures import load_fixture

    p = tmp_path / "spec.json"
    p.write_text(json.dumps(load_fixture("b16").spec.to_dict()))
    code, out, _ = call(capsys, "validate", str(p), "--emit", "--canonical")
    assert code == 0
    first = json.loads(out)["brace"]
    code, out2, _ = call(capsys, "validate", str(p), "--emit", "--canonical")
    assert out == out2 and first["order"] == 16


def test_brace_json_input(tmp_path, capsys):
    from skewbrace.core import dump_brace
    from skewbrace.fixtures import fixture_brace

    p = tmp_path / "b.json"
    p.write_text(dump_brace(fixture_brace("b32a")))
    code, out, _ = call(capsys, "ideals", str(p))
    assert code == 0 and json.loads(out)["count"] == 6


def test_ideals_and_series(capsys):
    code, out, _ = call(capsys, "ideals", "b32b")
    d = json.loads(out)
    assert code == 0 and [m["order"] for m in d["members"]] == [1, 8, 16, 16, 16, 32]
    code, out, _ = call(capsys, "series", "b32c", "--kind", "derived")
    assert json.loads(out)["orders"] == [32, 16]
    code, out, _ = call(capsys, "series", "b16", "--kind", "b_upper", "--ideal", "I")
    assert code == 0 and json.loads(out)["verdict"]["b_centrally_nilpotent"]
    for kind in ("upper", "lower", "chief", "chief_last", "b_lower"):
        args = ["series", "b24", "--kind", kind]
        if kind.startswith("b_"):
            args += ["--ideal", "I"]
        assert call(capsys, *args)[0] == 0


def test_commutator(capsys):
    code, out, _ = call(capsys, "commutator", "b16", "--i", "I", "--j", "I", "--samples", "100", "--seed", "3")
    d = json.loads(out)
    assert code == 0
    assert d["routes_agree"] and len(d["via_generators"]) == 4 and len(d["star_span"]) == 2
    assert not d["plain_sum"]["is_ideal"] and d["sampler"]["escapes"] == []


def test_commutator_needs_ideals(capsys):
    code, out, _ = call(capsys, "commutator", "b32a", "--i", "S", "--j", "S")
    assert code == 1 and json.loads(out)["error"] == "NotAnIdeal"


def test_subideal_audit_ybe_analyze(capsys):
    code, out, _ = call(capsys, "subideal", "b24", "--set", "SocI")
    d = json.loads(out)
    assert code == 0 and d["closure_series"]["defect"] == 2 and d["index"]["common_index"] == 4
    code, out, _ = call(capsys, "subideal", "b32a", "--set", "2a1+2a2")
    assert not json.loads(out)["idealiser"]["exists"]
    code, out, _ = call(capsys, "audit", "b32c")
    d = json.loads(out)
    assert d["all_subideal"] and not d["soluble"]
    code, out, _ = call(capsys, "ybe", "b24")
    assert code == 0 and json.loads(out)["braid"]
    code, out, _ = call(capsys, "analyze", "b32b")
    d = json.loads(out)
    assert d["distinguished"]["centre"] == [0] and len(d["fitting"]) == 8


def test_numeric_set(capsys):
    code, out, _ = call(capsys, "subideal", "b16", "--set", "0")
    assert code == 0 and json.loads(out)["closure_series"]["defect"] == 1


def test_enumerate(capsys):
    code, out, _ = call(capsys, "enumerate", "4")
    d = json.loads(out)
    assert code == 0 and d["count"] == 4
    code, out, _ = call(capsys, "enumerate", "3", "--tables")
    assert json.loads(out)["braces"][0]["brace"]["order"] == 3
    code, out, _ = call(capsys, "enumerate", "40")
    assert code == 1


def test_json_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = call(capsys, "ybe", "b16", "--json", str(target))
    assert code == 0 and json.loads(target.read_text()) == json.loads(out)


def test_deterministic_output(capsys):
    a = call(capsys, "analyze", "b24")[1]
    b = call(capsys, "analyze", "b24")[1]
    assert a == b


def test_paper_verify_subset(tmp_path, capsys):
    report = tmp_path / "r.json"
    code, out, _ = call(capsys, "paper-verify", "--only", "b32b", "--samples", "50", "--json", str(report))
    assert code == 0 and "b32b.ideals" in out
    assert json.loads(report.read_text())["ok"]


def test_paper_verify_strict(capsys):
    code, out, _ = call(capsys, "paper-verify", "--only", "b16", "--samples", "50", "--strict")
    assert code == 1 and "b16.commutator_II_printed" in out


def test_paper_verify_corrupted_claim_names_it(tmp_path, capsys):
    shutil.copytree(fixture_dir(), tmp_path, dirs_exist_ok=True)
    rec = json.loads((tmp_path / "b16.json").read_text())
    claim = next(c for c in rec["claims"] if c["id"] == "b16.centrally_nilpotent")
    claim["expect"] = {"equals": 2}
    (tmp_path / "b16.json").write_text(json.dumps(rec))
    code, out, _ = call(capsys, "paper-verify", "--fixtures-dir", str(tmp_path), "--only", "b16", "--samples", "30")
    assert code == 1 and "first failure: b16.centrally_nilpotent" in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "skewbrace.cli", "enumerate", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["count"] == 1
