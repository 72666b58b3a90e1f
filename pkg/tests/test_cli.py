import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from weakhopf.cli import main
from weakhopf.gallery import GALLERY
from weakhopf.specfile import load

GOLDEN = Path(__file__).parent / "data" / "m2.json"


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def test_verify_golden_file():
    code, text = run("verify", GOLDEN, "M2")
    assert code == 0 and "all checks pass" in text


def test_verify_json_schema():
    code, text = run("verify", GOLDEN, "M2", "--format", "json")
    report = json.loads(text)
    assert code == 0 and set(report) == {"target", "checks", "derived"}
    assert report["derived"]["dims"] == {"H": 4}
    assert all(set(c) <= {"id", "pass", "witness", "note"} for c in report["checks"])


def test_corrupted_coefficient_fails_associativity(tmp_path):
    d = json.loads(GOLDEN.read_text(encoding="utf-8"))
    d["algebras"]["M2"]["mu"][1][3] = "2"  # e11·e12 = 2 e12
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(d), encoding="utf-8")
    code, text = run("verify", path, "M2", "--format", "json")
    assert code == 1
    checks = {c["id"]: c for c in json.loads(text)["checks"]}
    assoc = checks["associativity"]
    assert not assoc["pass"] and assoc["witness"]["labels"] == ["e11", "e11", "e12"]


def test_input_errors_exit_2(tmp_path, capsys):
    d = json.loads(GOLDEN.read_text(encoding="utf-8"))
    d["algebras"]["M2"]["basis"] = []
    path = tmp_path / "empty.json"
    path.write_text(json.dumps(d), encoding="utf-8")
    assert run("verify", path, "M2")[0] == 2
    assert "dimension must be positive" in capsys.readouterr().err
    assert run("verify", GOLDEN, "nope")[0] == 2
    assert run("verify", tmp_path / "missing.json", "M2")[0] == 2
    assert run("gallery", "quantum-torus", "2", "3")[0] == 2
    assert run("frobnicate")[0] == 2


def test_wreath_roundtrip(tmp_path):
    src, prod = tmp_path / "bun.json", tmp_path / "product.json"
    assert run("gallery", "blown-up-nothing", 2, "--emit", src)[0] == 0
    code, text = run("wreath", src, "blown-up-nothing-2", "--format", "json", "--emit", prod)
    assert code == 0
    payload = json.loads(text)
    assert payload["derived"]["dims"]["product"] == 4
    assert payload["derived"]["ranks"]["psi_phi"] == 4
    assert any(c["id"].startswith("consistency:") for c in payload["checks"])
    (name,) = payload["product"]["algebras"]
    assert run("verify", prod, name)[0] == 0


def test_wreath_of_twist_has_grouplike_basis(tmp_path):
    src = tmp_path / "twist.json"
    run("gallery", "twist-cyclic", "--emit", src)
    (law,) = load(src).laws
    code, text = run("wreath", src, law, "--format", "json")
    product = json.loads(text)["product"]
    (entry,) = product["algebras"].values()
    assert code == 0 and len(entry["basis"]) == 4
    assert entry["delta"] == [[i, i, i, "1"] for i in range(4)]


def test_wreath_of_double_emits_antipode(tmp_path):
    src, prod = tmp_path / "double.json", tmp_path / "dp.json"
    run("gallery", "double-cyclic", 2, "--emit", src)
    code, text = run("wreath", src, "double(kZ2)", "--antipode", "--emit", prod)
    assert code == 0 and "antipode:" in text
    spec = load(prod)
    (name,) = spec.algebras
    assert hasattr(spec.algebras[name], "antipode")
    assert run("verify", prod, name)[0] == 0


def test_wreath_refuses_fake_law(tmp_path):
    src = tmp_path / "bun.json"
    run("gallery", "blown-up-nothing", 2, "--emit", src)
    d = json.loads(src.read_text(encoding="utf-8"))
    d["laws"]["blown-up-nothing-2"]["psi"][0][-1] = "3"
    src.write_text(json.dumps(d), encoding="utf-8")
    assert run("verify", src, "blown-up-nothing-2")[0] == 1
    code, _ = run("wreath", src, "blown-up-nothing-2")
    assert code == 1


def test_gallery_stdout_matches_emit(tmp_path):
    path = tmp_path / "m3.json"
    run("gallery", "matrix", 3, "--emit", path)
    code, text = run("gallery", "matrix", 3)
    assert code == 0 and text == path.read_text(encoding="utf-8")
    assert run("verify", path, "M3")[0] == 0


def test_gallery_small_cases(tmp_path):
    path = tmp_path / "qt.json"
    run("gallery", "quantum-torus", 2, 2, "--emit", path)
    spec = load(path)
    (law,) = spec.laws.values()
    assert (law.A.dim, law.B.dim) == (2, 2)
    path = tmp_path / "b1.json"
    run("gallery", "blown-up-nothing", 1, "--emit", path)
    assert all(H.dim == 1 for H in load(path).algebras.values())


def test_gallery_field_option(tmp_path):
    path = tmp_path / "f5.json"
    assert run("gallery", "matrix", 2, "--field", "F5", "--emit", path)[0] == 0
    assert load(path).field.descriptor == {"field": "Fp", "p": 5}
    assert run("verify", path, "M2")[0] == 0


GALLERY_PARAMS = {
    "matrix": [2], "cyclic": [3], "symmetric": [3], "discrete": [2], "upper": [2], "twist-cyclic": [],
    "blown-up-nothing": [2], "double-cyclic": [2], "double-matrix": [2], "intro-kS": [], "intro-kSxZ2": [],
    "strictification": ["inversion"], "matched-pair-s3": [], "matched-pair-klein": [], "quantum-torus": [3, 3],
}


def test_params_cover_gallery():
    assert set(GALLERY_PARAMS) == set(GALLERY)


@pytest.mark.parametrize("name", sorted(GALLERY_PARAMS))
def test_every_gallery_export_reverifies(name, tmp_path):
    path = tmp_path / f"{name}.json"
    assert run("gallery", name, *GALLERY_PARAMS[name], "--emit", path)[0] == 0
    text = path.read_text(encoding="utf-8")
    spec = load(path)
    assert spec.dumps() == text
    for target in [*spec.algebras, *spec.laws]:
        assert run("verify", path, target)[0] == 0, target


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "weakhopf", "verify", str(GOLDEN), "M2"], capture_output=True, text=True)
    assert proc.returncode == 0 and "all checks pass" in proc.stdout
