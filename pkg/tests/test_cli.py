from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

from skewpbw import corpus
from skewpbw.cli import main

CORPUS_DIR = Path(__file__).resolve().parents[1] / "src" / "skewpbw" / "corpus"


def _run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_check_passes_on_quantum_plane(capsys):
    code, out = _run(capsys, "check", str(CORPUS_DIR / "quantum_plane.spbw"))
    assert code == 0
    doc = json.loads(out)
    assert doc["presentation_name"] == "quantum_plane"
    assert all(c["pass"] for c in doc["checks"])
    assert doc["data"]["shape"]["quasi_commutative"] is True
    assert doc["data"]["overlaps_failed"] == 0


def test_check_fails_on_inconsistent_control(capsys):
    code, out = _run(capsys, "check", str(CORPUS_DIR / "inconsistent_control.spbw"))
    assert code == 2
    doc = json.loads(out)
    assert doc["data"]["overlaps_failed"] == 1
    assert doc["data"]["discrepancies"] == {"(z, y, x)": "-x"}


def test_nf_weyl_expression(capsys):
    code, out = _run(capsys, "nf", str(CORPUS_DIR / "weyl_a1.spbw"), "x*t*t")
    assert code == 0
    doc = json.loads(out)
    assert doc["data"]["normal_form"] == "t^2*x + 2*t"
    assert doc["data"]["degree"] == 1


def test_mul_quantum_plane(capsys):
    code, out = _run(capsys, "mul", str(CORPUS_DIR / "quantum_plane.spbw"), "y", "x")
    assert code == 0
    doc = json.loads(out)
    assert doc["data"]["product"] == "q*x*y"


def test_gr_text_roundtrip(capsys, tmp_path):
    code, out = _run(capsys, "gr", str(CORPUS_DIR / "weyl_a1.spbw"), "--text")
    assert code == 0
    assert out == "base t;\nvars x;\n"
    # the emitted text re-parses and re-validates cleanly
    regurgitated = tmp_path / "gr_weyl.spbw"
    regurgitated.write_text(out, encoding="utf-8")
    code2, out2 = _run(capsys, "check", str(regurgitated))
    assert code2 == 0


def test_ore_document(capsys):
    code, out = _run(capsys, "ore", str(CORPUS_DIR / "quantum_plane.spbw"))
    assert code == 0
    doc = json.loads(out)
    assert doc["data"]["stages"][1]["multipliers"] == {"x": "q"}


def test_ore_rejects_weyl_with_failing_check(capsys):
    code, out = _run(capsys, "ore", str(CORPUS_DIR / "weyl_a1.spbw"))
    assert code == 2
    doc = json.loads(out)
    assert doc["checks"][0]["name"] == "quasi_commutative"
    assert doc["checks"][0]["pass"] is False


def test_report_shift_algebra_flags_cm(capsys):
    code, out = _run(capsys, "report", str(CORPUS_DIR / "shift_sh.spbw"))
    assert code == 2  # the CM hypothesis fails, so the document has a failing check
    doc = json.loads(out)
    assert doc["data"]["properties"]["cohen_macaulay"]["applies"] == "hypotheses_not_met"
    assert doc["data"]["properties"]["noetherian"]["applies"] == "yes"
    assert doc["data"]["gkdim"]["value"] == 2


def test_hilbert_document(capsys):
    code, out = _run(capsys, "hilbert", str(CORPUS_DIR / "sklyanin_c0.spbw"), "--max-degree", "3")
    assert code == 0
    doc = json.loads(out)
    dims = [entry["dim"] for entry in doc["data"]["dims"]]
    assert dims == [1, 3, 6, 10]


def test_points_symbolic(capsys):
    code, out = _run(capsys, "points", str(CORPUS_DIR / "sklyanin_c0.spbw"), "--symbolic")
    assert code == 0
    doc = json.loads(out)
    assert doc["data"]["locus"]["kind"] == "minors"
    assert doc["data"]["locus"]["polynomials"] == ["-(a^3 + b^3)/(a^2*b)*u_x*u_y*u_z"]


def test_points_chain(capsys):
    code, out = _run(
        capsys,
        "points",
        str(CORPUS_DIR / "quantum_plane.spbw"),
        "--start",
        "[1:1]",
        "--depth",
        "4",
    )
    assert code == 0
    doc = json.loads(out)
    chain = doc["data"]["chain"]
    assert chain["status"] == "extends_uniquely"
    assert len(chain["points"]) == 5
    assert chain["points"][0] == ["1", "1"]


def test_specialization_flag(capsys):
    code, out = _run(
        capsys, "points", str(CORPUS_DIR / "quantum_plane.spbw"),
        "--set", "q=2", "--start", "[1:1]", "--depth", "2",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["data"]["chain"]["points"] == [["1", "1"], ["1", "1/2"], ["1", "1/4"]]


def test_parse_error_exits_one(capsys, tmp_path):
    bad = tmp_path / "bad.spbw"
    bad.write_text("vars x, y;\nrel y*x = w*x*y;\n", encoding="utf-8")
    code = main(["check", str(bad)])
    captured = capsys.readouterr()
    assert code == 1
    assert "error:" in captured.err


def test_determinism_byte_for_byte(capsys):
    _, first = _run(capsys, "check", str(CORPUS_DIR / "diffusion_2.spbw"))
    _, second = _run(capsys, "check", str(CORPUS_DIR / "diffusion_2.spbw"))
    assert first == second


def test_output_flag_writes_file(capsys, tmp_path):
    out_path = tmp_path / "doc.json"
    code = main(["check", str(CORPUS_DIR / "quantum_plane.spbw"), "--output", str(out_path)])
    capsys.readouterr()
    assert code == 0
    doc = json.loads(out_path.read_text(encoding="utf-8"))
    assert doc["presentation_name"] == "quantum_plane"


def test_module_entry_point_smoke():
    result = subprocess.run(
        [sys.executable, "-m", "skewpbw", "nf", str(CORPUS_DIR / "weyl_a1.spbw"), "x*t*t"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["data"]["normal_form"] == "t^2*x + 2*t"
