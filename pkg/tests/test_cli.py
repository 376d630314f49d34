from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from conftest import loop_sphere
from twistcode.cli import main
from twistcode.rotation_system import rotation_system_to_dict

GOLDEN = Path(__file__).resolve().parent.parent / "golden" / "cyclic2.json"


def run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, dict]:
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.fixture
def torus33(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> Path:
    path = tmp_path / "t33.json"
    assert main(["family", "toric", "--m", "3", "--n", "3", "--out", str(path)]) == 0
    capsys.readouterr()
    return path


@pytest.fixture
def loop_file(tmp_path: Path) -> Path:
    path = tmp_path / "loop.json"
    path.write_text(json.dumps(rotation_system_to_dict(loop_sphere())))
    return path


def test_inspect_torus(capsys: pytest.CaptureFixture[str], torus33: Path) -> None:
    code, d = run_json(capsys, "inspect", str(torus33))
    assert code == 0
    assert (d["V"], d["E"], d["F"], d["genus"], d["M"]) == (9, 18, 9, 1, 0)
    assert d["checkerboardable"] is False and d["defect"]


def test_inspect_loop(capsys: pytest.CaptureFixture[str], loop_file: Path) -> None:
    code, d = run_json(capsys, "inspect", str(loop_file))
    assert code == 0 and d["genus"] == 0


def test_malformed_input(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["inspect", str(bad)]) == 2
    bad.write_text(json.dumps({"flag_count": 4, "lambda": [0, 1, 2, 3], "rho": [1, 0, 3, 2], "tau": [2, 3, 0, 1]}))
    assert main(["inspect", str(bad)]) == 2
    assert main(["inspect", str(tmp_path / "missing.json")]) == 2
    assert main(["family", "toric", "--m", "1", "--n", "3"]) == 2
    assert main(["nonsense"]) == 2
    capsys.readouterr()


def test_family_outputs(capsys: pytest.CaptureFixture[str]) -> None:
    code, d = run_json(capsys, "family", "cyclic-toric", "--a", "1", "--b", "2")
    assert code == 0 and (d["n"], d["k"]) == (5, 1) and len(d["stabilizers"]) == 5
    code, d = run_json(capsys, "family", "cyclic-toric", "--a", "1", "--b", "2", "--shifts")
    assert code == 0 and "ZXIXZ" in d["stabilizers"]
    code, d = run_json(capsys, "family", "stellated", "--s", "3", "--t", "2")
    assert (d["n"], d["k"]) == (13, 2)
    code, d = run_json(capsys, "family", "rotated-toric", "--l1", "2,2", "--l2", "-2,2")
    assert (d["n"], d["k"]) == (8, 2)
    code, d = run_json(capsys, "family", "cyclic2", "--s", "1", "--t", "1")
    assert (d["n"], d["k"]) == (6, 2)
    code, d = run_json(capsys, "family", "cyclic4", "--N", "6", "--p", "2", "--q", "4", "--r", "1")
    assert (d["n"], d["k"]) == (6, 2)
    code, d = run_json(capsys, "family", "rotated-surface", "--d", "3")
    assert (d["n"], d["k"]) == (9, 1)


def test_build_roundtrip(capsys: pytest.CaptureFixture[str], torus33: Path, tmp_path: Path) -> None:
    out = tmp_path / "code.json"
    code, d = run_json(capsys, "build", str(torus33), "--out", str(out))
    assert code == 0 and (d["n"], d["k"]) == (9, 1)
    assert json.loads(out.read_text()) == d
    code, again = run_json(capsys, "inspect", str(out))
    assert code == 0 and again["V"] == 9


def test_build_bad_cals(capsys: pytest.CaptureFixture[str], torus33: Path, tmp_path: Path) -> None:
    cals = tmp_path / "cals.json"
    cals.write_text(json.dumps({"0": ["X", "X", "Z", "Z"]}))
    assert main(["build", str(torus33), "--cals", str(cals)]) == 2
    capsys.readouterr()


def test_distance_five_qubit(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    path = tmp_path / "five.json"
    assert main(["family", "cyclic-toric", "--a", "1", "--b", "2", "--out", str(path)]) == 0
    capsys.readouterr()
    code, d = run_json(capsys, "distance", str(path))
    assert code == 0 and d["exact"] == 3 and d["witness"]


def test_distance_bounds_only_4x4(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    path = tmp_path / "t44.json"
    main(["family", "toric", "--m", "4", "--n", "4", "--out", str(path)])
    capsys.readouterr()
    for flags in (["--bounds-only"], ["--exact-budget", "0"]):
        code, d = run_json(capsys, "distance", str(path), *flags)
        assert code == 0 and d["exact"] is None
        assert max(b["value"] for b in d["lower_bounds"]) == 4
        assert min(b["value"] for b in d["upper_bounds"]) == 4


def test_distance_budget_exceeded(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    path = tmp_path / "s52.json"
    main(["family", "stellated", "--s", "5", "--t", "2", "--out", str(path)])
    capsys.readouterr()
    code, d = run_json(capsys, "distance", str(path), "--exact-budget", "10")
    assert code == 0 and d["exact"] is None and d["notes"]
    assert d["lower_bounds"] and d["upper_bounds"]


def test_determinism(capsys: pytest.CaptureFixture[str], torus33: Path) -> None:
    for argv in (["inspect", str(torus33)], ["distance", str(torus33)], ["family", "stellated", "--s", "3", "--t", "1"]):
        _, a = run(capsys, *argv, "--json")
        _, b = run(capsys, *argv, "--json")
        assert a == b and a.strip()


def test_table_golden(capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
    code, out = run(capsys, "table", "cyclic2", "--max", "9", "--diff", str(GOLDEN))
    assert code == 0
    golden = json.loads(GOLDEN.read_text())
    golden["entries"][7]["D"] += 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(golden))
    code, out = run(capsys, "table", "cyclic2", "--max", "9", "--diff", str(bad))
    assert code == 3
    code, d = run_json(capsys, "table", "cyclic2", "--max", "0")
    assert code == 0


def test_table_first_entry(capsys: pytest.CaptureFixture[str]) -> None:
    code, d = run_json(capsys, "table", "cyclic2", "--max", "1")
    rows = d["entries"] if isinstance(d, dict) else d
    first = next(r for r in rows if (r["s"], r["t"]) == (0, 0))
    assert (first["N"], first["K"], first["D"]) == (4, 1, 2)


def test_derive(capsys: pytest.CaptureFixture[str], loop_file: Path, torus33: Path, tmp_path: Path) -> None:
    code, out = run(capsys, "derive", str(loop_file), "--kind", "medial")
    assert code == 0 and json.loads(out)["flag_count"] == 8
    t44 = tmp_path / "t44.json"
    main(["family", "toric", "--m", "4", "--n", "4", "--out", str(t44)])
    capsys.readouterr()
    code, out = run(capsys, "derive", str(t44), "--kind", "decoding")
    assert code == 0 and json.loads(out)["components"] == 2
    code, out = run(capsys, "derive", str(t44), "--kind", "decoding", "--dot")
    assert code == 0 and out.startswith("graph")
    dbl = tmp_path / "dbl.json"
    code, out = run(capsys, "derive", str(torus33), "--kind", "doubled")
    dbl.write_text(out)
    code, d = run_json(capsys, "inspect", str(dbl))
    assert code == 0 and d["checkerboardable"] is True
    for kind in ("dual", "facevertex"):
        code, out = run(capsys, "derive", str(torus33), "--kind", kind)
        assert code == 0 and json.loads(out)["flag_count"]
    assert main(["derive", str(loop_file), "--kind", "decoding"]) == 2
    capsys.readouterr()


def test_checkerboard(capsys: pytest.CaptureFixture[str], torus33: Path, tmp_path: Path) -> None:
    code, d = run_json(capsys, "checkerboard", str(torus33))
    assert code == 0 and d["defect"]
    defect = ",".join(str(e) for e in d["defect"])
    code, d2 = run_json(capsys, "checkerboard", str(torus33), "--defect", defect)
    assert code == 0 and d2["input_is_defect"] is True
    t44 = tmp_path / "t44.json"
    main(["family", "toric", "--m", "4", "--n", "4", "--out", str(t44)])
    capsys.readouterr()
    code, d = run_json(capsys, "checkerboard", str(t44))
    assert code == 0 and d["coloring"]
    assert main(["checkerboard", str(torus33), "--defect", "999"]) == 2
    capsys.readouterr()


def test_console_script_stdin(torus33: Path) -> None:
    exe = Path(sys.executable).with_name("twistcode")
    cmd = [str(exe)] if exe.exists() else [sys.executable, "-c", "import sys; from twistcode.cli import main; sys.exit(main())"]
    res = subprocess.run(cmd + ["distance", "-", "--json"], input=torus33.read_text(), capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["exact"] == 3
    res = subprocess.run(cmd + ["inspect", "-"], input="garbage", capture_output=True, text=True)
    assert res.returncode == 2
