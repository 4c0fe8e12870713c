import json
import math
import subprocess
import sys

from harmonia.cli import main


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "harmonia", *args],
        capture_output=True,
        text=True,
    )


def run_main(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr().out
    return code, out


def test_examples_exit_zero_with_nine_pass_rows(capsys):
    code, out = run_main(capsys, "examples")
    assert code == 0
    lines = out.splitlines()
    pass_rows = [ln for ln in lines if ln.rstrip().endswith(" PASS")]
    discrepancy_rows = [ln for ln in lines if ln.rstrip().endswith("DISCREPANCY")]
    assert len(pass_rows) == 9
    assert len(discrepancy_rows) == 1


def test_examples_json_records(capsys):
    code, out = run_main(capsys, "examples", "--format", "json")
    assert code == 0
    records = json.loads(out)["examples"]
    standard = [r for r in records if r["status"] in ("PASS", "FAIL")]
    flagged = [r for r in records if r["status"] == "DISCREPANCY"]
    assert len(standard) == 9
    assert all(r["status"] == "PASS" for r in standard)
    assert len(flagged) == 1
    assert flagged[0]["passed_derived"] is True
    assert flagged[0]["alt_residual"] > 0.1


def test_examples_csv(capsys):
    code, out = run_main(capsys, "examples", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "id,kind,samples,max_residual,tolerance,status"
    assert len(lines) == 11


def test_examples_tolerance_override(capsys):
    # the golden rows are exact or near machine precision, so they survive
    # even an extreme tolerance
    code, _ = run_main(capsys, "examples", "--tol", "1e-14")
    assert code == 0
    code, out = run_main(capsys, "examples", "--tol", "1e-30")
    assert code == 1
    assert "FAIL" in out


def test_verify_json_zero_failures(capsys):
    code, out = run_main(capsys, "verify")
    assert code == 0
    payload = json.loads(out)
    assert payload["all_passed"] is True
    assert payload["seed"] == 1729
    assert all(c["passed"] for c in payload["checks"])


def test_verify_targets_and_table(capsys):
    code, out = run_main(capsys, "verify", "--targets", "algebra", "--format", "table")
    assert code == 0
    assert "antiderivative_round_trip" in out


def test_verify_unknown_target_is_bad_input(capsys):
    code, _ = run_main(capsys, "verify", "--targets", "bogus_check")
    assert code == 2


def test_verify_byte_identical_outputs(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    r1 = run_cli("verify", "--seed", "7", "--output", str(out1))
    r2 = run_cli("verify", "--seed", "7", "--output", str(out2))
    assert r1.returncode == 0 and r2.returncode == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_examples_byte_identical_outputs(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    r1 = run_cli("examples", "--format", "json", "--output", str(out1))
    r2 = run_cli("examples", "--format", "json", "--output", str(out2))
    assert r1.returncode == 0 and r2.returncode == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_field_example_matches_closed_form(capsys):
    code, out = run_main(
        capsys, "field", "--example", "dtn-log", "--grid", "0.5:1.5:5:0.0:1.5:4",
        "--format", "json",
    )
    assert code == 0
    rows = json.loads(out)["rows"]
    assert len(rows) == 20
    base = next(r for r in rows if abs(r["r"] - 1.0) < 1e-12 and abs(r["theta"]) < 1e-12)
    for row in rows:
        expected = 0.5 * (math.log(row["r"]) ** 2 - row["theta"] ** 2)
        assert abs((row["value"] - base["value"]) - expected) < 1e-10


def test_field_cut_rows_reported_as_null(capsys):
    code, out = run_main(
        capsys, "field", "--example", "dtn-log",
        "--grid", f"0.5:1.5:3:{math.pi}:{math.pi + 0.5}:3", "--format", "json",
    )
    assert code == 0
    rows = json.loads(out)["rows"]
    cut_rows = [r for r in rows if abs(r["theta"] - math.pi) < 1e-12]
    assert cut_rows and all(r["value"] is None for r in cut_rows)
    assert all(r["reason"] == "cut_proximity" for r in cut_rows)
    ok_rows = [r for r in rows if r["value"] is not None]
    assert ok_rows


def test_field_csv_shape(capsys):
    code, out = run_main(capsys, "field", "--example", "dtn-constant", "--grid", "0.6:1.4:3:-1.0:1.0:3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "r,theta,x,y,value,reason"
    assert len(lines) == 10
    assert "." in lines[1] and lines[1].count(",") == 5


def test_field_from_input_file(tmp_path, capsys):
    payload = {
        "field": {
            "kind": "pair",
            "pair": {
                "part_z": [{"re": 0.5, "im": 0.0, "k": 2, "m": 0}],
                "part_zeta": [{"re": 0.5, "im": 0.0, "k": 2, "m": 0}],
            },
        }
    }
    path = tmp_path / "field.json"
    path.write_text(json.dumps(payload))
    code, out = run_main(
        capsys, "field", "--input", str(path), "--grid", "0.5:1.5:3:0.0:1.0:3",
        "--format", "json",
    )
    assert code == 0
    rows = json.loads(out)["rows"]
    for row in rows:
        assert abs(row["value"] - (row["x"] ** 2 - row["y"] ** 2)) < 1e-12


def test_field_bad_grid_is_exit_two(capsys):
    assert run_main(capsys, "field", "--example", "dtn-log", "--grid", "0:1:5:-1:1:5")[0] == 2
    assert run_main(capsys, "field", "--example", "dtn-log", "--grid", "nonsense")[0] == 2
    assert run_main(capsys, "field", "--example", "dtn-log", "--grid", "0.5:1.5:1:-1:1:5")[0] == 2


def test_field_requires_source(capsys):
    assert run_main(capsys, "field")[0] == 2


def test_reflect_neumann_example(capsys):
    code, out = run_main(
        capsys, "reflect", "--formula", "neumann",
        "--example", "neumann-reflect-constant", "--point", "0.8:0.0", "--check",
    )
    assert code == 0
    rec = json.loads(out)
    assert abs(rec["correction"]["re"] - (-2.0 * math.log(0.8))) < 1e-12
    assert abs(rec["correction"]["re"] - 0.4462871026284195) < 1e-12
    assert rec["check_residual"] < 1e-10
    assert abs(rec["reflected"]["z"]["re"] - 1.25) < 1e-12


def test_reflect_at_boundary_has_zero_correction(capsys):
    code, out = run_main(
        capsys, "reflect", "--formula", "neumann",
        "--example", "neumann-reflect-constant", "--point", "1.0:0.3",
    )
    assert code == 0
    rec = json.loads(out)
    assert rec["correction"]["re"] == 0.0 and rec["correction"]["im"] == 0.0


def test_reflect_robin_example_check(capsys):
    code, out = run_main(
        capsys, "reflect", "--formula", "robin",
        "--example", "robin-reflect-cos2", "--point", "0.7:0.5", "--check",
    )
    assert code == 0
    assert json.loads(out)["check_residual"] < 1e-10


def test_reflect_dirichlet_and_schwarz_from_file(tmp_path, capsys):
    payload = {
        "solution": {
            "part_z": [{"re": 0.5, "im": 0.0, "k": 2, "m": 0}],
            "part_zeta": [{"re": 0.5, "im": 0.0, "k": 2, "m": 0}],
        },
        "data": [
            {"re": 0.5, "im": 0.0, "kz": 2, "kzeta": 0},
            {"re": 0.5, "im": 0.0, "kz": 0, "kzeta": 2},
        ],
        "point": {"r": 0.8, "theta": 0.4},
    }
    path = tmp_path / "reflect.json"
    path.write_text(json.dumps(payload))
    code, out = run_main(capsys, "reflect", "--formula", "dirichlet", "--input", str(path), "--check")
    assert code == 0
    assert json.loads(out)["check_residual"] < 1e-10
    code, out = run_main(capsys, "reflect", "--formula", "schwarz", "--input", str(path))
    assert code == 0
    assert json.loads(out)["formula"] == "neumann_arc"


def test_reflect_bad_json_is_exit_two(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert run_main(capsys, "reflect", "--input", str(path))[0] == 2
    assert run_main(capsys, "reflect", "--example", "no-such-id")[0] == 2


def test_cut_angle_env_override():
    # rows at theta = 2 are fine with the default cut but sit on a cut
    # rotated to 2 rad; theta = 1.5 stays conjugate-symmetric either way
    grid = "0.5:1.5:3:1.5:2.0:2"
    result = run_cli("field", "--example", "dtn-log", "--grid", grid, "--format", "json")
    rows_default = json.loads(result.stdout)["rows"]
    assert all(r["value"] is not None for r in rows_default)
    result = subprocess.run(
        [sys.executable, "-m", "harmonia", "field", "--example", "dtn-log",
         "--grid", grid, "--format", "json"],
        capture_output=True, text=True,
        env={"HARMONIA_CUT_ANGLE": "2.0", "PATH": "/usr/bin:/bin"},
    )
    rows_rotated = json.loads(result.stdout)["rows"]
    on_cut = [r for r in rows_rotated if abs(r["theta"] - 2.0) < 1e-12]
    off_cut = [r for r in rows_rotated if abs(r["theta"] - 1.5) < 1e-12]
    assert on_cut and all(r["value"] is None and r["reason"] == "cut_proximity" for r in on_cut)
    assert off_cut and all(r["value"] is not None for r in off_cut)
