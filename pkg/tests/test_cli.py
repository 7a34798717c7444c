import json

import pytest

from ergospec.cli import main

from conftest import FIXTURES


def fixture_path(name):
    return str(FIXTURES / f"{name}.json")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_klein(capsys, tmp_path):
    report_path = tmp_path / "report.json"
    code, out, _ = run(capsys, "analyze", fixture_path("klein_four"),
                       "--report", str(report_path))
    assert code == 0
    assert "spectrum     : 3 character(s)" in out
    assert "violations   : 0" in out
    data = json.loads(report_path.read_text())
    assert data["unitary_spectrum"]["count"] == 3
    assert sorted(data["unitary_spectrum"]["eigenspace_dims"]) == [1, 1, 2]


def test_analyze_json_format(capsys):
    code, out, _ = run(capsys, "analyze", fixture_path("jordan_half"),
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["stability"]["status"] == "stable"
    assert data["unitary_spectrum"]["count"] == 0
    assert data["ergodic"]["is_uniformly_mean_ergodic"] is True


def test_analyze_determinism_modulo_timings(capsys):
    runs = []
    for _ in range(2):
        code, out, _ = run(capsys, "analyze", fixture_path("klein_four"),
                           "--format", "json", "--seed", "5")
        assert code == 0
        data = json.loads(out)
        data.pop("timings")
        runs.append(json.dumps(data, sort_keys=True))
    assert runs[0] == runs[1]


def test_dual_prints_klein_table(capsys):
    code, out, _ = run(capsys, "dual", fixture_path("klein_four"))
    assert code == 0
    assert "4 unitary character(s)" in out
    assert out.count("-1.000") == 6  # three sign rows with two -1 entries each


def test_dual_refuses_free_monoid(capsys):
    code, _, err = run(capsys, "dual", fixture_path("jordan_half"))
    assert code == 2
    assert "torus" in err


def test_falsify_det(capsys, tmp_path):
    char_path = tmp_path / "det.json"
    char_path.write_text(json.dumps(
        {"angles": [["0", "1"], ["1", "2"], ["1", "2"], ["0", "1"]]}))
    code, out, _ = run(capsys, "falsify", fixture_path("klein_four"),
                       str(char_path))
    assert code == 0
    assert "Refuted" in out


def test_falsify_member_consistent(capsys, tmp_path):
    char_path = tmp_path / "one.json"
    char_path.write_text(json.dumps(
        {"angles": [["0", "1"], ["0", "1"], ["0", "1"], ["0", "1"]]}))
    code, out, _ = run(capsys, "falsify", fixture_path("klein_four"),
                       str(char_path))
    assert code == 0
    assert "ConsistentWithMembership" in out


@pytest.mark.parametrize("command", [
    "spectrum", "ergodic", "decompose", "stability", "quasicompact", "nisa"])
def test_subcommands_run_on_fixture(capsys, command):
    code, _, _ = run(capsys, command, fixture_path("circulant_stochastic_8"))
    assert code == 0


def test_cesaro_csv_export(capsys, tmp_path):
    csv_path = tmp_path / "trace.csv"
    code, _, _ = run(capsys, "ergodic", fixture_path("jordan_half"),
                     "--cesaro-csv", str(csv_path))
    assert code == 0
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "side,distance,composed_distance"
    assert len(lines) > 10
    assert lines[1].startswith("1,")


def test_ensemble_command(capsys):
    code, out, _ = run(capsys, "ensemble", "--ensemble", "circulant",
                       "--count", "5", "--n", "6", "--k", "2")
    assert code == 0
    assert "5/5 pass" in out


def test_ensemble_json_config(capsys, tmp_path):
    config = tmp_path / "ensemble.json"
    config.write_text(json.dumps({"ensemble": "polynomial", "n": 6, "k": 2,
                                  "count": 4, "seed": 11}))
    code, out, _ = run(capsys, "ensemble", "--config", str(config))
    assert code == 0
    assert "4/4 pass" in out


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2
    assert "error" in err


def test_missing_file_exit_code(capsys):
    code, _, err = run(capsys, "analyze", "/nonexistent/rep.json")
    assert code == 2


def test_custom_tolerances_recorded(capsys):
    code, out, _ = run(capsys, "analyze", fixture_path("identity_3"),
                       "--format", "json", "--tol-rank", "1e-9",
                       "--max-cesaro", "256")
    assert code == 0
    data = json.loads(out)
    assert data["tolerances"]["tol_rank"] == 1e-9
    assert data["tolerances"]["cesaro_max_side"] == 256
    sides = [row["side"] for row in data["ergodic"]["cesaro_trace"]]
    assert max(sides) <= 256
