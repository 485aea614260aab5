"""
End-to-end tests of StartAnalysis.main: output tables, files and exit codes.
"""
import json

import pytest
import yaml

import StartAnalysis
from check_report import CheckReport
from errors import OptimizerConvergenceError
from StartAnalysis import (EXIT_INPUT, EXIT_OK, EXIT_OPTIMIZER, EXIT_USAGE,
                           EXIT_VERIFICATION, main)


@pytest.fixture
def histograms(tmp_path):
    """Two histograms with disjoint supports and one skewed binary target."""
    a = tmp_path / "a.csv"
    a.write_text("x,3\n", encoding="utf-8")
    b = tmp_path / "b.csv"
    b.write_text("# second\ny,5\n", encoding="utf-8")
    target = tmp_path / "target.csv"
    target.write_text("x,1\ny,4\n", encoding="utf-8")
    return {"a": str(a), "b": str(b), "target": str(target)}


def _csv_rows(text):
    return [line.split(",") for line in text.strip().splitlines()]


class TestSweep:

    def test_disjoint_pair(self, histograms, capsys):
        code = main(["sweep", histograms["a"], histograms["b"], "--q", "0,1,2"])
        assert code == EXIT_OK
        rows = _csv_rows(capsys.readouterr().out)
        assert rows[0] == ["q", "jtqd"]
        assert rows[1:] == [["0", "1"], ["1", "0.69314718056"], ["2", "0.5"]]

    def test_q_grid_and_measures(self, histograms, capsys):
        code = main(["sweep", histograms["a"], histograms["b"], "--q-grid", "0.5:1.5:0.5",
                     "--measure", "jtqd,jtd"])
        assert code == EXIT_OK
        rows = _csv_rows(capsys.readouterr().out)
        assert rows[0] == ["q", "jtqd", "jtd"]
        assert [row[0] for row in rows[1:]] == ["0.5", "1", "1.5"]
        # at q = 1 both reduce to the JSD
        assert rows[2][1] == rows[2][2]

    def test_empty_grid_is_usage_error(self, histograms, capsys):
        code = main(["sweep", histograms["a"], histograms["b"], "--q-grid", "2:1:0.5"])
        assert code == EXIT_USAGE
        assert capsys.readouterr().out == ""

    def test_weights_must_sum_to_one(self, histograms):
        assert main(["sweep", histograms["a"], histograms["b"], "--weights", "0.5,0.6"]) == EXIT_USAGE

    def test_structured_output(self, histograms, capsys):
        code = main(["sweep", histograms["a"], histograms["b"], "--q", "2", "--format", "structured"])
        assert code == EXIT_OK
        assert json.loads(capsys.readouterr().out) == [{"q": 2.0, "jtqd": 0.5}]


class TestEntropy:

    def test_default_measures(self, histograms, capsys):
        assert main(["entropy", histograms["target"], "--q", "2"]) == EXIT_OK
        rows = _csv_rows(capsys.readouterr().out)
        assert rows[0] == ["input", "measure", "q", "value"]
        assert [row[1] for row in rows[1:]] == ["shannon", "tsallis", "renyi"]
        assert rows[1][2] == ""
        assert float(rows[2][3]) == pytest.approx(1.0 - 0.2 ** 2 - 0.8 ** 2)

    def test_negative_count_is_input_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,1\nb,-2\n", encoding="utf-8")
        assert main(["entropy", str(bad)]) == EXIT_INPUT
        assert "bad.csv:2" in capsys.readouterr().err

    def test_missing_file_is_input_error(self, tmp_path):
        assert main(["entropy", str(tmp_path / "absent.csv")]) == EXIT_INPUT

    def test_zero_mass_is_input_error(self, tmp_path):
        empty = tmp_path / "zero.csv"
        empty.write_text("a,0\n", encoding="utf-8")
        assert main(["entropy", str(empty)]) == EXIT_INPUT

    def test_unknown_measure(self, histograms):
        assert main(["entropy", histograms["a"], "--measure", "kld"]) == EXIT_USAGE


class TestDivergence:

    def test_kld_matrix_has_infinite_cells(self, histograms, capsys):
        a, b = histograms["a"], histograms["b"]
        assert main(["divergence", a, b, "--measure", "kld"]) == EXIT_OK
        rows = _csv_rows(capsys.readouterr().out)
        assert rows[0] == ["measure", "q", "input_a", "input_b", "value"]
        cells = {(row[2], row[3]): row[4] for row in rows[1:]}
        assert cells[(a, a)] == "0"
        assert cells[(a, b)] == "inf"
        assert cells[(b, a)] == "inf"

    def test_jtqd_per_q(self, histograms, capsys):
        a, b = histograms["a"], histograms["b"]
        assert main(["divergence", a, b, "--q", "0.5,2"]) == EXIT_OK
        rows = _csv_rows(capsys.readouterr().out)[1:]
        assert len(rows) == 2 * 4
        off_diagonal = [row for row in rows if row[2] != row[3] and row[1] == "2"]
        assert all(float(row[4]) == pytest.approx(0.5) for row in off_diagonal)

    def test_needs_two_inputs(self, histograms):
        assert main(["divergence", histograms["a"]]) == EXIT_USAGE


class TestMinimize:

    def test_q_two_vertex(self, histograms, capsys):
        assert main(["minimize", histograms["target"], "--q", "2"]) == EXIT_OK
        rows = _csv_rows(capsys.readouterr().out)
        assert rows[0] == ["q", "objective", "x", "y"]
        assert rows[1] == ["2", "0.1", "0", "1"]

    def test_structured_records(self, histograms, capsys):
        assert main(["minimize", histograms["target"], "--q", "1", "--format", "structured"]) == EXIT_OK
        [record] = json.loads(capsys.readouterr().out)
        assert record["target"] == pytest.approx({"x": 0.2, "y": 0.8})
        assert record["minimizer"] == pytest.approx(record["target"], abs=1e-12)

    def test_optimizer_failure_exit_code(self, histograms, monkeypatch):
        def fail(*args, **kwargs):
            raise OptimizerConvergenceError("no convergence", best=None, objective=0.25)

        monkeypatch.setattr(StartAnalysis, "minimize_jtqd_first_arg", fail)
        assert main(["minimize", histograms["target"], "--q", "3"]) == EXIT_OPTIMIZER


class TestVerify:

    def test_selected_check_passes(self, capsys):
        code = main(["verify", "--only", "bounds,fast_paths", "--trials", "30", "--seed", "5"])
        assert code == EXIT_OK
        rows = _csv_rows(capsys.readouterr().out)
        assert rows[0] == ["name", "verdict", "worst_violation", "tolerance", "samples", "seed"]
        assert [(row[0], row[1], row[5]) for row in rows[1:]] == [
            ("jtqd_bounds", "pass", "5"), ("fast_paths", "pass", "5")]

    def test_same_seed_same_output(self, capsys):
        argv = ["verify", "--only", "js_triangle", "--trials", "25", "--seed", "11", "--format", "structured"]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        assert capsys.readouterr().out == first
        assert json.loads(first)[0]["witness"]

    def test_failed_check_exit_code(self, monkeypatch, capsys):
        failing = CheckReport(name="bounds", samples=1, worst_violation=0.5, tolerance=1e-12)
        monkeypatch.setattr(StartAnalysis, "run_suite", lambda plan, only=None: [failing])
        assert main(["verify"]) == EXIT_VERIFICATION
        assert "fail" in capsys.readouterr().out

    def test_unknown_check(self):
        assert main(["verify", "--only", "everything"]) == EXIT_USAGE

    def test_invalid_trials(self):
        assert main(["verify", "--trials", "0"]) == EXIT_USAGE


class TestOutputFiles:

    @pytest.mark.parametrize("suffix", [".yaml", ".json"])
    def test_output_file(self, histograms, tmp_path, suffix):
        path = tmp_path / f"sweep{suffix}"
        code = main(["sweep", histograms["a"], histograms["b"], "--q", "0,2", "--output", str(path)])
        assert code == EXIT_OK
        with open(path) as f:
            data = yaml.safe_load(f) if suffix == ".yaml" else json.load(f)
        assert data == [{"q": 0.0, "jtqd": 1.0}, {"q": 2.0, "jtqd": 0.5}]

    def test_output_csv(self, histograms, tmp_path, capsys):
        path = tmp_path / "sweep.csv"
        assert main(["sweep", histograms["a"], histograms["b"], "--q", "1", "--output", str(path)]) == EXIT_OK
        assert path.read_text() == capsys.readouterr().out

    def test_unwritable_output_is_input_error(self, histograms, tmp_path, caplog):
        path = tmp_path / "missing_dir" / "out.json"
        code = main(["sweep", histograms["a"], histograms["b"], "--q", "1", "--output", str(path)])
        assert code == EXIT_INPUT
        assert not path.exists()
        assert "Failed to save results" in caplog.text


class TestArgumentParsing:

    def test_missing_command(self):
        with pytest.raises(SystemExit) as excinfo:
            main([])
        assert excinfo.value.code == EXIT_USAGE

    def test_q_and_grid_are_exclusive(self, histograms):
        with pytest.raises(SystemExit) as excinfo:
            main(["sweep", histograms["a"], histograms["b"], "--q", "1", "--q-grid", "0:1:0.5"])
        assert excinfo.value.code == EXIT_USAGE

    def test_negative_q(self, histograms):
        assert main(["entropy", histograms["a"], "--q", "-1"]) == EXIT_USAGE

    def test_log_file_gets_debug_records(self, histograms, tmp_path):
        log = tmp_path / "run.log"
        assert main(["entropy", histograms["a"], "--q", "1", "--log-file", str(log)]) == EXIT_OK
        assert "DEBUG" in log.read_text()

    def test_infinite_q_is_rejected(self, histograms):
        assert main(["entropy", histograms["a"], "--q", "inf"]) == EXIT_USAGE

    def test_explicit_config_is_applied(self, histograms, tmp_path, capsys):
        settings = tmp_path / "settings.yaml"
        settings.write_text("analysis:\n  q_grid: [2]\n  format: structured\n")
        assert main(["sweep", histograms["a"], histograms["b"], "--config", str(settings)]) == EXIT_OK
        assert json.loads(capsys.readouterr().out) == [{"q": 2.0, "jtqd": 0.5}]

    def test_missing_explicit_config_is_usage_error(self, histograms, tmp_path, capsys):
        missing = tmp_path / "none.yaml"
        code = main(["sweep", histograms["a"], histograms["b"], "--config", str(missing)])
        assert code == EXIT_USAGE
        assert capsys.readouterr().out == ""

    def test_invalid_explicit_config_is_usage_error(self, histograms, tmp_path):
        broken = tmp_path / "broken.yaml"
        broken.write_text("analysis: [unclosed\n")
        assert main(["sweep", histograms["a"], histograms["b"], "--config", str(broken)]) == EXIT_USAGE
