"""
Tests for result tables and check reports.
"""
import json
import math

import numpy as np
import pytest
import yaml

from check_report import CheckReport, ViolationTracker, format_number, to_jsonable
from errors import OutputWriteError
from measures import ProbabilityVector
from result_table import ResultTable, format_for_filename


def _table():
    table = ResultTable(["measure", "q", "value"])
    table.add_row("shannon", None, math.log(2))
    table.add_row("kld", 1.0, math.inf)
    return table


class TestResultTable:

    def test_csv(self):
        assert _table().to_csv() == "measure,q,value\nshannon,,0.69314718056\nkld,1,inf\n"

    def test_structured(self):
        rows = json.loads(_table().render("structured"))
        assert rows == [
            {"measure": "shannon", "q": None, "value": 0.69314718056},
            {"measure": "kld", "q": 1.0, "value": "inf"},
        ]

    def test_records_replace_rows(self):
        table = _table()
        table.records = [{"name": "bounds", "worst": np.float64(-math.inf)}]
        assert table.to_dict() == [{"name": "bounds", "worst": "-inf"}]
        assert table.to_csv().startswith("measure,q,value\n")

    def test_save_to_file(self, tmp_path):
        table = _table()
        for suffix in ("json", "yaml", "csv"):
            path = tmp_path / f"out.{suffix}"
            table.save_to_file(str(path), format_for_filename(str(path)))
        assert json.loads((tmp_path / "out.json").read_text()) == table.to_dict()
        assert yaml.safe_load((tmp_path / "out.yaml").read_text()) == table.to_dict()
        assert (tmp_path / "out.csv").read_text() == table.to_csv()

    def test_unwritable_file_raises(self, tmp_path):
        with pytest.raises(OutputWriteError, match="missing"):
            _table().save_to_file(str(tmp_path / "missing" / "out.yaml"), "yaml")

    def test_format_for_filename(self):
        assert format_for_filename("r.YML") == "yaml"
        assert format_for_filename("r.csv") == "csv"
        assert format_for_filename("r.out") == "json"


class TestCheckReport:

    def test_verdict(self):
        assert CheckReport("c", 10, 1e-13, 1e-12).passed
        assert not CheckReport("c", 10, 2e-12, 1e-12).passed
        assert not CheckReport("c", 10, float("nan"), 1e-12).passed

    def test_record_line(self):
        report = CheckReport("bounds", 5, -0.25, 1e-12, seed=9, detail="note")
        assert report.to_record() == ("name=bounds verdict=pass worst_violation=-0.25 "
                                      "samples=5 seed=9 detail='note'")

    def test_format_number(self):
        assert format_number(1 / 3) == "0.333333333333"
        assert format_number(-math.inf) == "-inf"

    def test_to_jsonable(self):
        p = ProbabilityVector([0.5, 0.5])
        assert to_jsonable({"p": p, "k": np.int64(3)})["k"] == 3
        assert to_jsonable({"p": p})["p"]["entries"] == [0.5, 0.5]


class TestViolationTracker:

    def test_keeps_worst_witness(self):
        tracker = ViolationTracker("t", 1e-12, seed=1)
        tracker.observe(-1.0, x=1)
        tracker.observe(0.5, x=2)
        tracker.observe(0.1, x=3)
        report = tracker.report()
        assert report.samples == 3
        assert report.worst_violation == 0.5
        assert report.witness == {"x": 2}
        assert not report.passed

    def test_nan_sticks(self):
        tracker = ViolationTracker("t", 1e-12)
        tracker.observe(float("nan"), x=1)
        tracker.observe(10.0, x=2)
        report = tracker.report()
        assert math.isnan(report.worst_violation)
        assert report.witness == {"x": 1}

    def test_empty_tracker_passes(self):
        report = ViolationTracker("t", 0.0).report()
        assert report.samples == 0
        assert report.passed

    def test_notes_join_into_detail(self):
        tracker = ViolationTracker("t", 0.0)
        tracker.note("first")
        tracker.note("second")
        assert tracker.report().detail == "first; second"

    def test_batch_keeps_worst_witness(self):
        tracker = ViolationTracker("t", 1e-12)
        tracker.observe(0.2, x=-1)
        values = np.array([-1.0, 0.5, 0.1])
        tracker.observe_batch(values, lambda k: {"x": k})
        report = tracker.report()
        assert report.samples == 4
        assert report.worst_violation == 0.5
        assert report.witness == {"x": 1}

    def test_batch_below_worst_keeps_witness(self):
        tracker = ViolationTracker("t", 1e-12)
        tracker.observe(1.0, x="scalar")
        tracker.observe_batch(np.array([0.5, 0.9]), lambda k: {"x": k})
        assert tracker.report().witness == {"x": "scalar"}

    def test_batch_nan_sticks(self):
        tracker = ViolationTracker("t", 1e-12)
        tracker.observe_batch(np.array([0.1, np.nan, np.nan]), lambda k: {"x": k})
        tracker.observe(5.0, x="later")
        report = tracker.report()
        assert math.isnan(report.worst_violation)
        assert report.witness == {"x": 1}

    def test_empty_batch(self):
        tracker = ViolationTracker("t", 1e-12)
        tracker.observe_batch(np.array([]), lambda k: {"x": k})
        assert tracker.report().samples == 0
