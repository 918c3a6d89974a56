import json
import re

import pytest

from gsnetopt.cli import build_parser, main
from gsnetopt.contacts import CONTACT_CSV_HEADER

FAST_ARGS = ["--satellites", "1", "--sim-days", "1.0", "--bands", "Ka",
             "--min-satellite-data", "2e10", "--step", "21600",
             "--min-duration", "300", "--seed", "3"]


class TestDefaults:
    def test_pinned_defaults(self):
        parser = build_parser()
        args = parser.parse_args(["contacts", "--out", "x"])
        assert args.min_elevation == 10.0
        assert args.sim_days == 7.0
        assert args.opt_days == 365.0
        assert args.min_satellite_data == 1e11
        assert args.period == 86400.0
        assert args.step == 3600.0
        assert args.min_duration == 180.0
        assert args.max_monthly_cost == 1e6
        assert args.sim_start == "2024-09-11T00:00:00Z"

    def test_window_study_default_durations(self):
        parser = build_parser()
        args = parser.parse_args(["window-study", "--out", "x"])
        assert args.durations == [1, 2, 3, 5, 7, 10, 20, 30, 50, 60, 90,
                                  100, 180]
        assert args.sample == 20


class TestContactsCommand:
    def test_csv_header_and_summary(self, tmp_path):
        out = tmp_path / "run"
        code = main(["contacts", *FAST_ARGS, "--out", str(out)])
        assert code == 0
        lines = (out / "contacts.csv").read_text().splitlines()
        assert lines[0] == CONTACT_CSV_HEADER
        summary = json.loads((out / "contacts_summary.json").read_text())
        assert summary["n_contacts"] == len(lines) - 1
        assert summary["scenario"]["seed"] == 3


class TestOptimizeCommand:
    def test_byte_identical_reruns(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        for out in (out1, out2):
            code = main(["optimize", *FAST_ARGS, "--objective", "min_cost",
                         "--out", str(out)])
            assert code == 0
        assert (out1 / "solution.json").read_bytes() == \
            (out2 / "solution.json").read_bytes()
        assert (out1 / "map.geojson").read_bytes() == \
            (out2 / "map.geojson").read_bytes()
        assert (out1 / "metrics.csv").read_bytes() == \
            (out2 / "metrics.csv").read_bytes()

    def test_solution_document_contents(self, tmp_path):
        out = tmp_path / "run"
        assert main(["optimize", *FAST_ARGS, "--out", str(out)]) == 0
        doc = json.loads((out / "solution.json").read_text())
        assert doc["certificate"]["status"] == "Optimal"
        assert "wall_time" not in doc["certificate"]
        assert doc["scenario"]["config"]["objective"] == "min_cost"
        geo = json.loads((out / "map.geojson").read_text())
        assert geo["type"] == "FeatureCollection"
        kinds = {f["geometry"]["type"] for f in geo["features"]}
        assert kinds == {"Point", "Polygon"}
        ring = next(f for f in geo["features"]
                    if f["geometry"]["type"] == "Polygon")
        coords = ring["geometry"]["coordinates"][0]
        assert len(coords) == 65
        assert coords[0] == coords[-1]

    def test_max_data_without_cap_rejected(self, tmp_path, capsys):
        code = main(["optimize", *FAST_ARGS, "--objective", "max_data",
                     "--max-monthly-cost", "nan",
                     "--out", str(tmp_path / "x")])
        assert code == 2
        err = capsys.readouterr().err
        assert "monthly" in err and "cap" in err

    def test_infeasible_is_a_result_not_a_failure(self, tmp_path):
        out = tmp_path / "run"
        code = main(["optimize", *FAST_ARGS, "--min-satellite-data", "1e18",
                     "--out", str(out)])
        assert code == 0
        doc = json.loads((out / "solution.json").read_text())
        assert doc["certificate"]["status"] == "Infeasible"
        assert doc["metrics"] is None


class TestScenarioGen:
    def test_reproducible_and_loadable(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert main(["scenario-gen", *FAST_ARGS, "--out", str(out1)]) == 0
        assert main(["scenario-gen", *FAST_ARGS, "--out", str(out2)]) == 0
        assert (out1 / "scenario.json").read_bytes() == \
            (out2 / "scenario.json").read_bytes()
        out3 = tmp_path / "c"
        code = main(["optimize", "--config", str(out1 / "scenario.json"),
                     "--out", str(out3)])
        assert code == 0


class TestExportLp:
    def test_writes_parseable_model(self, tmp_path):
        out = tmp_path / "run"
        assert main(["export-lp", *FAST_ARGS, "--out", str(out)]) == 0
        text = (out / "model.lp").read_text()
        assert text.splitlines()[-1] == "End"
        assert "Minimize" in text and "Subject To" in text
        assert re.search(r"\bBinaries\b", text)


class TestBaselineCommand:
    def test_single_provider_rows(self, tmp_path):
        out = tmp_path / "run"
        code = main(["baseline", *FAST_ARGS, "--providers", "1",
                     "--out", str(out)])
        assert code == 0
        lines = (out / "baselines.csv").read_text().strip().splitlines()
        assert len(lines) == 7       # header + one row per provider
        doc = json.loads((out / "baselines.json").read_text())
        assert doc["studies"][0]["subset_size"] == 1
        assert len(doc["studies"][0]["results"]) == 6


class TestWindowStudyCommand:
    def test_row_per_duration(self, tmp_path):
        out = tmp_path / "run"
        code = main(["window-study", "--durations", "1", "2", "--sample", "2",
                     "--seed", "1", "--out", str(out)])
        assert code == 0
        lines = (out / "window_stats.csv").read_text().strip().splitlines()
        assert len(lines) == 3
