"""Command-line parsing, CSV ingestion, and artifact emission."""

import io
import json
import os

import numpy as np
import pytest
from click.testing import CliRunner

from otbounds import (
    EmptyGroup,
    MissingColumn,
    NonBinaryTreatment,
    NonNumericCell,
    ObservedSample,
    SynthConfig,
    generate,
    preset,
)
from otbounds.cli import main, parse_cost, parse_csv, parse_eta_grid, run, write_csv
from otbounds.cost_model import QuadraticCost

FIXTURE = os.path.join(os.path.dirname(__file__), "data", "sample50.csv")


@pytest.fixture
def runner():
    return CliRunner()


class TestEtaGridParsing:
    def test_comma_list(self):
        assert list(parse_eta_grid("0,1,10")) == [0.0, 1.0, 10.0]

    def test_log_range(self):
        values = list(parse_eta_grid("1:100:3"))
        np.testing.assert_allclose(values, [1.0, 10.0, 100.0], rtol=1e-12)

    def test_log_range_rejects_zero_start(self):
        with pytest.raises(ValueError, match="comma list"):
            parse_eta_grid("0:100:3")

    @pytest.mark.parametrize("text", ["10:1:3", "1:100:1", "1:2", "abc", ""])
    def test_rejects_malformed(self, text):
        with pytest.raises(ValueError):
            parse_eta_grid(text)


class TestCostParsing:
    def test_presets(self):
        assert parse_cost("sq-sum", 1).a12[0, 0] == 1.0
        assert parse_cost("sq-diff", 2).a12[0, 0] == -1.0
        assert parse_cost("product", 1).a12[0, 0] == 0.5

    def test_quadratic_file(self, tmp_path):
        path = tmp_path / "q.json"
        path.write_text(json.dumps({"a11": [[1.0]], "a12": [[0.0]], "a22": [[1.0]]}))
        spec = parse_cost(f"quadratic:{path}", 1)
        assert isinstance(spec, QuadraticCost)

    def test_rejects_unknown(self):
        with pytest.raises(ValueError, match="sq-sum"):
            parse_cost("cubic", 1)

    def test_rejects_dimension_clash(self, tmp_path):
        path = tmp_path / "q.json"
        path.write_text(json.dumps({"a11": [[1.0]], "a12": [[0.0]], "a22": [[1.0]]}))
        with pytest.raises(ValueError):
            parse_cost(f"quadratic:{path}", 2)


class TestParseCsv:
    def write(self, tmp_path, text: str) -> str:
        path = tmp_path / "in.csv"
        path.write_text(text)
        return str(path)

    def test_minimal_two_rows(self, tmp_path):
        path = self.write(tmp_path, "w,y1,z1\n0,1.0,0.5\n1,2.0,0.5\n")
        sample = parse_csv(path)
        assert (sample.n, sample.m, sample.y_dim, sample.z_dim) == (1, 1, 1, 1)

    def test_round_trip_is_bit_identical(self, tmp_path):
        rng = np.random.default_rng(60)
        w = np.concatenate([np.zeros(48, dtype=int), np.ones(52, dtype=int)])
        sample = ObservedSample(
            w=w, y=rng.standard_normal((100, 2)), z=rng.standard_normal((100, 3))
        )
        path = str(tmp_path / "round.csv")
        write_csv(sample, path)
        back = parse_csv(path)
        np.testing.assert_array_equal(back.w, sample.w)
        np.testing.assert_array_equal(back.y, sample.y)
        np.testing.assert_array_equal(back.z, sample.z)

    def test_write_accepts_file_objects(self):
        sample = ObservedSample(w=[0, 1], y=[1.0, 2.0], z=[3.0, 4.0])
        buffer = io.StringIO()
        write_csv(sample, buffer)
        assert buffer.getvalue().splitlines()[0] == "w,y1,z1"

    def test_non_binary_treatment_names_the_row(self, tmp_path):
        path = self.write(tmp_path, "w,y1,z1\n0,1.0,0.5\n2,2.0,0.5\n")
        with pytest.raises(NonBinaryTreatment, match="line 3"):
            parse_csv(path)

    def test_non_numeric_cell_names_row_and_column(self, tmp_path):
        path = self.write(tmp_path, "w,y1,z1\n0,oops,0.5\n1,2.0,0.5\n")
        with pytest.raises(NonNumericCell, match="line 2.*y1"):
            parse_csv(path)

    def test_missing_treatment_column(self, tmp_path):
        path = self.write(tmp_path, "y1,z1\n1.0,0.5\n")
        with pytest.raises(MissingColumn):
            parse_csv(path)

    def test_header_order_is_enforced(self, tmp_path):
        path = self.write(tmp_path, "w,z1,y1\n0,1.0,0.5\n1,2.0,0.5\n")
        with pytest.raises(MissingColumn):
            parse_csv(path)

    def test_short_row_is_reported(self, tmp_path):
        path = self.write(tmp_path, "w,y1,z1\n0,1.0\n1,2.0,0.5\n")
        with pytest.raises(MissingColumn, match="line 2"):
            parse_csv(path)

    def test_empty_file(self, tmp_path):
        path = self.write(tmp_path, "")
        with pytest.raises(MissingColumn):
            parse_csv(path)

    def test_header_only_file(self, tmp_path):
        path = self.write(tmp_path, "w,y1,z1\n")
        with pytest.raises(EmptyGroup):
            parse_csv(path)


class TestCommands:
    def test_oracle_at_eta_zero_equals_unconditional_bound(self, runner):
        result = runner.invoke(
            main, ["oracle", "--beta0", "0.8", "--beta1", "1.6", "--eta", "0"]
        )
        assert result.exit_code == 0, result.output
        payload = json.loads(result.output)
        assert payload["v_u"] == pytest.approx(0.36744374062753427, rel=1e-9)
        assert payload["results"][0]["v_ip"] == pytest.approx(payload["v_u"], abs=1e-12)
        assert payload["v_c"] == pytest.approx(5.76, rel=1e-9)

    def test_sweep_on_bundled_fixture(self, runner):
        result = runner.invoke(
            main, ["sweep", "--input", FIXTURE, "--eta", "0,1,10"]
        )
        assert result.exit_code == 0, result.output
        rows = json.loads(result.output)["results"]
        assert len(rows) == 3
        lowers = [row["lower"] for row in rows]
        assert lowers == sorted(lowers)

    def test_bounds_requires_single_eta(self, runner):
        result = runner.invoke(
            main, ["bounds", "--input", FIXTURE, "--eta", "0,1"]
        )
        assert result.exit_code != 0
        assert "sweep" in result.output  # hint at the grid command

    def test_bounds_single_side(self, runner):
        result = runner.invoke(
            main, ["bounds", "--input", FIXTURE, "--eta", "5", "--side", "lower"]
        )
        assert result.exit_code == 0, result.output
        payload = json.loads(result.output)
        assert payload["config"]["side"] == "lower"
        (row,) = payload["results"]
        assert {"eta", "lower", "lower_penalty"} <= set(row)
        assert "upper" not in row

    def test_json_output_is_deterministic(self, runner):
        args = ["sweep", "--preset", "linear-location", "--n", "30", "--m", "30",
                "--seed", "4", "--eta", "0,5"]
        first = runner.invoke(main, args)
        second = runner.invoke(main, args)
        assert first.exit_code == 0
        assert first.output == second.output

    def test_csv_format(self, runner):
        result = runner.invoke(
            main,
            ["sweep", "--preset", "linear-location", "--n", "20", "--m", "20",
             "--eta", "0,5", "--format", "csv"],
        )
        assert result.exit_code == 0
        lines = result.output.strip().splitlines()
        assert lines[0].startswith("eta,")
        assert len(lines) == 3

    def test_table_format(self, runner):
        result = runner.invoke(
            main,
            ["neyman", "--preset", "linear-location", "--n", "40", "--m", "40",
             "--eta", "0,10", "--format", "table"],
        )
        assert result.exit_code == 0
        assert "rel_size" in result.output

    def test_synth_error_study(self, runner):
        result = runner.invoke(
            main,
            ["synth", "--preset", "linear-location", "--eta", "5",
             "--sizes", "20,40", "--seeds", "2"],
        )
        assert result.exit_code == 0, result.output
        payload = json.loads(result.output)
        assert [row["n"] for row in payload["results"]] == [20, 40]
        assert all(row["mean_abs_error"] > 0 for row in payload["results"])

    def test_synth_dump_sample_round_trips(self, runner, tmp_path):
        out = str(tmp_path / "sample.csv")
        result = runner.invoke(
            main,
            ["synth", "--preset", "scale", "--n", "15", "--m", "10",
             "--seed", "3", "--dump-sample", "--output", out],
        )
        assert result.exit_code == 0, result.output
        sample = parse_csv(out)
        assert (sample.n, sample.m) == (15, 10)
        direct = generate(SynthConfig(model=preset("scale"), n=15, m=10, seed=3))
        np.testing.assert_array_equal(sample.y, direct.y)

    def test_rate_smoke(self, runner):
        result = runner.invoke(
            main,
            ["rate", "--beta0", "0.8", "--beta1", "1.6", "--eta", "10",
             "--sizes", "20,40", "--seeds", "2"],
        )
        assert result.exit_code == 0, result.output
        payload = json.loads(result.output)
        assert "slope" in payload
        assert len(payload["results"]) == 2

    def test_corr_command_with_clamp(self, runner):
        result = runner.invoke(
            main,
            ["corr", "--preset", "linear-location", "--n", "40", "--m", "40",
             "--eta", "0,10", "--clamp"],
        )
        assert result.exit_code == 0, result.output
        rows = json.loads(result.output)["results"]
        assert all(-1.0 <= row["rho_lower"] <= row["rho_upper"] <= 1.0 for row in rows)

    def test_version_flag(self, runner):
        result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0


class TestErrorSurface:
    def test_empty_input_file_fails_cleanly(self, runner, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        result = runner.invoke(main, ["bounds", "--input", str(path), "--eta", "0"])
        assert result.exit_code != 0
        assert "header" in result.output or "column" in result.output.lower()

    def test_input_and_preset_are_exclusive(self, runner):
        result = runner.invoke(
            main, ["sweep", "--input", FIXTURE, "--preset", "scale", "--eta", "0"]
        )
        assert result.exit_code != 0

    def test_data_commands_need_some_input(self, runner):
        result = runner.invoke(main, ["neyman"])
        assert result.exit_code != 0

    def test_failed_run_leaves_no_output_artifact(self, runner, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("w,y1,z1\n0,nope,1\n1,2,3\n")
        out = tmp_path / "result.json"
        result = runner.invoke(
            main, ["sweep", "--input", str(bad), "--eta", "0", "--output", str(out)]
        )
        assert result.exit_code != 0
        assert not out.exists()

    def test_unwritable_output_fails_after_computation(self, runner, tmp_path):
        out = tmp_path / "missing-dir" / "result.json"
        result = runner.invoke(
            main, ["oracle", "--beta0", "0.1", "--beta1", "0.2", "--eta", "0",
                   "--output", str(out)]
        )
        assert result.exit_code != 0
        assert not out.exists()


class TestRunConfigDriver:
    def test_run_returns_rendered_json(self):
        from otbounds.cli import RunConfig

        config = RunConfig(
            command="oracle", beta0=0.8, beta1=1.6, etas=parse_eta_grid("0,10")
        )
        payload = json.loads(run(config))
        assert payload["config"]["command"] == "oracle"
        assert [row["eta"] for row in payload["results"]] == [0.0, 10.0]

    def test_run_writes_atomically(self, tmp_path):
        from otbounds.cli import RunConfig

        out = tmp_path / "report.json"
        config = RunConfig(
            command="oracle", beta0=0.5, beta1=0.5,
            etas=parse_eta_grid("0"), output=str(out),
        )
        run(config)
        payload = json.loads(out.read_text())
        assert payload["results"][0]["v_ip"] == pytest.approx(0.0, abs=1e-12)
        leftovers = [p for p in os.listdir(tmp_path) if p != "report.json"]
        assert leftovers == []

    def test_floats_are_twelve_significant_digits(self):
        from otbounds.cli import RunConfig

        text = run(
            RunConfig(command="oracle", beta0=0.8, beta1=1.6, etas=parse_eta_grid("10"))
        )
        value = json.loads(text)["results"][0]["v_ip"]
        assert value == pytest.approx(4.5930430619817155, rel=1e-11)
        assert len(repr(value).replace("-", "").replace(".", "").lstrip("0")) <= 12
