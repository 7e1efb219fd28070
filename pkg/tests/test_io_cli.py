import json

import numpy as np
import pytest

from phasestab.cli import main
from phasestab.experiments import gaussian, triangle_spectrum
from phasestab.grid import GridSpec, SampledFunction, Spectrum, inverse_transform, shift
from phasestab.io import load_field, save_field

GRID = GridSpec.uniform(1, 16.0, 1024)


@pytest.fixture
def gaussian_file(tmp_path):
    path = tmp_path / "f.json"
    save_field(path, gaussian(GRID))
    return path


@pytest.fixture
def shifted_file(tmp_path):
    path = tmp_path / "g.json"
    save_field(path, shift(gaussian(GRID), 0.1))
    return path


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------


class TestFieldFiles:
    def test_roundtrip_space(self, tmp_path, rng):
        f = SampledFunction(GRID, rng.normal(size=GRID.shape) + 1j * rng.normal(size=GRID.shape))
        path = tmp_path / "field.json"
        save_field(path, f)
        loaded = load_field(path)
        assert isinstance(loaded, SampledFunction)
        assert loaded.grid == GRID
        assert np.array_equal(loaded.values, f.values)

    def test_roundtrip_frequency(self, tmp_path):
        F = triangle_spectrum(GridSpec.uniform(1, 2.0, 256))
        path = tmp_path / "spec.json"
        save_field(path, F)
        loaded = load_field(path)
        assert isinstance(loaded, Spectrum)
        assert np.array_equal(loaded.values, F.values)

    def test_roundtrip_2d(self, tmp_path, grid_2d):
        f = gaussian(grid_2d)
        path = tmp_path / "f2.json"
        save_field(path, f)
        loaded = load_field(path)
        assert loaded.grid == grid_2d
        assert np.array_equal(loaded.values, f.values)

    def test_exact_schema(self, gaussian_file):
        payload = json.loads(gaussian_file.read_text())
        assert set(payload) == {
            "dimension",
            "half_extent",
            "points_per_axis",
            "domain",
            "values_re",
            "values_im",
        }
        assert payload["domain"] == "space"
        assert payload["dimension"] == 1
        assert payload["half_extent"] == [16.0]
        assert payload["points_per_axis"] == [1024]
        assert len(payload["values_re"]) == 1024

    def test_missing_field(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"dimension": 1}')
        with pytest.raises(ValueError, match="missing required fields"):
            load_field(path)

    def test_nan_sample(self, tmp_path, gaussian_file):
        payload = json.loads(gaussian_file.read_text())
        payload["values_re"][5] = None  # json null -> nan
        bad = tmp_path / "nan.json"
        bad.write_text(json.dumps(payload))
        with pytest.raises(ValueError, match="non-finite sample"):
            load_field(bad)

    def test_bad_domain(self, tmp_path, gaussian_file):
        payload = json.loads(gaussian_file.read_text())
        payload["domain"] = "fourier"
        bad = tmp_path / "dom.json"
        bad.write_text(json.dumps(payload))
        with pytest.raises(ValueError, match="domain"):
            load_field(bad)

    def test_length_mismatch(self, tmp_path, gaussian_file):
        payload = json.loads(gaussian_file.read_text())
        payload["values_re"] = payload["values_re"][:-1]
        bad = tmp_path / "len.json"
        bad.write_text(json.dumps(payload))
        with pytest.raises(ValueError):
            load_field(bad)

    def test_odd_point_count(self, tmp_path):
        bad = tmp_path / "odd.json"
        bad.write_text(
            json.dumps(
                {
                    "dimension": 1,
                    "half_extent": [1.0],
                    "points_per_axis": [7],
                    "domain": "space",
                    "values_re": [0.0] * 7,
                    "values_im": [0.0] * 7,
                }
            )
        )
        with pytest.raises(ValueError, match="even"):
            load_field(bad)

    def test_malformed_json(self, tmp_path):
        bad = tmp_path / "broken.json"
        bad.write_text("{not json")
        with pytest.raises(ValueError, match="malformed JSON"):
            load_field(bad)


# ---------------------------------------------------------------------------
# CLI: verify
# ---------------------------------------------------------------------------


class TestCmdVerify:
    def test_identical_files_certify(self, gaussian_file, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(
            ["verify", "--f", str(gaussian_file), "--g", str(gaussian_file), "--p", "1.0",
             "--out", str(out)]
        )
        assert code == 0
        report = json.loads(out.read_text())
        assert report["lhs"] == 0.0
        assert report["slack"] == report["rhs"]
        assert report["config"]["p"] == 1.0

    def test_shifted_gaussian_report(self, gaussian_file, shifted_file, tmp_path):
        out = tmp_path / "report.json"
        code = main(
            ["verify", "--f", str(gaussian_file), "--g", str(shifted_file), "--p", "1",
             "--out", str(out)]
        )
        assert code == 0
        report = json.loads(out.read_text())
        assert report["term_translation"] > 0.0
        assert report["term_modulus"] <= 1e-10
        assert report["slack"] >= -1e-6 * report["rhs"]
        expected_keys = [
            "p", "epsilon", "lhs", "term_modulus", "term_smoothness",
            "term_translation", "rhs", "slack", "squared_form_slack", "config",
        ]
        assert list(report) == expected_keys

    def test_nan_file_is_input_error(self, tmp_path, gaussian_file, capsys):
        payload = json.loads(gaussian_file.read_text())
        payload["values_im"][0] = None
        bad = tmp_path / "nan.json"
        bad.write_text(json.dumps(payload))
        code = main(["verify", "--f", str(bad), "--g", str(gaussian_file), "--p", "1.0"])
        assert code == 1
        assert "non-finite sample" in capsys.readouterr().err

    def test_grid_mismatch_is_input_error(self, tmp_path, gaussian_file, capsys):
        other = tmp_path / "other.json"
        save_field(other, gaussian(GridSpec.uniform(1, 16.0, 512)))
        code = main(["verify", "--f", str(gaussian_file), "--g", str(other), "--p", "1.0"])
        assert code == 1
        assert "different grids" in capsys.readouterr().err

    def test_invalid_p_is_input_error(self, gaussian_file, capsys):
        code = main(["verify", "--f", str(gaussian_file), "--g", str(gaussian_file), "--p", "2.0"])
        assert code == 1
        assert "p must" in capsys.readouterr().err

    def test_frequency_file_rejected(self, tmp_path, gaussian_file, capsys):
        spec = tmp_path / "spec.json"
        save_field(spec, triangle_spectrum(GRID.dual()))
        code = main(["verify", "--f", str(spec), "--g", str(gaussian_file), "--p", "1.0"])
        assert code == 1
        assert "space" in capsys.readouterr().err

    def test_csv_format_roundtrips(self, gaussian_file, shifted_file, tmp_path):
        out = tmp_path / "report.csv"
        code = main(
            ["verify", "--f", str(gaussian_file), "--g", str(shifted_file), "--p", "1.25",
             "--out", str(out), "--format", "csv"]
        )
        assert code == 0
        header, row = out.read_text().strip().split("\n")
        fields = dict(zip(header.split(","), [float(v) for v in row.split(",")]))
        assert fields["p"] == 1.25
        assert fields["rhs"] == fields["term_modulus"] + fields["term_smoothness"] + fields["term_translation"]

    def test_reports_are_byte_stable(self, gaussian_file, shifted_file, tmp_path):
        out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
        args = ["verify", "--f", str(gaussian_file), "--g", str(shifted_file), "--p", "1.5"]
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()


# ---------------------------------------------------------------------------
# CLI: corollary1, lemma1, experiment
# ---------------------------------------------------------------------------


class TestCmdCorollary1:
    def test_triangle_flip_certifies(self, tmp_path):
        grid = GridSpec.uniform(1, 256.0, 8192)
        f = inverse_transform(triangle_spectrum(grid.dual()))
        f_path, g_path = tmp_path / "f.json", tmp_path / "g.json"
        save_field(f_path, f)
        save_field(g_path, -f)
        out = tmp_path / "rep.json"
        code = main(["corollary1", "--f", str(f_path), "--g", str(g_path), "--out", str(out)])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["support_measure"] == pytest.approx(2.0, abs=0.01)
        assert report["slack"] >= 0.0

    def test_complex_spectrum_rejected(self, tmp_path, capsys):
        f = gaussian(GRID, center=1.0)
        f_path = tmp_path / "f.json"
        save_field(f_path, f)
        code = main(["corollary1", "--f", str(f_path), "--g", str(f_path)])
        assert code == 1
        assert "real-valued" in capsys.readouterr().err


class TestCmdLemma1:
    def test_scan_500(self, tmp_path):
        out = tmp_path / "scan.json"
        code = main(["lemma1", "--radius-steps", "500", "--angle-steps", "500", "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["min_gap"] >= -1e-12
        assert payload["steps"] == [500, 500]
        assert len(payload["argmin_z"]) == 2

    def test_degenerate_scan(self, capsys):
        assert main(["lemma1", "--radius-steps", "2", "--angle-steps", "2"]) == 0

    def test_single_step_is_input_error(self, capsys):
        code = main(["lemma1", "--radius-steps", "1", "--angle-steps", "100"])
        assert code == 1
        assert ">= 2" in capsys.readouterr().err


class TestCmdExperiment:
    def test_tail_experiment(self, tmp_path):
        out_prefix = tmp_path / "tail"
        code = main(
            ["experiment", "--name", "tail", "--k", "2", "--n", "1", "--out", str(out_prefix)]
        )
        assert code == 0
        payload = json.loads((tmp_path / "tail.json").read_text())
        result = payload["results"][0]
        assert result["pass"] is True
        assert abs(result["fitted_slope"] - 1.5) <= 0.1
        csv_path = tmp_path / "tail.tail_k2_n1.csv"
        lines = csv_path.read_text().strip().split("\n")
        assert lines[0] == "parameter,observable"
        assert len(lines) == 1 + len(result["parameter_values"])

    def test_translation_with_custom_sweep(self, tmp_path):
        code = main(
            ["experiment", "--name", "translation", "--sweep", "0.001,0.003,0.01,0.03,0.1"]
        )
        assert code == 0

    def test_unknown_name_is_input_error(self):
        assert main(["experiment", "--name", "bogus"]) == 1

    def test_partial_grid_flags_rejected(self, capsys):
        code = main(["experiment", "--name", "translation", "--grid-n", "512"])
        assert code == 1
        assert "together" in capsys.readouterr().err

    def test_custom_grid(self):
        code = main(
            ["experiment", "--name", "translation", "--grid-n", "512", "--grid-extent", "16.0"]
        )
        assert code == 0


class TestUsage:
    def test_missing_subcommand(self):
        assert main([]) == 1

    def test_missing_required_flag(self):
        assert main(["verify", "--f", "x.json"]) == 1

    def test_nonexistent_file(self, capsys):
        code = main(["verify", "--f", "/nope/a.json", "--g", "/nope/b.json", "--p", "1.0"])
        assert code == 1
