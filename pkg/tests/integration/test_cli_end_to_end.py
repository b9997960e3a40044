"""The gausscap command line, argv to exit code."""

import io
import json

import pytest

from app import main
from src.services.gaussian_state import g_function
from src.services.report_writer import parse_number, read_csv_table

pytestmark = [pytest.mark.integration, pytest.mark.slow]


@pytest.fixture
def small_grid_config(tmp_path):
    """Settings file that shrinks the figure grids."""
    path = tmp_path / "gausscap.conf"
    path.write_text(
        "figure_k_steps = 11\nfigure_nc_steps = 5\nfigure_n_list = 0.5, 2\n", encoding="utf-8"
    )
    return path


class TestOneMode:
    def test_json_report(self, capsys):
        assert main(["onemode", "--k", "0.8", "--n", "1", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["schema"] == 1
        assert payload["log_base"] == "2"
        assert payload["h_in"] == pytest.approx(2.0, rel=1e-11)
        assert payload["h_exch"] == pytest.approx(g_function(0.36, 2.0), rel=1e-11)

    def test_log_base_flag(self, capsys):
        argv = ["--log-base", "e", "onemode", "--k", "0.8", "--n", "1", "--format", "json"]
        assert main(argv) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["log_base"] == "e"
        assert payload["h_in"] == pytest.approx(2.0 * 0.6931471805599453, rel=1e-11)

    def test_dotenv_in_working_directory(self, capsys, tmp_path, monkeypatch):
        (tmp_path / ".env").write_text("GAUSSCAP_LOG_BASE=e\n", encoding="utf-8")
        monkeypatch.chdir(tmp_path)
        monkeypatch.delenv("GAUSSCAP_LOG_BASE")
        argv = ["onemode", "--k", "1", "--nc", "0", "--n", "1", "--format", "json"]
        assert main(argv) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["log_base"] == "e"
        assert payload["c_e"] == pytest.approx(4.0 * 0.6931471805599453, rel=1e-11)

    def test_environment_wins_over_dotenv(self, capsys, tmp_path, monkeypatch):
        (tmp_path / ".env").write_text("GAUSSCAP_LOG_BASE=e\n", encoding="utf-8")
        monkeypatch.chdir(tmp_path)
        monkeypatch.setenv("GAUSSCAP_LOG_BASE", "2")
        argv = ["onemode", "--k", "1", "--nc", "0", "--n", "1", "--format", "json"]
        assert main(argv) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["log_base"] == "2"
        assert payload["c_e"] == pytest.approx(4.0, rel=1e-11)

    def test_text_is_default(self, capsys):
        assert main(["onemode", "--k", "0.5", "--nc", "0.5", "--n", "0.2"]) == 0
        out = capsys.readouterr().out
        assert "q_theta" in out
        assert "log_base" in out

    def test_negative_power_is_usage_error(self, capsys):
        assert main(["onemode", "--k", "0.5", "--n", "-1"]) == 2
        assert "error:" in capsys.readouterr().err


class TestFigure:
    def test_figure_to_file(self, tmp_path, small_grid_config):
        out = tmp_path / "fig4.csv"
        code = main(["--config", str(small_grid_config), "figure", "--id", "4", "--out", str(out)])
        assert code == 0
        with out.open(encoding="utf-8") as handle:
            header, rows = read_csv_table(handle)
        assert header == ["k", "j_n0.7", "q_g", "q_theta"]
        assert len(rows) == 11
        for row in rows:
            assert parse_number(row["q_theta"]) >= parse_number(row["q_g"]) - 1e-9

    def test_n_list_flag_overrides_config(self, capsys, small_grid_config):
        argv = ["--config", str(small_grid_config), "figure", "--id", "1", "--n-list", "0.1,1"]
        assert main(argv) == 0
        header, rows = read_csv_table(io.StringIO(capsys.readouterr().out))
        assert header == ["k", "gain_n0.1", "gain_n1"]
        assert len(rows) == 11

    def test_unknown_figure_id(self, capsys):
        assert main(["figure", "--id", "7"]) == 2

    def test_unwritable_output(self, tmp_path, small_grid_config):
        out = tmp_path / "missing" / "fig.csv"
        code = main(["--config", str(small_grid_config), "figure", "--id", "3", "--out", str(out)])
        assert code == 3


class TestSweep:
    def test_geometric_csv(self, capsys):
        argv = ["sweep", "--param", "n", "--from", "0.1", "--to", "10", "--steps", "5", "--log"]
        assert main([*argv, "--k", "0.8"]) == 0
        header, rows = read_csv_table(io.StringIO(capsys.readouterr().out))
        assert header[:3] == ["k", "nc", "n"]
        powers = [parse_number(row["n"]) for row in rows]
        assert powers == pytest.approx([0.1, 0.316227766017, 1.0, 3.16227766017, 10.0], rel=1e-11)
        assert all(parse_number(row["k"]) == 0.8 for row in rows)

    def test_bad_steps(self):
        assert main(["sweep", "--param", "k", "--from", "0", "--to", "1", "--steps", "0"]) == 2


class TestValidate:
    def test_quick_json(self, capsys):
        assert main(["validate", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["schema"] == 1
        assert payload["failures"] == 0
        assert len(payload["checks"]) == 12

    def test_small_cutoff_fails(self, capsys):
        assert main(["validate", "--cutoff", "10"]) == 1
        assert "validation check(s) failed" in capsys.readouterr().err


class TestUsage:
    def test_unknown_subcommand(self):
        assert main(["capacity"]) == 2

    def test_help(self, capsys):
        assert main(["--help"]) == 0
        assert "onemode" in capsys.readouterr().out

    def test_missing_config_file(self, tmp_path):
        missing = str(tmp_path / "absent.conf")
        assert main(["--config", missing, "onemode", "--k", "1", "--n", "1"]) == 3

    def test_unknown_config_key(self, tmp_path):
        path = tmp_path / "bad.conf"
        path.write_text("bucket = images\n", encoding="utf-8")
        assert main(["--config", str(path), "onemode", "--k", "1", "--n", "1"]) == 2
