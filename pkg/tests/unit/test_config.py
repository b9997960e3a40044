"""Tests for the configuration factory and file loader."""

import math
import os
from unittest.mock import patch

import pytest

from src.utils.exceptions import ConfigurationError


class TestConfigFactory:
    """Tests for get_config() lazy factory and reset_config()."""

    def test_import_does_not_trigger_config_init(self):
        """Importing the config module does not build a config."""
        import src.models.config as config_module

        config_module.reset_config()
        assert config_module._config is None

    def test_get_config_returns_gausscap_config(self):
        from src.models.config import GaussCapConfig, get_config

        assert isinstance(get_config(), GaussCapConfig)

    def test_get_config_is_singleton(self):
        """Calling get_config() twice returns the same object."""
        from src.models.config import get_config

        assert get_config() is get_config()

    def test_reset_config_clears_singleton(self):
        from src.models.config import get_config, reset_config

        config1 = get_config()
        reset_config()
        assert get_config() is not config1

    def test_get_config_reads_env_vars_at_call_time(self):
        """Config reads env vars when get_config() is called, not at import time."""
        from src.models.config import get_config, reset_config

        with patch.dict(os.environ, {"GAUSSCAP_LOG_BASE": "e"}):
            reset_config()
            assert get_config().log_base == "e"

        reset_config()
        with patch.dict(os.environ, {"GAUSSCAP_LOG_BASE": "2"}):
            assert get_config().log_base == "2"

    def test_get_config_reads_dotenv_in_working_directory(self, tmp_path, monkeypatch):
        """A .env next to the caller fills unset variables; set ones win."""
        from src.models.config import get_config, reset_config

        dotenv = tmp_path / ".env"
        dotenv.write_text("GAUSSCAP_LOG_BASE=e\nGAUSSCAP_CUTOFF=40\n", encoding="utf-8")
        monkeypatch.chdir(tmp_path)
        with patch.dict(os.environ, {"GAUSSCAP_CUTOFF": "50"}):
            os.environ.pop("GAUSSCAP_LOG_BASE", None)
            reset_config()
            config = get_config()
            assert config.log_base == "e"
            assert config.cutoff == 50

    def test_set_config_installs_instance(self):
        from src.models.config import GaussCapConfig, get_config, set_config

        config = GaussCapConfig(cutoff=80)
        set_config(config)
        assert get_config() is config


class TestGaussCapConfig:
    """Tests for defaults, env overrides and validation."""

    def test_defaults(self):
        from src.models.config import GaussCapConfig

        with patch.dict(os.environ, {"GAUSSCAP_THREADS": "3"}):
            config = GaussCapConfig()
        assert config.cutoff == 60
        assert config.joint_cutoff == 30
        assert config.quadrature_nodes == 24
        assert config.threads == 3
        assert config.figure_n_list == (0.1, 1.0, 10.0)

    def test_log_base_value(self):
        from src.models.config import GaussCapConfig

        assert GaussCapConfig(log_base="2").log_base_value == 2.0
        assert GaussCapConfig(log_base="e").log_base_value == math.e

    def test_explicit_value_wins_over_env(self):
        from src.models.config import GaussCapConfig

        with patch.dict(os.environ, {"GAUSSCAP_CUTOFF": "90"}):
            assert GaussCapConfig().cutoff == 90
            assert GaussCapConfig(cutoff=70).cutoff == 70

    def test_nonpositive_threads_fall_back_to_available_cpus(self):
        from src.models.config import GaussCapConfig

        assert GaussCapConfig(threads=0).threads >= 1

    def test_invalid_log_base(self):
        from src.models.config import GaussCapConfig

        with pytest.raises(ConfigurationError, match="GAUSSCAP_LOG_BASE"):
            GaussCapConfig(log_base="10")

    def test_invalid_integer_in_env(self):
        from src.models.config import GaussCapConfig

        with (
            patch.dict(os.environ, {"GAUSSCAP_CUTOFF": "many"}),
            pytest.raises(ConfigurationError, match="Invalid integer"),
        ):
            GaussCapConfig()

    def test_cutoff_too_small(self):
        from src.models.config import GaussCapConfig

        with pytest.raises(ConfigurationError, match="cutoffs"):
            GaussCapConfig(cutoff=1)

    def test_unknown_field_rejected(self):
        from src.models.config import GaussCapConfig

        with pytest.raises(TypeError, match="Unexpected GaussCapConfig"):
            GaussCapConfig(bucket="x")


class TestConfigFile:
    """Tests for the key=value settings file."""

    def test_load_config_file(self, tmp_path):
        from src.models.config import load_config_file

        path = tmp_path / "gausscap.conf"
        path.write_text(
            "# figure settings\n\nfigure_n_list = 0.5, 2\ncutoff=80  # larger\nlog_base=e\n",
            encoding="utf-8",
        )
        values = load_config_file(path)
        assert values == {"figure_n_list": (0.5, 2.0), "cutoff": 80, "log_base": "e"}

    def test_unknown_key(self, tmp_path):
        from src.models.config import load_config_file

        path = tmp_path / "bad.conf"
        path.write_text("bucket=x\n", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="unknown setting 'bucket'"):
            load_config_file(path)

    def test_malformed_line(self, tmp_path):
        from src.models.config import load_config_file

        path = tmp_path / "bad.conf"
        path.write_text("cutoff 80\n", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="expected key=value"):
            load_config_file(path)

    def test_bad_value_and_unknown_key_reported_together(self):
        from src.models.config import parse_config_values

        with pytest.raises(ConfigurationError, match="unknown setting.*; invalid value"):
            parse_config_values({"colour": "red", "cutoff": "lots"})

    def test_missing_file_raises_oserror(self, tmp_path):
        from src.models.config import load_config_file

        with pytest.raises(OSError):
            load_config_file(tmp_path / "absent.conf")
