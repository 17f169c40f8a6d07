"""Tests for configuration loading."""

import pytest
from pydantic import ValidationError

from coxtype.config import DEFAULT_CONFIG, Config, load_config
from coxtype.exceptions import ConfigError


class TestConfig:
    """Tests for the Config model."""

    def test_defaults(self):
        config = Config()
        assert config.adm_budget == 40
        assert config.max_rank == 8
        assert config.workers == 1
        assert config.verify_closures

    def test_frozen(self):
        with pytest.raises(ValidationError):
            DEFAULT_CONFIG.workers = 4

    def test_max_rank_bound(self):
        with pytest.raises(ValidationError):
            Config(max_rank=9)


class TestLoadConfig:
    """Tests for load_config."""

    def test_none_gives_defaults(self):
        assert load_config(None) is DEFAULT_CONFIG

    def test_table(self, tmp_path):
        path = tmp_path / "coxtype.toml"
        path.write_text("[coxtype]\nadm_budget = 20\nworkers = 2\n")
        config = load_config(path)
        assert config.adm_budget == 20
        assert config.workers == 2
        assert config.max_rank == 8

    def test_top_level(self, tmp_path):
        path = tmp_path / "coxtype.toml"
        path.write_text("verify_closures = false\n")
        assert not load_config(path).verify_closures

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            load_config(tmp_path / "absent.toml")

    def test_bad_toml(self, tmp_path):
        path = tmp_path / "coxtype.toml"
        path.write_text("[coxtype\n")
        with pytest.raises(ConfigError, match="Invalid TOML"):
            load_config(path)

    @pytest.mark.parametrize("body", ["[coxtype]\ncolour = 1\n", "[coxtype]\nmax_rank = 9\n"])
    def test_bad_values(self, tmp_path, body):
        path = tmp_path / "coxtype.toml"
        path.write_text(body)
        with pytest.raises(ConfigError, match="Invalid configuration"):
            load_config(path)
