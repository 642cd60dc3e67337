import logging

import pytest
import sympy

from src.core.config_manager import SEED_ENV_VAR, ConfigManager, SearchConfig


@pytest.fixture
def write_yaml(tmp_path):
    def write(text):
        path = tmp_path / "config.yaml"
        path.write_text(text)
        return path

    return write


@pytest.fixture(autouse=True)
def no_seed_env(monkeypatch):
    monkeypatch.delenv(SEED_ENV_VAR, raising=False)


def test_defaults(write_yaml):
    manager = ConfigManager(write_yaml(""))
    cfg = manager.search_config()
    assert cfg == SearchConfig()
    settings = manager.verification_settings()
    assert settings.table4_lambda_points == (sympy.Rational(1, 3), 2, sympy.Rational(3, 2))
    assert settings.membership_degree_bound == 3
    assert manager.logging_settings() == ("WARNING", "[%(levelname)s] - %(message)s")


def test_values_override_defaults(write_yaml):
    manager = ConfigManager(write_yaml("search:\n  restarts: 7\nverification:\n  sample_seed: 9\n"))
    assert manager.search_config().restarts == 7
    assert manager.verification_settings().sample_seed == 9


def test_invalid_value_falls_back(write_yaml, caplog):
    with caplog.at_level(logging.ERROR):
        manager = ConfigManager(write_yaml("search:\n  restarts: -3\n  max_iters: many\n"))
    assert manager.search_config().restarts == 100
    assert manager.search_config().max_iters == 400
    assert "search.restarts must be a positive integer" in caplog.text


def test_threshold_must_stay_below_floor(write_yaml, caplog):
    with caplog.at_level(logging.ERROR):
        manager = ConfigManager(write_yaml("search:\n  success_threshold: 1.0e-3\n"))
    cfg = manager.search_config()
    assert cfg.success_threshold < cfg.failure_floor
    assert "failure_floor" in caplog.text


def test_unknown_section_and_key(write_yaml, caplog):
    with caplog.at_level(logging.WARNING):
        ConfigManager(write_yaml("plots:\n  x: 1\nsearch:\n  speed: 3\n"))
    assert "Unknown section 'plots'" in caplog.text
    assert "Unknown key 'search.speed'" in caplog.text


def test_seed_precedence(write_yaml, monkeypatch):
    manager = ConfigManager(write_yaml("search:\n  seed: 11\n"))
    assert manager.resolve_seed() == 11
    monkeypatch.setenv(SEED_ENV_VAR, "22")
    assert manager.resolve_seed() == 22
    assert manager.resolve_seed(33) == 33
    assert manager.search_config(33).seed == 33


def test_bad_env_seed_is_ignored(write_yaml, monkeypatch, caplog):
    manager = ConfigManager(write_yaml("search:\n  seed: 11\n"))
    monkeypatch.setenv(SEED_ENV_VAR, "abc")
    with caplog.at_level(logging.ERROR):
        assert manager.resolve_seed() == 11
    assert SEED_ENV_VAR in caplog.text


def test_overrides_skip_none(write_yaml):
    manager = ConfigManager(write_yaml(""))
    cfg = manager.search_config(None, restarts=3, max_iters=None)
    assert cfg.restarts == 3
    assert cfg.max_iters == 400


def test_missing_file_exits(tmp_path):
    with pytest.raises(SystemExit) as info:
        ConfigManager(tmp_path / "missing.yaml")
    assert info.value.code == 2


def test_unreadable_yaml_exits(write_yaml):
    with pytest.raises(SystemExit):
        ConfigManager(write_yaml("search: [unclosed\n"))


def test_search_config_validates():
    with pytest.raises(ValueError):
        SearchConfig(restarts=0)
    with pytest.raises(ValueError):
        SearchConfig(success_threshold=1.0, failure_floor=0.5)
    with pytest.raises(ValueError):
        SearchConfig(max_condition=1.0)


def test_condition_bound_is_validated(write_yaml, caplog):
    with caplog.at_level(logging.ERROR):
        manager = ConfigManager(write_yaml("search:\n  max_condition: 0.5\n  check_tolerance: 1.0e-6\n"))
    cfg = manager.search_config()
    assert cfg.max_condition == 1000.0
    assert cfg.check_tolerance == 1.0e-6
    assert "search.max_condition must be a number greater than 1" in caplog.text
