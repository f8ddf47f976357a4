import logging

import pytest
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler

from gabriel_roiter.config import get_settings, load_env
from gabriel_roiter.schemas import QuiverSpec, RunConfig
from gabriel_roiter.utils import configure_logging, emit_json, format_value


def test_defaults():
    settings = get_settings()
    assert settings.iteration_cap == 8
    assert settings.max_len_cap == 7
    assert settings.max_prime == 7
    assert settings.hom_dim_cap == 20


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("GR_ITERATION_CAP", "3")
    monkeypatch.setenv("GR_LOG_LEVEL", "DEBUG")
    get_settings.cache_clear()
    assert get_settings().iteration_cap == 3
    assert get_settings().log_level == "DEBUG"


def test_bad_environment_value(monkeypatch):
    monkeypatch.setenv("GR_MAX_PRIME", "1")
    get_settings.cache_clear()
    with pytest.raises(ValidationError):
        get_settings()


def test_dotenv_file_does_not_override(monkeypatch, tmp_path):
    env = tmp_path / ".env"
    env.write_text("GR_HOM_DIM_CAP=5\nGR_ORBIT_BUDGET=64\n")
    monkeypatch.setenv("GR_HOM_DIM_CAP", "9")
    monkeypatch.delenv("GR_ORBIT_BUDGET", raising=False)
    load_env(env)
    monkeypatch.setenv("GR_ORBIT_BUDGET", "64")  # registered for cleanup
    get_settings.cache_clear()
    assert get_settings().hom_dim_cap == 9
    assert get_settings().orbit_budget == 64


def test_run_config_caps():
    assert RunConfig(command="measure", n=8).n == 8
    with pytest.raises(ValidationError):
        RunConfig(command="measure", n=9)
    with pytest.raises(ValidationError):
        RunConfig(command="quiver", max_len=8)
    with pytest.raises(ValidationError):
        RunConfig(command="quiver", field=4)
    with pytest.raises(ValidationError):
        RunConfig(command="quiver", field=11)


def test_quiver_spec_aliases():
    spec = QuiverSpec.model_validate({"vertices": ["1"], "maxLen": 3, "simpleLengths": {"1": "2"}})
    assert spec.max_len == 3
    assert spec.simple_lengths == {"1": "2"}
    assert spec.p == 2


def test_logging_goes_through_rich():
    configure_logging("debug")
    configure_logging("info")
    logger = logging.getLogger("gabriel_roiter")
    assert logger.level == logging.INFO
    assert sum(isinstance(h, RichHandler) for h in logger.handlers) == 1


def test_rendering():
    assert format_value(["1", ["2", "3"]]) == "{1, {2, 3}}"
    out = Console(record=True, width=40)
    emit_json({"order": ["a", "b"]}, out=out)
    assert '"order"' in out.export_text()
