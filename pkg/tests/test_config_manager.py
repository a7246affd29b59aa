import json

import pytest

from src.config_manager import DEFAULT_CONFIG, ConfigManager


def test_missing_file_is_created_with_defaults(tmp_path):
    path = tmp_path / "config" / "config.json"
    config = ConfigManager(str(path))
    assert path.exists()
    assert json.loads(path.read_text(encoding="utf-8")) == DEFAULT_CONFIG
    assert config.oracle.denominator == 84
    assert config.oracle.grid_denominators == [7, 12]
    assert config.criteria.epsilon == 1e-12
    assert config.harness.seed == 20240601
    assert config.output.path is None


def test_partial_file_falls_back_to_defaults(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"oracle": {"max_depth": 12}, "harness": {"workers": 2}}), encoding="utf-8")
    config = ConfigManager(str(path))
    assert config.oracle.max_depth == 12
    assert config.oracle.denominator == 84
    assert config.harness.workers == 2
    assert config.harness.chunk_size == 2187
    assert config.as_dict()["output"]["format"] == "text"


def test_update_persists(tmp_path):
    path = tmp_path / "config.json"
    config = ConfigManager(str(path))
    config.update("oracle", "denominator", 120)
    assert ConfigManager(str(path)).oracle.denominator == 120


@pytest.mark.parametrize("section, key", [("printer", "name"), ("oracle", "depth")])
def test_update_rejects_unknown_keys(tmp_path, section, key):
    config = ConfigManager(str(tmp_path / "config.json"))
    with pytest.raises(KeyError):
        config.update(section, key, 1)


def test_defaults_are_not_shared(tmp_path):
    first = ConfigManager(str(tmp_path / "a.json"))
    first.update("oracle", "grid_denominators", [5])
    assert DEFAULT_CONFIG["oracle"]["grid_denominators"] == [7, 12]
    assert ConfigManager(str(tmp_path / "b.json")).oracle.grid_denominators == [7, 12]
