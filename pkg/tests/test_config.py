import json

import pytest

from config import (
    DEFAULT_CONFIG,
    coerce_value,
    get_config_path,
    load_config,
    save_config,
    set_config_value,
)


@pytest.fixture(autouse=True)
def home(tmp_path, monkeypatch):
    monkeypatch.setenv("HOME", str(tmp_path))
    return tmp_path


def test_defaults_without_a_file():
    assert not get_config_path().exists()
    assert load_config() == DEFAULT_CONFIG


def test_user_values_override_defaults():
    assert save_config({"workers": 2, "tolerance": 1e-6})

    config = load_config()

    assert config["workers"] == 2
    assert config["tolerance"] == 1e-6
    assert config["budget"] == DEFAULT_CONFIG["budget"]


def test_malformed_file_falls_back_to_defaults(capsys):
    path = get_config_path()
    path.parent.mkdir(parents=True)
    path.write_text("{not json")

    assert load_config() == DEFAULT_CONFIG
    assert "Warning" in capsys.readouterr().out


def test_values_take_the_default_type():
    assert coerce_value("workers", "8") == 8
    assert coerce_value("tolerance", "1e-12") == 1e-12
    assert coerce_value("quiet", "yes") is True
    assert coerce_value("verbose", "off") is False
    assert coerce_value("output_dir", "/tmp/out") == "/tmp/out"


def test_set_config_value_persists():
    assert set_config_value("node_budget", "1024")
    assert json.loads(get_config_path().read_text())["node_budget"] == 1024


def test_set_config_value_rejects_bad_input():
    assert not set_config_value("workers", "many")
    assert not set_config_value("colour", "red")
    assert not get_config_path().exists()
