import json

import pytest

from config import app_config
from config.app_config import AppConfig, get_config, init_config


def test_defaults(config):
    assert config.get('verification.bound') == 1000
    assert config.get('verification.jobs') == 1
    assert config.get('orbit.uv_window') == 50
    assert config.get('verification.oracle_bound') == 1000
    assert config.get('solutions.q_cap') == 1500
    assert config.get('solutions.residue_n_max') == 10000
    assert config.get('output.format') == 'jsonl'
    assert config.get_log_level() == 'WARNING'


def test_non_object_file_is_rejected(tmp_path):
    path = tmp_path / "list.json"
    path.write_text("[1, 2]")
    config = AppConfig(str(path))
    assert not config.load()
    assert config.get('output.format') == 'jsonl'


def test_unknown_sections_are_kept(tmp_path, caplog):
    path = tmp_path / "extra.json"
    path.write_text(json.dumps({"plots": {"dpi": 300}}))
    config = AppConfig(str(path))
    assert config.get('plots.dpi') == 300
    assert "Unknown config sections" in caplog.text


def test_empty_key_part(config):
    with pytest.raises(KeyError):
        config.get('orbit..uv_window')


def test_missing_key_returns_default(config):
    assert config.get('verification.nothing') is None
    assert config.get('nothing.at.all', 7) == 7


def test_set_dotted_key(config):
    config.set('orbit.uv_window', 10)
    config.set('new.section.value', 'x')
    assert config.get('orbit.uv_window') == 10
    assert config.get('new.section.value') == 'x'
    # соседние ключи не затронуты
    assert config.get('orbit.uv_b_max') == 100


def test_load_merges_with_defaults(tmp_path):
    path = tmp_path / "custom.json"
    path.write_text(json.dumps({"verification": {"bound": 50}, "logging": {"level": "debug"}}))
    config = AppConfig(str(path))
    assert config.get('verification.bound') == 50
    assert config.get('verification.jobs') == 1
    assert config.get_log_level() == 'DEBUG'


def test_broken_file_keeps_defaults(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    config = AppConfig(str(path))
    assert not config.load()
    assert config.get('verification.bound') == 1000


def test_no_implicit_save(tmp_path):
    path = tmp_path / "never.json"
    config = AppConfig(str(path))
    config.set('verification.bound', 5)
    assert not path.exists()


def test_save_round_trip(tmp_path):
    path = tmp_path / "saved" / "config.json"
    config = AppConfig(str(path))
    config.set('solutions.q_max', 99)
    assert config.save()
    assert AppConfig(str(path)).get('solutions.q_max') == 99


@pytest.mark.parametrize("value", ["two", 2.5, True, None])
def test_get_int_names_the_key(config, value):
    config.set('verification.jobs', value)
    with pytest.raises(ValueError, match="verification.jobs"):
        config.get_int('verification.jobs')


def test_overrides_skip_missing_flags(config):
    config.apply_overrides({'verification.jobs': 4, 'output.format': None})
    assert config.get('verification.jobs') == 4
    assert config.get('output.format') == 'jsonl'


def test_to_dict_is_a_copy(config):
    snapshot = config.to_dict()
    snapshot['verification']['bound'] = 1
    assert config.get('verification.bound') == 1000


def test_global_instance(tmp_path, monkeypatch):
    monkeypatch.setattr(app_config, '_config_instance', None)
    first = get_config()
    assert get_config() is first
    second = init_config(str(tmp_path / "other.json"))
    assert get_config() is second is not first


def test_default_path_under_home(isolated_home):
    assert AppConfig().get_default_config_path() == str(isolated_home / ".markoff_verifier" / "config.json")
