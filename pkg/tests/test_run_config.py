from types import SimpleNamespace

import pytest

from utils.run_config import (
    ConfigError,
    RunConfig,
    init_settings_from_config,
    load_config_module,
    parse_modulus,
    parse_q_list,
    resolve_field_params,
)


def test_resolve_q():
    assert resolve_field_params(9, None, None) == (3, 2)
    assert resolve_field_params(7, None, None) == (7, 1)
    assert resolve_field_params(None, None, None) == (None, None)
    assert resolve_field_params(None, 5, None) == (5, 1)


@pytest.mark.parametrize("q,p,m,message", [
    (6, None, None, r"2 \* 3"),
    (9, 3, None, "cannot be combined"),
    (None, None, 2, "needs --p"),
    (None, 4, 1, "not prime"),
    (None, 3, 0, "must be >= 1"),
])
def test_resolve_rejects(q, p, m, message):
    with pytest.raises(ConfigError, match=message):
        resolve_field_params(q, p, m)


def test_parse_lists():
    assert parse_modulus("1,1,1") == [1, 1, 1]
    assert parse_modulus(None) is None
    assert parse_q_list("3, 4,64,") == [3, 4, 64]
    assert parse_q_list("") == []
    with pytest.raises(ConfigError):
        parse_modulus("1,x")
    with pytest.raises(ConfigError):
        parse_q_list("3;4")


def test_settings_defaults(monkeypatch):
    monkeypatch.delenv("RING_CODEBOOK_GUARD", raising=False)
    settings = init_settings_from_config(SimpleNamespace(SIZE_GUARD=64, TABLE_Q_LIST=(3, 5)))
    assert settings.size_guard == 64
    assert settings.table_q_list == [3, 5]
    assert settings.tolerance == 1e-9
    assert settings.default_fixed_j == 1
    assert settings.default_fixed_b == 0
    assert settings.exhaustive_max_n == 5000


def test_env_guard_takes_precedence(monkeypatch):
    monkeypatch.setenv("RING_CODEBOOK_GUARD", "16")
    assert init_settings_from_config(SimpleNamespace(SIZE_GUARD=64)).size_guard is None


def test_config_modules_load():
    default = init_settings_from_config(load_config_module("default_config"))
    quick = init_settings_from_config(load_config_module("quick_config"))
    assert quick.selftest_q_max < default.selftest_q_max
    with pytest.raises(ConfigError):
        load_config_module("no_such_config")


def test_run_config_properties():
    settings = init_settings_from_config(SimpleNamespace(SIZE_GUARD=64))
    run = RunConfig(command="gen", settings=settings, p=2, m=3)
    assert run.q == 8
    assert run.guard == settings.size_guard
    assert RunConfig(command="gen", settings=settings, force=True).guard > 2 ** 40
    assert RunConfig(command="table", settings=settings).q is None
