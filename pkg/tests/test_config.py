from hslab_config import (get_all_suites, get_command_limits, get_fixture_path, get_log_level,
                          get_thread_count, get_verify_defaults, is_valid_suite)


def test_suites_in_registry_order():
    assert get_all_suites() == ["permstats", "bijections", "lattice", "closedform",
                                "series", "tableaux", "fixtures"]
    assert is_valid_suite("all")
    assert is_valid_suite("Series")
    assert not is_valid_suite("plots")


def test_command_limits():
    assert get_command_limits("table")["max_n"] == 6
    assert get_command_limits("table")["families"] == ["A", "B", "flag-eulerian"]
    assert "closed-form" in get_command_limits("ehrhart")["modes"]


def test_verify_defaults_are_copies():
    defaults = get_verify_defaults()
    defaults["max_n"] = 99
    assert get_verify_defaults()["max_n"] == 5


def test_thread_count(monkeypatch):
    monkeypatch.delenv("HSLAB_THREADS", raising=False)
    assert get_thread_count() == 1
    monkeypatch.setenv("HSLAB_THREADS", "4")
    assert get_thread_count() == 4
    monkeypatch.setenv("HSLAB_THREADS", "many")
    assert get_thread_count() == 1
    monkeypatch.setenv("HSLAB_THREADS", "0")
    assert get_thread_count() == 1


def test_fixture_path_override(monkeypatch, tmp_path):
    monkeypatch.setenv("HSLAB_FIXTURES", str(tmp_path / "golden.json"))
    assert get_fixture_path() == str(tmp_path / "golden.json")
    monkeypatch.delenv("HSLAB_FIXTURES")
    assert get_fixture_path().endswith("golden.json")


def test_log_level(monkeypatch):
    monkeypatch.setenv("HSLAB_LOG_LEVEL", "info")
    assert get_log_level() == "INFO"
    monkeypatch.setenv("HSLAB_LOG_LEVEL", "chatty")
    assert get_log_level() == "WARNING"
