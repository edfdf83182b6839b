from __future__ import annotations

import json

import pytest

from cobjeval.config import AppConfig, build_judge_backend, load_config
from cobjeval.errors import ConfigError
from cobjeval.judge import load_expert_annotations


def test_defaults():
    config = load_config()
    assert config.store_path == "cobjeval.db"
    assert config.workers == 4
    assert config.judge_backend == "none"


def test_file_then_env_then_flags_precedence(tmp_path, monkeypatch):
    config_file = tmp_path / "cfg.json"
    config_file.write_text(json.dumps({"workers": 2, "inbox": "file-inbox",
                                       "report_dir": "file-reports"}), encoding="utf-8")
    monkeypatch.setenv("COBJEVAL_WORKERS", "6")
    monkeypatch.setenv("COBJEVAL_INBOX", "env-inbox")

    config = load_config(config_file, overrides={"inbox": "flag-inbox"})
    assert config.workers == 6            # env beats file
    assert config.inbox == "flag-inbox"   # flag beats env
    assert config.report_dir == "file-reports"  # file value survives


def test_unknown_file_key_rejected(tmp_path):
    config_file = tmp_path / "cfg.json"
    config_file.write_text('{"wrokers": 3}', encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(config_file)


def test_type_coercion_and_validation(tmp_path, monkeypatch):
    monkeypatch.setenv("COBJEVAL_WORKERS", "not-a-number")
    with pytest.raises(ConfigError):
        load_config()
    monkeypatch.setenv("COBJEVAL_WORKERS", "0")
    with pytest.raises(ConfigError):
        load_config()
    monkeypatch.setenv("COBJEVAL_WORKERS", "3")
    monkeypatch.setenv("COBJEVAL_CHECKERS", "A-VAR, A-PERF")
    config = load_config()
    assert config.workers == 3
    assert config.checkers == ["A-VAR", "A-PERF"]


def test_judge_backend_specs():
    assert build_judge_backend("none") is None
    assert build_judge_backend("stub:5").judge_id == "stub-const-5"
    cycle = build_judge_backend("stub:7,5,3")
    assert cycle.judge_id == "stub-cycle-7-5-3"
    with pytest.raises(ConfigError):
        build_judge_backend("stub:9")
    with pytest.raises(ConfigError):
        build_judge_backend("recorded:/no/such/file")
    with pytest.raises(ConfigError):
        build_judge_backend("mystery:x")
    http = build_judge_backend("http:http://judge.internal:9000/complete", timeout=5)
    assert http.endpoint == "http://judge.internal:9000/complete"
    assert http.timeout == 5


def test_expert_annotation_import(tmp_path):
    path = tmp_path / "experts.jsonl"
    path.write_text('{"sample": "s1", "score": 5}\n{"sample": "s2", "score": 7}\n',
                    encoding="utf-8")
    scores = load_expert_annotations(path)
    assert scores == {"s1": 5, "s2": 7}
