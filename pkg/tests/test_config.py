"""Tests for JSON configuration loading/validation and CSV persistence."""

import json

import pytest

from engagekit.config import (
    ConfigError,
    default_config_path,
    load_config,
    parse_config,
)
from engagekit.regression import ConfusionMatrix, generate_synthetic_dataset
from engagekit.simulator import UserState, run_timeline, simulate_session
from engagekit.storage import (
    DATASET_HEADER,
    SESSION_HEADER,
    TIMELINE_HEADER,
    read_dataset_csv,
    write_confusion_csv,
    write_dataset_csv,
    write_session_csv,
    write_timeline_csv,
)

from conftest import make_timeline_config


def default_raw() -> dict:
    return json.loads(default_config_path().read_text(encoding="utf-8"))


# --- config loading ----------------------------------------------------------

def test_default_config_parses_cleanly():
    cfg = load_config(default_config_path())
    assert cfg.case_study.num_samples == 1000
    assert cfg.case_study.test_fraction == 0.2
    assert cfg.seeds.data == 0
    assert cfg.seeds.split == 42
    assert cfg.models.diminishing.v0 == 10.0
    assert cfg.models.decay.lam == 0.1
    assert cfg.timeline.steps == 200


def test_default_config_assembles_simulator_pieces():
    cfg = load_config(default_config_path())
    tl = cfg.timeline_config()
    assert tl.steps == 200
    assert tl.seed == cfg.seeds.sim
    assert tl.retention == cfg.models.retention
    assert cfg.timeline_config(steps=17).steps == 17
    state = cfg.initial_user_state()
    assert state.engagement == cfg.models.decay.e0
    assert state.skill == cfg.timeline.initial_skill


def test_negative_beta_names_field():
    raw = default_raw()
    raw["models"]["diminishing"]["beta"] = -1
    with pytest.raises(ConfigError) as err:
        parse_config(raw)
    assert any("diminishing.beta" in v for v in err.value.violations)


def test_missing_seed_names_field():
    raw = default_raw()
    del raw["seeds"]["fit"]
    with pytest.raises(ConfigError) as err:
        parse_config(raw)
    assert any(v.startswith("seeds.fit") for v in err.value.violations)


def test_all_violations_reported_at_once():
    raw = default_raw()
    raw["models"]["diminishing"]["beta"] = -1
    raw["models"]["difficulty"]["gamma"] = 0
    raw["timeline"]["steps"] = 0
    del raw["seeds"]["sim"]
    with pytest.raises(ConfigError) as err:
        parse_config(raw)
    text = "\n".join(err.value.violations)
    assert "diminishing.beta" in text
    assert "difficulty.gamma" in text
    assert "timeline.steps" in text
    assert "seeds.sim" in text
    assert len(err.value.violations) == 4


def test_unknown_field_reported():
    raw = default_raw()
    raw["models"]["decay"]["half_life"] = 3
    with pytest.raises(ConfigError) as err:
        parse_config(raw)
    assert any("decay.half_life" in v and "unexpected" in v for v in err.value.violations)


def test_missing_section_reported():
    raw = default_raw()
    del raw["timeline"]
    with pytest.raises(ConfigError) as err:
        parse_config(raw)
    assert any(v.startswith("timeline:") for v in err.value.violations)


def test_integer_fields_reject_floats():
    raw = default_raw()
    raw["case_study"]["num_samples"] = 1000.0
    with pytest.raises(ConfigError) as err:
        parse_config(raw)
    assert any("num_samples" in v for v in err.value.violations)


def test_non_number_rejected():
    raw = default_raw()
    raw["models"]["flow"]["k"] = "high"
    with pytest.raises(ConfigError) as err:
        parse_config(raw)
    assert any("flow.k" in v for v in err.value.violations)


def test_top_level_must_be_object():
    with pytest.raises(ConfigError):
        parse_config([1, 2, 3])


def test_invalid_json_reported(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError) as err:
        load_config(path)
    assert any("invalid JSON" in v for v in err.value.violations)


def test_missing_file_raises_oserror(tmp_path):
    with pytest.raises(OSError):
        load_config(tmp_path / "nope.json")


# --- CSV persistence ---------------------------------------------------------

def test_dataset_csv_round_trip(tmp_path):
    data = generate_synthetic_dataset(500, seed=21)
    path = tmp_path / "data.csv"
    write_dataset_csv(path, data)
    assert read_dataset_csv(path) == data


def test_dataset_csv_header_and_count(tmp_path):
    data = generate_synthetic_dataset(50, seed=2)
    path = tmp_path / "data.csv"
    write_dataset_csv(path, data)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == ",".join(DATASET_HEADER)
    assert len(lines) == 51


def test_dataset_csv_rejects_wrong_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c\n1,2,3\n", encoding="utf-8")
    with pytest.raises(ValueError):
        read_dataset_csv(path)


def test_dataset_csv_rejects_malformed_row(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("engagement,reward,retention\n0.5,oops,1\n", encoding="utf-8")
    with pytest.raises(ValueError) as err:
        read_dataset_csv(path)
    assert ":2:" in str(err.value)


def test_session_csv_layout(tmp_path):
    steps = simulate_session(10, seed=0)
    path = tmp_path / "session.csv"
    write_session_csv(path, steps)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == ",".join(SESSION_HEADER)
    assert len(lines) == 11
    first = lines[1].split(",")
    assert first[0] == "1"
    assert first[4] in ("0", "1")


def test_timeline_csv_layout(tmp_path):
    points = run_timeline(UserState(engagement=0.9, skill=0.0), make_timeline_config(steps=25))
    path = tmp_path / "timeline.csv"
    write_timeline_csv(path, points)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == ",".join(TIMELINE_HEADER)
    assert len(lines) == 26


def test_confusion_csv_layout(tmp_path):
    path = tmp_path / "cm.csv"
    write_confusion_csv(path, ConfusionMatrix(tn=188, fp=0, fn=4, tp=8))
    assert path.read_text(encoding="utf-8") == (
        ",predicted_0,predicted_1\ntrue_0,188,0\ntrue_1,4,8\n"
    )
