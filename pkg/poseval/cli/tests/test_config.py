"""Tests of evaluation configuration."""
import pytest

from poseval import json as pose_json
from poseval.cli import EvalConfig, load_grid_file
from poseval.enumeration import PoseErrorKind, Task
from poseval.exceptions import ConfigError


def test_defaults(monkeypatch):
    """Targets default to the dataset's target list; jobs to the environment."""
    config = EvalConfig("LOC6D", ["data/lm", "data/ycbv"], ["a.csv", "b.csv"], "out")
    assert config.task is Task.LOCALIZATION_6D
    assert config.targets == ["data/lm/test_targets.json", "data/ycbv/test_targets.json"]
    assert config.formats == ["json", "csv"]
    assert [str(d) for d, _, _ in config.runs()] == ["data/lm", "data/ycbv"]

    monkeypatch.setenv("POSE_EVAL_JOBS", "4")
    assert config.to_settings().jobs == 4
    assert config.to_settings(jobs=2).jobs == 2
    assert EvalConfig("det2d", ["d"], ["s"], "o", jobs=3).to_settings().jobs == 3


def test_serialization():
    """Configurations survive a trip through the JSON registry."""
    config = EvalConfig("det6d", ["d"], ["s.csv"], "o", targets=["t.json"], formats="csv",
                        jobs=2, grid="grid.json")
    text = pose_json.dumps(config)
    assert '"task": "det6d"' in text
    copy = pose_json.loads(text)
    assert isinstance(copy, EvalConfig)
    assert copy == config


def test_invalid():
    """Mismatched lists, unknown tasks and formats, and bad job counts are rejected."""
    with pytest.raises(ConfigError):
        EvalConfig("loc6d", ["a", "b"], ["s"], "o")
    with pytest.raises(ConfigError):
        EvalConfig("loc6d", [], [], "o")
    with pytest.raises(ConfigError):
        EvalConfig("pose", ["a"], ["s"], "o")
    with pytest.raises(ConfigError):
        EvalConfig("loc6d", ["a"], ["s"], "o", formats="json,xml")
    with pytest.raises(ConfigError):
        EvalConfig("loc6d", ["a"], ["s"], "o", jobs=0)


def test_grid_file(tmp_path, caplog):
    """Grid files override thresholds, tolerances and the VSD delta."""
    path = tmp_path / "grid.json"
    path.write_text('{"mssd": {"thresholds": [0.1, 0.2]}, "VSD": {"thresholds": [0.3], '
                    '"taus": [0.2]}, "vsd_delta": "1.5 cm", "max_sym_step": 0.02, '
                    '"comment": "tighter"}')
    overrides = load_grid_file(path)
    assert "comment" in caplog.text
    assert overrides["vsd_delta"] == pytest.approx(15.0)
    assert overrides["max_sym_step"] == 0.02

    config = EvalConfig("loc6d", ["d"], ["s"], "o", jobs=1, grid=str(path))
    settings = config.to_settings()
    assert settings.grid(PoseErrorKind.MSSD).thresholds == [0.1, 0.2]
    assert settings.grid("vsd").taus == [0.2]
    assert settings.grid("mspd").size == 10
    assert settings.vsd_delta == pytest.approx(15.0)


@pytest.mark.parametrize("content", [
    '[1, 2]',
    '{"mssd": [0.1]}',
    '{"mssd": {"thresholds": [0.2, 0.1]}}',
    '{"iou": {"thresholds": [0.5], "taus": [0.1]}}',
    '{"vsd_delta": "3 s"}',
    '{"max_sym_step": "small"}',
    '{"max_sym_step": 2}',
    '{"mssd": ',
])
def test_bad_grid_files(tmp_path, content):
    """Malformed grid files raise a located configuration error."""
    path = tmp_path / "grid.json"
    path.write_text(content)
    with pytest.raises(ConfigError) as exc:
        EvalConfig("loc6d", ["d"], ["s"], "o", jobs=1, grid=str(path)).to_settings()
    assert exc.value.path == str(path)
