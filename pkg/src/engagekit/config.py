"""JSON run configuration: schema, validation, and assembly.

A run config is a single JSON document with one section per model-parameter
record plus fit, case-study, timeline, seed, and output sections. Loading
validates every field and reports all violations at once, each named by its
field path (e.g. ``models.diminishing.beta``).

The packaged ``default_config.json`` is the documented default profile; all
of its values are configuration, never hard-coded in the model functions.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .models import (
    DiminishingRewardParams,
    EngagementDecayParams,
    FlowParams,
    LogisticDifficultyParams,
    RetentionParams,
    RewardFrequencyParams,
)
from .regression import FitConfig
from .rng import MAX_SEED
from .simulator import TimelineConfig, UserState

__all__ = [
    "ConfigError",
    "ModelProfile",
    "CaseStudySettings",
    "TimelineSettings",
    "Seeds",
    "OutputPaths",
    "RunConfig",
    "load_config",
    "parse_config",
    "default_config_path",
]

CONFIG_ENV_VAR = "ENGAGEKIT_CONFIG"


class ConfigError(ValueError):
    """Invalid run configuration; carries one message per violation."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("invalid configuration:\n" + "\n".join(f"  {v}" for v in self.violations))


@dataclass(frozen=True)
class ModelProfile:
    """One parameter record per closed-form model."""

    reward_frequency: RewardFrequencyParams
    diminishing: DiminishingRewardParams
    difficulty: LogisticDifficultyParams
    flow: FlowParams
    retention: RetentionParams
    decay: EngagementDecayParams


@dataclass(frozen=True)
class CaseStudySettings:
    num_samples: int
    test_fraction: float


@dataclass(frozen=True)
class TimelineSettings:
    steps: int
    initial_skill: float
    skill_gain: float
    engagement_boost: float
    intervention_threshold: float
    intervention_reward_multiplier: float


@dataclass(frozen=True)
class Seeds:
    """Independent 64-bit seeds, one per pipeline stage."""

    data: int
    split: int
    fit: int
    sim: int


@dataclass(frozen=True)
class OutputPaths:
    report_json: str
    confusion_csv: str


@dataclass(frozen=True)
class RunConfig:
    models: ModelProfile
    fit: FitConfig
    case_study: CaseStudySettings
    timeline: TimelineSettings
    seeds: Seeds
    output: OutputPaths

    def timeline_config(self, steps: int | None = None) -> TimelineConfig:
        """Assemble the simulator config, optionally overriding the step count."""
        t = self.timeline
        return TimelineConfig(
            steps=t.steps if steps is None else steps,
            reward_frequency=self.models.reward_frequency,
            diminishing=self.models.diminishing,
            difficulty=self.models.difficulty,
            flow=self.models.flow,
            retention=self.models.retention,
            decay=self.models.decay,
            skill_gain=t.skill_gain,
            engagement_boost=t.engagement_boost,
            intervention_threshold=t.intervention_threshold,
            intervention_reward_multiplier=t.intervention_reward_multiplier,
            seed=self.seeds.sim,
        )

    def initial_user_state(self) -> UserState:
        """Timeline starting point: engagement from the decay profile's e0,
        skill from the timeline section."""
        return UserState(engagement=self.models.decay.e0, skill=self.timeline.initial_skill)


def default_config_path() -> Path:
    """Filesystem path of the packaged default profile."""
    return Path(str(resources.files("engagekit").joinpath("default_config.json")))


# --- validation helpers -----------------------------------------------------
#
# Each helper appends "path: message" strings to the shared violations list
# and returns None on failure, so a single pass surfaces every problem.


def _section(raw: dict, key: str, violations: list[str], prefix: str = "") -> dict | None:
    path = f"{prefix}.{key}" if prefix else key
    if key not in raw:
        violations.append(f"{path}: missing required section")
        return None
    value = raw[key]
    if not isinstance(value, dict):
        violations.append(f"{path}: must be an object")
        return None
    return value


def _unknown_keys(section: dict, path: str, known: tuple[str, ...], violations: list[str]) -> None:
    for key in section:
        if key not in known:
            violations.append(f"{path}.{key}: unexpected field")


def _number(
    section: dict,
    path: str,
    key: str,
    violations: list[str],
    *,
    ge: float | None = None,
    gt: float | None = None,
    lt: float | None = None,
    le: float | None = None,
) -> float | None:
    full = f"{path}.{key}"
    if key not in section:
        violations.append(f"{full}: missing required field")
        return None
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        violations.append(f"{full}: must be a number, got {value!r}")
        return None
    value = float(value)
    if not math.isfinite(value):
        violations.append(f"{full}: must be finite, got {value!r}")
        return None
    if ge is not None and value < ge:
        violations.append(f"{full}: must be >= {ge}, got {value}")
        return None
    if gt is not None and value <= gt:
        violations.append(f"{full}: must be > {gt}, got {value}")
        return None
    if lt is not None and value >= lt:
        violations.append(f"{full}: must be < {lt}, got {value}")
        return None
    if le is not None and value > le:
        violations.append(f"{full}: must be <= {le}, got {value}")
        return None
    return value


def _integer(
    section: dict,
    path: str,
    key: str,
    violations: list[str],
    *,
    ge: int,
    le: int | None = None,
) -> int | None:
    full = f"{path}.{key}"
    if key not in section:
        violations.append(f"{full}: missing required field")
        return None
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, int):
        violations.append(f"{full}: must be an integer, got {value!r}")
        return None
    if value < ge:
        violations.append(f"{full}: must be >= {ge}, got {value}")
        return None
    if le is not None and value > le:
        violations.append(f"{full}: must be <= {le}, got {value}")
        return None
    return value


def _string(section: dict, path: str, key: str, violations: list[str]) -> str | None:
    full = f"{path}.{key}"
    if key not in section:
        violations.append(f"{full}: missing required field")
        return None
    value = section[key]
    if not isinstance(value, str) or not value:
        violations.append(f"{full}: must be a non-empty string, got {value!r}")
        return None
    return value


def parse_config(raw: dict) -> RunConfig:
    """Validate a parsed JSON document and assemble the run config.

    Raises:
        ConfigError: listing every violated field path, not just the first.
    """
    if not isinstance(raw, dict):
        raise ConfigError(["top level: must be a JSON object"])
    violations: list[str] = []
    _unknown_keys(raw, "config", ("models", "fit", "case_study", "timeline", "seeds", "output"), violations)

    models_raw = _section(raw, "models", violations)
    fit_raw = _section(raw, "fit", violations)
    case_raw = _section(raw, "case_study", violations)
    timeline_raw = _section(raw, "timeline", violations)
    seeds_raw = _section(raw, "seeds", violations)
    output_raw = _section(raw, "output", violations)

    values: dict[str, object] = {}

    if models_raw is not None:
        _unknown_keys(
            models_raw, "models",
            ("reward_frequency", "diminishing", "difficulty", "flow", "retention", "decay"),
            violations,
        )
        sections = {
            name: _section(models_raw, name, violations, prefix="models")
            for name in ("reward_frequency", "diminishing", "difficulty", "flow", "retention", "decay")
        }

        sec = sections["reward_frequency"]
        if sec is not None:
            _unknown_keys(sec, "models.reward_frequency", ("r0", "alpha"), violations)
            values["r0"] = _number(sec, "models.reward_frequency", "r0", violations, gt=0.0)
            values["alpha"] = _number(sec, "models.reward_frequency", "alpha", violations)
        sec = sections["diminishing"]
        if sec is not None:
            _unknown_keys(sec, "models.diminishing", ("v0", "beta"), violations)
            values["v0"] = _number(sec, "models.diminishing", "v0", violations, gt=0.0)
            values["beta"] = _number(sec, "models.diminishing", "beta", violations, ge=0.0)
        sec = sections["difficulty"]
        if sec is not None:
            _unknown_keys(sec, "models.difficulty", ("d_max", "gamma", "x0"), violations)
            values["d_max"] = _number(sec, "models.difficulty", "d_max", violations, gt=0.0)
            values["gamma"] = _number(sec, "models.difficulty", "gamma", violations, gt=0.0)
            values["x0"] = _number(sec, "models.difficulty", "x0", violations)
        sec = sections["flow"]
        if sec is not None:
            _unknown_keys(sec, "models.flow", ("k",), violations)
            values["k"] = _number(sec, "models.flow", "k", violations)
        sec = sections["retention"]
        if sec is not None:
            _unknown_keys(sec, "models.retention", ("a", "b", "c"), violations)
            values["a"] = _number(sec, "models.retention", "a", violations)
            values["b"] = _number(sec, "models.retention", "b", violations)
            values["c"] = _number(sec, "models.retention", "c", violations)
        sec = sections["decay"]
        if sec is not None:
            _unknown_keys(sec, "models.decay", ("e0", "lambda"), violations)
            values["e0"] = _number(sec, "models.decay", "e0", violations, ge=0.0, le=1.0)
            values["lam"] = _number(sec, "models.decay", "lambda", violations, ge=0.0)

    if fit_raw is not None:
        _unknown_keys(fit_raw, "fit", ("learning_rate", "max_epochs", "convergence_tol"), violations)
        values["learning_rate"] = _number(fit_raw, "fit", "learning_rate", violations, gt=0.0)
        values["max_epochs"] = _integer(fit_raw, "fit", "max_epochs", violations, ge=1)
        values["convergence_tol"] = _number(fit_raw, "fit", "convergence_tol", violations, gt=0.0)

    if case_raw is not None:
        _unknown_keys(case_raw, "case_study", ("num_samples", "test_fraction"), violations)
        values["num_samples"] = _integer(case_raw, "case_study", "num_samples", violations, ge=2)
        values["test_fraction"] = _number(case_raw, "case_study", "test_fraction", violations, gt=0.0, lt=1.0)

    if timeline_raw is not None:
        _unknown_keys(
            timeline_raw, "timeline",
            ("steps", "initial_skill", "skill_gain", "engagement_boost",
             "intervention_threshold", "intervention_reward_multiplier"),
            violations,
        )
        values["steps"] = _integer(timeline_raw, "timeline", "steps", violations, ge=1)
        values["initial_skill"] = _number(timeline_raw, "timeline", "initial_skill", violations, ge=0.0, le=1.0)
        values["skill_gain"] = _number(timeline_raw, "timeline", "skill_gain", violations, ge=0.0, lt=1.0)
        values["engagement_boost"] = _number(timeline_raw, "timeline", "engagement_boost", violations, ge=0.0)
        values["intervention_threshold"] = _number(
            timeline_raw, "timeline", "intervention_threshold", violations, ge=0.0, lt=1.0
        )
        values["intervention_reward_multiplier"] = _number(
            timeline_raw, "timeline", "intervention_reward_multiplier", violations, ge=1.0
        )

    if seeds_raw is not None:
        _unknown_keys(seeds_raw, "seeds", ("data", "split", "fit", "sim"), violations)
        for name in ("data", "split", "fit", "sim"):
            values[f"seed_{name}"] = _integer(seeds_raw, "seeds", name, violations, ge=0, le=MAX_SEED)

    if output_raw is not None:
        _unknown_keys(output_raw, "output", ("report_json", "confusion_csv"), violations)
        values["report_json"] = _string(output_raw, "output", "report_json", violations)
        values["confusion_csv"] = _string(output_raw, "output", "confusion_csv", violations)

    if violations or any(v is None for v in values.values()):
        raise ConfigError(violations)

    return RunConfig(
        models=ModelProfile(
            reward_frequency=RewardFrequencyParams(r0=values["r0"], alpha=values["alpha"]),
            diminishing=DiminishingRewardParams(v0=values["v0"], beta=values["beta"]),
            difficulty=LogisticDifficultyParams(
                d_max=values["d_max"], gamma=values["gamma"], x0=values["x0"]
            ),
            flow=FlowParams(k=values["k"]),
            retention=RetentionParams(a=values["a"], b=values["b"], c=values["c"]),
            decay=EngagementDecayParams(e0=values["e0"], lam=values["lam"]),
        ),
        fit=FitConfig(
            learning_rate=values["learning_rate"],
            max_epochs=values["max_epochs"],
            convergence_tol=values["convergence_tol"],
            seed=values["seed_fit"],
        ),
        case_study=CaseStudySettings(
            num_samples=values["num_samples"], test_fraction=values["test_fraction"]
        ),
        timeline=TimelineSettings(
            steps=values["steps"],
            initial_skill=values["initial_skill"],
            skill_gain=values["skill_gain"],
            engagement_boost=values["engagement_boost"],
            intervention_threshold=values["intervention_threshold"],
            intervention_reward_multiplier=values["intervention_reward_multiplier"],
        ),
        seeds=Seeds(
            data=values["seed_data"], split=values["seed_split"],
            fit=values["seed_fit"], sim=values["seed_sim"],
        ),
        output=OutputPaths(report_json=values["report_json"], confusion_csv=values["confusion_csv"]),
    )


def load_config(path: str | Path) -> RunConfig:
    """Read, parse, and validate a JSON run configuration file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError([f"{path}: invalid JSON: {err}"]) from err
    return parse_config(raw)
