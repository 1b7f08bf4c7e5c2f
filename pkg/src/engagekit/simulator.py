"""Stochastic simulation of gamified learning.

Two seeded simulators built on the closed-form models:

* :func:`simulate_session` is the short task loop: per task, engagement and
  reward are drawn uniformly, difficulty comes from the session kernel, and
  success lands with probability 1 - difficulty.

* :func:`run_timeline` / :func:`step_user` produce a long-horizon user trajectory
  emitting engagement, skill, granted reward, difficulty, and retention
  probability at every step, with optional at-risk detection and
  intervention after each step.

Timeline step dynamics, in fixed order:

  1. difficulty   = logistic_difficulty(difficulty params, skill)
  2. success      = uniform draw < 1 - difficulty
  3. skill       += skill_gain * (1 - skill), on success only
  4. reward       = diminishing_reward_value(reward params, interactions),
                    times the pending intervention multiplier (then cleared);
                    added to cumulative reward
  5. engagement   = clamp(engagement * exp(-lam)
                          + engagement_boost * reward / v0, 0, 1)
  6. retention    = retention_probability(retention params, engagement, reward)
  7. interactions and time advance by one

Draw discipline is part of the contract: a timeline step consumes exactly
one uniform draw (the success outcome at stage 2); reward and engagement
updates consume none. A session task consumes three draws, in the order
engagement, reward, success. Traces are therefore bit-reproducible for a
given seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .models import (
    DiminishingRewardParams,
    EngagementDecayParams,
    FlowParams,
    LogisticDifficultyParams,
    RetentionParams,
    RewardFrequencyParams,
    case_difficulty,
    diminishing_reward_value,
    logistic_difficulty,
    retention_probability,
)
from .rng import make_rng

__all__ = [
    "UserState",
    "SessionStep",
    "TimelinePoint",
    "TimelineConfig",
    "simulate_session",
    "step_user",
    "run_timeline",
    "detect_at_risk",
    "apply_intervention",
]


def _clamp01(x: float) -> float:
    return min(max(x, 0.0), 1.0)


@dataclass(frozen=True)
class UserState:
    """Evolving user snapshot for timeline simulation.

    pending_reward_multiplier is the intervention flag: it scales the next
    step's granted reward once and is then reset to 1.
    """

    engagement: float
    skill: float
    cumulative_reward: float = 0.0
    interactions: int = 0
    time: int = 0
    pending_reward_multiplier: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.engagement) and 0.0 <= self.engagement <= 1.0):
            raise ValueError(f"engagement must be in [0, 1], got {self.engagement}")
        if not (math.isfinite(self.skill) and 0.0 <= self.skill <= 1.0):
            raise ValueError(f"skill must be in [0, 1], got {self.skill}")
        if not (math.isfinite(self.cumulative_reward) and self.cumulative_reward >= 0.0):
            raise ValueError(f"cumulative_reward must be >= 0, got {self.cumulative_reward}")
        for name in ("interactions", "time"):
            value = getattr(self, name)
            if not (isinstance(value, int) and value >= 0):
                raise ValueError(f"{name} must be a non-negative integer, got {value!r}")
        if not (math.isfinite(self.pending_reward_multiplier) and self.pending_reward_multiplier >= 1.0):
            raise ValueError(
                f"pending_reward_multiplier must be >= 1, got {self.pending_reward_multiplier}"
            )


@dataclass(frozen=True)
class SessionStep:
    """One task of a simulated session; difficulty is always the session
    kernel applied to this step's drawn engagement and reward."""

    task_index: int
    engagement: float
    reward: float
    difficulty: float
    success: bool


@dataclass(frozen=True)
class TimelinePoint:
    """One emitted timeline sample: the user's state at the end of a step,
    plus whether an intervention fired right after it."""

    step: int
    engagement: float
    skill: float
    reward_granted: float
    difficulty: float
    retention_prob: float
    success: bool
    intervened: bool


@dataclass(frozen=True)
class TimelineConfig:
    """Everything a timeline run needs: the full model-parameter profile,
    the step dynamics knobs, and the seed.

    intervention_threshold = 0 disables at-risk detection entirely; any
    positive threshold must lie in (0, 1). skill_gain = 0 and
    engagement_boost = 0 are valid "off" settings for their dynamics.
    """

    steps: int
    reward_frequency: RewardFrequencyParams
    diminishing: DiminishingRewardParams
    difficulty: LogisticDifficultyParams
    flow: FlowParams
    retention: RetentionParams
    decay: EngagementDecayParams
    skill_gain: float
    engagement_boost: float
    intervention_threshold: float
    intervention_reward_multiplier: float
    seed: int

    def __post_init__(self) -> None:
        if not (isinstance(self.steps, int) and self.steps >= 1):
            raise ValueError(f"steps must be a positive integer, got {self.steps!r}")
        if not (math.isfinite(self.skill_gain) and 0.0 <= self.skill_gain < 1.0):
            raise ValueError(f"skill_gain must be in [0, 1), got {self.skill_gain}")
        if not (math.isfinite(self.engagement_boost) and self.engagement_boost >= 0.0):
            raise ValueError(f"engagement_boost must be >= 0, got {self.engagement_boost}")
        if not (math.isfinite(self.intervention_threshold) and 0.0 <= self.intervention_threshold < 1.0):
            raise ValueError(
                f"intervention_threshold must be 0 (off) or in (0, 1), got {self.intervention_threshold}"
            )
        if not (math.isfinite(self.intervention_reward_multiplier) and self.intervention_reward_multiplier >= 1.0):
            raise ValueError(
                f"intervention_reward_multiplier must be >= 1, got {self.intervention_reward_multiplier}"
            )

    @property
    def interventions_enabled(self) -> bool:
        return self.intervention_threshold > 0.0


def simulate_session(num_tasks: int, seed: int) -> list[SessionStep]:
    """Simulate a learning session of num_tasks tasks.

    Per task: engagement ~ U[0,1), reward ~ U[0,10), difficulty from the
    session kernel, success with probability 1 - difficulty. Deterministic
    given the seed.
    """
    if not (isinstance(num_tasks, int) and num_tasks >= 1):
        raise ValueError(f"num_tasks must be a positive integer, got {num_tasks!r}")
    rng = make_rng(seed)
    steps = []
    for task in range(num_tasks):
        engagement = rng.random()
        reward = rng.random() * 10.0
        difficulty = case_difficulty(engagement, reward)
        success = rng.random() < 1.0 - difficulty
        steps.append(SessionStep(task + 1, engagement, reward, difficulty, bool(success)))
    return steps


def step_user(
    state: UserState, cfg: TimelineConfig, rng: np.random.Generator
) -> tuple[UserState, TimelinePoint]:
    """Advance a user by one timeline step (dynamics order in module doc).

    Consumes exactly one uniform draw from rng. Returns the successor state
    and the emitted point; the input state is untouched.
    """
    difficulty = logistic_difficulty(cfg.difficulty, state.skill)
    success = bool(rng.random() < 1.0 - difficulty)

    skill = state.skill
    if success:
        skill = skill + cfg.skill_gain * (1.0 - skill)

    reward = diminishing_reward_value(cfg.diminishing, state.interactions)
    reward *= state.pending_reward_multiplier

    decay_factor = math.exp(-cfg.decay.lam)
    engagement = _clamp01(
        state.engagement * decay_factor + cfg.engagement_boost * (reward / cfg.diminishing.v0)
    )
    retention = retention_probability(cfg.retention, engagement, reward)

    new_state = UserState(
        engagement=engagement,
        skill=skill,
        cumulative_reward=state.cumulative_reward + reward,
        interactions=state.interactions + 1,
        time=state.time + 1,
        pending_reward_multiplier=1.0,
    )
    point = TimelinePoint(
        step=new_state.time,
        engagement=engagement,
        skill=skill,
        reward_granted=reward,
        difficulty=difficulty,
        retention_prob=retention,
        success=success,
        intervened=False,
    )
    return new_state, point


def detect_at_risk(point: TimelinePoint, threshold: float) -> bool:
    """True when the point's retention probability falls strictly below the
    threshold. The threshold must lie in the open interval (0, 1)."""
    if not (math.isfinite(threshold) and 0.0 < threshold < 1.0):
        raise ValueError(f"threshold must be in (0, 1), got {threshold}")
    return point.retention_prob < threshold


def apply_intervention(state: UserState, cfg: TimelineConfig) -> UserState:
    """Boost an at-risk user: bump engagement once (clamped to [0, 1]) and
    arm the reward multiplier for the next step."""
    return replace(
        state,
        engagement=_clamp01(state.engagement + cfg.engagement_boost),
        pending_reward_multiplier=cfg.intervention_reward_multiplier,
    )


def run_timeline(initial: UserState, cfg: TimelineConfig) -> list[TimelinePoint]:
    """Run cfg.steps timeline steps from the initial state.

    After each step, when interventions are enabled, the emitted point is
    checked by detect_at_risk and apply_intervention adjusts the state; the
    point is then flagged as intervened. Deterministic given cfg.seed.
    """
    rng = make_rng(cfg.seed)
    state = initial
    points: list[TimelinePoint] = []
    for _ in range(cfg.steps):
        state, point = step_user(state, cfg, rng)
        if cfg.interventions_enabled and detect_at_risk(point, cfg.intervention_threshold):
            state = apply_intervention(state, cfg)
            point = replace(point, intervened=True)
        points.append(point)
    return points
