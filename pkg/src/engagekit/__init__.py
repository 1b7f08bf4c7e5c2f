"""Adaptive gamification toolkit.

Closed-form engagement/reward/difficulty models, a from-scratch logistic
retention predictor, and seeded simulators for learner sessions and
long-horizon user timelines with at-risk intervention.
"""

from .case_study import CaseStudyReport, run_case_study
from .config import (
    CaseStudySettings,
    ConfigError,
    ModelProfile,
    OutputPaths,
    RunConfig,
    Seeds,
    TimelineSettings,
    default_config_path,
    load_config,
    parse_config,
)
from .models import (
    DiminishingRewardParams,
    EngagementDecayParams,
    FlowParams,
    LogisticDifficultyParams,
    RetentionParams,
    RewardFrequencyParams,
    case_difficulty,
    diminishing_reward_value,
    engagement_decay,
    flow_challenge,
    logistic_difficulty,
    retention_probability,
    reward_frequency,
    sigmoid,
)
from .regression import (
    ConfusionMatrix,
    Dataset,
    FitConfig,
    FitError,
    RetentionModel,
    SplitPair,
    accuracy,
    confusion,
    fit_logistic,
    generate_synthetic_dataset,
    loss_and_gradient,
    predict_label,
    predict_proba,
    retention_criterion,
    train_test_split,
)
from .rng import make_rng
from .simulator import (
    SessionStep,
    TimelineConfig,
    TimelinePoint,
    UserState,
    apply_intervention,
    detect_at_risk,
    run_timeline,
    simulate_session,
    step_user,
)
from .storage import (
    read_dataset_csv,
    write_confusion_csv,
    write_dataset_csv,
    write_session_csv,
    write_timeline_csv,
)

__version__ = "0.1.0"
