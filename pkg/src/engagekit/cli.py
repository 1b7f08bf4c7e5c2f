"""Command-line interface.

Subcommands:
    gen-data           write a synthetic retention dataset CSV
    case-study         run generate -> split -> fit -> evaluate, emit report
    simulate-session   run the short task loop, print per-task lines
    simulate-timeline  run a long-horizon user timeline, write trace CSV

The run configuration is resolved from --config, then the ENGAGEKIT_CONFIG
environment variable, then the packaged default profile. Every command is
deterministic under fixed seeds: repeated invocations produce byte-identical
files. Errors go to stderr; exit status is 0 on success, 2 for configuration
problems, 1 otherwise.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .case_study import run_case_study
from .config import CONFIG_ENV_VAR, ConfigError, default_config_path, load_config
from .regression import FitError, generate_synthetic_dataset
from .simulator import run_timeline, simulate_session
from .storage import (
    write_confusion_csv,
    write_dataset_csv,
    write_session_csv,
    write_timeline_csv,
)

__all__ = ["main", "build_parser"]


def _resolve_config_path(explicit: str | None) -> str:
    if explicit:
        return explicit
    from_env = os.environ.get(CONFIG_ENV_VAR)
    if from_env:
        return from_env
    return str(default_config_path())


def _cmd_gen_data(args: argparse.Namespace) -> int:
    data = generate_synthetic_dataset(args.n, args.seed)
    write_dataset_csv(args.out, data)
    print(f"wrote {len(data)} rows to {args.out} (positive rate {data.positive_rate:.4f})")
    return 0


def _cmd_case_study(args: argparse.Namespace) -> int:
    cfg = load_config(_resolve_config_path(args.config))
    report = run_case_study(cfg)
    payload = json.dumps(report.to_dict(), indent=2)
    with open(cfg.output.report_json, "w", encoding="utf-8") as handle:
        handle.write(payload + "\n")
    write_confusion_csv(cfg.output.confusion_csv, report.confusion)
    print(payload)
    return 0


def _cmd_simulate_session(args: argparse.Namespace) -> int:
    steps = simulate_session(args.tasks, args.seed)
    write_session_csv(args.out, steps)
    for s in steps:
        print(
            f"Task {s.task_index}: Engagement: {s.engagement:.2f}, "
            f"Reward: {s.reward:.2f}, Difficulty: {s.difficulty:.2f}, "
            f"Success: {s.success}"
        )
    return 0


def _cmd_simulate_timeline(args: argparse.Namespace) -> int:
    cfg = load_config(_resolve_config_path(args.config))
    timeline_cfg = cfg.timeline_config(steps=args.steps)
    points = run_timeline(cfg.initial_user_state(), timeline_cfg)
    write_timeline_csv(args.out, points)
    mean_retention = sum(p.retention_prob for p in points) / len(points)
    fired = sum(p.intervened for p in points)
    print(
        f"steps={len(points)} final_skill={points[-1].skill:.4f} "
        f"mean_retention_prob={mean_retention:.4f} interventions={fired}"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="engagekit",
        description="Adaptive gamification models, retention prediction, and learner simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-data", help="write a synthetic retention dataset CSV")
    p.add_argument("--n", type=int, default=1000, help="number of samples (default 1000)")
    p.add_argument("--seed", type=int, default=0, help="data seed (default 0)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_gen_data)

    p = sub.add_parser("case-study", help="run the retention pipeline and emit a report")
    p.add_argument("--config", help=f"config JSON path (default: ${CONFIG_ENV_VAR} or packaged profile)")
    p.set_defaults(func=_cmd_case_study)

    p = sub.add_parser("simulate-session", help="simulate a short task session")
    p.add_argument("--tasks", type=int, default=10, help="number of tasks (default 10)")
    p.add_argument("--seed", type=int, default=0, help="session seed (default 0)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_simulate_session)

    p = sub.add_parser("simulate-timeline", help="simulate a long-horizon user timeline")
    p.add_argument("--config", help=f"config JSON path (default: ${CONFIG_ENV_VAR} or packaged profile)")
    p.add_argument("--steps", type=int, help="override the configured step count")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_simulate_timeline)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as err:
        for violation in err.violations:
            print(f"error: {violation}", file=sys.stderr)
        return 2
    except FitError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
