"""CSV persistence for datasets and simulation traces.

Floats are serialized with 17 significant digits, which round-trips every
64-bit value exactly; booleans are written as 0/1 so the files feed any
plotting tool directly. Writers emit LF line endings unconditionally, making
repeated runs byte-identical across platforms.
"""

from __future__ import annotations

import csv
from pathlib import Path

from .regression import ConfusionMatrix, Dataset
from .simulator import SessionStep, TimelinePoint

__all__ = [
    "DATASET_HEADER",
    "SESSION_HEADER",
    "TIMELINE_HEADER",
    "write_dataset_csv",
    "read_dataset_csv",
    "write_session_csv",
    "write_timeline_csv",
    "write_confusion_csv",
]

DATASET_HEADER = ["engagement", "reward", "retention"]
SESSION_HEADER = ["task", "engagement", "reward", "difficulty", "success"]
TIMELINE_HEADER = [
    "step", "engagement", "skill", "reward", "difficulty",
    "retention_prob", "success", "intervened",
]


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _writer(handle):
    return csv.writer(handle, lineterminator="\n")


def write_dataset_csv(path: str | Path, dataset: Dataset) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        out = _writer(handle)
        out.writerow(DATASET_HEADER)
        for e, r, y in zip(dataset.engagement, dataset.reward, dataset.retention):
            out.writerow([_fmt(e), _fmt(r), int(y)])


def read_dataset_csv(path: str | Path) -> Dataset:
    """Parse a dataset CSV written by :func:`write_dataset_csv`.

    Raises:
        ValueError: on a wrong header or a malformed row (named by line).
    """
    with open(path, "r", encoding="utf-8", newline="") as handle:
        rows = list(csv.reader(handle))
    if not rows or rows[0] != DATASET_HEADER:
        raise ValueError(f"{path}: expected header {','.join(DATASET_HEADER)}")
    engagement, reward, retention = [], [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 3:
            raise ValueError(f"{path}:{lineno}: expected 3 columns, got {len(row)}")
        try:
            engagement.append(float(row[0]))
            reward.append(float(row[1]))
            retention.append(int(row[2]))
        except ValueError as err:
            raise ValueError(f"{path}:{lineno}: {err}") from err
    if not engagement:
        raise ValueError(f"{path}: no data rows")
    return Dataset(engagement, reward, retention)


def write_session_csv(path: str | Path, steps: list[SessionStep]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        out = _writer(handle)
        out.writerow(SESSION_HEADER)
        for s in steps:
            out.writerow([s.task_index, _fmt(s.engagement), _fmt(s.reward),
                          _fmt(s.difficulty), int(s.success)])


def write_timeline_csv(path: str | Path, points: list[TimelinePoint]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        out = _writer(handle)
        out.writerow(TIMELINE_HEADER)
        for p in points:
            out.writerow([p.step, _fmt(p.engagement), _fmt(p.skill),
                          _fmt(p.reward_granted), _fmt(p.difficulty),
                          _fmt(p.retention_prob), int(p.success), int(p.intervened)])


def write_confusion_csv(path: str | Path, cm: ConfusionMatrix) -> None:
    """2x2 layout matching the matrix convention: rows true, columns predicted."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        out = _writer(handle)
        out.writerow(["", "predicted_0", "predicted_1"])
        out.writerow(["true_0", cm.tn, cm.fp])
        out.writerow(["true_1", cm.fn, cm.tp])
