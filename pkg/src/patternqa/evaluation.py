"""Running precision/recall/F-measure over an outcome sequence, and CSV
export of the resulting series."""

from __future__ import annotations

import csv
from dataclasses import dataclass


@dataclass(frozen=True)
class EvalPoint:
    i: int  # 1-based question index
    p: float
    r: float
    f: float
    correct: int
    answered: int


def f_measure(p: float, r: float) -> float:
    """Balanced F1; 0 when both inputs are 0."""
    if p + r == 0.0:
        return 0.0
    return 2.0 * p * r / (p + r)


def make_point(i: int, correct: int, answered: int) -> EvalPoint:
    # P is 1.0 by convention while nothing has been answered (answered == 0
    # in the exported row flags the convention).
    p = correct / answered if answered else 1.0
    r = correct / i
    return EvalPoint(i=i, p=p, r=r, f=f_measure(p, r), correct=correct, answered=answered)


def running_metrics(outcomes, fallback_as_answered: bool = False) -> list[EvalPoint]:
    """One point per prefix of the outcome sequence.

    A question counts as answered when the system produced any candidate;
    tutor-supplied fallback answers are not system answers. The alternate
    convention (fallback_as_answered) also counts fallback questions in
    the precision denominator.
    """
    points = []
    correct = 0
    answered = 0
    for i, outcome in enumerate(outcomes, 1):
        correct += bool(outcome.correct)
        if outcome.candidates:
            answered += 1
        elif fallback_as_answered and outcome.fallback_used:
            answered += 1
        points.append(make_point(i, correct, answered))
    return points


def export_series(points: list[EvalPoint], path, alt_points: list[EvalPoint] | None = None) -> None:
    """CSV with header i,P,R,F,correct,answered; reals at 4 decimal places.
    When the alternate (fallback-as-answered) series is given, it is
    appended as extra columns of the same file."""
    header = ["i", "P", "R", "F", "correct", "answered"]
    if alt_points is not None:
        header += ["P_fallback_answered", "F_fallback_answered", "answered_fallback"]
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for idx, point in enumerate(points):
            row = [point.i, f"{point.p:.4f}", f"{point.r:.4f}", f"{point.f:.4f}",
                   point.correct, point.answered]
            if alt_points is not None:
                alt = alt_points[idx]
                row += [f"{alt.p:.4f}", f"{alt.f:.4f}", alt.answered]
            writer.writerow(row)


def read_series(path) -> list[EvalPoint]:
    points = []
    with open(path, encoding="utf-8", newline="") as handle:
        for row in csv.DictReader(handle):
            points.append(
                EvalPoint(
                    i=int(row["i"]),
                    p=float(row["P"]),
                    r=float(row["R"]),
                    f=float(row["F"]),
                    correct=int(row["correct"]),
                    answered=int(row["answered"]),
                )
            )
    return points
