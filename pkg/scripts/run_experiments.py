#!/usr/bin/env python3
"""Run the full desk-scale experiment grid on the shipped fixtures.

First experiment: the four answer-extraction scenarios (heuristics only;
patterns with reference fallback; heuristics + patterns; everything).
Second experiment: revision runs on scenario 2 with shrinking checkpoint
intervals, showing that more backward loops recover more questions.

Writes per-run outputs (outcome logs, metric series, metadata) under
out/experiments/ and prints an endpoint summary table.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from patternqa.cli import main as cli_main  # noqa: E402


def run(label: str, *argv: str) -> None:
    print(f"== {label}")
    code = cli_main(list(argv))
    if code != 0:
        raise SystemExit(f"{label} failed with exit code {code}")
    print()


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--corpus", default=str(ROOT / "fixtures" / "qa30.jsonl"))
    parser.add_argument("--docs", default=str(ROOT / "fixtures" / "docs.jsonl"))
    parser.add_argument("--out", default=str(ROOT / "out" / "experiments"))
    parser.add_argument("--revise-intervals", type=int, nargs="*", default=[10, 5])
    args = parser.parse_args()

    out = Path(args.out)
    for scenario in (1, 2, 3, 4):
        run(f"scenario {scenario}",
            "run", "--scenario", str(scenario),
            "--corpus", args.corpus, "--docs", args.docs,
            "--out-dir", str(out / f"scenario{scenario}"),
            "--kb-out", str(out / f"scenario{scenario}" / "kb.json"))

    for interval in args.revise_intervals:
        run(f"scenario 2 with revision every {interval} questions",
            "run", "--scenario", "2",
            "--corpus", args.corpus, "--docs", args.docs,
            "--revise-interval", str(interval),
            "--out-dir", str(out / f"scenario2_revise{interval}"))

    print(f"all outputs under {out}")


if __name__ == "__main__":
    main()
