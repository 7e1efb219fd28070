#!/usr/bin/env python3
"""Run all four scaling experiments with default sweeps and write reports.

Writes <outdir>/<name>.json plus one CSV per fitted observable, and prints a
one-line summary per experiment.  Exits nonzero if any slope lands outside its
tolerance.
"""

import argparse
import json
import sys
from pathlib import Path

from phasestab.experiments import (
    optimality_experiment,
    tail_experiment,
    translation_experiment,
    triangle_experiment,
)
from phasestab.io import write_text_atomic


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="results", help="directory for reports")
    args = parser.parse_args()
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    runs = {
        "optimality": lambda: optimality_experiment()[0],
        "triangle": lambda: [triangle_experiment()],
        "translation": lambda: [translation_experiment()],
        "tail_k2_n1": lambda: [tail_experiment(2, 1)],
        "tail_k4_n1": lambda: [tail_experiment(4, 1)],
        "tail_k3_n2": lambda: [tail_experiment(3, 2)],
    }

    all_ok = True
    for name, run in runs.items():
        results = run()
        write_text_atomic(
            outdir / f"{name}.json", json.dumps([r.to_dict() for r in results], indent=2)
        )
        for r in results:
            rows = ["parameter,observable"] + [
                f"{x!r},{y!r}" for x, y in zip(r.parameter_values, r.observable_values)
            ]
            write_text_atomic(outdir / f"{name}.{r.name}.csv", "\n".join(rows) + "\n")
            status = "pass" if r.passed else "FAIL"
            print(
                f"{r.name:18s} slope={r.fitted_slope:+.4f} (+-{r.slope_stderr:.4f}) "
                f"expected={r.expected_slope:+.4f} tol={r.slope_tolerance} -> {status}"
            )
            all_ok = all_ok and r.passed
    return 0 if all_ok else 2


if __name__ == "__main__":
    sys.exit(main())
