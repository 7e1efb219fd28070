#!/usr/bin/env python3
"""Certify the stability bound on randomized pairs across all built-in families.

For each pair and each exponent p the bound and its squared form are evaluated;
the run fails if any slack drops below -1e-6 times the corresponding right-hand
side.  A JSON summary with worst-case slacks per family is written to --out.
"""

import argparse
import json
import sys

import numpy as np

from phasestab.bounds import CERTIFICATION_RTOL, evaluate_theorem
from phasestab.experiments import iter_certification_pairs
from phasestab.io import write_text_atomic


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=200, help="number of random pairs")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="certification_summary.json")
    parser.add_argument(
        "--p", type=lambda s: [float(x) for x in s.split(",")], default=[1.0, 1.25, 1.5, 1.75]
    )
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    worst = {}
    failures = 0
    for name, f, g in iter_certification_pairs(args.count, rng):
        for p in args.p:
            report = evaluate_theorem(f, g, p)
            rel = report.slack / report.rhs if report.rhs > 0 else 0.0
            sq_rhs = report.squared_form_slack + report.lhs**2
            rel_sq = report.squared_form_slack / sq_rhs if sq_rhs > 0 else 0.0
            entry = worst.setdefault(name, {"min_rel_slack": np.inf, "min_rel_sq_slack": np.inf})
            entry["min_rel_slack"] = min(entry["min_rel_slack"], rel)
            entry["min_rel_sq_slack"] = min(entry["min_rel_sq_slack"], rel_sq)
            if rel < -CERTIFICATION_RTOL or rel_sq < -CERTIFICATION_RTOL:
                failures += 1
                print(f"FAIL {name} p={p}: slack={report.slack:.3e}")

    summary = {
        "count": args.count,
        "seed": args.seed,
        "p_values": args.p,
        "certification_rtol": CERTIFICATION_RTOL,
        "failures": failures,
        "per_family_worst": {k: {kk: float(vv) for kk, vv in v.items()} for k, v in worst.items()},
    }
    write_text_atomic(args.out, json.dumps(summary, indent=2))
    for name, entry in summary["per_family_worst"].items():
        print(
            f"{name:20s} min rel slack={entry['min_rel_slack']:+.3e} "
            f"min rel squared slack={entry['min_rel_sq_slack']:+.3e}"
        )
    print(f"{failures} failures over {args.count} pairs x {len(args.p)} exponents")
    return 0 if failures == 0 else 2


if __name__ == "__main__":
    sys.exit(main())
