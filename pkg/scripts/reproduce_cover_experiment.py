#!/usr/bin/env python3
"""Run the weighted-cover policy comparison and render the regret chart.

Writes config, results.csv, manifest.json and regret.svg under
results-cover/ (override with --out).  Compares the greedy-then-UCB policy
at every stop level, the horizon-matched "auto" level, explore-then-commit
and flat UCB, 50 trials each, unit Gaussian noise.
"""

import argparse
import json
from pathlib import Path

from submodbandit.catalog import experiment_cover
from submodbandit.cli import main as cli_main


def build_config(out_dir: str, trials: int, horizons: list[int]) -> dict:
    cover, k = experiment_cover()
    policies = [{"kind": "sub_ucb", "l": "auto"}]
    policies += [{"kind": "sub_ucb", "l": l, "label": f"sub_ucb_l{l}"} for l in range(k + 1)]
    policies += [{"kind": "etcg"}, {"kind": "ucb_all"}]
    return {
        "function": cover.to_json(),
        "n": cover.n,
        "k": k,
        "sigma": 1.0,
        "T_grid": horizons,
        "policies": policies,
        "trials": trials,
        "base_seed": 20250810,
        "checkpoints": "log",
        "output_dir": out_dir,
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results-cover")
    parser.add_argument("--trials", type=int, default=50)
    parser.add_argument("--jobs", type=int, default=8)
    parser.add_argument(
        "--horizons", type=int, nargs="+", default=[1000, 2000, 5000, 10000, 20000]
    )
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    config_path = out / "config.json"
    config_path.write_text(
        json.dumps(build_config(str(out), args.trials, args.horizons), indent=2)
    )

    code = cli_main(["run", str(config_path), "--jobs", str(args.jobs)])
    if code != 0:
        return code
    return cli_main(["plot", str(out / "results.csv"), str(out / "regret.svg")])


if __name__ == "__main__":
    raise SystemExit(main())
