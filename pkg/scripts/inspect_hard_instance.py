#!/usr/bin/env python3
"""Print the value table, optimum, curvature and benchmark of a hard instance.

Example:
    python scripts/inspect_hard_instance.py --n 9 --k 3 --elevated
"""

import argparse

from submodbandit import (
    brute_force_opt,
    curvature,
    evaluate,
    exact_greedy,
    greedy_benchmark,
    tabular_from_spec,
)
from submodbandit.catalog import harmonic_base, harmonic_elevated
from submodbandit.sets import render_mask


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=6)
    parser.add_argument("--k", type=int, default=2)
    parser.add_argument("--delta", type=float, default=None)
    parser.add_argument("--elevated", action="store_true")
    args = parser.parse_args()

    spec = (
        harmonic_elevated(args.n, args.k, args.delta)
        if args.elevated
        else harmonic_base(args.n, args.k, args.delta)
    )
    table = tabular_from_spec(spec, args.k)
    for mask in sorted(table.table, key=lambda m: (m.bit_count(), render_mask(m))):
        print(f"{{{render_mask(mask)}}}\t{table.table[mask]:.12g}")

    opt_set, f_star = brute_force_opt(spec, args.k)
    chain = exact_greedy(spec, args.k)
    bench = greedy_benchmark(spec, args.k)
    print(f"optimum      : {{{opt_set.render()}}} = {f_star:.12g}")
    print(f"greedy chain : {' > '.join('{' + lvl.render() + '}' for lvl in chain.levels)}")
    print(f"greedy value : {evaluate(spec, chain.final_set()):.12g}")
    print(f"curvature    : {curvature(spec, args.k):.12g}")
    print(f"benchmark B  : {bench.value:.12g}")
    print(
        "cheapest chain: "
        + " > ".join("{" + lvl.render() + "}" for lvl in bench.chain.levels)
        + f"  slacks {[round(e, 10) for e in bench.chain.eps]}"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
