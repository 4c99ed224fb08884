"""Structural verification suite: one pass/fail table per instance.

For a (spec, k) pair the suite checks:

* monotonicity and submodularity (witness printed on failure),
* curvature inside [0, 1],
* the curvature-corrected greedy guarantee for the exact greedy chain,
* agreement of the benchmark DP with explicit chain enumeration (sampled
  deterministically when the chain count is too large to walk in full;
  the sampled variant checks the DP value is a lower bound and that the DP
  witness chain is feasible and costs exactly the DP value).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .functions import SetFunction
from .greedy import (
    check_approx_guarantee,
    enumerate_benchmark,
    exact_greedy,
    greedy_benchmark,
)
from .structure import check_monotone, check_submodular, curvature

FULL_ENUM_CAP = 300_000


@dataclass(frozen=True)
class CheckRow:
    name: str
    ok: bool
    detail: str = ""


def run_checks(spec: SetFunction, k: int) -> list[CheckRow]:
    rows: list[CheckRow] = []

    mono = check_monotone(spec, k)
    detail = ""
    if not mono.ok:
        A, a = mono.witness
        detail = f"f drops when adding {a} to {{{A.render()}}}"
    rows.append(CheckRow("monotone", mono.ok, detail))

    sub = check_submodular(spec, k)
    detail = ""
    if not sub.ok:
        A, B, a = sub.witness
        detail = (
            f"marginal of {a} grows from A={{{A.render()}}} to B={{{B.render()}}}"
        )
    rows.append(CheckRow("submodular", sub.ok, detail))

    c = curvature(spec, k)
    rows.append(CheckRow("curvature_in_range", 0.0 <= c <= 1.0, f"c={c:.6g}"))

    chain = exact_greedy(spec, k)
    guarantee = check_approx_guarantee(spec, k, chain)
    rows.append(
        CheckRow(
            "greedy_guarantee",
            guarantee.ok,
            f"lhs={guarantee.lhs:.6g} rhs={guarantee.rhs:.6g}",
        )
    )

    dp = greedy_benchmark(spec, k)
    total_orders = math.perm(spec.n, k)
    if total_orders <= FULL_ENUM_CAP:
        enum = enumerate_benchmark(spec, k)
        ok = abs(dp.value - enum.value) <= 1e-12
        rows.append(
            CheckRow(
                "benchmark_dp_vs_enum",
                ok,
                f"dp={dp.value:.12g} enum={enum.value:.12g}",
            )
        )
    else:
        enum = enumerate_benchmark(spec, k, max_chains=FULL_ENUM_CAP)
        witness_cost = dp.chain.total_slack() + spec.value_of_mask(
            dp.chain.final_set().mask
        )
        ok = dp.value <= enum.value + 1e-12 and abs(witness_cost - dp.value) <= 1e-12
        rows.append(
            CheckRow(
                "benchmark_dp_vs_enum_sampled",
                ok,
                f"dp={dp.value:.12g} sampled_min={enum.value:.12g}",
            )
        )
    return rows


def format_table(label: str, rows: list[CheckRow]) -> str:
    lines = [f"instance: {label}"]
    width = max(len(r.name) for r in rows)
    for r in rows:
        status = "PASS" if r.ok else "FAIL"
        detail = f"  {r.detail}" if r.detail else ""
        lines.append(f"  {r.name:<{width}}  {status}{detail}")
    return "\n".join(lines)


def all_ok(rows: list[CheckRow]) -> bool:
    return all(r.ok for r in rows)
