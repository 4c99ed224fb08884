"""Experiment harness: config ingestion, trial orchestration, CSV output.

A run is a grid of cells (policy, horizon, trial).  Each cell derives its
seed from a stable 64-bit hash of (base_seed, policy index, T, trial), runs
its policy against a fresh environment and reports pseudo-regret at the
requested checkpoints.  Cells are independent, so they may be executed in
any order or in parallel; results are merged in (policy, T, trial,
checkpoint) order and written with 17 significant digits, which makes
results.csv byte-identical across runs and across worker counts.
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .analysis import auto_stop_level, benchmark_summary, regret_report
from .envs import BanditEnv
from .errors import ConfigError, GroundSetTooLarge, TooManyArms
from .functions import SetFunction, spec_from_json
from .policies import (
    AUTO,
    EtcgConfig,
    PolicyConfig,
    SubUcbConfig,
    UcbAllConfig,
    default_m,
    policy_config_from_json,
)
from .structure import MAX_EXHAUSTIVE_N
from .svgplot import RESULTS_HEADER


@dataclass(frozen=True)
class ExperimentConfig:
    function: SetFunction
    n: int
    k: int
    sigma: float
    T_grid: tuple[int, ...]
    policies: tuple[PolicyConfig, ...]
    labels: tuple[str, ...]
    trials: int
    base_seed: int
    checkpoints: str | tuple[int, ...]
    output_dir: str

    def to_json(self) -> dict:
        return {
            "function": self.function.to_json(),
            "n": self.n,
            "k": self.k,
            "sigma": self.sigma,
            "T_grid": list(self.T_grid),
            "policies": [
                dict(p.to_json(), label=label)
                for p, label in zip(self.policies, self.labels)
            ],
            "trials": self.trials,
            "base_seed": self.base_seed,
            "checkpoints": self.checkpoints
            if isinstance(self.checkpoints, str)
            else list(self.checkpoints),
            "output_dir": self.output_dir,
        }


def _default_label(cfg: PolicyConfig) -> str:
    if isinstance(cfg, SubUcbConfig):
        return "sub_ucb_auto" if cfg.l == AUTO else f"sub_ucb_l{cfg.l}"
    if isinstance(cfg, EtcgConfig):
        return "etcg"
    if isinstance(cfg, UcbAllConfig):
        return "ucb_all"
    raise ConfigError(f"unknown policy config {cfg!r}")


def config_from_json(doc: dict) -> ExperimentConfig:
    """Validate and build a config; raises ConfigError naming the bad field."""

    def need(field: str):
        if field not in doc:
            raise ConfigError(f"missing field '{field}'")
        return doc[field]

    try:
        function = spec_from_json(need("function"))
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"field 'function': {exc}") from exc

    n = need("n")
    if n != function.n:
        raise ConfigError(f"field 'n': {n} disagrees with the function's n={function.n}")
    k = need("k")
    if not 1 <= k <= min(n, function.k_max):
        raise ConfigError(f"field 'k': need 1 <= k <= min(n, k_max); got {k}")
    sigma = float(need("sigma"))
    if sigma < 0:
        raise ConfigError(f"field 'sigma': must be nonnegative; got {sigma}")

    T_grid = tuple(int(T) for T in need("T_grid"))
    if not T_grid or any(T < 1 for T in T_grid):
        raise ConfigError("field 'T_grid': need a nonempty list of horizons >= 1")
    if len(set(T_grid)) != len(T_grid):
        raise ConfigError("field 'T_grid': horizons must be distinct")

    raw_policies = need("policies")
    if not raw_policies:
        raise ConfigError("field 'policies': need at least one policy")
    policies = []
    labels = []
    for i, pdoc in enumerate(raw_policies):
        label = pdoc.get("label")
        try:
            cfg = policy_config_from_json({k_: v for k_, v in pdoc.items() if k_ != "label"})
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"field 'policies[{i}]': {exc}") from exc
        if isinstance(cfg, SubUcbConfig) and cfg.l != AUTO and not 0 <= cfg.l <= k:
            raise ConfigError(f"field 'policies[{i}]': stop level {cfg.l} outside [0, {k}]")
        policies.append(cfg)
        labels.append(label if label is not None else _default_label(cfg))
    if len(set(labels)) != len(labels):
        raise ConfigError("field 'policies': labels must be unique (set 'label' to disambiguate)")

    trials = int(need("trials"))
    if trials < 1:
        raise ConfigError(f"field 'trials': must be >= 1; got {trials}")
    base_seed = int(need("base_seed"))

    checkpoints = doc.get("checkpoints", "log")
    if checkpoints != "log":
        checkpoints = tuple(int(t) for t in checkpoints)
        if not checkpoints or any(t < 1 for t in checkpoints):
            raise ConfigError("field 'checkpoints': entries must be >= 1")
        if len(set(checkpoints)) != len(checkpoints):
            raise ConfigError("field 'checkpoints': entries must be distinct")
        if max(checkpoints) > min(T_grid):
            raise ConfigError(
                "field 'checkpoints': explicit checkpoints must not exceed the smallest horizon"
            )

    output_dir = doc.get("output_dir", "results")

    return ExperimentConfig(
        function=function,
        n=n,
        k=k,
        sigma=sigma,
        T_grid=T_grid,
        policies=tuple(policies),
        labels=tuple(labels),
        trials=trials,
        base_seed=base_seed,
        checkpoints=checkpoints,
        output_dir=str(output_dir),
    )


def load_config(path: str | Path) -> ExperimentConfig:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    except OSError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return config_from_json(doc)


def derive_seed(base_seed: int, policy_index: int, T: int, trial: int) -> int:
    """Stable 64-bit seed from the cell coordinates."""
    text = f"{base_seed}|{policy_index}|{T}|{trial}"
    digest = hashlib.sha256(text.encode()).digest()
    return int.from_bytes(digest[:8], "little")


def checkpoint_grid(checkpoints: str | tuple[int, ...], T: int) -> tuple[int, ...]:
    """'log' means powers of two up to T, plus T itself."""
    if checkpoints == "log":
        cps = []
        t = 1
        while t <= T:
            cps.append(t)
            t *= 2
        if cps[-1] != T:
            cps.append(T)
        return tuple(cps)
    return tuple(t for t in checkpoints)


def resolve_policy(cfg: PolicyConfig, n: int, k: int, T: int):
    """Resolved (l, m) for the manifest; None where not applicable."""
    if isinstance(cfg, SubUcbConfig):
        l = auto_stop_level(n, k, T) if cfg.l == AUTO else int(cfg.l)
        m = cfg.m if cfg.m is not None else default_m(T, n)
        return l, m
    if isinstance(cfg, EtcgConfig):
        return None, cfg.m if cfg.m is not None else default_m(T, n)
    return None, None


def _build_policy(cfg: PolicyConfig, k: int, T: int, l, m):
    from .policies import EtcgPolicy, SubUcbPolicy, UcbAllPolicy

    if isinstance(cfg, SubUcbConfig):
        return SubUcbPolicy(T, k, l, m)
    if isinstance(cfg, EtcgConfig):
        return EtcgPolicy(T, k, m)
    return UcbAllPolicy(T, k)


def _run_cell(args: tuple) -> list[str]:
    """Worker: one (policy, T, trial) cell; returns formatted CSV lines."""
    (spec_doc, k, sigma, policy_doc, label, T, trial, seed, cps, l, m) = args
    spec = spec_from_json(spec_doc)
    cfg = policy_config_from_json(policy_doc)
    env = BanditEnv(spec, sigma, seed)
    policy = _build_policy(cfg, k, T, l, m)
    traj = policy.run(env)
    report = regret_report(traj, spec, k, cps)
    lines = []
    for row in report.checkpoints:
        lines.append(
            f"{label},{T},{trial},{seed},{row.t},"
            f"{row.cum_reward:.17g},{row.regret_opt:.17g},"
            f"{row.regret_alpha:.17g},{row.regret_gr:.17g}"
        )
    return lines


def run_experiment(
    config: ExperimentConfig, jobs: int = 1, output_dir: str | Path | None = None
) -> tuple[Path, Path]:
    """Execute every cell, write results.csv and manifest.json.

    Returns (results_path, manifest_path).  Raises GroundSetTooLarge or
    TooManyArms before any file is written when a resource guard trips.
    """
    out = Path(output_dir if output_dir is not None else config.output_dir)

    # fail fast on resource guards
    if config.n > MAX_EXHAUSTIVE_N:
        raise GroundSetTooLarge(f"n={config.n} exceeds {MAX_EXHAUSTIVE_N}")
    for cfg in config.policies:
        for T in config.T_grid:
            arms = None
            if isinstance(cfg, UcbAllConfig):
                arms = math.comb(config.n, config.k)
            elif isinstance(cfg, SubUcbConfig):
                l, _ = resolve_policy(cfg, config.n, config.k, T)
                arms = math.comb(config.n - l, config.k - l)
            if arms is not None and arms > 10**6:
                raise TooManyArms(f"policy over {arms} arms exceeds the cap")
    benchmark_summary(config.function, config.k)  # raises GroundSetTooLarge early

    spec_doc = config.function.to_json()
    cells = []
    manifest_cells = []
    # rows come out totally ordered by (policy index, T, trial, checkpoint)
    for p_idx, (cfg, label) in enumerate(zip(config.policies, config.labels)):
        for T in sorted(config.T_grid):
            l, m = resolve_policy(cfg, config.n, config.k, T)
            cps = checkpoint_grid(config.checkpoints, T)
            for trial in range(config.trials):
                seed = derive_seed(config.base_seed, p_idx, T, trial)
                cells.append(
                    (
                        spec_doc,
                        config.k,
                        config.sigma,
                        cfg.to_json(),
                        label,
                        T,
                        trial,
                        seed,
                        cps,
                        l,
                        m,
                    )
                )
                manifest_cells.append(
                    {
                        "policy": label,
                        "policy_index": p_idx,
                        "T": T,
                        "trial": trial,
                        "seed": seed,
                        "l": l,
                        "m": m,
                    }
                )

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_cell, cells, chunksize=1))
    else:
        results = [_run_cell(cell) for cell in cells]

    out.mkdir(parents=True, exist_ok=True)
    results_path = out / "results.csv"
    lines = [",".join(RESULTS_HEADER)]
    for cell_lines in results:
        lines.extend(cell_lines)
    results_path.write_text("\n".join(lines) + "\n")

    manifest_path = out / "manifest.json"
    manifest = {
        "artifact_version": __version__,
        "config": config.to_json(),
        "cells": manifest_cells,
    }
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return results_path, manifest_path
