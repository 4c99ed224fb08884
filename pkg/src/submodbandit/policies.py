"""Bandit policies over cardinality-constrained subsets.

Three policies share one protocol: pull sets of size at most k for exactly T
steps against a :class:`~submodbandit.envs.BanditEnv`.

* ``SubUcbPolicy`` -- grows a base set greedily for ``l`` levels using
  optimistic indices, then runs a flat index policy over all size-k
  super-arms of the base set.
* ``EtcgPolicy`` -- explore-then-commit greedy: every candidate extension is
  sampled exactly m times per level, the best empirical mean is kept, and the
  final set is exploited for the remaining budget.
* ``UcbAllPolicy`` -- the flat index policy over every size-k arm.

Conventions shared by all runners: the optimistic index of an arm with
T_a > 0 pulls is  mean + sqrt(8 * ln(t) / T_a)  with t the global count of
completed pulls and natural logarithm; unpulled arms have index +infinity;
ties always resolve to the first arm in order (candidates ascend by item,
flat arms by lexicographic member tuple).  Every pull is gated on t < T, so
a run stops mid-phase when the budget is exhausted and the trajectory has
exactly T steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .envs import BanditEnv, Trajectory
from .errors import CardinalityExceeded, InvalidStopLevel, TooManyArms
from .sets import ItemSet, mask_members

MAX_ARMS = 10**6

AUTO = "auto"


def default_m(T: int, n: int) -> int:
    """Per-arm sample budget ceil(T^{2/3} n^{-2/3} (ln T)^{1/3}), at least 1."""
    if T < 2 or n < 1:
        raise ValueError(f"need T >= 2 and n >= 1; got T={T}, n={n}")
    m = math.ceil(T ** (2.0 / 3.0) * n ** (-2.0 / 3.0) * math.log(T) ** (1.0 / 3.0))
    return max(1, m)


@dataclass(frozen=True)
class SubUcbConfig:
    """Greedy stop level l (int or "auto" = derived from the horizon) and
    optional per-arm budget m (None = default_m)."""

    l: int | str = AUTO
    m: int | None = None

    def __post_init__(self):
        if isinstance(self.l, str) and self.l != AUTO:
            raise ValueError(f"l must be an integer or '{AUTO}'")
        if self.m is not None and self.m < 1:
            raise ValueError("m must be at least 1")

    def to_json(self) -> dict:
        doc: dict = {"kind": "sub_ucb", "l": self.l}
        if self.m is not None:
            doc["m"] = self.m
        return doc


@dataclass(frozen=True)
class EtcgConfig:
    m: int | None = None

    def __post_init__(self):
        if self.m is not None and self.m < 1:
            raise ValueError("m must be at least 1")

    def to_json(self) -> dict:
        doc: dict = {"kind": "etcg"}
        if self.m is not None:
            doc["m"] = self.m
        return doc


@dataclass(frozen=True)
class UcbAllConfig:
    def to_json(self) -> dict:
        return {"kind": "ucb_all"}


PolicyConfig = SubUcbConfig | EtcgConfig | UcbAllConfig


def policy_config_from_json(doc: dict) -> PolicyConfig:
    kind = doc.get("kind")
    if kind == "sub_ucb":
        return SubUcbConfig(doc.get("l", AUTO), doc.get("m"))
    if kind == "etcg":
        return EtcgConfig(doc.get("m"))
    if kind == "ucb_all":
        return UcbAllConfig()
    raise ValueError(f"unknown policy kind {kind!r}")


def _superarm_masks(n: int, k: int, base_mask: int) -> list[int]:
    """All size-k supersets of base, sorted lexicographically by members."""
    base_size = base_mask.bit_count()
    if k > n:
        raise CardinalityExceeded(f"k={k} exceeds the ground set size n={n}")
    free = [a for a in range(n) if not (base_mask >> a) & 1]
    count = math.comb(len(free), k - base_size)
    if count > MAX_ARMS:
        raise TooManyArms(f"{count} super-arms exceeds the cap {MAX_ARMS}")
    masks = []
    for combo in combinations(free, k - base_size):
        mask = base_mask
        for a in combo:
            mask |= 1 << a
        masks.append(mask)
    masks.sort(key=mask_members)
    return masks


class _IndexLoop:
    """Flat optimistic-index policy over a fixed arm list."""

    def __init__(self, arm_masks: list[int]):
        self.arms = arm_masks
        self.counts = np.zeros(len(arm_masks))
        self.sums = np.zeros(len(arm_masks))
        self._next_unpulled = 0

    def run(self, env: BanditEnv, T: int) -> None:
        arms = self.arms
        counts = self.counts
        sums = self.sums
        while env.t < T:
            if self._next_unpulled < len(arms):
                j = self._next_unpulled
                self._next_unpulled += 1
            else:
                bonus = np.sqrt(8.0 * math.log(env.t) / counts)
                j = int(np.argmax(sums / counts + bonus))
            r = env.pull_mask(arms[j])
            counts[j] += 1.0
            sums[j] += r


class UcbAllPolicy:
    """Flat index policy over all size-k supersets of ``base``."""

    def __init__(self, T: int, k: int, base: ItemSet = ItemSet.empty()):
        if len(base) > k:
            raise ValueError("base cannot exceed the cardinality constraint")
        self.T = T
        self.k = k
        self.base = base

    def run(self, env: BanditEnv) -> Trajectory:
        arms = _superarm_masks(env.spec.n, self.k, self.base.mask)
        _IndexLoop(arms).run(env, self.T)
        return env.trajectory


class EtcgPolicy:
    """Explore-then-commit greedy with per-level budget m."""

    def __init__(self, T: int, k: int, m: int | None = None):
        self.T = T
        self.k = k
        self.m = m
        self.levels_: list[ItemSet] = []

    def run(self, env: BanditEnv) -> Trajectory:
        n = env.spec.n
        if self.k > n:
            raise CardinalityExceeded(f"k={self.k} exceeds the ground set size n={n}")
        T = self.T
        m = self.m if self.m is not None else default_m(T, n)
        self.resolved_m_ = m
        base = 0
        for _level in range(self.k):
            cands = [a for a in range(n) if not (base >> a) & 1]
            means = []
            for a in cands:
                arm = base | (1 << a)
                total = 0.0
                for _ in range(m):
                    if env.t >= T:
                        return env.trajectory
                    total += env.pull_mask(arm)
                means.append(total / m)
            best = max(range(len(cands)), key=lambda j: (means[j], -cands[j]))
            base |= 1 << cands[best]
            self.levels_.append(ItemSet(base))
        while env.t < T:
            env.pull_mask(base)
        return env.trajectory


class SubUcbPolicy:
    """Optimistic greedy for l levels, then flat UCB over the super-arms.

    Phase 1 pulls every singleton m times (skipped entirely when l = 0, which
    makes the run coincide with ``UcbAllPolicy``).  Phase 2 fixes one item per
    level: while the current index-argmax arm has fewer than m pulls, pull it;
    the argmax at exit joins the base set.  Level 1 reuses the singleton
    statistics from phase 1.  Phase 3 hands the remaining budget to the flat
    index policy over all size-k supersets of the base.
    """

    def __init__(self, T: int, k: int, l: int, m: int | None = None):
        if not 0 <= l <= k:
            raise InvalidStopLevel(f"stop level {l} outside [0, {k}]")
        self.T = T
        self.k = k
        self.l = l
        self.m = m
        self.levels_: list[ItemSet] = []

    def run(self, env: BanditEnv) -> Trajectory:
        n = env.spec.n
        if self.k > n:
            raise CardinalityExceeded(f"k={self.k} exceeds the ground set size n={n}")
        T = self.T
        m = self.m if self.m is not None else default_m(T, n)
        self.resolved_m_ = m

        if self.l == 0:
            return UcbAllPolicy(T, self.k).run(env)

        singleton_sums = np.zeros(n)
        singleton_counts = np.zeros(n)
        for a in range(n):
            for _ in range(m):
                if env.t >= T:
                    return env.trajectory
                singleton_sums[a] += env.pull_mask(1 << a)
                singleton_counts[a] += 1.0

        base = 0
        for level in range(1, self.l + 1):
            cands = [a for a in range(n) if not (base >> a) & 1]
            if level == 1:
                counts = singleton_counts[cands].copy()
                sums = singleton_sums[cands].copy()
            else:
                counts = np.zeros(len(cands))
                sums = np.zeros(len(cands))
            while True:
                with np.errstate(divide="ignore", invalid="ignore"):
                    index = np.where(
                        counts > 0,
                        sums / counts + np.sqrt(8.0 * math.log(max(env.t, 1)) / counts),
                        np.inf,
                    )
                j = int(np.argmax(index))
                if counts[j] >= m:
                    break
                if env.t >= T:
                    return env.trajectory
                r = env.pull_mask(base | (1 << cands[j]))
                counts[j] += 1.0
                sums[j] += r
            base |= 1 << cands[j]
            self.levels_.append(ItemSet(base))

        arms = _superarm_masks(n, self.k, base)
        _IndexLoop(arms).run(env, T)
        return env.trajectory


def run_sub_ucb(env: BanditEnv, T: int, k: int, l: int, m: int | None = None) -> Trajectory:
    return SubUcbPolicy(T, k, l, m).run(env)


def run_etcg(env: BanditEnv, T: int, k: int, m: int | None = None) -> Trajectory:
    return EtcgPolicy(T, k, m).run(env)


def run_ucb_all(env: BanditEnv, T: int, k: int, base: ItemSet = ItemSet.empty()) -> Trajectory:
    return UcbAllPolicy(T, k, base).run(env)
