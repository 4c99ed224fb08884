"""Noiseless reward functions over subsets of a ground set.

Four families are supported:

* ``Tabular`` -- an explicit table of values for every subset up to a
  cardinality cap, the catch-all representation.
* ``WeightedCover`` -- the weight of the blocks of a fixed partition touched
  by the chosen set.
* ``UniqueGreedyPath`` -- harmonic rewards along the prefix chain
  {0}, {0,1}, ... with a flat penalty off the chain, so greedy selection has
  exactly one path to the top.
* ``HarmonicInstance`` -- the hard family used for worst-case experiments:
  harmonic rewards with one chain elevated by a tunable gap ``delta``
  (either the prefix chain itself, or a planted chain through items >= k).

All values live in [0, 1] and the empty set is worth 0 for the structured
families.  Every spec is immutable and usable as a cache key.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .errors import CardinalityExceeded, OutOfRange
from .sets import ItemSet, render_mask


def _popcount(mask: int) -> int:
    return mask.bit_count()


class SetFunction:
    """Base class; concrete specs implement ``_value`` on raw masks."""

    n: int

    @property
    def k_max(self) -> int:
        raise NotImplementedError

    def _value(self, mask: int) -> float:
        raise NotImplementedError

    def value_of_mask(self, mask: int) -> float:
        """Validated evaluation on a raw bit mask."""
        if mask >> self.n:
            raise OutOfRange(f"set {render_mask(mask)} has items >= n={self.n}")
        if _popcount(mask) > self.k_max:
            raise CardinalityExceeded(
                f"|S|={_popcount(mask)} exceeds k_max={self.k_max}"
            )
        return self._value(mask)

    def cache_key(self) -> tuple:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


def evaluate(spec: SetFunction, items: ItemSet) -> float:
    """Exact, noise-free value of ``items`` under ``spec``."""
    return spec.value_of_mask(items.mask)


def harmonic_tail(k: int, size: int) -> float:
    """H_{size+k} - H_k, i.e. sum of 1/(k+i) for i = 1..size."""
    return sum((1.0 / (k + i) for i in range(1, size + 1)), 0.0)


@dataclass(frozen=True)
class Tabular(SetFunction):
    """Explicit value table covering every subset of cardinality <= k_max."""

    n: int
    k_max_: int
    table: Mapping[int, float] = field(repr=False)

    def __post_init__(self):
        if not 0 <= self.k_max_ <= self.n:
            raise ValueError(f"k_max must lie in [0, n]; got {self.k_max_}")
        expected = sum(math.comb(self.n, i) for i in range(self.k_max_ + 1))
        if len(self.table) != expected:
            raise ValueError(
                f"table has {len(self.table)} entries; a complete table up to "
                f"cardinality {self.k_max_} over n={self.n} needs {expected}"
            )
        for mask, v in self.table.items():
            if mask >> self.n:
                raise OutOfRange(f"table key {render_mask(mask)} exceeds n={self.n}")
            if _popcount(mask) > self.k_max_:
                raise CardinalityExceeded(
                    f"table key {render_mask(mask)} larger than k_max={self.k_max_}"
                )
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"value {v} for {render_mask(mask)} outside [0, 1]")
        if self.table.get(0, 0.0) != 0.0:
            raise ValueError("the empty set must have value 0")

    @classmethod
    def from_values(cls, n: int, k_max: int, values: Mapping[ItemSet, float]) -> "Tabular":
        return cls(n, k_max, {s.mask: float(v) for s, v in values.items()})

    @property
    def k_max(self) -> int:
        return self.k_max_

    def _value(self, mask: int) -> float:
        return self.table[mask]

    def cache_key(self) -> tuple:
        return ("tabular", self.n, self.k_max_, tuple(sorted(self.table.items())))

    def to_json(self) -> dict:
        table = {
            render_mask(mask): v
            for mask, v in sorted(self.table.items(), key=lambda kv: kv[0])
        }
        return {"kind": "tabular", "n": self.n, "k_max": self.k_max_, "table": table}


@dataclass(frozen=True)
class WeightedCover(SetFunction):
    """Sum of block weights over blocks intersected by the chosen set.

    ``blocks`` must partition [0, n); weights are nonnegative and sum to at
    most 1 so values stay inside [0, 1].
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.blocks) != len(self.weights):
            raise ValueError("one weight per block required")
        seen = 0
        for block in self.blocks:
            bmask = 0
            for a in block:
                if not 0 <= a < self.n:
                    raise OutOfRange(f"block item {a} outside [0, {self.n})")
                bmask |= 1 << a
            if bmask & seen:
                raise ValueError("blocks must be disjoint")
            seen |= bmask
        if seen != (1 << self.n) - 1:
            raise ValueError("blocks must cover the whole ground set")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        if sum(self.weights) > 1.0 + 1e-12:
            raise ValueError("weights must sum to at most 1")
        object.__setattr__(
            self,
            "_block_masks",
            tuple(sum(1 << a for a in block) for block in self.blocks),
        )

    @property
    def k_max(self) -> int:
        return self.n

    def _value(self, mask: int) -> float:
        total = 0.0
        for bmask, w in zip(self._block_masks, self.weights):
            if mask & bmask:
                total += w
        return total

    def cache_key(self) -> tuple:
        return ("weighted_cover", self.n, self.blocks, self.weights)

    def to_json(self) -> dict:
        return {
            "kind": "weighted_cover",
            "n": self.n,
            "blocks": [list(b) for b in self.blocks],
            "weights": list(self.weights),
        }


@dataclass(frozen=True)
class UniqueGreedyPath(SetFunction):
    """Harmonic chain rewards with a flat penalty off the prefix chain.

    Prefix sets {0, ..., s-1} are worth H_{s+k} - H_k; every other set of
    size s is worth the same minus ``delta``.  Greedy selection therefore
    follows the single path {0} -> {0,1} -> ... -> {0,...,k-1}.
    """

    n: int
    k: int
    delta: float = 0.01

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n; got k={self.k}, n={self.n}")
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        object.__setattr__(
            self,
            "_base",
            tuple(harmonic_tail(self.k, s) for s in range(self.k + 1)),
        )

    @property
    def k_max(self) -> int:
        return self.k

    def _value(self, mask: int) -> float:
        s = _popcount(mask)
        base = self._base[s]
        if mask == (1 << s) - 1:
            return base
        return base - self.delta

    def cache_key(self) -> tuple:
        return ("unique_greedy_path", self.n, self.k, self.delta)

    def to_json(self) -> dict:
        return {
            "kind": "unique_greedy_path",
            "n": self.n,
            "k": self.k,
            "delta": self.delta,
        }


@dataclass(frozen=True)
class HarmonicInstance(SetFunction):
    """Harmonic-reward hard instance with one delta-elevated chain.

    The base variant rewards the prefix chain {0,...,s-1} with
    H_{s+k} - H_k, penalizes every other size-k set by ``delta`` and every
    other smaller set by ``delta/k``.  The elevated variant additionally
    plants a chain that follows the prefix for ``prefix_len`` items and then
    runs through ``tail`` (distinct items drawn from [k, n)); sets along the
    planted chain gain ``delta/k`` and the full planted set gains ``delta``.
    """

    n: int
    k: int
    delta: float
    prefix_len: int | None = None
    tail: tuple[int, ...] | None = None

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n; got k={self.k}, n={self.n}")
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if (self.prefix_len is None) != (self.tail is None):
            raise ValueError("prefix_len and tail must be given together")
        if self.tail is not None:
            object.__setattr__(self, "tail", tuple(self.tail))
            p = self.prefix_len
            if not 0 <= p <= self.k:
                raise ValueError(f"prefix_len must lie in [0, k]; got {p}")
            if len(self.tail) != self.k - p:
                raise ValueError(
                    f"tail needs exactly k - prefix_len = {self.k - p} items"
                )
            if len(set(self.tail)) != len(self.tail):
                raise ValueError("tail items must be distinct")
            for a in self.tail:
                if not self.k <= a < self.n:
                    raise OutOfRange(f"tail item {a} outside [k, n) = [{self.k}, {self.n})")
            chain = {}
            mask = (1 << p) - 1
            for a in self.tail:
                mask |= 1 << a
                chain[_popcount(mask)] = mask
            if p == self.k:
                chain[self.k] = mask  # planted chain degenerates to the prefix
            object.__setattr__(self, "_chain_masks", chain)
        object.__setattr__(
            self,
            "_base",
            tuple(harmonic_tail(self.k, s) for s in range(self.k + 1)),
        )

    @classmethod
    def base(cls, n: int, k: int, delta: float) -> "HarmonicInstance":
        return cls(n, k, delta)

    @classmethod
    def elevated(
        cls, n: int, k: int, delta: float, prefix_len: int, tail: tuple[int, ...]
    ) -> "HarmonicInstance":
        return cls(n, k, delta, prefix_len, tail)

    @property
    def is_elevated(self) -> bool:
        return self.tail is not None

    @property
    def k_max(self) -> int:
        return self.k

    def _value(self, mask: int) -> float:
        s = _popcount(mask)
        base = self._base[s]
        if self.tail is not None:
            planted = self._chain_masks.get(s)
            if planted is not None and mask == planted:
                return base + (self.delta if s == self.k else self.delta / self.k)
        if mask == (1 << s) - 1:
            return base
        if s == self.k:
            return base - self.delta
        return base - self.delta / self.k

    def cache_key(self) -> tuple:
        return ("harmonic", self.n, self.k, self.delta, self.prefix_len, self.tail)

    def to_json(self) -> dict:
        doc = {
            "kind": "harmonic",
            "n": self.n,
            "k": self.k,
            "delta": self.delta,
            "variant": "elevated" if self.is_elevated else "base",
        }
        if self.is_elevated:
            doc["prefix_len"] = self.prefix_len
            doc["tail"] = list(self.tail)
        return doc


def spec_from_json(doc: dict) -> SetFunction:
    """Rebuild a spec from its JSON form (see each class's ``to_json``)."""
    kind = doc.get("kind")
    if kind == "tabular":
        table = {ItemSet.parse(key).mask: float(v) for key, v in doc["table"].items()}
        return Tabular(int(doc["n"]), int(doc["k_max"]), table)
    if kind == "weighted_cover":
        return WeightedCover(
            int(doc["n"]),
            tuple(tuple(int(a) for a in b) for b in doc["blocks"]),
            tuple(float(w) for w in doc["weights"]),
        )
    if kind == "unique_greedy_path":
        return UniqueGreedyPath(int(doc["n"]), int(doc["k"]), float(doc["delta"]))
    if kind == "harmonic":
        variant = doc.get("variant", "base")
        if variant == "base":
            return HarmonicInstance(int(doc["n"]), int(doc["k"]), float(doc["delta"]))
        if variant == "elevated":
            return HarmonicInstance(
                int(doc["n"]),
                int(doc["k"]),
                float(doc["delta"]),
                int(doc["prefix_len"]),
                tuple(int(a) for a in doc["tail"]),
            )
        raise ValueError(f"unknown harmonic variant {variant!r}")
    raise ValueError(f"unknown spec kind {kind!r}")


def tabular_from_spec(spec: SetFunction, k: int) -> Tabular:
    """Materialize any spec as an explicit Tabular copy up to cardinality k."""
    from itertools import combinations

    table = {}
    for size in range(k + 1):
        for combo in combinations(range(spec.n), size):
            mask = sum(1 << a for a in combo)
            table[mask] = spec.value_of_mask(mask)
    return Tabular(spec.n, k, table)
