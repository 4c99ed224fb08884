"""Named built-in instances used by the CLI and the test suite."""

from __future__ import annotations

from .functions import HarmonicInstance, SetFunction, UniqueGreedyPath, WeightedCover

HARMONIC_GRID = ((6, 2), (9, 3), (12, 4))


def experiment_cover() -> tuple[WeightedCover, int]:
    """Partition 5,5,4,1 over n=15 with weights .1,.1,.2,.6; k = 4."""
    blocks = (
        tuple(range(0, 5)),
        tuple(range(5, 10)),
        tuple(range(10, 14)),
        (14,),
    )
    return WeightedCover(15, blocks, (0.1, 0.1, 0.2, 0.6)), 4


def tight_delta(k: int) -> float:
    """The largest gap 1/(8 k^2) the hard family tolerates while staying submodular."""
    return 1.0 / (8.0 * k * k)


def harmonic_base(n: int, k: int, delta: float | None = None) -> HarmonicInstance:
    return HarmonicInstance(n, k, tight_delta(k) if delta is None else delta)


def harmonic_elevated(
    n: int, k: int, delta: float | None = None, prefix_len: int = 0
) -> HarmonicInstance:
    tail = tuple(range(k, 2 * k - prefix_len))
    return HarmonicInstance(
        n, k, tight_delta(k) if delta is None else delta, prefix_len, tail
    )


def unique_path(k: int, n: int | None = None, delta: float = 0.01) -> UniqueGreedyPath:
    if n is None:
        n = min(12, k + 2)
    return UniqueGreedyPath(n, k, delta)


def builtin_instances() -> dict[str, tuple[SetFunction, int]]:
    """Registry of named (spec, k) pairs for the verify/instance subcommands."""
    registry: dict[str, tuple[SetFunction, int]] = {}
    cover, k_cover = experiment_cover()
    registry["cover15"] = (cover, k_cover)
    for n, k in HARMONIC_GRID:
        registry[f"harmonic-base-{n}-{k}"] = (harmonic_base(n, k), k)
        registry[f"harmonic-elevated-{n}-{k}"] = (harmonic_elevated(n, k), k)
    for k in range(2, 9):
        spec = unique_path(k)
        registry[f"unique-path-{k}"] = (spec, k)
    return registry
