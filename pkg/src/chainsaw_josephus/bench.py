"""Wall-clock comparison of the ring structures on one game."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .game import GameConfig, Mode, run
from .rings import RingKind


@dataclass(frozen=True)
class BenchResult:
    ring: RingKind
    seconds: float
    slots: int


def bench(
    config: GameConfig,
    mode: Mode | str = Mode.SURVIVOR,
    rings=tuple(RingKind),
    repeat: int = 1,
) -> list[BenchResult]:
    """Best-of-``repeat`` time of :func:`run` for each ring."""
    results = []
    for ring in rings:
        ring = RingKind(ring)
        best = float("inf")
        slots = 0
        for _ in range(repeat):
            t0 = time.perf_counter()
            out = run(config, mode, ring)
            best = min(best, time.perf_counter() - t0)
            slots = out.slots
        results.append(BenchResult(ring, best, slots))
    return results
