"""Timing harness for the fast equivalence check on equivalent pairs."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

import numpy as np

from .equivalence import same_display_set
from .generate import NORMAL, GenSpec, insert_trivial_shortcut, random_network

DEFAULT_SIZES = (50, 100, 200, 400)


@dataclass(frozen=True)
class BenchRow:
    n: int
    mean_ms: float
    max_ms: float
    equivalent: bool


@dataclass(frozen=True)
class BenchResult:
    rows: list[BenchRow]
    exponent: float | None


def equivalent_pair(n: int, seed: int, shortcuts: int = 3):
    """A normal network on ``n`` leaves and a copy with trivial shortcuts added."""
    net = random_network(GenSpec(n, max(1, n // 10), seed, NORMAL))
    rng = random.Random(seed)
    other = net
    for _ in range(shortcuts):
        other = insert_trivial_shortcut(other, rng)
    return net, other


def fit_exponent(sizes, times) -> float:
    """Slope of the least-squares line through ``(log n, log t)``."""
    slope, _ = np.polyfit(np.log(sizes), np.log(times), 1)
    return float(slope)


def run_bench(sizes=DEFAULT_SIZES, seed: int = 0, repeats: int = 3) -> BenchResult:
    sizes = list(sizes)
    if sizes != sorted(sizes) or len(set(sizes)) != len(sizes):
        raise ValueError("sizes must be strictly increasing")
    rows = []
    for n in sizes:
        net, other = equivalent_pair(n, seed + n)
        samples = []
        verdict = True
        for _ in range(repeats):
            start = time.perf_counter()
            verdict = same_display_set(net, other).equivalent
            samples.append((time.perf_counter() - start) * 1000)
        rows.append(BenchRow(n, sum(samples) / len(samples), max(samples), verdict))
    exponent = None
    if len(rows) > 1:
        exponent = fit_exponent([r.n for r in rows], [r.mean_ms for r in rows])
    return BenchResult(rows, exponent)
