"""Scaling benchmark for the completion search."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from .generate import gen_no_instance, gen_planted
from .incomplete import recognize_strong_robinsonian


@dataclass(frozen=True)
class BenchRow:
    free: int
    mean_time_ms: float
    completions_tested: float
    yes: int
    runs: int


def _instance(kind: str, n: int, values: int, free: int, seed: int):
    if kind == "no":
        return gen_no_instance(n, values, free, seed).matrix
    return gen_planted(n, values, free, seed).matrix


def run_bench(
    n: int,
    values: int,
    frees: Iterable[int],
    seeds: Sequence[int],
    exhaustive: bool = True,
    kind: str = "no",
    workers: int | None = 1,
) -> list[BenchRow]:
    """Time recognition for each hole count, averaged over ``seeds``.

    ``kind="no"`` uses claw instances that every completion fails, so with
    ``exhaustive`` the tested count is exactly ``values ** free``.  One
    untimed warm-up run precedes the measurements.
    """
    frees = list(frees)
    if not frees or not seeds:
        return []
    warm = _instance(kind, n, values, frees[0], seeds[0])
    recognize_strong_robinsonian(warm, exhaustive=exhaustive, workers=workers)
    rows = []
    for free in frees:
        times, tested, yes = [], [], 0
        for seed in seeds:
            A = _instance(kind, n, values, free, seed)
            t0 = time.perf_counter()
            out = recognize_strong_robinsonian(A, exhaustive=exhaustive, workers=workers)
            times.append((time.perf_counter() - t0) * 1000.0)
            tested.append(out.tried)
            yes += bool(out)
        mean_tested = sum(tested) / len(tested)
        rows.append(BenchRow(free, sum(times) / len(times), mean_tested, yes, len(seeds)))
    return rows


def growth_ratio(rows: Sequence[BenchRow]) -> float:
    """Geometric mean of the ratios between consecutive mean times."""
    ratios = [b.mean_time_ms / a.mean_time_ms for a, b in zip(rows, rows[1:])]
    if not ratios:
        return float("nan")
    return math.exp(sum(math.log(r) for r in ratios) / len(ratios))


def to_csv(rows: Sequence[BenchRow]) -> str:
    lines = ["free,mean_time_ms,completions_tested"]
    for r in rows:
        tested = r.completions_tested
        tested_text = str(int(tested)) if tested == int(tested) else f"{tested:.2f}"
        lines.append(f"{r.free},{r.mean_time_ms:.3f},{tested_text}")
    return "\n".join(lines) + "\n"
