"""Seeded generation of planted instances.

Randomness comes from SplitMix64 so that instances can be reproduced outside
Python.  The output contract, which other implementations must follow bit for
bit:

* ``next()``: ``state = (state + 0x9E3779B97F4A7C15) mod 2**64``, then the
  standard SplitMix64 finaliser (shifts 30/27/31, multipliers
  ``0xBF58476D1CE4E5B9`` and ``0x94D049BB133111EB``).  The initial state is
  the seed modulo 2**64.
* ``below(k)``: draw ``r = next()`` until ``r < 2**64 - (2**64 mod k)``, then
  return ``r mod k``.
* shuffles are Fisher-Yates from the last position down, swapping position
  ``i`` with ``below(i + 1)``; hole selection is a partial Fisher-Yates over the
  row-major candidate list, from the front.

Each generator consumes a single stream in this order: matrix entries
(anti-diagonals outward, top to bottom), holes, shuffle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TooManyHolesError
from .matrix import (
    Completion,
    IncompleteMatrix,
    apply_permutation,
    invert_permutation,
)

PRNG_NAME = "splitmix64"
_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        if k <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % k)
        while True:
            r = self.next()
            if r < limit:
                return r % k

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, items: list, k: int) -> list:
        pool = list(items)
        for t in range(k):
            j = t + self.below(len(pool) - t)
            pool[t], pool[j] = pool[j], pool[t]
        return pool[:k]


@dataclass(frozen=True)
class PlantedInstance:
    """``apply_permutation(apply_completion(matrix, hidden_completion), hidden_order)``
    is Robinson by construction."""

    matrix: IncompleteMatrix
    hidden_order: tuple[int, ...]
    hidden_completion: Completion
    seed: int


@dataclass(frozen=True)
class NoInstance:
    """Matrix with an induced claw at its top level, so no completion is Robinsonian."""

    matrix: IncompleteMatrix
    claw: tuple[int, int, int, int]
    seed: int


def _robinson_rows(n: int, values: int, rng: SplitMix64) -> list[list[int]]:
    top = values - 1
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = top
    for d in range(1, n):
        for i in range(n - d):
            j = i + d
            v = rng.below(min(a[i][j - 1], a[i + 1][j]) + 1)
            a[i][j] = a[j][i] = v
    return a


def gen_robinson(n: int, values: int, seed: int) -> IncompleteMatrix:
    """Complete Robinson matrix over the alphabet ``0..values-1``.

    Each off-diagonal entry is drawn uniformly from the values not exceeding
    its left and lower neighbours; the diagonal holds the top value.
    """
    if n < 1 or values < 1:
        raise ValueError("n and values must be positive")
    return IncompleteMatrix(_robinson_rows(n, values, SplitMix64(seed)))


def _punch(A: IncompleteMatrix, free: int, rng: SplitMix64, exclude=frozenset()):
    n = A.n
    cand = [
        (i, j)
        for i in range(n)
        for j in range(i, n)
        if A[i, j] is not None and (i, j) not in exclude
    ]
    if free > len(cand):
        raise TooManyHolesError(f"asked for {free} holes, only {len(cand)} cells available")
    chosen = rng.sample(cand, free)
    rows = [list(r) for r in A.cells]
    removed = {}
    for i, j in chosen:
        removed[(i, j)] = rows[i][j]
        rows[i][j] = rows[j][i] = None
    return IncompleteMatrix(rows), removed


def punch_holes(A: IncompleteMatrix, free: int, seed: int) -> IncompleteMatrix:
    """Blank ``free`` uniformly chosen present cells with i <= j, plus mirrors."""
    return _punch(A, free, SplitMix64(seed))[0]


def _shuffled(R: IncompleteMatrix, removed: dict, rng: SplitMix64 | None):
    n = R.n
    p = list(range(n))
    if rng is not None:
        rng.shuffle(p)
    M = apply_permutation(R, p)
    hidden = invert_permutation(p)
    moved = {}
    for (r, s), v in removed.items():
        x, y = hidden[r], hidden[s]
        moved[(min(x, y), max(x, y))] = v
    return M, hidden, Completion.from_mapping(moved)


def gen_planted(
    n: int, values: int, free: int, seed: int, shuffle: bool = True
) -> PlantedInstance:
    """Robinson matrix, punched, then shuffled; the hidden order undoes the shuffle."""
    rng = SplitMix64(seed)
    R = IncompleteMatrix(_robinson_rows(n, values, rng))
    punched, removed = _punch(R, free, rng)
    M, hidden, completion = _shuffled(punched, removed, rng if shuffle else None)
    return PlantedInstance(M, hidden, completion, seed)


def gen_no_instance(n: int, values: int, free: int, seed: int) -> NoInstance:
    """Instance for which every completion is rejected.

    A center is joined at the top value to three leaves that are pairwise at
    the bottom value.  The top level then contains an induced claw, which no
    unit interval graph has, whatever the holes are filled with.  Holes avoid
    the six claw cells.  Draws repeat until all ``values`` symbols survive
    punching, so the completion count is exactly ``values ** free``.
    """
    if n < 4 or values < 2:
        raise ValueError("a claw needs n >= 4 and at least two values")
    rng = SplitMix64(seed)
    top = values - 1
    while True:
        a = _robinson_rows(n, values, rng)
        idx = rng.sample(list(range(n)), 4)
        c, leaves = idx[0], idx[1:]
        claw_cells = set()
        for x in leaves:
            a[c][x] = a[x][c] = top
            claw_cells.add((min(c, x), max(c, x)))
        for s in range(3):
            for t in range(s + 1, 3):
                x, y = leaves[s], leaves[t]
                a[x][y] = a[y][x] = 0
                claw_cells.add((min(x, y), max(x, y)))
        punched, _ = _punch(IncompleteMatrix(a), free, rng, frozenset(claw_cells))
        if len(punched.values()) == values:
            break
    M, hidden, _ = _shuffled(punched, {}, rng)
    claw = tuple(hidden[x] for x in idx)
    return NoInstance(M, claw, seed)

