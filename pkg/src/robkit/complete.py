"""Robinsonian recognition for complete matrices.

A complete matrix is Robinson in some order exactly when its diagonal
dominates each row and, for every threshold ``t``, each closed neighbourhood
``{i} | {j : a[i,j] >= t}`` is contiguous in that order.  All neighbourhoods
of all levels go into a single consecutive-ones problem.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .c1p import solve_masks
from .checks import is_robinson_complete
from .errors import IncompleteInputError
from .matrix import IncompleteMatrix, apply_permutation


class Verdict(str, enum.Enum):
    YES = "YES"
    NO = "NO"

    def __bool__(self) -> bool:
        return self is Verdict.YES


@dataclass(frozen=True)
class LevelMatrix:
    threshold: Fraction
    adjacency: tuple[tuple[bool, ...], ...]

    def neighbourhoods(self) -> list[frozenset[int]]:
        return [frozenset(j for j, on in enumerate(row) if on) for row in self.adjacency]


@dataclass(frozen=True)
class Refutation:
    """Why no order works.

    ``reason`` is ``"diagonal"`` when ``rows`` have an off-diagonal entry
    above their diagonal, or ``"levels"`` when the neighbourhood constraints
    of all levels up to ``threshold`` (ascending) first become unsatisfiable.
    """

    reason: str
    threshold: Fraction | None = None
    rows: tuple[int, ...] = ()

    def describe(self) -> str:
        if self.reason == "diagonal":
            return f"diagonal entry not row-maximal in rows {list(self.rows)}"
        return f"level constraints unsatisfiable at threshold {self.threshold}"


@dataclass(frozen=True)
class RecognitionOutcome:
    verdict: Verdict
    witness: tuple[int, ...] | None = None
    refutation: Refutation | None = None

    def __bool__(self) -> bool:
        return self.verdict is Verdict.YES


def _require_complete(A: IncompleteMatrix) -> None:
    if not A.is_complete:
        raise IncompleteInputError("matrix has missing cells; use the incomplete recognizer")


def threshold_levels(A: IncompleteMatrix) -> list[LevelMatrix]:
    """One level per value of ``w(A)`` above the minimum, ascending."""
    _require_complete(A)
    n = A.n
    cells = A.cells
    out = []
    for t in A.values()[1:]:
        adj = tuple(
            tuple(i == j or cells[i][j] >= t for j in range(n)) for i in range(n)
        )
        out.append(LevelMatrix(t, adj))
    return out


def row_level_masks(row: list[int], i: int, nlevels: int) -> list[int]:
    """Closed neighbourhood bitmask of row ``i`` for thresholds 1..nlevels-1.

    ``row`` holds ranks; entry ``k`` of the result is the mask for threshold
    rank ``k + 1``.
    """
    buckets = [0] * nlevels
    for j, r in enumerate(row):
        buckets[r] |= 1 << j
    masks = [0] * (nlevels - 1)
    acc = 1 << i
    for t in range(nlevels - 1, 0, -1):
        acc |= buckets[t]
        masks[t - 1] = acc
    return masks


def diagonal_failures(g: list[list[int]]) -> list[int]:
    return [i for i, row in enumerate(g) if max(row) > row[i]]


def robinson_order(g: list[list[int]], nlevels: int) -> list[int] | None:
    """Core decision on a complete rank grid; returns an order or None."""
    n = len(g)
    if diagonal_failures(g):
        return None
    masks = set()
    for i, row in enumerate(g):
        masks.update(row_level_masks(row, i, nlevels))
    return solve_masks((1 << n) - 1, masks)


def _first_failing_level(g: list[list[int]], nlevels: int) -> int:
    n = len(g)
    full = (1 << n) - 1
    per_row = [row_level_masks(row, i, nlevels) for i, row in enumerate(g)]
    masks: set[int] = set()
    for t in range(1, nlevels):
        masks.update(rm[t - 1] for rm in per_row)
        if solve_masks(full, masks) is None:
            return t
    raise AssertionError("constraints were satisfiable at every level")


def recognize_robinsonian(A: IncompleteMatrix) -> RecognitionOutcome:
    """Decide whether complete ``A`` can be reordered into a Robinson matrix.

    On YES the witness ``p`` satisfies
    ``is_robinson_complete(apply_permutation(A, p))``.
    """
    _require_complete(A)
    g = A.rank_grid()
    values = A.values()
    bad = diagonal_failures(g)
    if bad:
        return RecognitionOutcome(Verdict.NO, refutation=Refutation("diagonal", rows=tuple(bad)))
    order = robinson_order(g, len(values))
    if order is None:
        t = _first_failing_level(g, len(values))
        return RecognitionOutcome(Verdict.NO, refutation=Refutation("levels", values[t]))
    return RecognitionOutcome(Verdict.YES, witness=tuple(order))


def verify_witness(A: IncompleteMatrix, order) -> bool:
    return bool(is_robinson_complete(apply_permutation(A, order)))

