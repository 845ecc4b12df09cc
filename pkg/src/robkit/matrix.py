"""Incomplete symmetric matrices, permutations and completions.

A cell is either a :class:`fractions.Fraction` or ``None`` (missing).  All
values are stored as exact rationals so that equal values compare equal and
the value set ``w(A)`` is deduplicated without tolerance games.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    AsymmetryError,
    DimensionError,
    DomainMismatchError,
    LengthMismatchError,
)

MISSING = None

Cell = Fraction | None
Coord = tuple[int, int]


def to_scalar(value) -> Fraction:
    """Convert ``value`` to an exact rational; floats go through their repr."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix values")
    if isinstance(value, numbers.Rational):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {value!r} as a matrix value")


def _to_cell(value) -> Cell:
    if value is None:
        return None
    if isinstance(value, str) and value.strip() == "*":
        return None
    return to_scalar(value)


class IncompleteMatrix:
    """Immutable symmetric n x n matrix whose cells may be missing.

    Index with ``A[i, j]``; a missing cell reads as ``None``.
    """

    __slots__ = ("_cells", "_n", "_ranks", "_values")

    def __init__(self, cells: Iterable[Iterable]):
        rows = [tuple(_to_cell(v) for v in row) for row in cells]
        n = len(rows)
        if n == 0:
            raise DimensionError("matrix must have at least one row")
        for r, row in enumerate(rows):
            if len(row) != n:
                raise DimensionError(
                    f"row {r} has {len(row)} entries, expected {n}", row=r
                )
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise AsymmetryError(i, j)
        self._cells: tuple[tuple[Cell, ...], ...] = tuple(rows)
        self._n = n
        self._ranks = None
        self._values = None

    @classmethod
    def _trusted(cls, rows: tuple[tuple[Cell, ...], ...]) -> "IncompleteMatrix":
        # rows already validated, converted and symmetric
        self = cls.__new__(cls)
        self._cells = rows
        self._n = len(rows)
        self._ranks = None
        self._values = None
        return self

    @property
    def n(self) -> int:
        return self._n

    @property
    def cells(self) -> tuple[tuple[Cell, ...], ...]:
        return self._cells

    def __getitem__(self, ij: Coord) -> Cell:
        i, j = ij
        return self._cells[i][j]

    def __iter__(self) -> Iterator[tuple[Cell, ...]]:
        return iter(self._cells)

    def __len__(self) -> int:
        return self._n

    def __eq__(self, other) -> bool:
        if not isinstance(other, IncompleteMatrix):
            return NotImplemented
        return self._cells == other._cells

    def __hash__(self) -> int:
        return hash(self._cells)

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join("*" if c is None else str(c) for c in row) for row in self._cells
        )
        return f"IncompleteMatrix([{body}])"

    @property
    def is_complete(self) -> bool:
        return all(c is not None for row in self._cells for c in row)

    def missing_cells(self) -> list[Coord]:
        """Upper-triangle coordinates (i <= j) of missing cells, row-major."""
        n = self._n
        return [
            (i, j)
            for i in range(n)
            for j in range(i, n)
            if self._cells[i][j] is None
        ]

    def to_lists(self) -> list[list[Cell]]:
        return [list(row) for row in self._cells]

    def values(self) -> tuple[Fraction, ...]:
        if self._values is None:
            # Fraction.__hash__ is slow; dedupe on the normalized pair instead
            seen = {
                (c.numerator, c.denominator): c
                for row in self._cells
                for c in row
                if c is not None
            }
            self._values = tuple(sorted(seen.values()))
        return self._values

    def rank_grid(self) -> list[list[int]]:
        """Cells replaced by their index in ``values()``; -1 marks missing.

        Comparisons between ranks agree with comparisons between values, and
        ints compare far faster than Fractions. Callers must not mutate the
        returned rows.
        """
        if self._ranks is None:
            index = {(v.numerator, v.denominator): r for r, v in enumerate(self.values())}
            self._ranks = [
                [-1 if c is None else index[c.numerator, c.denominator] for c in row]
                for row in self._cells
            ]
        return self._ranks


def new_matrix(n: int, cells: Sequence[Sequence]) -> IncompleteMatrix:
    """Build and validate an ``n`` x ``n`` matrix."""
    if n < 1:
        raise DimensionError("n must be positive")
    if len(cells) != n:
        raise DimensionError(f"expected {n} rows, got {len(cells)}")
    return IncompleteMatrix(cells)


def value_set(A: IncompleteMatrix) -> tuple[Fraction, ...]:
    """Sorted distinct present values of ``A``."""
    return A.values()


def missing_count(A: IncompleteMatrix) -> tuple[int, int]:
    """Return ``(total, free)`` missing-cell counts.

    ``free`` counts only cells with i <= j, which are the independent unknowns
    once symmetry is taken into account.
    """
    total = sum(1 for row in A.cells for c in row if c is None)
    return total, len(A.missing_cells())


def _check_permutation(p: Sequence[int], n: int) -> tuple[int, ...]:
    p = tuple(int(x) for x in p)
    if len(p) != n:
        raise LengthMismatchError(f"permutation has length {len(p)}, matrix has n={n}")
    if sorted(p) != list(range(n)):
        raise LengthMismatchError(f"{list(p)} is not a permutation of 0..{n - 1}")
    return p


def apply_permutation(A: IncompleteMatrix, p: Sequence[int]) -> IncompleteMatrix:
    """Reorder rows and columns together: ``result[i, j] = A[p[i], p[j]]``."""
    p = _check_permutation(p, A.n)
    cells = A.cells
    rows = tuple(tuple(cells[pi][pj] for pj in p) for pi in p)
    return IncompleteMatrix._trusted(rows)


def reverse_permutation(n: int) -> tuple[int, ...]:
    return tuple(range(n - 1, -1, -1))


def invert_permutation(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for pos, x in enumerate(p):
        inv[x] = pos
    return tuple(inv)


@dataclass(frozen=True)
class Completion:
    """Values for the missing upper-triangle cells of a matrix.

    ``assignments`` is kept as a tuple of ``((i, j), value)`` pairs sorted by
    coordinate so completions hash and compare by content.
    """

    assignments: tuple[tuple[Coord, Fraction], ...] = ()

    @classmethod
    def from_mapping(cls, mapping: Mapping[Coord, object]) -> "Completion":
        items = []
        for (i, j), v in mapping.items():
            if i > j:
                i, j = j, i
            items.append(((int(i), int(j)), to_scalar(v)))
        items.sort()
        return cls(tuple(items))

    def as_dict(self) -> dict[Coord, Fraction]:
        return dict(self.assignments)

    def __len__(self) -> int:
        return len(self.assignments)

    def coords(self) -> list[Coord]:
        return [ij for ij, _ in self.assignments]


def apply_completion(A: IncompleteMatrix, c: Completion | Mapping) -> IncompleteMatrix:
    """Fill every missing cell of ``A`` (and its mirror) from ``c``."""
    if not isinstance(c, Completion):
        c = Completion.from_mapping(c)
    wanted = set(A.missing_cells())
    given = c.as_dict()
    if len(given) != len(c.assignments) or set(given) != wanted:
        raise DomainMismatchError(wanted - set(given), set(given) - wanted)
    rows = [list(row) for row in A.cells]
    for (i, j), v in given.items():
        rows[i][j] = v
        rows[j][i] = v
    return IncompleteMatrix._trusted(tuple(tuple(r) for r in rows))
