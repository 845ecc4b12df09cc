"""Fixed-order Robinson and Strong-Robinson checks, and the min-rule completion.

Every checker returns a :class:`CheckResult`, which is truthy on PASS and
carries the lexicographically smallest :class:`Violation` on FAIL.  Tuples are
ordered by the outer cell ``(i, j)`` (``i <= j``) first, then by the offending
inner cell.  For Robinson checks a row violation is reported before a
column violation on the same outer cell.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyValueSetError, IncompleteInputError, NotStrongRobinsonError
from .matrix import Coord, IncompleteMatrix


class ViolationKind(enum.Enum):
    ROW_TRIPLE = "RowTriple"
    COL_TRIPLE = "ColTriple"
    NESTED_PAIR = "NestedPair"


@dataclass(frozen=True)
class Violation:
    """Two present cells that break an inequality under the current order.

    ``cells[0]`` is the outer cell, ``cells[1]`` the cell closer to the
    diagonal that should not be smaller.  ``indices`` is ``(i, k, j)`` for
    row triples, ``(i, l, j)`` for column triples and ``(i, k, l, j)`` for
    nested pairs.
    """

    kind: ViolationKind
    indices: tuple[int, ...]
    cells: tuple[Coord, Coord]
    values: tuple[Fraction, Fraction]

    def __str__(self) -> str:
        (i, j), (k, l) = self.cells
        a, b = self.values
        return f"{self.kind.value}: a[{i},{j}]={a} > a[{k},{l}]={b}"


@dataclass(frozen=True)
class CheckResult:
    violation: Violation | None = None

    @property
    def ok(self) -> bool:
        return self.violation is None

    def __bool__(self) -> bool:
        return self.violation is None


PASS = CheckResult()


def _violation(A, kind, outer, inner) -> CheckResult:
    (i, j), (k, l) = outer, inner
    if kind is ViolationKind.ROW_TRIPLE:
        indices = (i, l, j)
    elif kind is ViolationKind.COL_TRIPLE:
        indices = (i, k, j)
    else:
        indices = (i, k, l, j)
    return CheckResult(Violation(kind, indices, (outer, inner), (A[outer], A[inner])))


def is_robinson(A: IncompleteMatrix) -> CheckResult:
    """Robinson: present entries never increase moving away from the diagonal.

    For ``i <= k <= j``: ``a[i,j] <= a[i,k]``; for ``i <= l <= j``:
    ``a[i,j] <= a[l,j]``; pairs with a missing cell are ignored.
    """
    n = A.n
    g = A.rank_grid()
    inf = len(A.values())
    # colmin[i][j] = min present a[l][j] over i < l <= j
    colmin = [[inf] * n for _ in range(n)]
    for j in range(n):
        m = inf
        for i in range(j - 1, -1, -1):
            r = g[i + 1][j]
            if r >= 0 and r < m:
                m = r
            colmin[i][j] = m
    for i in range(n):
        row = g[i]
        rowmin = inf
        for j in range(i, n):
            r = row[j]
            if r >= 0:
                if r > rowmin:
                    k = next(k for k in range(i, j) if 0 <= row[k] < r)
                    return _violation(A, ViolationKind.ROW_TRIPLE, (i, j), (i, k))
                if r > colmin[i][j]:
                    l = next(l for l in range(i + 1, j + 1) if 0 <= g[l][j] < r)
                    return _violation(A, ViolationKind.COL_TRIPLE, (i, j), (l, j))
                if r < rowmin:
                    rowmin = r
    return PASS


def inner_minimum_table(g: list[list[int]], inf: int) -> list[list[int]]:
    """``T[i][j]`` = min present rank over cells (k, l) with i <= k <= l <= j.

    Built from the recurrence ``T[i][j] = min(g[i][j], T[i+1][j], T[i][j-1])``.
    """
    n = len(g)
    T = [[inf] * n for _ in range(n)]
    for i in range(n):
        r = g[i][i]
        T[i][i] = r if r >= 0 else inf
    for d in range(1, n):
        for i in range(n - d):
            j = i + d
            r = g[i][j]
            m = T[i + 1][j]
            t = T[i][j - 1]
            if t < m:
                m = t
            if 0 <= r < m:
                m = r
            T[i][j] = m
    return T


def is_strong_robinson(A: IncompleteMatrix) -> CheckResult:
    """Strong-Robinson: ``a[i,j] <= a[k,l]`` whenever i <= k <= l <= j, both present.

    Runs in O(n^2) using :func:`inner_minimum_table`.
    """
    n = A.n
    g = A.rank_grid()
    T = inner_minimum_table(g, len(A.values()))
    for i in range(n):
        row = g[i]
        for j in range(i + 1, n):
            r = row[j]
            if r < 0:
                continue
            inner = T[i + 1][j]
            if T[i][j - 1] < inner:
                inner = T[i][j - 1]
            if r > inner:
                for k in range(i, j + 1):
                    for l in range(k, j + 1):
                        if (k, l) != (i, j) and 0 <= g[k][l] < r:
                            return _violation(
                                A, ViolationKind.NESTED_PAIR, (i, j), (k, l)
                            )
    return PASS


def is_robinson_complete(A: IncompleteMatrix) -> CheckResult:
    """Complete-matrix test: ``a[i,j] <= min(a[i,j-1], a[i+1,j])`` for all i < j."""
    if not A.is_complete:
        raise IncompleteInputError("is_robinson_complete needs a complete matrix")
    g = A.rank_grid()
    n = A.n
    for i in range(n):
        for j in range(i + 1, n):
            r = g[i][j]
            if r > g[i][j - 1]:
                return _violation(A, ViolationKind.ROW_TRIPLE, (i, j), (i, j - 1))
            if r > g[i + 1][j]:
                return _violation(A, ViolationKind.COL_TRIPLE, (i, j), (i + 1, j))
    return PASS


def diagonal_lint(A: IncompleteMatrix) -> list[int]:
    """Rows whose present diagonal entry is below some present entry of the row.

    Such a matrix is not Robinson under any order.
    """
    bad = []
    for i, row in enumerate(A.cells):
        d = row[i]
        if d is None:
            continue
        if any(c is not None and c > d for c in row):
            bad.append(i)
    return bad


def complete_min_rule(A: IncompleteMatrix) -> IncompleteMatrix:
    """Fill a Strong-Robinson matrix into a complete Robinson matrix.

    Missing diagonal cells get ``max w(A)``; off-diagonal missing cells are
    filled by increasing ``j - i`` with ``min(a[i,j-1], a[i+1,j])``.  Every
    filled value is the minimum of the present values nested inside it (or
    ``max w(A)``), so the output stays inside ``w(A)``.
    """
    missing = A.missing_cells()
    if not missing:
        return A
    values = A.values()
    if not values:
        raise EmptyValueSetError("cannot complete a matrix with no present values")
    check = is_strong_robinson(A)
    if not check:
        raise NotStrongRobinsonError(check.violation)
    top = values[-1]
    rows = [list(r) for r in A.cells]
    for i, j in sorted(missing, key=lambda ij: (ij[1] - ij[0], ij[0])):
        if i == j:
            v = top
        else:
            v = min(rows[i][j - 1], rows[i + 1][j])
        rows[i][j] = v
        rows[j][i] = v
    return IncompleteMatrix._trusted(tuple(tuple(r) for r in rows))
