"""Strong-Robinsonian recognition of incomplete matrices.

An incomplete matrix is Strong-Robinsonian iff it has a Robinsonian
completion, and one exists iff one exists using only the values already in
the matrix.  :func:`recognize_strong_robinsonian` therefore enumerates the
``|w(A)| ** free`` completions over ``w(A)`` and runs the complete-matrix
recognizer on each.  The running time is exponential only in the number of
free unknowns.

:func:`recognize_strong_robinsonian_direct` searches orders instead of
completions and is meant as a cross-check on small inputs.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .c1p import solve_masks
from .checks import complete_min_rule, is_robinson_complete, is_strong_robinson
from .complete import Verdict, row_level_masks
from .errors import EmptyValueSetError, SizeCapError
from .matrix import (
    Completion,
    Coord,
    IncompleteMatrix,
    apply_completion,
    apply_permutation,
    to_scalar,
)

DIRECT_CAP = 9


@dataclass(frozen=True)
class IncompleteOutcome:
    """Verdict of an incomplete recognizer.

    On YES, ``apply_permutation(apply_completion(A, completion), order)`` is a
    Robinson matrix.  ``tried`` counts completions examined (orders searched
    for the direct recognizer); it is 0 when the ordered fast path answered.
    """

    verdict: Verdict
    completion: Completion | None = None
    order: tuple[int, ...] | None = None
    tried: int = 0

    def __bool__(self) -> bool:
        return self.verdict is Verdict.YES

    @property
    def witness(self) -> tuple[Completion, tuple[int, ...]] | None:
        if self.verdict is Verdict.NO:
            return None
        return self.completion, self.order


class CompletionCursor:
    """Lexicographic enumeration of value assignments to the free cells.

    Cells are in row-major order; the last cell varies fastest and values run
    in ascending order.
    """

    def __init__(self, cells: Sequence[Coord], values: Sequence[Fraction]):
        self.cells = tuple(cells)
        self.values = tuple(values)

    def __len__(self) -> int:
        return len(self.values) ** len(self.cells)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(range(len(self.values)), repeat=len(self.cells))

    def decode(self, index: int) -> tuple[int, ...]:
        k = len(self.values)
        digits = []
        for _ in self.cells:
            index, d = divmod(index, k)
            digits.append(d)
        return tuple(reversed(digits))

    def completion(self, digits: Sequence[int]) -> Completion:
        return Completion(
            tuple((ij, self.values[d]) for ij, d in zip(self.cells, digits))
        )


def _resolve_values(A: IncompleteMatrix, values: Iterable | None) -> tuple[Fraction, ...]:
    if values is None:
        return A.values()
    return tuple(sorted({to_scalar(v) for v in values}))


def enumerate_completions(
    A: IncompleteMatrix, S: Iterable | None = None
) -> Iterator[Completion]:
    """Yield every completion of ``A`` with values in ``S`` (default ``w(A)``)."""
    S = _resolve_values(A, S)
    cells = A.missing_cells()
    if cells and not S:
        raise EmptyValueSetError("no values to complete the matrix with")
    cursor = CompletionCursor(cells, S)
    for digits in cursor:
        yield cursor.completion(digits)


class _Search:
    """Per-matrix precomputation shared by every completion test.

    Rows that contain no free cell keep the same level masks under every
    completion, so only the rows touched by holes are rebuilt.
    """

    def __init__(self, A: IncompleteMatrix, S: Sequence[Fraction]):
        n = A.n
        merged = sorted(set(A.values()) | set(S))
        rank = {v: r for r, v in enumerate(merged)}
        self.n = n
        self.nlevels = max(len(merged), 1)
        self.full = (1 << n) - 1
        self.cursor = CompletionCursor(A.missing_cells(), S)
        self.value_ranks = [rank[v] for v in S]
        # remap the cached grid instead of hashing every Fraction again
        remap = [rank[v] for v in A.values()] + [-1]
        g = [[remap[r] for r in row] for row in A.rank_grid()]

        touched = sorted({x for ij in self.cursor.cells for x in ij})
        self.touched = touched
        touched_set = set(touched)
        self.fixed_ok = True
        fixed_masks: set[int] = set()
        for i in range(n):
            if i in touched_set:
                continue
            row = g[i]
            if max(row) > row[i]:
                self.fixed_ok = False
            fixed_masks.update(row_level_masks(row, i, self.nlevels))
        self.fixed_masks = frozenset(fixed_masks)

        # present part of each touched row, bucketed by rank
        self.base_buckets = {}
        self.base_max = {}
        self.base_diag = {}
        for i in touched:
            buckets = [0] * self.nlevels
            top = -1
            for j, r in enumerate(g[i]):
                if r >= 0:
                    buckets[r] |= 1 << j
                    if r > top:
                        top = r
            self.base_buckets[i] = buckets
            self.base_max[i] = top
            self.base_diag[i] = g[i][i]

    def test(self, digits: Sequence[int]) -> list[int] | None:
        if not self.fixed_ok:
            return None
        buckets = {i: list(b) for i, b in self.base_buckets.items()}
        top = dict(self.base_max)
        diag = dict(self.base_diag)
        vr = self.value_ranks
        for (i, j), d in zip(self.cursor.cells, digits):
            r = vr[d]
            buckets[i][r] |= 1 << j
            if r > top[i]:
                top[i] = r
            if i == j:
                diag[i] = r
            else:
                buckets[j][r] |= 1 << i
                if r > top[j]:
                    top[j] = r
        masks = set(self.fixed_masks)
        nl = self.nlevels
        for i in self.touched:
            if top[i] > diag[i]:
                return None
            b = buckets[i]
            acc = 1 << i
            for t in range(nl - 1, 0, -1):
                acc |= b[t]
                masks.add(acc)
        return solve_masks(self.full, masks)

    def scan(
        self, start: int, stop: int, exhaustive: bool = False
    ) -> tuple[int | None, list[int] | None, int]:
        """Test completions ``start..stop-1``; return (first hit, its order, tried).

        Stops at the first hit unless ``exhaustive``.
        """
        if start >= stop:
            return None, None, 0
        k = len(self.value_ranks)
        digits = list(self.cursor.decode(start))
        tried = 0
        hit = found = None
        for index in range(start, stop):
            tried += 1
            order = self.test(digits)
            if order is not None and hit is None:
                hit, found = index, order
                if not exhaustive:
                    break
            for pos in range(len(digits) - 1, -1, -1):
                digits[pos] += 1
                if digits[pos] < k:
                    break
                digits[pos] = 0
        return hit, found, tried


def _scan_worker(cells, S, start, stop, exhaustive):
    return _Search(IncompleteMatrix._trusted(cells), S).scan(start, stop, exhaustive)


def default_workers() -> int:
    env = os.environ.get("ROBKIT_THREADS")
    if env:
        return max(1, int(env))
    return 1


def _all_missing_outcome(A: IncompleteMatrix) -> IncompleteOutcome:
    # no present values: the Strong-Robinson condition holds vacuously; fill with 0 so the
    # witness can still be checked
    zero = Completion.from_mapping({ij: 0 for ij in A.missing_cells()})
    return IncompleteOutcome(Verdict.YES, zero, tuple(range(A.n)), 0)


def recognize_strong_robinsonian(
    A: IncompleteMatrix,
    values: Iterable | None = None,
    exhaustive: bool = False,
    deterministic: bool = False,
    workers: int | None = None,
) -> IncompleteOutcome:
    """Decide whether ``A`` is Strong-Robinsonian by searching completions.

    ``values`` overrides the candidate set (default ``w(A)``).  With
    ``exhaustive`` every completion is tested even after a witness is found,
    and ``tried`` is always ``|values| ** free``.  With ``workers > 1`` the
    completion space is split across processes; ``deterministic`` then still
    returns the lexicographically first witness and the serial ``tried``.

    Without ``exhaustive``/``deterministic`` and with the default value set,
    a matrix that is already Strong-Robinson in its given order is answered
    by the min-rule completion with ``tried == 0``.
    """
    S = _resolve_values(A, values)
    if not S:
        if not A.values():
            return _all_missing_outcome(A)
        if A.missing_cells():
            raise EmptyValueSetError("no values to complete the matrix with")
    if values is None and not exhaustive and not deterministic and A.missing_cells():
        if is_strong_robinson(A):
            filled = complete_min_rule(A)
            c = Completion(tuple((ij, filled[ij]) for ij in A.missing_cells()))
            return IncompleteOutcome(Verdict.YES, c, tuple(range(A.n)), 0)

    search = _Search(A, S)
    total = len(search.cursor)
    workers = default_workers() if workers is None else max(1, workers)
    if workers > 1 and total > 1:
        hit, order, tried = _parallel_scan(A, S, total, workers, exhaustive, deterministic)
    else:
        hit, order, tried = search.scan(0, total, exhaustive)
    if hit is None:
        return IncompleteOutcome(Verdict.NO, tried=tried)
    c = search.cursor.completion(search.cursor.decode(hit))
    return IncompleteOutcome(Verdict.YES, c, tuple(order), tried)


def _parallel_scan(A, S, total, workers, exhaustive, deterministic):
    nchunks = min(total, workers * 4)
    bounds = [total * c // nchunks for c in range(nchunks + 1)]
    ranges = [(bounds[c], bounds[c + 1]) for c in range(nchunks)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = {
            pool.submit(_scan_worker, A.cells, S, lo, hi, exhaustive): (lo, hi) for lo, hi in ranges
        }
        if deterministic or exhaustive:
            results = {futures[f]: f.result() for f in futures}
            hits = [(r[0], r[1]) for r in results.values() if r[0] is not None]
            if not hits:
                return None, None, total
            hit, order = min(hits, key=lambda h: h[0])
            return hit, order, total if exhaustive else hit + 1
        tried = 0
        pending = set(futures)
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for f in done:
                hit, order, count = f.result()
                tried += count
                if hit is not None:
                    for other in pending:
                        other.cancel()
                    return hit, order, tried
        return None, None, tried


def _strong_order_search(g: list[list[int]], inf: int) -> tuple[list[int] | None, int]:
    """Backtracking over orders; a Strong-Robinson violation on a prefix prunes it.

    ``T[i][m]`` is the minimum present rank over the triangle of positions
    ``i <= k <= l <= m``; placing a new element only adds constraints whose
    outer cell ends at the new position.
    """
    n = len(g)
    order: list[int] = []
    used = [False] * n
    T = [[inf] * n for _ in range(n)]
    nodes = 0

    def place(x: int, m: int) -> bool:
        d = g[x][x]
        T[m][m] = d if d >= 0 else inf
        for i in range(m - 1, -1, -1):
            r = g[order[i]][x]
            inner = T[i + 1][m]
            left = T[i][m - 1]
            if left < inner:
                inner = left
            if r >= 0 and r > inner:
                return False
            T[i][m] = r if 0 <= r < inner else inner
        return True

    def extend(m: int) -> bool:
        nonlocal nodes
        if m == n:
            return True
        for x in range(n):
            if used[x]:
                continue
            nodes += 1
            if not place(x, m):
                continue
            used[x] = True
            order.append(x)
            if extend(m + 1):
                return True
            order.pop()
            used[x] = False
        return False

    found = extend(0)
    return (list(order) if found else None), nodes


def recognize_strong_robinsonian_direct(
    A: IncompleteMatrix, cap: int = DIRECT_CAP
) -> IncompleteOutcome:
    """Search orders for one under which ``A`` is Strong-Robinson.

    The completion in the witness comes from the min rule applied in that
    order.  ``tried`` is the number of (prefix, element) placements tested.
    """
    if A.n > cap:
        raise SizeCapError(f"direct search limited to n <= {cap}, got n={A.n}")
    if not A.values():
        return _all_missing_outcome(A)
    order, nodes = _strong_order_search(A.rank_grid(), len(A.values()))
    if order is None:
        return IncompleteOutcome(Verdict.NO, tried=nodes)
    ordered = apply_permutation(A, order)
    filled = complete_min_rule(ordered)
    mapping = {}
    for x, y in ordered.missing_cells():
        i, j = order[x], order[y]
        mapping[(min(i, j), max(i, j))] = filled[x, y]
    return IncompleteOutcome(
        Verdict.YES, Completion.from_mapping(mapping), tuple(order), nodes
    )


def verify_incomplete_witness(A: IncompleteMatrix, outcome: IncompleteOutcome) -> bool:
    """Independent check: complete, reorder, then test the complete-case inequality."""
    completed = apply_completion(A, outcome.completion)
    return bool(is_robinson_complete(apply_permutation(completed, outcome.order)))
