"""Brute-force ground truth, for tests and debugging only.

Nothing here is clever on purpose: the oracles enumerate every order and apply
the definitions literally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .checks import CheckResult, PASS, Violation, ViolationKind, is_robinson_complete
from .complete import Verdict
from .errors import IncompleteInputError, SizeCapError
from .matrix import IncompleteMatrix, apply_permutation

ORACLE_CAP = 8


@dataclass(frozen=True)
class OracleReport:
    verdict: Verdict
    witness: tuple[int, ...] | None
    permutations_tried: int

    def __bool__(self) -> bool:
        return self.verdict is Verdict.YES


def strong_robinson_naive(A: IncompleteMatrix) -> CheckResult:
    """All-quadruple scan of the Strong-Robinson condition, O(n^4)."""
    n = A.n
    c = A.cells
    for i in range(n):
        for j in range(i, n):
            outer = c[i][j]
            if outer is None:
                continue
            for k in range(i, j + 1):
                for l in range(k, j + 1):
                    inner = c[k][l]
                    if inner is not None and outer > inner:
                        return CheckResult(
                            Violation(
                                ViolationKind.NESTED_PAIR,
                                (i, k, l, j),
                                ((i, j), (k, l)),
                                (outer, inner),
                            )
                        )
    return PASS


def _orders(n: int, prune_reversal: bool):
    for p in itertools.permutations(range(n)):
        # an order and its reversal pass or fail together
        if prune_reversal and n > 1 and p[0] > p[-1]:
            continue
        yield p


def _brute(A, check, cap, prune_reversal) -> OracleReport:
    if A.n > cap:
        raise SizeCapError(f"oracle limited to n <= {cap}, got n={A.n}")
    tried = 0
    for p in _orders(A.n, prune_reversal):
        tried += 1
        if check(apply_permutation(A, p)):
            return OracleReport(Verdict.YES, p, tried)
    return OracleReport(Verdict.NO, None, tried)


def brute_robinsonian(
    A: IncompleteMatrix, cap: int = ORACLE_CAP, prune_reversal: bool = False
) -> OracleReport:
    if not A.is_complete:
        raise IncompleteInputError("brute_robinsonian needs a complete matrix")
    return _brute(A, is_robinson_complete, cap, prune_reversal)


def brute_strong_robinsonian(
    A: IncompleteMatrix, cap: int = ORACLE_CAP, prune_reversal: bool = False
) -> OracleReport:
    return _brute(A, strong_robinson_naive, cap, prune_reversal)
