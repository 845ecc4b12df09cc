"""Acceptance criteria; a per-criterion PASS/FAIL line is printed at the end of the run."""

import json
import time
from functools import lru_cache

import pytest

from conftest import FIXTURES, load
from robkit import (
    IncompleteMatrix,
    apply_completion,
    apply_permutation,
    gen_planted,
    gen_robinson,
    is_robinson,
    is_robinson_complete,
    is_strong_robinson,
    recognize_robinsonian,
    recognize_strong_robinsonian,
    recognize_strong_robinsonian_direct,
)
from robkit.bench import growth_ratio, run_bench
from robkit.cli import main
from robkit.generate import SplitMix64
from robkit.oracle import brute_robinsonian, brute_strong_robinsonian, strong_robinson_naive

criterion = pytest.mark.criterion


def random_matrix(rng, n, values, holes):
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rng.below(values)
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    for i, j in rng.sample(cells, min(holes, len(cells))):
        rows[i][j] = rows[j][i] = None
    return IncompleteMatrix(rows)


def perturbed_planted(rng, n, values, free, seed):
    rows = gen_planted(n, values, free, seed).matrix.to_lists()
    present = [(i, j) for i in range(n) for j in range(i, n) if rows[i][j] is not None]
    if present:
        i, j = present[rng.below(len(present))]
        rows[i][j] = rows[j][i] = rng.below(values)
    return IncompleteMatrix(rows)


@lru_cache(maxsize=None)
def corpus(size=540):
    """Mix of planted, uniformly random and perturbed planted instances."""
    rng = SplitMix64(20240601)
    out = []
    for k in range(size):
        n = 2 + rng.below(6)
        values = 1 + rng.below(3)
        free = min(rng.below(4), n * (n + 1) // 2)
        kind = k % 3
        if kind == 0:
            A = gen_planted(n, values, free, rng.next()).matrix
        elif kind == 1:
            A = random_matrix(rng, n, values, free)
        else:
            A = perturbed_planted(rng, n, values, free, rng.next())
        out.append(A)
    return tuple(out)


def extended_values(A):
    w = list(A.values())
    if not w:
        return [0]
    mids = [(a + b) / 2 for a, b in zip(w, w[1:])]
    return w + mids + [w[-1] + 1]


def witness_ok(A, out):
    filled = apply_completion(A, out.completion)
    return bool(is_robinson_complete(apply_permutation(filled, out.order)))


@criterion(1, "six-by-six gap fixture: Robinson in given order, NO after 4 completions, listed completions rejected")
def test_gap6_fixture(gap6, capsys):
    t0 = time.perf_counter()
    assert is_robinson(gap6)
    path = str(FIXTURES / "gap6.txt")
    assert main(["check", path, "--mode", "robinson"]) == 0
    capsys.readouterr()
    assert main(["recognize", path, "--incomplete", "--exhaustive"]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "NO" and doc["tried"] == 4
    for k in (1, 2, 3):
        assert not recognize_robinsonian(load(f"gap6_completion_{k}"))
    assert time.perf_counter() - t0 < 1.0


@criterion(2, "four-by-four claw fixture: NO, confirmed by the oracle over 24 permutations")
def test_claw4_fixture(claw4):
    t0 = time.perf_counter()
    assert not recognize_robinsonian(claw4)
    rep = brute_robinsonian(claw4)
    assert not rep and rep.permutations_tried == 24
    assert time.perf_counter() - t0 < 1.0


@criterion(3, "completion search, direct search and brute force agree on >= 500 seeded instances")
def test_equivalence_suite():
    t0 = time.perf_counter()
    instances = corpus()
    assert len(instances) >= 500
    yes = 0
    for A in instances:
        assert A.n <= 7 and len(A.missing_cells()) <= 3 and len(A.values()) <= 3
        search = recognize_strong_robinsonian(A, deterministic=True)
        direct = recognize_strong_robinsonian_direct(A)
        brute = brute_strong_robinsonian(A)
        assert bool(search) == bool(direct) == bool(brute), A
        if search:
            yes += 1
            assert witness_ok(A, search) and witness_ok(A, direct)
    # the corpus must exercise both verdicts
    assert 0 < yes < len(instances)
    assert time.perf_counter() - t0 < 300


@criterion(4, "widening the candidate values with midpoints and max+1 never changes a verdict")
def test_stability_suite():
    t0 = time.perf_counter()
    for A in corpus():
        base = recognize_strong_robinsonian(A, deterministic=True)
        wide = recognize_strong_robinsonian(A, values=extended_values(A), deterministic=True)
        assert bool(base) == bool(wide), A
        if wide:
            assert witness_ok(A, wide)
    assert time.perf_counter() - t0 < 600


@criterion(5, "100 planted instances (n=30, 4 values, 6 holes) recovered with verified witnesses")
def test_planted_recovery():
    t0 = time.perf_counter()
    for seed in range(100):
        inst = gen_planted(30, 4, 6, seed)
        assert len(inst.matrix.values()) <= 4
        out = recognize_strong_robinsonian(inst.matrix)
        assert out and witness_ok(inst.matrix, out)
    assert time.perf_counter() - t0 < 120


@criterion(6, "bench n=60, 3 values, free 2..6: tested = 3^free, growth ratio in [1.5, 6]")
def test_scaling_bench():
    t0 = time.perf_counter()
    rows = run_bench(60, 3, range(2, 7), [0, 1, 2], exhaustive=True, kind="no")
    for r in rows:
        assert r.completions_tested == 3**r.free and r.yes == 0
    ratio = growth_ratio(rows)
    print(f"growth ratio {ratio:.3f}")
    assert 1.5 <= ratio <= 6
    assert time.perf_counter() - t0 < 60


@criterion(7, "checker agreement on 1000 complete and 1000 incomplete random matrices")
def test_checker_equivalence():
    t0 = time.perf_counter()
    rng = SplitMix64(77)
    passes = 0
    for k in range(1000):
        n = 1 + rng.below(12)
        values = 1 + rng.below(4)
        if k % 2:
            A = random_matrix(rng, n, values, 0)
        else:
            # shuffled-free Robinson matrices so that PASS verdicts occur too
            A = gen_robinson(n, values, rng.next())
        r, s, c = is_robinson(A), is_strong_robinson(A), is_robinson_complete(A)
        assert bool(r) == bool(s) == bool(c)
        passes += bool(r)
    assert 0 < passes < 1000
    for _ in range(1000):
        n = 1 + rng.below(10)
        A = random_matrix(rng, n, 1 + rng.below(4), rng.below(n * (n + 1) // 2 + 1))
        assert is_strong_robinson(A) == strong_robinson_naive(A)
    assert time.perf_counter() - t0 < 60


@criterion(8, "hardness is represented by the exponential growth in criterion 6")
def test_hardness_represented_by_bench():
    # No separate measurement: the growth check lives in the scaling bench.
    rows = run_bench(20, 3, [1, 2, 3], [0], exhaustive=True, kind="no")
    assert [r.completions_tested for r in rows] == [3, 9, 27]
