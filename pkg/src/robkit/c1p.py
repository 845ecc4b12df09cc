"""Consecutive-ones ordering.

Given subsets of ``{0..n-1}``, find a linear order in which every subset is
contiguous, or report that none exists.

The solver works on the overlap graph (two sets overlap when they intersect
and neither contains the other).  Within one overlap component the order of
the membership classes is forced up to reversal, so the component is built
incrementally in BFS order with no search.  Components are laminar: a
component that is not maximal lives inside a single class of a larger one,
so the classes are solved recursively.  Sets are Python int bitmasks.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class OrderingConstraints:
    n: int
    subsets: tuple[frozenset[int], ...]

    @classmethod
    def build(cls, n: int, subsets: Iterable[Iterable[int]]) -> "OrderingConstraints":
        sets = []
        for s in subsets:
            fs = frozenset(int(x) for x in s)
            if not fs:
                raise ValueError("constraint subsets must be nonempty")
            if min(fs) < 0 or max(fs) >= n:
                raise ValueError(f"subset {sorted(fs)} is outside 0..{n - 1}")
            sets.append(fs)
        return cls(n, tuple(sets))


def to_mask(items: Iterable[int]) -> int:
    m = 0
    for x in items:
        m |= 1 << x
    return m


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def is_consecutive(order: Sequence[int], subset: Iterable[int]) -> bool:
    s = set(subset)
    if not s:
        return True
    pos = [i for i, x in enumerate(order) if x in s]
    return len(pos) == len(s) and pos[-1] - pos[0] + 1 == len(s)


def consecutive_ones_order(c: OrderingConstraints) -> list[int] | None:
    """Order of ``0..n-1`` keeping every subset contiguous, or None."""
    if c.n == 0:
        return []
    masks = {to_mask(s) for s in c.subsets}
    return solve_masks((1 << c.n) - 1, masks)


def solve_masks(ground: int, family: Iterable[int]) -> list[int] | None:
    """Bitmask entry point used by the recognizers."""
    return _solve(ground, family)


def _solve(ground: int, family: Iterable[int]) -> list[int] | None:
    fam = [s for s in set(family) if s & (s - 1) and s != ground]
    if not fam:
        return bits(ground)
    comps = _overlap_components(fam)
    # biggest unions first; a multi-set component beats a lone set with the same union
    comps.sort(key=lambda c: (-c[0].bit_count(), -len(c[1])))
    tops: list[tuple[int, list[int]]] = []
    covered = 0
    for union, sets in comps:
        if union & covered:
            continue  # nested inside a class of a larger component, or redundant
        blocks = _arrange(sets)
        if blocks is None:
            return None
        order: list[int] = []
        for block in blocks:
            inner = [s for s in fam if s & block == s]
            sub = _solve(block, inner)
            if sub is None:
                return None
            order.extend(sub)
        tops.append((union, order))
        covered |= union
    pieces = [(u & -u, o) for u, o in tops]
    pieces.extend((1 << x, [x]) for x in bits(ground & ~covered))
    pieces.sort(key=lambda p: p[0])
    return [x for _, o in pieces for x in o]


def _overlap_components(fam: list[int]) -> list[tuple[int, list[int]]]:
    """Connected components of the overlap graph, each in BFS order."""
    m = len(fam)
    adj: list[list[int]] = [[] for _ in range(m)]
    for a in range(m):
        sa = fam[a]
        for b in range(a + 1, m):
            sb = fam[b]
            inter = sa & sb
            if inter and inter != sa and inter != sb:
                adj[a].append(b)
                adj[b].append(a)
    seen = [False] * m
    comps = []
    for start in range(m):
        if seen[start]:
            continue
        seen[start] = True
        order = [start]
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    order.append(y)
                    queue.append(y)
        union = 0
        for x in order:
            union |= fam[x]
        comps.append((union, [fam[x] for x in order]))
    return comps


def _arrange(sets: list[int]) -> list[int] | None:
    """Place an overlap-connected family (BFS order) as a sequence of classes.

    Returns the classes left to right, or None if some set cannot be made
    contiguous.  Every placed set is kept a union of consecutive classes.
    """
    blocks = [sets[0]]
    union = sets[0]
    for t in sets[1:]:
        new = t & ~union
        touched = [k for k, b in enumerate(blocks) if b & t]
        a, z = touched[0], touched[-1]
        if z - a + 1 != len(touched):
            return None
        for k in range(a + 1, z):
            if blocks[k] & ~t:
                return None
        last = len(blocks) - 1
        if new:
            if a == z:
                blk = blocks[a]
                inside, outside = blk & t, blk & ~t
                if a == last:
                    blocks[a:a + 1] = [b for b in (outside, inside) if b] + [new]
                elif a == 0:
                    blocks[0:1] = [new] + [b for b in (inside, outside) if b]
                else:
                    return None
            elif z == last and not blocks[z] & ~t:
                blk = blocks[a]
                blocks[a:a + 1] = [b for b in (blk & ~t, blk & t) if b]
                blocks.append(new)
            elif a == 0 and not blocks[0] & ~t:
                blk = blocks[z]
                blocks[z:z + 1] = [b for b in (blk & t, blk & ~t) if b]
                blocks.insert(0, new)
            else:
                return None
        else:
            if a == z:
                # t sits inside one class, so it overlaps no placed set
                raise AssertionError("set does not overlap the placed family")
            bz = blocks[z]
            blocks[z:z + 1] = [b for b in (bz & t, bz & ~t) if b]
            ba = blocks[a]
            blocks[a:a + 1] = [b for b in (ba & ~t, ba & t) if b]
        union |= t
    return blocks
