"""Small combinatorial generators used by the enumerators."""

from __future__ import annotations

from typing import Iterator, Sequence


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def distinct_permutations(items: Sequence) -> Iterator[tuple]:
    """Permutations of a multiset, each arrangement exactly once."""
    pool = sorted(items)
    n = len(pool)
    if n == 0:
        yield ()
        return

    def rec(remaining: list) -> Iterator[tuple]:
        if not remaining:
            yield ()
            return
        prev = object()
        for i, x in enumerate(remaining):
            if x == prev:
                continue
            prev = x
            for rest in rec(remaining[:i] + remaining[i + 1:]):
                yield (x,) + rest

    yield from rec(pool)


def perfect_matchings(elements: Sequence[int]) -> Iterator[tuple[tuple[int, int], ...]]:
    """All partitions of an even-sized set into unordered pairs."""
    elems = sorted(elements)
    if len(elems) % 2:
        raise ValueError("cannot match an odd number of elements")

    def rec(rem: list[int]) -> Iterator[tuple[tuple[int, int], ...]]:
        if not rem:
            yield ()
            return
        first = rem[0]
        for i in range(1, len(rem)):
            partner = rem[i]
            rest = rem[1:i] + rem[i + 1:]
            for tail in rec(rest):
                yield ((first, partner),) + tail

    yield from rec(elems)


def segmentations(seq: Sequence) -> Iterator[tuple[tuple, ...]]:
    """Splits of a sequence into a tuple of nonempty contiguous blocks."""
    n = len(seq)
    if n == 0:
        yield ()
        return
    for mask in range(1 << (n - 1)):
        blocks = []
        start = 0
        for i in range(n - 1):
            if mask & (1 << i):
                blocks.append(tuple(seq[start:i + 1]))
                start = i + 1
        blocks.append(tuple(seq[start:]))
        yield tuple(blocks)


def cycles_of(perm: Sequence[int]) -> list[list[int]]:
    """Cycle decomposition; each cycle starts at its least element, cycles
    sorted by that element."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        cur = perm[start]
        while cur != start:
            cyc.append(cur)
            seen[cur] = True
            cur = perm[cur]
        out.append(cyc)
    return out


def surjective_gradings(count: int) -> Iterator[tuple[int, ...]]:
    """All maps {0..count-1} -> {1..k} hitting every value up to some k >= 1.

    Yields the value tuple; `count` = 0 yields the empty grading.
    """
    if count == 0:
        yield ()
        return
    for values in _gradings_rec(count):
        yield values


def _gradings_rec(count: int) -> Iterator[tuple[int, ...]]:
    import itertools

    for top in range(1, count + 1):
        for values in itertools.product(range(1, top + 1), repeat=count):
            if max(values) != top:
                continue
            if set(values) != set(range(1, top + 1)):
                continue
            yield values
