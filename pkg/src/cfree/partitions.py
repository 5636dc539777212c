"""Set partitions of ``{1..n}``: non-crossing, interval and NC' families.

Partitions are canonical: each block is a sorted tuple and blocks are sorted
by their minima.  Enumerators return lists in a fixed order (sorted by the
block tuples) so downstream reports are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

DEFAULT_MAX_N = 14


class CrossingPartition(ValueError):
    pass


@dataclass(frozen=True)
class SetPartition:
    n: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0]))
        seen = [x for b in blocks for x in b]
        if any(not b for b in blocks) or sorted(seen) != list(range(1, self.n + 1)):
            raise ValueError(f"{self.blocks} is not a partition of 1..{self.n}")
        object.__setattr__(self, "blocks", blocks)

    def __len__(self):
        return len(self.blocks)

    def block_of(self, i: int) -> tuple:
        for b in self.blocks:
            if i in b:
                return b
        raise KeyError(i)

    def same_block(self, i: int, j: int) -> bool:
        return j in self.block_of(i)

    def is_noncrossing(self) -> bool:
        for b1, b2 in combinations(self.blocks, 2):
            for i, k in combinations(b1, 2):
                for j, l in combinations(b2, 2):
                    if i < j < k < l or j < i < l < k:
                        return False
        return True

    def is_interval(self) -> bool:
        return all(b[-1] - b[0] == len(b) - 1 for b in self.blocks)

    def singletons(self) -> tuple:
        return tuple(b for b in self.blocks if len(b) == 1)

    def refines(self, other: "SetPartition") -> bool:
        """``self <= other`` in the refinement order."""
        return all(any(set(b) <= set(c) for c in other.blocks) for b in self.blocks)


def _check_cap(n: int, allow_large: bool):
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > DEFAULT_MAX_N and not allow_large:
        raise ValueError(f"n={n} exceeds the enumeration cap {DEFAULT_MAX_N}; pass allow_large=True")


@lru_cache(maxsize=None)
def _nc_blocks(lo: int, hi: int) -> tuple:
    """Non-crossing partitions of the interval ``lo..hi`` as tuples of blocks."""
    if lo > hi:
        return ((),)
    out = []
    rest = list(range(lo + 1, hi + 1))
    for k in range(len(rest) + 1):
        for others in combinations(rest, k):
            block = (lo,) + others
            pieces = [((),)]
            bounds = list(block) + [hi + 1]
            for a, b in zip(bounds, bounds[1:]):
                pieces.append(_nc_blocks(a + 1, b - 1))
            combos = [(block,)]
            for piece in pieces[1:]:
                combos = [c + p for c in combos for p in piece]
            out.extend(combos)
    return tuple(out)


def enumerate_nc(n: int, allow_large: bool = False) -> list:
    """All non-crossing partitions of ``{1..n}``, built by placing the block of 1."""
    _check_cap(n, allow_large)
    parts = [SetPartition(n, blocks) for blocks in _nc_blocks(1, n)]
    return sorted(parts, key=lambda p: p.blocks)


def enumerate_interval(n: int) -> list:
    _check_cap(n, False)
    if n == 0:
        return [SetPartition(0, ())]
    out = []
    for k in range(n):
        for cuts in combinations(range(1, n), k):
            bounds = (0,) + cuts + (n,)
            out.append(SetPartition(n, tuple(tuple(range(a + 1, b + 1))
                                             for a, b in zip(bounds, bounds[1:]))))
    return sorted(out, key=lambda p: p.blocks)


def enumerate_nc_prime(n: int, allow_large: bool = False) -> list:
    """Non-crossing partitions in which 1 and n share a block."""
    if n < 1:
        raise ValueError("NC'(n) needs n >= 1")
    return [p for p in enumerate_nc(n, allow_large) if n in p.blocks[0]]


def all_set_partitions(n: int) -> list:
    """Every set partition of ``{1..n}`` (restricted growth strings); test oracle."""
    out = []

    def rec(i, blocks):
        if i > n:
            out.append(SetPartition(n, tuple(tuple(b) for b in blocks)))
            return
        for b in blocks:
            b.append(i)
            rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        rec(i + 1, blocks)
        blocks.pop()

    rec(1, [])
    return sorted(out, key=lambda p: p.blocks)


def _is_inner(block, others) -> bool:
    j = block[0]
    return any(c[0] < j < c[-1] for c in others)


def classify_blocks(p: SetPartition):
    """Split the blocks of a non-crossing partition into ``(outer, inner)``."""
    if not p.is_noncrossing():
        raise CrossingPartition(f"{p.blocks} has a crossing")
    outer, inner = [], []
    for b in p.blocks:
        others = [c for c in p.blocks if c is not b]
        (inner if _is_inner(b, others) else outer).append(b)
    return outer, inner


def is_ll(p: SetPartition, s: SetPartition) -> bool:
    """``p << s``: ``p`` refines ``s`` and joins the ends of every block of ``s``."""
    if p.n != s.n:
        raise ValueError("partitions of different ground sets")
    if not p.refines(s):
        return False
    return all(p.same_block(b[0], b[-1]) for b in s.blocks)


@lru_cache(maxsize=None)
def nc_table(n: int) -> tuple:
    """Zero-based ``(blocks, outer_flags)`` for every partition in NC(n); cached."""
    rows = []
    for p in enumerate_nc(n):
        outer, _ = classify_blocks(p)
        outer = set(outer)
        rows.append((tuple(tuple(i - 1 for i in b) for b in p.blocks),
                     tuple(b in outer for b in p.blocks)))
    return tuple(rows)


@lru_cache(maxsize=None)
def interval_table(n: int) -> tuple:
    return tuple(tuple(tuple(i - 1 for i in b) for b in p.blocks) for p in enumerate_interval(n))


@lru_cache(maxsize=None)
def nc_prime_table(n: int) -> tuple:
    """Zero-based blocks of NC'(n) with the index of the unique outer block (always 0)."""
    return tuple(tuple(tuple(i - 1 for i in b) for b in p.blocks) for p in enumerate_nc_prime(n))
