"""Erdős–Szekeres extraction of long monotone subsequences."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class MonotoneWitness:
    indices: tuple[int, ...]
    direction: str
    length: int

    def __post_init__(self):
        if self.direction not in ("increasing", "decreasing"):
            raise ValueError(f"bad direction {self.direction!r}")
        if len(self.indices) != self.length:
            raise ValueError("length does not match indices")

    def values(self, seq: Sequence[int]) -> list[int]:
        return [seq[i] for i in self.indices]

    def is_valid_for(self, seq: Sequence[int]) -> bool:
        vals = self.values(seq)
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            return False
        if self.direction == "increasing":
            return all(a < b for a, b in zip(vals, vals[1:]))
        return all(a > b for a, b in zip(vals, vals[1:]))


def _longest(seq: Sequence[int], increasing: bool) -> list[int]:
    """Indices of a longest strictly monotone subsequence (patience-sorting DP)."""
    keys = [x if increasing else -x for x in seq]
    tails: list[int] = []
    tail_idx: list[int] = []
    prev = [-1] * len(keys)
    for i, x in enumerate(keys):
        k = bisect_left(tails, x)
        if k == len(tails):
            tails.append(x)
            tail_idx.append(i)
        else:
            tails[k] = x
            tail_idx[k] = i
        prev[i] = tail_idx[k - 1] if k else -1
    out = []
    cur = tail_idx[-1] if tail_idx else -1
    while cur != -1:
        out.append(cur)
        cur = prev[cur]
    return out[::-1]


def longest_increasing(seq: Sequence[int]) -> list[int]:
    return _longest(seq, True)


def longest_decreasing(seq: Sequence[int]) -> list[int]:
    return _longest(seq, False)


def es_monotone(seq: Sequence[int], a: int, b: int) -> MonotoneWitness:
    """Increasing run of length >= a, else decreasing run of length >= b.

    Any sequence of more than (a-1)(b-1) distinct values has one of the two.
    The longest witness in the chosen direction is returned.
    """
    if a < 1 or b < 1:
        raise ValueError("targets must be at least 1")
    if len(set(seq)) != len(seq):
        raise ValueError("values must be distinct")
    need = (a - 1) * (b - 1) + 1
    if len(seq) < need:
        raise ValueError(f"sequence of length {len(seq)} is shorter than (a-1)(b-1)+1 = {need}")
    inc = longest_increasing(seq)
    if len(inc) >= a:
        return MonotoneWitness(tuple(inc), "increasing", len(inc))
    dec = longest_decreasing(seq)
    if len(dec) >= b:
        return MonotoneWitness(tuple(dec), "decreasing", len(dec))
    raise AssertionError("monotone subsequence guarantee violated")
