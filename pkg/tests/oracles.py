"""Brute-force reference implementations used only as test oracles.

These deliberately avoid the algorithms used by the package: reduction is
repeated single-pass adjacent cancellation, and balls are produced by
generating every letter string and deduplicating.
"""
from __future__ import annotations

import itertools


def single_pass_cancel(letters: list[int]) -> tuple[list[int], bool]:
    out: list[int] = []
    changed = False
    i = 0
    while i < len(letters):
        if i + 1 < len(letters) and letters[i] == -letters[i + 1]:
            i += 2
            changed = True
        else:
            out.append(letters[i])
            i += 1
    return out, changed


def brute_reduce(letters) -> tuple[int, ...]:
    """Repeated single-pass adjacent cancellation to a fixpoint."""
    cur = list(letters)
    while True:
        cur, changed = single_pass_cancel(cur)
        if not changed:
            return tuple(cur)


def all_signed_letters(rank: int) -> list[int]:
    return [x for i in range(1, rank + 1) for x in (i, -i)]


def brute_ball_words(rank: int, radius: int) -> set[tuple[int, ...]]:
    """Every reduced word of length <= radius, via exhaustive generation."""
    out: set[tuple[int, ...]] = set()
    letters = all_signed_letters(rank)
    for length in range(radius + 1):
        for string in itertools.product(letters, repeat=length):
            out.add(brute_reduce(string))
    return {w for w in out if len(w) <= radius}
