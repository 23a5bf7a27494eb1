"""Freely reduced words over n generator pairs.

A letter is a nonzero integer: ``+(i + 1)`` is the i-th positive generator,
``-(i + 1)`` its inverse.  Words are immutable, always freely reduced, and
carry the rank of their ambient free group; combining words of different
ranks is an error, never a coercion.

Rendering: generator i prints as ``g{i}``, its inverse as ``g{i}'``, and the
empty word as ``e``.  The canonical order on words is length first, then
lexicographic by (generator index, sign) with the positive sign first.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InvalidGeneratorError, RankMismatchError


def make_letter(index: int, inverse: bool = False) -> int:
    """Letter for generator ``index`` (0-based), optionally inverted."""
    if index < 0:
        raise InvalidGeneratorError(f"negative generator index {index}")
    return -(index + 1) if inverse else index + 1


def letter_index(letter: int) -> int:
    """0-based generator index of a letter."""
    return abs(letter) - 1


def letter_key(letter: int) -> tuple[int, int]:
    """Sort key realising the canonical letter order g0 < g0' < g1 < g1' < ..."""
    return (abs(letter) - 1, 0 if letter > 0 else 1)


def letter_str(letter: int, prefix: str = "g") -> str:
    base = f"{prefix}{abs(letter) - 1}"
    return base if letter > 0 else base + "'"


def parse_letter(token: str, rank: int, prefix: str = "g") -> int:
    inverse = token.endswith("'")
    body = token[:-1] if inverse else token
    if not body.startswith(prefix) or not body[len(prefix):].isdigit():
        raise InvalidGeneratorError(f"cannot parse generator token {token!r}")
    index = int(body[len(prefix):])
    if index >= rank:
        raise InvalidGeneratorError(f"generator {token!r} out of range for rank {rank}")
    return make_letter(index, inverse)


def signed_letters(rank: int) -> list[int]:
    """All 2*rank letters in canonical order."""
    out = []
    for i in range(rank):
        out.append(i + 1)
        out.append(-(i + 1))
    return out


def _check_letters(letters: Sequence[int], rank: int) -> None:
    for x in letters:
        if x == 0 or abs(x) > rank:
            raise InvalidGeneratorError(f"letter {x} invalid for rank {rank}")


@dataclass(frozen=True)
class Word:
    """A freely reduced word; doubles as a vertex name in the Cayley tree."""

    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise InvalidGeneratorError(f"rank must be >= 1, got {self.rank}")
        _check_letters(self.letters, self.rank)
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise ValueError(f"word {self.letters} is not freely reduced")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(letter_str(x) for x in self.letters)

    def __repr__(self) -> str:
        return f"Word({self.rank}, {str(self)!r})"

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    @property
    def last(self) -> int:
        if not self.letters:
            raise ValueError("the empty word has no last letter")
        return self.letters[-1]

    def prefix(self, k: int) -> "Word":
        return Word(self.rank, self.letters[:k])

    @property
    def parent(self) -> "Word":
        """The word with the last letter removed."""
        return self.prefix(len(self.letters) - 1)

    def prefixes(self) -> Iterator["Word"]:
        """All proper and improper prefixes, shortest first."""
        for k in range(len(self.letters) + 1):
            yield self.prefix(k)

    def append(self, letter: int) -> "Word":
        """Right-multiply by a single letter (reduces if it cancels)."""
        if self.letters and self.letters[-1] == -letter:
            return Word(self.rank, self.letters[:-1])
        return Word(self.rank, self.letters + (letter,))

    def inverse(self) -> "Word":
        return Word(self.rank, tuple(-x for x in reversed(self.letters)))

    def sort_key(self) -> tuple:
        return (len(self.letters), tuple(letter_key(x) for x in self.letters))


def identity(rank: int) -> Word:
    return Word(rank, ())


def reduce(letters: Iterable[int], rank: int) -> Word:
    """Freely reduce an arbitrary letter sequence."""
    out: list[int] = []
    for x in letters:
        if x == 0 or abs(x) > rank:
            raise InvalidGeneratorError(f"letter {x} invalid for rank {rank}")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return Word(rank, tuple(out))


def multiply(w1: Word, w2: Word) -> Word:
    if w1.rank != w2.rank:
        raise RankMismatchError(f"cannot multiply rank {w1.rank} by rank {w2.rank}")
    return reduce(w1.letters + w2.letters, w1.rank)


def invert(w: Word) -> Word:
    return w.inverse()


def enumerate_spheres(rank: int, radius: int) -> list[list[Word]]:
    """Words of length exactly 0, 1, ..., radius, each level in canonical order."""
    if rank < 1:
        raise InvalidGeneratorError(f"rank must be >= 1, got {rank}")
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    letters = signed_letters(rank)
    levels = [[identity(rank)]]
    for _ in range(radius):
        level = []
        for w in levels[-1]:
            lw = w.letters
            for x in letters:
                if lw and lw[-1] == -x:
                    continue
                level.append(Word(rank, lw + (x,)))
        levels.append(level)
    return levels


def enumerate_ball(rank: int, radius: int) -> list[Word]:
    """All reduced words of length <= radius in canonical order.

    The count is 1 + sum_{i=1..radius} 2*rank * (2*rank - 1)^(i-1), and
    enumerate_ball(rank, j) is a prefix of enumerate_ball(rank, j + 1).
    """
    return [w for level in enumerate_spheres(rank, radius) for w in level]


def ball_size(rank: int, radius: int) -> int:
    total = 1
    count = 1
    for _ in range(radius):
        count *= (2 * rank - 1) if count > 1 else 2 * rank
        total += count
    return total


def parse_word(text: str, rank: int, prefix: str = "g") -> Word:
    """Parse the rendering produced by ``str(word)`` (``"e"`` or ``"g0 g1'"``)."""
    text = text.strip()
    if text in ("e", ""):
        return identity(rank)
    letters = [parse_letter(tok, rank, prefix) for tok in text.split()]
    return reduce(letters, rank)
