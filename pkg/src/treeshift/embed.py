"""Embedding shift configurations into the space of pointed trees.

The embedding walks the source ball level by level.  A word w2 = w1 h of
length j extends the vertex of w1 by one target letter:

*  h positive: append the encoding of (h, symbol at w1);
*  h negative: append the inverse of the encoding of (h^-1, symbol at w2).

Injectivity of the encoding table rules out cancellations, so every source
word of length j lands on a vertex at distance exactly j, and the image of
the radius-j ball is the radius-j ball of the image tree.

The decoder reverses this: a vertex entered through an inverse letter
reveals its own symbol immediately, while a vertex entered through a
positive letter reads its symbol off any outward positive continuation
(all of them, and the entering edge of an inverse step, must agree).
Decoding a radius-j tree therefore recovers symbols on words of length
at most j - 1, and no further.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Mapping

from .errors import (
    ActionUndefinedError,
    ConsistencyError,
    InsufficientDepthError,
    NotInImageError,
    RankMismatchError,
    ValidationError,
)
from .freegroup import Word, enumerate_ball, identity, letter_str, parse_word, signed_letters
from .shift import Alphabet, Config
from .trees import BoxDistance, PointedTree, act, box_distance


@dataclass(frozen=True)
class EdgeEncoding:
    """Injective table (source generator, symbol) -> positive target generator.

    Drives the embedding: the table must be total on the source generators
    times the alphabet, injective, and fit inside the target rank, which
    forces target_rank >= source_rank * len(alphabet).
    """

    source_rank: int
    alphabet: Alphabet
    target_rank: int
    entries: tuple[tuple[int, Any, int], ...]

    @cached_property
    def _forward(self) -> dict[tuple[int, Any], int]:
        return {(g, s): t for g, s, t in self.entries}

    @cached_property
    def _backward(self) -> dict[int, tuple[int, Any]]:
        return {t: (g, s) for g, s, t in self.entries}

    def encode(self, generator: int, symbol) -> int:
        try:
            return self._forward[(generator, symbol)]
        except KeyError:
            raise ValidationError(
                f"no table entry for generator t{generator - 1} and symbol {symbol!r}") from None

    def decode(self, target_letter: int) -> tuple[int, Any]:
        try:
            return self._backward[target_letter]
        except KeyError:
            raise NotInImageError(
                f"edge label {letter_str(target_letter)} is not in the encoding's range") from None


def edge_encoding(source_rank: int, alphabet: Alphabet, target_rank: int,
                  table: Mapping[tuple[int, Any], int]) -> EdgeEncoding:
    entries = tuple(sorted(
        ((g, s, t) for (g, s), t in table.items()),
        key=lambda e: (e[0], _symbol_order(alphabet, e[1]))))
    return EdgeEncoding(source_rank, alphabet, target_rank, entries)


def _symbol_order(alphabet: Alphabet, symbol) -> int:
    try:
        return alphabet.index(symbol)
    except ValidationError:
        return len(alphabet)


def validate_alpha(enc: EdgeEncoding) -> list[str]:
    """Violation list; empty means the encoding is usable."""
    violations = []
    m = len(enc.alphabet)
    if enc.target_rank < enc.source_rank * m:
        violations.append(
            f"target rank {enc.target_rank} below source_rank*alphabet = {enc.source_rank * m}")
    seen_pairs = set()
    seen_targets: dict[int, tuple] = {}
    for g, s, t in enc.entries:
        if not 1 <= g <= enc.source_rank:
            violations.append(f"source generator t{g - 1} out of range")
        if s not in enc.alphabet:
            violations.append(f"symbol {s!r} not in the alphabet")
        if not 1 <= t <= enc.target_rank:
            violations.append(f"target generator {letter_str(t)} out of range")
        if (g, s) in seen_pairs:
            violations.append(f"duplicate entry for (t{g - 1}, {s!r})")
        seen_pairs.add((g, s))
        if t in seen_targets and seen_targets[t] != (g, s):
            violations.append(
                f"not injective: {letter_str(t)} assigned to both {seen_targets[t]} and {(g, s)}")
        seen_targets.setdefault(t, (g, s))
    for g in range(1, enc.source_rank + 1):
        for s in enc.alphabet:
            if (g, s) not in seen_pairs:
                violations.append(f"missing entry for (t{g - 1}, {s!r})")
    return violations


def random_encoding(source_rank: int, alphabet: Alphabet, target_rank: int,
                    seed: int) -> EdgeEncoding:
    """Seeded random injective table (target_rank must be large enough)."""
    need = source_rank * len(alphabet)
    if target_rank < need:
        raise ValidationError(f"target rank {target_rank} below {need}")
    rng = random.Random(seed)
    targets = rng.sample(range(1, target_rank + 1), need)
    table = {}
    i = 0
    for g in range(1, source_rank + 1):
        for s in alphabet:
            table[(g, s)] = targets[i]
            i += 1
    return edge_encoding(source_rank, alphabet, target_rank, table)


def encoding_to_json(enc: EdgeEncoding) -> dict:
    return {
        "M": enc.source_rank,
        "alphabet": list(enc.alphabet.symbols),
        "n": enc.target_rank,
        "table": {f"t{g - 1},{s}": f"g{t - 1}" for g, s, t in enc.entries},
    }


def encoding_from_json(obj: dict, alphabet: Alphabet | None = None) -> EdgeEncoding:
    declared = Alphabet(tuple(obj["alphabet"]))
    if alphabet is None:
        alphabet = declared
    elif len(alphabet) != len(declared) or any(
            str(a) != str(b) for a, b in zip(alphabet.symbols, declared.symbols)):
        raise ValidationError(
            f"encoding alphabet {declared.symbols} does not match {alphabet.symbols}")
    source_rank = int(obj["M"])
    target_rank = int(obj["n"])
    table = {}
    for key, value in obj["table"].items():
        gen_text, _, sym_text = key.partition(",")
        if not gen_text.startswith("t"):
            raise ValidationError(f"table key {key!r} must look like 't0,<symbol>'")
        g = int(gen_text[1:]) + 1
        s = alphabet.match(sym_text)
        if not value.startswith("g"):
            raise ValidationError(f"table value {value!r} must look like 'g0'")
        table[(g, s)] = int(value[1:]) + 1
    return edge_encoding(source_rank, alphabet, target_rank, table)


@dataclass(frozen=True, eq=False)
class Embedding:
    """A depth-j image tree with the source-word-to-vertex bijection."""

    tree: PointedTree
    vertex_of: Mapping[Word, Word]
    depth: int

    @cached_property
    def word_of(self) -> dict[Word, Word]:
        return {v: w for w, v in self.vertex_of.items()}


def _run_embedding(source_rank: int, depth: int, symbol_at: Callable[[Word], Any],
                   enc: EdgeEncoding) -> dict[Word, Word]:
    """Level-synchronous recursion shared by the total and partial embeddings.

    ``symbol_at`` returns None for source words the embedding must skip
    (undefined itinerary entries); a skipped word prunes its whole subtree.
    """
    root = identity(source_rank)
    if symbol_at(root) is None:
        raise ValidationError("the empty word carries no symbol; nothing to embed")
    kappa: dict[Word, Word] = {root: identity(enc.target_rank)}
    frontier = [root]
    for level in range(1, depth + 1):
        nxt = []
        for parent in frontier:
            parent_symbol = symbol_at(parent)
            parent_vertex = kappa[parent]
            for x in signed_letters(source_rank):
                if parent.letters and parent.letters[-1] == -x:
                    continue
                child = Word(source_rank, parent.letters + (x,))
                child_symbol = symbol_at(child)
                if child_symbol is None:
                    continue
                if x > 0:
                    target_letter = enc.encode(x, parent_symbol)
                else:
                    target_letter = -enc.encode(-x, child_symbol)
                vertex = parent_vertex.append(target_letter)
                if len(vertex) != level:
                    raise ConsistencyError(
                        f"cancellation while embedding {child}; encoding is not injective")
                kappa[child] = vertex
                nxt.append(child)
        frontier = nxt
    if len(set(kappa.values())) != len(kappa):
        raise ConsistencyError("embedding produced colliding vertices")
    return kappa


def embed_config(sigma: Config, enc: EdgeEncoding, depth: int) -> Embedding:
    """Embed a configuration over a free group as a pointed tree of radius depth."""
    problems = validate_alpha(enc)
    if problems:
        raise ValidationError("invalid encoding: " + "; ".join(problems))
    if depth < 0:
        raise ValidationError(f"depth {depth} is negative")
    if sigma.group.kind != "free" or sigma.group.generator_count != enc.source_rank:
        raise ValidationError(
            "embed_config needs a configuration over the free group of the encoding's "
            "source rank; pull general groups back with groups.induced_config first")
    cache: dict[Word, Any] = {}

    def symbol_at(w: Word):
        if w not in cache:
            cache[w] = sigma.eval_word(w)
        return cache[w]

    kappa = _run_embedding(enc.source_rank, depth, symbol_at, enc)
    tree = PointedTree(enc.target_rank, depth, frozenset(kappa.values()))
    return Embedding(tree, kappa, depth)


@dataclass(frozen=True, eq=False)
class DecodedConfig:
    """Partial configuration recovered from an image tree.

    Symbols are known exactly on words of length <= depth; anything longer
    would need edges beyond the decoded ball, so asking for it raises.
    """

    source_rank: int
    depth: int
    alphabet: Alphabet
    values: Mapping[Word, Any]
    vertex_words: Mapping[Word, Word]

    def eval_word(self, w: Word) -> Any:
        if w.rank != self.source_rank:
            raise RankMismatchError(f"word rank {w.rank} vs decoder rank {self.source_rank}")
        if len(w) > self.depth:
            raise InsufficientDepthError(
                f"symbol at {w} needs a deeper tree (decoded depth {self.depth})")
        return self.values[w]


def decode_tree(tree: PointedTree | Embedding, enc: EdgeEncoding, depth: int) -> DecodedConfig:
    """Invert the embedding on a radius-depth ball of an image tree."""
    if isinstance(tree, Embedding):
        tree = tree.tree
    problems = validate_alpha(enc)
    if problems:
        raise ValidationError("invalid encoding: " + "; ".join(problems))
    if tree.rank != enc.target_rank:
        raise RankMismatchError(f"tree rank {tree.rank} vs encoding target {enc.target_rank}")
    if depth < 1:
        raise ValidationError("decoding needs depth >= 1")
    if depth > tree.radius:
        raise InsufficientDepthError(f"decode depth {depth} exceeds tree radius {tree.radius}")
    source_rank = enc.source_rank
    lam: dict[Word, Word] = {identity(tree.rank): identity(source_rank)}
    values: dict[Word, Any] = {}

    def vote(word: Word, symbol, origin: str) -> None:
        if word in values and values[word] != symbol:
            raise ConsistencyError(
                f"conflicting symbols {values[word]!r} and {symbol!r} at {word} ({origin})")
        values[word] = symbol

    for d in range(depth):
        for v in sorted(tree.level(d), key=Word.sort_key):
            wv = lam[v]
            for u in tree.children(v):
                x = u.last
                if x > 0:
                    gen, sym = enc.decode(x)
                    wu = wv.append(gen)
                    vote(wv, sym, f"edge {v} -> {u}")
                else:
                    gen, sym = enc.decode(-x)
                    wu = wv.append(-gen)
                    vote(wu, sym, f"edge {v} -> {u}")
                if len(wu) != len(wv) + 1:
                    raise ConsistencyError(f"edge {v} -> {u} folds back; not an image tree")
                lam[u] = wu
            if len(wv) <= depth - 1 and wv not in values:
                raise ConsistencyError(
                    f"no outward positive continuation at {v}; cannot read symbol at {wv}")
    if len(set(lam.values())) != len(lam):
        raise ConsistencyError("decoded vertex words collide; not an image tree")
    domain = {w: values[w] for w in enumerate_ball(source_rank, depth - 1)}
    return DecodedConfig(source_rank, depth - 1, enc.alphabet, domain, lam)


@dataclass(frozen=True)
class EquivarianceReport:
    """Outcome of one single-generator equivariance check.

    For an inverse generator the adopted witness reads the symbol at the
    generator itself; the variant reading the symbol at the identity is
    evaluated alongside and recorded, never silently merged.
    """

    generator: int
    depth: int
    clause: str
    witness: Word
    ball_equal: bool
    alternate_witness: Word | None = None
    alternate_defined: bool | None = None
    alternate_equal: bool | None = None

    @property
    def ok(self) -> bool:
        return self.ball_equal


def check_equivariance(sigma: Config, enc: EdgeEncoding, h: int, depth: int) -> EquivarianceReport:
    """Compare embed(shift(sigma, h)) with the rebasing of embed(sigma).

    Both sides are radius depth - 1 trees; the report says whether they
    coincide, and for inverse generators also how the identity-symbol
    variant of the witness fared.
    """
    if depth < 1:
        raise ValidationError("equivariance checks need depth >= 1")
    source_rank = enc.source_rank
    step = Word(source_rank, (h,))
    base = embed_config(sigma, enc, depth)
    shifted = embed_config(sigma.shifted(step), enc, depth - 1)

    def rebased_matches(witness: Word) -> tuple[bool, bool]:
        try:
            moved = act(base.tree, witness)
        except ActionUndefinedError:
            return False, False
        return True, moved.vertices == shifted.tree.vertices

    if h > 0:
        witness = Word(enc.target_rank, (enc.encode(h, sigma.eval_word(identity(source_rank))),))
        _, equal = rebased_matches(witness)
        return EquivarianceReport(h, depth, "positive", witness, equal)

    sym_at_step = sigma.eval_word(step)
    sym_at_identity = sigma.eval_word(identity(source_rank))
    witness = Word(enc.target_rank, (-enc.encode(-h, sym_at_step),))
    _, equal = rebased_matches(witness)
    alternate = Word(enc.target_rank, (-enc.encode(-h, sym_at_identity),))
    if alternate == witness:
        alt_defined, alt_equal = True, equal
    else:
        alt_defined, alt_equal = rebased_matches(alternate)
    return EquivarianceReport(h, depth, "negative", witness, equal,
                              alternate_witness=alternate,
                              alternate_defined=alt_defined,
                              alternate_equal=alt_equal)


def separate_witness(t1: PointedTree, t2: PointedTree) -> Word | None:
    """A rebasing word that blows a known discrepancy up to distance 1.

    Returns the length-r prefix of the canonically first vertex in the
    symmetric difference one level past the agreement radius r, or None
    when the trees agree to their common depth.
    """
    d = box_distance(t1, t2)
    if not d.exact:
        return None
    r = d.r
    discrepancies = sorted(t1.level(r + 1) ^ t2.level(r + 1), key=Word.sort_key)
    g = discrepancies[0].prefix(r)
    rebased = box_distance(act(t1, g), act(t2, g))
    if rebased != BoxDistance(0, exact=True):
        raise ConsistencyError(f"witness {g} failed to separate: {rebased}")
    return g


def parse_source_word(text: str, source_rank: int) -> Word:
    """Parse a word over the source generators (rendered t0, t1', ...)."""
    return parse_word(text, source_rank, prefix="t")
