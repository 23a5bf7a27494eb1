"""Pseudogroups of prefix-rewrite maps on a one-sided symbol space.

The Cantor space here is concretely the full one-sided shift over a base
alphabet; clopen sets are finite unions of cylinders (prefix constraints),
and every generator is a partial map presented as "consume a fixed prefix,
emit a replacement" on a cylinder-union domain.  That makes domains,
images, compositions and the partition all decidable from finite prefixes.

An itinerary records, for each reduced word over the generators, which
partition piece the composed map sends a point to; words whose composition
is undefined at the point get the reserved empty symbol, and once a word
goes empty every extension of it stays empty.  Itineraries feed the same
tree-building recursion as total configurations, restricted to the live
words, which is why vertex degrees may drop below the regular 2M.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Iterable, Mapping

from .embed import EdgeEncoding, Embedding, _run_embedding, validate_alpha
from .errors import (
    ActionUndefinedError,
    InsufficientDepthError,
    ValidationError,
)
from .freegroup import Word, enumerate_spheres, identity
from .shift import Alphabet
from .trees import PointedTree


class _EmptySymbol:
    """Singleton marker for 'composition undefined here'."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "s_empty"


S_EMPTY = _EmptySymbol()


class SymbolStream:
    """Deterministic one-sided symbol stream, evaluable to any finite prefix."""

    def __init__(self, fn: Callable[[int], Any], label: str = "stream"):
        self._fn = fn
        self.label = label

    def __repr__(self) -> str:
        head = " ".join(str(s) for s in self.prefix(8))
        return f"SymbolStream({self.label}: {head} ...)"

    def symbol_at(self, i: int) -> Any:
        return self._fn(i)

    def prefix(self, k: int) -> tuple:
        return tuple(self._fn(i) for i in range(k))

    def starts_with(self, prefix: tuple) -> bool:
        return self.prefix(len(prefix)) == tuple(prefix)

    def drop(self, k: int) -> "SymbolStream":
        fn = self._fn
        return SymbolStream(lambda i: fn(i + k), label=f"{self.label}>>{k}")

    def prepend(self, prefix: tuple) -> "SymbolStream":
        fn = self._fn
        prefix = tuple(prefix)
        if not prefix:
            return self
        return SymbolStream(
            lambda i: prefix[i] if i < len(prefix) else fn(i - len(prefix)),
            label=f"{prefix}+{self.label}")

    @staticmethod
    def eventually_periodic(pre: Iterable, cycle: Iterable, label: str | None = None) -> "SymbolStream":
        pre = tuple(pre)
        cycle = tuple(cycle)
        if not cycle:
            raise ValidationError("cycle must be nonempty")
        if label is None:
            label = f"{''.join(map(str, pre))}({''.join(map(str, cycle))})*"
        return SymbolStream(
            lambda i: pre[i] if i < len(pre) else cycle[(i - len(pre)) % len(cycle)],
            label=label)

    @staticmethod
    def constant(symbol) -> "SymbolStream":
        return SymbolStream(lambda i: symbol, label=f"{symbol}*")


@dataclass(frozen=True)
class Cylinder:
    """All streams starting with a fixed prefix."""

    prefix: tuple

    def contains(self, stream: SymbolStream) -> bool:
        return stream.starts_with(self.prefix)

    def meet(self, other: "Cylinder") -> "Cylinder | None":
        a, b = self.prefix, other.prefix
        if len(a) > len(b):
            a, b = b, a
        return Cylinder(b) if b[: len(a)] == a else None

    def __str__(self) -> str:
        return "C(" + " ".join(str(s) for s in self.prefix) + ")" if self.prefix else "C()"


@dataclass(frozen=True)
class CylinderUnion:
    """Finite (possibly empty) union of cylinders; normalized by subsumption."""

    parts: tuple[Cylinder, ...]

    @staticmethod
    def of(parts: Iterable[Cylinder]) -> "CylinderUnion":
        kept: list[Cylinder] = []
        for c in sorted(set(parts), key=lambda c: (len(c.prefix), tuple(map(str, c.prefix)))):
            if not any(c.prefix[: len(k.prefix)] == k.prefix for k in kept):
                kept.append(c)
        return CylinderUnion(tuple(kept))

    @staticmethod
    def full() -> "CylinderUnion":
        return CylinderUnion((Cylinder(()),))

    @staticmethod
    def empty() -> "CylinderUnion":
        return CylinderUnion(())

    @property
    def is_empty(self) -> bool:
        return not self.parts

    def contains(self, stream: SymbolStream) -> bool:
        return any(c.contains(stream) for c in self.parts)


@dataclass(frozen=True, eq=False)
class PartialMap:
    """Prefix rewrite on a cylinder-union domain.

    The stored domain is effective: every part already starts with the
    consumed prefix, so applying the map to a part is itself a rewrite.
    """

    name: str
    domain: CylinderUnion
    consume: tuple
    emit: tuple
    inverse_name: str

    def __post_init__(self) -> None:
        effective = []
        for part in self.domain.parts:
            met = part.meet(Cylinder(self.consume))
            if met is not None:
                effective.append(met)
        object.__setattr__(self, "domain", CylinderUnion.of(effective))

    def __repr__(self) -> str:
        return f"PartialMap({self.name})"

    def defined_at(self, stream: SymbolStream) -> bool:
        return self.domain.contains(stream)

    def apply(self, stream: SymbolStream) -> SymbolStream:
        if not self.defined_at(stream):
            raise ActionUndefinedError(f"{self.name} undefined at {stream!r}")
        return stream.drop(len(self.consume)).prepend(self.emit)

    def image_cylinder(self, part: Cylinder) -> Cylinder:
        return Cylinder(self.emit + part.prefix[len(self.consume):])

    @property
    def range(self) -> CylinderUnion:
        return CylinderUnion.of(self.image_cylinder(p) for p in self.domain.parts)


def inverse_of(pm: PartialMap) -> PartialMap:
    """The inverse rewrite, defined exactly on the image of pm's domain."""
    return PartialMap(
        name=pm.inverse_name,
        domain=pm.range,
        consume=pm.emit,
        emit=pm.consume,
        inverse_name=pm.name,
    )


@dataclass(frozen=True, eq=False)
class CylinderPseudogroup:
    """Finite symmetric generating family plus a clopen partition.

    ``positive[i]`` and ``negative[i]`` are mutually inverse; the partition
    pieces must be pairwise disjoint and cover the whole stream space.
    """

    base_alphabet: Alphabet
    positive: tuple[PartialMap, ...]
    negative: tuple[PartialMap, ...]
    partition: tuple[tuple[Any, CylinderUnion], ...]

    @property
    def generator_count(self) -> int:
        return len(self.positive)

    @cached_property
    def symbols(self) -> Alphabet:
        return Alphabet(tuple(s for s, _ in self.partition))

    def map_for_letter(self, x: int) -> PartialMap:
        if not 1 <= abs(x) <= len(self.positive):
            raise ValidationError(f"letter {x} outside the generating family")
        return self.positive[x - 1] if x > 0 else self.negative[-x - 1]

    def classify(self, stream: SymbolStream) -> Any:
        hits = [s for s, union in self.partition if union.contains(stream)]
        if len(hits) != 1:
            raise ValidationError(
                f"stream {stream!r} lies in {len(hits)} partition pieces; expected exactly 1")
        return hits[0]


def validate_cgs(cgs: CylinderPseudogroup) -> list[str]:
    """Structural checks: inverse pairing, partition disjointness and covering."""
    violations = []
    if len(cgs.positive) != len(cgs.negative):
        violations.append("positive and negative generator lists differ in length")
    for pm, inv in zip(cgs.positive, cgs.negative):
        if pm.inverse_name != inv.name or inv.inverse_name != pm.name:
            violations.append(f"{pm.name} and {inv.name} are not declared inverses")
        for part in pm.domain.parts:
            image = pm.image_cylinder(part)
            if not any(q.prefix == image.prefix[: len(q.prefix)] for q in inv.domain.parts):
                violations.append(f"image of {part} under {pm.name} escapes dom {inv.name}")
                continue
            if len(image.prefix) < len(inv.consume):
                violations.append(f"cannot verify round trip of {part} under {pm.name}")
                continue
            back = inv.emit + image.prefix[len(inv.consume):]
            if back != part.prefix:
                violations.append(f"{inv.name} does not invert {pm.name} on {part}")
    depth = max((len(c.prefix) for _, union in cgs.partition for c in union.parts), default=0)
    words = [()]
    for _ in range(depth):
        words = [w + (s,) for w in words for s in cgs.base_alphabet]
    for w in words:
        covers = sum(
            1 for _, union in cgs.partition for c in union.parts
            if c.prefix == w[: len(c.prefix)])
        if covers != 1:
            violations.append(
                f"cylinder on {w} met {covers} partition pieces; expected exactly 1")
    return violations


@dataclass(frozen=True, eq=False)
class ComposedMap:
    """Symbolic composition along a reduced word, first letter acting first.

    Each piece pairs a domain prefix with the image prefix the composite
    rewrites it to; the composite's domain may be empty.
    """

    word: Word
    pieces: tuple[tuple[tuple, tuple], ...]

    @property
    def domain(self) -> CylinderUnion:
        return CylinderUnion.of(Cylinder(dp) for dp, _ in self.pieces)

    def defined_at(self, stream: SymbolStream) -> bool:
        return any(stream.starts_with(dp) for dp, _ in self.pieces)

    def apply(self, stream: SymbolStream) -> SymbolStream:
        for dp, ip in self.pieces:
            if stream.starts_with(dp):
                return stream.drop(len(dp)).prepend(ip)
        raise ActionUndefinedError(f"composite along {self.word} undefined at {stream!r}")


def _normalize_pieces(pieces: list[tuple[tuple, tuple]]) -> list[tuple[tuple, tuple]]:
    kept: list[tuple[tuple, tuple]] = []
    for dp, ip in sorted(set(pieces), key=lambda p: (len(p[0]), tuple(map(str, p[0])))):
        if not any(dp[: len(kdp)] == kdp for kdp, _ in kept):
            kept.append((dp, ip))
    return kept


def compose_word(cgs: CylinderPseudogroup, g: Word) -> ComposedMap:
    """The pair (domain, composite map) for a reduced word over the generators."""
    if g.rank != cgs.generator_count:
        raise ValidationError(
            f"word over {g.rank} generators fed to a family of {cgs.generator_count}")
    pieces: list[tuple[tuple, tuple]] = [((), ())]
    for x in g.letters:
        pm = cgs.map_for_letter(x)
        consume = len(pm.consume)
        new: list[tuple[tuple, tuple]] = []
        for dp, ip in pieces:
            for part in pm.domain.parts:
                q = part.prefix
                if len(q) <= len(ip):
                    if ip[: len(q)] != q:
                        continue
                    extension = ()
                else:
                    if q[: len(ip)] != ip:
                        continue
                    extension = q[len(ip):]
                ip_ext = ip + extension
                new.append((dp + extension, pm.emit + ip_ext[consume:]))
        pieces = _normalize_pieces(new)
    return ComposedMap(g, tuple(pieces))


@dataclass(frozen=True, eq=False)
class Itinerary:
    """Symbols of the partition pieces visited along every reduced word.

    Total on the ball of its depth; the empty symbol marks undefined
    compositions and, once present, persists along every extension.
    """

    source_rank: int
    depth: int
    symbols: Alphabet
    values: Mapping[Word, Any]

    def value(self, w: Word) -> Any:
        if len(w) > self.depth:
            raise InsufficientDepthError(f"itinerary stored to depth {self.depth}, asked at {w}")
        return self.values[w]

    def defined(self, w: Word) -> bool:
        return self.value(w) is not S_EMPTY

    def validate_propagation(self) -> list[str]:
        problems = []
        for w, s in self.values.items():
            if s is S_EMPTY or len(w) == 0:
                continue
            if self.values[w.parent] is S_EMPTY:
                problems.append(f"{w} is live below the dead word {w.parent}")
        return problems


def itinerary(cgs: CylinderPseudogroup, stream: SymbolStream, depth: int) -> Itinerary:
    """Track the point through every reduced word of length <= depth."""
    rank = cgs.generator_count
    values: dict[Word, Any] = {}
    images: dict[Word, SymbolStream] = {identity(rank): stream}
    values[identity(rank)] = cgs.classify(stream)
    for level in enumerate_spheres(rank, depth)[1:]:
        for w in level:
            parent = w.parent
            if values[parent] is S_EMPTY:
                values[w] = S_EMPTY
                continue
            pm = cgs.map_for_letter(w.last)
            point = images[parent]
            if pm.defined_at(point):
                moved = pm.apply(point)
                images[w] = moved
                values[w] = cgs.classify(moved)
            else:
                values[w] = S_EMPTY
    return Itinerary(rank, depth, cgs.symbols, values)


def embed_pseudo(itin: Itinerary, enc: EdgeEncoding, depth: int) -> Embedding:
    """The tree of an itinerary: the usual recursion restricted to live words."""
    problems = validate_alpha(enc)
    if problems:
        raise ValidationError("invalid encoding: " + "; ".join(problems))
    if enc.source_rank != itin.source_rank:
        raise ValidationError(
            f"encoding covers {enc.source_rank} generators, itinerary has {itin.source_rank}")
    if depth > itin.depth:
        raise InsufficientDepthError(
            f"embedding to depth {depth} needs an itinerary of depth >= {depth}")
    if depth < 0:
        raise ValidationError(f"depth {depth} is negative")

    def symbol_at(w: Word):
        s = itin.values[w]
        return None if s is S_EMPTY else s

    kappa = _run_embedding(itin.source_rank, depth, symbol_at, enc)
    tree = PointedTree(enc.target_rank, depth, frozenset(kappa.values()))
    return Embedding(tree, kappa, depth)


def builtin_n0_shift(alph: Alphabet) -> CylinderPseudogroup:
    """The one-sided full shift, cut into one drop-map per leading symbol.

    Each positive generator removes a fixed leading symbol (domain: the
    cylinder on that symbol); its inverse prepends the symbol everywhere.
    The partition simply reads the leading symbol.
    """
    positive = []
    negative = []
    partition = []
    for s in alph:
        drop = PartialMap(
            name=f"1_{s}",
            domain=CylinderUnion((Cylinder((s,)),)),
            consume=(s,),
            emit=(),
            inverse_name=f"1_{s}'",
        )
        positive.append(drop)
        negative.append(inverse_of(drop))
        partition.append((s, CylinderUnion((Cylinder((s,)),))))
    return CylinderPseudogroup(alph, tuple(positive), tuple(negative), tuple(partition))


def _prefix_from_json(obj, alph: Alphabet) -> tuple:
    if isinstance(obj, str):
        tokens = list(obj)
    else:
        tokens = list(obj)
    return tuple(alph.match(t) for t in tokens)


def cgs_to_json(cgs: CylinderPseudogroup) -> dict:
    return {
        "alphabet": list(cgs.base_alphabet.symbols),
        "generators": [
            {
                "name": pm.name,
                "domain": [[str(s) for s in part.prefix] for part in pm.domain.parts],
                "rewrite": {"consume": [str(s) for s in pm.consume],
                            "emit": [str(s) for s in pm.emit]},
            }
            for pm in cgs.positive
        ],
        "partition": {
            str(s): [[str(t) for t in part.prefix] for part in union.parts]
            for s, union in cgs.partition
        },
    }


def cgs_from_json(obj: dict) -> CylinderPseudogroup:
    alph = Alphabet(tuple(obj["alphabet"]))
    positive = []
    negative = []
    for entry in obj["generators"]:
        domain = CylinderUnion.of(
            Cylinder(_prefix_from_json(p, alph)) for p in entry["domain"])
        rewrite = entry["rewrite"]
        pm = PartialMap(
            name=entry["name"],
            domain=domain,
            consume=_prefix_from_json(rewrite["consume"], alph),
            emit=_prefix_from_json(rewrite["emit"], alph),
            inverse_name=entry.get("inverse", entry["name"] + "'"),
        )
        positive.append(pm)
        negative.append(inverse_of(pm))
    partition = tuple(
        (alph.match(token), CylinderUnion.of(
            Cylinder(_prefix_from_json(p, alph)) for p in prefixes))
        for token, prefixes in obj["partition"].items())
    cgs = CylinderPseudogroup(alph, tuple(positive), tuple(negative), partition)
    problems = validate_cgs(cgs)
    if problems:
        raise ValidationError("invalid generating system: " + "; ".join(problems))
    return cgs


def stream_from_json(obj: dict, alph: Alphabet) -> SymbolStream:
    pre = tuple(alph.match(t) for t in obj.get("pre", []))
    cycle = tuple(alph.match(t) for t in obj.get("cycle", []))
    return SymbolStream.eventually_periodic(pre, cycle)
