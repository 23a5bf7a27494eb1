"""Finitely generated group models with computable normal forms.

A :class:`GroupModel` is a quotient of a free group F_M presented through a
normalizer: a pure function sending each reduced word to a canonical payload
that is constant exactly on the fibers of the quotient map.  Built-in models
cover free groups and integer lattices; anything else is supplied as a
user callback (no completion procedure is attempted here).

Every :class:`GroupElement` keeps a representative word alongside its
payload, so multiplication works uniformly: multiply the representatives,
renormalize.  Equality and hashing use the payload only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from . import shift
from .errors import GroupMismatchError, RankMismatchError, ValidationError
from .freegroup import Word, identity as word_identity


@dataclass(frozen=True)
class GroupElement:
    """Canonical element of a group model: payload equality is group equality."""

    group_key: tuple
    payload: Any
    rep: Word = field(compare=False)

    def __str__(self) -> str:
        return str(self.payload)


class GroupModel:
    """A finitely generated group with a decidable normal form."""

    def __init__(self, kind: str, key: tuple, generator_count: int,
                 normalizer: Callable[[Word], Any]):
        self.kind = kind
        self.key = key
        self.generator_count = generator_count
        self._normalizer = normalizer

    def __repr__(self) -> str:
        return f"GroupModel({self.key})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupModel) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def normalize(self, w: Word) -> GroupElement:
        if w.rank != self.generator_count:
            raise RankMismatchError(
                f"word of rank {w.rank} fed to a model on {self.generator_count} generators")
        return GroupElement(self.key, self._normalizer(w), w)

    def identity(self) -> GroupElement:
        return self.normalize(word_identity(self.generator_count))

    def multiply(self, a: GroupElement, b: GroupElement) -> GroupElement:
        for e in (a, b):
            if e.group_key != self.key:
                raise GroupMismatchError(f"element {e} does not belong to {self!r}")
        return self.normalize(a.rep * b.rep)


def free_group(generator_count: int) -> GroupModel:
    """The free group F_M itself: the normal form is the reduced word."""
    return GroupModel("free", ("free", generator_count), generator_count, lambda w: w)


def integer_lattice(d: int | None = None, images=None) -> GroupModel:
    """Z^d with each generator mapped to a fixed integer vector.

    ``images[i]`` is the vector assigned to generator i; by default the
    standard basis of Z^d, giving the usual lattice on d generators.
    """
    if images is None:
        if d is None:
            raise ValidationError("integer_lattice needs d or images")
        images = [[1 if j == i else 0 for j in range(d)] for i in range(d)]
    images = tuple(tuple(int(c) for c in v) for v in images)
    if d is None:
        d = len(images[0]) if images else 0
    if any(len(v) != d for v in images):
        raise ValidationError("lattice images must all have dimension d")
    if not images:
        raise ValidationError("integer_lattice needs at least one generator")

    def normalizer(w: Word) -> tuple[int, ...]:
        vec = [0] * d
        for x in w.letters:
            img = images[abs(x) - 1]
            sign = 1 if x > 0 else -1
            for j in range(d):
                vec[j] += sign * img[j]
        return tuple(vec)

    return GroupModel("lattice", ("lattice", d, images), len(images), normalizer)


def custom_group(generator_count: int, normalizer: Callable[[Word], Any],
                 name: str = "custom") -> GroupModel:
    """A group given by a user normalizer.

    The callback must be pure, return hashable payloads, and be constant on
    the fibers of the quotient map (this is a contract, not something the
    library can verify).
    """
    return GroupModel("custom", ("custom", name, id(normalizer)), generator_count, normalizer)


def normal_form(model: GroupModel, w: Word) -> GroupElement:
    return model.normalize(w)


def lattice_unit_element(model: GroupModel, k: int) -> GroupElement:
    """The element k of a rank-1 lattice, via a generator of image +-1."""
    if model.kind != "lattice" or model.key[1] != 1:
        raise ValidationError("lattice_unit_element needs a 1-dimensional lattice model")
    images = model.key[2]
    for i, (c,) in enumerate(images):
        if c in (1, -1):
            letter = (i + 1) if c * k >= 0 else -(i + 1)
            return model.normalize(Word(model.generator_count, (letter,) * abs(k)))
    raise ValidationError("no generator with image +1 or -1")


def induced_config(model: GroupModel, sigma: "shift.Config") -> "shift.Config":
    """Pull a configuration on G back to the free group on G's generators.

    The result evaluates a word by normalizing it into G and reading the
    original configuration there, so words in the same fiber always agree
    and relators collapse.
    """
    if sigma.group != model:
        raise GroupMismatchError("configuration does not live on the given model")
    fm = free_group(model.generator_count)
    return shift.Config(
        group=fm,
        alphabet=sigma.alphabet,
        rule=lambda w: sigma.eval(model.normalize(w)),
        label=f"induced({sigma.label})",
    )


def group_to_json(model: GroupModel) -> dict:
    if model.kind == "free":
        return {"kind": "free", "M": model.generator_count}
    if model.kind == "lattice":
        _, d, images = model.key
        return {"kind": "lattice", "d": d, "images": [list(v) for v in images]}
    raise ValidationError("custom group models have no JSON form")


def group_from_json(obj: dict) -> GroupModel:
    kind = obj.get("kind")
    if kind == "free":
        return free_group(int(obj["M"]))
    if kind == "lattice":
        return integer_lattice(d=int(obj["d"]), images=obj.get("images"))
    raise ValidationError(f"unknown group kind {kind!r}")
