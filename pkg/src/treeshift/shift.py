"""Shift configurations over a group model: lazy oracles, the right shift
action, agreement depth, and the two-sided sequence metric.

A configuration is never materialized: it is a pure rule evaluated on
canonical payloads, together with an accumulated translate implementing
the right action (sigma . gamma)(x) = sigma(gamma x).
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable

from .errors import GroupMismatchError, ValidationError
from .freegroup import Word, enumerate_spheres


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite symbol set."""

    symbols: tuple

    def __post_init__(self) -> None:
        if len(self.symbols) < 1:
            raise ValidationError("alphabet must hold at least one symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValidationError("alphabet symbols must be distinct")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, s) -> bool:
        return s in self.symbols

    def index(self, s) -> int:
        try:
            return self.symbols.index(s)
        except ValueError:
            raise ValidationError(f"symbol {s!r} not in alphabet {self.symbols}") from None

    def match(self, token) -> Any:
        """Find the symbol equal to ``token`` or to its string rendering."""
        if token in self.symbols:
            return self.symbols[self.symbols.index(token)]
        for s in self.symbols:
            if str(s) == str(token):
                return s
        raise ValidationError(f"token {token!r} matches no symbol of {self.symbols}")


def alphabet(symbols: Iterable) -> Alphabet:
    return Alphabet(tuple(symbols))


class Config:
    """A lazily evaluated map from group elements to symbols.

    ``rule`` receives canonical payloads.  ``translate`` accumulates shifts:
    evaluation at g reads the rule at translate * g.
    """

    def __init__(self, group, alphabet: Alphabet, rule: Callable[[Any], Any],
                 translate=None, label: str = "config"):
        self.group = group
        self.alphabet = alphabet
        self.rule = rule
        self.translate = group.identity() if translate is None else translate
        self.label = label

    def __repr__(self) -> str:
        return f"Config({self.label}, translate={self.translate})"

    def eval(self, g) -> Any:
        if g.group_key != self.group.key:
            raise GroupMismatchError(f"element {g} does not belong to {self.group!r}")
        value = self.rule(self.group.multiply(self.translate, g).payload)
        if value not in self.alphabet:
            raise ValidationError(f"rule produced {value!r} outside the alphabet")
        return value

    def eval_word(self, w: Word) -> Any:
        return self.eval(self.group.normalize(w))

    def shifted(self, gamma) -> "Config":
        if isinstance(gamma, Word):
            gamma = self.group.normalize(gamma)
        return Config(self.group, self.alphabet, self.rule,
                      translate=self.group.multiply(self.translate, gamma),
                      label=self.label)


def eval_config(sigma: Config, g) -> Any:
    return sigma.eval(g)


def shift_act(sigma: Config, gamma) -> Config:
    """The right action: shift_act(sigma, gamma)(x) = sigma(gamma x)."""
    return sigma.shifted(gamma)


def periodic_config(group, alph: Alphabet, table, periods=None, label="periodic") -> Config:
    """Periodic configuration on a lattice model.

    For d = 1 pass a flat table (period = its length).  For d > 1 pass
    ``periods`` and a nested table indexed per axis.
    """
    if group.kind != "lattice":
        raise ValidationError("periodic_config needs a lattice model")
    d = group.key[1]
    if periods is None:
        if d != 1:
            raise ValidationError("periods are required when d > 1")
        periods = [len(table)]

    def rule(vec):
        cell = table
        for j in range(d):
            cell = cell[vec[j] % periods[j]]
        return cell

    return Config(group, alph, rule, label=label)


def finite_support_config(group, alph: Alphabet, support: dict, default, label="finite") -> Config:
    """Default symbol everywhere except finitely many payloads."""
    frozen = dict(support)
    return Config(group, alph, lambda p: frozen.get(p, default), label=label)


def custom_config(group, alph: Alphabet, fn: Callable[[Any], Any], label="custom") -> Config:
    return Config(group, alph, fn, label=label)


def _payload_token(payload) -> str:
    return str(payload) if isinstance(payload, Word) else repr(payload)


def random_config(group, alph: Alphabet, seed: int) -> Config:
    """Deterministic pseudo-random configuration (stable across runs)."""
    m = len(alph)
    symbols = alph.symbols

    def rule(payload):
        digest = hashlib.blake2b(f"{seed}|{_payload_token(payload)}".encode(),
                                 digest_size=8).digest()
        return symbols[int.from_bytes(digest, "big") % m]

    return Config(group, alph, rule, label=f"random({seed})")


def flipped_config(sigma: Config, at: Word, seed: int = 0) -> Config:
    """Copy of sigma whose value at one element is changed to a different symbol."""
    target = sigma.group.normalize(at)
    old = sigma.eval(target)
    others = [s for s in sigma.alphabet if s != old]
    new = others[random.Random(seed).randrange(len(others))]
    base = sigma

    def rule(payload):
        if payload == target.payload:
            return new
        return base.rule(payload)

    # the flip is defined relative to the untranslated rule, so require a
    # fresh (untranslated) configuration to keep the semantics obvious
    if sigma.translate.payload != sigma.group.identity().payload:
        raise ValidationError("flipped_config expects an unshifted configuration")
    return Config(sigma.group, sigma.alphabet, rule, label=f"{sigma.label}+flip({at})")


@dataclass(frozen=True)
class AgreementDepth:
    """Largest verified radius of agreement between two configurations.

    ``exact`` means a disagreement was found at radius value + 1; value -1
    encodes a disagreement at the identity itself.  When no disagreement
    shows up within the cap the result is the lower bound ">= cap".
    """

    value: int
    exact: bool

    def __str__(self) -> str:
        if not self.exact:
            return f">={self.value}"
        if self.value < 0:
            return "differ at radius 0"
        return str(self.value)


def agree_depth(s1: Config, s2: Config, cap: int) -> AgreementDepth:
    """Compare on all elements reachable from words of length <= j, j <= cap."""
    if s1.group != s2.group:
        raise GroupMismatchError("configurations live on different groups")
    if s1.alphabet != s2.alphabet:
        raise ValidationError("configurations use different alphabets")
    seen = set()
    spheres = enumerate_spheres(s1.group.generator_count, cap)
    for j, level in enumerate(spheres):
        for w in level:
            g = s1.group.normalize(w)
            if g.payload in seen:
                continue
            seen.add(g.payload)
            if s1.eval(g) != s2.eval(g):
                return AgreementDepth(j - 1, exact=True)
    return AgreementDepth(cap, exact=False)


@dataclass(frozen=True)
class MetricInterval:
    """Partial sum plus a rigorous tail bound: the true value lies inside."""

    lower: Fraction
    upper: Fraction

    def contains(self, x) -> bool:
        return self.lower <= x <= self.upper

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower


def config_metric_interval(s1: Config, s2: Config, tail_cutoff: int) -> MetricInterval:
    """Two-sided sequence metric sum_i 2^(-|i|) |s1(i) - s2(i)| over Z.

    Symbols are compared through their alphabet indices.  The partial sum
    runs over |i| <= tail_cutoff; the tail is bounded by the largest
    possible symbol gap times the remaining geometric mass.
    """
    from .groups import lattice_unit_element

    if s1.group != s2.group:
        raise GroupMismatchError("configurations live on different groups")
    if s1.alphabet != s2.alphabet:
        raise ValidationError("configurations use different alphabets")
    alph = s1.alphabet
    total = Fraction(0)
    for i in range(-tail_cutoff, tail_cutoff + 1):
        g = lattice_unit_element(s1.group, i)
        gap = abs(alph.index(s1.eval(g)) - alph.index(s2.eval(g)))
        total += Fraction(gap, 2 ** abs(i))
    tail = Fraction(2 * (len(alph) - 1), 2 ** tail_cutoff)
    return MetricInterval(total, total + tail)


# the integer-case metric under its conventional name
config_metric_z = config_metric_interval


def expansivity_witness(s1: Config, s2: Config, cap: int) -> int | None:
    """A shift n with metric lower bound >= 1 after translating both by n.

    Works for configurations over Z: scans |n| <= cap for a disagreement and
    certifies it through the metric's position-0 term.
    """
    from .groups import lattice_unit_element

    for n in sorted(range(-cap, cap + 1), key=abs):
        g = lattice_unit_element(s1.group, n)
        if s1.eval(g) != s2.eval(g):
            shifted = config_metric_interval(s1.shifted(g), s2.shifted(g), 0)
            if shifted.lower >= 1:
                return n
    return None


def config_to_json(sigma: Config) -> dict:
    raise ValidationError("configurations are rules, not data; serialize their spec instead")


def config_from_json(group, alph: Alphabet, obj: dict) -> Config:
    """Build a configuration from its JSON spec.

    ``{"rule": "periodic", "period": 2, "table": [0, 1]}``
    ``{"rule": "periodic", "periods": [2, 2], "table": [[0, 1], [1, 0]]}``
    ``{"rule": "finite", "support": {"0": 1}, "default": 0}``
    """
    kind = obj.get("rule")
    if kind == "periodic":
        periods = obj.get("periods")
        if periods is None and "period" in obj:
            periods = [int(obj["period"])]

        def match_cell(cell):
            if isinstance(cell, list):
                return [match_cell(c) for c in cell]
            return alph.match(cell)

        return periodic_config(group, alph, match_cell(obj["table"]), periods)
    if kind == "finite":
        support = {}
        for key, value in obj.get("support", {}).items():
            payload = _parse_payload_key(group, key)
            support[payload] = alph.match(value)
        return finite_support_config(group, alph, support, alph.match(obj["default"]))
    raise ValidationError(f"unknown config rule {kind!r}")


def _parse_payload_key(group, key: str):
    from .freegroup import parse_word

    if group.kind == "lattice":
        d = group.key[1]
        parts = [int(p) for p in str(key).split(",")]
        if len(parts) != d:
            raise ValidationError(f"support key {key!r} has wrong dimension")
        return tuple(parts)
    if group.kind == "free":
        return parse_word(str(key), group.generator_count)
    raise ValidationError("JSON configs support lattice and free models only")
