"""Command line front end.

Subcommands: embed, decode, metric, act, orbit, equivariance, separate,
itinerary, embed-pseudo, builtin, verify.  Output is deterministic for a
fixed scenario and seed.  Exit codes: 0 success, 1 validation or usage
failure, 2 insufficient depth.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .embed import (
    EdgeEncoding,
    check_equivariance,
    decode_tree,
    embed_config,
    encoding_from_json,
    separate_witness,
)
from .errors import InsufficientDepthError, TreeshiftError
from .freegroup import Word, letter_str, parse_letter, parse_word, signed_letters
from .groups import group_from_json, induced_config
from .pseudogroup import (
    S_EMPTY,
    builtin_n0_shift,
    cgs_from_json,
    cgs_to_json,
    embed_pseudo,
    itinerary,
    stream_from_json,
)
from .shift import Alphabet, Config, config_from_json
from .trees import (
    act,
    box_distance,
    dumps_json,
    orbit_graph,
    orbit_to_dot,
    orbit_to_json,
    tree_from_json,
    tree_to_dot,
    tree_to_json,
)
from .verify import SUITES, run_suites


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage failures exit with status 1, keeping
    status 2 reserved for insufficient-depth errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


@dataclass
class Scenario:
    group: object
    alphabet: Alphabet
    config: Config
    encoding: EdgeEncoding

    def free_config(self) -> Config:
        if self.group.kind == "free":
            return self.config
        return induced_config(self.group, self.config)


def load_json(path: str):
    try:
        with open(path) as handle:
            return json.load(handle)
    except json.JSONDecodeError as exc:
        raise TreeshiftError(
            f"malformed JSON in {path}: {exc.msg} at line {exc.lineno} column {exc.colno}"
        ) from exc
    except OSError as exc:
        raise TreeshiftError(f"cannot read {path}: {exc}") from exc


def load_scenario(path: str) -> Scenario:
    obj = load_json(path)
    group = group_from_json(obj["group"])
    alph = Alphabet(tuple(obj["alphabet"]))
    config = config_from_json(group, alph, obj["config"])
    encoding = encoding_from_json(obj["alpha"], alphabet=alph)
    if encoding.source_rank != group.generator_count:
        raise TreeshiftError(
            f"alpha covers {encoding.source_rank} generators but the group has "
            f"{group.generator_count}")
    return Scenario(group, alph, config, encoding)


def _emit_tree(tree, fmt: str) -> str:
    return tree_to_dot(tree) if fmt == "dot" else dumps_json(tree_to_json(tree))


def _source_word_str(w: Word) -> str:
    return "e" if w.is_identity else " ".join(letter_str(x, prefix="t") for x in w.letters)


def _named_word_str(w: Word, names: list[str]) -> str:
    if w.is_identity:
        return "e"
    return " ".join(names[abs(x) - 1] + ("" if x > 0 else "'") for x in w.letters)


def cmd_embed(args) -> int:
    scenario = load_scenario(args.scenario)
    result = embed_config(scenario.free_config(), scenario.encoding, args.depth)
    sys.stdout.write(_emit_tree(result.tree, args.format))
    return 0


def cmd_decode(args) -> int:
    tree = tree_from_json(load_json(args.tree))
    if args.alpha:
        encoding = encoding_from_json(load_json(args.alpha))
    else:
        encoding = load_scenario(args.scenario).encoding
    decoded = decode_tree(tree, encoding, args.depth)
    values = {
        _source_word_str(w): decoded.values[w]
        for w in sorted(decoded.values, key=Word.sort_key)
    }
    sys.stdout.write(dumps_json({"depth": decoded.depth, "values": values}))
    return 0


def cmd_metric(args) -> int:
    if len(args.tree) != 2:
        raise TreeshiftError("metric needs exactly two --tree arguments")
    t1 = tree_from_json(load_json(args.tree[0]))
    t2 = tree_from_json(load_json(args.tree[1]))
    d = box_distance(t1, t2)
    if args.format == "json":
        kind = "exact" if d.exact else "at-least"
        sys.stdout.write(dumps_json({"kind": kind, "r": d.r, "value": d.value}))
    else:
        sys.stdout.write(str(d) + "\n")
    return 0


def cmd_act(args) -> int:
    tree = tree_from_json(load_json(args.tree))
    moved = act(tree, parse_word(args.word, tree.rank))
    sys.stdout.write(_emit_tree(moved, args.format))
    return 0


def cmd_orbit(args) -> int:
    if args.tree:
        tree = tree_from_json(load_json(args.tree))
    else:
        if not args.scenario:
            raise TreeshiftError("orbit needs --tree or --scenario")
        scenario = load_scenario(args.scenario)
        tree = embed_config(scenario.free_config(), scenario.encoding, args.depth).tree
    og = orbit_graph(tree, step_bound=args.step_bound, working_radius=args.working_radius)
    if args.format == "dot":
        sys.stdout.write(orbit_to_dot(og))
    else:
        sys.stdout.write(dumps_json(orbit_to_json(og)))
    return 0


def _load_cgs(args):
    if args.builtin_n0:
        return builtin_n0_shift(Alphabet(tuple(args.builtin_n0.split(","))))
    if args.cgs:
        return cgs_from_json(load_json(args.cgs))
    raise TreeshiftError("need --cgs or --builtin-n0")


def cmd_itinerary(args) -> int:
    cgs = _load_cgs(args)
    point = stream_from_json(load_json(args.point), cgs.base_alphabet)
    itin = itinerary(cgs, point, args.depth)
    names = [pm.name for pm in cgs.positive]
    values = {
        _named_word_str(w, names): (None if itin.values[w] is S_EMPTY else itin.values[w])
        for w in sorted(itin.values, key=Word.sort_key)
    }
    sys.stdout.write(dumps_json({"depth": itin.depth, "values": values}))
    return 0


def cmd_embed_pseudo(args) -> int:
    cgs = _load_cgs(args)
    point = stream_from_json(load_json(args.point), cgs.base_alphabet)
    encoding = encoding_from_json(load_json(args.alpha))
    itin = itinerary(cgs, point, args.depth)
    result = embed_pseudo(itin, encoding, args.depth)
    sys.stdout.write(_emit_tree(result.tree, args.format))
    return 0


def _equivariance_report_json(report) -> dict:
    blob = {
        "generator": letter_str(report.generator, prefix="t"),
        "depth": report.depth,
        "clause": report.clause,
        "witness": str(report.witness),
        "ball_equal": report.ball_equal,
    }
    if report.alternate_witness is not None:
        blob["alternate_witness"] = str(report.alternate_witness)
        blob["alternate_defined"] = report.alternate_defined
        blob["alternate_equal"] = report.alternate_equal
    return blob


def cmd_equivariance(args) -> int:
    scenario = load_scenario(args.scenario)
    sigma = scenario.free_config()
    if args.generator:
        letters = [parse_letter(args.generator, scenario.encoding.source_rank, prefix="t")]
    else:
        letters = signed_letters(scenario.encoding.source_rank)
    reports = [check_equivariance(sigma, scenario.encoding, h, args.depth) for h in letters]
    sys.stdout.write(dumps_json({
        "depth": args.depth,
        "all_equal": all(r.ball_equal for r in reports),
        "reports": [_equivariance_report_json(r) for r in reports],
    }))
    return 0 if all(r.ball_equal for r in reports) else 1


def cmd_separate(args) -> int:
    if len(args.tree) != 2:
        raise TreeshiftError("separate needs exactly two --tree arguments")
    t1 = tree_from_json(load_json(args.tree[0]))
    t2 = tree_from_json(load_json(args.tree[1]))
    witness = separate_witness(t1, t2)
    if witness is None:
        sys.stdout.write(dumps_json({"witness": None,
                                     "note": "trees ball-equal to their common depth"}))
        return 0
    from .trees import act as act_fn

    rebased = box_distance(act_fn(t1, witness), act_fn(t2, witness))
    sys.stdout.write(dumps_json({
        "witness": str(witness),
        "length": len(witness),
        "rebased": {"kind": "exact" if rebased.exact else "at-least",
                    "r": rebased.r, "value": rebased.value},
    }))
    return 0


def cmd_builtin(args) -> int:
    if args.which != "n0":
        raise TreeshiftError(f"unknown builtin {args.which!r}; available: n0")
    cgs = builtin_n0_shift(Alphabet(tuple(args.alphabet.split(","))))
    sys.stdout.write(dumps_json(cgs_to_json(cgs)))
    return 0


def cmd_verify(args) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    try:
        results = run_suites(names, seed=args.seed)
    except KeyError as exc:
        raise TreeshiftError(str(exc)) from exc
    for result in results:
        sys.stdout.write(result.line() + "\n")
    return 0 if all(r.ok for r in results) else 1


def build_parser() -> _Parser:
    parser = _Parser(prog="treeshift",
                     description="Finite-depth tree models of shift dynamics")
    sub = parser.add_subparsers(dest="command", required=True)

    embed = sub.add_parser("embed", help="embed a scenario's configuration as a tree")
    embed.add_argument("--scenario", required=True)
    embed.add_argument("--depth", type=int, required=True)
    embed.add_argument("--format", choices=("json", "dot"), default="json")
    embed.set_defaults(fn=cmd_embed)

    decode = sub.add_parser("decode", help="recover symbols from an image tree")
    decode.add_argument("--tree", required=True)
    decode.add_argument("--alpha")
    decode.add_argument("--scenario")
    decode.add_argument("--depth", type=int, required=True)
    decode.set_defaults(fn=cmd_decode)

    metric = sub.add_parser("metric", help="box distance between two trees")
    metric.add_argument("--tree", action="append", default=[])
    metric.add_argument("--format", choices=("text", "json"), default="text")
    metric.set_defaults(fn=cmd_metric)

    act_cmd = sub.add_parser("act", help="rebase a tree at one of its vertices")
    act_cmd.add_argument("--tree", required=True)
    act_cmd.add_argument("--word", required=True)
    act_cmd.add_argument("--format", choices=("json", "dot"), default="json")
    act_cmd.set_defaults(fn=cmd_act)

    orbit = sub.add_parser("orbit", help="bounded orbit graph of a tree")
    orbit.add_argument("--tree")
    orbit.add_argument("--scenario")
    orbit.add_argument("--depth", type=int, default=6)
    orbit.add_argument("--working-radius", type=int, required=True)
    orbit.add_argument("--step-bound", type=int, required=True)
    orbit.add_argument("--format", choices=("json", "dot"), default="json")
    orbit.set_defaults(fn=cmd_orbit)

    itin = sub.add_parser("itinerary", help="symbolic itinerary of a stream")
    itin.add_argument("--cgs")
    itin.add_argument("--builtin-n0", metavar="SYMBOLS")
    itin.add_argument("--point", required=True)
    itin.add_argument("--depth", type=int, required=True)
    itin.set_defaults(fn=cmd_itinerary)

    pseudo = sub.add_parser("embed-pseudo", help="embed an itinerary as a tree")
    pseudo.add_argument("--cgs")
    pseudo.add_argument("--builtin-n0", metavar="SYMBOLS")
    pseudo.add_argument("--point", required=True)
    pseudo.add_argument("--alpha", required=True)
    pseudo.add_argument("--depth", type=int, required=True)
    pseudo.add_argument("--format", choices=("json", "dot"), default="json")
    pseudo.set_defaults(fn=cmd_embed_pseudo)

    equi = sub.add_parser("equivariance", help="check shift-versus-rebase agreement")
    equi.add_argument("--scenario", required=True)
    equi.add_argument("--depth", type=int, required=True)
    equi.add_argument("--generator", help="one source generator like t0 or t0' (default: all)")
    equi.set_defaults(fn=cmd_equivariance)

    separate = sub.add_parser("separate", help="find a rebasing word reaching distance 1")
    separate.add_argument("--tree", action="append", default=[])
    separate.set_defaults(fn=cmd_separate)

    builtin = sub.add_parser("builtin", help="emit a built-in generating system")
    builtin.add_argument("which", choices=("n0",))
    builtin.add_argument("--alphabet", default="0,1")
    builtin.set_defaults(fn=cmd_builtin)

    verify = sub.add_parser("verify", help="run the property suites")
    verify.add_argument("--suite", default="all")
    verify.add_argument("--seed", type=int, default=0)
    verify.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except InsufficientDepthError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (TreeshiftError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
