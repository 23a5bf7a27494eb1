"""Seeded verification suites behind the ``verify`` command.

Each check returns a :class:`CheckResult` and is deterministic in its seed,
so a run with the same seed produces byte-identical reports.  The sample
sizes are fixed: they are the package's acceptance contract, not tunables.
"""
from __future__ import annotations

from dataclasses import dataclass

from .embed import (
    check_equivariance,
    decode_tree,
    edge_encoding,
    embed_config,
    random_encoding,
    separate_witness,
)
from .freegroup import Word, enumerate_ball, identity
from .groups import free_group, induced_config, integer_lattice
from .pseudogroup import (
    S_EMPTY,
    SymbolStream,
    builtin_n0_shift,
    embed_pseudo,
    itinerary,
)
from .shift import agree_depth, alphabet, flipped_config, periodic_config, random_config
from .trees import (
    BoxDistance,
    act,
    ball,
    box_distance,
    box_distance_brute,
    orbit_graph,
    random_tree,
    regrown_tree,
)

BITS = alphabet([0, 1])


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    details: str

    def line(self) -> str:
        flag = "PASS" if self.ok else "FAIL"
        return f"{flag}  {self.name:<18} {self.details}"


def _case_seed(seed: int, *parts: int) -> int:
    value = seed & 0xFFFFFFFF
    for p in parts:
        value = (value * 1_000_003 + p + 1) & 0xFFFFFFFF
    return value


def _embedding_sample(seed: int):
    """The shared sample: 50 cases per (M, m) in {1,2} x {2,3}, depth <= 5."""
    cases = []
    for M in (1, 2):
        for m in (2, 3):
            alph = alphabet(list(range(m)))
            for i in range(50):
                cs = _case_seed(seed, M, m, i)
                n = M * m + cs % 3
                enc = random_encoding(M, alph, n, seed=cs)
                sigma = random_config(free_group(M), alph, seed=cs + 101)
                depth = 1 + cs % 5
                cases.append((M, m, sigma, enc, depth))
    return cases


def check_ladder_orbit(seed: int = 0) -> CheckResult:
    """Parity over the integers: two nodes joined by a g0 and a g1 edge."""
    z = integer_lattice(d=1)
    parity = periodic_config(z, BITS, [0, 1])
    enc = edge_encoding(1, BITS, 2, {(1, 0): 1, (1, 1): 2})
    tree = embed_config(induced_config(z, parity), enc, 6).tree
    og = orbit_graph(tree, step_bound=4, working_radius=2)
    ok = len(og.nodes) == 2 and len(og.edges) == 2 and sorted(og.edge_labels) == ["g0", "g1"]
    return CheckResult(
        "ladder-orbit", ok,
        f"{len(og.nodes)} nodes, edges {sorted(og.edge_labels)}")


def check_round_trip(seed: int = 0) -> CheckResult:
    """decode(embed(sigma, j)) must reproduce sigma on the radius j-1 ball."""
    failures = 0
    total = 0
    for M, m, sigma, enc, depth in _embedding_sample(seed):
        total += 1
        decoded = decode_tree(embed_config(sigma, enc, depth), enc, depth)
        for w in enumerate_ball(M, depth - 1):
            if decoded.eval_word(w) != sigma.eval_word(w):
                failures += 1
                break
    return CheckResult("round-trip", failures == 0, f"{total} oracles, {failures} failures")


def check_equivariance_suite(seed: int = 0) -> CheckResult:
    """Both shift directions must match the rebased embedding at radius j-1."""
    failures = 0
    checks = 0
    alternate_disagrees = 0
    for M, m, sigma, enc, depth in _embedding_sample(seed):
        for h in [x for g in range(1, M + 1) for x in (g, -g)]:
            report = check_equivariance(sigma, enc, h, depth)
            checks += 1
            if not report.ball_equal:
                failures += 1
            if report.clause == "negative" and report.alternate_equal is False:
                alternate_disagrees += 1
    return CheckResult(
        "equivariance", failures == 0,
        f"{checks} generator checks, {failures} failures; "
        f"identity-symbol variant unusable in {alternate_disagrees} of them")


def check_tree_shape(seed: int = 0) -> CheckResult:
    """Embedded words keep their length; interior vertices have degree 2M."""
    failures = 0
    trees = 0
    for M, m, sigma, enc, depth in _embedding_sample(seed):
        result = embed_config(sigma, enc, depth)
        trees += 1
        if any(len(w) != len(v) for w, v in result.vertex_of.items()):
            failures += 1
            continue
        if any(result.tree.degree(v) != 2 * M
               for v in result.tree.vertices if len(v) <= depth - 1):
            failures += 1
    return CheckResult("tree-shape", failures == 0, f"{trees} trees, {failures} failures")


def check_metric_axioms(seed: int = 0) -> CheckResult:
    """Symmetry plus the ultrametric inequality, and fast path versus oracle."""
    failures = 0
    for i in range(500):
        cs = _case_seed(seed, 5, i)
        radius = cs % 7
        triple = [random_tree(2, radius, cs + k) for k in (0, 7_000, 14_000)]
        d12 = box_distance(triple[0], triple[1])
        d21 = box_distance(triple[1], triple[0])
        d23 = box_distance(triple[1], triple[2])
        d13 = box_distance(triple[0], triple[2])
        if d12 != d21:
            failures += 1
        if d12.exact and d23.exact and d13.exact:
            if d13.value > max(d12.value, d23.value) + 1e-12:
                failures += 1
    discrepancies = 0
    for i in range(100):
        cs = _case_seed(seed, 55, i)
        radius = cs % 4
        t1 = random_tree(2, radius, cs)
        t2 = regrown_tree(t1, keep_below=cs % (radius + 1), seed=cs + 31) \
            if i % 2 else random_tree(2, radius, cs + 61)
        if box_distance(t1, t2) != box_distance_brute(t1, t2):
            discrepancies += 1
    ok = failures == 0 and discrepancies == 0
    return CheckResult(
        "metric-axioms", ok,
        f"500 triples ({failures} axiom failures), "
        f"100 oracle pairs ({discrepancies} discrepancies)")


def check_separation(seed: int = 0) -> CheckResult:
    """A witness of length r must rebase a known discrepancy to distance 1."""
    produced = 0
    failures = 0
    attempts = 0
    trits = alphabet([0, 1, 2])
    while produced < 100 and attempts < 1000:
        cs = _case_seed(seed, 6, attempts)
        attempts += 1
        M = 1 + cs % 2
        alph = BITS if cs % 2 else trits
        enc = random_encoding(M, alph, M * len(alph), seed=cs)
        sigma = random_config(free_group(M), alph, seed=cs + 11)
        if attempts % 2:
            other = random_config(free_group(M), alph, seed=cs + 17)
        else:
            lead = 1 + cs % 3
            target = [w for w in enumerate_ball(M, lead) if len(w) == lead][cs % (2 * M)]
            other = flipped_config(sigma, target, seed=cs)
        depth = 5
        t1 = embed_config(sigma, enc, depth).tree
        t2 = embed_config(other, enc, depth).tree
        d = box_distance(t1, t2)
        if not d.exact:
            continue
        produced += 1
        g = separate_witness(t1, t2)
        if g is None or len(g) != d.r:
            failures += 1
            continue
        if box_distance(act(t1, g), act(t2, g)) != BoxDistance(0, exact=True):
            failures += 1
    ok = failures == 0 and produced == 100
    return CheckResult("separation", ok, f"{produced} pairs, {failures} failures")


def check_pseudogroup_examples(seed: int = 0) -> CheckResult:
    """The one-sided shift example: itinerary values, tree, and propagation."""
    cgs = builtin_n0_shift(BITS)
    omega = SymbolStream.eventually_periodic((), (0, 1))
    itin = itinerary(cgs, omega, 4)
    e = identity(2)
    expected = {
        e: 0,
        Word(2, (1,)): 1,
        Word(2, (2,)): S_EMPTY,
        Word(2, (-1,)): 0,
    }
    values_ok = all(itin.value(w) == s if s is not S_EMPTY else itin.value(w) is S_EMPTY
                    for w, s in expected.items())
    enc = edge_encoding(2, BITS, 4, {(1, 0): 1, (1, 1): 2, (2, 0): 3, (2, 1): 4})
    tree = embed_pseudo(itin, enc, 1).tree
    tree_ok = {str(v) for v in tree.vertices} == {"e", "g0", "g0'", "g3'"}
    degree_ok = tree.degree(identity(4)) == 3 <= 2 * cgs.generator_count
    propagation_failures = 0
    for i in range(20):
        cs = _case_seed(seed, 7, i)
        pre = tuple((cs >> k) & 1 for k in range(cs % 3))
        cycle = tuple(((cs + 13) >> k) & 1 for k in range(1 + cs % 3))
        point = SymbolStream.eventually_periodic(pre, cycle)
        sample = itinerary(cgs, point, 4)
        if sample.validate_propagation():
            propagation_failures += 1
        sample_tree = embed_pseudo(sample, enc, 4).tree
        if any(sample_tree.degree(v) > 2 * cgs.generator_count
               for v in sample_tree.vertices if len(v) <= 3):
            propagation_failures += 1
    ok = values_ok and tree_ok and degree_ok and propagation_failures == 0
    return CheckResult(
        "pseudogroup", ok,
        f"example values {'ok' if values_ok else 'WRONG'}, tree {'ok' if tree_ok else 'WRONG'}, "
        f"20 sampled points ({propagation_failures} failures)")


def check_lattice_collapse(seed: int = 0) -> CheckResult:
    """The commutator of the two lattice generators acts trivially upstream."""
    z2 = integer_lattice(d=2)
    commutator = Word(2, (1, 2, -1, -2))
    failures = 0
    for i in range(50):
        sigma = induced_config(z2, random_config(z2, BITS, seed=_case_seed(seed, 8, i)))
        for w in enumerate_ball(2, 3):
            if sigma.eval_word(commutator * w) != sigma.eval_word(w):
                failures += 1
                break
    return CheckResult("lattice-collapse", failures == 0, f"50 oracles, {failures} failures")


def check_continuity(seed: int = 0) -> CheckResult:
    """Agreement to radius k forces ball-equality at k; a flip at length
    k + 1 must surface within radius k + 2."""
    failures = 0
    for i in range(100):
        cs = _case_seed(seed, 9, i)
        k = cs % 5
        M = 1 + cs % 2
        m = 2 + cs % 2
        alph = alphabet(list(range(m)))
        enc = random_encoding(M, alph, M * m, seed=cs)
        sigma = random_config(free_group(M), alph, seed=cs + 23)
        targets = [w for w in enumerate_ball(M, k + 1) if len(w) == k + 1]
        other = flipped_config(sigma, targets[cs % len(targets)], seed=cs)
        depth_result = agree_depth(sigma, other, cap=k + 1)
        if not (depth_result.exact and depth_result.value == k):
            failures += 1
            continue
        t1 = embed_config(sigma, enc, k + 2).tree
        t2 = embed_config(other, enc, k + 2).tree
        if ball(t1, k).vertices != ball(t2, k).vertices:
            failures += 1
            continue
        d = box_distance(t1, t2)
        if not (d.exact and d.r <= k + 1):
            failures += 1
    return CheckResult("continuity", failures == 0, f"100 pairs, {failures} failures")


SUITES = {
    "ladder-orbit": check_ladder_orbit,
    "round-trip": check_round_trip,
    "equivariance": check_equivariance_suite,
    "tree-shape": check_tree_shape,
    "metric-axioms": check_metric_axioms,
    "separation": check_separation,
    "pseudogroup": check_pseudogroup_examples,
    "lattice-collapse": check_lattice_collapse,
    "continuity": check_continuity,
}


def run_suites(names, seed: int = 0) -> list[CheckResult]:
    results = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
        results.append(SUITES[name](seed))
    return results
