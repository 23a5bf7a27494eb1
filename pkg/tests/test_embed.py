import pytest

from treeshift.errors import (
    ConsistencyError,
    InsufficientDepthError,
    NotInImageError,
    ValidationError,
)
from treeshift.freegroup import enumerate_ball, identity, parse_word
from treeshift.groups import free_group, induced_config, integer_lattice
from treeshift.shift import agree_depth, alphabet, flipped_config, periodic_config, random_config
from treeshift.embed import (
    EdgeEncoding,
    check_equivariance,
    decode_tree,
    edge_encoding,
    embed_config,
    encoding_from_json,
    encoding_to_json,
    random_encoding,
    separate_witness,
    validate_alpha,
)
from treeshift.trees import BoxDistance, box_distance, make_tree, validate_tree

BITS = alphabet([0, 1])
Z = integer_lattice(d=1)
F1 = free_group(1)

# the two-generator target encoding used by the worked ladder example:
# (t0, 0) -> g0 and (t0, 1) -> g1
E1 = edge_encoding(1, BITS, 2, {(1, 0): 1, (1, 1): 2})


def parity_on_f1():
    return induced_config(Z, periodic_config(Z, BITS, [0, 1]))


def constant_on_f1(symbol=0):
    from treeshift.shift import custom_config

    return custom_config(F1, BITS, lambda p: symbol, label=f"const{symbol}")


class TestValidateAlpha:
    def test_ladder_encoding_ok(self):
        assert validate_alpha(E1) == []

    def test_not_injective(self):
        enc = edge_encoding(1, BITS, 2, {(1, 0): 1, (1, 1): 1})
        assert any("not injective" in v for v in validate_alpha(enc))

    def test_pigeonhole(self):
        enc = random_encoding(2, BITS, 4, seed=0)
        squeezed = EdgeEncoding(2, BITS, 3, enc.entries)
        assert any("below" in v for v in validate_alpha(squeezed))

    def test_missing_entry(self):
        enc = edge_encoding(1, BITS, 2, {(1, 0): 1})
        assert any("missing entry" in v for v in validate_alpha(enc))

    def test_json_round_trip(self):
        blob = encoding_to_json(E1)
        assert blob == {"M": 1, "alphabet": [0, 1], "n": 2,
                        "table": {"t0,0": "g0", "t0,1": "g1"}}
        again = encoding_from_json(blob)
        assert again.entries == E1.entries

    def test_json_alphabet_cross_check(self):
        blob = encoding_to_json(E1)
        with pytest.raises(ValidationError):
            encoding_from_json(blob, alphabet=alphabet([0, 1, 2]))


class TestEmbed:
    def test_ladder_depth_two(self):
        result = embed_config(parity_on_f1(), E1, 2)
        assert {str(v) for v in result.tree.vertices} == {
            "e", "g0", "g0 g1", "g1'", "g1' g0'"}
        assert validate_tree(result.tree) == []

    def test_depth_zero(self):
        result = embed_config(parity_on_f1(), E1, 0)
        assert {str(v) for v in result.tree.vertices} == {"e"}

    def test_constant_depth_two(self):
        result = embed_config(constant_on_f1(0), E1, 2)
        assert {str(v) for v in result.tree.vertices} == {
            "e", "g0", "g0 g0", "g0'", "g0' g0'"}

    def test_length_preservation(self):
        result = embed_config(parity_on_f1(), E1, 4)
        for w, v in result.vertex_of.items():
            assert len(w) == len(v)

    def test_kappa_bijective_onto_vertices(self):
        result = embed_config(parity_on_f1(), E1, 3)
        assert set(result.vertex_of.values()) == set(result.tree.vertices)
        assert len(result.vertex_of) == len(result.tree.vertices)

    def test_interior_degree_regular(self):
        for seed in (0, 1):
            enc = random_encoding(2, BITS, 4, seed=seed)
            sigma = random_config(free_group(2), BITS, seed=seed)
            result = embed_config(sigma, enc, 3)
            for v in result.tree.vertices:
                if len(v) <= 2:
                    assert result.tree.degree(v) == 4

    def test_requires_free_group_config(self):
        with pytest.raises(ValidationError):
            embed_config(periodic_config(Z, BITS, [0, 1]), E1, 2)

    def test_rejects_bad_encoding(self):
        enc = edge_encoding(1, BITS, 2, {(1, 0): 1, (1, 1): 1})
        with pytest.raises(ValidationError):
            embed_config(parity_on_f1(), enc, 1)

    def test_injectivity_within_depth(self):
        sigma = parity_on_f1()
        other = flipped_config(random_config(F1, BITS, 3), parse_word("g0 g0", 1))
        base = random_config(F1, BITS, 3)
        t_base = embed_config(base, E1, 3).tree
        t_other = embed_config(other, E1, 3).tree
        assert t_base.vertices != t_other.vertices


class TestDecode:
    def test_ladder_symbols(self):
        result = embed_config(parity_on_f1(), E1, 2)
        decoded = decode_tree(result, E1, 2)
        assert decoded.eval_word(identity(1)) == 0       # edge e -> g0 decodes to 0
        assert decoded.eval_word(parse_word("g0'", 1)) == 1   # entered through g1'
        assert decoded.eval_word(parse_word("g0", 1)) == 1    # read off edge g0 -> g0 g1

    def test_domain_is_one_level_shallower(self):
        result = embed_config(parity_on_f1(), E1, 2)
        decoded = decode_tree(result, E1, 2)
        with pytest.raises(InsufficientDepthError):
            decoded.eval_word(parse_word("g0 g0", 1))

    def test_round_trip_ladder(self):
        sigma = parity_on_f1()
        for depth in (1, 2, 4):
            decoded = decode_tree(embed_config(sigma, E1, depth), E1, depth)
            for w in enumerate_ball(1, depth - 1):
                assert decoded.eval_word(w) == sigma.eval_word(w)

    def test_round_trip_seeded(self):
        trits = alphabet([0, 1, 2])
        for seed in range(10):
            enc = random_encoding(2, trits, 6, seed=seed)
            sigma = random_config(free_group(2), trits, seed=seed + 50)
            depth = 1 + seed % 4
            decoded = decode_tree(embed_config(sigma, enc, depth), enc, depth)
            for w in enumerate_ball(2, depth - 1):
                assert decoded.eval_word(w) == sigma.eval_word(w)

    def test_label_outside_range(self):
        stray = make_tree(2, 1, ["e", "g1"])
        enc = edge_encoding(1, BITS, 2, {(1, 0): 1, (1, 1): 1 + 1})
        # target g1 is taken by (t0, 1); a bare g1 child of e is fine, so
        # force a label outside the range instead
        bad = make_tree(3, 1, ["e", "g2"])
        wide = EdgeEncoding(1, BITS, 3, enc.entries)
        with pytest.raises(NotInImageError):
            decode_tree(bad, wide, 1)
        assert decode_tree(stray, enc, 1).eval_word(identity(1)) == 1

    def test_missing_continuation(self):
        # g0 is entered positively but has no outward edge inside depth 2
        stub = make_tree(2, 2, ["e", "g0", "g1'"])
        with pytest.raises(ConsistencyError):
            decode_tree(stub, E1, 2)

    def test_conflicting_votes(self):
        # two positive children of e with different decoded symbols
        twisted = make_tree(2, 1, ["e", "g0", "g1"])
        with pytest.raises(ConsistencyError):
            decode_tree(twisted, E1, 1)


class TestEquivariance:
    def test_positive_generator_ladder(self):
        report = check_equivariance(parity_on_f1(), E1, 1, 2)
        assert report.clause == "positive"
        assert str(report.witness) == "g0"
        assert report.ball_equal
        assert report.alternate_witness is None

    def test_negative_generator_ladder(self):
        report = check_equivariance(parity_on_f1(), E1, -1, 2)
        assert report.clause == "negative"
        assert str(report.witness) == "g1'"
        assert report.ball_equal
        # the identity-symbol variant would rebase at g0', which is not a
        # vertex of the ladder: recorded as undefined, not patched over
        assert str(report.alternate_witness) == "g0'"
        assert report.alternate_defined is False
        assert report.alternate_equal is False

    def test_depth_one_trivial(self):
        report = check_equivariance(random_config(F1, BITS, 9), E1, -1, 1)
        assert report.ball_equal

    def test_seeded_sample_both_signs(self):
        trits = alphabet([0, 1, 2])
        for seed in range(6):
            enc = random_encoding(2, trits, 6, seed=seed)
            sigma = random_config(free_group(2), trits, seed=seed)
            depth = 2 + seed % 3
            for h in (1, -1, 2, -2):
                assert check_equivariance(sigma, enc, h, depth).ball_equal


class TestSeparateWitness:
    def ladder_pair(self):
        base = embed_config(parity_on_f1(), E1, 4).tree
        flipped = flipped_config(parity_on_f1(), parse_word("g0 g0", 1))
        other = embed_config(flipped, E1, 4).tree
        return base, other

    def test_known_discrepancy(self):
        base, other = self.ladder_pair()
        assert box_distance(base, other) == BoxDistance(2, exact=True)
        g = separate_witness(base, other)
        assert str(g) == "g0 g1"
        from treeshift.trees import act

        assert box_distance(act(base, g), act(other, g)) == BoxDistance(0, exact=True)

    def test_identical_trees(self):
        base = embed_config(parity_on_f1(), E1, 3).tree
        assert separate_witness(base, base) is None

    def test_radius_one_difference(self):
        base = embed_config(parity_on_f1(), E1, 2).tree
        other = embed_config(constant_on_f1(0), E1, 2).tree
        assert separate_witness(base, other) == identity(2)


class TestContinuity:
    def test_flip_controls_divergence(self):
        trits = alphabet([0, 1, 2])
        for seed in range(8):
            k = seed % 3
            enc = random_encoding(2, trits, 6, seed=seed)
            sigma = random_config(free_group(2), trits, seed=seed + 7)
            targets = [w for w in enumerate_ball(2, k + 1) if len(w) == k + 1]
            flip_at = targets[seed % len(targets)]
            other = flipped_config(sigma, flip_at, seed=seed)
            depth_result = agree_depth(sigma, other, cap=k + 1)
            assert depth_result.exact and depth_result.value == k
            t1 = embed_config(sigma, enc, k + 2).tree
            t2 = embed_config(other, enc, k + 2).tree
            d = box_distance(t1, t2)
            assert d.exact and d.r >= k
            assert d.r <= k + 1
