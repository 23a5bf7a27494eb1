"""The box metric at finite depth, and blowing small differences up.

Two configurations that agree on a large ball embed to trees that agree on
the same ball, so their box distance e^(-r) is tiny.  The partial action
is expansive: rebasing both trees at a common vertex next to the first
discrepancy makes the distance exactly 1.
"""
from treeshift import (
    alphabet,
    box_distance,
    embed_config,
    free_group,
    parse_word,
    random_config,
    random_encoding,
    separate_witness,
)
from treeshift.shift import flipped_config
from treeshift.trees import act

bits = alphabet([0, 1])
f2 = free_group(2)
sigma = random_config(f2, bits, seed=3)
encoding = random_encoding(2, bits, 4, seed=3)

# flip sigma at one word of length 3: agreement radius becomes 2
flip_at = parse_word("g0 g1 g0'", 2)
other = flipped_config(sigma, flip_at)

t1 = embed_config(sigma, encoding, 5).tree
t2 = embed_config(other, encoding, 5).tree

d = box_distance(t1, t2)
print(f"box distance after a flip at {flip_at}: {d} (value {d.value:.4f})")

witness = separate_witness(t1, t2)
print(f"separating word: {witness} (length {len(witness)})")

rebased = box_distance(act(t1, witness), act(t2, witness))
print(f"distance after rebasing both trees there: {rebased} (value {rebased.value:.1f})")
