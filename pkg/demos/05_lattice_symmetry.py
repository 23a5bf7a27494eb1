"""Relations of the acting group show up as symmetries of the image tree.

A configuration over the two-dimensional integer lattice is pulled back to
the free group on two generators before embedding.  The pullback is
constant on relator cosets: multiplying by the commutator g0 g1 g0' g1'
never changes a value, and consequently the embedded tree looks exactly the
same from the basepoint and from the commutator's image vertex.
"""
from treeshift import (
    alphabet,
    box_distance,
    embed_config,
    induced_config,
    integer_lattice,
    parse_word,
    random_config,
    random_encoding,
)
from treeshift.freegroup import enumerate_ball
from treeshift.trees import act, ball

bits = alphabet([0, 1])
z2 = integer_lattice(d=2)
sigma = random_config(z2, bits, seed=11)
pulled = induced_config(z2, sigma)

commutator = parse_word("g0 g1 g0' g1'", 2)
violations = sum(
    1 for w in enumerate_ball(2, 3)
    if pulled.eval_word(commutator * w) != pulled.eval_word(w))
print(f"commutator collapse violations on the radius-3 ball: {violations}")

encoding = random_encoding(2, bits, 4, seed=11)
depth = 7
result = embed_config(pulled, encoding, depth)
vertex = result.vertex_of[commutator]
print(f"the commutator embeds at vertex: {vertex}")

rebased = act(result.tree, vertex)
d = box_distance(ball(result.tree, rebased.radius), rebased)
print(f"box distance between the tree and its rebasing there: {d}")
print("(at-least to the full comparable radius: the views coincide)")
