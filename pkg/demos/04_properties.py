"""
Group properties with certificates
==================================

FC-type, word-hyperbolicity and embedded copies of Z_k are decided on the
labelled graph, and each negative answer comes with a witness that can be
checked independently.
"""

from coxrand.graph import INF, LabelledGraph, ProbabilitySchedule, sample
from coxrand.properties import (check_witness, find_zk, is_fc_type, is_hyperbolic,
                                nerve_dimension, retraction_check)

# The 3,3,3 triangle is a clique whose group is infinite: not FC-type.
tri = LabelledGraph.from_edges(3, [(0, 1, 3), (1, 2, 3), (0, 2, 3)])
print("triangle FC-type:", is_fc_type(tri))

# The empty square (commuting 4-cycle, infinite diagonals) contains Z^2.
square = LabelledGraph.from_edges(4, [(0, 2, INF), (1, 3, INF)], default=2)
verdict = is_hyperbolic(square)
print("empty square:", verdict, "witness valid:", check_witness(square, verdict.witness))

# In a dense random graph the same obstruction is everywhere.
g = sample(30, ProbabilitySchedule.constant({2: 0.6}), seed=3)
v = is_hyperbolic(g)
print("dense right-angled sample hyperbolic:", v.hyperbolic, "witness:", v.witness)
print("nerve dimension:", nerve_dimension(g))

# A sparse mix of 2s and 3s often contains Z_1 whose plus side has no common neighbour;
# the retraction onto it then certifies b_1 > 0.
schedule = ProbabilitySchedule.constant({2: 0.15, 3: 0.45})
for seed in range(50):
    h = sample(8, schedule, seed)
    e = find_zk(h, 1, require_no_common_neighbor=True)
    if e is not None:
        print(f"seed {seed}: Z_1 at plus {e.plus}, minus {e.minus}; retraction ok: {retraction_check(h, e)}")
        break
