"""
Nerves and their homology
=========================

The nerve of a Coxeter graph has a simplex for every vertex set generating a
finite subgroup.  Betti numbers are computed exactly over the rationals.
"""

from coxrand.graph import ProbabilitySchedule, sample
from coxrand.nerve import betti_numbers, build_nerve, dimension, zk_fundamental_cycle, is_boundary
from coxrand.properties import zk_graph

# Z_k is built so that its nerve is the boundary of a (k+1)-dimensional cross-polytope.
for k in (1, 2, 3):
    c = build_nerve(zk_graph(k))
    print(f"Z_{k}: {len(c.facets)} facets, betti {betti_numbers(c).betti}")

# The signed sum of its top faces is a cycle that is not a boundary.
c = build_nerve(zk_graph(2))
print("fundamental cycle is a boundary:", is_boundary(c, zk_fundamental_cycle(2)))

# A sampled graph: mostly commuting pairs with some braid relations.
g = sample(18, ProbabilitySchedule.constant({2: 0.55, 3: 0.15}), seed=4)
c = build_nerve(g)
prof = betti_numbers(c)
print(f"sample: dim {dimension(c)}, {c.face_count()} faces, betti {prof.betti}")
print("Euler characteristic check:",
      sum((-1) ** i * b for i, b in enumerate(prof.betti)) == c.euler_characteristic())

# For big complexes a skeleton is enough to get low-degree Betti numbers.
low = betti_numbers(build_nerve(g, max_dim=2), max_dim=1).betti
print("b_0, b_1 from the 2-skeleton:", low)
