"""
Recognising finite and affine Coxeter types
===========================================

A subset of generators spans a finite subgroup exactly when each connected
component of its Coxeter diagram is one of the finite types.  Affine types
are the minimal infinite ones.
"""

from coxrand.graph import INF, LabelledGraph
from coxrand.recognition import CoxeterType, catalog_instance, catalog_types, classify, is_finite

# A path 0 - 1 - 2 - 3 with labels 3, 4, 3 is F4.
f4 = LabelledGraph.from_edges(4, [(0, 1, 3), (1, 2, 4), (2, 3, 3)], default=2)
print("path 3,4,3:", [t.name for t in classify(f4, range(4)).types])

# Closing the triangle with a third 3 gives the affine type ~A2.
tri = LabelledGraph.from_edges(3, [(0, 1, 3), (1, 2, 3), (0, 2, 3)])
print("3,3,3 triangle:", [t.name for t in classify(tri, range(3)).types], "finite:", is_finite(tri, range(3)))

# Commuting generators split into separate components.
mixed = LabelledGraph.from_edges(4, [(0, 1, 5), (2, 3, INF)], default=2)
print("H2 x ~A1:", [t.name for t in classify(mixed, range(4)).types])

# Every catalogued type is recognised as itself.
types = catalog_types()
for t in types:
    g = catalog_instance(t)
    assert classify(g, range(g.n)).types == [t]
print(f"{len(types)} catalogued types round-trip, e.g.", ", ".join(t.name for t in types[::12]))
print("I2(6) ->", CoxeterType.dihedral(6).name, "; I2(4) ->", CoxeterType.dihedral(4).name)
