"""
Sampling labelled random graphs
===============================

Every pair of vertices independently receives label m with probability
p_m(n), and stays unlabelled (m = infinity) otherwise.  The draw for a pair
depends only on (seed, n, u, v), so the same seed reproduces the same graph
no matter how the work is split.
"""

from coxrand.graph import INF, ProbabilitySchedule, sample

# A schedule maps labels to curves c * n^alpha * (ln n)^beta.
schedule = ProbabilitySchedule.power({2: (0.5, 0.0), 3: (2.0, -1.0)})
print("probabilities at n = 20:", schedule.probabilities(20))

g = sample(20, schedule, seed=1)
counts = {}
for _, _, m in g.pairs():
    counts[m] = counts.get(m, 0) + 1
print("label counts:", {("inf" if m == INF else m): c for m, c in sorted(counts.items())})

# Same seed, same graph.
assert sample(20, schedule, seed=1) == g

# The 3-labelled pairs form an ordinary Erdos-Renyi graph with p = p_3.
edges_3 = sum(1 for *_, m in g.pairs() if m == 3)
print(f"3-labelled pairs: {edges_3} (expected {190 * schedule.probabilities(20)[3]:.1f})")

# DOT output for graphviz; infinity pairs are hidden unless asked for.
print(sample(5, schedule, seed=2).to_dot())
