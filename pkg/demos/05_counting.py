"""
Counting labelled patterns
==========================

Expected pattern counts are exact rationals; their growth in n is read off
from the schedule exponents.  The second moment splits by how two copies
overlap.
"""

from fractions import Fraction

from coxrand.counting import (asymptotic_signature, count_embeddings, cycle, expected_count_exact,
                              leading_coefficient, moment_report, second_moment_exact, trees,
                              triangle)
from coxrand.graph import ProbabilitySchedule, sample

pattern = triangle(3, 3, 3)
schedule = ProbabilitySchedule.constant({3: 0.1})
exact = expected_count_exact(pattern, schedule, 60)
print("E[3,3,3 triangles] at n=60, p=0.1:", exact, "=", float(exact))

observed = [count_embeddings(sample(60, schedule, seed), pattern) for seed in range(300)]
print("mean of 300 samples:", sum(observed) / len(observed))

# Leading coefficients are 1/|Aut|.
print("k-cycles:", {k: leading_coefficient(cycle(k)) for k in range(3, 7)})
print("5-vertex trees:", [leading_coefficient(t) for t in trees(5)],
      "sum", sum((leading_coefficient(t) for t in trees(5)), Fraction(0)))

# p_3 = n^-1 sits exactly at the triangle threshold.
sig = asymptotic_signature(pattern, ProbabilitySchedule.power({3: (1.0, -1.0)}))
print("signature at p_3 = 1/n:", sig)

sm = second_moment_exact(pattern, ProbabilitySchedule.constant({3: 0.2}), 30)
print("second moment strata:", {l: sum(c.values()) for l, c in sm.strata.items()},
      "variance", float(sm.variance))

# Above the threshold E[X^2] / E[X]^2 -> 1, so the count concentrates.
for n in (50, 200, 800):
    rep = moment_report(pattern, ProbabilitySchedule.power({3: (1.0, -0.8)}), n, second=True)
    print(f"n={n}: E[X] = {float(rep.exact_expectation):.2f}, ratio = {float(rep.ratio):.4f}")
