"""
Threshold sweeps
================

An experiment fixes a schedule, a list of sizes and properties, and runs
independent trials.  Results are proportions with Wilson intervals, written
as CSV and as a small SVG chart.
"""

import sys
from pathlib import Path

from coxrand.experiments import csv_text, emit_csv, emit_svg, preset, run

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("sweep_output")
out.mkdir(exist_ok=True)

# p_3 = 8/n: the expected number of 3,3,3 triangles grows like 85, so FC-type fails.
config = preset("fc-negative-triangle", trials=60, n_values=[50, 100, 200])
result = run(config)
print(csv_text(result))

# The same sweep from the command line:
#   coxrand sweep --preset fc-negative-triangle --trials 60 --n 50,100,200
emit_csv(result, out / "fc_negative.csv")
emit_svg(result, out / "fc_negative.svg")

# A nerve-dimension sweep near the 4-clique threshold of the commuting graph.
config = preset("nerve-dim", trials=40, n_values=[40, 80, 160])
for cell in run(config).cells:
    lo, hi = cell.interval
    print(f"n={cell.n:4d} {cell.property:16s} {cell.estimate:.2f}  [{lo:.2f}, {hi:.2f}]")
print("files written to", out)
