"""Tracing spreads a population along a boundary around good seeds.

Writes before/after scatter plots of the circle boundary to ./demo_output.
"""
import warnings
from pathlib import Path

from bvexplore import StrategyConfig, run
from bvexplore.plotting import plot_record

out = Path("demo_output")
warnings.simplefilter("ignore")

[record] = run(StrategyConfig(sut="circle", strategy="SET", budget=60_000, seed=4), out)
print(f"{len(record.archive_rows)} archive cells, {len(record.trace_populations)} traced seeds")
print("evaluations per phase:", record.phase_evaluations)

first = record.trace_populations[0]
print("first seed:", first["seed"]["a"], first["seed"]["b"], "bounds", first["bounds"])
print("population pd range:",
      round(min(m["pd"] for m in first["members"]), 3), "to",
      round(max(m["pd"] for m in first["members"]), 3))

for path in plot_record(record, out):
    print("wrote", path)
