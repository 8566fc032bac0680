"""Quality and diversity of several strategies against a pooled reference.

Every candidate of every run goes into one pool.  The pool fixes the best
pd per cell (for relative pd) and the set of cells worth finding (for
relative coverage).
"""
import warnings
from pathlib import Path

from bvexplore import StrategyConfig, run
from bvexplore.runner import build_report, write_report

warnings.simplefilter("ignore")
records = []
for strategy, sampler in (("S", "uniform"), ("S", "cts-bu"), ("SE", "cts-bu")):
    config = StrategyConfig(sut="bytecount", strategy=strategy, sampler=sampler, budget=30_000, repetitions=3)
    records += run(config)

[report] = build_report(records)
print(report.text_table())
print("\ncells found by the row strategy but not the column strategy:")
print(" " * 22 + "".join(f"{s:>14}" for s in report.strategies) + "    unique")
for s, row, u in zip(report.strategies, report.matrix, report.unique):
    print(f"{s:<22}" + "".join(f"{v:>14}" for v in row) + f"{u:>10}")

for path in write_report(report, Path("demo_output")):
    print("wrote", path)
