"""Mutating archive members finds cells the sampler alone misses.

The explorer picks a parent, moves one input to a point between the two,
nudges one argument, and offers the child back.  Parent choice can be
uniform, proportional to pd, or proportional to a curiosity score that
rises when a parent's children get accepted.
"""
import random

from bvexplore import Archive, Budget, ExplorerConfig, SamplerKind, Selection, get_sut, run_explorer, run_sampler

bmi = get_sut("bmi")
total = 40_000

archive = Archive(bmi)
run_sampler(archive, bmi, SamplerKind.CTS_BITUNIFORM, Budget(evaluations=total), random.Random(1))
print(f"sampler only      : {len(archive)} cells")

for selection in Selection:
    archive = Archive(bmi)
    run_sampler(archive, bmi, SamplerKind.CTS_BITUNIFORM, Budget(evaluations=total // 10), random.Random(1))
    stats = run_explorer(archive, bmi, ExplorerConfig(selection), Budget(evaluations=total * 9 // 10),
                         random.Random(2))
    print(f"explorer {selection.value:<9}: {len(archive)} cells "
          f"({stats.new} new, {stats.improved} improved, {stats.rejected} rejected)")

# Which class transitions were found?
pairs = sorted({tuple(sorted((e.candidate.outcome_a.kind or e.candidate.outcome_a.value,
                              e.candidate.outcome_b.kind or e.candidate.outcome_b.value)))
                for e in archive})
print("\nclass pairs covered:")
for a, b in pairs:
    print(f"  {a} / {b}")
