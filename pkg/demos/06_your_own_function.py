"""Exploring a function you define yourself.

A subject is any pure function of integers returning a string.  Raise
SutError (or any exception) to signal an error outcome.  Declaring the
output classes enables the class-pair descriptor.
"""
import random

from bvexplore import (Archive, Budget, ExplorerConfig, SamplerKind, SutError, make_sut,
                       run_explorer, run_sampler)


def shipping(weight_g, distance_km):
    if weight_g <= 0 or distance_km < 0:
        raise SutError("ValueError", "bad parcel")
    if weight_g > 30_000:
        return "freight"
    if distance_km > 500 or weight_g > 2_000:
        return "standard"
    return "letter"


sut = make_sut("shipping", 2, shipping, classes=("letter", "standard", "freight"),
               exception_kinds=("ValueError",))
archive = Archive(sut)
run_sampler(archive, sut, SamplerKind.CTS_BITUNIFORM, Budget(evaluations=2_000), random.Random(0))
run_explorer(archive, sut, ExplorerConfig("curiosity"), Budget(evaluations=30_000), random.Random(1))

print(f"{len(archive)} cells")
for e in sorted(archive, key=lambda e: -e.pd)[:8]:
    c = e.candidate
    print(f"  {c.a} {c.outcome_a.render():>24}  |  {c.b} {c.outcome_b.render():>24}  pd={c.pd:.3f}")
