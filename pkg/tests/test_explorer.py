import hashlib
import random

import pytest
from hypothesis import given, strategies as st

from bvexplore.archive import AddOutcome, Archive, Selection
from bvexplore.budget import Budget
from bvexplore.derivative import input_distance
from bvexplore.errors import DegenerateParent, EmptyArchive
from bvexplore.explorer import (ExplorerConfig, apply_step, midpoint, mutate, mutate_with,
                                run_explorer, saturate)
from bvexplore.sampler import SamplerKind, run_sampler
from bvexplore.suts import INT64_MAX, INT64_MIN, get_sut

GOLDEN_CELLS = 391
GOLDEN_SHA256 = "f6437ed02a99cadcdbdc91a89b65966062c6021612a5b06ae5a02431158bb9a6"

int64 = st.integers(INT64_MIN, INT64_MAX)


def pair_of_points(arity_range=(1, 3)):
    return st.integers(*arity_range).flatmap(
        lambda n: st.tuples(st.tuples(*[int64] * n), st.tuples(*[int64] * n)))


def test_hand_traced_mutation():
    assert mutate_with((0,), (100,), 0.5, True, 1, 0) == ((51,), (0,))
    # step on the kept point instead
    assert mutate_with((0,), (100,), 0.5, False, -3, 1) == ((50,), (97,))


def test_midpoint_rounding():
    assert midpoint((0, 0), (3, -3), 0.5) == (2, -1)   # round half up on the offset
    assert midpoint((0,), (1,), 0.25) == (0,)


@given(pair_of_points(), st.floats(0.25, 0.75))
def test_midpoint_between_parents(pair, t):
    a, b = pair
    mid = midpoint(a, b, t)
    for m, x, y in zip(mid, a, b):
        assert min(x, y) <= m <= max(x, y)
    for kept in (a, b):
        assert input_distance(mid, kept) <= input_distance(a, b)


@given(pair_of_points(), st.integers(0, 2**32))
def test_mutation_never_identical(pair, seed):
    a, b = pair
    if a == b:
        return
    p, q = mutate(a, b, random.Random(seed))
    assert p != q
    assert all(INT64_MIN <= x <= INT64_MAX for x in p + q)


def test_adjacent_parents():
    rng = random.Random(0)
    for _ in range(2000):
        p, q = mutate((5,), (6,), rng)
        assert p != q


def test_cancelled_step_moves_another_argument():
    # mid (0, 1) differs from kept (0, 0) in one coordinate; stepping it by -1 cancels
    a, b = (0, 0), (0, 2)
    p, q = mutate_with(a, b, 0.5, True, -1, 1)
    assert p == q == (0, 0)
    rng = random.Random(1)
    for _ in range(500):
        p, q = mutate(a, b, rng)
        assert p != q


def test_degenerate_parent():
    with pytest.raises(DegenerateParent):
        mutate((1, 2), (1, 2), random.Random(0))


def test_saturation():
    assert saturate(INT64_MAX + 5) == INT64_MAX
    assert saturate(INT64_MIN - 5) == INT64_MIN
    pair = [(INT64_MAX,), (0,)]
    assert not apply_step(pair, 0, 10)
    assert pair[0] == (INT64_MAX,)


def test_config_validation():
    with pytest.raises(ValueError):
        ExplorerConfig(midpoint_range=(0.0, 0.5))
    with pytest.raises(ValueError):
        ExplorerConfig(midpoint_range=(0.5, 1.0))
    assert ExplorerConfig(selection="curiosity").selection is Selection.CURIOSITY


def seeded_archive(sut_name, seed, evals=2000):
    sut = get_sut(sut_name)
    a = Archive(sut)
    run_sampler(a, sut, SamplerKind.CTS_BITUNIFORM, Budget(evaluations=evals), random.Random(seed))
    return sut, a


def test_empty_archive_rejected():
    sut = get_sut("circle")
    with pytest.raises(EmptyArchive):
        run_explorer(Archive(sut), sut, ExplorerConfig(), Budget(evaluations=10), random.Random(0))


def test_zero_budget_changes_nothing():
    sut, a = seeded_archive("circle", 0)
    before = [(e.cell, e.candidate) for e in a.snapshot()]
    stats = run_explorer(a, sut, ExplorerConfig(), Budget(evaluations=0), random.Random(0))
    assert stats.offers == 0
    assert [(e.cell, e.candidate) for e in a.snapshot()] == before


@pytest.mark.parametrize("selection", list(Selection))
def test_explorer_never_loses_coverage_or_quality(selection):
    sut, a = seeded_archive("bmi", 3)
    before = {e.cell: e.pd for e in a}
    stats = run_explorer(a, sut, ExplorerConfig(selection), Budget(evaluations=4000), random.Random(4))
    assert stats.offers == 2000
    for cell, pd in before.items():
        assert a.get(cell).pd >= pd


def test_curiosity_matches_logged_outcomes():
    sut, a = seeded_archive("circle", 5)
    log = []
    run_explorer(a, sut, ExplorerConfig(Selection.CURIOSITY), Budget(evaluations=6000),
                 random.Random(6), log=log)
    for entry in a:
        mine = [o for parent, o in log if parent is entry]
        expected = sum(1.0 if o.added else -0.5 for o in mine)
        assert entry.curiosity == expected


def test_golden_explorer_run():
    sut, a = seeded_archive("bytecount", 7)
    run_explorer(a, sut, ExplorerConfig(), Budget(evaluations=10_000), random.Random(8))
    text = "\n".join(f"{tuple(e.cell)} {e.candidate.a} {e.candidate.b} {e.candidate.pd!r} {e.curiosity}"
                     for e in a.snapshot())
    assert len(a) == GOLDEN_CELLS
    assert hashlib.sha256(text.encode()).hexdigest() == GOLDEN_SHA256


def test_rejected_children_penalise_parent():
    sut, a = seeded_archive("circle", 9)
    log = []
    run_explorer(a, sut, ExplorerConfig(), Budget(evaluations=200), random.Random(1), log=log)
    assert any(o is AddOutcome.REJECTED for _, o in log)
