"""Parent selection plus the midpoint-and-step mutation operator."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .archive import Archive, OfferStats, Phase, Selection
from .budget import Budget
from .derivative import OutputDistance, evaluate_pair, input_distance
from .errors import DegenerateParent, EmptyArchive
from .suts import INT64_MAX, INT64_MIN, SutSpec


@dataclass(frozen=True)
class ExplorerConfig:
    selection: Selection = Selection.UNIFORM
    midpoint_range: tuple = (0.25, 0.75)

    def __post_init__(self):
        lo, hi = self.midpoint_range
        if not 0 < lo <= hi < 1:
            raise ValueError(f"midpoint range {self.midpoint_range} must lie inside (0, 1)")
        object.__setattr__(self, "selection", Selection(self.selection))


def saturate(x: int) -> int:
    return INT64_MIN if x < INT64_MIN else INT64_MAX if x > INT64_MAX else x


def midpoint(a, b, t: float) -> tuple:
    """Point at fraction ``t`` from ``a`` towards ``b``, rounded per argument.

    Offsets are clamped so every component stays between the parents'.
    """
    out = []
    for x, y in zip(a, b):
        diff = y - x
        off = math.floor(t * diff + 0.5)
        off = min(max(off, min(0, diff)), max(0, diff))
        out.append(x + off)
    return tuple(out)


def apply_step(pair: list, index: int, step: int) -> bool:
    """Add ``step`` to flattened argument ``index`` of ``pair`` (saturating).

    ``pair`` is ``[p, q]`` and is modified in place; returns whether the
    value actually changed.
    """
    arity = len(pair[0])
    which, j = divmod(index, arity)
    point = list(pair[which])
    old = point[j]
    point[j] = saturate(old + step)
    pair[which] = tuple(point)
    return point[j] != old


def mutate_with(a, b, t: float, keep_first: bool, step: int, index: int) -> tuple:
    """Deterministic core of :func:`mutate` with every random choice supplied."""
    mid = midpoint(a, b, t)
    pair = [mid, a if keep_first else b]
    apply_step(pair, index, step)
    return pair[0], pair[1]


def mutate(a, b, rng, midpoint_range=(0.25, 0.75)) -> tuple:
    """Child pair (mid, kept) with one argument shifted by a random step."""
    if a == b:
        raise DegenerateParent(f"parent inputs identical: {a!r}")
    t = rng.uniform(*midpoint_range)
    keep_first = rng.random() < 0.5
    # u in (0, 1]
    u = 1.0 - rng.random()
    magnitude = max(1, math.floor(u * input_distance(a, b) + 0.5))
    step = magnitude if rng.random() < 0.5 else -magnitude
    n = 2 * len(a)
    index = rng.randrange(n)

    p, q = mutate_with(a, b, t, keep_first, step, index)
    if p != q:
        return p, q
    # the step cancelled the pair's only difference (or saturated away): move
    # another argument, trying both directions
    pair = [midpoint(a, b, t), a if keep_first else b]
    for k in [(index + i) % n for i in range(1, n)]:
        for s in (step, -step):
            trial = list(pair)
            apply_step(trial, k, s)
            if trial[0] != trial[1]:
                return trial[0], trial[1]
    raise AssertionError("could not separate child pair")


def run_explorer(archive: Archive, sut: SutSpec, config: ExplorerConfig, budget: Budget, rng,
                 distance: OutputDistance = OutputDistance.JACCARD_2GRAM,
                 log=None) -> OfferStats:
    """Select, mutate, evaluate and offer until the budget runs out.

    When ``log`` is a list, ``(parent_entry, outcome)`` tuples are appended.
    """
    if len(archive) == 0:
        raise EmptyArchive("explorer needs a populated archive")
    stats = OfferStats()
    lo_hi = config.midpoint_range
    while budget.allows(2):
        parent = archive.select(config.selection, rng)
        c = parent.candidate
        p, q = mutate(c.a, c.b, rng, lo_hi)
        child = evaluate_pair(sut, p, q, distance)
        budget.charge(2)
        outcome = archive.offer(child, Phase.EXPLORER)
        archive.update_curiosity(parent, outcome)
        stats.record(outcome)
        if log is not None:
            log.append((parent, outcome))
    return stats
