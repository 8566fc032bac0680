"""Local boundary refinement around the best archive candidates.

Seeds are picked per validity group, each gets a box-shaped search region
sized from the spread of neighbouring candidates, and a small steady-state
population is evolved inside it to spread high-PD pairs along the boundary.
"""
from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from typing import Optional

from .archive import Archive
from .budget import Budget
from .derivative import BoundaryCandidate, OutputDistance, evaluate_pair, input_distance
from .descriptors import ValidityGroup, exception_count, validity_group
from .errors import EmptyArchive, InsufficientCandidates
from .explorer import mutate, saturate
from .suts import SutSpec

MAX_IDLE_MUTATIONS = 1000


@dataclass(frozen=True)
class TracerConfig:
    n_top: int = 100
    group_quota: tuple = ((ValidityGroup.VV, 0.5), (ValidityGroup.VE, 0.4), (ValidityGroup.EE, 0.1))
    population_size: int = 30
    window: int = 30

    def __post_init__(self):
        if abs(sum(q for _, q in self.group_quota) - 1.0) > 1e-9:
            raise ValueError("group quotas must sum to 1")
        if self.population_size < 2:
            raise ValueError("population_size must be at least 2")


@dataclass(frozen=True)
class SearchBounds:
    low: tuple
    high: tuple

    def contains(self, flat) -> bool:
        return all(lo <= x <= hi for x, lo, hi in zip(flat, self.low, self.high))

    def clamp(self, flat) -> tuple:
        return tuple(min(max(x, lo), hi) for x, lo, hi in zip(flat, self.low, self.high))


@dataclass(frozen=True)
class AcceptRecord:
    parent: int
    other: int
    f_parent: float
    f_child: float
    accepted: bool
    child: Optional[BoundaryCandidate] = None


@dataclass
class TracePopulation:
    seed: BoundaryCandidate
    bounds: SearchBounds
    members: list
    log: list = field(default_factory=list)
    initial: list = field(default_factory=list)
    evaluations: int = 0


def _by_pd(entries) -> list:
    # ties broken by cell so the order is reproducible
    return sorted(entries, key=lambda e: (-e.candidate.pd, e.cell))


def prioritize(archive: Archive, config: TracerConfig = TracerConfig()) -> list:
    """Top candidates per validity group, with shortfalls filled from surplus."""
    groups = {g: [] for g, _ in config.group_quota}
    for entry in _by_pd(archive):
        groups[validity_group(exception_count(entry.candidate))].append(entry)

    blocks, leftovers = {}, []
    for g, quota in config.group_quota:
        take = math.ceil(quota * config.n_top)
        blocks[g] = groups[g][:take]
        leftovers.extend((e, g) for e in groups[g][take:])

    shortfall = config.n_top - sum(len(b) for b in blocks.values())
    if shortfall > 0:
        leftovers.sort(key=lambda eg: (-eg[0].candidate.pd, eg[0].cell))
        for entry, g in leftovers[:shortfall]:
            blocks[g].append(entry)
    selected = [e.candidate for g, _ in config.group_quota for e in blocks[g]]
    return selected[:config.n_top]


def _median_offset(values) -> int:
    return max(1, math.floor(statistics.median(values) + 0.5))


def search_bounds(seed_index: int, pd_sorted: list, window: int = 30) -> SearchBounds:
    """Box around ``pd_sorted[seed_index]`` sized by median neighbour spacing."""
    n = len(pd_sorted)
    if n < 2:
        raise InsufficientCandidates("need at least two candidates to size a search region")
    if not 0 <= seed_index < n:
        raise IndexError(seed_index)
    size = min(window, n)
    start = seed_index if seed_index + size <= n else n - size
    run = [c.flat for c in pd_sorted[start:start + size]]
    seed = pd_sorted[seed_index].flat
    low, high = [], []
    for k in range(len(seed)):
        offset = _median_offset([abs(nxt[k] - cur[k]) for cur, nxt in zip(run, run[1:])])
        low.append(saturate(seed[k] - offset))
        high.append(saturate(seed[k] + offset))
    return SearchBounds(tuple(low), tuple(high))


def weight_w(bounds: SearchBounds) -> float:
    """Diagonal length of the search box."""
    return math.hypot(*(hi - lo for lo, hi in zip(bounds.low, bounds.high)))


def pair_objective(child: BoundaryCandidate, other: BoundaryCandidate, w: float) -> float:
    return w * (child.pd + other.pd) + input_distance(child.flat, other.flat)


def _random_member(sut, bounds, rng, distance):
    arity = sut.arity
    while True:
        flat = tuple(rng.randint(lo, hi) for lo, hi in zip(bounds.low, bounds.high))
        a, b = flat[:arity], flat[arity:]
        if a != b:
            return evaluate_pair(sut, a, b, distance)


def trace(seed: BoundaryCandidate, bounds: SearchBounds, budget: Budget, sut: SutSpec, rng,
          config: TracerConfig = TracerConfig(),
          distance: OutputDistance = OutputDistance.JACCARD_2GRAM) -> TracePopulation:
    """Evolve a fixed-size population inside ``bounds``.

    The initial population is always built; its evaluations are charged to
    ``budget`` before any mutation is attempted.
    """
    arity = sut.arity
    members = [_random_member(sut, bounds, rng, distance) for _ in range(config.population_size)]
    budget.charge(2 * len(members))
    pop = TracePopulation(seed, bounds, members, initial=list(members))
    w = weight_w(bounds)
    size = len(members)
    idle = 0
    while budget.allows(2) and idle < MAX_IDLE_MUTATIONS:
        i = rng.randrange(size)
        parent = members[i]
        p, q = mutate(parent.a, parent.b, rng)
        flat = bounds.clamp(p + q)
        p, q = flat[:arity], flat[arity:]
        if p == q:
            idle += 1
            continue
        idle = 0
        child = evaluate_pair(sut, p, q, distance)
        budget.charge(2)
        j = rng.randrange(size - 1)
        j += j >= i
        other = members[j]
        f_parent = pair_objective(parent, other, w)
        f_child = pair_objective(child, other, w)
        accepted = f_child > f_parent
        if accepted:
            members[i] = child
        pop.log.append(AcceptRecord(i, j, f_parent, f_child, accepted, child))
    pop.evaluations = budget.spent
    return pop


def run_tracer(archive: Archive, sut: SutSpec, config: TracerConfig, budget: Budget, rng,
               distance: OutputDistance = OutputDistance.JACCARD_2GRAM) -> list:
    """Trace the prioritised seeds, giving each an equal slice of the budget.

    Under an evaluation budget the seed list is cut so each slice covers at
    least two initial populations' worth of evaluations.
    """
    if len(archive) == 0:
        raise EmptyArchive("tracer needs a populated archive")
    seeds = prioritize(archive, config)
    pd_sorted = [e.candidate for e in _by_pd(archive)]
    if len(pd_sorted) < 2:
        raise InsufficientCandidates("tracer needs at least two archive candidates")
    position = {id(c): k for k, c in enumerate(pd_sorted)}
    if budget.counted:
        per_seed_min = 4 * config.population_size
        seeds = seeds[:budget.remaining() // per_seed_min]
    populations = []
    for seed, spec in zip(seeds, budget.share(len(seeds), unit=2)):
        bounds = search_bounds(position[id(seed)], pd_sorted, config.window)
        sub = Budget.of(spec)
        populations.append(trace(seed, bounds, sub, sut, rng, config, distance))
        budget.charge(sub.spent)
    return populations
