"""Random candidate generation: uniform int64 and compatible-type bituniform."""
from __future__ import annotations

import enum

from .archive import Archive, OfferStats, Phase
from .budget import Budget
from .derivative import OutputDistance, evaluate_pair
from .suts import INT64_MAX, SutSpec

# (width in bits, bituniform max_bits); width 1 is the boolean class
WIDTH_CLASSES = ((1, None), (8, 7), (16, 15), (32, 31), (64, 63))
MAX_REDRAWS = 64


class SamplerKind(str, enum.Enum):
    UNIFORM_INT64 = "uniform"
    CTS_BITUNIFORM = "cts-bu"


def sample_bituniform(rng, max_bits: int) -> int:
    """Pick a bit width uniformly, then a magnitude of that width, then a sign."""
    bits = rng.randint(0, max_bits)
    magnitude = rng.getrandbits(bits) if bits else 0
    return -magnitude if rng.random() < 0.5 else magnitude


def sample_uniform_int64(rng) -> int:
    return rng.getrandbits(64) - 2**63


def sample_cts_point(rng, arity: int) -> tuple:
    point = []
    for _ in range(arity):
        width, max_bits = WIDTH_CLASSES[rng.randrange(len(WIDTH_CLASSES))]
        if max_bits is None:
            point.append(rng.randint(0, 1))
        else:
            point.append(sample_bituniform(rng, max_bits))
    return tuple(point)


def sample_point(rng, arity: int, kind: SamplerKind) -> tuple:
    if kind is SamplerKind.UNIFORM_INT64:
        return tuple(sample_uniform_int64(rng) for _ in range(arity))
    return sample_cts_point(rng, arity)


def sample_pair(rng, arity: int, kind: SamplerKind) -> tuple:
    kind = SamplerKind(kind)
    a = sample_point(rng, arity, kind)
    for _ in range(MAX_REDRAWS):
        b = sample_point(rng, arity, kind)
        if b != a:
            return a, b
    nudged = b[0] + 1 if b[0] < INT64_MAX else b[0] - 1
    return a, (nudged,) + b[1:]


def sample_candidate(rng, sut: SutSpec, kind: SamplerKind = SamplerKind.CTS_BITUNIFORM,
                     distance: OutputDistance = OutputDistance.JACCARD_2GRAM):
    a, b = sample_pair(rng, sut.arity, kind)
    return evaluate_pair(sut, a, b, distance)


def run_sampler(archive: Archive, sut: SutSpec, kind: SamplerKind, budget: Budget, rng,
                distance: OutputDistance = OutputDistance.JACCARD_2GRAM) -> OfferStats:
    """Offer freshly sampled candidates until the budget runs out."""
    stats = OfferStats()
    kind = SamplerKind(kind)
    while budget.allows(2):
        c = sample_candidate(rng, sut, kind, distance)
        budget.charge(2)
        stats.record(archive.offer(c, Phase.SAMPLER))
    return stats
