"""Input/output distances and the program derivative of an input pair."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import ArityMismatch, ZeroInputDistance
from .suts import ExecutionOutcome, SutSpec, evaluate


class OutputDistance(str, enum.Enum):
    JACCARD_2GRAM = "jaccard"
    STRING_LENGTH = "strlendist"


def input_distance(a, b) -> float:
    """Euclidean distance; differences are taken exactly before going to float."""
    if len(a) != len(b):
        raise ArityMismatch(f"points of different arity: {len(a)} vs {len(b)}")
    if len(a) == 1:
        return float(abs(a[0] - b[0]))
    return math.hypot(*(x - y for x, y in zip(a, b)))


def output_string(outcome: ExecutionOutcome) -> str:
    """Class label of an outcome: the value, or just the exception kind."""
    return outcome.kind if outcome.kind is not None else outcome.value


def output_text(outcome: ExecutionOutcome) -> str:
    """Full stringified output, exception message included."""
    return outcome.render()


@lru_cache(maxsize=1 << 16)
def bigrams(s: str) -> frozenset:
    if len(s) < 2:
        return frozenset((s,)) if s else frozenset()
    return frozenset(s[i:i + 2] for i in range(len(s) - 1))


def jaccard_2gram_distance(s1: str, s2: str) -> float:
    if s1 == s2:
        return 0.0
    g1, g2 = bigrams(s1), bigrams(s2)
    union = len(g1 | g2)
    if union == 0:
        return 0.0
    return 1.0 - len(g1 & g2) / union


def string_length_distance(s1: str, s2: str) -> float:
    return float(abs(len(s1) - len(s2)))


_OUTPUT_DISTANCES = {
    OutputDistance.JACCARD_2GRAM: jaccard_2gram_distance,
    OutputDistance.STRING_LENGTH: string_length_distance,
}


def output_distance(oa: ExecutionOutcome, ob: ExecutionOutcome,
                    kind: OutputDistance = OutputDistance.JACCARD_2GRAM) -> float:
    return _OUTPUT_DISTANCES[OutputDistance(kind)](oa.render(), ob.render())


def program_derivative(a, b, oa: ExecutionOutcome, ob: ExecutionOutcome,
                       kind: OutputDistance = OutputDistance.JACCARD_2GRAM) -> float:
    """Output distance over input distance for the pair ``(a, b)``."""
    di = input_distance(a, b)
    if di == 0:
        raise ZeroInputDistance(f"identical inputs {a!r}")
    return output_distance(oa, ob, kind) / di


@dataclass(frozen=True, slots=True)
class BoundaryCandidate:
    a: tuple
    b: tuple
    outcome_a: ExecutionOutcome
    outcome_b: ExecutionOutcome
    pd: float

    @property
    def flat(self) -> tuple:
        """Both inputs concatenated into one 2*arity vector."""
        return self.a + self.b

    def swapped(self) -> "BoundaryCandidate":
        return BoundaryCandidate(self.b, self.a, self.outcome_b, self.outcome_a, self.pd)


def make_candidate(a, b, oa: ExecutionOutcome, ob: ExecutionOutcome,
                   kind: OutputDistance = OutputDistance.JACCARD_2GRAM) -> BoundaryCandidate:
    a, b = tuple(a), tuple(b)
    return BoundaryCandidate(a, b, oa, ob, program_derivative(a, b, oa, ob, kind))


def evaluate_pair(sut: SutSpec, a, b,
                  kind: OutputDistance = OutputDistance.JACCARD_2GRAM) -> BoundaryCandidate:
    """Run both inputs through ``sut`` and build the candidate."""
    return make_candidate(a, b, evaluate(sut, a), evaluate(sut, b), kind)
