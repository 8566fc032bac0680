"""Behavioural descriptors mapping a boundary candidate to its archive cell."""
from __future__ import annotations

import enum
from typing import NamedTuple

from .derivative import BoundaryCandidate, output_string
from .suts import SutSpec


class CellCoord(NamedTuple):
    total_input_length: int
    input_length_variance: int
    output_axis: int
    exception_count: int


class ValidityGroup(str, enum.Enum):
    VV = "VV"
    VE = "VE"
    EE = "EE"


_GROUPS = (ValidityGroup.VV, ValidityGroup.VE, ValidityGroup.EE)


def validity_group(exceptions: int) -> ValidityGroup:
    return _GROUPS[exceptions]


def exception_count(c: BoundaryCandidate) -> int:
    return c.outcome_a.is_exception + c.outcome_b.is_exception


def _arg_lengths(c: BoundaryCandidate) -> list:
    return [len(str(x)) for x in c.a + c.b]


def total_input_length(c: BoundaryCandidate) -> int:
    return sum(_arg_lengths(c))


def input_length_variance(c: BoundaryCandidate) -> int:
    """Sample variance of the argument string lengths, truncated to an int.

    Computed exactly in integers: n*sum(x^2) - sum(x)^2 over n*(n-1).
    """
    lengths = _arg_lengths(c)
    n = len(lengths)
    s = sum(lengths)
    sq = sum(x * x for x in lengths)
    return (n * sq - s * s) // (n * (n - 1))


def output_length_difference(c: BoundaryCandidate) -> int:
    return abs(len(c.outcome_a.render()) - len(c.outcome_b.render()))


def output_abstraction_number(c: BoundaryCandidate, sut: SutSpec) -> int:
    return sut.abstraction_number(output_string(c.outcome_a), output_string(c.outcome_b))


def cell_coord(c: BoundaryCandidate, sut: SutSpec) -> CellCoord:
    lengths = _arg_lengths(c)
    n = len(lengths)
    s = sum(lengths)
    variance = (n * sum(x * x for x in lengths) - s * s) // (n * (n - 1))
    if sut.categorical:
        axis = output_abstraction_number(c, sut)
    else:
        axis = output_length_difference(c)
    return CellCoord(s, variance, axis, exception_count(c))
