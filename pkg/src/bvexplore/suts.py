"""Systems under test: pure integer functions with string outputs.

Every built-in subject reproduces the output formatting and exception
behaviour of its reference implementation, because output strings feed
both the program derivative and the archive descriptors.  A subject
signals failure by raising :class:`SutError`; :func:`evaluate` turns that
(and any other exception) into an :class:`ExecutionOutcome` record so a
search loop never aborts.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import ArityMismatch, UnknownClass

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

InputPoint = tuple  # tuple[int, ...], one argument tuple for a SUT


class SutError(Exception):
    """Raised by a SUT body; ``kind`` plays the role of the exception type."""

    def __init__(self, kind: str, message: str = ""):
        super().__init__(kind, message)
        self.kind = kind
        self.message = message


@dataclass(frozen=True, slots=True)
class ExecutionOutcome:
    """Result of one SUT call: either a value string or an exception record."""

    value: Optional[str] = None
    kind: Optional[str] = None
    message: str = ""

    def __post_init__(self):
        if (self.value is None) == (self.kind is None):
            raise ValueError("exactly one of value / exception kind must be set")
        if self.kind is not None and not self.kind:
            raise ValueError("exception kind must be non-empty")

    @classmethod
    def ok(cls, value: str) -> "ExecutionOutcome":
        return cls(value=value)

    @classmethod
    def error(cls, kind: str, message: str = "") -> "ExecutionOutcome":
        return cls(kind=kind, message=message)

    @property
    def is_exception(self) -> bool:
        return self.kind is not None

    def render(self) -> str:
        """Full textual form: the value, or ``Kind("message")`` for exceptions."""
        if self.kind is None:
            return self.value
        if self.message:
            return f'{self.kind}("{self.message}")'
        return f"{self.kind}()"


@dataclass(frozen=True)
class Categorical:
    """Output kind for SUTs with a closed set of result classes.

    ``pinned`` fixes the abstraction number of selected unordered class
    pairs; every other pair receives the smallest unused number, visiting
    pairs in lexicographic order over the sorted vocabulary.
    """

    classes: tuple
    exception_kinds: tuple = ()
    pinned: Mapping = field(default_factory=dict)

    @property
    def vocabulary(self) -> list:
        return sorted(set(self.classes) | set(self.exception_kinds))

    def pair_index(self) -> dict:
        vocab = self.vocabulary
        table = {}
        for pair, number in self.pinned.items():
            a, b = sorted(pair) if len(pair) == 2 else (next(iter(pair)),) * 2
            if a not in vocab or b not in vocab:
                raise UnknownClass(f"pinned pair {pair!r} outside vocabulary")
            table[(a, b)] = number
        used = set(table.values())
        free = (n for n in itertools.count() if n not in used)
        for a, b in itertools.combinations_with_replacement(vocab, 2):
            if (a, b) not in table:
                table[(a, b)] = next(free)
        return table


@dataclass(frozen=True)
class SutSpec:
    """A named pure function over ``arity`` signed 64-bit integers.

    ``output_kind`` is a :class:`Categorical` or ``None`` for free-form
    string outputs.
    """

    name: str
    arity: int
    function: Callable[..., str]
    output_kind: Optional[Categorical] = None

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("arity must be positive")
        if self.output_kind is not None:
            object.__setattr__(self, "_pairs", self.output_kind.pair_index())

    @property
    def categorical(self) -> bool:
        return self.output_kind is not None

    def abstraction_number(self, class_a: str, class_b: str) -> int:
        a, b = (class_a, class_b) if class_a <= class_b else (class_b, class_a)
        try:
            return self._pairs[(a, b)]
        except (AttributeError, KeyError):
            raise UnknownClass(f"{self.name}: no abstraction number for {class_a!r}/{class_b!r}") from None

    def __call__(self, *args) -> ExecutionOutcome:
        return evaluate(self, args)


def check_point(point: Sequence[int], arity: int) -> tuple:
    if len(point) != arity:
        raise ArityMismatch(f"expected {arity} arguments, got {len(point)}")
    for x in point:
        if not INT64_MIN <= x <= INT64_MAX:
            raise ValueError(f"argument {x} outside signed 64-bit range")
    return tuple(point)


def evaluate(sut: SutSpec, point: Sequence[int]) -> ExecutionOutcome:
    """Run ``sut`` on ``point``, capturing every failure as an exception record."""
    if len(point) != sut.arity:
        raise ArityMismatch(f"{sut.name} takes {sut.arity} arguments, got {len(point)}")
    try:
        return ExecutionOutcome(value=sut.function(*point))
    except SutError as e:
        return ExecutionOutcome(kind=e.kind, message=e.message)
    except Exception as e:  # user SUTs may raise anything
        return ExecutionOutcome(kind=type(e).__name__, message=str(e))


def wrap_int64(x: int) -> int:
    """Two's-complement wrap of an unbounded int into int64."""
    return (x + 2**63) % 2**64 - 2**63


# ---------------------------------------------------------------------------
# bytecount

BYTECOUNT_UPPER = 999999999999994822656
_UNITS = ("kB", "MB", "GB", "TB", "PB", "EB")


def bytecount(n: int) -> str:
    if n > BYTECOUNT_UPPER:
        raise SutError("BoundsError", f"attempt to access {n} bytes")
    if n < 1000:
        return f"{n}B"
    for exp, unit in enumerate(_UNITS, start=1):
        scale = 1000**exp
        # tenths of the scaled value, rounded half-up in exact arithmetic
        tenths = (20 * n + scale) // (2 * scale)
        if tenths < 10000 or unit == "EB":
            return f"{tenths // 10}.{tenths % 10} {unit}"
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# circle

CIRCLE_RADIUS = 80


def circle(x: int, y: int) -> str:
    if x == 0 and y == 0:
        raise SutError("DomainError", "Origin")
    return "in" if x * x + y * y <= CIRCLE_RADIUS**2 else "out"


# ---------------------------------------------------------------------------
# bmi

BMI_CLASSES = ("Underweight", "Normal", "Overweight", "Obese", "Severely obese")


def bmi(h: int, w: int) -> str:
    if h < 0 or w < 0:
        raise SutError("DomainError", "Negative input")
    metres = h / 100
    try:
        value = w / (metres * metres)
    except ZeroDivisionError:
        value = float("nan")
    if value < 18.5:
        return "Underweight"
    elif value < 23:
        return "Normal"
    elif value < 25:
        return "Overweight"
    elif value < 30:
        return "Obese"
    return "Severely obese"


# ---------------------------------------------------------------------------
# date

_MONTH_DAYS = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)


def is_leap_year(y: int) -> bool:
    return y % 4 == 0 and (y % 100 != 0 or y % 400 == 0)


def days_in_month(y: int, m: int) -> int:
    if m == 2 and is_leap_year(y):
        return 29
    return _MONTH_DAYS[m - 1]


def format_date(d: int, m: int, y: int) -> str:
    sign = "-" if y < 0 else ""
    return f"{sign}{abs(y):04d}-{m:02d}-{d:02d}"


def date(d: int, m: int, y: int) -> str:
    if not 1 <= m <= 12:
        raise SutError("ArgumentError", f"Month: {m} out of range (1:12)")
    last = days_in_month(y, m)
    if not 1 <= d <= last:
        raise SutError("ArgumentError", f"Day: {d} out of range (1:{last})")
    return format_date(d, m, y)


# ---------------------------------------------------------------------------
# integer library functions

def _checked(q: int) -> int:
    if not INT64_MIN <= q <= INT64_MAX:
        raise SutError("DivideError")
    return q


def fld(x: int, y: int) -> str:
    if y == 0:
        raise SutError("DivideError")
    return str(_checked(x // y))


def cld(x: int, y: int) -> str:
    if y == 0:
        raise SutError("DivideError")
    return str(_checked(-(-x // y)))


def fldmod1(x: int, y: int) -> str:
    if y == 0:
        raise SutError("DivideError")
    r = x % y
    if r == 0:
        r = y
    q = wrap_int64((x - r) // y + 1)
    return f"({q}, {r})"


def maximum(x: int, y: int) -> str:
    return str(max(x, y))


def power_by_squaring(x: int, p: int) -> str:
    if p < 0:
        if x == 1:
            return "1"
        if x == -1:
            return "1" if p % 2 == 0 else "-1"
        raise SutError(
            "DomainError",
            f"Cannot raise an integer x to a negative power {p}.",
        )
    return str(wrap_int64(pow(x, p, 2**64)))


def sign(x: int) -> str:
    if x == 0:
        raise SutError("DomainError", "Zero")
    return "Positive" if x > 0 else "Negative"


# ---------------------------------------------------------------------------
# registry

# Abstraction numbers of these class pairs are fixed to match the reference cells.
CIRCLE_PINNED = {
    frozenset({"DomainError", "in"}): 5,
    frozenset({"DomainError", "out"}): 6,
    frozenset({"in", "out"}): 9,
}
BMI_PINNED = {
    frozenset({"DomainError", "Normal"}): 7,
    frozenset({"Normal", "Obese"}): 16,
    frozenset({"Overweight", "Underweight"}): 12,
}


def sut_numeric_pack() -> list:
    return [
        SutSpec("cld", 2, cld),
        SutSpec("fld", 2, fld),
        SutSpec("fldmod1", 2, fldmod1),
        SutSpec("max", 2, maximum),
        SutSpec("power_by_squaring", 2, power_by_squaring),
        SutSpec(
            "sign", 1, sign,
            Categorical(("Negative", "Positive"), ("DomainError",)),
        ),
    ]


def _builtin() -> list:
    return [
        SutSpec("bytecount", 1, bytecount),
        SutSpec("circle", 2, circle, Categorical(("in", "out"), ("DomainError",), CIRCLE_PINNED)),
        SutSpec("bmi", 2, bmi, Categorical(BMI_CLASSES, ("DomainError",), BMI_PINNED)),
        SutSpec("date", 3, date),
        *sut_numeric_pack(),
    ]


_REGISTRY: dict = {}


def register(sut: SutSpec, replace: bool = False) -> SutSpec:
    if sut.name in _REGISTRY and not replace:
        raise ValueError(f"SUT {sut.name!r} already registered")
    _REGISTRY[sut.name] = sut
    return sut


def get_sut(name: str) -> SutSpec:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown SUT {name!r}; known: {', '.join(sorted(_REGISTRY))}") from None


def sut_names() -> list:
    return sorted(_REGISTRY)


def make_sut(name: str, arity: int, function: Callable[..., str],
             classes: Optional[Iterable[str]] = None,
             exception_kinds: Iterable[str] = (),
             register_it: bool = True) -> SutSpec:
    """Author a new subject; pass ``classes`` for categorical outputs."""
    kind = None
    if classes is not None:
        kind = Categorical(tuple(classes), tuple(exception_kinds))
    sut = SutSpec(name, arity, function, kind)
    return register(sut) if register_it else sut


for _sut in _builtin():
    register(_sut)
