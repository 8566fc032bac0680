import calendar
import datetime
from decimal import ROUND_HALF_UP, Decimal

import pytest
from hypothesis import given, strategies as st

from bvexplore.errors import ArityMismatch, UnknownClass
from bvexplore.suts import (INT64_MAX, INT64_MIN, ExecutionOutcome, SutError, evaluate, get_sut,
                            make_sut, sut_names, wrap_int64)
from reference_pairs import ROWS

int64 = st.integers(INT64_MIN, INT64_MAX)


@pytest.mark.parametrize("row", ROWS, ids=lambda r: f"{r[0]}{r[2]}")
def test_reference_pairs_reproduce_outputs(row):
    name, _, a, b, out_a, out_b = row
    sut = get_sut(name)
    for point, (value, kind) in ((a, out_a), (b, out_b)):
        o = evaluate(sut, point)
        assert o.value == value
        assert o.kind == kind


def test_builtin_registry():
    assert set(sut_names()) >= {"bytecount", "circle", "bmi", "date", "cld", "fld", "fldmod1",
                                "max", "power_by_squaring", "sign"}


def test_outcome_requires_exactly_one_side():
    with pytest.raises(ValueError):
        ExecutionOutcome()
    with pytest.raises(ValueError):
        ExecutionOutcome(value="x", kind="E")


def test_render_forms():
    assert ExecutionOutcome.ok("in").render() == "in"
    assert ExecutionOutcome.error("DomainError", "Origin").render() == 'DomainError("Origin")'
    assert ExecutionOutcome.error("DivideError").render() == "DivideError()"


def test_evaluate_checks_arity():
    with pytest.raises(ArityMismatch):
        evaluate(get_sut("circle"), (1,))


def test_evaluate_captures_foreign_exceptions():
    sut = make_sut("_boom", 1, lambda x: str(1 // x), register_it=False)
    o = evaluate(sut, (0,))
    assert o.kind == "ZeroDivisionError"
    assert evaluate(sut, (1,)).value == "1"


# bytecount ------------------------------------------------------------------

def bytecount_oracle(n):
    if n < 1000:
        return f"{n}B"
    units = ["kB", "MB", "GB", "TB", "PB", "EB"]
    for k, unit in enumerate(units, 1):
        scaled = (Decimal(n) / Decimal(1000) ** k).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP)
        if scaled < 1000 or unit == "EB":
            return f"{scaled} {unit}"


@pytest.mark.parametrize("n,text", [
    (37950000000, "38.0 GB"), (37949999999, "37.9 GB"), (-1, "-1B"), (999, "999B"),
    (1000, "1.0 kB"), (999949, "999.9 kB"), (999950, "1.0 MB"),
    (999999999999994822656, "1000.0 EB"),
])
def test_bytecount_examples(n, text):
    assert get_sut("bytecount")(n).value == text


@given(st.integers(INT64_MIN, INT64_MAX))
def test_bytecount_matches_decimal_oracle(n):
    assert get_sut("bytecount")(n).value == bytecount_oracle(n)


def test_bytecount_bounds_error_above_limit():
    o = evaluate(get_sut("bytecount"), (999999999999994822657,))
    assert o.kind == "BoundsError"


# circle / bmi ---------------------------------------------------------------

def test_circle_radius_inclusive():
    c = get_sut("circle")
    assert c(0, 80).value == "in"
    assert c(0, 81).value == "out"
    assert c(0, 0).render() == 'DomainError("Origin")'


@given(int64, int64)
def test_circle_extreme_inputs_do_not_overflow(x, y):
    o = get_sut("circle")(x, y)
    assert o.value in ("in", "out") or o.kind == "DomainError"


@pytest.mark.parametrize("h,w,label", [
    (63, 10, "Obese"), (36, 3, "Overweight"), (0, 0, "Severely obese"), (100, 18, "Underweight"),
    (100, 20, "Normal"), (100, 24, "Overweight"), (100, 29, "Obese"), (100, 30, "Severely obese"),
])
def test_bmi_classes(h, w, label):
    assert get_sut("bmi")(h, w).value == label


def test_bmi_negative_input():
    assert get_sut("bmi")(-1, 5).render() == 'DomainError("Negative input")'
    assert get_sut("bmi")(5, -1).kind == "DomainError"


# date -----------------------------------------------------------------------

@given(st.integers(-40, 40), st.integers(-2, 15), st.integers(1, 9999))
def test_date_matches_stdlib_calendar(d, m, y):
    o = get_sut("date")(d, m, y)
    if not 1 <= m <= 12:
        assert o.message == f"Month: {m} out of range (1:12)"
        return
    try:
        expected = datetime.date(y, m, d).isoformat()
    except ValueError:
        last = calendar.monthrange(y, m)[1]
        assert o.kind == "ArgumentError"
        assert o.message == f"Day: {d} out of range (1:{last})"
    else:
        assert o.value == expected


def test_date_year_zero_and_negative_years():
    date = get_sut("date")
    assert date(29, 2, 0).value == "0000-02-29"
    assert date(29, 2, 2024).value == "2024-02-29"
    assert date(29, 2, 1900).kind == "ArgumentError"
    assert date(3, 3, -999).value == "-0999-03-03"
    assert date(2246, 13, 0).message == "Month: 13 out of range (1:12)"


# numeric pack ---------------------------------------------------------------

def test_numeric_examples():
    assert get_sut("fld")(7, 2).value == "3"
    assert get_sut("fld")(-7, 2).value == "-4"
    assert get_sut("cld")(7, 2).value == "4"
    assert get_sut("fld")(1, 0).kind == "DivideError"
    assert get_sut("fld")(INT64_MIN, -1).kind == "DivideError"
    assert get_sut("fldmod1")(7, 3).value == "(3, 1)"
    assert get_sut("fldmod1")(6, 3).value == "(2, 3)"
    assert get_sut("max")(-5, 4).value == "4"
    assert get_sut("power_by_squaring")(2, 64).value == "0"
    assert get_sut("power_by_squaring")(2, 63).value == str(INT64_MIN)
    assert get_sut("power_by_squaring")(2, -1).kind == "DomainError"
    assert get_sut("power_by_squaring")(-1, -3).value == "-1"
    assert get_sut("sign")(-1).value == "Negative"
    assert get_sut("sign")(0).render() == 'DomainError("Zero")'


@given(int64, st.integers(0, 200))
def test_power_wraps_like_repeated_int64_multiplication(x, p):
    acc = 1
    for _ in range(p):
        acc = wrap_int64(acc * x)
    assert get_sut("power_by_squaring")(x, p).value == str(acc)


@given(int64, int64.filter(lambda y: y != 0))
def test_fldmod1_identity(x, y):
    out = get_sut("fldmod1")(x, y).value
    q, r = (int(v) for v in out.strip("()").split(","))
    # 1-based modulus lies in (0, y] for y > 0 and [y, 0) for y < 0
    assert (0 < r <= y) if y > 0 else (y <= r < 0)
    assert wrap_int64(q * y + r - y) == wrap_int64(x)


# abstraction numbers --------------------------------------------------------

def test_pinned_abstraction_numbers():
    circle, bmi = get_sut("circle"), get_sut("bmi")
    assert circle.abstraction_number("in", "out") == 9
    assert circle.abstraction_number("out", "in") == 9
    assert circle.abstraction_number("DomainError", "in") == 5
    assert circle.abstraction_number("out", "DomainError") == 6
    assert bmi.abstraction_number("Normal", "Obese") == 16
    assert bmi.abstraction_number("Underweight", "Overweight") == 12
    assert bmi.abstraction_number("Normal", "DomainError") == 7


@pytest.mark.parametrize("name", ["circle", "bmi", "sign"])
def test_abstraction_numbers_are_a_bijection_on_unordered_pairs(name):
    sut = get_sut(name)
    vocab = sut.output_kind.vocabulary
    numbers = {}
    for i, a in enumerate(vocab):
        for b in vocab[i:]:
            numbers[(a, b)] = sut.abstraction_number(a, b)
            assert sut.abstraction_number(b, a) == numbers[(a, b)]
    assert len(set(numbers.values())) == len(numbers)


def test_unknown_class_raises():
    with pytest.raises(UnknownClass):
        get_sut("circle").abstraction_number("in", "sideways")
    with pytest.raises(UnknownClass):
        get_sut("date").abstraction_number("a", "b")


def test_user_sut_lexicographic_numbers():
    sut = make_sut("_traffic", 1, lambda x: "go" if x > 0 else "stop",
                   classes=("stop", "go"), exception_kinds=("Err",), register_it=False)
    # vocabulary Err < go < stop
    assert sut.abstraction_number("Err", "Err") == 0
    assert sut.abstraction_number("Err", "go") == 1
    assert sut.abstraction_number("go", "stop") == 4
    assert sut.abstraction_number("stop", "stop") == 5


def test_sut_error_carries_kind():
    e = SutError("DomainError", "x")
    assert (e.kind, e.message) == ("DomainError", "x")
