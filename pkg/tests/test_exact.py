import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from normsemi import kernel
from normsemi.errors import InputError
from normsemi.exact import (
    SqrtValue,
    format_rational,
    int_array,
    le_sqrt,
    parse_rational,
    scale,
    sqrt_le_sum,
    workspace,
)

fracs = st.fractions(min_value=0, max_value=50, max_denominator=12)


@pytest.mark.parametrize("text, value", [
    ("3/4", Fraction(3, 4)), ("-2", Fraction(-2)), (" 6 / 8 ", Fraction(3, 4)), (5, Fraction(5)),
])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["1/0", "0.5", "nan", "inf", "1/-2", "", True, 0.5, None])
def test_parse_rational_rejects(bad):
    with pytest.raises(InputError):
        parse_rational(bad)


def test_format_is_canonical():
    assert format_rational(Fraction(6, 8)) == "3/4"
    assert format_rational(2) == "2/1"
    assert format_rational(Fraction(-1, 3)) == "-1/3"


@given(st.lists(st.fractions(max_denominator=30), min_size=1, max_size=12))
def test_scale_roundtrip(values):
    num, den = scale(values)
    assert [Fraction(int(a), den) for a in num] == values
    assert den == math.lcm(*[v.denominator for v in values])


def test_int_array_promotes_large_values():
    assert int_array([1, 2]).dtype == np.int64
    assert int_array([2**70, 1]).dtype == object


def test_workspace_degree_guard():
    a = np.array([2**20], dtype=np.int64)
    (lo,) = workspace(a, degree=1)
    (hi,) = workspace(a, degree=4)
    assert lo.dtype == np.int64 and hi.dtype == object


@given(fracs, fracs, fracs)
def test_sqrt_le_sum_matches_high_precision(a, b, c):
    exact = sqrt_le_sum(a, b, c)
    # compare with a 60-digit decimal evaluation, away from ties
    from decimal import Decimal, getcontext
    getcontext().prec = 60

    def rt(f):
        return (Decimal(f.numerator) / Decimal(f.denominator)).sqrt()

    gap = rt(b) + rt(c) - rt(a)
    if abs(gap) > Decimal("1e-40"):
        assert exact == (gap > 0)
    else:
        assert exact


def test_sqrt_le_sum_equality_cases():
    assert sqrt_le_sum(4, 1, 1)  # 2 <= 1 + 1
    assert not sqrt_le_sum(Fraction(401, 100), 1, 1)
    assert sqrt_le_sum(8, 2, 2)  # 2 sqrt2 <= sqrt2 + sqrt2


@given(st.fractions(min_value=-10, max_value=10, max_denominator=9), fracs)
def test_le_sqrt(a, r):
    assert le_sqrt(a, r) == (a <= 0 or a * a <= r)


def test_sqrt_value_ordering():
    assert SqrtValue(3) < 2 and SqrtValue(4) == 2 and SqrtValue(5) > 2
    assert SqrtValue(Fraction(1, 4)) == Fraction(1, 2)
    assert str(SqrtValue(3)) == "sqrt(3/1)"
    with pytest.raises(ValueError):
        SqrtValue(-1)


@pytest.mark.parametrize("threads", [1, 2, 7])
def test_scan_first_witness_is_thread_independent(monkeypatch, threads):
    monkeypatch.setattr(kernel, "_CHUNK_ELEMENTS", 8)
    kernel.set_threads(threads)
    try:
        target = np.zeros((40, 5), dtype=bool)
        target[[13, 13, 29], [4, 1, 0]] = True
        cnt, first = kernel.scan(40, 5, lambda lo, hi: target[lo:hi])
    finally:
        kernel.set_threads(None)
    assert cnt == 3 and first == (13, 1)


def test_scan_empty_and_clean():
    assert kernel.scan(0, 3, None) == (0, None)
    assert kernel.scan(4, 4, lambda lo, hi: np.zeros((hi - lo, 4), bool)) == (0, None)
    with pytest.raises(ValueError):
        kernel.set_threads(0)
