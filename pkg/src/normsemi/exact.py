"""Exact rational plumbing.

Every matrix or vector of rationals is stored as an integer numpy array
plus one common positive denominator.  Comparisons between sums and
products of entries then reduce to integer arithmetic, which numpy can
vectorize.  ``int64`` is used only when a bound check proves the
polynomial being evaluated cannot overflow; otherwise arrays are promoted
to ``object`` dtype (Python ints, still exact).
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce, total_ordering

import numpy as np

from .errors import InputError

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")

# int64 headroom: products are evaluated with a safety factor of 16.
_I64_LIMIT = 2**62


def parse_rational(value) -> Fraction:
    """Parse ``"num/den"``, ``"num"`` or an int into a Fraction.

    Floats, infinities and zero denominators are input errors: nothing in
    this package is allowed to be inexact or to take the value -inf.
    """
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL.match(value)
        if not m:
            raise InputError(f"not an exact rational: {value!r}")
        num, den = m.group(1), m.group(2)
        den = int(den) if den is not None else 1
        if den == 0:
            raise InputError(f"zero denominator in {value!r}")
        return Fraction(int(num), den)
    raise InputError(f"not an exact rational: {value!r}")


def format_rational(value) -> str:
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def lcm_of_denominators(values) -> int:
    return reduce(math.lcm, (Fraction(v).denominator for v in values), 1)


def int_array(values, shape=None) -> np.ndarray:
    """Integer array, int64 when every entry fits comfortably, else object."""
    flat = [int(v) for v in values]
    bound = max((abs(v) for v in flat), default=0)
    dtype = np.int64 if bound < 2**31 else object
    arr = np.array(flat, dtype=dtype)
    if shape is not None:
        arr = arr.reshape(shape)
    return arr


def scale(values, shape=None) -> tuple[np.ndarray, int]:
    """Write a sequence of rationals as (integer numerators, common denominator)."""
    fracs = [parse_rational(v) for v in values]
    den = lcm_of_denominators(fracs)
    nums = [f.numerator * (den // f.denominator) for f in fracs]
    return int_array(nums, shape), den


def max_abs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    return int(max(abs(int(arr.max())), abs(int(arr.min()))))


def workspace(*arrays: np.ndarray, degree: int = 1) -> tuple[np.ndarray, ...]:
    """Return the arrays in a dtype safe for a polynomial of ``degree``.

    A sum of a few degree-``degree`` monomials in the entries is guaranteed
    to stay below 2**62 when int64 is chosen.
    """
    bound = max((max_abs(a) for a in arrays), default=0)
    if (16 * max(bound, 1)) ** degree < _I64_LIMIT:
        return tuple(a.astype(np.int64) for a in arrays)
    return tuple(a.astype(object) for a in arrays)


def rescale(num: np.ndarray, den: int, new_den: int) -> np.ndarray:
    """Express num/den over the larger denominator new_den (a multiple of den)."""
    factor = new_den // den
    if factor == 1:
        return num
    out = num.astype(object) * factor
    return int_array(out.ravel().tolist(), num.shape)


@total_ordering
@dataclass(frozen=True)
class SqrtValue:
    """The nonnegative real sqrt(r) for a rational r >= 0, compared exactly."""

    r: Fraction

    def __post_init__(self):
        r = parse_rational(self.r)
        if r < 0:
            raise ValueError(f"negative radicand {r}")
        object.__setattr__(self, "r", r)

    def squared(self) -> Fraction:
        return self.r

    def __eq__(self, other):
        if isinstance(other, SqrtValue):
            return self.r == other.r
        if isinstance(other, (int, Fraction)):
            return other >= 0 and self.r == Fraction(other) ** 2
        return NotImplemented

    def __hash__(self):
        return hash(("sqrt", self.r))

    def __lt__(self, other):
        if isinstance(other, SqrtValue):
            return self.r < other.r
        if isinstance(other, (int, Fraction)):
            return other > 0 and self.r < Fraction(other) ** 2
        return NotImplemented

    def __float__(self):
        return math.sqrt(self.r)

    def __str__(self):
        return f"sqrt({format_rational(self.r)})"

    def __repr__(self):
        return f"SqrtValue({self.r})"


def sqrt_le_sum(a, b, c) -> bool:
    """sqrt(a) <= sqrt(b) + sqrt(c) for rationals a, b, c >= 0, exactly.

    Squaring once gives a - b - c <= 2 sqrt(bc); if the left side is not
    positive we are done, otherwise square again.
    """
    s = a - b - c
    return s <= 0 or s * s <= 4 * b * c


def le_sqrt(a, r) -> bool:
    """a <= sqrt(r) for rational a and rational r >= 0."""
    return a <= 0 or a * a <= r
