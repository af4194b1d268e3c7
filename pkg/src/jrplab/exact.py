# Copyright 2026 The jrplab authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Exact arithmetic helpers.

All costs, weights and times are :class:`fractions.Fraction` instances.
Bounds involving square roots are decided by squaring,
so no floating point enters any comparison.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from jrplab.exceptions import DomainError

RatLike = Union[int, Fraction]

_FRACTION_RE = re.compile(r"-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?")


def parse_fraction(text: str) -> Fraction:
    """
    Parse a fraction written as ``"num/den"`` or ``"num"``.

    Only the canonical form is accepted: the fraction must be reduced,
    the denominator positive and different from one,
    and no signs, spaces or leading zeros may appear.
    """
    if not _FRACTION_RE.fullmatch(text):
        raise ValueError(f"Invalid fraction: {text!r}")
    value = Fraction(text)
    if format_fraction(value) != text:
        raise ValueError(f"Fraction not in lowest terms: {text!r}")
    return value


def format_fraction(value: RatLike) -> str:
    return str(Fraction(value))


def as_fraction(value: Union[RatLike, str]) -> Fraction:
    """Convert an int, a fraction or a canonical fraction string."""
    if isinstance(value, str):
        return parse_fraction(value)
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise TypeError(f"Expected an exact number, got {type(value).__name__}.")
    return Fraction(value)


def is_perfect_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def exact_sqrt(n: int) -> int:
    """Integer square root of a perfect square."""
    if not is_perfect_square(n):
        raise DomainError(f"Not a perfect square: {n}")
    return math.isqrt(n)


def ceil_sqrt(n: int) -> int:
    """Smallest integer k with k*k >= n."""
    if n < 0:
        raise DomainError(f"Negative radicand: {n}")
    if n == 0:
        return 0
    return math.isqrt(n - 1) + 1


def sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def sign_with_root(a: RatLike, b: RatLike, m: int) -> int:
    """
    Sign of ``a + b*sqrt(m)`` decided exactly.

    :param a: rational part
    :param b: coefficient of the root
    :param m: non-negative integer radicand
    """
    a = Fraction(a)
    b = Fraction(b)
    if m < 0:
        raise DomainError(f"Negative radicand: {m}")
    if is_perfect_square(m):
        return sign(a + b * math.isqrt(m))
    sa, sb = sign(a), sign(b)
    if sa >= 0 and sb >= 0:
        return 1 if sa or sb else 0
    if sa <= 0 and sb <= 0:
        return -1
    # Opposite signs: compare magnitudes by squaring.
    diff = a * a - b * b * m
    return sign(diff) if sa > 0 else -sign(diff)


def le_root_times(x: RatLike, k: RatLike, n: int, y: RatLike) -> bool:
    """
    Decide ``x <= k * sqrt(n) * y`` for non-negative *x*, *k*, *y*.
    """
    x, k, y = Fraction(x), Fraction(k), Fraction(y)
    if x < 0 or k < 0 or y < 0:
        raise DomainError("Squared comparison needs non-negative operands.")
    return x * x <= k * k * n * y * y


def le_affine_root(x: RatLike, coef: RatLike, n: int, const: RatLike) -> bool:
    """Decide ``x <= coef * sqrt(n) + const``."""
    return sign_with_root(Fraction(const) - Fraction(x), coef, n) >= 0


def root_floor(coef: RatLike, n: int, const: RatLike, precision: int) -> Fraction:
    """
    Rational lower approximation of ``coef * sqrt(n) + const``.

    The result has denominator *precision* and lies within
    ``1/precision`` below the exact value.
    """
    coef, const = Fraction(coef), Fraction(const)
    if coef < 0:
        raise DomainError("Negative coefficient.")
    # floor(coef * sqrt(n) * precision) = floor(sqrt(coef^2 * n * precision^2))
    radicand = coef * coef * n * precision * precision
    root = math.isqrt(radicand.numerator // radicand.denominator)
    return Fraction(root, precision) + const


def _log_series(z: Fraction, tolerance: Fraction) -> tuple[Fraction, Fraction]:
    # 2 atanh(z) = ln((1 + z) / (1 - z)) for 0 <= z < 1; partial sums stay below
    z2 = z * z
    total = Fraction(0)
    power = z
    k = 0
    while True:
        total += power / (2 * k + 1)
        power *= z2
        k += 1
        tail = power / ((2 * k + 1) * (1 - z2))
        if 2 * tail <= tolerance:
            return 2 * total, 2 * (total + tail)


def ln_bracket(x: RatLike, precision: int) -> tuple[Fraction, Fraction]:
    """
    Rational bounds ``low <= ln(x) <= high`` with ``high - low <= 1/precision``.

    Writes ``x = 2**e * m`` with ``1 <= m < 2`` and sums the series
    of ``ln 2`` and ``ln m`` until the remainder is small enough.
    """
    x = Fraction(x)
    if x <= 0:
        raise DomainError(f"Logarithm of a non-positive number: {x}")
    if precision < 1:
        raise DomainError(f"Precision must be positive: {precision}")
    if x < 1:
        low, high = ln_bracket(1 / x, precision)
        return -high, -low
    e = x.numerator.bit_length() - x.denominator.bit_length()
    if x < 2 ** e:
        e -= 1
    m = x / 2 ** e
    tolerance = Fraction(1, 2 * precision)
    two_low, two_high = _log_series(Fraction(1, 3), tolerance / max(e, 1))
    m_low, m_high = _log_series((m - 1) / (m + 1), tolerance)
    return e * two_low + m_low, e * two_high + m_high


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, m) with n == s*s*m and m square-free."""
    s, m = 1, 1
    factor = 2
    while factor * factor <= n:
        count = 0
        while n % factor == 0:
            n //= factor
            count += 1
        s *= factor ** (count // 2)
        if count % 2:
            m *= factor
        factor += 1
    return s, m * n


@functools.total_ordering
@dataclass(frozen=True)
class Surd:
    """
    Non-negative number ``q * sqrt(m)`` with rational *q*
    and square-free integer *m*.

    Instances are normalized, so equal numbers compare equal
    as dataclasses. Ordering compares squares.
    """

    q: Fraction
    m: int = 1

    def __post_init__(self) -> None:
        if self.q < 0:
            raise DomainError("Surd must be non-negative.")
        if self.m < 1 or _squarefree_split(self.m)[0] != 1:
            raise DomainError(f"Radicand must be square-free: {self.m}")
        if self.q == 0 and self.m != 1:
            raise DomainError("Zero must be written with radicand 1.")

    @classmethod
    def of(cls, value: RatLike) -> Surd:
        """Exact representation of a non-negative rational."""
        return cls(Fraction(value))

    @classmethod
    def sqrt(cls, square: RatLike) -> Surd:
        """Exact square root of a non-negative rational."""
        square = Fraction(square)
        if square < 0:
            raise DomainError(f"Negative radicand: {square}")
        if square == 0:
            return cls(Fraction(0))
        # sqrt(p/d) = sqrt(p*d)/d
        p, d = square.numerator, square.denominator
        s, m = _squarefree_split(p * d)
        return cls(Fraction(s, d), m)

    def square(self) -> Fraction:
        return self.q * self.q * self.m

    @property
    def is_rational(self) -> bool:
        return self.m == 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise DomainError(f"Irrational number: {self}")
        return self.q

    def scale(self, factor: RatLike) -> Surd:
        factor = Fraction(factor)
        if factor == 0:
            return Surd(Fraction(0))
        return Surd(self.q * factor, self.m)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Surd):
            return NotImplemented
        return self.square() < other.square()

    def __float__(self) -> float:
        return float(self.q) * math.sqrt(self.m)

    def __str__(self) -> str:
        if self.m == 1:
            return str(self.q)
        if self.q == 1:
            return f"sqrt({self.m})"
        return f"{self.q}*sqrt({self.m})"
