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
Universe of request types, service functions and partitions.

A service function maps a set of request types (an integer bitmask)
to the cost of serving them together.
All variants are immutable and evaluate exactly.
"""

from __future__ import annotations

import enum
from abc import ABCMeta, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import ClassVar, Iterable, Iterator, List, Optional, Sequence, Tuple

from jrplab.exact import RatLike, as_fraction
from jrplab.exceptions import (
    DomainError,
    MalformedSpecError,
    SizeLimitError,
    ValidationError,
)
from jrplab.utils import format_mask, full_mask, lowest, popcount, submasks

#: Hard cap on any enumeration over all subsets of the universe.
MAX_EXHAUSTIVE_N = 24

#: Cap on the pairwise subadditivity audit of explicit tables.
MAX_AUDIT_N = 12


class PartTag(str, enum.Enum):
    """Provenance of a part produced by a partitioning algorithm."""

    HEAVY = "heavy"
    LIGHT_I = "light-I"
    LIGHT_II = "light-II"
    NICE = "nice"
    LEFTOVER = "leftover"
    LIGHT_TYPES = "Z_k"
    BLOCK = "block"
    COVER = "cover"
    PREIMAGE = "preimage"
    PARTIAL = "partial"


@dataclass(frozen=True)
class Universe:
    """Request types ``0..n-1``."""

    n: int

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"Universe size must be a positive integer: {self.n!r}")

    @property
    def full(self) -> int:
        """Bitmask of all types."""
        return full_mask(self.n)

    def check(self, mask: int) -> None:
        if mask < 0 or mask & ~self.full:
            raise DomainError(f"Not a subset of the universe of size {self.n}: {mask}")

    def check_type(self, index: int) -> None:
        if not 0 <= index < self.n:
            raise DomainError(f"Type {index} outside of universe of size {self.n}")

    def require_at_most(self, limit: int, what: str = "Universe") -> None:
        if self.n > min(limit, MAX_EXHAUSTIVE_N):
            raise SizeLimitError(what, self.n, min(limit, MAX_EXHAUSTIVE_N))

    def subsets(self) -> Iterator[int]:
        """All subsets including the empty set, ascending."""
        return iter(range(1 << self.n))


@dataclass(frozen=True)
class AuditReport:
    """
    Result of an audit of a service function.

    Evaluates to ``True`` when the audit passed.
    A failed audit names the violated property and its witness.
    """

    passed: bool

    #: Violated property, one of
    #: ``"empty"``, ``"monotone"``, ``"subadditive"``, ``"ceiling"``.
    check: Optional[str] = None

    a: Optional[int] = None
    b: Optional[int] = None

    #: Witness values, for subadditivity f(A), f(B) and f(A | B).
    values: Tuple[Fraction, ...] = ()

    #: True when the property holds by construction of the variant.
    structural: bool = False

    def __bool__(self) -> bool:
        return self.passed

    def __str__(self) -> str:
        if self.passed:
            return "PASS (structural)" if self.structural else "PASS"
        parts = [f"FAIL {self.check}"]
        if self.a is not None:
            parts.append(f"A={format_mask(self.a)}")
        if self.b is not None:
            parts.append(f"B={format_mask(self.b)}")
        if self.values:
            parts.append("values=" + ",".join(map(str, self.values)))
        return " ".join(parts)


PASSED = AuditReport(True)
STRUCTURAL = AuditReport(True, structural=True)


class ServiceFunction(metaclass=ABCMeta):
    """
    Monotone subadditive set function over a universe of request types.

    Calling an instance with a bitmask returns the service cost of that set.
    """

    #: Name of the variant used in instance documents.
    kind: ClassVar[str]

    @property
    @abstractmethod
    def universe(self) -> Universe:
        """Universe the function is defined on."""

    @property
    def n(self) -> int:
        return self.universe.n

    def __call__(self, mask: int) -> Fraction:
        self.universe.check(mask)
        return self._evaluate(mask)

    @abstractmethod
    def _evaluate(self, mask: int) -> Fraction:
        """Evaluate a set already checked against the universe."""

    def audit(self, max_n: int = MAX_AUDIT_N) -> AuditReport:
        """
        Check that this function is monotone and subadditive.

        The default implementation relies on the construction
        of the variant and checks the empty set only.
        """
        empty = self._evaluate(0)
        if empty != 0:
            return AuditReport(False, "empty", a=0, values=(empty,))
        return STRUCTURAL


def evaluate(f: ServiceFunction, mask: int) -> Fraction:
    """Cost of serving the set *mask* under *f*."""
    return f(mask)


def check_monotone_subadditive(
    f: ServiceFunction, *, max_n: int = MAX_AUDIT_N
) -> AuditReport:
    """
    Audit a service function.

    Explicit tables are audited exhaustively (up to *max_n* types),
    symmetric functions by their value sequence,
    the remaining variants are monotone and subadditive by construction.
    """
    return f.audit(max_n)


def _parse_costs(values: Iterable[RatLike], what: str) -> Tuple[Fraction, ...]:
    costs = tuple(as_fraction(v) for v in values)
    for i, c in enumerate(costs):
        if c < 0:
            raise MalformedSpecError(f"Negative {what} at index {i}: {c}")
    return costs


class ExplicitFunction(ServiceFunction):
    """
    Service function given by a full table of costs indexed by bitmask.
    """

    kind = "explicit"

    _universe: Universe
    _table: Tuple[Fraction, ...]

    def __init__(self, n: int, table: Sequence[RatLike]) -> None:
        self._universe = Universe(n)
        self._universe.require_at_most(MAX_EXHAUSTIVE_N, "Explicit table")
        if len(table) != 1 << n:
            raise MalformedSpecError(
                f"Explicit table of {n} types needs {1 << n} entries, got {len(table)}"
            )
        self._table = _parse_costs(table, "cost")

    def __repr__(self) -> str:
        return f"<{type(self).__name__}: n={self.n}>"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExplicitFunction):
            return NotImplemented
        return self._table == other._table

    def __hash__(self) -> int:
        return hash(self._table)

    @property
    def universe(self) -> Universe:
        return self._universe

    @property
    def table(self) -> Tuple[Fraction, ...]:
        return self._table

    def _evaluate(self, mask: int) -> Fraction:
        return self._table[mask]

    def audit(self, max_n: int = MAX_AUDIT_N) -> AuditReport:
        self.universe.require_at_most(max_n, "Explicit audit")
        table = self._table
        if table[0] != 0:
            return AuditReport(False, "empty", a=0, values=(table[0],))
        full = self.universe.full
        for s in range(1 << self.n):
            for j in range(self.n):
                bigger = s | (1 << j)
                if table[s] > table[bigger]:
                    return AuditReport(
                        False,
                        "monotone",
                        a=s,
                        b=bigger,
                        values=(table[s], table[bigger]),
                    )
        # Subadditivity on disjoint pairs implies it on all pairs
        # once monotonicity holds: f(A|B) <= f(A) + f(B - A) <= f(A) + f(B).
        for a in range(1, full + 1):
            for b in submasks(full & ~a):
                if b <= a:
                    continue
                union = a | b
                if table[a] + table[b] < table[union]:
                    return AuditReport(
                        False,
                        "subadditive",
                        a=a,
                        b=b,
                        values=(table[a], table[b], table[union]),
                    )
        return PASSED


class SymmetricFunction(ServiceFunction):
    """
    Service function depending only on the number of types served.
    """

    kind = "symmetric"

    _universe: Universe
    _values: Tuple[Fraction, ...]

    def __init__(self, values: Sequence[RatLike]) -> None:
        if len(values) < 2:
            raise MalformedSpecError("Symmetric function needs values for 0..n, n >= 1")
        self._universe = Universe(len(values) - 1)
        self._values = _parse_costs(values, "value")

    def __repr__(self) -> str:
        return f"<{type(self).__name__}: n={self.n}>"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymmetricFunction):
            return NotImplemented
        return self._values == other._values

    def __hash__(self) -> int:
        return hash(self._values)

    @property
    def universe(self) -> Universe:
        return self._universe

    @property
    def values(self) -> Tuple[Fraction, ...]:
        """Cost of serving *s* types, for s in 0..n."""
        return self._values

    def _evaluate(self, mask: int) -> Fraction:
        return self._values[popcount(mask)]

    def audit(self, max_n: int = MAX_AUDIT_N) -> AuditReport:
        values, n = self._values, self.n
        if values[0] != 0:
            return AuditReport(False, "empty", a=0, values=(values[0],))
        for s in range(n):
            if values[s] > values[s + 1]:
                return AuditReport(
                    False,
                    "monotone",
                    a=full_mask(s),
                    b=full_mask(s + 1),
                    values=(values[s], values[s + 1]),
                )
        for x in range(1, n + 1):
            for y in range(x, n + 1):
                total = min(x + y, n)
                if values[x] + values[y] < values[total]:
                    # Witness: the first x types and the last y types.
                    return AuditReport(
                        False,
                        "subadditive",
                        a=full_mask(x),
                        b=full_mask(n) ^ full_mask(n - y),
                        values=(values[x], values[y], values[total]),
                    )
        return PASSED


def check_ceiling_ratio(f: SymmetricFunction) -> AuditReport:
    """
    Check ``values[y] / values[x] <= ceil(y / x)`` for all ``y >= x > 0``.

    Every symmetric subadditive function satisfies the inequality
    whenever ``values[x] > 0``; a failure names the sizes as
    ``a=x`` and ``b=y``.
    """
    values = f.values
    for x in range(1, f.n + 1):
        if values[x] == 0:
            continue
        for y in range(x, f.n + 1):
            ceiling = -(-y // x)
            if values[y] > ceiling * values[x]:
                return AuditReport(
                    False, "ceiling", a=x, b=y, values=(values[x], values[y])
                )
    return PASSED


@dataclass(frozen=True)
class Partition:
    """
    Disjoint cover of the universe with a cost per part.

    A partition induces the disjoint service function
    ``g(S) = sum of costs of parts intersecting S``.
    """

    universe: Universe
    parts: Tuple[int, ...]
    costs: Tuple[Fraction, ...]
    tags: Tuple[Optional[PartTag], ...] = field(default=())

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        costs = _parse_costs(self.costs, "part cost")
        tags = tuple(self.tags) if self.tags else (None,) * len(parts)
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "costs", costs)
        object.__setattr__(self, "tags", tags)
        if not parts:
            raise MalformedSpecError("Partition needs at least one part.")
        if len(costs) != len(parts) or len(tags) != len(parts):
            raise MalformedSpecError("Partition parts, costs and tags differ in size.")
        seen = 0
        for i, part in enumerate(parts):
            if part == 0:
                raise MalformedSpecError(f"Part {i} is empty.")
            self.universe.check(part)
            if seen & part:
                raise MalformedSpecError(f"Part {i} overlaps an earlier part.")
            seen |= part
        if seen != self.universe.full:
            missing = format_mask(self.universe.full & ~seen)
            raise MalformedSpecError(f"Partition does not cover types {missing}.")

    @classmethod
    def from_function(
        cls,
        f: ServiceFunction,
        parts: Sequence[int],
        tags: Optional[Sequence[Optional[PartTag]]] = None,
    ) -> Partition:
        """Build a partition pricing every part by *f*."""
        costs = tuple(f(part) for part in parts)
        return cls(f.universe, tuple(parts), costs, tuple(tags or ()))

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def n(self) -> int:
        return self.universe.n

    def induced(self, mask: int) -> Fraction:
        """Cost of *mask* under the induced disjoint function."""
        self.universe.check(mask)
        return sum(
            (c for part, c in zip(self.parts, self.costs) if part & mask), Fraction(0)
        )

    def hit(self, mask: int) -> List[int]:
        """Indices of parts intersecting *mask*."""
        return [i for i, part in enumerate(self.parts) if part & mask]

    def part_of(self, type_index: int) -> int:
        """Index of the part containing a type."""
        self.universe.check_type(type_index)
        bit = 1 << type_index
        for i, part in enumerate(self.parts):
            if part & bit:
                return i
        raise AssertionError("Partition covers the universe.")

    def repriced(self, f: ServiceFunction) -> Partition:
        """The same parts priced by *f*."""
        return Partition.from_function(f, self.parts, self.tags)

    def check_costs(self, f: ServiceFunction) -> None:
        """
        Raise :class:`.ValidationError` unless every part costs ``f(part)``.
        """
        if f.universe != self.universe:
            raise ValidationError("Partition and function differ in universe.")
        for i, (part, cost) in enumerate(zip(self.parts, self.costs)):
            expected = f(part)
            if cost != expected:
                raise ValidationError(
                    f"Part {i} {format_mask(part)} costs {cost}, expected {expected}"
                )

    def sorted_key(self) -> Tuple[int, ...]:
        """Parts ordered by their lowest type, for canonical comparison."""
        return tuple(sorted(self.parts, key=lowest))


class DisjointFunction(ServiceFunction):
    """
    Service function induced by a partition.

    Serving a set costs the sum of costs of the parts it intersects.
    """

    kind = "disjoint"

    _partition: Partition

    def __init__(self, partition: Partition) -> None:
        self._partition = partition

    def __repr__(self) -> str:
        return f"<{type(self).__name__}: n={self.n}, parts={len(self._partition)}>"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DisjointFunction):
            return NotImplemented
        return self._partition == other._partition

    def __hash__(self) -> int:
        return hash(self._partition)

    @property
    def universe(self) -> Universe:
        return self._partition.universe

    @property
    def partition(self) -> Partition:
        return self._partition

    def _evaluate(self, mask: int) -> Fraction:
        return self._partition.induced(mask)
