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
Stretch of a partition against a service function.

The stretch is the largest ratio ``g(S) / f(S)`` over non-empty sets *S*,
where *g* is the disjoint function induced by the partition.
Since *g* depends only on which parts *S* hits and *f* is monotone,
the maximum is attained on sets with at most one type per part;
enumerating those is exact and much cheaper than all subsets.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from jrplab.core import (
    MAX_EXHAUSTIVE_N,
    Partition,
    PartTag,
    ServiceFunction,
    SymmetricFunction,
)
from jrplab.exact import RatLike, le_affine_root
from jrplab.exceptions import SizeLimitError
from jrplab.utils import (
    format_mask,
    full_mask,
    integer_partitions,
    members,
    set_partitions,
)

logger = logging.getLogger("jrplab")

#: Default cap for the search over all set partitions.
MAX_PARTITION_SEARCH_N = 10

#: Cap for the search over part sizes of symmetric functions.
MAX_SYMMETRIC_SEARCH_N = 30


@dataclass(frozen=True)
class StretchReport:
    """
    Largest ratio of the induced disjoint function to the service function.

    ``ratio`` is ``None`` when some set costs nothing under *f*
    but something under the partition.
    """

    ratio: Optional[Fraction]

    #: Non-empty set attaining the ratio.
    witness: int

    #: Indices of the parts hit by the witness.
    breakdown: Tuple[int, ...]

    #: Induced cost of the witness.
    g_value: Fraction

    #: Service cost of the witness.
    f_value: Fraction

    @property
    def infinite(self) -> bool:
        return self.ratio is None

    def within(self, coef: RatLike, n: int, const: RatLike = 0) -> bool:
        """Decide ``ratio <= coef * sqrt(n) + const`` exactly."""
        if self.ratio is None:
            return False
        return le_affine_root(self.ratio, coef, n, const)

    def __str__(self) -> str:
        ratio = "inf" if self.ratio is None else str(self.ratio)
        return f"stretch {ratio} at {format_mask(self.witness)}"


def _candidates(parts: Sequence[int]) -> Iterator[int]:
    # One optional representative per part.
    choices = [[0] + [1 << e for e in members(part)] for part in parts]
    for picked in itertools.product(*choices):
        mask = sum(picked)
        if mask:
            yield mask


def _max_ratio(
    f: ServiceFunction,
    p: Partition,
    sets: Iterator[int],
    stop_at: Optional[Fraction] = None,
) -> Optional[StretchReport]:
    """
    Scan *sets* for the largest ratio.

    Returns ``None`` as soon as a ratio reaches *stop_at*.
    """
    best: Optional[Tuple[Fraction, int, Fraction, Fraction]] = None
    for mask in sets:
        g = p.induced(mask)
        value = f(mask)
        if value == 0:
            if g == 0:
                continue
            if stop_at is not None:
                return None
            return StretchReport(None, mask, tuple(p.hit(mask)), g, value)
        ratio = g / value
        if stop_at is not None and ratio >= stop_at:
            return None
        if best is None or ratio > best[0]:
            best = (ratio, mask, g, value)
    if best is None:
        full = p.universe.full
        zero = Fraction(0)
        return StretchReport(Fraction(1), full, tuple(p.hit(full)), zero, zero)
    ratio, mask, g, value = best
    return StretchReport(ratio, mask, tuple(p.hit(mask)), g, value)


def stretch(
    f: ServiceFunction,
    p: Partition,
    *,
    reduced: bool = True,
    max_n: int = MAX_EXHAUSTIVE_N,
) -> StretchReport:
    """
    Exact stretch of a partition, priced by its own part costs, against *f*.

    :param reduced: enumerate only sets with at most one type per part;
        otherwise all non-empty subsets
    :param max_n: cap on the universe size
    """
    f.universe.require_at_most(max_n, "Stretch universe")
    if reduced:
        sets: Iterator[int] = _candidates(p.parts)
    else:
        sets = iter(range(1, 1 << f.n))
    report = _max_ratio(f, p, sets)
    assert report is not None
    logger.info(f"Stretch of {len(p)} parts over {f.n} types: {report}")
    return report


def _blocks_of_sizes(sizes: Sequence[int]) -> List[int]:
    blocks = []
    start = 0
    for size in sizes:
        blocks.append(full_mask(start + size) ^ full_mask(start))
        start += size
    return blocks


def _symmetric_size_stretch(
    values: Sequence[Fraction], sizes: Sequence[int]
) -> Optional[Fraction]:
    # Hitting h parts once each: the h largest parts over values[h].
    worst = Fraction(0)
    total = Fraction(0)
    for h, size in enumerate(sizes, start=1):
        total += values[size]
        if values[h] == 0:
            if total == 0:
                continue
            return None
        worst = max(worst, total / values[h])
    return worst if worst else Fraction(1)


def _less(a: Optional[Fraction], b: Optional[Fraction]) -> bool:
    # None stands for infinity.
    if a is None:
        return False
    return b is None or a < b


def min_stretch_over_partitions(
    f: ServiceFunction, *, max_n: Optional[int] = None
) -> Tuple[Optional[Fraction], Partition]:
    """
    Smallest stretch any partition achieves against *f*, with a witness.

    Symmetric functions are searched over multisets of part sizes,
    other functions over all set partitions.
    Ties keep the partition enumerated first.
    """
    if isinstance(f, SymmetricFunction):
        limit = MAX_SYMMETRIC_SEARCH_N if max_n is None else max_n
        if f.n > limit:
            raise SizeLimitError("Symmetric partition search", f.n, limit)
        best_sizes: Tuple[int, ...] = ()
        best_value: Optional[Fraction] = None
        for sizes in integer_partitions(f.n):
            value = _symmetric_size_stretch(f.values, sizes)
            if not best_sizes or _less(value, best_value):
                best_sizes, best_value = sizes, value
        blocks = _blocks_of_sizes(best_sizes)
        partition = Partition.from_function(f, blocks, [PartTag.BLOCK] * len(blocks))
        logger.info(f"Minimum stretch over part sizes of {f.n} types: {best_value}")
        return best_value, partition
    limit = MAX_PARTITION_SEARCH_N if max_n is None else max_n
    f.universe.require_at_most(limit, "Partition search")
    best: Optional[Tuple[Optional[Fraction], Partition]] = None
    for parts in set_partitions(f.universe.full):
        p = Partition.from_function(f, parts)
        # Prune as soon as the partition cannot beat the best one.
        stop_at = None if best is None else best[0]
        singletons = (1 << e for e in range(f.n))
        if stop_at is not None and _max_ratio(f, p, singletons, stop_at) is None:
            continue
        report = _max_ratio(f, p, _candidates(p.parts), stop_at)
        if report is None:
            continue
        if best is None or _less(report.ratio, best[0]):
            best = (report.ratio, p)
    assert best is not None
    logger.info(f"Minimum stretch over set partitions of {f.n} types: {best[0]}")
    return best
