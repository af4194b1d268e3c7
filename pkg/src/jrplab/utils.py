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
Assorted helpers.

Sets of types are represented as integer bitmasks throughout the package.
"""

from __future__ import annotations

from typing import Iterable, Iterator, List, Optional, Tuple


def popcount(mask: int) -> int:
    """Number of elements in a set."""
    return bin(mask).count("1")


def members(mask: int) -> List[int]:
    """Ascending list of elements in a set."""
    result = []
    index = 0
    while mask:
        if mask & 1:
            result.append(index)
        mask >>= 1
        index += 1
    return result


def mask_of(elements: Iterable[int]) -> int:
    """Set of distinct non-negative elements."""
    mask = 0
    for element in elements:
        if element < 0:
            raise ValueError(f"Negative element: {element}")
        if mask >> element & 1:
            raise ValueError(f"Repeated element: {element}")
        mask |= 1 << element
    return mask


def full_mask(n: int) -> int:
    return (1 << n) - 1


def lowest(mask: int) -> int:
    """Index of the smallest element of a non-empty set."""
    if not mask:
        raise ValueError("Empty set has no lowest element.")
    return (mask & -mask).bit_length() - 1


def submasks(mask: int) -> Iterator[int]:
    """
    Iterate over all subsets of a set in ascending numeric order.

    Yields the empty set first and the set itself last.
    """
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def set_partitions(mask: int) -> Iterator[List[int]]:
    """
    Iterate over all partitions of a set into non-empty blocks.

    Blocks of every partition are ordered by their lowest element.
    The number of yielded partitions is the Bell number of the set size.
    """
    if not mask:
        yield []
        return
    low = mask & -mask
    rest = mask ^ low
    for sub in submasks(rest):
        for tail in set_partitions(rest ^ sub):
            yield [low | sub, *tail]


def integer_partitions(
    n: int, max_part: Optional[int] = None
) -> Iterator[Tuple[int, ...]]:
    """
    Iterate over all multisets of positive integers summing to *n*.

    Parts are yielded in non-increasing order.
    """
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(max_part, 0, -1):
        for rest in integer_partitions(n - first, first):
            yield (first, *rest)


def format_mask(mask: int) -> str:
    """Render a set as ``{0,2,5}``."""
    return "{" + ",".join(map(str, members(mask))) + "}"



def truncate_str(v: str, max_length: int = 80) -> str:
    """Trim the given text if too long."""
    if len(v) <= max_length:
        return v
    head = max_length * 2 // 3
    tail = max_length - head - 3
    return v[:head] + "..." + v[-tail:]
