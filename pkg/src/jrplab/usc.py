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
Universal set cover.

Every element is assigned to one covering set in advance. The greedy
assignment repeatedly picks the set minimizing ``c(S) / sqrt(|S ∩ U|)``
over the still unassigned elements ``U``. Preimages of an assignment
form a partition, which turns any explicit subadditive function
into a disjoint one.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from jrplab.core import (
    MAX_EXHAUSTIVE_N,
    ExplicitFunction,
    Partition,
    PartTag,
    ServiceFunction,
    Universe,
)
from jrplab.exact import RatLike, Surd
from jrplab.exceptions import (
    CoverageError,
    DomainError,
    MalformedSpecError,
    SizeLimitError,
    ValidationError,
)
from jrplab.utils import format_mask, lowest, members, popcount

logger = logging.getLogger("jrplab")

#: Largest universe for which the power-set pipeline is built.
MAX_PIPELINE_N = 14

CostLike = Union[Surd, RatLike]


def _as_surd(value: CostLike) -> Surd:
    if isinstance(value, Surd):
        return value
    return Surd.of(value)


class SetSystem:
    """
    Collection of subsets of a universe, each with a non-negative cost.

    Costs are :class:`.Surd` values, so square roots of rationals
    are represented exactly.
    """

    universe: Universe
    sets: Tuple[int, ...]
    costs: Tuple[Surd, ...]

    def __init__(self, n: int, sets: Sequence[int], costs: Sequence[CostLike]) -> None:
        self.universe = Universe(n)
        if len(sets) != len(costs):
            raise MalformedSpecError(
                f"Set system has {len(sets)} sets but {len(costs)} costs."
            )
        for s in sets:
            self.universe.check(s)
        self.sets = tuple(sets)
        self.costs = tuple(_as_surd(c) for c in costs)

    def __repr__(self) -> str:
        return f"<{type(self).__name__}: n={self.n}, sets={len(self.sets)}>"

    def __len__(self) -> int:
        return len(self.sets)

    @property
    def n(self) -> int:
        return self.universe.n

    def uncovered(self, mask: Optional[int] = None) -> int:
        """Elements of *mask* (default: the universe) in no set."""
        if mask is None:
            mask = self.universe.full
        for s in self.sets:
            mask &= ~s
        return mask

    def rational_cost(self, index: int) -> Fraction:
        cost = self.costs[index]
        if not cost.is_rational:
            raise DomainError(f"Set {index} has irrational cost {cost}.")
        return cost.to_fraction()


@dataclass(frozen=True)
class Assignment:
    """
    Covering set assigned to every element.

    ``sets[e]`` is an index into the collection of the set system.
    """

    sets: Tuple[int, ...]

    #: Used set indices in the order they were chosen.
    order: Tuple[int, ...]

    @classmethod
    def of(cls, sets: Sequence[int]) -> Assignment:
        """Assignment with the order of first use by ascending element."""
        order: List[int] = []
        for index in sets:
            if index not in order:
                order.append(index)
        return cls(tuple(sets), tuple(order))

    def preimage(self, index: int) -> int:
        """Elements assigned to the set *index*."""
        mask = 0
        for e, s in enumerate(self.sets):
            if s == index:
                mask |= 1 << e
        return mask

    def used(self, mask: int) -> List[int]:
        """Distinct sets assigned to the elements of *mask*, ascending."""
        return sorted({self.sets[e] for e in members(mask)})


def usc_greedy(sys: SetSystem) -> Assignment:
    """
    Greedy universal set cover assignment.

    Ties are broken by the lowest collection index.
    """
    missing = sys.uncovered()
    if missing:
        raise CoverageError(members(missing))
    squares = [c.square() for c in sys.costs]
    assigned: List[Optional[int]] = [None] * sys.n
    order: List[int] = []
    pending = sys.universe.full
    while pending:
        best: Optional[int] = None
        best_size = 0
        for index, s in enumerate(sys.sets):
            size = popcount(s & pending)
            if not size:
                continue
            # c(S)^2 / size < c(best)^2 / best_size
            if best is None or squares[index] * best_size < squares[best] * size:
                best, best_size = index, size
        assert best is not None
        chosen = sys.sets[best] & pending
        for e in members(chosen):
            assigned[e] = best
        order.append(best)
        pending &= ~chosen
        logger.debug(f"USC greedy: set {best} covers {format_mask(chosen)}")
    logger.info(f"USC greedy: {len(order)} sets cover {sys.n} elements.")
    return Assignment(tuple(e for e in assigned if e is not None), tuple(order))


def _check_assignment(sys: SetSystem, a: Assignment) -> None:
    if len(a.sets) != sys.n:
        raise ValidationError(f"Assignment covers {len(a.sets)} of {sys.n} elements.")
    for e, index in enumerate(a.sets):
        if not 0 <= index < len(sys) or not sys.sets[index] >> e & 1:
            raise ValidationError(f"Element {e} is not in its assigned set {index}.")


def assignment_to_partition(
    sys: SetSystem, a: Assignment, f: Optional[ServiceFunction] = None
) -> Partition:
    """
    Partition of the universe into preimages of an assignment.

    A preimage equal to its set costs ``c(S)``. A smaller preimage is priced
    by *f* when given; without *f* it keeps ``c(S)`` and is tagged partial.
    """
    _check_assignment(sys, a)
    parts, costs, tags = [], [], []
    for index in a.order:
        part = a.preimage(index)
        if not part:
            continue
        parts.append(part)
        if part == sys.sets[index]:
            costs.append(sys.rational_cost(index))
            tags.append(PartTag.COVER)
        elif f is not None:
            costs.append(f(part))
            tags.append(PartTag.PREIMAGE)
        else:
            costs.append(sys.rational_cost(index))
            tags.append(PartTag.PARTIAL)
    return Partition(sys.universe, tuple(parts), tuple(costs), tuple(tags))


def power_set_system(f: ServiceFunction) -> SetSystem:
    """Set system of all non-empty subsets priced by *f*."""
    if f.n > MAX_PIPELINE_N:
        raise SizeLimitError("Power-set system", f.n, MAX_PIPELINE_N)
    subsets = range(1, 1 << f.n)
    return SetSystem(f.n, list(subsets), [f(s) for s in subsets])


def subadditive_to_disjoint(f: ExplicitFunction) -> Partition:
    """
    Approximate an explicit subadditive function by a disjoint one.

    Runs the greedy assignment on the power-set system of *f*;
    the parts are priced by *f*.
    """
    if not isinstance(f, ExplicitFunction):
        raise DomainError(f"Power-set pipeline needs an explicit table, got {f.kind}.")
    sys = power_set_system(f)
    return assignment_to_partition(sys, usc_greedy(sys), f)


def _opt_table(sys: SetSystem, target: int) -> Dict[int, Fraction]:
    missing = sys.uncovered(target)
    if missing:
        raise CoverageError(members(missing))
    if popcount(target) > MAX_EXHAUSTIVE_N:
        raise SizeLimitError("Set cover target", popcount(target), MAX_EXHAUSTIVE_N)
    relevant = [(s & target, sys.rational_cost(i)) for i, s in enumerate(sys.sets)]
    relevant = [(s, c) for s, c in relevant if s]
    best: Dict[int, Fraction] = {0: Fraction(0)}
    sub = 0
    # Ascending submasks: every smaller remainder is solved first.
    while sub != target:
        sub = (sub - target) & target
        low = 1 << lowest(sub)
        best[sub] = min(c + best[sub & ~s] for s, c in relevant if s & low)
    return best


def opt_set_cover(sys: SetSystem, X: int) -> Fraction:
    """Cost of a cheapest subfamily covering *X*."""
    sys.universe.check(X)
    return _opt_table(sys, X)[X]


def assignment_stretch(sys: SetSystem, a: Assignment) -> Tuple[Optional[Fraction], int]:
    """
    Largest ratio of the assigned cover cost to the optimal cover cost.

    Returns the ratio with its witness set; ``None`` stands for an
    infinite ratio, when some set of optimal cost zero is assigned
    to positive cost sets.
    """
    _check_assignment(sys, a)
    table = _opt_table(sys, sys.universe.full)
    worst: Optional[Fraction] = Fraction(0)
    witness = 0
    for X in range(1, 1 << sys.n):
        assigned = sum((sys.rational_cost(i) for i in a.used(X)), Fraction(0))
        opt = table[X]
        if opt == 0:
            if assigned == 0:
                continue
            return None, X
        ratio = assigned / opt
        if worst is not None and ratio > worst:
            worst, witness = ratio, X
    return worst, witness


def gen_jia_tight(k: int, eps: RatLike = 0) -> SetSystem:
    """
    Set system on which the greedy assignment has stretch growing
    as ``sqrt(k) * log(k)``.

    The collection is ``[S, S_1, ..., S_k]``. Set ``S_i`` holds
    ``floor(k / (k - i + 1))`` consecutive elements and ``S`` holds
    the first element of every ``S_i``. ``c(S) = 1`` and
    ``c(S_i)**2 = |S_i| / (k - i + 1) * (1 - eps)``; a small positive
    *eps* makes the greedy prefer ``S_i`` over ``S``.
    """
    if k < 2:
        raise DomainError(f"Tight instance needs k >= 2, got {k}")
    eps = Fraction(eps)
    if not 0 <= eps < 1:
        raise DomainError(f"Perturbation must lie in [0, 1): {eps}")
    blocks = []
    start = 0
    for i in range(1, k + 1):
        size = k // (k - i + 1)
        blocks.append(((1 << size) - 1) << start)
        start += size
    big = 0
    for block in blocks:
        big |= 1 << lowest(block)
    costs: List[Surd] = [Surd.of(1)]
    for i, block in enumerate(blocks, start=1):
        costs.append(Surd.sqrt(Fraction(popcount(block), k - i + 1) * (1 - eps)))
    return SetSystem(start, [big, *blocks], costs)
