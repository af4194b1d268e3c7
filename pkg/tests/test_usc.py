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


from fractions import Fraction

import pytest

from jrplab.core import ExplicitFunction, PartTag, SymmetricFunction
from jrplab.exact import Surd
from jrplab.exceptions import (
    CoverageError,
    DomainError,
    MalformedSpecError,
    SizeLimitError,
    ValidationError,
)
from jrplab.stretch import stretch
from jrplab.usc import (
    Assignment,
    SetSystem,
    assignment_stretch,
    assignment_to_partition,
    gen_jia_tight,
    opt_set_cover,
    power_set_system,
    subadditive_to_disjoint,
    usc_greedy,
)


@pytest.fixture(name="system")
def system_fixture():
    return SetSystem(3, [0b011, 0b100, 0b111], [1, 1, 2])


@pytest.fixture(name="pairs")
def pairs_fixture():
    """Both singletons and their union, all of unit cost."""
    return SetSystem(2, [0b01, 0b10, 0b11], [1, 1, 1])


class TestSetSystem:
    def test_malformed(self):
        with pytest.raises(MalformedSpecError):
            SetSystem(2, [0b01], [1, 2])
        with pytest.raises(DomainError):
            SetSystem(2, [0b100], [1])

    def test_uncovered(self):
        sys = SetSystem(3, [0b011], [1])
        assert sys.uncovered() == 0b100
        assert sys.uncovered(0b001) == 0

    def test_rational_cost(self):
        sys = SetSystem(2, [0b01, 0b11], [Fraction(1, 2), Surd.sqrt(2)])
        assert sys.rational_cost(0) == Fraction(1, 2)
        with pytest.raises(DomainError):
            sys.rational_cost(1)


class TestGreedy:
    def test_assignment(self, system):
        a = usc_greedy(system)
        assert a.sets == (0, 0, 1)
        assert a.order == (0, 1)
        assert a.preimage(0) == 0b011
        assert a.used(0b101) == [0, 1]

    def test_prefers_union(self, pairs):
        assert usc_greedy(pairs).sets == (2, 2)

    def test_uncovered(self):
        with pytest.raises(CoverageError) as excinfo:
            usc_greedy(SetSystem(3, [0b011], [1]))
        assert excinfo.value.elements == (2,)
        assert str(excinfo.value) == "Elements not covered by any set: 2"

    def test_assignment_of(self):
        a = Assignment.of([2, 0, 2])
        assert a.order == (2, 0)


class TestPartition:
    def test_covers(self, system):
        p = assignment_to_partition(system, usc_greedy(system))
        assert p.parts == (0b011, 0b100)
        assert p.costs == (1, 1)
        assert p.tags == (PartTag.COVER, PartTag.COVER)

    def test_partial(self, pairs):
        a = Assignment.of([2, 1])
        p = assignment_to_partition(pairs, a)
        assert p.parts == (0b01, 0b10)
        assert p.tags == (PartTag.PARTIAL, PartTag.COVER)

    def test_preimage_priced(self, pairs):
        f = ExplicitFunction(2, [0, Fraction(1, 2), 1, 1])
        p = assignment_to_partition(pairs, Assignment.of([2, 1]), f)
        assert p.costs == (Fraction(1, 2), 1)
        assert p.tags == (PartTag.PREIMAGE, PartTag.COVER)

    @pytest.mark.parametrize("sets", [[0], [1, 1], [0, 5]])
    def test_invalid_assignment(self, pairs, sets):
        with pytest.raises(ValidationError):
            assignment_to_partition(pairs, Assignment.of(sets))


class TestOptimum:
    def test_opt_set_cover(self, system):
        assert opt_set_cover(system, 0b101) == 2
        assert opt_set_cover(system, 0b011) == 1
        assert opt_set_cover(system, 0) == 0

    def test_assignment_stretch(self, system, pairs):
        assert assignment_stretch(system, usc_greedy(system)) == (1, 0b001)
        assert assignment_stretch(pairs, Assignment.of([0, 1])) == (2, 0b11)

    def test_assignment_stretch_infinite(self):
        sys = SetSystem(2, [0b01, 0b10, 0b11], [1, 1, 0])
        assert assignment_stretch(sys, Assignment.of([0, 1])) == (None, 0b01)


class TestPipeline:
    def test_pair(self):
        f = ExplicitFunction(2, [0, 1, 1, Fraction(3, 2)])
        p = subadditive_to_disjoint(f)
        assert p.parts == (0b01, 0b10)
        assert p.tags == (PartTag.COVER, PartTag.COVER)
        assert stretch(f, p).ratio == Fraction(4, 3)

    def test_power_set(self):
        sys = power_set_system(SymmetricFunction([0, 2, 3]))
        assert sys.sets == (1, 2, 3)
        assert [c.to_fraction() for c in sys.costs] == [2, 2, 3]

    def test_not_explicit(self):
        with pytest.raises(DomainError):
            subadditive_to_disjoint(SymmetricFunction([0, 1, 2]))

    def test_size_limit(self):
        with pytest.raises(SizeLimitError):
            power_set_system(SymmetricFunction(range(16)))


class TestJiaTight:
    def test_structure(self):
        sys = gen_jia_tight(4)
        assert sys.n == 8
        assert sys.sets == (0b10111, 0b1, 0b10, 0b1100, 0b11110000)
        assert [c.square() for c in sys.costs] == [
            1,
            Fraction(1, 4),
            Fraction(1, 3),
            1,
            4,
        ]

    def test_greedy_order(self):
        assert usc_greedy(gen_jia_tight(4)).order[0] == 0
        perturbed = usc_greedy(gen_jia_tight(4, Fraction(1, 10**6)))
        assert perturbed.order == (1, 2, 3, 4)

    @pytest.mark.parametrize("k,eps", [(1, 0), (4, 1), (4, -1)])
    def test_invalid(self, k, eps):
        with pytest.raises(DomainError):
            gen_jia_tight(k, eps)
