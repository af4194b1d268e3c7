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

from jrplab.core import ExplicitFunction, Partition, Universe
from jrplab.engine import run_disjoint_online
from jrplab.exceptions import DomainError, SizeLimitError
from jrplab.generators import (
    gen_random_disjoint,
    gen_random_stream,
    gen_random_subadditive,
    gen_touitou,
)
from jrplab.offline import competitive_ratio, offline_opt
from jrplab.streams import DelayFunction, Request, RequestStream


def _linear(*arrivals):
    delay = DelayFunction.linear(1)
    return RequestStream(
        Request(i, t, Fraction(a), delay) for i, (t, a) in enumerate(arrivals)
    )


@pytest.fixture(name="pair")
def pair_fixture():
    return ExplicitFunction(2, [0, 1, 1, Fraction(3, 2)])


class TestOfflineOpt:
    def test_joint(self, pair):
        value, schedule = offline_opt(pair, _linear((0, 0), (1, 0)))
        assert value == Fraction(3, 2)
        assert len(schedule.services) == 1
        assert schedule.services[0].types == 0b11

    def test_separate(self, pair):
        value, schedule = offline_opt(pair, _linear((0, 0), (0, 2)))
        assert value == 2
        assert [s.time for s in schedule.services] == [0, 2]
        assert schedule.delay_cost == 0

    def test_waits_for_cheap_batch(self, pair):
        value, schedule = offline_opt(
            pair, _linear((0, 0), (1, Fraction(1, 4)))
        )
        assert value == Fraction(7, 4)
        assert schedule.completions == {0: Fraction(1, 4), 1: Fraction(1, 4)}

    def test_empty(self, pair):
        value, schedule = offline_opt(pair, RequestStream())
        assert value == 0
        assert schedule.services == ()

    @pytest.mark.parametrize("seed", range(4))
    def test_methods_agree(self, seed):
        f = gen_random_subadditive(3, seed)
        stream = gen_random_stream(3, 7, seed)
        dp, _ = offline_opt(f, stream)
        bell, _ = offline_opt(f, stream, method="bell")
        assert dp == bell

    def test_touitou(self):
        inst = gen_touitou(3, 2)
        value, _ = offline_opt(inst.tree, inst.stream)
        assert value <= inst.opt_bound == 4

    def test_unknown_method(self, pair):
        with pytest.raises(ValueError):
            offline_opt(pair, _linear((0, 0)), method="greedy")

    def test_size_limits(self, pair):
        stream = _linear(*[(0, i) for i in range(13)])
        with pytest.raises(SizeLimitError):
            offline_opt(pair, stream)
        with pytest.raises(SizeLimitError):
            offline_opt(pair, stream.without(12).without(11), method="bell")


@pytest.fixture(name="disjoint", params=range(12))
def disjoint_fixture(request):
    seed = request.param
    n = 1 + seed % 4
    g = gen_random_disjoint(n, seed)
    return g, gen_random_stream(n, 6, seed + 100)


def _part_function(g, part, cost):
    """Charges *cost* to every set hitting *part*."""
    return ExplicitFunction(g.n, [cost if m & part else 0 for m in range(1 << g.n)])


class TestOptStructure:
    def test_monotone_in_requests(self, disjoint):
        g, stream = disjoint
        value, _ = offline_opt(g, stream)
        for q in stream:
            smaller, _ = offline_opt(g, stream.without(q.id))
            assert smaller <= value

    def test_decomposes_over_parts(self, disjoint):
        g, stream = disjoint
        p = g.partition
        total = sum(
            (
                offline_opt(_part_function(g, part, cost), stream.restricted(part))[0]
                for part, cost in zip(p.parts, p.costs)
            ),
            Fraction(0),
        )
        assert offline_opt(g, stream)[0] == total


class TestCompetitiveRatio:
    def test_single_request(self):
        single = Partition(Universe(1), (0b1,), (Fraction(1),))
        stream = _linear((0, 0))
        alg = run_disjoint_online(single, stream).total_cost
        f = ExplicitFunction(1, [0, 1])
        opt, _ = offline_opt(f, stream)
        assert (alg, opt) == (2, 1)
        assert competitive_ratio(alg, opt) == 2

    def test_zero(self):
        assert competitive_ratio(Fraction(0), Fraction(0)) == 1
        assert competitive_ratio(Fraction(1), Fraction(0)) is None

    def test_negative(self):
        with pytest.raises(DomainError):
            competitive_ratio(Fraction(-1), Fraction(1))
