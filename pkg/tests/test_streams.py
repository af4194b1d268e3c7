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

from jrplab.core import Universe
from jrplab.exceptions import DomainError, MalformedSpecError, ValidationError
from jrplab.streams import DelayFunction, Request, RequestStream, accumulated_delay


@pytest.fixture(name="late")
def late_fixture():
    """Delay that starts growing one time unit after the arrival."""
    return DelayFunction([(0, 0), (1, 0), (2, 2)], 1)


@pytest.fixture(name="stream")
def stream_fixture(late):
    linear = DelayFunction.linear(1)
    return RequestStream(
        [
            Request(2, 1, Fraction(1, 2), linear),
            Request(1, 0, 0, late),
            Request(0, 1, Fraction(1, 2), DelayFunction([(0, 0), (1, 1)], 0)),
        ]
    )


class TestDelayFunction:
    def test_evaluate(self, late):
        assert late(0) == 0
        assert late(1) == 0
        assert late(Fraction(3, 2)) == 1
        assert late(2) == 2
        assert late(5) == 5

    def test_inferred_slope(self):
        delay = DelayFunction([(0, 0), (2, 1)])
        assert delay.slope == Fraction(1, 2)
        assert delay(4) == 2
        assert not delay.bounded

    def test_linear(self):
        delay = DelayFunction.linear(3)
        assert delay(Fraction(1, 3)) == 1
        assert delay == DelayFunction([(0, 0)], 3)

    def test_bounded(self):
        delay = DelayFunction([(0, 0), (1, 1)], 0)
        assert delay.bounded
        assert delay(10) == 1

    def test_before_arrival(self, late):
        with pytest.raises(DomainError):
            late(Fraction(-1, 2))

    @pytest.mark.parametrize(
        "points,slope",
        [
            ([], 1),
            ([(1, 0)], 1),
            ([(0, 0), (0, 1)], 1),
            ([(0, 0), (1, 2), (2, 1)], 1),
            ([(0, 0)], None),
            ([(0, 0)], -1),
        ],
    )
    def test_malformed(self, points, slope):
        with pytest.raises(MalformedSpecError):
            DelayFunction(points, slope)

    def test_not_zero_at_arrival(self):
        with pytest.raises(ValidationError):
            DelayFunction([(0, 1), (1, 2)])


class TestRequest:
    def test_delay_at(self, late):
        q = Request(0, 0, 3, late)
        assert q.arrival == Fraction(3)
        assert q.delay_at(5) == 2
        assert q.breakpoints() == [3, 4, 5]


class TestRequestStream:
    def test_ordered(self, stream):
        assert [q.id for q in stream] == [1, 0, 2]
        assert stream.last_arrival == Fraction(1, 2)
        assert len(stream) == 3

    def test_empty(self):
        assert RequestStream().last_arrival is None

    def test_by_id(self, stream):
        assert stream.by_id(2).type == 1
        with pytest.raises(KeyError):
            stream.by_id(7)

    def test_duplicate_ids(self, late):
        with pytest.raises(MalformedSpecError):
            RequestStream([Request(0, 0, 0, late), Request(0, 1, 1, late)])

    def test_negative_arrival(self, late):
        with pytest.raises(MalformedSpecError):
            RequestStream([Request(0, 0, -1, late)])

    def test_check_universe(self, stream):
        stream.check_universe(Universe(2))
        with pytest.raises(DomainError):
            stream.check_universe(Universe(1))

    def test_subsets(self, stream):
        assert [q.id for q in stream.bounded_requests()] == [0]
        assert [q.id for q in stream.without(0)] == [1, 2]
        assert [q.id for q in stream.restricted(0b10)] == [0, 2]


class TestAccumulatedDelay:
    def test_sum(self, stream):
        assert accumulated_delay(stream, 2) == Fraction(9, 2)

    def test_before_arrival(self, stream):
        with pytest.raises(DomainError):
            accumulated_delay(stream, Fraction(1, 4))
