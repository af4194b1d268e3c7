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
Timed requests with piecewise-linear delay functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from jrplab.core import Universe
from jrplab.exact import RatLike, as_fraction
from jrplab.exceptions import DomainError, MalformedSpecError, ValidationError

Point = Tuple[Fraction, Fraction]


class DelayFunction:
    """
    Non-decreasing piecewise-linear delay.

    Breakpoints are ``(offset, value)`` pairs with offsets measured
    from the arrival of the request. The first breakpoint is at offset 0
    and must have value 0. After the last breakpoint the delay grows
    with *slope*, by default the slope of the last segment.
    """

    points: Tuple[Point, ...]
    slope: Fraction

    def __init__(
        self,
        points: Sequence[Tuple[RatLike, RatLike]],
        slope: Optional[RatLike] = None,
    ) -> None:
        if not points:
            raise MalformedSpecError("Delay function needs a breakpoint.")
        self.points = tuple((as_fraction(t), as_fraction(v)) for t, v in points)
        if self.points[0][0] != 0:
            raise MalformedSpecError("First breakpoint must be at the arrival.")
        if self.points[0][1] != 0:
            raise ValidationError(
                f"Delay must be zero at the arrival, got {self.points[0][1]}."
            )
        for (t0, v0), (t1, v1) in zip(self.points, self.points[1:]):
            if t1 <= t0:
                raise MalformedSpecError("Breakpoints must be strictly increasing.")
            if v1 < v0:
                raise MalformedSpecError("Delay function must be non-decreasing.")
        if slope is None:
            if len(self.points) < 2:
                raise MalformedSpecError("Slope is needed for a single breakpoint.")
            (t0, v0), (t1, v1) = self.points[-2:]
            self.slope = (v1 - v0) / (t1 - t0)
        else:
            self.slope = as_fraction(slope)
        if self.slope < 0:
            raise MalformedSpecError(f"Negative slope: {self.slope}")

    @classmethod
    def linear(cls, slope: RatLike) -> DelayFunction:
        """Delay ``slope * (t - arrival)``."""
        return cls([(0, 0)], slope)

    def __repr__(self) -> str:
        points = " ".join(f"({t},{v})" for t, v in self.points)
        return f"<{type(self).__name__}: {points} slope={self.slope}>"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DelayFunction):
            return NotImplemented
        return self.points == other.points and self.slope == other.slope

    def __hash__(self) -> int:
        return hash((self.points, self.slope))

    @property
    def bounded(self) -> bool:
        """True when the delay stops growing after the last breakpoint."""
        return self.slope == 0

    def __call__(self, offset: RatLike) -> Fraction:
        offset = Fraction(offset)
        if offset < 0:
            raise DomainError(f"Delay queried before the arrival: {offset}")
        previous = self.points[0]
        for point in self.points[1:]:
            if offset <= point[0]:
                (t0, v0), (t1, v1) = previous, point
                return v0 + (v1 - v0) * (offset - t0) / (t1 - t0)
            previous = point
        t_last, v_last = self.points[-1]
        return v_last + self.slope * (offset - t_last)


@dataclass(frozen=True)
class Request:
    """A request of one type arriving at a time."""

    id: int
    type: int
    arrival: Fraction
    delay: DelayFunction

    def __post_init__(self) -> None:
        object.__setattr__(self, "arrival", as_fraction(self.arrival))

    def delay_at(self, t: RatLike) -> Fraction:
        """Delay accumulated by the absolute time *t*."""
        return self.delay(Fraction(t) - self.arrival)

    def breakpoints(self) -> List[Fraction]:
        """Absolute times of the breakpoints."""
        return [self.arrival + offset for offset, _ in self.delay.points]


class RequestStream:
    """
    Requests ordered by arrival, ties by id.

    Request ids are unique.
    """

    requests: Tuple[Request, ...]

    def __init__(self, requests: Iterable[Request] = ()) -> None:
        self.requests = tuple(sorted(requests, key=lambda q: (q.arrival, q.id)))
        ids = [q.id for q in self.requests]
        if len(set(ids)) != len(ids):
            raise MalformedSpecError("Request ids must be unique.")
        for q in self.requests:
            if q.arrival < 0:
                raise MalformedSpecError(f"Request {q.id} arrives before time 0.")

    def __repr__(self) -> str:
        return f"<{type(self).__name__}: {len(self)} requests>"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RequestStream):
            return NotImplemented
        return self.requests == other.requests

    def __hash__(self) -> int:
        return hash(self.requests)

    def __len__(self) -> int:
        return len(self.requests)

    def __iter__(self) -> Iterator[Request]:
        return iter(self.requests)

    def by_id(self, request_id: int) -> Request:
        for q in self.requests:
            if q.id == request_id:
                return q
        raise KeyError(request_id)

    @property
    def last_arrival(self) -> Optional[Fraction]:
        return self.requests[-1].arrival if self.requests else None

    def check_universe(self, universe: Universe) -> None:
        for q in self.requests:
            if not 0 <= q.type < universe.n:
                raise DomainError(
                    f"Request {q.id} has type {q.type} outside of the universe."
                )

    def bounded_requests(self) -> List[Request]:
        """Requests whose delay stops growing; they may never be served."""
        return [q for q in self.requests if q.delay.bounded]

    def without(self, request_id: int) -> RequestStream:
        return RequestStream(q for q in self.requests if q.id != request_id)

    def restricted(self, types: int) -> RequestStream:
        """Requests with types in the set *types*."""
        return RequestStream(q for q in self.requests if types >> q.type & 1)


def accumulated_delay(pending: Iterable[Request], t: RatLike) -> Fraction:
    """Total delay of requests by the time *t*."""
    t = Fraction(t)
    total = Fraction(0)
    for q in pending:
        if t < q.arrival:
            raise DomainError(f"Time {t} is before the arrival of request {q.id}.")
        total += q.delay_at(t)
    return total
