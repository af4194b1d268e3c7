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
Online serving of requests under a disjoint service function.

Every part of the partition keeps a counter of the delay its pending
requests have accumulated. When the counter reaches the cost of the part,
all pending requests of the part are served together.

Time is continuous. The simulator computes the exact time
at which the next counter reaches its part cost, while the algorithm itself
reads only the delay accumulated up to the current time through
a :class:`.DelayObserver`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from jrplab.core import Partition, ServiceFunction
from jrplab.exact import RatLike
from jrplab.observers import DelayObserver, ExactObserver
from jrplab.streams import Request, RequestStream, accumulated_delay
from jrplab.utils import format_mask

logger = logging.getLogger("jrplab")


@dataclass(frozen=True)
class Service:
    """Requests served together at one time."""

    time: Fraction
    requests: Tuple[int, ...]

    #: Types of the served requests.
    types: int

    #: Cost charged by the service function of the schedule.
    cost: Fraction

    #: Part that fired, for services of the online algorithm.
    part: Optional[int] = None

    #: Cost charged by the disjoint function, for services of the online algorithm.
    g_cost: Optional[Fraction] = None

    def __str__(self) -> str:
        return f"t={self.time} types={format_mask(self.types)} cost={self.cost}"


@dataclass(frozen=True)
class ServiceSchedule:
    """
    Sequence of services with cost accounting.

    The total cost is the service cost of all services plus the delay
    of every served request up to its completion.
    """

    services: Tuple[Service, ...] = ()

    #: Completion time of every served request.
    completions: Mapping[int, Fraction] = field(default_factory=dict)

    #: Delay paid by every served request.
    delays: Mapping[int, Fraction] = field(default_factory=dict)

    #: Requests left pending when the simulation stopped.
    unserved: Tuple[int, ...] = ()

    #: Costs of the parts, for schedules of the online algorithm.
    part_costs: Tuple[Fraction, ...] = ()

    @property
    def service_cost(self) -> Fraction:
        return sum((s.cost for s in self.services), Fraction(0))

    @property
    def g_service_cost(self) -> Fraction:
        """Service cost charged by the disjoint function."""
        return sum(
            (s.cost if s.g_cost is None else s.g_cost for s in self.services),
            Fraction(0),
        )

    @property
    def delay_cost(self) -> Fraction:
        return sum(self.delays.values(), Fraction(0))

    @property
    def total_cost(self) -> Fraction:
        return self.service_cost + self.delay_cost

    @property
    def g_total_cost(self) -> Fraction:
        return self.g_service_cost + self.delay_cost

    def firings(self, part: int) -> int:
        """Number of services of a part."""
        return sum(1 for s in self.services if s.part == part)

    def part_delay(self, part: int) -> Fraction:
        """Delay paid by requests served by a part."""
        return sum(
            (
                self.delays[q]
                for s in self.services
                if s.part == part
                for q in s.requests
            ),
            Fraction(0),
        )

    def recosted(self, f: ServiceFunction) -> ServiceSchedule:
        """The same services charged by *f*; disjoint charges are kept."""
        services = tuple(
            Service(
                s.time,
                s.requests,
                s.types,
                f(s.types),
                s.part,
                s.cost if s.g_cost is None else s.g_cost,
            )
            for s in self.services
        )
        return ServiceSchedule(
            services, self.completions, self.delays, self.unserved, self.part_costs
        )


def interval_lower_bound(schedule: ServiceSchedule) -> Fraction:
    """
    Lower bound on the optimum of the disjoint instance.

    Between two consecutive services of a part, an optimal schedule either
    serves the part or pays its cost in delay, so every service of
    part *i* certifies ``c_i`` of optimal cost.
    """
    return sum(
        (schedule.firings(i) * c for i, c in enumerate(schedule.part_costs)),
        Fraction(0),
    )


def _crossing(
    pending: Sequence[Request], target: Fraction, now: Fraction
) -> Optional[Fraction]:
    """
    Earliest time from *now* at which the pending requests accumulate
    *target* delay, or ``None`` when they never do.
    """
    value = accumulated_delay(pending, now)
    if value >= target:
        return now
    times = sorted({b for q in pending for b in q.breakpoints() if b > now})
    previous = now
    for t in times:
        reached = accumulated_delay(pending, t)
        if reached >= target:
            slope = (reached - value) / (t - previous)
            return previous + (target - value) / slope
        previous, value = t, reached
    slope = sum((q.delay.slope for q in pending), Fraction(0))
    if slope == 0:
        return None
    return previous + (target - value) / slope


def run_disjoint_online(
    g: Partition,
    stream: RequestStream,
    *,
    horizon: Optional[RatLike] = None,
    observer: Optional[DelayObserver] = None,
) -> ServiceSchedule:
    """
    Serve a request stream by the delay-counter algorithm.

    Each part fires at the earliest time its pending requests have
    accumulated delay equal to its cost. Events at the same time are
    processed arrivals first, then firing parts in ascending order.

    :param horizon: stop this long after the last arrival;
        requests still pending are reported as unserved
    :param observer: source of delay observations for the algorithm
    """
    stream.check_universe(g.universe)
    if observer is None:
        observer = ExactObserver()
    bounded = stream.bounded_requests()
    if bounded:
        logger.warning(
            f"{len(bounded)} requests have bounded delay and may stay unserved."
        )
    if stream.last_arrival is None:
        return ServiceSchedule(part_costs=g.costs)
    end = None if horizon is None else stream.last_arrival + Fraction(horizon)
    arrivals = list(stream)
    next_arrival = 0
    pending: List[List[Request]] = [[] for _ in g.parts]
    services: List[Service] = []
    completions: Dict[int, Fraction] = {}
    delays: Dict[int, Fraction] = {}
    now = arrivals[0].arrival
    while True:
        candidates = []
        if next_arrival < len(arrivals):
            candidates.append(arrivals[next_arrival].arrival)
        for i, requests in enumerate(pending):
            if requests:
                t = _crossing(requests, g.costs[i], now)
                if t is not None:
                    candidates.append(t)
        if not candidates:
            break
        now = min(candidates)
        if end is not None and now > end:
            break
        observer.advance(now)
        while next_arrival < len(arrivals) and arrivals[next_arrival].arrival == now:
            q = arrivals[next_arrival]
            pending[g.part_of(q.type)].append(q)
            next_arrival += 1
        for i, requests in enumerate(pending):
            if not requests:
                continue
            if observer.accumulated_delay(requests, now) < g.costs[i]:
                continue
            types = 0
            for q in requests:
                types |= 1 << q.type
                completions[q.id] = now
                delays[q.id] = q.delay_at(now)
            service = Service(
                now, tuple(q.id for q in requests), types, g.costs[i], i, g.costs[i]
            )
            logger.debug(f"Part {i} fired: {service}")
            services.append(service)
            pending[i] = []
    unserved = tuple(sorted(q.id for requests in pending for q in requests))
    if unserved:
        logger.warning(f"{len(unserved)} requests left unserved at time {now}.")
    schedule = ServiceSchedule(tuple(services), completions, delays, unserved, g.costs)
    logger.info(
        f"Online run: {len(services)} services for {len(stream)} requests,"
        f" cost {schedule.total_cost}."
    )
    return schedule


def reduce_and_run(
    f: ServiceFunction,
    p: Partition,
    stream: RequestStream,
    *,
    horizon: Optional[RatLike] = None,
    observer: Optional[DelayObserver] = None,
) -> ServiceSchedule:
    """
    Serve a stream under *f* by running the online algorithm on a partition.

    Services fired by the disjoint algorithm are charged by *f*;
    the disjoint charges stay available as ``g_cost``.
    Raises :class:`.ValidationError` unless every part costs ``f(part)``.
    """
    p.check_costs(f)
    schedule = run_disjoint_online(p, stream, horizon=horizon, observer=observer)
    return schedule.recosted(f)
