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
Optimal offline schedules for small request streams.

An offline schedule groups requests into batches. Delay functions
are non-decreasing, so a batch is best served at the latest arrival
among its members, and the optimum is a minimum over batchings.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from jrplab.core import ServiceFunction
from jrplab.engine import Service, ServiceSchedule
from jrplab.exceptions import DomainError, SizeLimitError
from jrplab.streams import Request, RequestStream
from jrplab.utils import full_mask, lowest, members, set_partitions, submasks

logger = logging.getLogger("jrplab")

#: Cap on the number of requests for the subset dynamic program.
MAX_OPT_REQUESTS = 12

#: Cap on the number of requests for the enumeration of batchings.
MAX_BELL_REQUESTS = 10


class _Batches:
    """Cost of serving every subset of requests as one batch."""

    def __init__(self, f: ServiceFunction, requests: Sequence[Request]) -> None:
        self.f = f
        self.requests = requests
        size = 1 << len(requests)
        self.types = [0] * size
        self.time = [Fraction(0)] * size
        self.cost = [Fraction(0)] * size
        for mask in range(1, size):
            low = lowest(mask)
            rest = mask ^ (1 << low)
            q = requests[low]
            self.types[mask] = self.types[rest] | 1 << q.type
            self.time[mask] = max(self.time[rest], q.arrival) if rest else q.arrival
        for mask in range(1, size):
            t = self.time[mask]
            delay = sum(
                (requests[i].delay_at(t) for i in members(mask)), Fraction(0)
            )
            self.cost[mask] = f(self.types[mask]) + delay

    def schedule(self, batches: Sequence[int]) -> ServiceSchedule:
        services = []
        completions: Dict[int, Fraction] = {}
        delays: Dict[int, Fraction] = {}
        for mask in batches:
            t = self.time[mask]
            served = [self.requests[i] for i in members(mask)]
            for q in served:
                completions[q.id] = t
                delays[q.id] = q.delay_at(t)
            ids = tuple(sorted(q.id for q in served))
            types = self.types[mask]
            services.append(Service(t, ids, types, self.f(types)))
        services.sort(key=lambda s: (s.time, s.requests))
        return ServiceSchedule(tuple(services), completions, delays)


def _opt_dp(batches: _Batches, n: int) -> Tuple[Fraction, List[int]]:
    size = 1 << n
    best: List[Fraction] = [Fraction(0)] * size
    choice = [0] * size
    for mask in range(1, size):
        low = 1 << lowest(mask)
        rest = mask ^ low
        value: Optional[Fraction] = None
        for sub in submasks(rest):
            batch = sub | low
            candidate = batches.cost[batch] + best[mask ^ batch]
            if value is None or candidate < value:
                value, choice[mask] = candidate, batch
        assert value is not None
        best[mask] = value
    picked = []
    mask = size - 1
    while mask:
        picked.append(choice[mask])
        mask ^= choice[mask]
    return best[size - 1], picked


def _opt_bell(batches: _Batches, n: int) -> Tuple[Fraction, List[int]]:
    best: Optional[Tuple[Fraction, List[int]]] = None
    for blocks in set_partitions(full_mask(n)):
        value = sum((batches.cost[b] for b in blocks), Fraction(0))
        if best is None or value < best[0]:
            best = (value, blocks)
    assert best is not None
    return best


def offline_opt(
    f: ServiceFunction, stream: RequestStream, *, method: str = "dp"
) -> Tuple[Fraction, ServiceSchedule]:
    """
    Cost of an optimal offline schedule, with the schedule itself.

    :param method: ``"dp"`` for the dynamic program over subsets of requests,
        ``"bell"`` for the enumeration of all batchings
    """
    stream.check_universe(f.universe)
    requests = list(stream)
    if method == "dp":
        limit, solve = MAX_OPT_REQUESTS, _opt_dp
    elif method == "bell":
        limit, solve = MAX_BELL_REQUESTS, _opt_bell
    else:
        raise ValueError(f"Unknown method: {method!r}")
    if len(requests) > limit:
        raise SizeLimitError("Offline optimum requests", len(requests), limit)
    if not requests:
        return Fraction(0), ServiceSchedule()
    batches = _Batches(f, requests)
    value, picked = solve(batches, len(requests))
    schedule = batches.schedule(picked)
    assert schedule.total_cost == value
    logger.info(
        f"Offline optimum of {len(requests)} requests ({method}): {value}"
        f" in {len(picked)} services"
    )
    return value, schedule


def competitive_ratio(alg_cost: Fraction, opt_cost: Fraction) -> Optional[Fraction]:
    """
    Exact ratio of two costs; ``None`` stands for an infinite ratio.

    Two zero costs have ratio 1.
    """
    if opt_cost < 0 or alg_cost < 0:
        raise DomainError(f"Costs must be non-negative: {alg_cost}, {opt_cost}")
    if opt_cost == 0:
        return Fraction(1) if alg_cost == 0 else None
    return Fraction(alg_cost) / Fraction(opt_cost)
