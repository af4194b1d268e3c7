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
Generators of adversarial and random instances.

Random generators are deterministic given the seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from jrplab.core import (
    DisjointFunction,
    ExplicitFunction,
    Partition,
    SymmetricFunction,
    Universe,
)
from jrplab.exact import RatLike, as_fraction, ln_bracket
from jrplab.exceptions import DomainError
from jrplab.mla import MlaInstance
from jrplab.streams import DelayFunction, Request, RequestStream
from jrplab.utils import members
from jrplab.weighted import WeightedSymmetric, build_affine_envelope

#: Default denominator of the rational edge cost of the Touitou tree.
TOUITOU_PRECISION = 10 ** 6


@dataclass(frozen=True)
class TouitouInstance:
    """
    Two-level tree forcing counter-based algorithms to overpay.

    A chain node of cost 1 gets expensive requests every step while
    its cheap children get requests with tiny delay. An algorithm
    serving the children together with their parent pays the children
    every step, while an optimal schedule flushes them rarely.
    """

    tree: MlaInstance
    stream: RequestStream

    #: Cost of each child of the chain node, a rational lower approximation.
    w: Fraction

    #: Delay slope of requests at the children.
    eps: Fraction

    #: Cost of the schedule serving all nodes every step.
    alg_ref: Fraction

    #: Cost of the schedule flushing the children every ``w / eps`` steps.
    opt_ref: Fraction

    #: Upper bound on the optimum.
    opt_bound: Fraction

    @property
    def ratio_ref(self) -> Fraction:
        return self.alg_ref / self.opt_ref


def touitou_weight(n: int, precision: int = TOUITOU_PRECISION) -> Fraction:
    """
    Rational lower approximation of ``(sqrt(n ln n) - 1) / (n - 1)``.

    The error is below ``1 / precision``: the logarithm is bracketed
    to ``1 / (n * precision)`` and the root rounded down to ``1 / precision``.
    """
    if n < 3:
        raise DomainError(f"Touitou tree needs at least 3 children: {n}")
    log_n, _ = ln_bracket(n, n * precision)
    radicand = n * log_n * precision * precision
    root = Fraction(math.isqrt(radicand.numerator // radicand.denominator), precision)
    return (root - 1) / (n - 1)


def gen_touitou(
    n: int,
    tau: int,
    eps: Optional[RatLike] = None,
    *,
    precision: int = TOUITOU_PRECISION,
) -> TouitouInstance:
    """
    Tree with root ``0`` of cost 0, node ``1`` of cost 1 and nodes ``2..n``
    of cost *w* below node ``1``, with one request per node ``1..n``
    at every step ``1..tau``.

    :param eps: delay slope at nodes ``2..n``; defaults to ``w / n``
    """
    if tau < 1:
        raise DomainError(f"Number of steps must be positive: {tau}")
    w = touitou_weight(n, precision)
    slope = w / n if eps is None else as_fraction(eps)
    if slope <= 0:
        raise DomainError(f"Delay slope must be positive: {slope}")
    parent: List[Optional[int]] = [None, 0] + [1] * (n - 1)
    tree = MlaInstance(parent, [0, 1] + [w] * (n - 1))
    requests = []
    for step in range(1, tau + 1):
        for node in range(1, n + 1):
            delay = DelayFunction.linear(2 if node == 1 else slope)
            requests.append(Request(len(requests), node, Fraction(step), delay))
    per_step = 1 + (n - 1) * w
    return TouitouInstance(
        tree=tree,
        stream=RequestStream(requests),
        w=w,
        eps=slope,
        alg_ref=tau * per_step,
        opt_ref=tau + slope * tau / w * per_step,
        opt_bound=Fraction(2 * tau),
    )


def gen_random_mla(
    n: int, seed: int, cost_range: Tuple[int, int] = (1, 10)
) -> MlaInstance:
    """Random tree with integer costs; every node hangs below a smaller index."""
    rng = random.Random(seed)
    low, high = cost_range
    parent: List[Optional[int]] = [None] + [rng.randrange(v) for v in range(1, n)]
    costs = [rng.randint(low, high) for _ in range(n)]
    return MlaInstance(parent, costs)


def gen_random_symmetric(n: int, seed: int) -> SymmetricFunction:
    """Concave symmetric function with non-increasing integer increments."""
    rng = random.Random(seed)
    increments = sorted((rng.randint(1, 10) for _ in range(n)), reverse=True)
    values = [0]
    for step in increments:
        values.append(values[-1] + step)
    return SymmetricFunction(values)


def gen_random_subadditive(n: int, seed: int, *, count: int = 3) -> ExplicitFunction:
    """Maximum of *count* random additive functions."""
    rng = random.Random(seed)
    weights = [[rng.randint(1, 9) for _ in range(n)] for _ in range(count)]
    table = [
        max(sum(ws[e] for e in members(mask)) for ws in weights)
        for mask in range(1 << n)
    ]
    return ExplicitFunction(n, table)


def gen_random_scalar_subadditive(W: int, seed: int) -> List[Fraction]:
    """
    Samples at ``0..W`` of a random monotone subadditive scalar function:
    a capped line plus a staircase plus a line.
    """
    rng = random.Random(seed)
    cap_slope = rng.randint(1, 5)
    cap = rng.randint(1, W)
    step = rng.randint(0, 3)
    width = rng.randint(1, W)
    slope = Fraction(rng.randint(0, 4), 2)
    return [
        cap_slope * min(x, cap) + step * -(-x // width) + slope * x
        for x in range(W + 1)
    ]


def gen_random_weighted(
    n: int, seed: int, *, max_weight: int = 64
) -> WeightedSymmetric:
    """Random integer weights with an envelope of a random scalar function."""
    rng = random.Random(seed)
    weights = [rng.randint(1, max_weight) for _ in range(n)]
    W = sum(weights)
    samples = gen_random_scalar_subadditive(W, rng.randrange(2 ** 32))
    return WeightedSymmetric(weights, build_affine_envelope(samples, W))


def gen_random_disjoint(n: int, seed: int, *, max_parts: int = 2) -> DisjointFunction:
    """Random partition into at most *max_parts* parts with integer costs."""
    rng = random.Random(seed)
    parts = _random_parts(rng, n, max_parts)
    costs = [rng.randint(1, 5) for _ in parts]
    return DisjointFunction(Partition(Universe(n), tuple(parts), tuple(costs)))


def gen_random_delay(rng: random.Random) -> DelayFunction:
    """Delay with one to three breakpoints and a positive final slope."""
    points: List[Tuple[Fraction, Fraction]] = [(Fraction(0), Fraction(0))]
    for _ in range(rng.randint(0, 2)):
        t, v = points[-1]
        points.append(
            (t + Fraction(rng.randint(1, 4), 2), v + Fraction(rng.randint(0, 4), 2))
        )
    return DelayFunction(points, Fraction(rng.randint(1, 4), 2))


def gen_random_stream(
    n: int, count: int, seed: int, *, types: Optional[Sequence[int]] = None
) -> RequestStream:
    """
    *count* requests with arrivals on quarter steps of ``[0, 4]``.

    :param types: types to draw from, all types of the universe by default
    """
    rng = random.Random(seed)
    pool = list(range(n)) if types is None else list(types)
    if not pool:
        raise DomainError("No types to draw requests from.")
    requests = [
        Request(
            i, rng.choice(pool), Fraction(rng.randint(0, 16), 4), gen_random_delay(rng)
        )
        for i in range(count)
    ]
    return RequestStream(requests)


def _random_parts(rng: random.Random, n: int, max_parts: int) -> List[int]:
    k = rng.randint(1, min(max_parts, n))
    labels = [rng.randrange(k) for _ in range(n)]
    parts = [sum(1 << e for e in range(n) if labels[e] == i) for i in range(k)]
    return [part for part in parts if part]


def gen_random_partition(n: int, seed: int) -> List[int]:
    """Random partition of ``0..n-1`` into non-empty parts."""
    return _random_parts(random.Random(seed), n, n)
