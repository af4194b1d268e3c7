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
Symmetric and weighted symmetric service functions.

A weighted symmetric function depends on the total weight of a set only.
The scalar part is represented by an affine envelope,
the minimum of a few lines with geometrically separated
intercepts and slopes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from jrplab.core import Partition, PartTag, ServiceFunction, SymmetricFunction, Universe
from jrplab.exact import RatLike, as_fraction, ceil_sqrt, exact_sqrt
from jrplab.exceptions import DomainError, MalformedSpecError, ValidationError
from jrplab.utils import full_mask, mask_of, members

logger = logging.getLogger("jrplab")


def ceil_log2(value: int) -> int:
    """Smallest integer k with ``2**k >= value``, for value >= 1."""
    if value < 1:
        raise DomainError(f"Logarithm of non-positive number: {value}")
    return (value - 1).bit_length()


def floor_log2(value: Fraction) -> int:
    """Largest integer i with ``2**i <= value``, for value >= 1."""
    if value < 1:
        raise DomainError(f"Weight below one: {value}")
    return (value.numerator // value.denominator).bit_length() - 1


@dataclass(frozen=True)
class Piece:
    """Affine function ``sigma + x * delta``."""

    sigma: Fraction
    delta: Fraction

    def __call__(self, x: RatLike) -> Fraction:
        return self.sigma + x * self.delta

    def __str__(self) -> str:
        return f"({self.sigma}, {self.delta})"


class AffineEnvelope:
    """
    Minimum of affine pieces over the weights ``0..W``.

    Pieces are ordered by increasing intercept, each intercept more
    than twice the previous one and each slope less than half
    the previous one. At most ``ceil(log2(W)) + 1`` pieces are allowed.
    """

    pieces: Tuple[Piece, ...]

    #: Upper bound on the total weight.
    W: int

    def __init__(self, pieces: Sequence[Tuple[RatLike, RatLike]], W: int) -> None:
        if isinstance(W, bool) or not isinstance(W, int) or W < 1:
            raise MalformedSpecError(f"Total weight must be a positive integer: {W!r}")
        if not pieces:
            raise MalformedSpecError("Envelope needs at least one piece.")
        self.W = W
        self.pieces = tuple(Piece(as_fraction(s), as_fraction(d)) for s, d in pieces)
        for i, piece in enumerate(self.pieces):
            if piece.sigma < 0 or piece.delta < 0:
                raise MalformedSpecError(f"Negative coefficient in piece {i + 1}.")
        for i in range(len(self.pieces) - 1):
            this, next_ = self.pieces[i], self.pieces[i + 1]
            if not next_.sigma > 2 * this.sigma:
                raise MalformedSpecError(
                    f"Intercept of piece {i + 2} is not above twice the previous."
                )
            if not 2 * next_.delta < this.delta:
                raise MalformedSpecError(
                    f"Slope of piece {i + 2} is not below half the previous."
                )
        limit = ceil_log2(W) + 1
        if len(self.pieces) > limit:
            raise MalformedSpecError(
                f"Envelope over weights 0..{W} allows {limit} pieces,"
                f" got {len(self.pieces)}."
            )

    def __repr__(self) -> str:
        listed = ", ".join(map(str, self.pieces))
        return f"<{type(self).__name__}: W={self.W}, pieces={listed}>"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AffineEnvelope):
            return NotImplemented
        return self.pieces == other.pieces and self.W == other.W

    def __hash__(self) -> int:
        return hash((self.pieces, self.W))

    def __len__(self) -> int:
        return len(self.pieces)

    def __call__(self, x: RatLike) -> Fraction:
        return min(piece(x) for piece in self.pieces)

    def piece(self, k: int) -> Piece:
        """Piece with one-based index *k*."""
        if not 1 <= k <= len(self.pieces):
            raise DomainError(f"Piece index {k} outside of 1..{len(self.pieces)}")
        return self.pieces[k - 1]


def charging_piece(env: AffineEnvelope, x: RatLike) -> int:
    """One-based index of the first piece attaining the envelope at *x*."""
    values = [piece(x) for piece in env.pieces]
    return values.index(min(values)) + 1


def crossover_threshold(env: AffineEnvelope, k: int) -> Optional[Fraction]:
    """
    Weight from which the envelope is at least the intercept of piece *k*.

    Returns ``sigma_k / delta_(k-1)``, or ``None`` standing for infinity
    when the previous slope is zero.
    """
    if not 2 <= k <= len(env):
        raise DomainError(f"Crossover needs a piece index in 2..{len(env)}, got {k}")
    previous = env.piece(k - 1)
    if previous.delta == 0:
        return None
    return env.piece(k).sigma / previous.delta


def check_scalar_samples(samples: Sequence[Fraction]) -> None:
    """
    Raise :class:`.ValidationError` unless the samples over ``0..W``
    start at zero and are monotone and subadditive.
    """
    if samples[0] != 0:
        raise ValidationError(f"Scalar function must vanish at 0, got {samples[0]}")
    for x in range(1, len(samples)):
        if samples[x] < samples[x - 1]:
            raise ValidationError(f"Scalar function decreases at {x}.")
    top = len(samples) - 1
    for x in range(1, top // 2 + 1):
        for y in range(x, top - x + 1):
            if samples[x] + samples[y] < samples[x + y]:
                raise ValidationError(
                    f"Scalar function is not subadditive at {x} + {y}:"
                    f" {samples[x]} + {samples[y]} < {samples[x + y]}"
                )


def _upper_hull(samples: Sequence[Fraction]) -> List[Tuple[int, Fraction]]:
    hull: List[Tuple[int, Fraction]] = []
    for point in enumerate(samples):
        while len(hull) >= 2:
            (ox, oy), (ax, ay) = hull[-2], hull[-1]
            bx, by = point
            cross = (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)
            if cross < 0:
                break
            hull.pop()
        hull.append(point)
    return hull


def _round_up_power_of_3(value: Fraction) -> Fraction:
    if value == 0:
        return value
    result = Fraction(1)
    while result < value:
        result *= 3
    while result / 3 >= value:
        result /= 3
    return result


def _reduce(lines: Sequence[Piece], W: int) -> List[Piece]:
    # Drop dominated lines, then lines never minimal on an integer weight.
    ordered = sorted(set(lines), key=lambda p: (p.sigma, p.delta))
    kept: List[Piece] = []
    for line in ordered:
        if kept and kept[-1].delta <= line.delta:
            continue
        kept.append(line)
    needed = set()
    for x in range(W + 1):
        values = [line(x) for line in kept]
        needed.add(values.index(min(values)))
    return [line for i, line in enumerate(kept) if i in needed]


def _gaps_hold(lines: Sequence[Piece]) -> bool:
    return all(
        b.sigma > 2 * a.sigma and 2 * b.delta < a.delta
        for a, b in zip(lines, lines[1:])
    )


def build_affine_envelope(samples: Sequence[RatLike], W: int) -> AffineEnvelope:
    """
    Approximate a monotone subadditive scalar function by an affine envelope.

    :param samples: values of the function at ``0..W``; further samples
        are ignored
    :param W: largest weight the envelope is evaluated at

    The upper concave hull of the samples is at most twice the function.
    Its edges are used as pieces when they already have the required
    gaps. Otherwise intercepts and slopes are rounded up to powers
    of three and redundant pieces removed, so the envelope stays below
    six times the function on every integer weight.
    """
    if W < 1:
        raise DomainError(f"Total weight must be positive: {W}")
    if len(samples) < W + 1:
        raise DomainError(f"Need samples for 0..{W}, got {len(samples)}.")
    values = [as_fraction(v) for v in samples[: W + 1]]
    check_scalar_samples(values)
    hull = _upper_hull(values)
    edges = []
    for (ax, ay), (bx, by) in zip(hull, hull[1:]):
        delta = (by - ay) / (bx - ax)
        edges.append(Piece(ay - ax * delta, delta))
    if _gaps_hold(edges) and len(edges) <= ceil_log2(W) + 1:
        pieces = edges
    else:
        rounded = [
            Piece(_round_up_power_of_3(e.sigma), _round_up_power_of_3(e.delta))
            for e in edges
        ]
        pieces = _reduce(rounded, W)
    logger.debug(f"Envelope over 0..{W}: {len(edges)} edges, {len(pieces)} pieces.")
    return AffineEnvelope([(p.sigma, p.delta) for p in pieces], W)


class WeightedSymmetric(ServiceFunction):
    """
    Service function ``f(S) = g(w(S))`` for an affine envelope *g*.

    Weights are at least one; their total must not exceed
    the weight bound of the envelope.
    """

    kind = "weighted_symmetric"

    _universe: Universe
    _weights: Tuple[Fraction, ...]
    _envelope: AffineEnvelope

    def __init__(self, weights: Sequence[RatLike], envelope: AffineEnvelope) -> None:
        self._universe = Universe(len(weights))
        self._weights = tuple(as_fraction(w) for w in weights)
        for j, w in enumerate(self._weights):
            if w < 1:
                raise MalformedSpecError(f"Weight of type {j} is below one: {w}")
        total = sum(self._weights, Fraction(0))
        if total > envelope.W:
            raise MalformedSpecError(
                f"Total weight {total} exceeds the envelope bound {envelope.W}."
            )
        self._envelope = envelope

    def __repr__(self) -> str:
        return f"<{type(self).__name__}: n={self.n}, pieces={len(self._envelope)}>"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedSymmetric):
            return NotImplemented
        return self._weights == other._weights and self._envelope == other._envelope

    def __hash__(self) -> int:
        return hash((self._weights, self._envelope))

    @property
    def universe(self) -> Universe:
        return self._universe

    @property
    def weights(self) -> Tuple[Fraction, ...]:
        return self._weights

    @property
    def envelope(self) -> AffineEnvelope:
        return self._envelope

    def weight(self, mask: int) -> Fraction:
        return sum((self._weights[j] for j in members(mask)), Fraction(0))

    def _evaluate(self, mask: int) -> Fraction:
        if not mask:
            return Fraction(0)
        return self._envelope(self.weight(mask))


#: Alias naming the instance of the weighted partitioning problem.
WeightedInstance = WeightedSymmetric


@dataclass(frozen=True)
class WeightedPartitionTrace:
    """
    Intermediate sets of the weighted partitioning.

    Classes and pieces are numbered from one, weight buckets ``i``
    hold types with weight in ``[2**i, 2**(i+1))``.
    """

    #: Class of every type.
    classes: Tuple[int, ...]

    #: Types of each non-empty class.
    class_sets: Mapping[int, int]

    #: Light part of each class, where non-empty.
    light: Mapping[int, int]

    #: Parts of size ``ceil(sqrt(n))`` per class and weight bucket.
    nice: Mapping[Tuple[int, int], Tuple[int, ...]]

    #: Remaining smaller part per class and weight bucket.
    leftover: Mapping[Tuple[int, int], int]


def type_class(env: AffineEnvelope, weight: Fraction) -> int:
    """Largest piece index whose crossover threshold the weight reaches."""
    for k in range(len(env), 1, -1):
        threshold = crossover_threshold(env, k)
        if threshold is not None and weight >= threshold:
            return k
    return 1


def weighted_partition(
    inst: WeightedSymmetric,
) -> Tuple[Partition, WeightedPartitionTrace]:
    """
    Partition the types of a weighted symmetric function.

    Types are grouped by class; light types of a class form one part,
    the remaining types are bucketed by weight and cut into parts of
    ``ceil(sqrt(n))`` types in ascending order, with one smaller leftover
    part per bucket.
    """
    env, n = inst.envelope, inst.n
    size = ceil_sqrt(n)
    classes = tuple(type_class(env, w) for w in inst.weights)
    parts: List[int] = []
    tags: List[PartTag] = []
    class_sets: Dict[int, int] = {}
    light: Dict[int, int] = {}
    nice: Dict[Tuple[int, int], Tuple[int, ...]] = {}
    leftover: Dict[Tuple[int, int], int] = {}
    for k in range(1, len(env) + 1):
        types = [j for j in range(n) if classes[j] == k]
        if not types:
            continue
        class_sets[k] = mask_of(types)
        piece = env.piece(k)
        # w_j * delta_k <= sigma_k / sqrt(n)
        is_light = [
            (inst.weights[j] * piece.delta) ** 2 * n <= piece.sigma ** 2 for j in types
        ]
        light_types = [j for j, flag in zip(types, is_light) if flag]
        if light_types:
            light[k] = mask_of(light_types)
            parts.append(light[k])
            tags.append(PartTag.LIGHT_TYPES)
        buckets: Dict[int, List[int]] = {}
        for j, flag in zip(types, is_light):
            if not flag:
                buckets.setdefault(floor_log2(inst.weights[j]), []).append(j)
        for i in sorted(buckets):
            bucket = buckets[i]
            full = len(bucket) - len(bucket) % size
            chunks = tuple(
                mask_of(bucket[start : start + size]) for start in range(0, full, size)
            )
            if chunks:
                nice[k, i] = chunks
                parts.extend(chunks)
                tags.extend([PartTag.NICE] * len(chunks))
            if full < len(bucket):
                leftover[k, i] = mask_of(bucket[full:])
                parts.append(leftover[k, i])
                tags.append(PartTag.LEFTOVER)
    trace = WeightedPartitionTrace(classes, class_sets, light, nice, leftover)
    logger.info(
        f"Weighted partition of {n} types: {len(light)} light,"
        f" {sum(map(len, nice.values()))} nice, {len(leftover)} leftover parts."
    )
    return Partition.from_function(inst, parts, tags), trace


def symmetric_blocks(n: int) -> List[int]:
    """
    Split ``0..n-1`` into ``ceil(sqrt(n))`` consecutive blocks.

    Block sizes differ by at most one, larger blocks first.
    """
    if n < 1:
        raise DomainError(f"Universe size must be positive: {n}")
    k = ceil_sqrt(n)
    base, extra = divmod(n, k)
    blocks = []
    start = 0
    for b in range(k):
        length = base + (1 if b < extra else 0)
        blocks.append(full_mask(start + length) ^ full_mask(start))
        start += length
    return blocks


def symmetric_partition(f: SymmetricFunction) -> Partition:
    """Partition into ``ceil(sqrt(n))`` blocks priced by a symmetric function."""
    blocks = symmetric_blocks(f.n)
    return Partition.from_function(f, blocks, [PartTag.BLOCK] * len(blocks))


def gen_ceiling_symmetric(n: int) -> SymmetricFunction:
    """Symmetric function ``f(S) = ceil(|S| / sqrt(n))`` for a square *n*."""
    root = exact_sqrt(n)
    if root == 0:
        raise DomainError("Universe size must be positive.")
    return SymmetricFunction([-(-s // root) for s in range(n + 1)])
