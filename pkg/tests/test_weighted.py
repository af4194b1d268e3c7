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

from jrplab.core import PartTag, SymmetricFunction
from jrplab.exceptions import DomainError, MalformedSpecError, ValidationError
from jrplab.generators import gen_random_scalar_subadditive
from jrplab.stretch import stretch
from jrplab.weighted import (
    AffineEnvelope,
    Piece,
    WeightedSymmetric,
    build_affine_envelope,
    ceil_log2,
    charging_piece,
    check_scalar_samples,
    crossover_threshold,
    floor_log2,
    gen_ceiling_symmetric,
    symmetric_blocks,
    symmetric_partition,
    type_class,
    weighted_partition,
)


@pytest.fixture(name="env")
def env_fixture():
    return AffineEnvelope([(0, 4), (8, 1)], 16)


class TestLogarithms:
    @pytest.mark.parametrize("value,expected", [(1, 0), (2, 1), (3, 2), (8, 3), (9, 4)])
    def test_ceil_log2(self, value, expected):
        assert ceil_log2(value) == expected

    @pytest.mark.parametrize(
        "value,expected", [(Fraction(1), 0), (Fraction(5, 2), 1), (Fraction(8), 3)]
    )
    def test_floor_log2(self, value, expected):
        assert floor_log2(value) == expected

    def test_invalid(self):
        with pytest.raises(DomainError):
            ceil_log2(0)
        with pytest.raises(DomainError):
            floor_log2(Fraction(1, 2))


class TestAffineEnvelope:
    def test_evaluate(self, env):
        assert env(0) == 0
        assert env(1) == 4
        assert env(4) == 12
        assert charging_piece(env, 1) == 1
        assert charging_piece(env, 4) == 2
        assert env.piece(2) == Piece(Fraction(8), Fraction(1))

    def test_crossover(self, env):
        assert crossover_threshold(env, 2) == 2
        flat = AffineEnvelope([(1, 0)], 4)
        assert len(flat) == 1
        with pytest.raises(DomainError):
            crossover_threshold(env, 1)

    def test_crossover_zero_last_slope(self):
        env = AffineEnvelope([(0, 2), (1, 0)], 4)
        assert crossover_threshold(env, 2) == Fraction(1, 2)

    @pytest.mark.parametrize(
        "pieces,W",
        [
            ([], 4),
            ([(0, 1)], 0),
            ([(-1, 1)], 4),
            ([(1, 4), (2, 1)], 4),
            ([(0, 4), (3, 2)], 4),
            ([(0, 4), (3, 1)], 1),
        ],
    )
    def test_malformed(self, pieces, W):
        with pytest.raises(MalformedSpecError):
            AffineEnvelope(pieces, W)

    def test_type_class(self, env):
        assert type_class(env, Fraction(1)) == 1
        assert type_class(env, Fraction(2)) == 2
        assert type_class(env, Fraction(9)) == 2


class TestBuildEnvelope:
    def test_linear(self):
        env = build_affine_envelope([0, 1, 2, 3, 4], 4)
        assert env.pieces == (Piece(Fraction(0), Fraction(1)),)

    def test_hull_edges(self):
        samples = [0, 2, 3, 3, 3]
        env = build_affine_envelope(samples, 4)
        assert [(p.sigma, p.delta) for p in env.pieces] == [(0, 2), (1, 1), (3, 0)]
        assert [env(x) for x in range(5)] == samples

    def test_rounded(self):
        samples = [0, 2, 3, 4]
        env = build_affine_envelope(samples, 3)
        assert env.pieces == (
            Piece(Fraction(0), Fraction(3)),
            Piece(Fraction(1), Fraction(1)),
        )
        for x in range(1, 4):
            assert samples[x] <= env(x) <= 6 * samples[x]

    def test_ignores_extra_samples(self):
        env = build_affine_envelope([0, 1, 2, 3, 100], 3)
        assert env.W == 3
        assert env(3) == 3

    def test_too_few_samples(self):
        with pytest.raises(DomainError):
            build_affine_envelope([0, 1], 2)

    @pytest.mark.parametrize("W", [256, 1000, 1024])
    @pytest.mark.parametrize("seed", range(2))
    def test_large_weight(self, W, seed):
        samples = gen_random_scalar_subadditive(W, seed)
        env = build_affine_envelope(samples, W)
        for x in range(W + 1):
            assert samples[x] <= env(x) <= 8 * samples[x]
        assert len(env) <= ceil_log2(W) + 1
        for a, b in zip(env.pieces, env.pieces[1:]):
            assert b.sigma > 2 * a.sigma
            assert 2 * b.delta < a.delta

    @pytest.mark.parametrize("samples", [[1, 2], [0, 2, 1], [0, 1, 3]])
    def test_invalid_samples(self, samples):
        with pytest.raises(ValidationError):
            check_scalar_samples([Fraction(s) for s in samples])


class TestWeightedSymmetric:
    def test_evaluate(self, env):
        f = WeightedSymmetric([1, 1, 4, 4], env)
        assert f(0) == 0
        assert f(0b0001) == 4
        assert f(0b1100) == 16
        assert f.weight(0b1111) == 10

    def test_malformed(self, env):
        with pytest.raises(MalformedSpecError):
            WeightedSymmetric([1, Fraction(1, 2)], env)
        with pytest.raises(MalformedSpecError):
            WeightedSymmetric([10, 10], env)


class TestWeightedPartition:
    def test_single_type(self):
        f = WeightedSymmetric([1], AffineEnvelope([(0, 1)], 1))
        p, trace = weighted_partition(f)
        assert p.parts == (0b1,)
        assert p.tags == (PartTag.NICE,)
        assert trace.nice == {(1, 0): (0b1,)}

    def test_light_only(self):
        f = WeightedSymmetric([1, 1, 1, 1], AffineEnvelope([(4, 1)], 4))
        p, trace = weighted_partition(f)
        assert p.parts == (0b1111,)
        assert p.tags == (PartTag.LIGHT_TYPES,)
        assert trace.light == {1: 0b1111}

    def test_two_classes(self, env):
        f = WeightedSymmetric([1, 1, 4, 4], env)
        p, trace = weighted_partition(f)
        assert trace.classes == (1, 1, 2, 2)
        assert trace.class_sets == {1: 0b0011, 2: 0b1100}
        assert p.parts == (0b0011, 0b1100)
        assert p.tags == (PartTag.NICE, PartTag.LIGHT_TYPES)
        assert trace.leftover == {}

    def test_leftover(self, env):
        f = WeightedSymmetric([1, 1, 2, 4, 4], env)
        p, trace = weighted_partition(f)
        assert p.parts == (0b00011, 0b00100, 0b11000)
        assert p.tags == (PartTag.LEFTOVER, PartTag.LIGHT_TYPES, PartTag.LEFTOVER)
        assert trace.leftover == {(1, 0): 0b00011, (2, 2): 0b11000}
        p.check_costs(f)


class TestSymmetric:
    @pytest.mark.parametrize(
        "n,sizes", [(1, [1]), (4, [2, 2]), (10, [3, 3, 2, 2]), (5, [2, 2, 1])]
    )
    def test_blocks(self, n, sizes):
        blocks = symmetric_blocks(n)
        assert [bin(b).count("1") for b in blocks] == sizes
        assert sum(blocks) == (1 << n) - 1

    def test_ceiling(self):
        assert gen_ceiling_symmetric(4).values == (0, 1, 1, 2, 2)
        with pytest.raises(DomainError):
            gen_ceiling_symmetric(5)
        with pytest.raises(DomainError):
            gen_ceiling_symmetric(0)

    def test_partition(self):
        f = gen_ceiling_symmetric(4)
        p = symmetric_partition(f)
        assert p.parts == (0b0011, 0b1100)
        assert p.tags == (PartTag.BLOCK, PartTag.BLOCK)
        assert stretch(f, p).ratio == 2

    def test_partition_concave(self):
        f = SymmetricFunction([0, 3, 5, 6, 7])
        p = symmetric_partition(f)
        assert p.costs == (5, 5)
