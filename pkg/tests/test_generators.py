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

from jrplab.exact import ln_bracket
from jrplab.exceptions import DomainError
from jrplab.generators import (
    gen_random_scalar_subadditive,
    gen_touitou,
    touitou_weight,
)
from jrplab.weighted import check_scalar_samples


class TestTouitouWeight:
    @pytest.mark.parametrize("n", [3, 4, 10, 100, 1000])
    def test_rounded_down(self, n):
        root = touitou_weight(n) * (n - 1) + 1
        _, high = ln_bracket(n, 10**12)
        assert root * root <= n * high
        assert (root + Fraction(2, 10**6)) ** 2 >= n * high

    def test_precision(self):
        coarse = touitou_weight(5, precision=10)
        assert (coarse * 4 + 1) * 10 == 28
        assert touitou_weight(5) >= coarse

    def test_tree_costs(self):
        inst = gen_touitou(4, 1)
        assert inst.tree.costs == (0, 1) + (inst.w,) * 3
        assert len(inst.stream) == 4

    def test_too_small(self):
        with pytest.raises(DomainError):
            touitou_weight(2)


class TestScalarSamples:
    @pytest.mark.parametrize("seed", range(5))
    def test_subadditive(self, seed):
        samples = gen_random_scalar_subadditive(64, seed)
        assert len(samples) == 65
        check_scalar_samples(samples)

    def test_deterministic(self):
        first = gen_random_scalar_subadditive(32, 7)
        assert first == gen_random_scalar_subadditive(32, 7)
