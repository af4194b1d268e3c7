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

from jrplab.assembly import environ_setup, setup


class TestSetup:
    def test_default(self):
        lab = setup()
        assert lab.max_n == 20
        assert lab.verify == "fast"
        assert lab.horizon == 100
        assert lab.timing is False
        assert lab.cache.local is None
        assert lab.cache.remote is None

    def test_default_from_env(self):
        lab = environ_setup(environ={})
        assert lab.max_n == 20
        assert lab.verify == "fast"
        assert lab.horizon == 100
        assert lab.timing is False
        assert lab.cache.local is None
        assert lab.cache.remote is None

    def test_options(self):
        lab = setup(max_n=8, verify="exhaustive", horizon=5, timing=True)
        assert lab.max_n == 8
        assert lab.verify == "exhaustive"
        assert lab.horizon == Fraction(5)
        assert isinstance(lab.horizon, Fraction)
        assert lab.timing is True

    def test_options_from_env(self):
        lab = environ_setup(
            environ={
                "JRPLAB_MAX_N": "8",
                "JRPLAB_VERIFY": "Exhaustive",
                "JRPLAB_HORIZON": "5/2",
                "JRPLAB_TIMING": "yes",
            }
        )
        assert lab.max_n == 8
        assert lab.verify == "exhaustive"
        assert lab.horizon == Fraction(5, 2)
        assert lab.timing is True

    def test_no_horizon(self):
        assert setup(horizon=None).horizon is None

    def test_no_horizon_from_env(self):
        assert environ_setup(environ={"JRPLAB_HORIZON": "none"}).horizon is None

    def test_prefix(self):
        lab = environ_setup(environ={"LAB_MAX_N": "3"}, prefix="LAB")
        assert lab.max_n == 3

    @pytest.mark.parametrize(
        "environ",
        [
            {"JRPLAB_MAX_N": "0"},
            {"JRPLAB_MAX_N": "-3"},
            {"JRPLAB_MAX_N": "ten"},
            {"JRPLAB_VERIFY": "paranoid"},
            {"JRPLAB_HORIZON": "0.5"},
            {"JRPLAB_HORIZON": "2/4"},
            {"JRPLAB_TIMING": "maybe"},
        ],
    )
    def test_invalid_from_env(self, environ):
        with pytest.raises(ValueError):
            environ_setup(environ=environ)

    def test_not_a_string(self):
        with pytest.raises(TypeError):
            environ_setup(environ={"JRPLAB_TIMING": False})

    def test_invalid(self):
        with pytest.raises(ValueError):
            setup(verify="paranoid")
        with pytest.raises(ValueError):
            setup(max_n=0)

    def test_cache_local(self):
        lab = setup(cache_local="/path")
        assert lab.cache.local == "file:/path/"

    def test_cache_local_from_env(self):
        lab = environ_setup(environ={"JRPLAB_CACHE_LOCAL": "/path"})
        assert lab.cache.local == "file:/path/"

    def test_cache_remote(self):
        lab = setup(cache_remote="s3://bucket/path/")
        assert lab.cache.remote == "s3://bucket/path/"

    def test_cache_remote_from_env(self):
        lab = environ_setup(environ={"JRPLAB_CACHE_REMOTE": "s3://bucket/path/"})
        assert lab.cache.remote == "s3://bucket/path/"

    def test_cache_local_and_remote_from_env(self):
        lab = environ_setup(
            environ={
                "JRPLAB_CACHE_REMOTE": "s3://bucket/path/",
                "JRPLAB_CACHE_LOCAL": "/path",
            }
        )
        assert lab.cache.local == "file:/path/"
        assert lab.cache.remote == "s3://bucket/path/"
