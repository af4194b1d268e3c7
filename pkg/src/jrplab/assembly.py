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
Methods for setting up a laboratory.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Mapping, Optional, Tuple, Union

from jrplab.exact import parse_fraction
from jrplab.lab import Laboratory

#: Default cap on exhaustive subset enumeration.
DEFAULT_MAX_N = 20

#: Default simulation cutoff after the last arrival.
DEFAULT_HORIZON = Fraction(100)


def setup(
    *,
    max_n: int = DEFAULT_MAX_N,
    verify: str = "fast",
    horizon: Union[Fraction, int, None] = DEFAULT_HORIZON,
    timing: bool = False,
    cache_local: Optional[str] = None,
    cache_remote: Optional[str] = None,
) -> Laboratory:
    """
    Setup a :class:`.Laboratory`.

    All configuration options can be given to this method,
    but all of them can be overridden after the laboratory is constructed.

    :param max_n: cap on exhaustive subset enumeration
        used by stretch, validation and partition search.
    :param verify: verification level, one of ``none``, ``fast``
        and ``exhaustive``.
    :param horizon: simulation cutoff after the last arrival,
        ``None`` to simulate until every request is served.
    :param timing: whether experiment records carry wall times.
    :param cache_local: an URI of a local cache.
    :param cache_remote: an URI of a remote cache.
    :return: a new instance of laboratory
    """
    lab = Laboratory()
    if cache_local is not None:
        lab.cache.local = cache_local
    if cache_remote is not None:
        lab.cache.remote = cache_remote
    lab.max_n = max_n
    lab.verify = verify
    lab.horizon = None if horizon is None else Fraction(horizon)
    lab.timing = timing
    lab.check()
    return lab


def environ_setup(
    environ: Optional[Mapping[str, str]] = None, *, prefix: str = "JRPLAB"
) -> Laboratory:
    """
    Setup a :class:`.Laboratory` from environment variables.

    Reads the following environment variables: ::

        export JRPLAB_MAX_N=20
        export JRPLAB_VERIFY=fast
        export JRPLAB_HORIZON=100
        export JRPLAB_TIMING=false
        export JRPLAB_CACHE_LOCAL=~/.cache/jrplab/
        export JRPLAB_CACHE_REMOTE=s3://bucket/jrplab/

    ``JRPLAB_HORIZON=none`` disables the simulation cutoff.

    :param environ: A mapping object representing the string environment.
        Defaults to ``os.environ``.
    :param prefix: A prefix of environment variables
    :return: a new instance of laboratory
    """
    if environ is None:
        environ = os.environ
    config = _EnvironConfig(environ, prefix)
    return setup(
        max_n=config.get_int("MAX_N", DEFAULT_MAX_N),
        verify=config.get_choice("VERIFY", ("none", "fast", "exhaustive"), "fast"),
        horizon=config.get_fraction("HORIZON", DEFAULT_HORIZON),
        timing=config.get_bool("TIMING", False),
        cache_local=config.get_str("CACHE_LOCAL"),
        cache_remote=config.get_str("CACHE_REMOTE"),
    )


class _EnvironConfig:
    def __init__(self, environ: Mapping[str, str], prefix: str) -> None:
        self._environ = environ
        self._prefix = prefix

    def get_str(self, key: str, default: Optional[str] = None) -> Optional[str]:
        v = self._get(key)
        if not v:
            return default
        return v

    def get_bool(self, key: str, default: bool = False) -> bool:
        v = self._get(key)
        if not v:
            return default
        v = v.lower()
        if v in ("1", "true", "on", "yes"):
            return True
        if v in ("0", "false", "off", "no"):
            return False
        raise ValueError(f"{self._prefix}_{key}: invalid boolean value: {v}")

    def get_int(self, key: str, default: int) -> int:
        v = self._get(key)
        if not v:
            return default
        if not v.isascii() or not v.isdigit() or int(v) < 1:
            raise ValueError(f"{self._prefix}_{key}: invalid positive integer: {v}")
        return int(v)

    def get_choice(self, key: str, choices: Tuple[str, ...], default: str) -> str:
        v = self._get(key)
        if not v:
            return default
        v = v.lower()
        if v not in choices:
            raise ValueError(f"{self._prefix}_{key}: invalid choice: {v}")
        return v

    def get_fraction(self, key: str, default: Fraction) -> Optional[Fraction]:
        v = self._get(key)
        if not v:
            return default
        if v.lower() == "none":
            return None
        try:
            value = parse_fraction(v)
        except ValueError:
            raise ValueError(f"{self._prefix}_{key}: invalid fraction: {v}") from None
        if value < 0:
            raise ValueError(f"{self._prefix}_{key}: negative value: {v}")
        return value

    def _get(self, key: str) -> str:
        v = self._environ.get(f"{self._prefix}_{key}", "")
        if not isinstance(v, str):
            # Avoid unexpected behaviour when somebody passes something
            # like {"JRPLAB_TIMING": False} to environ.
            raise TypeError("Environ values must be a string.")
        return v
