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
Helpers for testing.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from jrplab.exceptions import StateError
from jrplab.observers import DelayObserver
from jrplab.streams import Request, accumulated_delay


class AuditingObserver(DelayObserver):
    """
    Observer that records every observation and rejects peeking ahead.

    Can replace :class:`.ExactObserver` for testing that an online
    algorithm reads only the delay accumulated up to the current time.
    """

    _request_log: List[Tuple[Fraction, Tuple[int, ...]]]

    def __init__(self) -> None:
        self._request_log = []

    @property
    def request_log(self) -> List[Tuple[Fraction, Tuple[int, ...]]]:
        """Time and request ids of every observation."""
        return self._request_log

    def advance(self, t: Fraction) -> None:
        if self.now is not None and t < self.now:
            raise StateError(f"Clock moved backwards from {self.now} to {t}.")
        super().advance(t)

    def accumulated_delay(self, pending: Sequence[Request], t: Fraction) -> Fraction:
        if self.now is None or t != self.now:
            raise StateError(f"Delay observed at {t} while the clock is at {self.now}.")
        self._request_log.append((t, tuple(q.id for q in pending)))
        return accumulated_delay(pending, t)
