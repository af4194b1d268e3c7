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
Observers of accumulated delay.

An online algorithm is non-clairvoyant: it learns only how much delay
pending requests have accumulated so far. The simulator hands the
algorithm an observer, which is the only way the algorithm reads delay.
"""

from __future__ import annotations

import logging
from abc import ABCMeta, abstractmethod
from fractions import Fraction
from typing import Optional, Sequence

from jrplab.streams import Request, accumulated_delay
from jrplab.utils import truncate_str

logger = logging.getLogger("jrplab")


class DelayObserver(metaclass=ABCMeta):
    """
    Source of delay observations for an online algorithm.

    This is an internal interface used by the simulator.
    The :class:`.ExactObserver` implementation will be used in most cases,
    but it can be replaced by :class:`.AuditingObserver` for testing.
    """

    #: Current simulation time, ``None`` before the simulation starts.
    now: Optional[Fraction] = None

    def advance(self, t: Fraction) -> None:
        """
        Move the clock forward.

        The simulator calls this before the algorithm observes anything at *t*.
        """
        self.now = t

    @abstractmethod
    def accumulated_delay(self, pending: Sequence[Request], t: Fraction) -> Fraction:
        """
        Observe the total delay of pending requests by the time *t*.

        :param pending: requests not served yet
        :param t: time of the observation, never in the future
        """


class ExactObserver(DelayObserver):
    """
    Observer evaluating delay functions exactly.
    """

    def accumulated_delay(self, pending: Sequence[Request], t: Fraction) -> Fraction:
        value = accumulated_delay(pending, t)
        if logger.isEnabledFor(logging.DEBUG):
            ids = truncate_str(",".join(str(q.id) for q in pending))
            logger.debug(f"Delay of requests {ids} at {t}: {value}")
        return value
