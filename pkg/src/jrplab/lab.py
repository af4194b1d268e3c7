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
Laboratory facade tying partitioners, verifiers and simulators together.
"""

from __future__ import annotations

import copy
import logging
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from jrplab.caching import ResultCache
from jrplab.core import (
    AuditReport,
    DisjointFunction,
    ExplicitFunction,
    Partition,
    ServiceFunction,
    SymmetricFunction,
    check_monotone_subadditive,
)
from jrplab.engine import ServiceSchedule, reduce_and_run
from jrplab.exceptions import DomainError, ValidationError, VerificationError
from jrplab.experiments import (
    MAX_CROSS_CHECK_REQUESTS,
    SUITES,
    VERIFY_LEVELS,
    ExperimentConfig,
    run_experiment,
)
from jrplab.generators import (
    gen_random_disjoint,
    gen_random_mla,
    gen_random_stream,
    gen_random_subadditive,
    gen_random_symmetric,
    gen_random_weighted,
    gen_touitou,
)
from jrplab.instances import Instance
from jrplab.mla import (
    MlaInstance,
    gen_star_mla,
    mla_partition_trace,
    verify_mla_partition,
)
from jrplab.offline import offline_opt
from jrplab.reports import ExperimentResults
from jrplab.streams import RequestStream
from jrplab.stretch import (
    MAX_PARTITION_SEARCH_N,
    MAX_SYMMETRIC_SEARCH_N,
    StretchReport,
    min_stretch_over_partitions,
    stretch,
)
from jrplab.usc import subadditive_to_disjoint
from jrplab.weighted import (
    WeightedSymmetric,
    gen_ceiling_symmetric,
    symmetric_partition,
    weighted_partition,
)

logger = logging.getLogger("jrplab")

_RANDOM: Dict[str, Callable[[int, int], ServiceFunction]] = {
    "random-mla": gen_random_mla,
    "random-symmetric": gen_random_symmetric,
    "random-subadditive": gen_random_subadditive,
    "random-weighted": gen_random_weighted,
    "random-disjoint": gen_random_disjoint,
}

#: Names accepted by :meth:`Laboratory.generate`.
GENERATORS = ("star-mla", "ceiling-symmetric", "touitou", *_RANDOM)


class Laboratory:
    """
    Competitive-analysis laboratory.

    Provides the kind-appropriate partitioning of service functions,
    exact stretch, online simulation, offline optima and experiment
    suites, with an optional caching of expensive results.

    Use :func:`.setup` or :func:`.environ_setup` to construct
    this class.
    """

    #: Cap on exhaustive subset enumeration.
    max_n: int = 20

    #: Verification level, one of ``none``, ``fast`` and ``exhaustive``.
    #:
    #: ``fast`` checks structural bounds and stretches over one type per part,
    #: ``exhaustive`` stretches over all subsets and cross-checks
    #: offline optima of small streams.
    verify: str = "fast"

    #: Simulation cutoff after the last arrival, ``None`` for no cutoff.
    horizon: Optional[Fraction] = Fraction(100)

    #: Whether experiment records carry wall times.
    timing: bool = False

    _cache: ResultCache

    def __init__(self) -> None:
        self._cache = ResultCache()

    def __repr__(self) -> str:
        parts = [
            f"max_n={self.max_n!r}",
            f"verify={self.verify!r}",
            f"horizon={self.horizon!r}",
        ]
        return f"<{type(self).__name__}: {', '.join(parts)}>"

    @property
    def cache(self) -> ResultCache:
        """
        Cache implementation.

        It is possible to update properties of the :attr:`.cache`
        attribute to reconfigure caching in place.

        :rtype: :class:`.ResultCache`
        """
        return self._cache

    def using(
        self,
        *,
        max_n: Optional[int] = None,
        verify: Optional[str] = None,
        horizon: Optional[Fraction] = None,
        timing: Optional[bool] = None,
        cache_enabled: Optional[bool] = None,
    ) -> Laboratory:
        """
        Create a new instance with an updated configuration.

        :return: an updated copy of this laboratory
        """
        other = copy.copy(self)
        other._cache = copy.copy(self._cache)
        if max_n is not None:
            other.max_n = max_n
        if verify is not None:
            other.verify = verify
        if horizon is not None:
            other.horizon = horizon
        if timing is not None:
            other.timing = timing
        if cache_enabled is not None:
            other._cache.enabled = cache_enabled
        other.check()
        return other

    def check(self) -> None:
        """Raise ValueError if the configuration is invalid."""
        if self.verify not in VERIFY_LEVELS:
            raise ValueError(f"Unknown verification level: {self.verify!r}")
        if self.max_n < 1:
            raise ValueError(f"Enumeration cap must be positive: {self.max_n}")

    def config(
        self,
        command: str,
        *,
        suite: Optional[str] = None,
        source: Optional[str] = None,
        seed: int = 0,
        sizes: Optional[Tuple[int, int]] = None,
        count: Optional[int] = None,
        tau: int = 2,
        output: Optional[str] = None,
    ) -> ExperimentConfig:
        """Configuration echo of a command run by this laboratory."""
        return ExperimentConfig(
            command=command,
            suite=suite,
            source=source,
            seed=seed,
            sizes=sizes,
            count=count,
            tau=tau,
            output=output,
            verify=self.verify,
            max_n=self.max_n,
            horizon=self.horizon,
            timing=self.timing,
        )

    def validate(self, f: ServiceFunction) -> AuditReport:
        """Check that a service function is monotone and subadditive."""
        report = check_monotone_subadditive(f, max_n=self.max_n)
        logger.info(f"Validation of {f!r}: {report}")
        return report

    def partition(self, f: ServiceFunction) -> Partition:
        """
        Partition a service function by the algorithm for its kind.

        Trees get heavy and light clusters, symmetric functions blocks,
        weighted symmetric functions the weighted partitioning,
        explicit tables the set cover pipeline. Disjoint functions
        are their own partition.
        """
        if isinstance(f, MlaInstance):
            trace = mla_partition_trace(f)
            if self.verify != "none":
                violations = verify_mla_partition(f, trace)
                if violations:
                    raise VerificationError("MLA cluster bounds", "; ".join(violations))
            p = Partition.from_function(
                f, [c.nodes for c in trace.clusters], [c.tag for c in trace.clusters]
            )
        elif isinstance(f, SymmetricFunction):
            p = symmetric_partition(f)
        elif isinstance(f, WeightedSymmetric):
            p, _ = weighted_partition(f)
        elif isinstance(f, ExplicitFunction):
            p = subadditive_to_disjoint(f)
        elif isinstance(f, DisjointFunction):
            p = f.partition
        else:
            raise DomainError(f"No partitioning for {f.kind} functions.")
        self.check_partition(f, p)
        return p

    def check_partition(self, f: ServiceFunction, p: Partition) -> None:
        """
        Raise :class:`.ValidationError` if a part is not priced by *f*.

        Skipped when verification is off.
        """
        if self.verify != "none":
            p.check_costs(f)

    def stretch(self, instance: Instance, p: Partition) -> StretchReport:
        """Exact stretch of a partition against the instance function."""
        self.check_partition(instance.function, p)
        reduced = self.verify != "exhaustive"
        cached = self._cache.load_stretch(instance, p, reduced=reduced)
        if cached is not None:
            return cached
        report = stretch(instance.function, p, reduced=reduced, max_n=self.max_n)
        self._cache.save_stretch(instance, p, report, reduced=reduced)
        return report

    def min_stretch(self, f: ServiceFunction) -> Tuple[Optional[Fraction], Partition]:
        """Smallest stretch of any partition, within the enumeration caps."""
        if isinstance(f, SymmetricFunction):
            cap = min(self.max_n, MAX_SYMMETRIC_SEARCH_N)
        else:
            cap = min(self.max_n, MAX_PARTITION_SEARCH_N)
        return min_stretch_over_partitions(f, max_n=cap)

    def simulate(self, instance: Instance, p: Partition) -> ServiceSchedule:
        """Serve the instance stream by the online algorithm on a partition."""
        self.check_partition(instance.function, p)
        f, stream = instance.function, _stream(instance)
        return reduce_and_run(f, p, stream, horizon=self.horizon)

    def opt(self, instance: Instance) -> Tuple[Fraction, ServiceSchedule]:
        """Optimal offline cost of the instance stream, with its schedule."""
        stream = _stream(instance)
        cached = self._cache.load_opt(instance, "dp")
        if cached is not None:
            return cached
        value, schedule = offline_opt(instance.function, stream)
        if self.verify == "exhaustive" and len(stream) <= MAX_CROSS_CHECK_REQUESTS:
            check, _ = offline_opt(instance.function, stream, method="bell")
            if check != value:
                raise VerificationError(
                    "offline optimum methods agree", f"{value} != {check}"
                )
        self._cache.save_opt(instance, "dp", value, schedule)
        return value, schedule

    def generate(
        self,
        name: str,
        n: int,
        *,
        seed: int = 0,
        tau: int = 2,
        requests: int = 0,
    ) -> Instance:
        """
        Generate a named instance.

        :param name: one of :data:`GENERATORS`
        :param n: size of the instance
        :param seed: seed of random instances
        :param tau: number of request steps of the Touitou instance
        :param requests: number of random requests to attach,
            not used by the Touitou instance which has its own stream
        """
        if name == "touitou":
            inst = gen_touitou(n, tau)
            return Instance(inst.tree, inst.stream)
        f: ServiceFunction
        if name == "star-mla":
            f = gen_star_mla(n)
        elif name == "ceiling-symmetric":
            f = gen_ceiling_symmetric(n)
        elif name in _RANDOM:
            f = _RANDOM[name](n, seed)
        else:
            known = ", ".join(GENERATORS)
            raise DomainError(f"Unknown generator {name!r}, known generators: {known}")
        stream = None
        if requests:
            stream = gen_random_stream(f.n, requests, seed)
        return Instance(f, stream)

    def experiment(
        self,
        suite: str,
        *,
        sizes: Optional[Tuple[int, int]] = None,
        count: Optional[int] = None,
        seed: int = 0,
        tau: int = 2,
        output: Optional[str] = None,
    ) -> ExperimentResults:
        """
        Run an experiment suite.

        :param suite: one of :func:`suite_names`
        :param sizes: inclusive range of instance sizes, the suite default if None
        :param count: random instances per size, the suite default if None
        """
        config = self.config(
            "experiment",
            suite=suite,
            seed=seed,
            sizes=sizes,
            count=count,
            tau=tau,
            output=output,
        )
        return run_experiment(config)


def _stream(instance: Instance) -> RequestStream:
    if instance.stream is None:
        raise ValidationError("Instance has no requests.")
    return instance.stream


def suite_names() -> List[str]:
    return sorted(SUITES)
