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


from __future__ import annotations

from ._version import __version__
from .assembly import environ_setup, setup
from .core import (
    DisjointFunction,
    ExplicitFunction,
    Partition,
    PartTag,
    ServiceFunction,
    SymmetricFunction,
    Universe,
    check_monotone_subadditive,
    evaluate,
)
from .engine import (
    Service,
    ServiceSchedule,
    interval_lower_bound,
    reduce_and_run,
    run_disjoint_online,
)
from .exceptions import (
    CoverageError,
    DomainError,
    InstanceParseError,
    JrpLabError,
    MalformedSpecError,
    SizeLimitError,
    StateError,
    ValidationError,
    VerificationError,
)
from .experiments import ExperimentConfig
from .instances import Instance, parse_instance, serialize_instance
from .lab import Laboratory
from .mla import MlaInstance, gen_star_mla, mla_partition
from .offline import competitive_ratio, offline_opt
from .reports import ExperimentRecord, ExperimentResults
from .streams import DelayFunction, Request, RequestStream, accumulated_delay
from .stretch import StretchReport, min_stretch_over_partitions, stretch
from .usc import SetSystem, subadditive_to_disjoint, usc_greedy
from .weighted import (
    AffineEnvelope,
    WeightedSymmetric,
    build_affine_envelope,
    symmetric_partition,
    weighted_partition,
)

__all__ = [
    "__version__",
    "environ_setup",
    "setup",
    "Laboratory",
    "ExperimentConfig",
    "ExperimentRecord",
    "ExperimentResults",
    "Universe",
    "ServiceFunction",
    "ExplicitFunction",
    "SymmetricFunction",
    "DisjointFunction",
    "MlaInstance",
    "WeightedSymmetric",
    "AffineEnvelope",
    "SetSystem",
    "Partition",
    "PartTag",
    "Instance",
    "DelayFunction",
    "Request",
    "RequestStream",
    "Service",
    "ServiceSchedule",
    "StretchReport",
    "evaluate",
    "check_monotone_subadditive",
    "mla_partition",
    "gen_star_mla",
    "build_affine_envelope",
    "weighted_partition",
    "symmetric_partition",
    "usc_greedy",
    "subadditive_to_disjoint",
    "stretch",
    "min_stretch_over_partitions",
    "accumulated_delay",
    "run_disjoint_online",
    "reduce_and_run",
    "interval_lower_bound",
    "offline_opt",
    "competitive_ratio",
    "parse_instance",
    "serialize_instance",
    "JrpLabError",
    "DomainError",
    "MalformedSpecError",
    "ValidationError",
    "SizeLimitError",
    "StateError",
    "CoverageError",
    "InstanceParseError",
    "VerificationError",
]
