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
Experiment suites checking competitive bounds on generated instances.

A suite sweeps instance sizes; for every size it generates one
deterministic instance or *count* seeded random instances and records
measured values against their bounds. Bounds involving square roots
or logarithms are decided exactly; the rational bound stored in the
record lies on the same side of the measured value as the exact one.
"""

from __future__ import annotations

import hashlib
import logging
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from jrplab._version import __version__
from jrplab.core import Partition, ServiceFunction
from jrplab.engine import (
    ServiceSchedule,
    interval_lower_bound,
    reduce_and_run,
    run_disjoint_online,
)
from jrplab.exact import (
    Surd,
    ceil_sqrt,
    exact_sqrt,
    format_fraction,
    is_perfect_square,
    ln_bracket,
    root_floor,
)
from jrplab.exceptions import DomainError, VerificationError
from jrplab.generators import (
    gen_random_disjoint,
    gen_random_mla,
    gen_random_partition,
    gen_random_scalar_subadditive,
    gen_random_stream,
    gen_random_subadditive,
    gen_random_symmetric,
    gen_random_weighted,
    gen_touitou,
)
from jrplab.mla import gen_star_mla, mla_partition, mla_partition_trace
from jrplab.offline import MAX_OPT_REQUESTS, competitive_ratio, offline_opt
from jrplab.reports import LOWER_BOUND_KINDS, ExperimentRecord, ExperimentResults
from jrplab.streams import RequestStream
from jrplab.stretch import (
    MAX_PARTITION_SEARCH_N,
    MAX_SYMMETRIC_SEARCH_N,
    StretchReport,
    min_stretch_over_partitions,
    stretch,
)
from jrplab.usc import gen_jia_tight, subadditive_to_disjoint, usc_greedy
from jrplab.weighted import (
    build_affine_envelope,
    crossover_threshold,
    gen_ceiling_symmetric,
    symmetric_partition,
    weighted_partition,
)

logger = logging.getLogger("jrplab")

VERIFY_LEVELS = ("none", "fast", "exhaustive")

#: Denominator of rational approximations of irrational bounds.
BOUND_PRECISION = 10 ** 6

#: Regression constant of the weighted partition: stretch <= C * sqrt(n).
#: Random instances with n <= 12 stay below 1.93 sqrt(n).
WEIGHTED_STRETCH_CONSTANT = 4

#: Perturbation of the tight greedy instance.
JIA_EPS = Fraction(1, 10 ** 6)

#: Greedy cost on the tight instance is at least sqrt(k) ln(k) / C.
JIA_TIGHT_DIVISOR = 2

#: Cap on the number of requests of random streams.
MAX_STREAM_REQUESTS = {"disjoint-online": 8, "reduction": 7}

#: Largest stream cross-checked against the enumeration of batchings.
MAX_CROSS_CHECK_REQUESTS = 8

#: Node inspections of the MLA partitioning are at most C * n * n: one sweep
#: of at most n nodes per cluster and at most 3n nodes per light search.
MLA_VISITS_CONSTANT = 4


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Every knob of a run.

    Echoed into the header of every output, so that a configuration
    fully determines the output.
    """

    command: str = "experiment"
    suite: Optional[str] = None

    #: Input URI or generator name.
    source: Optional[str] = None
    seed: int = 0

    #: Inclusive range of instance sizes.
    sizes: Optional[Tuple[int, int]] = None

    #: Random instances per size.
    count: Optional[int] = None

    #: Number of request steps of the Touitou instance.
    tau: int = 2
    output: Optional[str] = None
    verify: str = "fast"
    max_n: int = 20

    #: Simulation cutoff after the last arrival, ``None`` for no cutoff.
    horizon: Optional[Fraction] = Fraction(100)

    #: Whether experiment records carry wall times.
    timing: bool = False

    def __post_init__(self) -> None:
        if self.verify not in VERIFY_LEVELS:
            raise ValueError(f"Unknown verification level: {self.verify!r}")
        if self.max_n < 1:
            raise ValueError(f"Enumeration cap must be positive: {self.max_n}")
        if self.sizes is not None and not 1 <= self.sizes[0] <= self.sizes[1]:
            raise ValueError(f"Invalid size range: {self.sizes}")
        if self.count is not None and self.count < 1:
            raise ValueError(f"Instance count must be positive: {self.count}")
        if self.tau < 1:
            raise ValueError(f"Number of steps must be positive: {self.tau}")
        if self.horizon is not None and self.horizon < 0:
            raise ValueError(f"Horizon must be non-negative: {self.horizon}")

    @property
    def reduced(self) -> bool:
        """Whether stretch enumerates one type per part only."""
        return self.verify != "exhaustive"

    def echo(self) -> Dict[str, str]:
        """Configuration as strings, in a fixed order."""
        sizes = "" if self.sizes is None else f"{self.sizes[0]}..{self.sizes[1]}"
        horizon = "" if self.horizon is None else format_fraction(self.horizon)
        return {
            "command": self.command,
            "suite": self.suite or "",
            "source": self.source or "",
            "seed": str(self.seed),
            "sizes": sizes,
            "count": "" if self.count is None else str(self.count),
            "tau": str(self.tau),
            "output": self.output or "",
            "verify": self.verify,
            "max_n": str(self.max_n),
            "horizon": horizon,
            "timing": "true" if self.timing else "false",
        }

    def header(self) -> Dict[str, str]:
        return {"version": __version__, **self.echo()}


Measurement = Tuple[str, Optional[Fraction], Fraction]
Runner = Callable[[ExperimentConfig, int, int], List[Measurement]]


def _any_size(n: int) -> bool:
    return n >= 1


def _envelope_sweep(W: int) -> bool:
    # every small weight, then powers of two and multiples of 256
    return 1 <= W <= 16 or W & (W - 1) == 0 or W % 256 == 0


@dataclass(frozen=True)
class Suite:
    name: str
    runner: Runner

    #: Default inclusive range of sizes.
    sizes: Tuple[int, int]

    #: Default number of random instances per size, zero for deterministic suites.
    count: int = 0
    accepts: Callable[[int], bool] = _any_size
    description: str = ""


SUITES: Dict[str, Suite] = {}


def suite(
    name: str,
    sizes: Tuple[int, int],
    count: int = 0,
    accepts: Callable[[int], bool] = _any_size,
) -> Callable[[Runner], Runner]:
    def register(runner: Runner) -> Runner:
        description = (runner.__doc__ or "").strip().splitlines()[0]
        SUITES[name] = Suite(name, runner, sizes, count, accepts, description)
        return runner

    return register


def get_suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError:
        known = ", ".join(sorted(SUITES))
        raise DomainError(f"Unknown suite {name!r}, known suites: {known}") from None


def instance_seed(seed: int, name: str, n: int, index: int) -> int:
    """Seed of one random instance, independent of the other instances."""
    digest = hashlib.sha256(f"{seed}:{name}:{n}:{index}".encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")


def run_experiment(config: ExperimentConfig) -> ExperimentResults:
    """Run the suite named by the configuration."""
    if config.suite is None:
        raise DomainError("No suite selected.")
    chosen = get_suite(config.suite)
    low, high = config.sizes or chosen.sizes
    count = 1 if not chosen.count else config.count or chosen.count
    records = []
    for n in range(low, high + 1):
        if not chosen.accepts(n):
            continue
        for index in range(count):
            seed = instance_seed(config.seed, chosen.name, n, index)
            start = time.perf_counter()
            measurements = chosen.runner(config, n, seed)
            wall_ms = (time.perf_counter() - start) * 1000 if config.timing else None
            for kind, value, bound in measurements:
                record = ExperimentRecord(n, kind, value, bound, wall_ms)
                logger.info(
                    f"Experiment {chosen.name} n={n} #{index}: {kind} {value}"
                    f" {'>=' if record.lower else '<='} {bound}"
                    f"{' VIOLATED' if record.violated else ''}"
                )
                records.append(record)
    results = ExperimentResults(records, config.header())
    logger.info(
        f"Experiment {chosen.name}: {len(results)} records,"
        f" {len(results.violations())} violations."
    )
    return results


def _measure(
    kind: str, value: Optional[Fraction], low: Fraction, high: Fraction, holds: bool
) -> Measurement:
    # low <= exact bound <= high
    if kind in LOWER_BOUND_KINDS:
        return kind, value, low if holds else high
    return kind, value, high if holds else low


def _root_bounds(coef: int, n: int, const: int) -> Tuple[Fraction, Fraction]:
    """Rational bracket of ``coef * sqrt(n) + const``."""
    if is_perfect_square(n):
        exact = Fraction(coef * exact_sqrt(n) + const)
        return exact, exact
    low = root_floor(coef, n, const, BOUND_PRECISION)
    return low, low + Fraction(1, BOUND_PRECISION)


def _sqrt_floor(value: Fraction) -> Fraction:
    scaled = value * BOUND_PRECISION * BOUND_PRECISION
    return Fraction(math.isqrt(scaled.numerator // scaled.denominator), BOUND_PRECISION)


def _ln_bracket(n: int) -> Tuple[Fraction, Fraction]:
    return ln_bracket(n, BOUND_PRECISION * BOUND_PRECISION)


def _stretch_bound(kind: str, report: StretchReport, coef: int, n: int) -> Measurement:
    low, high = _root_bounds(coef, n, 0)
    return _measure(kind, report.ratio, low, high, report.within(coef, n))


def _ratio(values: Iterator[Tuple[Fraction, Fraction]]) -> Optional[Fraction]:
    """Largest ratio of pairs, ``None`` for a positive value over zero."""
    worst = Fraction(0)
    for value, base in values:
        if base == 0:
            if value > 0:
                return None
            continue
        worst = max(worst, value / base)
    return worst


def _stretch(
    config: ExperimentConfig, f: ServiceFunction, p: Partition
) -> StretchReport:
    return stretch(f, p, reduced=config.reduced, max_n=config.max_n)


@suite("mla-bound", sizes=(4, 16), count=50)
def mla_bound(config: ExperimentConfig, n: int, seed: int) -> List[Measurement]:
    """Stretch of the MLA partition of random trees, at most 10 sqrt(n) + 2."""
    t = gen_random_mla(n, seed)
    report = _stretch(config, t, mla_partition(t))
    low, high = _root_bounds(10, n, 2)
    return [_measure("mla-bound", report.ratio, low, high, report.within(10, n, 2))]


@suite("mla-structure", sizes=(4, 16), count=50)
def mla_structure(config: ExperimentConfig, n: int, seed: int) -> List[Measurement]:
    """Count of light clusters, cluster costs and work of the MLA partition."""
    t = gen_random_mla(n, seed)
    trace = mla_partition_trace(t)
    light = len(trace.light)
    low, high = _root_bounds(1, n, 1)
    holds = light == 0 or (light - 1) ** 2 <= n
    measurements = [_measure("mla-light-count", Fraction(light), low, high, holds)]
    if trace.heavy:
        heavy = _ratio((t(c.nodes), t.costs[c.anchor]) for c in trace.heavy)
        low, high = _root_bounds(8, n, 0)
        holds = heavy is not None and heavy * heavy <= 64 * n
        measurements.append(_measure("mla-heavy-cost", heavy, low, high, holds))
    if trace.light:
        cost = _ratio((t(c.nodes), t.path_costs[c.anchor]) for c in trace.light)
        measurements.append(("mla-light-cost", cost, Fraction(2)))
    visits = Fraction(trace.visits, n * n)
    measurements.append(("mla-visits", visits, Fraction(MLA_VISITS_CONSTANT)))
    return measurements


@suite("mla-lower", sizes=(4, 9), accepts=is_perfect_square)
def mla_lower(config: ExperimentConfig, n: int, seed: int) -> List[Measurement]:
    """Smallest stretch of any partition of the star, at least sqrt(n) / 2."""
    cap = min(config.max_n, MAX_PARTITION_SEARCH_N)
    value, _ = min_stretch_over_partitions(gen_star_mla(n), max_n=cap)
    return [("mla-lower", value, Fraction(exact_sqrt(n), 2))]


@suite("symmetric-bound", sizes=(1, 16), count=20)
def symmetric_bound(config: ExperimentConfig, n: int, seed: int) -> List[Measurement]:
    """Stretch of the block partition of random symmetric functions."""
    f = gen_random_symmetric(n, seed)
    report = _stretch(config, f, symmetric_partition(f))
    return [("symmetric-bound", report.ratio, Fraction(2 * ceil_sqrt(n)))]


@suite("ceiling-lower", sizes=(4, 16), accepts=is_perfect_square)
def ceiling_lower(config: ExperimentConfig, n: int, seed: int) -> List[Measurement]:
    """Smallest stretch of any partition of the ceiling function."""
    cap = min(config.max_n, MAX_SYMMETRIC_SEARCH_N)
    value, _ = min_stretch_over_partitions(gen_ceiling_symmetric(n), max_n=cap)
    return [("ceiling-lower", value, Fraction(exact_sqrt(n), 2))]


@suite("weighted-bound", sizes=(1, 12), count=20)
def weighted_bound(config: ExperimentConfig, n: int, seed: int) -> List[Measurement]:
    """Stretch of the weighted partition, at most C sqrt(n)."""
    inst = gen_random_weighted(n, seed)
    p, _ = weighted_partition(inst)
    report = _stretch(config, inst, p)
    return [_stretch_bound("weighted-bound", report, WEIGHTED_STRETCH_CONSTANT, n)]


@suite("envelope", sizes=(1, 1024), count=5, accepts=_envelope_sweep)
def envelope(config: ExperimentConfig, W: int, seed: int) -> List[Measurement]:
    """Affine envelopes of random scalar functions over 0..W."""
    samples = gen_random_scalar_subadditive(W, seed)
    env = build_affine_envelope(samples, W)
    values = [env(x) for x in range(W + 1)]
    upper = _ratio((values[x], samples[x]) for x in range(W + 1))
    lower = min(
        (values[x] / samples[x] for x in range(1, W + 1) if samples[x] > 0),
        default=Fraction(1),
    )
    pieces = [env.piece(k) for k in range(1, len(env) + 1)]
    gaps = sum(
        1
        for a, b in zip(pieces, pieces[1:])
        if not (b.sigma > 2 * a.sigma and 2 * b.delta < a.delta)
    )
    crossings = 0
    for k in range(2, len(env) + 1):
        threshold = crossover_threshold(env, k)
        if threshold is None:
            continue
        start = max(0, -(-threshold.numerator // threshold.denominator))
        sigma = env.piece(k).sigma
        crossings += sum(1 for x in range(start, W + 1) if values[x] < sigma)
    return [
        ("envelope", upper, Fraction(8)),
        ("envelope-floor", lower, Fraction(1)),
        ("envelope-gaps", Fraction(gaps), Fraction(0)),
        ("crossover", Fraction(crossings), Fraction(0)),
    ]


@suite("usc-pipeline", sizes=(2, 10), count=10)
def usc_pipeline(config: ExperimentConfig, n: int, seed: int) -> List[Measurement]:
    """Stretch of the set cover pipeline, at most 4 sqrt(n ln n)."""
    f = gen_random_subadditive(n, seed)
    p = subadditive_to_disjoint(f)
    report = _stretch(config, f, p)
    ln_low, ln_high = _ln_bracket(n)
    low = 4 * _sqrt_floor(n * ln_low)
    high = 4 * (_sqrt_floor(n * ln_high) + Fraction(1, BOUND_PRECISION))
    ratio = report.ratio
    holds = ratio is not None and ratio * ratio <= 16 * n * ln_low
    dominance = min(p.induced(s) / f(s) for s in range(1, 1 << n))
    return [
        _measure("usc-pipeline", ratio, low, high, holds),
        ("usc-dominance", dominance, Fraction(1)),
    ]


def _surd_floor(value: Surd) -> Fraction:
    return _sqrt_floor(value.square())


@suite("jia-tight", sizes=(2, 16))
def jia_tight(config: ExperimentConfig, k: int, seed: int) -> List[Measurement]:
    """Greedy order and cost on the tight instance, at least sqrt(k) ln(k) / 2."""
    sys = gen_jia_tight(k, JIA_EPS)
    order = list(usc_greedy(sys).order)
    expected = list(range(1, k + 1))
    mismatches = sum(1 for a, b in zip(order, expected) if a != b)
    mismatches += abs(len(order) - len(expected))
    base = sys.costs[0].square()
    total = sum(
        (_surd_floor(Surd.sqrt(c.square() / base)) for c in sys.costs[1:]),
        Fraction(0),
    )
    ln_low, ln_high = _ln_bracket(k)
    step = Fraction(1, BOUND_PRECISION)
    low = _sqrt_floor(k * ln_low * ln_low) / JIA_TIGHT_DIVISOR
    high = (_sqrt_floor(k * ln_high * ln_high) + step) / JIA_TIGHT_DIVISOR
    holds = (JIA_TIGHT_DIVISOR * total) ** 2 >= k * ln_high * ln_high
    return [
        ("jia-order", Fraction(mismatches), Fraction(0)),
        _measure("jia-tight", total, low, high, holds),
    ]


@suite("touitou", sizes=(3, 6))
def touitou(config: ExperimentConfig, n: int, seed: int) -> List[Measurement]:
    """Reference costs of the Touitou tree, with the online run for small n."""
    inst = gen_touitou(n, config.tau)
    ln_low, ln_high = _ln_bracket(n)
    ratio = inst.ratio_ref
    low = _sqrt_floor(n * ln_low) / 2
    high = (_sqrt_floor(n * ln_high) + Fraction(1, BOUND_PRECISION)) / 2
    holds = 4 * ratio * ratio >= n * ln_high
    measurements = [_measure("touitou-ref", ratio, low, high, holds)]
    if len(inst.stream) > MAX_OPT_REQUESTS:
        return measurements
    opt, _ = _offline_opt(config, inst.tree, inst.stream)
    measurements.append(("touitou-opt", opt, inst.opt_bound))
    p = mla_partition(inst.tree)
    report = _stretch(config, inst.tree, p)
    if report.ratio is not None:
        schedule = reduce_and_run(inst.tree, p, inst.stream, horizon=config.horizon)
        online = competitive_ratio(schedule.total_cost, opt)
        measurements.append(("touitou-online", online, 2 * report.ratio))
    return measurements


def _offline_opt(
    config: ExperimentConfig, f: ServiceFunction, stream: RequestStream
) -> Tuple[Fraction, ServiceSchedule]:
    value, schedule = offline_opt(f, stream)
    if config.verify == "exhaustive" and len(stream) <= MAX_CROSS_CHECK_REQUESTS:
        check, _ = offline_opt(f, stream, method="bell")
        if check != value:
            raise VerificationError(
                "offline optimum methods agree", f"{value} != {check}"
            )
    return value, schedule


def _random_stream_size(name: str, seed: int) -> int:
    return random.Random(seed).randint(1, MAX_STREAM_REQUESTS[name])


@suite("disjoint-online", sizes=(1, 4), count=125)
def disjoint_online(config: ExperimentConfig, n: int, seed: int) -> List[Measurement]:
    """Online cost on disjoint functions, at most twice the optimum."""
    g = gen_random_disjoint(n, seed)
    size = _random_stream_size("disjoint-online", seed)
    stream = gen_random_stream(n, size, seed + 1)
    schedule = run_disjoint_online(g.partition, stream, horizon=config.horizon)
    opt, _ = _offline_opt(config, g, stream)
    lower = competitive_ratio(opt, interval_lower_bound(schedule))
    return [
        ("disjoint-online", competitive_ratio(schedule.total_cost, opt), Fraction(2)),
        ("interval-bound", lower, Fraction(1)),
    ]


@suite("reduction", sizes=(1, 6), count=34)
def reduction(config: ExperimentConfig, n: int, seed: int) -> List[Measurement]:
    """Online cost through a partition, at most twice its stretch times the optimum."""
    f = gen_random_subadditive(n, seed)
    p = Partition.from_function(f, gen_random_partition(n, seed))
    size = _random_stream_size("reduction", seed)
    stream = gen_random_stream(n, size, seed + 1)
    report = _stretch(config, f, p)
    assert report.ratio is not None
    schedule = reduce_and_run(f, p, stream, horizon=config.horizon)
    opt, _ = _offline_opt(config, f, stream)
    ratio = competitive_ratio(schedule.total_cost, opt)
    return [("reduction", ratio, 2 * report.ratio)]
