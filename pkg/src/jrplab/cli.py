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
Command-line interface.

Exit codes are 0 on success, 1 when a checked bound is violated
and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import io
import logging
import sys
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence, Tuple

from jrplab.assembly import environ_setup
from jrplab.core import Partition
from jrplab.exact import parse_fraction
from jrplab.exceptions import JrpLabError, VerificationError
from jrplab.experiments import VERIFY_LEVELS, ExperimentConfig
from jrplab.instances import (
    Instance,
    parse_partition,
    read_instance,
    serialize_audit,
    serialize_instance,
    serialize_opt,
    serialize_partition,
    serialize_schedule,
    serialize_stretch,
)
from jrplab.lab import GENERATORS, Laboratory, suite_names
from jrplab.storage import NotFoundError, UnsupportedURIError, read_uri, write_uri

logger = logging.getLogger("jrplab")

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def parse_range(text: str) -> Tuple[int, int]:
    """Parse ``a..b`` or a single size ``a``."""
    low, sep, high = text.partition("..")
    try:
        sizes = (int(low), int(high if sep else low))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid range: {text!r}") from None
    if not 1 <= sizes[0] <= sizes[1]:
        raise argparse.ArgumentTypeError(f"invalid range: {text!r}")
    return sizes


def parse_horizon(text: str) -> Optional[Fraction]:
    if text.lower() == "none":
        return None
    try:
        value = parse_fraction(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"negative horizon: {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="log progress (-v) or every step (-vv)",
    )
    common.add_argument("--verify", choices=VERIFY_LEVELS, help="verification level")
    common.add_argument(
        "--horizon",
        type=parse_horizon,
        default=argparse.SUPPRESS,
        help="simulation cutoff after the last arrival, or 'none'",
    )
    common.add_argument(
        "--max-n", type=int, help="cap on exhaustive subset enumeration"
    )
    common.add_argument("--out", help="output path or URI, standard output by default")

    parser = argparse.ArgumentParser(
        prog="jrplab",
        description="Competitive-analysis laboratory for online joint replenishment.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser(
        "validate", parents=[common], help="check monotonicity and subadditivity"
    )
    validate.add_argument("--in", dest="source", required=True)

    partition = commands.add_parser(
        "partition", parents=[common], help="partition a service function"
    )
    partition.add_argument("--in", dest="source", required=True)

    stretch = commands.add_parser(
        "stretch", parents=[common], help="exact stretch of a partition"
    )
    stretch.add_argument("--in", "--fn", dest="source", required=True)
    stretch.add_argument("--partition", help="partition document, computed if omitted")

    simulate = commands.add_parser(
        "simulate", parents=[common], help="run the online algorithm"
    )
    simulate.add_argument("--in", dest="source", required=True)
    simulate.add_argument("--partition", help="partition document, computed if omitted")

    opt = commands.add_parser("opt", parents=[common], help="optimal offline cost")
    opt.add_argument("--in", dest="source", required=True)

    generate = commands.add_parser(
        "generate", parents=[common], help="generate a named instance"
    )
    generate.add_argument("name", choices=GENERATORS)
    generate.add_argument("--n", dest="size", type=int, required=True)
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--tau", type=int, default=2)
    generate.add_argument(
        "--requests", type=int, default=0, help="number of random requests"
    )

    experiment = commands.add_parser(
        "experiment", parents=[common], help="run an experiment suite"
    )
    experiment.add_argument("--suite", choices=suite_names(), required=True)
    experiment.add_argument("--n", dest="sizes", type=parse_range)
    experiment.add_argument("--count", type=int, help="random instances per size")
    experiment.add_argument("--seed", type=int, default=0)
    experiment.add_argument("--tau", type=int, default=2)
    return parser


def configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(
        level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out is None:
        sys.stdout.write(text)
    else:
        write_uri(args.out, text)
        logger.info(f"Output written to {args.out}")


def _config(lab: Laboratory, args: argparse.Namespace) -> ExperimentConfig:
    return lab.config(
        args.command,
        suite=getattr(args, "suite", None),
        source=getattr(args, "source", None) or getattr(args, "name", None),
        seed=getattr(args, "seed", 0),
        sizes=getattr(args, "sizes", None),
        count=getattr(args, "count", None),
        tau=getattr(args, "tau", 2),
        output=args.out,
    )


def _partition_of(
    lab: Laboratory, args: argparse.Namespace, instance: Instance
) -> Partition:
    if args.partition is not None:
        return parse_partition(read_uri(args.partition))
    return lab.partition(instance.function)


def cmd_validate(lab: Laboratory, args: argparse.Namespace) -> int:
    instance = read_instance(args.source)
    report = lab.validate(instance.function)
    echo = _config(lab, args).echo()
    _emit(args, serialize_audit(report.passed, str(report), config=echo))
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_partition(lab: Laboratory, args: argparse.Namespace) -> int:
    instance = read_instance(args.source)
    p = lab.partition(instance.function)
    _emit(args, serialize_partition(p, config=_config(lab, args).echo()))
    return EXIT_OK


def cmd_stretch(lab: Laboratory, args: argparse.Namespace) -> int:
    instance = read_instance(args.source)
    report = lab.stretch(instance, _partition_of(lab, args, instance))
    _emit(args, serialize_stretch(report, config=_config(lab, args).echo()))
    return EXIT_OK


def cmd_simulate(lab: Laboratory, args: argparse.Namespace) -> int:
    instance = read_instance(args.source)
    schedule = lab.simulate(instance, _partition_of(lab, args, instance))
    _emit(args, serialize_schedule(schedule, config=_config(lab, args).echo()))
    return EXIT_OK


def cmd_opt(lab: Laboratory, args: argparse.Namespace) -> int:
    instance = read_instance(args.source)
    value, schedule = lab.opt(instance)
    _emit(args, serialize_opt(value, schedule, config=_config(lab, args).echo()))
    return EXIT_OK


def cmd_generate(lab: Laboratory, args: argparse.Namespace) -> int:
    instance = lab.generate(
        args.name, args.size, seed=args.seed, tau=args.tau, requests=args.requests
    )
    _emit(args, serialize_instance(instance, config=_config(lab, args).echo()))
    return EXIT_OK


def cmd_experiment(lab: Laboratory, args: argparse.Namespace) -> int:
    results = lab.experiment(
        args.suite,
        sizes=args.sizes,
        count=args.count,
        seed=args.seed,
        tau=args.tau,
        output=args.out,
    )
    stream = io.StringIO()
    results.save(stream)
    _emit(args, stream.getvalue())
    violations = results.violations()
    for record in violations:
        logger.error(f"Bound violated: {record}")
    if violations and lab.verify != "none":
        return EXIT_VIOLATION
    return EXIT_OK


COMMANDS: Dict[str, Callable[[Laboratory, argparse.Namespace], int]] = {
    "validate": cmd_validate,
    "partition": cmd_partition,
    "stretch": cmd_stretch,
    "simulate": cmd_simulate,
    "opt": cmd_opt,
    "generate": cmd_generate,
    "experiment": cmd_experiment,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        lab = environ_setup()
        if args.verify is not None:
            lab.verify = args.verify
        if "horizon" in args:
            lab.horizon = args.horizon
        if args.max_n is not None:
            lab.max_n = args.max_n
        lab.check()
        return COMMANDS[args.command](lab, args)
    except VerificationError as e:
        logger.error(str(e))
        return EXIT_VIOLATION
    except (JrpLabError, ValueError, NotFoundError, UnsupportedURIError, OSError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
