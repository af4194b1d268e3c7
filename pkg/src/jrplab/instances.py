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
JSON documents for instances, partitions and results.

Every number is written as an exact fraction string such as ``"3/4"``;
sets of types are written as sorted lists of indices.
Documents are written with sorted keys and a trailing newline,
so the same content always gives the same bytes.

Instance and partition documents are parsed by a strict schema
that rejects unknown fields and fractions not in lowest terms.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Annotated, Any, Dict, List, Literal, Mapping, Optional, Tuple, Union

import pydantic
from pydantic import AfterValidator, BaseModel, ConfigDict, Field

from jrplab._version import __version__
from jrplab.core import (
    DisjointFunction,
    ExplicitFunction,
    Partition,
    PartTag,
    ServiceFunction,
    SymmetricFunction,
    Universe,
)
from jrplab.engine import Service, ServiceSchedule
from jrplab.exact import format_fraction, parse_fraction
from jrplab.exceptions import InstanceParseError, JrpLabError
from jrplab.mla import MlaInstance
from jrplab.storage import read_uri, write_uri
from jrplab.streams import DelayFunction, Request, RequestStream
from jrplab.stretch import StretchReport
from jrplab.utils import mask_of, members
from jrplab.weighted import AffineEnvelope, WeightedSymmetric

logger = logging.getLogger("jrplab")

INSTANCE_FORMAT = "jrplab-instance/1"
PARTITION_FORMAT = "jrplab-partition/1"
STRETCH_FORMAT = "jrplab-stretch/1"
SCHEDULE_FORMAT = "jrplab-schedule/1"
OPT_FORMAT = "jrplab-opt/1"
AUDIT_FORMAT = "jrplab-audit/1"


def _canonical(text: str) -> str:
    parse_fraction(text)
    return text


def _non_negative(text: str) -> str:
    if parse_fraction(text) < 0:
        raise ValueError(f"Negative value: {text}")
    return text


FractionStr = Annotated[str, AfterValidator(_canonical)]
CostStr = Annotated[str, AfterValidator(_non_negative)]
Index = Annotated[int, Field(ge=0)]
Size = Annotated[int, Field(ge=1)]

MODEL_CONFIG = ConfigDict(extra="forbid", frozen=True, strict=True)


class ExplicitModel(BaseModel):
    model_config = MODEL_CONFIG

    kind: Literal["explicit"]
    n: Size
    table: List[CostStr]


class DisjointModel(BaseModel):
    model_config = MODEL_CONFIG

    kind: Literal["disjoint"]
    n: Size
    parts: List[List[Index]]
    costs: List[CostStr]


class SymmetricModel(BaseModel):
    model_config = MODEL_CONFIG

    kind: Literal["symmetric"]
    values: List[CostStr]


class PieceModel(BaseModel):
    model_config = MODEL_CONFIG

    sigma: CostStr
    delta: CostStr


class WeightedModel(BaseModel):
    model_config = MODEL_CONFIG

    kind: Literal["weighted_symmetric"]
    weights: List[CostStr]
    W: Size
    pieces: List[PieceModel]


class MlaModel(BaseModel):
    model_config = MODEL_CONFIG

    kind: Literal["mla"]
    parent: List[Optional[Index]]
    costs: List[CostStr]


FunctionModel = Annotated[
    Union[ExplicitModel, DisjointModel, SymmetricModel, WeightedModel, MlaModel],
    Field(discriminator="kind"),
]


class DelayModel(BaseModel):
    model_config = MODEL_CONFIG

    points: List[Tuple[FractionStr, FractionStr]]
    slope: Optional[FractionStr] = None


class RequestModel(BaseModel):
    model_config = MODEL_CONFIG

    id: Index
    type: Index
    arrival: FractionStr
    delay: DelayModel


class InstanceModel(BaseModel):
    model_config = MODEL_CONFIG

    format: Literal["jrplab-instance/1"]
    version: Optional[str] = None
    config: Optional[Dict[str, str]] = None
    function: FunctionModel
    requests: Optional[List[RequestModel]] = None


class PartitionModel(BaseModel):
    model_config = MODEL_CONFIG

    format: Literal["jrplab-partition/1"]
    version: Optional[str] = None
    config: Optional[Dict[str, str]] = None
    n: Size
    parts: List[List[Index]]
    costs: List[CostStr]
    tags: Optional[List[Optional[str]]] = None


@dataclass(frozen=True)
class Instance:
    """Service function with an optional stream of requests."""

    function: ServiceFunction
    stream: Optional[RequestStream] = None

    @property
    def kind(self) -> str:
        return self.function.kind


def _dump(document: Mapping[str, Any]) -> str:
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _header(format_: str, config: Optional[Mapping[str, str]]) -> Dict[str, Any]:
    header: Dict[str, Any] = {"format": format_, "version": __version__}
    if config is not None:
        header["config"] = dict(config)
    return header


def _fractions(values: Any) -> List[str]:
    return [format_fraction(v) for v in values]


def _validate(model: Any, text: str) -> Any:
    try:
        json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceParseError(e.msg, line=e.lineno) from None
    try:
        return model.model_validate_json(text)
    except pydantic.ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"]) or None
        raise InstanceParseError(error["msg"], field=field) from None


def _function_from_model(model: Any) -> ServiceFunction:
    if isinstance(model, ExplicitModel):
        return ExplicitFunction(model.n, [parse_fraction(v) for v in model.table])
    if isinstance(model, DisjointModel):
        partition = Partition(
            Universe(model.n),
            tuple(mask_of(part) for part in model.parts),
            tuple(parse_fraction(c) for c in model.costs),
        )
        return DisjointFunction(partition)
    if isinstance(model, SymmetricModel):
        return SymmetricFunction([parse_fraction(v) for v in model.values])
    if isinstance(model, WeightedModel):
        envelope = AffineEnvelope(
            [(parse_fraction(p.sigma), parse_fraction(p.delta)) for p in model.pieces],
            model.W,
        )
        return WeightedSymmetric([parse_fraction(w) for w in model.weights], envelope)
    assert isinstance(model, MlaModel)
    return MlaInstance(model.parent, [parse_fraction(c) for c in model.costs])


def _function_to_document(f: ServiceFunction) -> Dict[str, Any]:
    if isinstance(f, ExplicitFunction):
        return {"kind": f.kind, "n": f.n, "table": _fractions(f.table)}
    if isinstance(f, DisjointFunction):
        p = f.partition
        return {
            "kind": f.kind,
            "n": f.n,
            "parts": [members(part) for part in p.parts],
            "costs": _fractions(p.costs),
        }
    if isinstance(f, SymmetricFunction):
        return {"kind": f.kind, "values": _fractions(f.values)}
    if isinstance(f, WeightedSymmetric):
        return {
            "kind": f.kind,
            "weights": _fractions(f.weights),
            "W": f.envelope.W,
            "pieces": [
                {"sigma": format_fraction(p.sigma), "delta": format_fraction(p.delta)}
                for p in f.envelope.pieces
            ],
        }
    if isinstance(f, MlaInstance):
        return {"kind": f.kind, "parent": list(f.parent), "costs": _fractions(f.costs)}
    raise TypeError(f"Cannot serialize {type(f).__name__}.")


def _request_to_document(q: Request) -> Dict[str, Any]:
    delay: Dict[str, Any] = {
        "points": [[format_fraction(t), format_fraction(v)] for t, v in q.delay.points],
        "slope": format_fraction(q.delay.slope),
    }
    return {
        "id": q.id,
        "type": q.type,
        "arrival": format_fraction(q.arrival),
        "delay": delay,
    }


def _request_from_model(model: RequestModel) -> Request:
    points = [(parse_fraction(t), parse_fraction(v)) for t, v in model.delay.points]
    slope = None if model.delay.slope is None else parse_fraction(model.delay.slope)
    return Request(
        model.id,
        model.type,
        parse_fraction(model.arrival),
        DelayFunction(points, slope),
    )


def parse_instance(text: str) -> Instance:
    """
    Parse an instance document.

    Raises :class:`.InstanceParseError` with the offending line or field.
    """
    model = _validate(InstanceModel, text)
    try:
        function = _function_from_model(model.function)
    except (JrpLabError, ValueError) as e:
        raise InstanceParseError(str(e), field="function") from None
    stream = None
    if model.requests is not None:
        try:
            stream = RequestStream(_request_from_model(r) for r in model.requests)
            stream.check_universe(function.universe)
        except JrpLabError as e:
            raise InstanceParseError(str(e), field="requests") from None
    return Instance(function, stream)


def serialize_instance(
    instance: Instance, *, config: Optional[Mapping[str, str]] = None
) -> str:
    document = _header(INSTANCE_FORMAT, config)
    document["function"] = _function_to_document(instance.function)
    if instance.stream is not None:
        document["requests"] = [_request_to_document(q) for q in instance.stream]
    return _dump(document)


def read_instance(uri: str) -> Instance:
    """Read an instance document from a path or a storage URI."""
    instance = parse_instance(read_uri(uri))
    logger.info(f"Instance loaded from {uri}: {instance.function!r}")
    return instance


def write_instance(
    instance: Instance, uri: str, *, config: Optional[Mapping[str, str]] = None
) -> None:
    write_uri(uri, serialize_instance(instance, config=config))
    logger.info(f"Instance saved to {uri}: {instance.function!r}")


def parse_partition(text: str) -> Partition:
    model = _validate(PartitionModel, text)
    try:
        tags = None
        if model.tags is not None:
            tags = tuple(None if t is None else PartTag(t) for t in model.tags)
        return Partition(
            Universe(model.n),
            tuple(mask_of(part) for part in model.parts),
            tuple(parse_fraction(c) for c in model.costs),
            tags or (),
        )
    except (JrpLabError, ValueError) as e:
        raise InstanceParseError(str(e), field="parts") from None


def serialize_partition(
    p: Partition, *, config: Optional[Mapping[str, str]] = None
) -> str:
    document = _header(PARTITION_FORMAT, config)
    document.update(
        n=p.n,
        parts=[members(part) for part in p.parts],
        costs=_fractions(p.costs),
        tags=[None if t is None else t.value for t in p.tags],
    )
    return _dump(document)


def serialize_stretch(
    report: StretchReport, *, config: Optional[Mapping[str, str]] = None
) -> str:
    document = _header(STRETCH_FORMAT, config)
    ratio = report.ratio
    document.update(
        ratio=None if ratio is None else format_fraction(ratio),
        ratio_num=None if ratio is None else ratio.numerator,
        ratio_den=None if ratio is None else ratio.denominator,
        witness=members(report.witness),
        witness_mask=report.witness,
        breakdown=list(report.breakdown),
        g_value=format_fraction(report.g_value),
        f_value=format_fraction(report.f_value),
    )
    return _dump(document)


def _service_to_document(s: Service) -> Dict[str, Any]:
    document: Dict[str, Any] = {
        "time": format_fraction(s.time),
        "requests": list(s.requests),
        "types": members(s.types),
        "cost": format_fraction(s.cost),
    }
    if s.part is not None:
        document["part"] = s.part
    if s.g_cost is not None:
        document["g_cost"] = format_fraction(s.g_cost)
    return document


def _schedule_fields(schedule: ServiceSchedule) -> Dict[str, Any]:
    return {
        "services": [_service_to_document(s) for s in schedule.services],
        "completions": {
            str(q): format_fraction(t) for q, t in sorted(schedule.completions.items())
        },
        "delays": {
            str(q): format_fraction(d) for q, d in sorted(schedule.delays.items())
        },
        "unserved": list(schedule.unserved),
        "service_cost": format_fraction(schedule.service_cost),
        "delay_cost": format_fraction(schedule.delay_cost),
        "total_cost": format_fraction(schedule.total_cost),
    }


def serialize_schedule(
    schedule: ServiceSchedule, *, config: Optional[Mapping[str, str]] = None
) -> str:
    document = _header(SCHEDULE_FORMAT, config)
    document.update(_schedule_fields(schedule))
    document["g_total_cost"] = format_fraction(schedule.g_total_cost)
    return _dump(document)


def serialize_opt(
    value: Fraction,
    schedule: ServiceSchedule,
    *,
    config: Optional[Mapping[str, str]] = None,
) -> str:
    document = _header(OPT_FORMAT, config)
    document.update(_schedule_fields(schedule))
    document["opt"] = format_fraction(value)
    return _dump(document)


def serialize_audit(
    passed: bool, details: str, *, config: Optional[Mapping[str, str]] = None
) -> str:
    document = _header(AUDIT_FORMAT, config)
    document.update(passed=passed, details=details)
    return _dump(document)


def _load_json(text: str) -> Dict[str, Any]:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceParseError(e.msg, line=e.lineno) from None
    if not isinstance(document, dict):
        raise InstanceParseError("Document must be an object.")
    return document


def _check_format(document: Mapping[str, Any], format_: str) -> None:
    if document.get("format") != format_:
        raise InstanceParseError(f"Expected format {format_}.", field="format")


def parse_stretch(text: str) -> StretchReport:
    """Parse a stretch report written by :func:`serialize_stretch`."""
    document = _load_json(text)
    _check_format(document, STRETCH_FORMAT)
    try:
        ratio = document["ratio"]
        return StretchReport(
            None if ratio is None else parse_fraction(ratio),
            int(document["witness_mask"]),
            tuple(document["breakdown"]),
            parse_fraction(document["g_value"]),
            parse_fraction(document["f_value"]),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise InstanceParseError(f"Invalid stretch report: {e}") from None


def _service_from_document(document: Mapping[str, Any]) -> Service:
    g_cost = document.get("g_cost")
    return Service(
        parse_fraction(document["time"]),
        tuple(document["requests"]),
        mask_of(document["types"]),
        parse_fraction(document["cost"]),
        document.get("part"),
        None if g_cost is None else parse_fraction(g_cost),
    )


def parse_opt(text: str) -> Tuple[Fraction, ServiceSchedule]:
    """Parse an offline optimum written by :func:`serialize_opt`."""
    document = _load_json(text)
    _check_format(document, OPT_FORMAT)
    try:
        schedule = ServiceSchedule(
            tuple(_service_from_document(s) for s in document["services"]),
            {int(q): parse_fraction(t) for q, t in document["completions"].items()},
            {int(q): parse_fraction(d) for q, d in document["delays"].items()},
            tuple(document["unserved"]),
        )
        return parse_fraction(document["opt"]), schedule
    except (KeyError, TypeError, ValueError) as e:
        raise InstanceParseError(f"Invalid offline optimum: {e}") from None
