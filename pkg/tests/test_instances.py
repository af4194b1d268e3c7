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


import json
from fractions import Fraction

import pytest

from jrplab._version import __version__
from jrplab.core import (
    DisjointFunction,
    ExplicitFunction,
    Partition,
    SymmetricFunction,
)
from jrplab.engine import run_disjoint_online
from jrplab.exceptions import InstanceParseError
from jrplab.generators import gen_random_weighted, gen_touitou
from jrplab.instances import (
    Instance,
    parse_instance,
    parse_opt,
    parse_partition,
    parse_stretch,
    read_instance,
    serialize_audit,
    serialize_instance,
    serialize_opt,
    serialize_partition,
    serialize_schedule,
    serialize_stretch,
    write_instance,
)
from jrplab.mla import gen_star_mla, mla_partition
from jrplab.offline import offline_opt
from jrplab.stretch import StretchReport, stretch

PAIR = """\
{
  "format": "jrplab-instance/1",
  "function": {"kind": "explicit", "n": 2, "table": ["0", "1", "1", "3/2"]},
  "requests": [
    {"id": 0, "type": 1, "arrival": "1/2",
     "delay": {"points": [["0", "0"], ["1", "2"]]}}
  ]
}
"""


def _document(**function):
    return json.dumps({"format": "jrplab-instance/1", "function": function})


class TestParseInstance:
    def test_pair(self):
        instance = parse_instance(PAIR)
        assert instance.kind == "explicit"
        assert instance.function(0b11) == Fraction(3, 2)
        (q,) = instance.stream
        assert (q.id, q.type, q.arrival) == (0, 1, Fraction(1, 2))
        assert q.delay.slope == 2

    def test_without_requests(self):
        instance = parse_instance(_document(kind="symmetric", values=["0", "1", "1"]))
        assert instance.function == SymmetricFunction([0, 1, 1])
        assert instance.stream is None

    def test_invalid_json(self):
        with pytest.raises(InstanceParseError) as excinfo:
            parse_instance("{\n  oops\n}")
        assert excinfo.value.line == 2
        assert str(excinfo.value).startswith("line 2: ")

    def test_unknown_field(self):
        text = _document(kind="symmetric", values=["0", "1"], extra="1")
        with pytest.raises(InstanceParseError) as excinfo:
            parse_instance(text)
        assert excinfo.value.field.startswith("function")

    @pytest.mark.parametrize("value", ["2/4", "1.5", "-1", 1])
    def test_invalid_cost(self, value):
        with pytest.raises(InstanceParseError):
            parse_instance(_document(kind="symmetric", values=["0", value]))

    def test_unknown_kind(self):
        with pytest.raises(InstanceParseError):
            parse_instance(_document(kind="submodular", values=["0"]))

    def test_malformed_function(self):
        text = _document(kind="disjoint", n=2, parts=[[0]], costs=["1"])
        with pytest.raises(InstanceParseError) as excinfo:
            parse_instance(text)
        assert excinfo.value.field == "function"
        assert "does not cover" in str(excinfo.value)

    def test_request_outside_universe(self):
        document = json.loads(PAIR)
        document["requests"][0]["type"] = 2
        with pytest.raises(InstanceParseError) as excinfo:
            parse_instance(json.dumps(document))
        assert excinfo.value.field == "requests"

    def test_wrong_format(self):
        with pytest.raises(InstanceParseError):
            parse_instance(PAIR.replace("jrplab-instance/1", "jrplab-partition/1"))


class TestSerializeInstance:
    def test_canonical(self):
        text = serialize_instance(parse_instance(PAIR), config={"seed": "0"})
        document = json.loads(text)
        assert text.endswith("}\n")
        assert list(document) == sorted(document)
        assert document["version"] == __version__
        assert document["config"] == {"seed": "0"}
        assert document["requests"][0]["delay"]["slope"] == "2"

    @pytest.mark.parametrize(
        "instance",
        [
            Instance(gen_star_mla(9)),
            Instance(gen_random_weighted(5, 3)),
            Instance(gen_touitou(3, 2).tree, gen_touitou(3, 2).stream),
        ],
        ids=["mla", "weighted", "touitou"],
    )
    def test_parse_back(self, instance):
        text = serialize_instance(instance)
        assert parse_instance(text) == instance
        assert serialize_instance(parse_instance(text)) == text

    def test_disjoint(self):
        f = ExplicitFunction(2, [0, 1, 1, Fraction(3, 2)])
        p = Partition.from_function(f, [0b01, 0b10])
        instance = Instance(DisjointFunction(p))
        assert parse_instance(serialize_instance(instance)) == instance

    def test_file(self, tmp_path):
        uri = str(tmp_path / "pair.json")
        instance = parse_instance(PAIR)
        write_instance(instance, uri)
        assert read_instance(uri) == instance


class TestPartitionDocument:
    def test_star(self):
        p = mla_partition(gen_star_mla(4))
        document = json.loads(serialize_partition(p))
        assert document["parts"] == [[1], [2], [3], [0]]
        assert document["costs"] == ["3", "3", "3", "2"]
        assert document["tags"] == ["heavy"] * 4
        assert parse_partition(serialize_partition(p)) == p

    def test_without_tags(self):
        text = json.dumps(
            {"format": "jrplab-partition/1", "n": 2, "parts": [[0, 1]], "costs": ["1"]}
        )
        p = parse_partition(text)
        assert p.tags == (None,)

    def test_unknown_tag(self):
        text = json.dumps(
            {
                "format": "jrplab-partition/1",
                "n": 1,
                "parts": [[0]],
                "costs": ["1"],
                "tags": ["sparkly"],
            }
        )
        with pytest.raises(InstanceParseError):
            parse_partition(text)

    def test_overlap(self):
        text = json.dumps(
            {
                "format": "jrplab-partition/1",
                "n": 2,
                "parts": [[0, 1], [1]],
                "costs": ["1", "1"],
            }
        )
        with pytest.raises(InstanceParseError) as excinfo:
            parse_partition(text)
        assert excinfo.value.field == "parts"


class TestResultDocuments:
    def test_stretch(self):
        star = gen_star_mla(4)
        report = stretch(star, mla_partition(star))
        document = json.loads(serialize_stretch(report))
        assert document["ratio"] == "11/5"
        assert (document["ratio_num"], document["ratio_den"]) == (11, 5)
        assert document["witness"] == [0, 1, 2, 3]
        assert parse_stretch(serialize_stretch(report)) == report

    def test_infinite_stretch(self):
        report = StretchReport(None, 0b1, (0,), Fraction(1), Fraction(0))
        document = json.loads(serialize_stretch(report))
        assert document["ratio"] is None
        assert parse_stretch(serialize_stretch(report)) == report

    def test_stretch_wrong_format(self):
        with pytest.raises(InstanceParseError):
            parse_stretch(serialize_audit(True, "PASS"))

    def test_opt(self):
        inst = gen_touitou(3, 2)
        value, schedule = offline_opt(inst.tree, inst.stream)
        parsed_value, parsed = parse_opt(serialize_opt(value, schedule))
        assert parsed_value == value
        assert parsed == schedule

    def test_schedule(self):
        p = Partition.from_function(ExplicitFunction(1, [0, 1]), [0b1])
        schedule = run_disjoint_online(p, parse_instance(PAIR).stream.restricted(0))
        document = json.loads(serialize_schedule(schedule))
        assert document["services"] == []
        assert document["total_cost"] == "0"
        assert document["g_total_cost"] == "0"

    def test_audit(self):
        document = json.loads(serialize_audit(False, "FAIL monotone"))
        assert document == {
            "format": "jrplab-audit/1",
            "version": __version__,
            "passed": False,
            "details": "FAIL monotone",
        }

    @pytest.mark.parametrize("text", ["[]", "{}", '{"format": "jrplab-opt/1"}'])
    def test_invalid_opt(self, text):
        with pytest.raises(InstanceParseError):
            parse_opt(text)
