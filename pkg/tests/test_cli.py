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


import argparse
import json
from fractions import Fraction

import pytest

from jrplab.cli import main, parse_horizon, parse_range

PAIR = {
    "format": "jrplab-instance/1",
    "function": {"kind": "explicit", "n": 2, "table": ["0", "1", "1", "3/2"]},
    "requests": [
        {
            "id": 0,
            "type": 1,
            "arrival": "1/2",
            "delay": {"points": [["0", "0"], ["1", "2"]]},
        }
    ],
}


@pytest.fixture(autouse=True)
def environ_fixture(monkeypatch):
    for key in ("MAX_N", "VERIFY", "HORIZON", "TIMING", "CACHE_LOCAL", "CACHE_REMOTE"):
        monkeypatch.delenv(f"JRPLAB_{key}", raising=False)


@pytest.fixture(name="pair_path")
def pair_path_fixture(tmp_path):
    path = tmp_path / "pair.json"
    path.write_text(json.dumps(PAIR))
    return str(path)


@pytest.fixture(name="star_path")
def star_path_fixture(tmp_path):
    path = str(tmp_path / "star.json")
    assert main(["generate", "star-mla", "--n", "4", "--out", path]) == 0
    return path


def _output(capsys):
    return json.loads(capsys.readouterr().out)


class TestParseRange:
    @pytest.mark.parametrize(
        "text, expected", [("4..9", (4, 9)), ("5", (5, 5)), ("3..3", (3, 3))]
    )
    def test_valid(self, text, expected):
        assert parse_range(text) == expected

    @pytest.mark.parametrize("text", ["", "a..b", "9..4", "0..3", "4.."])
    def test_invalid(self, text):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_range(text)


class TestParseHorizon:
    def test_valid(self):
        assert parse_horizon("5/2") == Fraction(5, 2)
        assert parse_horizon("None") is None

    @pytest.mark.parametrize("text", ["-1", "0.5", "2/4"])
    def test_invalid(self, text):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_horizon(text)


class TestMain:
    def test_generate(self, capsys):
        assert main(["generate", "touitou", "--n", "3", "--tau", "2"]) == 0
        document = _output(capsys)
        assert document["format"] == "jrplab-instance/1"
        assert document["config"]["command"] == "generate"
        assert document["config"]["source"] == "touitou"
        assert len(document["requests"]) == 6

    def test_validate(self, capsys, star_path):
        assert main(["validate", "--in", star_path]) == 0
        document = _output(capsys)
        assert document["format"] == "jrplab-audit/1"
        assert document["passed"] is True
        assert document["config"]["source"] == star_path

    def test_validate_fails(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        function = {"kind": "explicit", "n": 2, "table": ["0", "1", "1", "3"]}
        document = dict(PAIR, function=function)
        path.write_text(json.dumps(document))
        assert main(["validate", "--in", str(path)]) == 1
        assert _output(capsys)["passed"] is False

    def test_partition(self, capsys, star_path):
        assert main(["partition", "--in", star_path]) == 0
        assert _output(capsys)["format"] == "jrplab-partition/1"

    def test_stretch(self, capsys, star_path):
        assert main(["stretch", "--fn", star_path]) == 0
        document = _output(capsys)
        assert document["ratio"] == "11/5"
        assert (document["ratio_num"], document["ratio_den"]) == (11, 5)

    def test_stretch_given_partition(self, capsys, tmp_path, star_path):
        partition = str(tmp_path / "partition.json")
        assert main(["partition", "--in", star_path, "--out", partition]) == 0
        args = ["stretch", "--in", star_path, "--partition", partition]
        assert main(args) == 0
        assert _output(capsys)["ratio"] == "11/5"

    def test_stretch_miscosted_partition(self, tmp_path, star_path):
        partition = tmp_path / "partition.json"
        assert main(["partition", "--in", star_path, "--out", str(partition)]) == 0
        document = json.loads(partition.read_text())
        document["costs"][0] = "99"
        partition.write_text(json.dumps(document))
        args = ["stretch", "--in", star_path, "--partition", str(partition)]
        assert main(args) == 2
        assert main([*args, "--verify", "none"]) == 0

    def test_opt(self, capsys, pair_path):
        assert main(["opt", "--in", pair_path]) == 0
        document = _output(capsys)
        assert document["opt"] == "1"
        assert document["unserved"] == []

    def test_simulate(self, capsys, pair_path):
        assert main(["simulate", "--in", pair_path, "--horizon", "none"]) == 0
        document = _output(capsys)
        assert document["format"] == "jrplab-schedule/1"
        assert document["completions"].keys() == {"0"}
        assert document["config"]["horizon"] == ""

    def test_no_requests(self, star_path):
        assert main(["opt", "--in", star_path]) == 2

    def test_missing_document(self, tmp_path):
        assert main(["validate", "--in", str(tmp_path / "missing.json")]) == 2

    def test_malformed_document(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{")
        assert main(["partition", "--in", str(path)]) == 2

    def test_experiment(self, capsys):
        args = ["experiment", "--suite", "ceiling-lower", "--n", "4"]
        args += ["--verify", "none"]
        assert main(args) == 0
        output = capsys.readouterr().out
        assert "# suite: ceiling-lower" in output
        assert "# verify: none" in output
        assert "ceiling-lower" in output.splitlines()[-1]

    def test_experiment_to_file(self, tmp_path, capsys):
        path = tmp_path / "results.csv"
        args = ["experiment", "--suite", "jia-tight", "--n", "4", "--out", str(path)]
        assert main(args) == 0
        assert capsys.readouterr().out == ""
        assert "jia-order" in path.read_text()

    def test_environ(self, monkeypatch, capsys):
        monkeypatch.setenv("JRPLAB_MAX_N", "5")
        assert main(["generate", "star-mla", "--n", "4"]) == 0
        assert _output(capsys)["config"]["max_n"] == "5"

    def test_invalid_environ(self, monkeypatch):
        monkeypatch.setenv("JRPLAB_VERIFY", "paranoid")
        assert main(["generate", "star-mla", "--n", "4"]) == 2

    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["experiment", "--suite", "unknown"],
            ["generate", "unknown", "--n", "3"],
            ["experiment", "--suite", "jia-tight", "--n", "9..4"],
        ],
    )
    def test_usage(self, argv):
        with pytest.raises(SystemExit) as excinfo:
            main(argv)
        assert excinfo.value.code == 2
