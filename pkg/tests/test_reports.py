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


import io
from fractions import Fraction

import pandas as pd
import pytest

from jrplab.conversions import (
    FloatConverter,
    IntConverter,
    TextConverter,
    get_converter,
)
from jrplab.reports import COLUMN_NAMES, ExperimentRecord, ExperimentResults

HEADER = {"version": "0.1.0", "suite": "mla-bound"}

RECORDS = [
    ExperimentRecord(4, "mla-bound", Fraction(11, 5), Fraction(8), 1.5),
    ExperimentRecord(4, "mla-lower", Fraction(1), Fraction(1)),
    ExperimentRecord(9, "mla-bound", None, Fraction(12)),
    ExperimentRecord(9, "jia-tight", Fraction(2), Fraction(3)),
]

SAVED = """\
# version: 0.1.0
# suite: mla-bound
n,kind,stretch_num,stretch_den,bound_num,bound_den,wall_ms
4,mla-bound,11,5,8,1,1.500
4,mla-lower,1,1,1,1,
9,mla-bound,,,12,1,
9,jia-tight,2,1,3,1,
"""


@pytest.fixture(name="results")
def results_fixture():
    return ExperimentResults(RECORDS, HEADER)


class TestExperimentRecord:
    def test_upper_bound(self):
        record = RECORDS[0]
        assert not record.lower
        assert not record.violated
        assert record.ratio == Fraction(11, 40)

    def test_lower_bound_met(self):
        assert RECORDS[1].lower
        assert not RECORDS[1].violated

    def test_infinite(self):
        assert RECORDS[2].violated
        assert RECORDS[2].ratio is None

    def test_lower_bound_missed(self):
        assert RECORDS[3].violated

    def test_to_row(self):
        assert RECORDS[0].to_row() == ["4", "mla-bound", "11", "5", "8", "1", "1.500"]
        assert RECORDS[2].to_row() == ["9", "mla-bound", "", "", "12", "1", ""]

    def test_from_row(self):
        row = ["16", "usc-pipeline", "7", "3", "4", "1", ""]
        assert ExperimentRecord.from_row(row) == ExperimentRecord(
            16, "usc-pipeline", Fraction(7, 3), Fraction(4)
        )

    @pytest.mark.parametrize(
        "row",
        [
            ["4", "mla-bound", "1", "1", "8", "1"],
            ["", "mla-bound", "1", "1", "8", "1", ""],
            ["4", "", "1", "1", "8", "1", ""],
            ["4", "mla-bound", "1", "1", "", "", ""],
            ["4", "mla-bound", "1", "0", "8", "1", ""],
            ["4", "mla-bound", "1", "", "8", "1", ""],
            ["4", "mla-bound", " 1", "1", "8", "1", ""],
        ],
    )
    def test_from_invalid_row(self, row):
        with pytest.raises(ValueError):
            ExperimentRecord.from_row(row)


class TestExperimentResults:
    def test_repr(self, results):
        assert repr(results) == "<ExperimentResults: 4 records, violations=2>"

    def test_sequence(self, results):
        assert len(results) == 4
        assert results[0] == RECORDS[0]
        assert list(results[-1:]) == RECORDS[-1:]
        assert results[:2].header == HEADER

    def test_violations(self, results):
        assert results.violations() == [RECORDS[2], RECORDS[3]]

    def test_save(self, results):
        stream = io.StringIO()
        results.save(stream)
        assert stream.getvalue() == SAVED

    def test_load(self, results):
        assert ExperimentResults.load(io.StringIO(SAVED)) == results

    def test_load_without_header(self):
        text = SAVED.split("\n", 2)[2]
        loaded = ExperimentResults.load(io.StringIO(text))
        assert loaded.header == {}
        assert list(loaded) == RECORDS

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "# version\nn,kind\n",
            "n,kind,stretch_num,stretch_den,bound_num,bound_den\n",
        ],
    )
    def test_load_invalid(self, text):
        with pytest.raises(ValueError):
            ExperimentResults.load(io.StringIO(text))

    def test_to_df(self, results):
        df = results.to_df()
        assert tuple(df.columns) == COLUMN_NAMES
        assert df["kind"].dtype == "string"
        assert df["n"].tolist() == [4, 4, 9, 9]
        assert df["stretch_num"].tolist() == [11, 1, None, 2]
        assert df["wall_ms"].dtype == "float64"
        assert df["wall_ms"].isna().tolist() == [False, True, True, True]

    def test_to_df_custom_dtypes(self, results):
        df = results.to_df(dtypes={"n": "int64", "kind": pd.CategoricalDtype()})
        assert df["n"].dtype == "int64"
        assert df["kind"].dtype == "category"


class TestConverters:
    @pytest.mark.parametrize(
        "column_type,cls",
        [
            ("text", TextConverter),
            ("int", IntConverter),
            ("float", FloatConverter),
            ("unknown", TextConverter),
        ],
    )
    def test_get_converter(self, column_type, cls):
        assert isinstance(get_converter(column_type), cls)

    def test_missing(self):
        for column_type in ("text", "int", "float"):
            converter = get_converter(column_type)
            assert converter.read("") is None
            assert converter.read(None) is None
            assert converter.write(None) == ""

    def test_int(self):
        converter = IntConverter()
        big = 2 ** 80
        assert converter.read(converter.write(big)) == big
        with pytest.raises(ValueError):
            converter.read("1 ")

    def test_float(self):
        converter = FloatConverter()
        assert converter.write(1.23456) == "1.235"
        assert converter.read("0.500") == 0.5
