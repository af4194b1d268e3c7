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
Experiment reports.

Reports are CSV files with fixed columns. Exact ratios are split
into numerator and denominator columns. Lines starting with ``#``
before the column names carry the library version and the configuration
of the run.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from typing import (
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    TextIO,
    Tuple,
    Union,
    overload,
)

from jrplab._compat import pandas as pd
from jrplab.conversions import get_converter

COLUMNS: Tuple[Tuple[str, str], ...] = (
    ("n", "int"),
    ("kind", "text"),
    ("stretch_num", "int"),
    ("stretch_den", "int"),
    ("bound_num", "int"),
    ("bound_den", "int"),
    ("wall_ms", "float"),
)

COLUMN_NAMES = tuple(name for name, _ in COLUMNS)

#: Kinds of rows whose measured value must reach the bound from above.
LOWER_BOUND_KINDS = frozenset(
    {
        "mla-lower",
        "ceiling-lower",
        "usc-dominance",
        "envelope-floor",
        "jia-tight",
        "touitou-ref",
        "interval-bound",
    }
)


@dataclass(frozen=True)
class ExperimentRecord:
    """
    One measurement of an experiment.

    ``stretch`` is the measured quantity, a stretch or a cost ratio
    for most kinds; ``None`` stands for an infinite value.
    """

    n: int
    kind: str
    stretch: Optional[Fraction]
    bound: Fraction

    #: Wall time of the measurement in milliseconds, when timed.
    wall_ms: Optional[float] = None

    @property
    def lower(self) -> bool:
        """Whether the bound is a lower bound."""
        return self.kind in LOWER_BOUND_KINDS

    @property
    def violated(self) -> bool:
        if self.lower:
            return self.stretch is not None and self.stretch < self.bound
        return self.stretch is None or self.stretch > self.bound

    @property
    def ratio(self) -> Optional[Fraction]:
        """Measured value relative to the bound."""
        if self.stretch is None or self.bound == 0:
            return None
        return self.stretch / self.bound

    def to_row(self) -> List[str]:
        stretch = self.stretch
        values: Tuple[object, ...] = (
            self.n,
            self.kind,
            None if stretch is None else stretch.numerator,
            None if stretch is None else stretch.denominator,
            self.bound.numerator,
            self.bound.denominator,
            self.wall_ms,
        )
        return [get_converter(t).write(v) for (_, t), v in zip(COLUMNS, values)]

    @classmethod
    def from_row(cls, row: Sequence[str]) -> ExperimentRecord:
        if len(row) != len(COLUMNS):
            raise ValueError(f"Expected {len(COLUMNS)} fields, got {len(row)}.")
        values = {
            name: get_converter(t).read(v) for (name, t), v in zip(COLUMNS, row)
        }
        n, kind = values["n"], values["kind"]
        if not isinstance(n, int) or not isinstance(kind, str):
            raise ValueError(f"Missing size or kind: {row!r}")
        bound = _fraction(values["bound_num"], values["bound_den"])
        if bound is None:
            raise ValueError(f"Missing bound: {row!r}")
        wall_ms = values["wall_ms"]
        return cls(
            n,
            kind,
            _fraction(values["stretch_num"], values["stretch_den"]),
            bound,
            wall_ms if isinstance(wall_ms, float) else None,
        )


def _fraction(num: object, den: object) -> Optional[Fraction]:
    if num is None and den is None:
        return None
    if not isinstance(num, int) or not isinstance(den, int) or den <= 0:
        raise ValueError(f"Invalid fraction: {num}/{den}")
    return Fraction(num, den)


class ExperimentResults(Sequence[ExperimentRecord]):
    """
    Collection of experiment records.

    Implements a list-like interface for accessing individual records.
    Alternatively, can be converted to :class:`pandas.DataFrame`
    using the :meth:`.to_df` method.
    """

    _records: Sequence[ExperimentRecord]
    _header: Mapping[str, str]

    def __init__(
        self,
        records: Iterable[ExperimentRecord],
        header: Optional[Mapping[str, str]] = None,
    ) -> None:
        self._records = tuple(records)
        self._header = dict(header or {})

    def __repr__(self) -> str:
        parts = [f"{len(self)} records", f"violations={len(self.violations())}"]
        return f"<{type(self).__name__}: {', '.join(parts)}>"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExperimentResults):
            return NotImplemented
        return self._records == other._records and self.header == other.header

    def __hash__(self) -> int:
        return hash(self._records)

    @overload
    def __getitem__(self, index: int) -> ExperimentRecord:
        ...

    @overload  # noqa: F811
    def __getitem__(self, index: slice) -> Sequence[ExperimentRecord]:
        ...

    def __getitem__(  # noqa: F811
        self, index: Union[int, slice]
    ) -> Union[ExperimentRecord, Sequence[ExperimentRecord]]:
        if isinstance(index, slice):
            return ExperimentResults(self._records[index], self._header)
        return self._records[index]

    def __len__(self) -> int:
        return len(self._records)

    @property
    def header(self) -> Dict[str, str]:
        """Version and configuration echoed into the report."""
        return dict(self._header)

    def violations(self) -> List[ExperimentRecord]:
        """Records whose measured value breaks their bound."""
        return [r for r in self._records if r.violated]

    @classmethod
    def load(cls, stream: TextIO) -> ExperimentResults:
        """
        Deserialize results from a text stream.
        """
        header: Dict[str, str] = {}
        lines = iter(stream)
        line = next(lines, "")
        while line.startswith("#"):
            key, sep, value = line[1:].strip().partition(":")
            if not sep:
                raise ValueError(f"Invalid header line: {line!r}")
            header[key.strip()] = value.strip()
            line = next(lines, "")
        reader = csv.reader([line, *lines])
        names = next(reader, None)
        if names is None or tuple(names) != COLUMN_NAMES:
            raise ValueError(f"Unexpected columns: {names!r}")
        records = [ExperimentRecord.from_row(row) for row in reader if row]
        return cls(records, header)

    def save(self, stream: TextIO) -> None:
        """
        Serialize results to a text stream.
        """
        for key, value in self._header.items():
            stream.write(f"# {key}: {value}\n")
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(COLUMN_NAMES)
        writer.writerows(r.to_row() for r in self._records)

    def to_df(self, dtypes: Optional[Mapping[str, object]] = None) -> pd.DataFrame:
        """
        Convert this results to :class:`pandas.DataFrame`.
        """
        if dtypes is None:
            dtypes = {}
        rows = [r.to_row() for r in self._records]
        frame_data = {}
        for i, (name, column_type) in enumerate(COLUMNS):
            converter = get_converter(column_type)
            values = (row[i] for row in rows)
            frame_data[name] = converter.read_array(values, dtype=dtypes.get(name))
        return pd.DataFrame(frame_data, copy=False)
