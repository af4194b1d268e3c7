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
Conversions from CSV fields of experiment reports to Python types.
"""

from __future__ import annotations

from abc import ABCMeta, abstractmethod
from typing import Dict, Generic, Iterable, Optional, TypeVar, cast

from jrplab._compat import pandas as pd

T_co = TypeVar("T_co", covariant=True)


class Converter(Generic[T_co], metaclass=ABCMeta):
    """
    Convert report fields between strings and Python types.

    Missing values are written as empty fields.
    """

    @property
    @abstractmethod
    def dtype(self) -> object:
        """Pandas dtype"""

    def read(self, value: Optional[str]) -> Optional[T_co]:
        """
        Read a field, an empty string or ``None`` stands for a missing value.
        """
        if value is None or value == "":
            return None
        return self.read_str(value)

    @abstractmethod
    def read_str(self, value: str) -> T_co:
        """
        Read value from string

        To be implemented in subclasses.
        """

    def write(self, value: Optional[object]) -> str:
        if value is None:
            return ""
        return self.write_value(value)

    def write_value(self, value: object) -> str:
        return str(value)

    def read_array(
        self, values: Iterable[Optional[str]], dtype: Optional[object] = None
    ) -> object:  # Pandas array
        """
        Convert fields to Pandas array.

        :param values: Iterable yielding strings and ``None``
        :param dtype: optional Pandas dtype to force
        """
        if dtype is None:
            dtype = self.dtype
        converted = [self.read(value) for value in values]
        return pd.array(converted, dtype=dtype, copy=False)


class TextConverter(Converter[str]):
    @property
    def dtype(self) -> object:
        return "string"

    def read_str(self, value: str) -> str:
        return value


class IntConverter(Converter[int]):
    """Integers of any size; Pandas gets them as objects."""

    @property
    def dtype(self) -> object:
        return "object"

    def read_str(self, value: str) -> int:
        if value.strip() != value:
            raise ValueError(f"Invalid integer: {value!r}")
        return int(value)


class FloatConverter(Converter[float]):
    @property
    def dtype(self) -> object:
        return "float64"

    def read_str(self, value: str) -> float:
        return float(value)

    def write_value(self, value: object) -> str:
        return f"{cast(float, value):.3f}"


default_converter = TextConverter()

CONVERTERS: Dict[str, Converter[object]] = {
    "text": TextConverter(),
    "int": IntConverter(),
    "float": FloatConverter(),
}


def get_converter(column_type: str) -> Converter[object]:
    """
    Return a converter for a column type.

    :param column_type: one of ``text``, ``int``, ``float``
    :return: a converter instance.
    """
    return CONVERTERS.get(column_type, default_converter)
