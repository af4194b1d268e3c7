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
Exceptions raised by the laboratory.
"""

from __future__ import annotations

from typing import Optional, Sequence


class JrpLabError(Exception):
    """Base class of all errors raised by jrplab."""


class DomainError(JrpLabError, ValueError):
    """
    Argument outside of the domain of an operation.

    For example a type index outside of the universe,
    a time before an arrival, or a size that is not a perfect square.
    """


class MalformedSpecError(JrpLabError, ValueError):
    """
    Service function, tree, envelope or partition is not well formed.
    """


class ValidationError(JrpLabError, ValueError):
    """
    Input violates a semantic requirement.

    Raised for non-monotone or non-subadditive samples,
    delay functions that do not start at zero,
    or partitions whose part costs do not match the service function.
    """


class StateError(JrpLabError, RuntimeError):
    """
    Operation called in a state where it is not defined.
    """


class SizeLimitError(JrpLabError, ValueError):
    """Exhaustive enumeration would exceed a configured cap."""

    #: Size of the problem.
    size: int

    #: Maximum size allowed.
    limit: int

    def __init__(self, what: str, size: int, limit: int) -> None:
        super().__init__(what, size, limit)
        self.what = what
        self.size = size
        self.limit = limit

    def __str__(self) -> str:
        return f"{self.what} too large: {self.size} > {self.limit}"


class CoverageError(JrpLabError, ValueError):
    """Elements cannot be covered by any set of a set system."""

    #: Elements without any covering set.
    elements: Sequence[int]

    def __init__(self, elements: Sequence[int]) -> None:
        super().__init__(elements)
        self.elements = tuple(elements)

    def __str__(self) -> str:
        listed = ", ".join(map(str, self.elements))
        return f"Elements not covered by any set: {listed}"


class InstanceParseError(JrpLabError, ValueError):
    """Instance document cannot be parsed."""

    #: Human readable description of the problem.
    message: str

    #: Dotted path of the offending field, if known.
    field: Optional[str]

    #: One-based line number in the document, if known.
    line: Optional[int]

    def __init__(
        self, message: str, *, field: Optional[str] = None, line: Optional[int] = None
    ) -> None:
        super().__init__(message)
        self.message = message
        self.field = field
        self.line = line

    def __str__(self) -> str:
        """
        Report the problem with its location.
        """
        location = []
        if self.line is not None:
            location.append(f"line {self.line}")
        if self.field is not None:
            location.append(f"field {self.field}")
        if location:
            return f"{', '.join(location)}: {self.message}"
        return self.message


class VerificationError(JrpLabError):
    """A checked bound was violated."""

    #: Name of the bound.
    bound: str

    #: Observed value, rendered as a string.
    value: str

    def __init__(self, bound: str, value: str) -> None:
        super().__init__(bound, value)
        self.bound = bound
        self.value = value

    def __str__(self) -> str:
        return f"Bound violated: {self.bound} (observed {self.value})"
