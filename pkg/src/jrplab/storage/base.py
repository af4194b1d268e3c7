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

from abc import ABCMeta, abstractmethod


class UnsupportedURIError(ValueError):
    """
    Storage URI not supported.
    """


class NotFoundError(KeyError):
    """
    Storage item not found.

    Raised when trying to read a non-existent document.
    """


def check_key(key: str) -> str:
    """
    Reject keys that could escape the storage location.

    Keys are flat names like ``stretch-<digest>.json``.
    """
    if not key or "/" in key or "\\" in key or key in (".", ".."):
        raise ValueError(f"Invalid storage key: {key!r}")
    return key


class Storage(metaclass=ABCMeta):
    """
    Interface for a flat key-value storage of text documents.

    Implementations hold instance files, reports and cached results.
    """

    def __repr__(self) -> str:
        return f"<{type(self).__name__}: {self.uri!r}>"

    def __str__(self) -> str:
        return self.uri

    @classmethod
    @abstractmethod
    def from_uri(cls, uri: str) -> Storage:
        """
        Construct an instance from a string URI.
        """

    @property
    @abstractmethod
    def uri(self) -> str:
        """
        String URI of this storage, ending with a separator
        so that appending a key gives the URI of a document.
        """

    @abstractmethod
    def get(self, key: str) -> str:
        """
        Get the document stored under the given key.

        Raises :exception:`.NotFoundError` if the key is not found.
        """

    @abstractmethod
    def set(self, key: str, value: str) -> None:
        """
        Store a document under the given key, replacing any previous one.
        """

