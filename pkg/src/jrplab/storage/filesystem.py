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

import os
import pathlib
import tempfile
from typing import Union
from urllib.parse import urlsplit

from jrplab.storage.base import NotFoundError, Storage, UnsupportedURIError, check_key


def file_parse_uri(uri: str) -> str:
    """
    Parse a local path from a file URI or a plain path.
    """
    scheme, netloc, path, query, fragment = urlsplit(uri, scheme="file")
    if scheme != "file":
        raise UnsupportedURIError("Not a file scheme.")
    if netloc:
        raise UnsupportedURIError("The scheme does not support hostname.")
    if query or fragment:
        raise UnsupportedURIError("The scheme does not support query or fragment.")
    if not path:
        raise UnsupportedURIError("Path is empty.")
    return path


class FileSystemStorage(Storage):
    """
    Storage keeping every document in a file of a local directory.

    Documents are replaced atomically, so an interrupted run never
    leaves a truncated report or cache entry behind.
    """

    _base_dir: pathlib.Path

    def __init__(self, base_dir: Union[str, pathlib.Path]) -> None:
        self._base_dir = pathlib.Path(base_dir).expanduser().absolute()

    @classmethod
    def from_uri(cls, uri: str) -> FileSystemStorage:
        return cls(file_parse_uri(uri))

    @property
    def uri(self) -> str:
        return f"file:{self._base_dir}/"

    @property
    def base_dir(self) -> pathlib.Path:
        return self._base_dir

    def get(self, key: str) -> str:
        try:
            with self._path(key).open(encoding="utf-8", newline="") as stream:
                return stream.read()
        except FileNotFoundError:
            raise NotFoundError(key) from None

    def set(self, key: str, value: str) -> None:
        target = self._path(key)
        self._base_dir.mkdir(exist_ok=True, parents=True)
        fd, tmp = tempfile.mkstemp(dir=self._base_dir, prefix=f".{key}.")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as stream:
                stream.write(value)
            os.replace(tmp, target)
        except BaseException:
            os.unlink(tmp)
            raise

    def _path(self, key: str) -> pathlib.Path:
        return self._base_dir / check_key(key)
