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
Storages for instance files, reports and cached results.

A storage URI names a location holding many documents,
for example ``file:/tmp/cache/`` or ``s3://bucket/prefix/``.
A document URI additionally names one document in such a location,
for example ``results/mla.csv`` or ``s3://bucket/runs/mla.csv``.
"""

from __future__ import annotations

import posixpath
from typing import Mapping, Tuple, Type
from urllib.parse import urlsplit, urlunsplit

from jrplab.storage.base import NotFoundError, Storage, UnsupportedURIError
from jrplab.storage.filesystem import FileSystemStorage
from jrplab.storage.memory import MemoryStorage
from jrplab.storage.s3 import S3Storage

__all__ = [
    "Storage",
    "UnsupportedURIError",
    "NotFoundError",
    "storage_from_uri",
    "split_document_uri",
    "read_uri",
    "write_uri",
]


STORAGE_REGISTRY: Mapping[str, Type[Storage]] = {
    "memory": MemoryStorage,
    "file": FileSystemStorage,
    "s3": S3Storage,
}


def storage_from_uri(uri: str, *, default_scheme: str = "file") -> Storage:
    """
    Construct a storage instance from a string URI.
    """
    scheme, *rest = urlsplit(uri, scheme=default_scheme)
    try:
        cls = STORAGE_REGISTRY[scheme]
    except KeyError:
        raise UnsupportedURIError(f"Unknown scheme: {scheme}.") from None
    return cls.from_uri(uri)


def split_document_uri(uri: str) -> Tuple[Storage, str]:
    """
    Resolve a document URI to its storage and key.

    Plain paths are resolved relative to the working directory.
    """
    scheme, netloc, path, query, fragment = urlsplit(uri, scheme="file")
    if scheme == "memory":
        raise UnsupportedURIError("Memory storage has no document URIs.")
    directory, key = posixpath.split(path)
    if not key:
        raise UnsupportedURIError(f"Document name is missing: {uri}")
    if scheme == "file":
        storage: Storage = FileSystemStorage(directory or ".")
        if netloc or query or fragment:
            raise UnsupportedURIError("The scheme does not support hostname.")
    else:
        location = urlunsplit((scheme, netloc, directory + "/", query, fragment))
        storage = storage_from_uri(location)
    return storage, key


def read_uri(uri: str) -> str:
    """Read a whole document."""
    storage, key = split_document_uri(uri)
    return storage.get(key)


def write_uri(uri: str, text: str) -> None:
    """Store a whole document, replacing any previous one."""
    storage, key = split_document_uri(uri)
    storage.set(key, text)
