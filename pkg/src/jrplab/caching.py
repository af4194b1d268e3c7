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
Caching of expensive exact computations.
"""

from __future__ import annotations

import hashlib
import logging
from fractions import Fraction
from typing import Optional, Tuple

from jrplab.core import Partition
from jrplab.engine import ServiceSchedule
from jrplab.instances import (
    Instance,
    parse_opt,
    parse_stretch,
    serialize_instance,
    serialize_opt,
    serialize_partition,
    serialize_stretch,
)
from jrplab.storage import NotFoundError, Storage, storage_from_uri
from jrplab.stretch import StretchReport

logger = logging.getLogger("jrplab")


def cache_key(operation: str, *documents: str) -> str:
    """Key of a result computed by *operation* from the given documents."""
    digest = hashlib.sha256()
    digest.update(operation.encode("utf-8"))
    for document in documents:
        digest.update(b"\0")
        digest.update(document.encode("utf-8"))
    return f"{operation}-{digest.hexdigest()}.json"


def _load(storage: Optional[Storage], key: str) -> Optional[str]:
    if storage is None:
        return None
    try:
        text = storage.get(key)
    except NotFoundError:
        return None
    logger.info(f"Result loaded from cache {storage}{key}")
    return text


def _save(storage: Optional[Storage], key: str, text: str) -> None:
    if storage is None:
        return
    storage.set(key, text)
    logger.info(f"Result saved to cache {storage}{key}")


class ResultCache:
    """
    Caches stretch reports and offline optima.

    Results are keyed by a digest of the canonical documents
    they were computed from, so any change of the instance,
    the partition or the library version gives a new key.

    This class can hold a reference to two instances of cache storage,
    a local and a remote one. Results are looked up in the local storage
    first; results found in the remote storage are copied to the local one.
    Both are updated with new results.
    It is possible to configure one of the storages, both of them,
    or none of them.

    Instance of this class is returned by the :attr:`.Laboratory.cache`
    property. It can be updated to reconfigure the caching.
    """

    local_storage: Optional[Storage] = None
    remote_storage: Optional[Storage] = None

    #: Can be set to False to disable caching completely.
    enabled: bool = True

    #: Can be set to False to disable reading the cache.
    read: bool = True

    #: Can be set to False to disable writing the cache.
    write: bool = True

    def __repr__(self) -> str:
        parts = [f"local={self.local!r}", f"remote={self.remote!r}"]
        return f"<{type(self).__name__}: {', '.join(parts)}>"

    @property
    def local(self) -> Optional[str]:
        """
        URI of storage for local cache.

        Can be updated to reconfigure the caching.
        """
        if self.local_storage is None:
            return None
        return self.local_storage.uri

    @local.setter
    def local(self, uri: Optional[str]) -> None:
        self.local_storage = None if uri is None else storage_from_uri(uri)

    @property
    def remote(self) -> Optional[str]:
        """
        URI of storage for remote cache.

        Can be updated to reconfigure the caching.
        """
        if self.remote_storage is None:
            return None
        return self.remote_storage.uri

    @remote.setter
    def remote(self, uri: Optional[str]) -> None:
        self.remote_storage = None if uri is None else storage_from_uri(uri)

    def load(self, key: str) -> Optional[str]:
        """Retrieve a cached document, looking into both storages."""
        if not (self.enabled and self.read):
            return None
        text = _load(self.local_storage, key)
        if text is not None:
            return text
        text = _load(self.remote_storage, key)
        if text is not None:
            _save(self.local_storage, key, text)
        return text

    def save(self, key: str, text: str) -> None:
        """Store a document in both storages."""
        if not (self.enabled and self.write):
            return
        _save(self.remote_storage, key, text)
        _save(self.local_storage, key, text)

    def load_stretch(
        self, instance: Instance, p: Partition, *, reduced: bool = True
    ) -> Optional[StretchReport]:
        text = self.load(self._stretch_key(instance, p, reduced))
        return None if text is None else parse_stretch(text)

    def save_stretch(
        self,
        instance: Instance,
        p: Partition,
        report: StretchReport,
        *,
        reduced: bool = True,
    ) -> None:
        self.save(self._stretch_key(instance, p, reduced), serialize_stretch(report))

    def load_opt(
        self, instance: Instance, method: str
    ) -> Optional[Tuple[Fraction, ServiceSchedule]]:
        text = self.load(cache_key(f"opt-{method}", serialize_instance(instance)))
        return None if text is None else parse_opt(text)

    def save_opt(
        self,
        instance: Instance,
        method: str,
        value: Fraction,
        schedule: ServiceSchedule,
    ) -> None:
        key = cache_key(f"opt-{method}", serialize_instance(instance))
        self.save(key, serialize_opt(value, schedule))

    def _stretch_key(self, instance: Instance, p: Partition, reduced: bool) -> str:
        operation = "stretch" if reduced else "stretch-full"
        function = serialize_instance(Instance(instance.function))
        return cache_key(operation, function, serialize_partition(p))
