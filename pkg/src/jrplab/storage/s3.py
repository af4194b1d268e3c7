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

from typing import Any, Dict, Optional, Tuple
from urllib.parse import urlsplit

import boto3

from jrplab.storage.base import NotFoundError, Storage, UnsupportedURIError, check_key

#: Content types by key suffix; other documents are stored as plain text.
CONTENT_TYPES = {
    ".json": "application/json",
    ".csv": "text/csv",
}


def s3_parse_uri(uri: str) -> Tuple[str, str]:
    """
    Get bucket name and prefix from an S3 URI.
    """
    scheme, netloc, path, query, fragment = urlsplit(uri, scheme="s3")
    if scheme != "s3":
        raise UnsupportedURIError("Not a s3 scheme.")
    if query or fragment:
        raise UnsupportedURIError("The scheme does not support query or fragment.")
    if not netloc:
        raise UnsupportedURIError("Bucket is empty.")
    return netloc, path.lstrip("/")


def content_type(key: str) -> str:
    for suffix, value in CONTENT_TYPES.items():
        if key.endswith(suffix):
            return value
    return "text/plain"


class S3Storage(Storage):
    """
    Storage keeping documents as objects in AWS S3.
    """

    _client: Any  # boto3 S3 client

    def __init__(
        self, bucket: str, prefix: str = "", *, client: Optional[Any] = None
    ) -> None:
        if client is None:
            client = boto3.client("s3")
        if prefix and not prefix.endswith("/"):
            prefix += "/"
        self._client = client
        self._bucket = bucket
        self._prefix = prefix

    @classmethod
    def from_uri(cls, uri: str) -> S3Storage:
        bucket, prefix = s3_parse_uri(uri)
        return cls(bucket, prefix)

    @property
    def uri(self) -> str:
        return f"s3://{self._bucket}/{self._prefix}"

    @property
    def bucket(self) -> str:
        return self._bucket

    @property
    def prefix(self) -> str:
        return self._prefix

    def get(self, key: str) -> str:
        try:
            response = self._client.get_object(**self._params(key))
        except self._client.exceptions.NoSuchKey:
            raise NotFoundError(key) from None
        return response["Body"].read().decode("utf-8")

    def set(self, key: str, value: str) -> None:
        params = self._params(key)
        params["Body"] = value.encode("utf-8")
        params["ContentType"] = f"{content_type(key)}; charset=utf-8"
        self._client.put_object(**params)

    def _params(self, key: str) -> Dict[str, Any]:
        return dict(Bucket=self._bucket, Key=self._prefix + check_key(key))
