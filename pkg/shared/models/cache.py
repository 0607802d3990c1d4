import hashlib
import json
from typing import Any

from pydantic import BaseModel

# bump when the layout of a cached payload changes
CACHE_SCHEMA_VERSION = 1
CODE_VERSION = "1.0.0"


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def checksum_of(payload: Any) -> str:
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


class CacheEntry(BaseModel):
    """Envelope of every cached value.

    Attributes:
        schema_version: layout version of the payload.
        code_version: engine version that produced the payload.
        checksum: SHA-256 of the canonical JSON of the payload.
        payload: the cached data (coset table words, lift-space columns).
    """

    schema_version: int
    code_version: str
    checksum: str
    payload: Any

    @classmethod
    def wrap(cls, payload: Any) -> "CacheEntry":
        return cls(
            schema_version=CACHE_SCHEMA_VERSION,
            code_version=CODE_VERSION,
            checksum=checksum_of(payload),
            payload=payload,
        )

    def problem(self) -> str | None:
        """Why the entry must be ignored, None if it is valid."""
        if self.schema_version != CACHE_SCHEMA_VERSION:
            return f"schema version {self.schema_version} != {CACHE_SCHEMA_VERSION}"
        if self.code_version != CODE_VERSION:
            return f"code version {self.code_version} != {CODE_VERSION}"
        if self.checksum != checksum_of(self.payload):
            return "checksum mismatch"
        return None
