import json
from abc import abstractmethod
from typing import Any

from pydantic import ValidationError

from shared.clients.ClientInterface import ClientInterface
from shared.helper.HelperConfig import HelperConfig
from shared.models.cache import CacheEntry, canonical_json

# Key namespaces; callers build keys through these constants
KEY_COSET_TABLE = "coset-table"
KEY_LIFT_SPACE = "lift-space"
NAMESPACES = (KEY_COSET_TABLE, KEY_LIFT_SPACE)


def build_key(namespace: str, *parts: Any) -> str:
    """Cache key "<namespace>:<part>:<part>..."; sets and lists are written sorted and comma-joined."""
    key = namespace
    for part in parts:
        if isinstance(part, (set, frozenset, list, tuple)):
            part = ",".join(str(p) for p in sorted(part))
        key += ":%s" % part
    return key


class CacheClientInterface(ClientInterface):
    """ABC for all cache backends.

    Values are strings; structured payloads are stored inside a
    :class:`CacheEntry` envelope and rejected (treated as a miss) when their
    versions or checksum do not match.
    """

    def __init__(self, helper_config: HelperConfig) -> None:
        super().__init__(helper_config=helper_config)

    ##########################################
    ################ GETTER ##################
    ##########################################

    def _get_client_type(self) -> str:
        return "cache"

    ##########################################
    ############# REQUESTS ###################
    ##########################################

    @abstractmethod
    async def do_get(self, key: str) -> str | None:
        """Retrieve a cached string value by key.

        Returns:
            The stored value, or None on a cache miss.
        """
        pass

    @abstractmethod
    async def do_set(self, key: str, value: str, ttl_seconds: int | None = None) -> None:
        """Store a string value under key.

        Args:
            key: Cache key.
            value: String value to store.
            ttl_seconds: Time-to-live in seconds; None means no expiry unless
                the backend defines a default.
        """
        pass

    @abstractmethod
    async def do_delete(self, key: str) -> None:
        """Remove a single key from the cache."""
        pass

    @abstractmethod
    async def do_delete_pattern(self, pattern: str) -> int:
        """Remove all keys matching a glob pattern; returns the number removed.

        Example:
            await client.do_delete_pattern("lift-space:*")
        """
        pass

    @abstractmethod
    async def do_exists(self, key: str) -> bool:
        """Return True if the key exists in the cache."""
        pass

    @abstractmethod
    async def do_keys(self, pattern: str = "*") -> list[str]:
        """Return all keys matching a glob pattern, sorted."""
        pass

    ##########################################
    ############### CORE #####################
    ##########################################

    async def do_get_json(self, key: str) -> dict | list | None:
        """Retrieve and deserialise a JSON-encoded value.

        Returns:
            Parsed dict or list on hit, None on miss or JSON decode error.
        """
        raw = await self.do_get(key)
        if raw is None:
            return None
        try:
            return json.loads(raw)
        except json.JSONDecodeError:
            self.logging.warning("JSON decode failed for cache key '%s'", key)
            return None

    async def do_set_json(self, key: str, value: dict | list, ttl_seconds: int | None = None) -> None:
        await self.do_set(key, canonical_json(value), ttl_seconds=ttl_seconds)

    async def do_get_entry(self, key: str) -> Any | None:
        """Return the payload of a valid cache entry, None on a miss or an invalid entry."""
        raw = await self.do_get_json(key)
        if raw is None:
            return None
        try:
            entry = CacheEntry.model_validate(raw)
        except ValidationError:
            self.logging.warning("ignoring malformed cache entry '%s'", key)
            return None
        problem = entry.problem()
        if problem is not None:
            self.logging.warning("ignoring cache entry '%s': %s", key, problem)
            return None
        return entry.payload

    async def do_set_entry(self, key: str, payload: Any) -> None:
        await self.do_set_json(key, CacheEntry.wrap(payload).model_dump())

    async def do_stats(self) -> dict[str, int]:
        """Number of keys per namespace."""
        return {namespace: len(await self.do_keys(f"{namespace}:*")) for namespace in NAMESPACES}
