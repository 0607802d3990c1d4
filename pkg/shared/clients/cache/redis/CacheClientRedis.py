import redis.asyncio as aioredis

from shared.clients.cache.CacheClientInterface import CacheClientInterface
from shared.helper.HelperConfig import HelperConfig
from shared.models.cache import CACHE_SCHEMA_VERSION
from shared.models.config import EnvConfig


class CacheClientRedis(CacheClientInterface):
    """Shared cache for several machines running the same engine version.

    Keys are stored as ``<KEY_PREFIX>:v<schema>:<key>``; a schema bump leaves
    the old generation untouched and invisible.
    """

    def __init__(self, helper_config: HelperConfig) -> None:
        super().__init__(helper_config=helper_config)
        self._url = self.get_config_val("BASE_URL")
        self._password = self.get_config_val("PASSWORD", default="") or None
        self._db = int(self.get_config_val("DB", default=0, val_type="number"))
        self._expiry = int(self.get_config_val("DEFAULT_TTL_SECONDS", default=0, val_type="number"))
        self._prefix = f"{self.get_config_val('KEY_PREFIX', default='schubert')}:v{CACHE_SCHEMA_VERSION}:"
        self._redis: aioredis.Redis | None = None

    def _get_engine_name(self) -> str:
        return "redis"

    def _get_required_config(self) -> list[EnvConfig]:
        return [
            EnvConfig(env_key="BASE_URL", val_type="string"),
            EnvConfig(env_key="PASSWORD", val_type="string", default=""),
            EnvConfig(env_key="DB", val_type="number", default=0),
            EnvConfig(env_key="DEFAULT_TTL_SECONDS", val_type="number", default=0),
            EnvConfig(env_key="KEY_PREFIX", val_type="string", default="schubert"),
        ]

    @property
    def connection(self) -> aioredis.Redis:
        if self._redis is None:
            raise RuntimeError("redis cache used before boot()")
        return self._redis

    ##########################################
    ############### LIFECYCLE ################
    ##########################################

    async def boot(self) -> None:
        self._redis = aioredis.from_url(self._url, db=self._db, password=self._password, decode_responses=True)
        self.logging.debug("redis cache at %s, db %d, prefix %s", self._url, self._db, self._prefix)

    async def close(self) -> None:
        if self._redis is not None:
            await self._redis.aclose()
            self._redis = None

    async def do_healthcheck(self) -> bool:
        try:
            return bool(await self.connection.ping())
        except aioredis.RedisError as e:
            self.logging.warning("redis unreachable at %s: %s", self._url, e)
            return False

    ##########################################
    ################# KEYS ###################
    ##########################################

    async def do_get(self, key: str) -> str | None:
        return await self.connection.get(self._prefix + key)

    async def do_set(self, key: str, value: str, ttl_seconds: int | None = None) -> None:
        """Entries never expire unless a positive TTL is given here or configured."""
        expiry = self._expiry if ttl_seconds is None else ttl_seconds
        await self.connection.set(self._prefix + key, value, ex=expiry if expiry > 0 else None)

    async def do_delete(self, key: str) -> None:
        await self.connection.delete(self._prefix + key)

    async def do_delete_pattern(self, pattern: str) -> int:
        keys = [self._prefix + key for key in await self.do_keys(pattern)]
        if keys:
            await self.connection.delete(*keys)
        self.logging.debug("removed %d redis key(s) matching %s", len(keys), pattern)
        return len(keys)

    async def do_exists(self, key: str) -> bool:
        return bool(await self.connection.exists(self._prefix + key))

    async def do_keys(self, pattern: str = "*") -> list[str]:
        found = [key async for key in self.connection.scan_iter(match=self._prefix + pattern, count=500)]
        return sorted(key[len(self._prefix):] for key in found)
