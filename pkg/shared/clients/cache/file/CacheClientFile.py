import asyncio
import fnmatch
import os
import tempfile
from pathlib import Path
from urllib.parse import quote, unquote

from shared.clients.cache.CacheClientInterface import CacheClientInterface
from shared.helper.HelperConfig import HelperConfig
from shared.models.cache import CACHE_SCHEMA_VERSION
from shared.models.config import EnvConfig, default_cache_dir


class CacheClientFile(CacheClientInterface):
    """Directory-backed cache; one JSON file per key.

    Writes go to a temporary file in the same directory and are moved into
    place with os.replace, so readers never see a partial entry. Entries do
    not expire; ttl_seconds is accepted and ignored.
    """

    SUFFIX = ".json"

    def __init__(self, helper_config: HelperConfig) -> None:
        super().__init__(helper_config=helper_config)
        base = self.get_config_val("DIR", default=default_cache_dir(), val_type="string")
        self._root = Path(base) / f"v{CACHE_SCHEMA_VERSION}"
        self._locks: dict[str, asyncio.Lock] = {}
        self._booted = False

    ##########################################
    ################ GETTER ##################
    ##########################################

    def _get_engine_name(self) -> str:
        return "File"

    def _get_required_config(self) -> list[EnvConfig]:
        return [
            EnvConfig(env_key="DIR", val_type="string", default=default_cache_dir()),
        ]

    @property
    def root(self) -> Path:
        return self._root

    ##########################################
    ############# LIFECYCLE ##################
    ##########################################

    async def boot(self) -> None:
        await asyncio.to_thread(self._root.mkdir, parents=True, exist_ok=True)
        self._booted = True
        self.logging.debug("file cache at %s", self._root)

    async def close(self) -> None:
        self._booted = False
        self._locks.clear()

    async def do_healthcheck(self) -> bool:
        self._assert_booted()
        return self._root.is_dir() and os.access(self._root, os.W_OK)

    ##########################################
    ############# REQUESTS ###################
    ##########################################

    async def do_get(self, key: str) -> str | None:
        self._assert_booted()
        path = self._path(key)
        async with self._lock(key):
            try:
                return await asyncio.to_thread(path.read_text, encoding="utf-8")
            except FileNotFoundError:
                return None

    async def do_set(self, key: str, value: str, ttl_seconds: int | None = None) -> None:
        self._assert_booted()
        async with self._lock(key):
            await asyncio.to_thread(self._write_atomic, self._path(key), value)

    async def do_delete(self, key: str) -> None:
        self._assert_booted()
        async with self._lock(key):
            try:
                await asyncio.to_thread(self._path(key).unlink)
            except FileNotFoundError:
                pass

    async def do_delete_pattern(self, pattern: str) -> int:
        keys = await self.do_keys(pattern)
        for key in keys:
            await self.do_delete(key)
        self.logging.debug("CacheClientFile.do_delete_pattern: deleted %d key(s) matching '%s'", len(keys), pattern)
        return len(keys)

    async def do_exists(self, key: str) -> bool:
        self._assert_booted()
        return self._path(key).is_file()

    async def do_keys(self, pattern: str = "*") -> list[str]:
        self._assert_booted()
        names = await asyncio.to_thread(os.listdir, self._root)
        keys = [unquote(n[: -len(self.SUFFIX)]) for n in names if n.endswith(self.SUFFIX)]
        return sorted(k for k in keys if fnmatch.fnmatchcase(k, pattern))

    ##########################################
    ############# HELPERS ####################
    ##########################################

    def _path(self, key: str) -> Path:
        return self._root / (quote(key, safe="") + self.SUFFIX)

    def _lock(self, key: str) -> asyncio.Lock:
        lock = self._locks.get(key)
        if lock is None:
            lock = self._locks[key] = asyncio.Lock()
        return lock

    @staticmethod
    def _write_atomic(path: Path, value: str) -> None:
        fd, temp_name = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".partial")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(value)
            os.replace(temp_name, path)
        except BaseException:
            if os.path.exists(temp_name):
                os.unlink(temp_name)
            raise

    def _assert_booted(self) -> None:
        if not self._booted:
            raise RuntimeError("File cache client not initialized. Call boot() first.")
