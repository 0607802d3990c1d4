import importlib

from shared.clients.cache.CacheClientInterface import CacheClientInterface
from shared.helper.HelperConfig import HelperConfig


class CacheClientManager:
    """Builds the cache client named by CACHE_ENGINE (``file`` by default, or ``redis``).

    The engine ``<name>`` lives in ``shared.clients.cache.<name>.CacheClient<Name>``.
    """

    def __init__(self, helper_config: HelperConfig) -> None:
        self.helper_config = helper_config
        self.logging = helper_config.get_logger()
        self.engine = (helper_config.get_string_val("CACHE_ENGINE", default="file") or "file").strip().lower()
        self.client = self._load(self.engine)

    def _load(self, engine: str) -> CacheClientInterface:
        """
        Raises:
            ValueError: no such engine, or its module holds no cache client.
        """
        class_name = f"CacheClient{engine.capitalize()}"
        try:
            module = importlib.import_module(f"shared.clients.cache.{engine}.{class_name}")
        except ModuleNotFoundError as e:
            raise ValueError(f"unsupported cache engine '{engine}'") from e
        client_class = getattr(module, class_name, None)
        if not (isinstance(client_class, type) and issubclass(client_class, CacheClientInterface)):
            raise ValueError(f"{module.__name__} defines no cache client {class_name}")
        self.logging.debug("cache engine: %s", engine)
        return client_class(helper_config=self.helper_config)

    def get_client(self) -> CacheClientInterface:
        return self.client
