from abc import ABC, abstractmethod
from typing import Any

from shared.helper.HelperConfig import HelperConfig
from shared.models.config import EnvConfig


class ClientInterface(ABC):
    """Base of pluggable backends.

    A backend reads its settings from ``<TYPE>_<ENGINE>_<KEY>`` environment
    variables (``CACHE_FILE_DIR``, ``CACHE_REDIS_BASE_URL``). Every key it
    reads is declared by ``_get_required_config`` and resolved when the
    client is built, so a misconfigured backend fails before any work starts.
    """

    def __init__(self, helper_config: HelperConfig):
        self.logging = helper_config.get_logger()
        self._helper_config = helper_config
        self.validate_full_configuration()

    @abstractmethod
    def _get_client_type(self) -> str:
        pass

    @abstractmethod
    def _get_engine_name(self) -> str:
        pass

    @abstractmethod
    def _get_required_config(self) -> list[EnvConfig]:
        pass

    def get_client_type(self) -> str:
        return self._get_client_type().lower()

    def get_engine_name(self) -> str:
        return self._get_engine_name().lower()

    ##########################################
    ################ CONFIG ##################
    ##########################################

    def validate_full_configuration(self) -> None:
        """Resolve every declared key.

        Raises:
            ValueError: listing all missing or malformed keys at once.
        """
        problems = []
        for config in self._get_required_config():
            try:
                self.get_config_val(config.env_key, default=config.default, val_type=config.val_type)
            except ValueError as e:
                problems.append(str(e))
        if problems:
            raise ValueError("%s client '%s' is misconfigured: %s" % (self.get_client_type(), self.get_engine_name(), "; ".join(problems)))

    def config_key(self, raw_key: str) -> str:
        return f"{self.get_client_type()}_{self.get_engine_name()}_{raw_key}".upper()

    def get_config_val(self, raw_key: str, default: Any = None, val_type: str = "string") -> Any:
        """Value of ``<TYPE>_<ENGINE>_<raw_key>`` read as string, number, bool or list."""
        getter = getattr(self._helper_config, f"get_{val_type}_val", None)
        if getter is None:
            raise ValueError(f"unsupported value type '{val_type}' for {self.config_key(raw_key)}")
        return getter(self.config_key(raw_key), default=default)

    ##########################################
    ############### LIFECYCLE ################
    ##########################################

    @abstractmethod
    async def boot(self) -> None:
        """Acquire connections or directories."""

    @abstractmethod
    async def close(self) -> None:
        pass

    @abstractmethod
    async def do_healthcheck(self) -> bool:
        pass
