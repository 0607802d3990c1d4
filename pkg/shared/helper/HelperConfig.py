"""Typed access to the environment (optionally filled from .env)."""

import os
from typing import Any, Callable

from shared.logging.logging_setup import ColorLogger

_TRUTHY = ("true", "1", "yes", "on")


class HelperConfig:
    """Every getter upper-cases the key, treats an empty value as unset and
    raises ValueError when a variable is unset and has no default.

    Lists and mappings use the bracket syntax ``[a,b]`` and ``[E7/T:18,E8/T:10]``.
    """

    def __init__(self, logger: ColorLogger) -> None:
        self._logger = logger

    def get_logger(self) -> ColorLogger:
        return self._logger

    def _resolve(self, key: str, default: Any, convert: Callable[[str], Any]) -> Any:
        key = key.upper()
        raw = (os.getenv(key) or "").strip()
        if not raw:
            if default is None:
                raise ValueError(f"environment variable {key} is not set")
            return default
        try:
            return convert(raw)
        except ValueError as e:
            raise ValueError(f"environment variable {key}={raw!r}: {e}") from None

    def get_string_val(self, key: str, default: str | None = None) -> str:
        return self._resolve(key, default, str)

    def get_number_val(self, key: str, default: float | int | None = None) -> float | int:
        return self._resolve(key, default, lambda raw: float(raw) if "." in raw or "e" in raw.lower() else int(raw))

    def get_bool_val(self, key: str, default: bool | None = None) -> bool:
        return self._resolve(key, default, lambda raw: raw.lower() in _TRUTHY)

    def get_list_val(self, key: str, default: list | None = None, separator: str = ",", element_type: type = str) -> list:
        def convert(raw: str) -> list:
            if not (raw.startswith("[") and raw.endswith("]")):
                raise ValueError(f"expected [a{separator}b{separator}...]")
            return [element_type(item.strip()) for item in raw[1:-1].split(separator) if item.strip()]

        return self._resolve(key, default, convert)

    def get_mapping_val(self, key: str, default: dict | None = None, value_type: type = int) -> dict:
        """Mapping in list syntax; keys stay strings, values are cast to value_type."""
        def convert(raw: str) -> dict:
            mapping = {}
            for item in self.get_list_val(key):
                name, sep, value = item.partition(":")
                if not sep or not name.strip():
                    raise ValueError(f"expected name:value, got {item!r}")
                mapping[name.strip()] = value_type(value.strip())
            return mapping

        return dict(self._resolve(key, default, convert))
