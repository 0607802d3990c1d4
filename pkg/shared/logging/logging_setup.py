import logging
import logging.config
import os
from contextlib import contextmanager
from contextvars import ContextVar
from datetime import datetime
from typing import Iterator

from pytz import timezone

debug_mode = os.getenv("LOG_LEVEL", "info").lower() == "debug"
loglevel = logging.DEBUG if debug_mode else logging.INFO

# label of the coset table being computed, e.g. "E7/P{2}"
current_table: ContextVar[str] = ContextVar("current_table", default="-")

_ANSI_RESET = "\033[0m"
_ANSI = {
    "cyan": "\033[36m",
    "green": "\033[32m",
    "yellow": "\033[33m",
    "red": "\033[31m",
    "magenta": "\033[35m",
    "blue": "\033[34m",
}
_LEVEL_MARKS = {logging.WARNING: "⚠️ ", logging.ERROR: "⛔ ", logging.CRITICAL: "⛔ "}


@contextmanager
def table_scope(label: str) -> Iterator[None]:
    """Tag every log line emitted inside the block with the table label."""
    token = current_table.set(label)
    try:
        yield
    finally:
        current_table.reset(token)


class TableFormatter(logging.Formatter):
    """Time-zone aware formatter; prefixes warnings and errors and shows the table label."""

    def __init__(self, tz_name: str, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.tz = timezone(tz_name)

    def formatTime(self, record, datefmt=None):
        stamp = datetime.fromtimestamp(record.created, self.tz)
        return stamp.strftime(datefmt) if datefmt else stamp.isoformat()

    def format(self, record):
        # console and file handlers share the record
        record = logging.makeLogRecord(record.__dict__)
        record.msg = _LEVEL_MARKS.get(record.levelno, "") + record.getMessage()
        record.args = ()
        record.table = getattr(record, "table", None) or current_table.get()
        return super().format(record)


class ConsoleFormatter(TableFormatter):
    def format(self, record) -> str:
        line = super().format(record)
        ansi = _ANSI.get(getattr(record, "color", None) or "")
        return f"{ansi}{line}{_ANSI_RESET}" if ansi else line


class ColorLogger(logging.LoggerAdapter):
    """Logger adapter accepting ``color=<name>`` on every call.

    The colour only reaches the console; the log file stays plain.
    """

    def process(self, msg, kwargs):
        color = kwargs.pop("color", None)
        if color:
            kwargs["extra"] = {**(kwargs.get("extra") or {}), "color": color}
        return msg, kwargs


def setup_logging(name: str = "schubert") -> ColorLogger:
    """Configure the root logger and return the application logger.

    Console output goes to stderr; stdout belongs to command results.
    """
    root_dir = os.getenv("ROOT_DIR") or os.getcwd()
    log_dir = os.path.join(root_dir, "logs")
    tz_name = os.getenv("TIMEZONE", "Europe/Berlin")
    os.makedirs(log_dir, exist_ok=True)

    formatter = {
        "format": "%(asctime)s - %(levelname)s - [%(table)s] %(message)s",
        "datefmt": "%Y-%m-%d %H:%M:%S",
        "tz_name": tz_name,
    }
    logging.config.dictConfig({
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "plain": {"()": TableFormatter, **formatter},
            "console": {"()": ConsoleFormatter, **formatter},
        },
        "handlers": {
            "console": {
                "class": "logging.StreamHandler",
                "formatter": "console",
                "level": loglevel,
                "stream": "ext://sys.stderr",
            },
            "file": {
                "class": "logging.FileHandler",
                "formatter": "plain",
                "level": loglevel,
                "filename": os.path.join(log_dir, "app.log"),
                "encoding": "utf-8",
            },
        },
        "root": {"handlers": ["console", "file"], "level": loglevel},
    })

    for noisy in ("asyncio", "redis"):
        logging.getLogger(noisy).setLevel(logging.DEBUG if debug_mode else logging.WARNING)

    return ColorLogger(logging.getLogger(name))
