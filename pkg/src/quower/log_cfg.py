"""
## quower Logging Module

---

### Logging Levels:
- `logging.DEBUG` = 10: solver progress, exchange steps of cover normalization
- `logging.INFO` = 20: optima, verified covers, lift/extract sizes
- `logging.WARNING` = 30: time limits hit, constructions that are not tight
- `logging.ERROR` = 40: broken invariants, just before the exception is raised

---

### Module-level variables
 `logger` : the `logging.Logger` every quower module writes to.

### Functions
 `log_config()`: Returns the `LogConfig` object that its properties can change

---

## LogConfig Class
 Nothing is printed until a `LogConfig` is created with `enabled=True`:

    from quower.log_cfg import LogConfig
    log_cfg = LogConfig(enabled=True, console_level=logging.INFO)
    log_cfg.console_level = logging.DEBUG

 A log file is written only when `file_path` is given. `log_config()` returns
 the last instance (creating a disabled one if none exists), so

    log_config().enabled = True

 switches logging on from anywhere. The command line does this for `-v`.

---

## Dependencies
 -  `logging`
 -  `colorlog` (colorized console output)
"""
from __future__ import annotations

import logging

import colorlog


class LogConfig:
    """
    `LogConfig` holds the console and file handlers of the quower logger and the switch that enables them.
    """
    # Class level variable to hold the last instance created
    _last_instance: LogConfig | None = None

    class _LoggingEnabledFilter(logging.Filter):
        def __init__(self, log_instance: LogConfig):
            super().__init__()
            self.log_instance = log_instance

        def filter(self, record):
            return self.log_instance.enabled

    def __init__(self, enabled: bool = False, console_level: int = logging.DEBUG,
                 file_level: int = logging.DEBUG, file_path: str | None = None):

        self.enabled = enabled
        """This boolean property indicates whether log records are emitted."""

        self._logger = logging.getLogger("quower")

        self._console_level = console_level
        self._file_level = file_level
        self._file_path = file_path

        self._console_handler = logging.StreamHandler()
        self._file_handler = logging.FileHandler(file_path) if file_path else None

        self._configure_logger()
        if LogConfig._last_instance is not None:
            LogConfig._last_instance._detach()
        LogConfig._last_instance = self

    @property
    def logger(self) -> logging.Logger:
        """The `logging.Logger` object of the package."""
        return self._logger

    @property
    def console_level(self) -> int:
        """Level of the console handler."""
        return self._console_level

    @console_level.setter
    def console_level(self, value: int) -> None:
        """
        Args:
            value (int): The level to be assigned to the console handler.
        """
        self._console_level = value
        self._console_handler.setLevel(value)

    @property
    def file_level(self) -> int:
        """Level of the file handler."""
        return self._file_level

    @file_level.setter
    def file_level(self, value: int) -> None:
        self._file_level = value
        if self._file_handler is not None:
            self._file_handler.setLevel(value)

    @property
    def file_path(self) -> str | None:
        """Return the file path, None when no log file is written."""
        return self._file_path

    def _configure_logger(self):
        """Attach the console (and optional file) handler to the quower logger."""
        self.logger.setLevel(logging.DEBUG)

        filt = self._LoggingEnabledFilter(self)

        console_handler = self._console_handler
        console_handler.setLevel(self.console_level)
        console_handler.addFilter(filt)
        formatter = colorlog.ColoredFormatter(
            '%(log_color)s%(levelname)s:%(message)s',
            log_colors={
                'DEBUG': 'cyan',
                'INFO': 'white',
                'WARNING': 'yellow',
                'ERROR': 'red',
                'CRITICAL': 'bold_red'
            }
        )
        console_handler.setFormatter(formatter)
        self.logger.addHandler(console_handler)

        if self._file_handler is not None:
            file_handler = self._file_handler
            file_handler.setLevel(self.file_level)
            file_handler.setFormatter(logging.Formatter('%(asctime)s:%(levelname)s:%(message)s'))
            file_handler.addFilter(filt)
            self.logger.addHandler(file_handler)

    def _detach(self):
        """Remove the handlers of a replaced configuration so records are not emitted twice."""
        self.logger.removeHandler(self._console_handler)
        if self._file_handler is not None:
            self.logger.removeHandler(self._file_handler)
            self._file_handler.close()

    @classmethod
    def last_instance(cls) -> LogConfig:
        """Return the last `LogConfig`, or a new disabled one writing no file."""
        if cls._last_instance is None:
            return LogConfig(enabled=False, console_level=logging.DEBUG, file_level=logging.DEBUG,
                             file_path=None)
        return cls._last_instance


def log_config() -> LogConfig:
    """
    Returns the `LogConfig` object that its properties can change
    """
    return LogConfig.last_instance()


logger = logging.getLogger("quower")
logger.addHandler(logging.NullHandler())
"""
The logger of the quower package. Modules log through it; output appears once
`log_config().enabled` is True.

```python
from quower.log_cfg import logger
logger.info("xi(7) = 5")
```
"""
