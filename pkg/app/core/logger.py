"""
Varel - Loglama
===============

Kütüphane modülleri `logging.getLogger(__name__)` kullanır; handler'ları
yalnızca CLI bağlar. Çıktı stderr'e gider, stdout rapor ve CSV içindir.

LOG_TO_FILE=true verildiğinde ayrıca logs/varel.log dosyasına dönen
(rotating) bir kayıt tutulur: 2 MB sınır, 5 yedek.

Kullanım:
    from app.core.logger import get_logger, resolve_level

    logger = get_logger("app.cli", level=resolve_level("INFO"))
    logger.info("[CLI] selftest")
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Dict, Optional, Union

from app.core.exceptions import ConfigError

ROTATE_BYTES = 2_000_000
ROTATE_BACKUPS = 5
LOG_FILE_NAME = "varel.log"

RECORD_FORMAT = "%(asctime)s %(levelname)-7s %(name)s | %(message)s"
TIME_FORMAT = "%H:%M:%S"


def resolve_level(level: Union[str, int]) -> int:
    """"INFO" / "debug" / 20 gibi girdileri logging seviyesine çevirir."""
    if isinstance(level, int):
        return level
    resolved = logging.getLevelName(level.strip().upper())
    if not isinstance(resolved, int):
        raise ConfigError(f"unknown log level: {level}", user_message="Geçersiz log seviyesi.")
    return resolved


def _formatter() -> logging.Formatter:
    return logging.Formatter(RECORD_FORMAT, datefmt=TIME_FORMAT)


def _file_handler(log_dir: Union[str, Path], level: int) -> logging.Handler:
    directory = Path(log_dir)
    directory.mkdir(parents=True, exist_ok=True)
    handler = RotatingFileHandler(
        directory / LOG_FILE_NAME,
        maxBytes=ROTATE_BYTES,
        backupCount=ROTATE_BACKUPS,
        encoding="utf-8",
    )
    handler.setLevel(level)
    handler.setFormatter(_formatter())
    return handler


def get_logger(
    name: str = "app",
    level: Optional[int] = None,
    log_to_file: Optional[bool] = None,
    log_to_console: bool = True,
) -> logging.Logger:
    """
    Handler'ları bağlanmış bir logger döndürür.

    Aynı isimle ikinci çağrı mevcut logger'ı olduğu gibi geri verir.
    Verilmeyen seviye ve dosya tercihi Settings'ten okunur.
    """
    from app.config import get_settings

    logger = logging.getLogger(name)
    if logger.handlers:
        return logger

    settings = get_settings()
    effective = level if level is not None else resolve_level(settings.LOG_LEVEL)
    logger.setLevel(effective)

    if log_to_console:
        console = logging.StreamHandler(sys.stderr)
        console.setLevel(effective)
        console.setFormatter(_formatter())
        logger.addHandler(console)

    if settings.LOG_TO_FILE if log_to_file is None else log_to_file:
        logger.addHandler(_file_handler(settings.LOG_DIR, effective))

    return logger


def configure_root_logger(level: int = logging.WARNING) -> None:
    """CLI girişinde bir kez çağrılır; `app.*` kayıtları stderr'e akar."""
    logging.basicConfig(level=level, format=RECORD_FORMAT, datefmt=TIME_FORMAT, stream=sys.stderr)


def _suffix(extra: Optional[Dict[str, Any]]) -> str:
    return f" {extra}" if extra else ""


def log_run(logger: logging.Logger, command: str, extra: Optional[Dict[str, Any]] = None) -> None:
    """Komut başlangıcı: "[RUN] cp reconstruct {...}"."""
    logger.info(f"[RUN] {command}{_suffix(extra)}")


def log_outcome(
    logger: logging.Logger,
    exit_code: int,
    duration_ms: float,
    extra: Optional[Dict[str, Any]] = None,
) -> None:
    """Komut sonucu ve süresi (ms)."""
    logger.info(f"[OUTCOME] exit={exit_code} duration={duration_ms:.2f}ms{_suffix(extra)}")
