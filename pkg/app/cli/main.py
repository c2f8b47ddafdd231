"""
Varel - Komut Satırı Giriş Noktası
==================================

    varel [--config FILE] [--json] [--output PATH] [--log-level LEVEL]
          <grup> [<eylem>] [--bölüm.anahtar değer ...]

Yapılandırma belgesinin her alanı komut satırında noktalı anahtarla
geçersiz kılınabilir (ör: --structure.epsilon 0.2, --options.zeta "[0.1, 0]").

Çıkış Kodları:
    0: başarılı
    2: tolerans aşıldı
    3: yapılandırma / ayrıştırma hatası
    4: tanım kümesi / ön koşul ihlali

Kullanım:
    varel selftest
    varel --json cp reconstruct --options.zeta "[0.1, 0.05]"
    varel --output grid.csv structure eval --grid.nx 21
"""

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import IO, Dict, List, Optional, Sequence, Tuple

from app.cli.commands import COMMANDS
from app.cli.report import Report, emit, render_json, write_csv
from app.cli.selftest import selftest
from app.config import Settings, get_settings
from app.core.config_models import RunConfig
from app.core.exceptions import EXIT_OK, ConfigError, ToleranceError, VarelException
from app.core.logger import configure_root_logger, get_logger, log_outcome, log_run, resolve_level

logger = logging.getLogger(__name__)

GROUPS: Dict[str, Tuple[str, ...]] = {
    "structure": ("eval",),
    "rigidity": ("scan",),
    "burgers": ("solve",),
    "residue": (),
    "cp": ("reconstruct",),
    "weight": ("solve",),
    "second-order": ("verify",),
    "jets": ("check",),
    "selftest": (),
}


class VarelArgumentParser(argparse.ArgumentParser):
    """Kullanım hatalarını çıkış kodu 3 ile ConfigError'a çevirir."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ConfigError(f"{self.prog}: {message}", user_message="Geçersiz komut satırı.")


def build_parser() -> argparse.ArgumentParser:
    parser = VarelArgumentParser(prog="varel", description="Değişken eliptik yapılar için sayısal doğrulama aracı")
    parser.add_argument("--config", default=None, help="JSON yapılandırma dosyası")
    parser.add_argument("--json", action="store_true", help="Tek satır JSON rapor")
    parser.add_argument("--output", default=None, help=".csv uzantılı ise ızgara satırları, aksi halde JSON rapor")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ERROR")

    groups = parser.add_subparsers(dest="group", required=True)
    for group, actions in GROUPS.items():
        group_parser = groups.add_parser(group)
        if not actions:
            group_parser.set_defaults(command=(group,))
            continue
        action_parsers = group_parser.add_subparsers(dest="action", required=True)
        for action in actions:
            action_parsers.add_parser(action).set_defaults(command=(group, action))
    return parser


def parse_overrides(extras: Sequence[str]) -> Dict[str, str]:
    """["--a.b", "1", "--c.d=2"] → {"a.b": "1", "c.d": "2"}."""
    overrides: Dict[str, str] = {}
    items = list(extras)
    index = 0
    while index < len(items):
        token = items[index]
        if not token.startswith("--") or "." not in token:
            raise ConfigError(f"unrecognized argument: {token}", user_message=f"Tanınmayan argüman: {token}")
        key = token[2:]
        if "=" in key:
            key, value = key.split("=", 1)
            index += 1
        elif index + 1 < len(items):
            value = items[index + 1]
            index += 2
        else:
            raise ConfigError(f"missing value for {token}", user_message=f"Değer eksik: {token}")
        overrides[key] = value
    return overrides


def run(command: Tuple[str, ...], config: RunConfig, settings: Settings) -> Report:
    if command == ("selftest",):
        return selftest(config, settings)
    return COMMANDS[command](config, settings)


def _write_output(report: Report, path: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8", newline="") as handle:
        if target.suffix.lower() == ".csv":
            write_csv(report, handle)
        else:
            handle.write(render_json(report))


def _emit_error(exc: VarelException, command: str, stream: IO[str], as_json: bool) -> None:
    error = Report(command, passed=False, error_code=exc.exit_code)
    error.add("error", type(exc).__name__).add("message", exc.message).add("user_message", exc.user_message)
    emit(error, stream, as_json)


def main(argv: Optional[List[str]] = None, stdout: Optional[IO[str]] = None) -> int:
    stream = stdout or sys.stdout
    started = time.perf_counter()
    as_json = False
    command_name = "varel"
    exit_code = EXIT_OK
    try:
        args, extras = build_parser().parse_known_args(argv)
        as_json = args.json
        command_name = " ".join(args.command)

        settings = get_settings()
        level = resolve_level(args.log_level or settings.LOG_LEVEL)
        configure_root_logger(level)
        if settings.LOG_TO_FILE:
            get_logger("app", level=level, log_to_file=True, log_to_console=False)

        config = RunConfig.from_file(args.config) if args.config else RunConfig()
        config = config.with_overrides(parse_overrides(extras))
        settings = config.settings(settings)
        log_run(logger, command_name, {"config": args.config} if args.config else None)

        report = run(args.command, config, settings)
        if args.output:
            _write_output(report, args.output)
            report.add("output", args.output)
        emit(report, stream, as_json)
        if not report.passed:
            raise ToleranceError(f"{command_name} exceeded its tolerances", check=command_name)
    except ToleranceError as exc:
        logger.warning(f"[CLI] {exc.message}")
        exit_code = exc.exit_code
    except VarelException as exc:
        logger.error(f"[CLI] {command_name} failed: {exc.message}")
        _emit_error(exc, command_name, stream, as_json)
        exit_code = exc.exit_code

    log_outcome(logger, exit_code, (time.perf_counter() - started) * 1000.0)
    return exit_code


if __name__ == "__main__":
    raise SystemExit(main())
