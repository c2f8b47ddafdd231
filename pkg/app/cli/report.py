"""
Varel - Rapor Biçimlendirme
===========================

Komut sonuçlarını üç biçimde yazar:
    - metin: key=value satırları (sıralı, deterministik)
    - json: tek satırlık makine okunur kayıt (sort_keys)
    - csv: ızgara satırları, başlık satırı sütun adlarıyla

Raporlar zaman damgası taşımaz; aynı yapılandırma aynı baytları üretir.
"""

import csv
import json
import math
from dataclasses import dataclass, field
from typing import IO, Any, Dict, List, Optional, Sequence

from app.core.exceptions import EXIT_OK, EXIT_TOLERANCE

STRUCTURE_COLUMNS = ("x", "y", "alpha", "beta", "delta", "g0", "g1", "re_lambda", "im_lambda")
BURGERS_COLUMNS = ("x", "y", "re_lambda", "im_lambda", "jacobian_modulus")


@dataclass
class Report:
    """
    Bir komutun çıktısı.

    Attributes:
        command: komut adı (ör: "cp reconstruct")
        values: özet değerler (sıralı)
        rows: ızgara/tablo satırları
        columns: CSV sütunları; None ise ilk satırın anahtarları
        passed: tolerans kontrolü sonucu (raporlama komutlarında True)
        error_code: hata raporlarında çıkış kodu
    """
    command: str
    values: Dict[str, Any] = field(default_factory=dict)
    rows: List[Dict[str, Any]] = field(default_factory=list)
    columns: Optional[Sequence[str]] = None
    passed: bool = True
    error_code: Optional[int] = None

    @property
    def exit_code(self) -> int:
        if self.error_code is not None:
            return self.error_code
        return EXIT_OK if self.passed else EXIT_TOLERANCE

    @property
    def status(self) -> str:
        if self.error_code is not None:
            return "error"
        return "ok" if self.passed else "tolerance_failed"

    def add(self, key: str, value: Any) -> "Report":
        self.values[key] = value
        return self

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "command": self.command,
            "status": self.status,
            "exit_code": self.exit_code,
            **self.values,
        }
        if self.rows:
            out["rows"] = self.rows
        return out


# =============================================================================
# BİÇİMLENDİRİCİLER
# =============================================================================

def _scalar(value: Any) -> Any:
    """JSON'a uygun değer; NaN/inf metin olarak."""
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, complex):
        return [_scalar(value.real), _scalar(value.imag)]
    if isinstance(value, dict):
        return {k: _scalar(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_scalar(v) for v in value]
    return value


def _format(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (dict, list, tuple, complex)):
        return json.dumps(_scalar(value), sort_keys=True)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def render_text(report: Report) -> str:
    lines = [f"command={report.command}", f"status={report.status}", f"exit_code={report.exit_code}"]
    lines.extend(f"{key}={_format(value)}" for key, value in report.values.items())
    if report.rows:
        lines.append(f"rows={len(report.rows)}")
    return "\n".join(lines) + "\n"


def render_json(report: Report) -> str:
    return json.dumps(_scalar(report.to_dict()), sort_keys=True, ensure_ascii=False) + "\n"


def write_csv(report: Report, stream: IO[str]) -> None:
    columns = list(report.columns or (report.rows[0].keys() if report.rows else ()))
    writer = csv.DictWriter(stream, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in report.rows:
        writer.writerow({key: _format(row.get(key)) for key in columns})


def emit(report: Report, stream: IO[str], as_json: bool = False) -> None:
    stream.write(render_json(report) if as_json else render_text(report))
