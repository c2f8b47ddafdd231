"""
Komut Satırı Testleri
=====================

main(argv, stdout) üzerinden çıkış kodları, rapor biçimleri ve geçersiz kılmalar.

Çalıştırma:
    pytest tests/test_cli.py -v
"""

import csv
import io
import json

import pytest

from app.cli.commands import COMMANDS
from app.cli.main import main, parse_overrides
from app.cli.report import Report, render_json, render_text
from app.core.exceptions import ConfigError

NONRIGID = ["--structure.kind", "expressions", "--structure.alpha", "1", "--structure.beta", "y/2"]
SMALL_GRID = ["--grid.nx", "3", "--grid.ny", "3"]


def _run(*argv):
    buffer = io.StringIO()
    code = main(list(argv), stdout=buffer)
    return code, buffer.getvalue()


def _fields(text):
    return dict(line.split("=", 1) for line in text.strip().splitlines())


# =============================================================================
# ARGÜMANLAR
# =============================================================================

class TestOverrideParsing:
    def test_pairs(self):
        assert parse_overrides(["--a.b", "1", "--c.d=2"]) == {"a.b": "1", "c.d": "2"}

    def test_missing_value(self):
        with pytest.raises(ConfigError):
            parse_overrides(["--a.b"])

    def test_undotted_flag(self):
        with pytest.raises(ConfigError):
            parse_overrides(["--verbose", "1"])


# =============================================================================
# ÇIKIŞ KODLARI
# =============================================================================

class TestExitCodes:
    """0 başarılı, 2 tolerans, 3 yapılandırma, 4 ön koşul"""

    def test_rigidity_scan_reports_nonrigid(self):
        code, out = _run("rigidity", "scan", *NONRIGID, *SMALL_GRID)
        fields = _fields(out)
        assert code == 0
        assert fields["status"] == "ok"
        assert float(fields["max_obstruction"]) >= 0.25

    def test_cp_refuses_nonrigid(self):
        code, out = _run("cp", "reconstruct", *NONRIGID)
        fields = _fields(out)
        assert code == 4
        assert fields["error"] == "RigidityGateError"
        assert fields["status"] == "error"

    def test_unknown_group(self):
        code, _ = _run("nope")
        assert code == 3

    def test_invalid_override(self):
        code, out = _run("residue", "--structure.kind", "ellipse")
        assert code == 3
        assert _fields(out)["error"] == "ConfigError"

    def test_parse_error(self):
        code, out = _run("structure", "eval", *NONRIGID[:4], "--structure.beta", "y/)", *SMALL_GRID)
        assert code == 3
        assert _fields(out)["error"] == "ExpressionParseError"

    def test_invalid_log_level(self):
        code, _ = _run("--log-level", "LOUD", "residue")
        assert code == 3

    def test_missing_config_file(self, tmp_path):
        code, _ = _run("--config", str(tmp_path / "yok.json"), "residue")
        assert code == 3

    def test_tolerance_failure(self, monkeypatch):
        monkeypatch.setitem(COMMANDS, ("residue",), lambda config, settings: Report("residue", passed=False))
        code, out = _run("residue")
        assert code == 2
        assert _fields(out)["status"] == "tolerance_failed"


# =============================================================================
# RAPORLAR
# =============================================================================

class TestReports:
    def test_residue_json(self):
        code, out = _run("--json", "residue", "--options.zeta", "[0.1, 0.05]")
        data = json.loads(out)
        assert code == 0
        assert data["command"] == "residue"
        assert data["zeta"] == [0.1, 0.05]
        assert len(data["rows"]) == 4
        assert all(row["error"] <= 1e-9 for row in data["rows"])

    def test_deterministic_output(self):
        first = _run("--json", "residue")[1]
        second = _run("--json", "residue")[1]
        assert first == second

    def test_cp_reconstruct_epsilon(self):
        code, out = _run("--json", "cp", "reconstruct", "--options.zeta", "[0.1, 0.05]", "--options.transport", "embedded")
        data = json.loads(out)
        assert code == 0
        assert data["residual"] <= 1e-8
        assert data["transport"] == "embedded"

    def test_config_file(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"structure": {"epsilon": 0.2}, "grid": {"nx": 2, "ny": 2}}), encoding="utf-8")
        code, out = _run("--config", str(path), "structure", "eval")
        assert code == 0
        assert _fields(out)["points"] == "4"

    def test_csv_output(self, tmp_path):
        target = tmp_path / "grid.csv"
        code, out = _run("--output", str(target), "structure", "eval", "--grid.nx", "2", "--grid.ny", "2")
        assert code == 0
        assert _fields(out)["output"] == str(target)
        with target.open(encoding="utf-8") as handle:
            rows = list(csv.DictReader(handle))
        assert len(rows) == 4
        assert list(rows[0]) == ["x", "y", "alpha", "beta", "delta", "g0", "g1", "re_lambda", "im_lambda"]

    def test_burgers_solve_matches_closed_form(self):
        code, out = _run("--json", "burgers", "solve", *SMALL_GRID)
        data = json.loads(out)
        assert code == 0
        assert data["failed_points"] == 0
        assert data["closed_form_deviation"] <= 1e-9


class TestRendering:
    def test_text_layout(self):
        report = Report("demo").add("value", 0.5).add("flag", True)
        assert render_text(report) == "command=demo\nstatus=ok\nexit_code=0\nvalue=0.5\nflag=true\n"

    def test_nan_in_json(self):
        report = Report("demo").add("rate", float("nan"))
        assert json.loads(render_json(report))["rate"] == "nan"

    def test_error_report(self):
        report = Report("demo", passed=False, error_code=4)
        assert report.status == "error"
        assert report.exit_code == 4
