"""
Öz Test Paketi Testleri
=======================

Kontrol listesi, tek kontrol çalıştırıcısı ve tam paketin geçmesi.

Çalıştırma:
    pytest tests/test_selftest.py -v
"""

import math

import pytest

from app.cli.selftest import build_suite, run_check, selftest, summarize
from app.config import get_settings
from app.core.config_models import RunConfig
from app.core.exceptions import DomainError
from app.core.types import CheckRecord

EXPECTED_CHECKS = {
    "weighted_product_closure",
    "intertwining",
    "solved_weight",
    "mesh_refinement_ratio",
    "variable_residue_rate",
    "exact_reconstruction",
    "curve_region_reconstruction",
    "universal_burgers",
    "leibniz_tuples",
    "real_derivative_defects",
    "second_order_expansion",
    "second_order_rate",
}


@pytest.fixture(scope="module")
def suite():
    return build_suite(RunConfig(), get_settings())


# =============================================================================
# KONTROL LİSTESİ
# =============================================================================

class TestSuite:
    def test_property_checks_present(self, suite):
        names = {check[0] for check in suite}
        assert EXPECTED_CHECKS <= names

    def test_unique_names(self, suite):
        names = [check[0] for check in suite]
        assert len(names) == len(set(names))

    def test_directions(self, suite):
        assert {check[4] for check in suite} <= {"max", "min"}


class TestRunCheck:
    def test_max_direction(self):
        record = run_check(("small", "demo", lambda: 1e-12, 1e-10, "max"))
        assert record["passed"]
        assert record["module"] == "demo"

    def test_min_direction(self):
        assert not run_check(("rate", "demo", lambda: 0.5, 0.9, "min"))["passed"]
        assert run_check(("ratio", "demo", lambda: math.inf, 4.0, "min"))["passed"]

    def test_library_error_fails_check(self):
        def broken():
            raise DomainError((0.0, 4.0), reason="outside")

        record = run_check(("broken", "demo", broken, 1.0, "max"))
        assert not record["passed"]
        assert math.isnan(record["value"])

    def test_summarize(self):
        records = [
            CheckRecord(name="a", module="m", passed=True, value=0.0, tolerance=1.0),
            CheckRecord(name="b", module="m", passed=False, value=2.0, tolerance=1.0),
        ]
        summary = summarize(records)
        assert summary["failed"] == 1
        assert summary["by_module"]["m"] == {"total": 2, "passed": 1}


# =============================================================================
# TAM PAKET
# =============================================================================

class TestFullSuite:
    def test_all_checks_pass(self):
        report = selftest(RunConfig(), get_settings())
        failed = [row["name"] for row in report.rows if not row["passed"]]
        assert failed == []
        assert report.passed
