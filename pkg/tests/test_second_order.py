"""
İkinci Mertebe Açılım Testleri
==============================

4∂_z∂_z̄ f = (L u + R0) + (L v + R1) i

Çalıştırma:
    pytest tests/test_second_order.py -v
"""

import math

import numpy as np
import pytest

from app.calculus.sections import Section
from app.calculus.second_order import (
    ConvergenceRow,
    L_op,
    batch_verify,
    corrections,
    estimate_order,
    expansion_rhs,
    principal_part_shift,
    verify_expansion,
)
from app.core.exceptions import RigidityGateError, StencilError
from app.structure.epsilon import EpsilonStructure
from app.structure.fields import ScalarField
from app.structure.structure_field import CoefficientEvaluator, StructureField

SECTION = Section.from_expressions("x*y", "x^2-y^2")
RNG_SEED = 20240607


def _random_cubic(rng: np.random.Generator) -> Section:
    """Küçük katsayılı kübik kesit; dördüncü türevler sıfır, O(h²) terimi yapıdan gelir."""
    c = rng.uniform(-0.05, 0.05, size=7)
    params = {f"c{k}": float(c[k]) for k in range(7)}
    return Section.from_expressions(
        "c0*x^3 + c1*x*y^2 + c2*y",
        "c3*x^3 + c4*y^3 + c5*x*y^2 + c6*x^2",
        params=params,
    )


class TestOperators:
    """L ve birinci mertebe düzeltmeler"""

    def test_laplacian(self, constant_structure):
        """α=1, β=0: L(x² + y²) = 4"""
        w = ScalarField.from_expression("x^2 + y^2")
        assert L_op(w, (0.3, 0.2), constant_structure) == pytest.approx(4.0)

    def test_skew_operator(self):
        """α=2, β=1: L(xy) = −β = −1"""
        structure = StructureField(CoefficientEvaluator.constant(2.0, 1.0))
        assert L_op(ScalarField.from_expression("x*y"), (0.0, 0.0), structure) == pytest.approx(-1.0)

    def test_corrections_epsilon(self, epsilon_structure):
        """ε = 0.1, (0,0), u = y: (R0, R1) = (0, 0.1)"""
        r0, r1 = corrections(Section.from_expressions("y", "0"), (0.0, 0.0), epsilon_structure)
        assert (r0, r1) == pytest.approx((0.0, 0.1))

    def test_corrections_vanish_for_constant_structure(self, constant_structure):
        assert corrections(SECTION, (0.2, 0.1), constant_structure) == pytest.approx((0.0, 0.0))

    def test_principal_part_shift(self, epsilon_structure):
        """Afin ekleme yalnızca R0/R1 üzerinden etkiler"""
        delta, predicted = principal_part_shift(SECTION, (1.0, 2.0, -1.0, 0.5, 0.3, 2.0), (0.2, 0.1), epsilon_structure)
        assert (delta - predicted).magnitude() <= 1e-12


class TestVerifyExpansion:
    """Sonlu fark doğrulaması"""

    def test_holomorphic_square(self, constant_structure):
        """z² = (x² − y²) + 2xy i: iki taraf da sıfır"""
        report = verify_expansion(Section.from_expressions("x^2-y^2", "2*x*y"), (0.1, 0.2), constant_structure)
        assert report.residual <= 1e-9
        assert abs(report.rhs.u) <= 1e-12 and abs(report.rhs.v) <= 1e-12

    def test_real_square(self, constant_structure):
        """f = x²: 4∂_z∂_z̄ f = Δf = 2"""
        report = verify_expansion(Section.from_expressions("x^2", "0"), (0.1, 0.2), constant_structure)
        assert (float(report.rhs.u), float(report.rhs.v)) == pytest.approx((2.0, 0.0))
        assert report.residual <= 1e-9

    @pytest.mark.parametrize("point", [(0.0, 0.0), (0.3, 0.1)])
    def test_epsilon_family(self, epsilon_structure, point):
        report = verify_expansion(SECTION, point, epsilon_structure)
        assert report.residual <= 1e-6
        assert len(report.rows) == 3
        assert [r.h for r in report.rows] == sorted((r.h for r in report.rows), reverse=True)

    def test_random_sections_converge_at_second_order(self, epsilon_structure):
        """5 rastgele kesit × 10 rastgele nokta: mertebe 2 ± 0.3, h = 2.5e-3 artığı ≤ 1e-6"""
        rng = np.random.default_rng(RNG_SEED)
        sections = [_random_cubic(rng) for _ in range(5)]
        points = [(float(x), float(y)) for x, y in rng.uniform(-0.4, 0.4, (10, 2))]
        reports = batch_verify(sections, points, epsilon_structure)
        assert len(reports) == 50
        for report in reports:
            assert report.step == pytest.approx(2.5e-3)
            assert report.residual <= 1e-6
            assert 1.7 <= report.order <= 2.3

    def test_report_to_dict(self, epsilon_structure):
        data = verify_expansion(SECTION, (0.0, 0.0), epsilon_structure).to_dict()
        assert set(data) == {"lhs", "rhs", "residual", "order", "table"}
        assert len(data["table"]) == 3

    def test_nonrigid_refused(self, nonrigid_structure):
        with pytest.raises(RigidityGateError):
            verify_expansion(SECTION, (0.0, 0.0), nonrigid_structure)

    def test_stencil_leaves_elliptic_region(self):
        """ε = 1: S = 0 parabolü y = 2'de"""
        structure = EpsilonStructure.make(1.0).structure()
        with pytest.raises(StencilError):
            verify_expansion(SECTION, (0.0, 1.995), structure)

    def test_batch_order(self, epsilon_structure):
        sections = [SECTION, Section.from_expressions("x", "y")]
        points = [(0.0, 0.0), (0.1, 0.1)]
        reports = batch_verify(sections, points, epsilon_structure)
        assert len(reports) == 4
        assert reports[1].rhs.is_close(expansion_rhs(SECTION, (0.1, 0.1), epsilon_structure), tol=0.0)


class TestOrderEstimate:
    def test_second_order_rate(self):
        rows = [ConvergenceRow(h=1e-2, residual_scalar=4e-6, residual_i=0.0),
                ConvergenceRow(h=5e-3, residual_scalar=1e-6, residual_i=0.0)]
        assert estimate_order(rows) == pytest.approx(2.0)

    def test_roundoff_floor(self):
        rows = [ConvergenceRow(h=1e-2, residual_scalar=1e-15, residual_i=0.0),
                ConvergenceRow(h=5e-3, residual_scalar=1e-16, residual_i=0.0)]
        assert math.isnan(estimate_order(rows))

    def test_single_row(self):
        assert math.isnan(estimate_order([ConvergenceRow(h=1e-2, residual_scalar=1.0, residual_i=0.0)]))
