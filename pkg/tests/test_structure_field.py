"""
Yapı Alanı Testleri
===================

Rejim sınıflandırması, üreteç türevleri, içsel engel 𝒢 ve spektral λ.

Çalıştırma:
    pytest tests/test_structure_field.py -v
"""

import math

import numpy as np
import pytest

from app.config import Settings
from app.core.exceptions import DomainError, EllipticityError, MissingDerivativeError, NotParabolicError
from app.core.types import Regime
from app.structure.epsilon import EpsilonStructure
from app.structure.fields import ScalarField
from app.structure.structure_field import CoefficientEvaluator, StructureField

RNG_SEED = 20240607


def _parabolic_structure() -> StructureField:
    """α = β²/4, β = x: her yerde Δ = 0."""
    return StructureField(CoefficientEvaluator.from_expressions("x^2/4", "x"))


# =============================================================================
# SINIFLANDIRMA
# =============================================================================

class TestClassification:
    """Δ = 4α − β² ile rejim"""

    def test_constant_is_elliptic(self, constant_structure):
        c = constant_structure.classify((0.0, 0.0))
        assert c.regime is Regime.ELLIPTIC
        assert c.delta == pytest.approx(4.0)

    def test_epsilon_origin(self, epsilon_structure):
        assert epsilon_structure.classify((0.0, 0.0)).delta == pytest.approx(4.0)

    def test_epsilon_boundary_is_parabolic(self):
        """ε = 1, (0, 2): S = 0"""
        structure = EpsilonStructure.make(1.0).structure()
        assert structure.classify((0.0, 2.0)).regime is Regime.PARABOLIC

    def test_hyperbolic_refused(self):
        structure = EpsilonStructure.make(1.0).structure()
        assert structure.classify((0.0, 3.0)).regime is Regime.HYPERBOLIC
        with pytest.raises(EllipticityError):
            structure.generator_derivatives((0.0, 3.0))

    def test_pole_is_outside_domain(self, epsilon_structure):
        with pytest.raises(DomainError):
            epsilon_structure.coefficients((10.0, 0.0))

    def test_classification_to_dict(self, constant_structure):
        assert constant_structure.classify((0.0, 0.0)).to_dict() == {"regime": "elliptic", "delta": 4.0}


# =============================================================================
# ÜRETEÇ TÜREVLERİ
# =============================================================================

class TestGeneratorDerivatives:
    """(2i+β)·i_• = −(α_• + β_• i)"""

    def test_constant_structure_is_frozen(self, constant_structure):
        d = constant_structure.generator_derivatives((0.3, -0.2))
        assert d.ix.magnitude() == pytest.approx(0.0)
        assert d.iy.magnitude() == pytest.approx(0.0)

    def test_epsilon_origin_values(self, epsilon_structure):
        """ε = 0.1, (0,0): i_x = 0.05 i, i_y = −0.05"""
        d = epsilon_structure.generator_derivatives((0.0, 0.0))
        assert (d.ix.u, d.ix.v) == pytest.approx((0.0, 0.05))
        assert (d.iy.u, d.iy.v) == pytest.approx((-0.05, 0.0))

    @pytest.mark.parametrize("point", [(0.0, 0.0), (0.3, 0.1), (-0.2, 0.25)])
    def test_defining_residual(self, epsilon_structure, nonrigid_structure, point):
        for structure in (epsilon_structure, nonrigid_structure):
            rx, ry = structure.defining_residual(point)
            assert rx.magnitude() <= 1e-12
            assert ry.magnitude() <= 1e-12

    def test_second_order_matches_differences(self, epsilon_structure):
        """i_xx, i_xy, i_yy merkezi farklarla uyumlu"""
        x, y, h = 0.2, 0.1, 1e-5
        d = epsilon_structure.generator_derivatives((x, y), order=2)
        ix_p = epsilon_structure.generator_derivatives((x + h, y)).ix
        ix_m = epsilon_structure.generator_derivatives((x - h, y)).ix
        iy_p = epsilon_structure.generator_derivatives((x, y + h)).iy
        iy_m = epsilon_structure.generator_derivatives((x, y - h)).iy
        ixy_p = epsilon_structure.generator_derivatives((x, y + h)).ix
        ixy_m = epsilon_structure.generator_derivatives((x, y - h)).ix
        assert d.ixx.u == pytest.approx((ix_p.u - ix_m.u) / (2 * h), abs=1e-7)
        assert d.ixx.v == pytest.approx((ix_p.v - ix_m.v) / (2 * h), abs=1e-7)
        assert d.iyy.u == pytest.approx((iy_p.u - iy_m.u) / (2 * h), abs=1e-7)
        assert d.iyy.v == pytest.approx((iy_p.v - iy_m.v) / (2 * h), abs=1e-7)
        assert d.ixy.u == pytest.approx((ixy_p.u - ixy_m.u) / (2 * h), abs=1e-7)
        assert d.ixy.v == pytest.approx((ixy_p.v - ixy_m.v) / (2 * h), abs=1e-7)

    def test_unsupported_order(self, epsilon_structure):
        with pytest.raises(MissingDerivativeError):
            epsilon_structure.generator_derivatives((0.0, 0.0), order=3)

    def test_vectorized_points(self, epsilon_structure):
        xs = np.array([0.0, 0.1, 0.2])
        ys = np.array([0.0, -0.1, 0.3])
        d = epsilon_structure.generator_derivatives((xs, ys))
        assert np.shape(d.ix.u) == (3,)
        assert d.ix.v[0] == pytest.approx(0.05)


# =============================================================================
# İÇSEL ENGEL
# =============================================================================

class TestObstruction:
    """𝒢 = i_x + i·i_y ve kapalı form (A, B)"""

    def test_epsilon_is_rigid(self, epsilon_structure):
        xs, ys = np.meshgrid(np.linspace(-0.5, 0.5, 7), np.linspace(-0.5, 0.5, 7))
        assert epsilon_structure.max_rigidity_residual(xs, ys) <= 1e-12

    def test_nonrigid_origin(self, nonrigid_structure):
        """α = 1, β = y/2, (0,0): A = 0, B = −0.25"""
        obs = nonrigid_structure.obstruction((0.0, 0.0))
        assert obs.G0 == pytest.approx(0.0, abs=1e-14)
        assert obs.G1 == pytest.approx(-0.25)
        assert nonrigid_structure.rigidity_residual((0.0, 0.0)) == pytest.approx(0.25)

    @pytest.mark.parametrize("y", [-1.0, 0.5, 2.0])
    def test_nonrigid_closed_form(self, nonrigid_structure, y):
        """A = (y/4)/Δ, B = (−1 + y²/8)/Δ"""
        delta = 4.0 - y * y / 4.0
        obs = nonrigid_structure.obstruction((0.3, y))
        assert obs.A == pytest.approx((y / 4.0) / delta)
        assert obs.B == pytest.approx((-1.0 + y * y / 8.0) / delta)
        assert obs.agreement() <= 1e-12

    @pytest.mark.parametrize("point", [(0.0, 0.0), (0.3, 0.1), (-0.2, 0.25)])
    def test_forced_coefficients(self, nonrigid_structure, epsilon_structure, point):
        for structure in (nonrigid_structure, epsilon_structure):
            r0, r1 = structure.forced_coefficient_residual(point)
            assert abs(r0) <= 1e-12
            assert abs(r1) <= 1e-12


def _burgers_structures(nonrigid: StructureField, epsilon: StructureField) -> list:
    return [
        epsilon,
        EpsilonStructure.make(0.3).structure(),
        nonrigid,
        StructureField(CoefficientEvaluator.from_expressions("1 + x^2/4", "x*y/3", name="polynomial")),
    ]


# =============================================================================
# SPEKTRAL PARAMETRE
# =============================================================================

class TestSpectralLambda:
    """λ = (−β + i√Δ)/2 ve karmaşık Burgers denklemi"""

    def test_constant(self, constant_structure):
        s = constant_structure.spectral_lambda((0.0, 0.0))
        assert s.lam == pytest.approx(1j)
        assert s.b > 0

    def test_skew_constant(self):
        structure = StructureField(CoefficientEvaluator.constant(2.0, 1.0))
        assert structure.spectral_lambda((0.0, 0.0)).lam == pytest.approx(complex(-0.5, math.sqrt(7.0) / 2.0))

    def test_epsilon_origin(self, epsilon_structure):
        """λ = i, λ_x = 0.05 i, λ_y = −0.05"""
        s = epsilon_structure.spectral_lambda((0.0, 0.0))
        assert s.lam == pytest.approx(1j)
        assert s.lam_x == pytest.approx(0.05j)
        assert s.lam_y == pytest.approx(-0.05)

    @pytest.mark.parametrize("point", [(0.0, 0.0), (0.3, 0.1), (-0.2, 0.25)])
    def test_universal_burgers(self, nonrigid_structure, epsilon_structure, point):
        for structure in (nonrigid_structure, epsilon_structure):
            assert abs(structure.burgers_residual(point)) <= 1e-12

    def test_universal_burgers_random_points(self, nonrigid_structure, epsilon_structure):
        """10³ rastgele nokta, rijit ve rijit olmayan dört yapı"""
        rng = np.random.default_rng(RNG_SEED)
        xs, ys = rng.uniform(-0.45, 0.45, (2, 1000))
        for structure in _burgers_structures(nonrigid_structure, epsilon_structure):
            assert np.max(np.abs(structure.burgers_residual((xs, ys)))) <= 1e-8
            r0, r1 = structure.forced_coefficient_residual((xs, ys))
            assert np.max(np.abs(r0)) <= 1e-8
            assert np.max(np.abs(r1)) <= 1e-8

    def test_conservative_only_when_rigid(self, nonrigid_structure, epsilon_structure):
        assert abs(epsilon_structure.conservative_residual((0.2, 0.1))) <= 1e-12
        assert abs(nonrigid_structure.conservative_residual((0.0, 0.0))) >= 1e-3


# =============================================================================
# PARABOLİK YOL VE TUTARLILIK
# =============================================================================

class TestParabolicAndConsistency:
    def test_parabolic_canonical(self):
        """α = β²/4, β = x: i_x = −β_x/2 = −0.5"""
        ix, iy = _parabolic_structure().parabolic_canonical_derivatives((1.0, 0.0))
        assert (ix.u, ix.v) == pytest.approx((-0.5, 0.0))
        assert (iy.u, iy.v) == pytest.approx((0.0, 0.0))

    def test_parabolic_refuses_elliptic_point(self, constant_structure):
        with pytest.raises(NotParabolicError):
            constant_structure.parabolic_canonical_derivatives((0.0, 0.0))

    def test_self_consistency(self):
        evaluator = CoefficientEvaluator.from_expressions("1 + x^2", "x*y")
        report = evaluator.self_consistency([(0.0, 0.0), (0.3, -0.2), (0.5, 0.5)])
        assert report.samples == 3
        assert report.max_deviation <= 1e-6

    def test_partials_override(self):
        evaluator = CoefficientEvaluator.from_expressions("1", "y/2", partials={"beta_y": "0.5"})
        assert evaluator.partial("beta", "y", 0.0, 1.0) == pytest.approx(0.5)
        assert evaluator.partial("beta", "x", 0.0, 1.0) == pytest.approx(0.0)


class TestDomainScale:
    """FD yedeği adımı evaluator ölçeğiyle büyür"""

    def test_scaled_step(self):
        """(x+h)³ − (x−h)³ / 2h = 3 + h²; h = FD_STEP·ölçek"""
        settings = Settings(FD_STEP=1e-5, DOMAIN_SCALE=1.0)
        plain = ScalarField(value=lambda x, y: x ** 3, settings=settings)
        scaled = ScalarField(value=lambda x, y: x ** 3, settings=settings, scale=10.0)
        assert plain.derivative("x", 1.0, 0.0) - 3.0 <= 1e-9
        assert scaled.derivative("x", 1.0, 0.0) - 3.0 == pytest.approx(1e-8, rel=1e-2)

    def test_scale_reaches_second_order(self):
        """x⁴: ikinci fark 12 + 2h² (h = FD_STEP_SECOND·ölçek)"""
        settings = Settings(FD_STEP_SECOND=1e-4, DOMAIN_SCALE=1.0)
        scaled = ScalarField(value=lambda x, y: x ** 4, settings=settings, scale=10.0)
        assert scaled.derivative("xx", 1.0, 0.0) - 12.0 == pytest.approx(2e-6, rel=1e-2)

    def test_evaluator_propagates_scale(self):
        evaluator = CoefficientEvaluator.from_expressions("1 + x^2", "x*y", scale=10.0)
        assert evaluator.alpha.scale == 10.0
        assert evaluator.beta.scale == 10.0
        assert (evaluator.alpha * evaluator.beta).scale == 10.0

    def test_default_scale(self):
        evaluator = CoefficientEvaluator.constant()
        assert evaluator.scale == 1.0
        assert evaluator.alpha.scale == 1.0
