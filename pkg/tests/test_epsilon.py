"""
Rijit ε-Ailesi Testleri
=======================

Çalıştırma:
    pytest tests/test_epsilon.py -v
"""

import numpy as np
import pytest

from app.core.exceptions import DomainError
from app.structure.epsilon import EpsilonStructure

POINTS = [(0.0, 0.0), (0.3, 0.1), (-0.2, 0.25), (1.0, 1.0)]


class TestCoefficients:
    """α = 1/(1 − εx), β = εy/(1 − εx)"""

    def test_values_at_one_one(self, epsilon_structure):
        c = epsilon_structure.coefficients((1.0, 1.0))
        assert c.alpha == pytest.approx(1.0 / 0.9)
        assert c.beta == pytest.approx(0.1 / 0.9)

    def test_s_value_matches_discriminant(self, epsilon_family, epsilon_structure):
        """Δ = S/(1 − εx)²"""
        for x, y in POINTS:
            k = epsilon_family.pole_factor(x)
            delta = epsilon_structure.delta((x, y))
            assert delta == pytest.approx(epsilon_family.s_value(x, y) / k ** 2)

    def test_self_consistency(self, epsilon_family):
        report = epsilon_family.evaluator.self_consistency(POINTS)
        assert report.max_deviation <= 1e-8

    @pytest.mark.parametrize("x", [0.0, 0.5, -1.0, 3.0])
    def test_ode_residuals(self, epsilon_family, x):
        """α′ = αK ve K′ = K²"""
        r_alpha, r_rate = epsilon_family.ode_residuals(x)
        assert abs(r_alpha) <= 1e-12
        assert abs(r_rate) <= 1e-12


class TestEllipticDomain:
    """S > 0 bölgesi ve sınır parabolü"""

    def test_origin_inside(self, epsilon_family):
        report = epsilon_family.elliptic_domain_contains((0.0, 0.0))
        assert report.inside
        assert report.s_value == pytest.approx(4.0)
        assert report.pole_factor == pytest.approx(1.0)

    def test_outside(self):
        report = EpsilonStructure.make(1.0).elliptic_domain_contains((0.0, 3.0))
        assert not report.inside
        assert report.s_value == pytest.approx(-5.0)

    def test_boundary_parabola(self, epsilon_family):
        for x, y in epsilon_family.boundary_parabola(n=8):
            assert abs(epsilon_family.s_value(x, y)) <= 1e-10

    def test_zero_epsilon_has_no_boundary(self):
        assert EpsilonStructure.make(0.0).boundary_parabola() == []


class TestWeightAndClosedForms:
    """ψ = C√S, i_y ve λ kapalı formları"""

    def test_weight_origin(self, epsilon_family):
        assert epsilon_family.weight((0.0, 0.0)) == pytest.approx(2.0)

    def test_weight_normalization(self):
        assert EpsilonStructure.make(0.1, normalization=3.0).weight((0.0, 0.0)) == pytest.approx(6.0)

    def test_weight_outside(self):
        with pytest.raises(DomainError):
            EpsilonStructure.make(1.0).weight((0.0, 3.0))

    def test_weight_field_partials(self, epsilon_family):
        psi, h = epsilon_family.weight_field(), 1e-5
        x, y = 0.3, 0.2
        assert psi.derivative("x", x, y) == pytest.approx((psi(x + h, y) - psi(x - h, y)) / (2 * h), abs=1e-8)
        assert psi.derivative("y", x, y) == pytest.approx((psi(x, y + h) - psi(x, y - h)) / (2 * h), abs=1e-8)
        assert psi.derivative("yy", x, y) == pytest.approx(
            (psi.derivative("y", x, y + h) - psi.derivative("y", x, y - h)) / (2 * h), abs=1e-7
        )

    def test_iy_closed_form_value(self, epsilon_family):
        """(0, 1): i_y = (−0.2/3.99, −0.01/3.99)"""
        iy = epsilon_family.iy_closed_form((0.0, 1.0))
        assert (iy.u, iy.v) == pytest.approx((-0.2 / 3.99, -0.01 / 3.99))

    @pytest.mark.parametrize("point", POINTS)
    def test_iy_closed_form_matches_structure(self, epsilon_family, epsilon_structure, point):
        closed = epsilon_family.iy_closed_form(point)
        derived = epsilon_structure.generator_derivatives(point).iy
        assert closed.is_close(derived, tol=1e-12)

    @pytest.mark.parametrize("point", POINTS)
    def test_spectral_closed_form(self, epsilon_family, epsilon_structure, point):
        closed = epsilon_family.spectral_closed_form(point)
        derived = epsilon_structure.spectral_lambda(point)
        assert closed.lam == pytest.approx(derived.lam, abs=1e-12)
        assert closed.lam_x == pytest.approx(derived.lam_x, abs=1e-12)
        assert closed.lam_y == pytest.approx(derived.lam_y, abs=1e-12)

    def test_to_dict(self, epsilon_family):
        data = epsilon_family.elliptic_domain_contains((0.0, 0.0)).to_dict()
        assert set(data) == {"inside", "s_value", "pole_factor"}
        assert np.isclose(data["s_value"], 4.0)
