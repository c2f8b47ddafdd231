"""
Cauchy–Pompeiu Gösterimi Testleri
=================================

Kuadratür, bölgeler, rezidüler ve değişken yapılı yeniden yapılandırma.

Çalıştırma:
    pytest tests/test_cauchy_pompeiu.py -v
"""

import math

import numpy as np
import pytest

from app.calculus.sections import Section
from app.core.exceptions import ConfigError, DomainError, QuadratureError, RigidityGateError
from app.algebra.fiber import j_element, norm
from app.config import Settings
from app.core.types import AreaRule, Transport
from app.integral.cauchy_pompeiu import (
    QuadratureMesh,
    area_integral,
    area_nodes,
    boundary_integral,
    comparability_bracket,
    dtheta_circulation,
    empirical_rate,
    frozen_residue,
    kernel,
    kernel_dbar,
    kernel_section,
    parse_area_rule,
    mesh_refinement_study,
    reconstruct,
    residue_table,
    resolve_area_rule,
    variable_residue,
    wedge_circulation,
)
from app.integral.quadrature import composite_gauss, gauss_legendre, periodic_trapezoid
from app.integral.regions import CurveRegion, Disk, Rectangle, closure_gap, make_region, sample_grid, signed_area
from app.structure.structure_field import CoefficientEvaluator, StructureField

UNIT_DISK = Disk(center=(0.0, 0.0), radius=1.0)
ZETA = (0.1, 0.05)
RADII = [0.4, 0.2, 0.1, 0.05]
COARSE = QuadratureMesh(radial_panels=1, radial_order=2, angular_nodes=8, boundary_panels=2, boundary_order=8)
CELLS = QuadratureMesh(area_rule=AreaRule.CELLS)
POLAR = QuadratureMesh(area_rule=AreaRule.POLAR)

# U biçimli çokgen: ortada üstten açık çentik
U_VERTICES = [(-0.5, -0.4), (0.5, -0.4), (0.5, 0.4), (0.2, 0.4), (0.2, -0.1), (-0.2, -0.1), (-0.2, 0.4), (-0.5, 0.4)]
U_ZETA = (-0.35, 0.1)
OUTSIDE = (1.5, 0.2)


def _pair(a):
    return (float(a.u), float(a.v))


# =============================================================================
# KUADRATÜR VE BÖLGELER
# =============================================================================

class TestQuadrature:
    def test_gauss_exact_for_polynomials(self):
        nodes, weights = composite_gauss(0.0, 2.0, 3, 4)
        assert float(weights @ nodes ** 7) == pytest.approx(2.0 ** 8 / 8.0)

    def test_reversed_interval(self):
        nodes, weights = composite_gauss(1.0, 0.0, 2, 3)
        assert float(weights @ np.ones_like(nodes)) == pytest.approx(-1.0)

    def test_invalid_order(self):
        with pytest.raises(QuadratureError):
            gauss_legendre(0)
        with pytest.raises(QuadratureError):
            composite_gauss(0.0, 1.0, 0, 4)

    def test_periodic_trapezoid(self):
        theta, w = periodic_trapezoid(16)
        assert float(w * np.sum(np.cos(theta) ** 2)) == pytest.approx(math.pi)


class TestRegions:
    """Pozitif yönlü kapalı sınırlar"""

    @pytest.mark.parametrize("region", [Disk((0.1, -0.2), 0.5), Rectangle(-0.5, -0.25, 0.5, 0.75)])
    def test_orientation_and_closure(self, region):
        assert signed_area(region) > 0.0
        assert closure_gap(region) <= 1e-12

    def test_areas(self):
        assert signed_area(Disk((0.0, 0.0), 0.5)) == pytest.approx(math.pi / 4.0)
        assert signed_area(Rectangle(-0.5, -0.25, 0.5, 0.75)) == pytest.approx(1.0)

    def test_radial_extent_reaches_boundary(self):
        rect = Rectangle(-0.5, -0.5, 0.5, 0.5)
        theta = np.linspace(0.0, 2.0 * np.pi, 13)
        extent = rect.radial_extent(ZETA, theta)
        xs = ZETA[0] + extent * np.cos(theta)
        ys = ZETA[1] + extent * np.sin(theta)
        for x, y in zip(xs, ys):
            assert abs(rect.distance_to_boundary((x, y))) <= 1e-12

    def test_invalid_regions(self):
        with pytest.raises(ConfigError):
            Disk((0.0, 0.0), 0.0)
        with pytest.raises(ConfigError):
            Rectangle(1.0, 0.0, 0.0, 1.0)
        with pytest.raises(ConfigError):
            make_region({"kind": "ellipse"})
        with pytest.raises(ConfigError):
            make_region({"kind": "annulus"})

    def test_make_region(self):
        region = make_region({"kind": "rectangle", "corners": [[0, 0], [1, 2]]})
        assert region.bounding_box() == (0.0, 0.0, 1.0, 2.0)
        assert make_region({"kind": "disk", "radius": 0.3}).to_dict()["radius"] == 0.3

    def test_sample_grid_inside(self):
        xs, ys = sample_grid(Disk((0.0, 0.0), 0.5), 9)
        assert np.all(np.hypot(xs, ys) <= 0.5 + 1e-12)
        assert xs.size > 0


# =============================================================================
# ÇEKİRDEK VE REZİDÜLER
# =============================================================================

class TestKernel:
    def test_kernel_components(self, constant_structure):
        z = kernel(constant_structure, (0.3, 0.4), (0.1, 0.1))
        assert _pair(z) == pytest.approx((0.3, -0.2))

    def test_comparability_classical(self, constant_structure):
        low, high = comparability_bracket(constant_structure, ZETA, 0.05, 0.3)
        assert low == pytest.approx(1.0)
        assert high == pytest.approx(1.0)

    def test_kernel_holomorphic_when_rigid(self, epsilon_structure):
        dz_kernel, dz_inverse = kernel_dbar(epsilon_structure, ZETA, (0.3, -0.1))
        assert dz_kernel <= 1e-12
        assert dz_inverse <= 1e-6

    def test_kernel_not_holomorphic_when_nonrigid(self, nonrigid_structure):
        dz_kernel, _ = kernel_dbar(nonrigid_structure, (0.0, 0.0), (0.3, 0.1))
        assert dz_kernel >= 1e-3


class TestResidues:
    """∮ Z⁻¹ dz̃ → 2π j(ζ)"""

    def test_frozen_classical(self, constant_structure):
        assert _pair(frozen_residue(constant_structure, (0.0, 0.0), 1.0)) == pytest.approx((0.0, 2.0 * math.pi))

    def test_frozen_skew(self):
        structure = StructureField(CoefficientEvaluator.constant(2.0, 1.0))
        value = frozen_residue(structure, (0.0, 0.0), 0.3)
        expected = (2.0 * math.pi / math.sqrt(7.0), 4.0 * math.pi / math.sqrt(7.0))
        assert _pair(value) == pytest.approx(expected, abs=1e-10)

    def test_frozen_spectral_convergence(self, epsilon_structure):
        coarse = frozen_residue(epsilon_structure, ZETA, 0.2, 64)
        fine = frozen_residue(epsilon_structure, ZETA, 0.2, 128)
        assert (coarse - fine).magnitude() <= 1e-12

    def test_variable_equals_frozen_for_constant(self, constant_structure):
        frozen = frozen_residue(constant_structure, ZETA, 0.3)
        variable = variable_residue(constant_structure, ZETA, 0.3)
        assert frozen.is_close(variable, tol=1e-14)

    def test_epsilon_variable_residue_is_exact(self, epsilon_structure):
        for row in residue_table(epsilon_structure, ZETA, RADII):
            assert row.error <= 1e-9

    def test_nonrigid_convergence_rate(self, nonrigid_structure):
        zeta = (0.1, 0.3)
        rows = residue_table(nonrigid_structure, zeta, RADII)
        errors = [row.error for row in rows]
        assert errors[-1] < errors[0]
        assert empirical_rate(RADII, errors) >= 0.9

    def test_row_to_dict(self, epsilon_structure):
        row = residue_table(epsilon_structure, ZETA, [0.1])[0]
        assert set(row.to_dict()) == {"radius", "frozen", "variable", "error"}

    def test_rate_needs_two_points(self):
        assert math.isnan(empirical_rate([0.1, 0.05], [1e-16, 1e-17]))


# =============================================================================
# SINIR VE ALAN İNTEGRALLERİ
# =============================================================================

class TestIntegrals:
    def test_boundary_unit_circle(self, constant_structure):
        value = boundary_integral(Section.constant(1.0), UNIT_DISK, (0.0, 0.0), constant_structure)
        assert _pair(value) == pytest.approx((0.0, 2.0 * math.pi), abs=1e-12)

    def test_boundary_zero_section(self, epsilon_structure):
        value = boundary_integral(Section.constant(0.0), UNIT_DISK, ZETA, epsilon_structure)
        assert _pair(value) == (0.0, 0.0)

    def test_area_classical_oracle(self, constant_structure):
        """∬ dA / Z = i·∬ dA/(z − ζ) = −iπ·conj(ζ)"""
        value = area_integral(lambda p: Section.constant(1.0).at(constant_structure, p),
                              UNIT_DISK, (0.2, 0.1), constant_structure)
        assert _pair(value) == pytest.approx((-0.1 * math.pi, -0.2 * math.pi), abs=1e-8)

    def test_zeta_on_boundary(self, constant_structure):
        with pytest.raises(DomainError):
            boundary_integral(Section.constant(1.0), UNIT_DISK, (1.0, 0.0), constant_structure)


# =============================================================================
# YENİDEN YAPILANDIRMA
# =============================================================================

class TestReconstruct:
    """f(ζ) = −j·B/(2π) + j·A/π"""

    def test_classical_holomorphic(self, constant_structure):
        report = reconstruct(Section.from_expressions("x", "y"), UNIT_DISK, (0.2, 0.1), constant_structure)
        assert report.residual <= 1e-6
        assert _pair(report.value) == pytest.approx((0.2, 0.1), abs=1e-6)

    def test_classical_with_area_term(self, constant_structure, half_disk):
        report = reconstruct(Section.from_expressions("x^2", "x*y"), half_disk, ZETA, constant_structure)
        assert report.residual <= 1e-6

    def test_epsilon_coefficientwise(self, epsilon_structure, half_disk):
        """Merkezde çerçeve terimi küçük kalır."""
        report = reconstruct(Section.constant(1.0), half_disk, (0.0, 0.0), epsilon_structure)
        assert report.residual <= 1e-3
        assert report.transport is Transport.COEFFICIENTWISE
        assert report.frame is None

    def test_coefficientwise_gap_is_frame_term(self, epsilon_structure, half_disk):
        """Coefficientwise artığı tam olarak eksik çerçeve terimidir."""
        plain = reconstruct(Section.constant(1.0), half_disk, ZETA, epsilon_structure)
        corrected = reconstruct(Section.constant(1.0), half_disk, ZETA, epsilon_structure, frame_correction=True)
        j = j_element(epsilon_structure.require_elliptic(ZETA))
        gap = (-1.0 / (2.0 * math.pi)) * (j * corrected.frame)
        assert corrected.residual <= 1e-8
        assert plain.residual == pytest.approx(math.sqrt(abs(norm(gap))), abs=1e-7)

    def test_epsilon_frame_correction(self, epsilon_structure, half_disk):
        report = reconstruct(Section.constant(1.0), half_disk, ZETA, epsilon_structure, frame_correction=True)
        assert report.residual <= 1e-8
        assert report.frame is not None

    @pytest.mark.parametrize("section", [Section.constant(1.0), Section.from_expressions("x", "y")])
    def test_epsilon_embedded(self, epsilon_structure, half_disk, section):
        report = reconstruct(section, half_disk, ZETA, epsilon_structure, transport="embedded")
        assert report.residual <= 1e-8

    def test_rectangle_region(self, epsilon_structure):
        rect = Rectangle(-0.4, -0.3, 0.4, 0.3)
        report = reconstruct(Section.from_expressions("x", "y"), rect, ZETA, epsilon_structure, transport="embedded")
        assert report.residual <= 1e-6

    def test_error_estimate(self, epsilon_structure, half_disk):
        report = reconstruct(Section.constant(1.0), half_disk, ZETA, epsilon_structure, estimate_error=True)
        assert not math.isnan(report.boundary.error_estimate)
        assert report.area.samples == area_nodes(half_disk, ZETA, report.mesh).count
        assert set(report.to_dict()) >= {"boundary", "area", "value", "truth", "residual", "transport", "mesh"}

    def test_mesh_refinement(self, epsilon_structure, half_disk):
        rows = mesh_refinement_study(Section.from_expressions("x", "y"), half_disk, ZETA, epsilon_structure,
                                     mesh=COARSE, levels=2, transport="embedded")
        coarse, refined = rows[0].residual, rows[1].residual
        assert refined <= coarse / 4.0 or refined < 1e-10
        assert rows[1].mesh.radial_panels == 2

    def test_nonrigid_refused(self, nonrigid_structure, half_disk):
        with pytest.raises(RigidityGateError):
            reconstruct(Section.constant(1.0), half_disk, ZETA, nonrigid_structure)

    def test_frame_correction_needs_coefficientwise(self, epsilon_structure, half_disk):
        with pytest.raises(ConfigError):
            reconstruct(Section.constant(1.0), half_disk, ZETA, epsilon_structure,
                        transport="embedded", frame_correction=True)

    def test_unknown_transport(self, epsilon_structure, half_disk):
        with pytest.raises(ConfigError):
            reconstruct(Section.constant(1.0), half_disk, ZETA, epsilon_structure, transport="parallel")

    def test_zeta_outside(self, epsilon_structure, half_disk):
        with pytest.raises(DomainError):
            reconstruct(Section.constant(1.0), half_disk, (0.6, 0.0), epsilon_structure)


class TestKernelSectionReconstruct:
    """f = Z(·, ζ₀), ζ₀ bölge dışında: gösterim her taşımada f(ζ)'yı verir."""

    SMALL_DISK = Disk((0.0, 0.0), 0.1)
    SMALL_RECT = Rectangle(-0.1, -0.08, 0.1, 0.08)

    @pytest.mark.parametrize("region, tol", [
        (Disk((0.0, 0.0), 0.5), 1e-8),
        (Rectangle(-0.4, -0.3, 0.4, 0.3), 1e-6),
    ])
    def test_exact_variants(self, epsilon_structure, region, tol):
        f = kernel_section(OUTSIDE)
        embedded = reconstruct(f, region, ZETA, epsilon_structure, transport="embedded")
        corrected = reconstruct(f, region, ZETA, epsilon_structure, frame_correction=True)
        assert embedded.residual <= tol
        assert corrected.residual <= tol

    @pytest.mark.parametrize("region", [Disk((0.0, 0.0), 0.5), Rectangle(-0.4, -0.3, 0.4, 0.3)])
    def test_coefficientwise_matches_frame_term(self, epsilon_structure, region):
        f = kernel_section(OUTSIDE)
        plain = reconstruct(f, region, ZETA, epsilon_structure)
        corrected = reconstruct(f, region, ZETA, epsilon_structure, frame_correction=True)
        j = j_element(epsilon_structure.require_elliptic(ZETA))
        gap = (-1.0 / (2.0 * math.pi)) * (j * corrected.frame)
        assert plain.residual == pytest.approx(math.sqrt(abs(norm(gap))), abs=1e-5)

    @pytest.mark.parametrize("region", [SMALL_DISK, SMALL_RECT])
    def test_coefficientwise_small_region(self, epsilon_structure, region):
        report = reconstruct(kernel_section(OUTSIDE), region, (0.0, 0.0), epsilon_structure)
        assert report.residual <= 1e-3

    def test_truth_is_kernel_value(self, epsilon_structure, half_disk):
        report = reconstruct(kernel_section(OUTSIDE), half_disk, ZETA, epsilon_structure, transport="embedded")
        expected = (ZETA[1] - OUTSIDE[1], -(ZETA[0] - OUTSIDE[0]))
        assert _pair(report.truth) == pytest.approx(expected)


# =============================================================================
# GENEL EĞRİ BÖLGELERİ
# =============================================================================

class TestCurveRegion:
    """Dolanım sayısıyla iç nokta testi ve sınır doğrulaması"""

    @pytest.fixture
    def u_shape(self):
        return CurveRegion.polygon(U_VERTICES, name="u")

    def test_u_shape_contains(self, u_shape):
        assert u_shape.contains(U_ZETA)
        assert u_shape.contains((0.0, -0.3))
        assert not u_shape.contains((0.0, 0.2))
        assert not u_shape.contains((0.7, 0.0))
        assert u_shape.winding_number(U_ZETA) == 1

    def test_u_shape_distance(self, u_shape):
        assert u_shape.distance_to_boundary(U_ZETA) == pytest.approx(0.15)
        assert u_shape.distance_to_boundary((0.0, 0.2)) < 0.0

    def test_geometry(self, u_shape):
        assert signed_area(u_shape) == pytest.approx(0.6)
        assert closure_gap(u_shape) <= 1e-12
        assert u_shape.bounding_box() == pytest.approx((-0.5, -0.4, 0.5, 0.4))

    def test_ellipse(self):
        ellipse = CurveRegion.ellipse((0.1, 0.0), (0.5, 0.3))
        assert signed_area(ellipse) == pytest.approx(math.pi * 0.15)
        assert ellipse.contains((0.5, 0.0))
        assert not ellipse.contains((0.1, 0.35))

    def test_clockwise_rejected(self):
        with pytest.raises(ConfigError):
            CurveRegion.polygon(list(reversed(U_VERTICES)))

    def test_invalid_shapes(self):
        with pytest.raises(ConfigError):
            CurveRegion.polygon([(0.0, 0.0), (1.0, 0.0)])
        with pytest.raises(ConfigError):
            CurveRegion.ellipse((0.0, 0.0), (0.5, 0.0))
        with pytest.raises(ConfigError):
            CurveRegion(boundary=())

    def test_make_region_kinds(self):
        polygon = make_region({"kind": "polygon", "vertices": [[0, 0], [1, 0], [0, 1]]})
        ellipse = make_region({"kind": "ellipse", "center": [0, 0], "semi_axes": [0.4, 0.2]})
        assert polygon.kind == "curve"
        assert signed_area(polygon) == pytest.approx(0.5)
        assert signed_area(ellipse) == pytest.approx(math.pi * 0.08)


class TestAreaRules:
    """Polar ve yama + hücre kuralları"""

    def test_auto_resolution(self):
        assert resolve_area_rule(UNIT_DISK, AreaRule.AUTO) is AreaRule.POLAR
        assert resolve_area_rule(CurveRegion.polygon(U_VERTICES), AreaRule.AUTO) is AreaRule.CELLS
        assert resolve_area_rule(UNIT_DISK, AreaRule.CELLS) is AreaRule.CELLS

    def test_polar_needs_ray_extents(self):
        with pytest.raises(QuadratureError):
            resolve_area_rule(CurveRegion.polygon(U_VERTICES), AreaRule.POLAR)

    def test_parse(self):
        assert parse_area_rule("cells") is AreaRule.CELLS
        assert parse_area_rule(None) is AreaRule.AUTO
        with pytest.raises(ConfigError):
            parse_area_rule("voronoi")

    def test_mesh_from_settings(self):
        mesh = QuadratureMesh.from_settings(Settings(CP_AREA_RULE="cells"))
        assert mesh.area_rule is AreaRule.CELLS
        assert mesh.to_dict()["area_rule"] == "cells"

    def test_cells_classical_oracle(self, constant_structure):
        """∬ dA / Z = −iπ·conj(ζ) birim diskte"""
        value = area_integral(lambda p: Section.constant(1.0).at(constant_structure, p),
                              UNIT_DISK, (0.2, 0.1), constant_structure, mesh=CELLS)
        assert _pair(value) == pytest.approx((-0.1 * math.pi, -0.2 * math.pi), abs=1e-7)

    @pytest.mark.parametrize("region", [Disk((0.0, 0.0), 0.5), Rectangle(-0.4, -0.3, 0.4, 0.3)])
    def test_cells_agree_with_polar(self, epsilon_structure, region):
        def g(p):
            return Section.from_expressions("x*y", "1 + x").at(epsilon_structure, p)

        polar = area_integral(g, region, ZETA, epsilon_structure, mesh=POLAR)
        cells = area_integral(g, region, ZETA, epsilon_structure, mesh=CELLS)
        assert (polar - cells).magnitude() <= 1e-6

    @pytest.mark.parametrize("region, area", [
        (CurveRegion.polygon(U_VERTICES), 0.6),
        (CurveRegion.ellipse((0.0, 0.0), (0.5, 0.3)), math.pi * 0.15),
    ])
    def test_cells_measure_area(self, constant_structure, region, area):
        """g = Z için ∬ g Z⁻¹ dA bölge alanıdır."""
        zeta = U_ZETA if region.name == "polygon" else (0.1, 0.05)
        value = area_integral(lambda p: kernel(constant_structure, p, zeta), region, zeta, constant_structure)
        assert _pair(value) == pytest.approx((area, 0.0), abs=1e-8)

    def test_patch_radius_inside(self):
        region = CurveRegion.polygon(U_VERTICES)
        nodes = area_nodes(region, U_ZETA, QuadratureMesh())
        assert nodes.rule is AreaRule.CELLS
        assert 0.0 < nodes.patch_radius <= 0.5 * region.distance_to_boundary(U_ZETA)
        assert all(region.distance_to_boundary((x, y)) >= -1e-12 for x, y in zip(nodes.xs, nodes.ys))


class TestCurveRegionReconstruct:
    """Yıldız biçimli olmayan bölgede yeniden yapılandırma"""

    @pytest.mark.parametrize("section", [Section.from_expressions("x", "y"), kernel_section(OUTSIDE)])
    def test_u_shape_embedded(self, epsilon_structure, section):
        region = CurveRegion.polygon(U_VERTICES)
        report = reconstruct(section, region, U_ZETA, epsilon_structure, transport="embedded")
        assert report.residual <= 1e-6

    def test_u_shape_frame_correction(self, epsilon_structure):
        region = CurveRegion.polygon(U_VERTICES)
        report = reconstruct(Section.constant(1.0), region, U_ZETA, epsilon_structure, frame_correction=True)
        assert report.residual <= 1e-6
        assert report.area.samples == area_nodes(region, U_ZETA, report.mesh).count

    def test_ellipse_classical(self, constant_structure):
        region = CurveRegion.ellipse((0.0, 0.0), (0.5, 0.3))
        report = reconstruct(Section.from_expressions("x^2", "x*y"), region, (0.1, 0.05), constant_structure)
        assert report.residual <= 1e-6

    def test_zeta_in_notch(self, epsilon_structure):
        with pytest.raises(DomainError):
            reconstruct(Section.constant(1.0), CurveRegion.polygon(U_VERTICES), (0.0, 0.2), epsilon_structure)


class TestOneFormIdentities:
    """Küçük kare dolaşımları: d dz̃ = i_y dA"""

    def test_dtheta(self, epsilon_structure):
        report = dtheta_circulation(epsilon_structure, (0.2, 0.1), 0.01)
        assert report.gap <= 1e-9

    def test_wedge(self, epsilon_structure):
        report = wedge_circulation(Section.from_expressions("x*y", "1+x"), epsilon_structure, (0.2, 0.1), 0.01)
        assert report.gap <= 1e-9
