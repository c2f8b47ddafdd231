"""
Varel - Cauchy–Riemann Hesabı
=============================

Cebir değerli kesitler üzerinde birinci mertebe operatörler:

    ∂_x f = u_x + v_x i + v i_x
    ∂_z̄ f = ½(∂_x f + i ∂_y f),   ∂_z f = ½(∂_x f + î ∂_y f)
    D f   = ∂_z̄ f + ½ f i_y

CR sistem artığı, Leibniz kusuru, toplam kusur formu, ağırlıklı çarpım,
sarmalama (intertwining) artığı ve dört rijitlik göstergesi.

Kullanım:
    from app.calculus.cr import dbar, covariant_D

    w = dbar(f, (0.1, 0.2), structure)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from app.algebra.fiber import AlgebraElement, conj, generator
from app.calculus.sections import Section, Weight
from app.core.types import Point, RealLike
from app.structure.structure_field import GeneratorDerivatives, StructureField

logger = logging.getLogger(__name__)


# =============================================================================
# BİRİNCİ MERTEBE OPERATÖRLER
# =============================================================================

def _generator_derivatives(structure: StructureField, point: Point,
                           derivs: Optional[GeneratorDerivatives]) -> GeneratorDerivatives:
    return derivs if derivs is not None else structure.generator_derivatives(point)


def d_x(f: Section, point: Point, structure: StructureField,
        derivs: Optional[GeneratorDerivatives] = None) -> AlgebraElement:
    """∂_x f = (u_x, v_x) + v·i_x."""
    d = _generator_derivatives(structure, point, derivs)
    x, y = point
    coeffs = d.ix.coeffs
    return AlgebraElement(f.u.derivative("x", x, y), f.v.derivative("x", x, y), coeffs) + f.v(x, y) * d.ix


def d_y(f: Section, point: Point, structure: StructureField,
        derivs: Optional[GeneratorDerivatives] = None) -> AlgebraElement:
    """∂_y f = (u_y, v_y) + v·i_y."""
    d = _generator_derivatives(structure, point, derivs)
    x, y = point
    coeffs = d.iy.coeffs
    return AlgebraElement(f.u.derivative("y", x, y), f.v.derivative("y", x, y), coeffs) + f.v(x, y) * d.iy


def dbar(f: Section, point: Point, structure: StructureField,
         derivs: Optional[GeneratorDerivatives] = None) -> AlgebraElement:
    """∂_z̄ f = ½(∂_x f + i·∂_y f)."""
    d = _generator_derivatives(structure, point, derivs)
    fx = d_x(f, point, structure, d)
    fy = d_y(f, point, structure, d)
    return 0.5 * (fx + generator(fx.coeffs) * fy)


def dz(f: Section, point: Point, structure: StructureField,
       derivs: Optional[GeneratorDerivatives] = None) -> AlgebraElement:
    """∂_z f = ½(∂_x f + î·∂_y f), î = −β − i."""
    d = _generator_derivatives(structure, point, derivs)
    fx = d_x(f, point, structure, d)
    fy = d_y(f, point, structure, d)
    return 0.5 * (fx + conj(generator(fx.coeffs)) * fy)


def cr_system_residual(f: Section, point: Point, structure: StructureField) -> Tuple[RealLike, RealLike]:
    """
    (u_x − α v_y + A v, v_x + u_y − β v_y + B v); 2·∂_z̄ f ile bileşen bazında eşit.
    """
    x, y = point
    coeffs = structure.require_elliptic(point)
    A, B = structure.closed_form_AB(point)
    u_x, u_y, v_x, v_y = f.first_partials(point)
    v = f.v(x, y)
    return (
        u_x - coeffs.alpha * v_y + A * v,
        v_x + u_y - coeffs.beta * v_y + B * v,
    )


def covariant_D(f: Section, point: Point, structure: StructureField,
                derivs: Optional[GeneratorDerivatives] = None) -> AlgebraElement:
    """D f = ∂_z̄ f + ½·f·i_y."""
    d = _generator_derivatives(structure, point, derivs)
    return dbar(f, point, structure, d) + 0.5 * (f.at(structure, point) * d.iy)


# =============================================================================
# LEIBNIZ KUSURU
# =============================================================================

@dataclass(frozen=True)
class LeibnizReport:
    """
    Leibniz kusuru: doğrudan hesap, ½·v·q·𝒢 öngörüsü ve toplam kusur formu.

    direct ve total_defect_form her C¹ yapıda çakışır; öngörü yalnızca
    𝒢 = 0 iken doğrudan değere eşittir.
    """
    direct: AlgebraElement
    predicted: AlgebraElement
    total_defect_form: AlgebraElement

    def prediction_gap(self) -> float:
        return (self.direct - self.predicted).magnitude()

    def form_gap(self) -> float:
        return (self.direct - self.total_defect_form).magnitude()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "direct": [float(np.max(self.direct.u)), float(np.max(self.direct.v))],
            "predicted": [float(np.max(self.predicted.u)), float(np.max(self.predicted.v))],
            "total_defect_form": [float(np.max(self.total_defect_form.u)), float(np.max(self.total_defect_form.v))],
        }


def _apply(operator: str, f: Section, point: Point, structure: StructureField,
           d: GeneratorDerivatives) -> AlgebraElement:
    if operator == "x":
        return d_x(f, point, structure, d)
    if operator == "y":
        return d_y(f, point, structure, d)
    return dbar(f, point, structure, d)


def total_defect(f: Section, g: Section, point: Point, structure: StructureField,
                 operator: str = "dbar") -> Tuple[AlgebraElement, AlgebraElement]:
    """
    δ(fg) − δ(f)g − fδ(g) ve −v·q·[δα + δβ·i + (2i+β)δ(i)].

    operator ∈ {"x", "y", "dbar"}. İkinci ifade i² = −βi − α
    indirgemesinden gelen yapısal + geometrik taşınım terimidir.
    """
    x, y = point
    d = structure.generator_derivatives(point)
    coeffs = d.ix.coeffs
    fg = f.product(g, structure)
    direct = (
        _apply(operator, fg, point, structure, d)
        - _apply(operator, f, point, structure, d) * g.at(structure, point)
        - f.at(structure, point) * _apply(operator, g, point, structure, d)
    )

    i_elem = generator(coeffs)
    if operator == "dbar":
        d_alpha = AlgebraElement(0.5 * structure.partial("alpha", "x", point),
                                 0.5 * structure.partial("alpha", "y", point), coeffs)
        d_beta = AlgebraElement(0.5 * structure.partial("beta", "x", point),
                                0.5 * structure.partial("beta", "y", point), coeffs)
    else:
        zero = 0.0 * coeffs.alpha
        d_alpha = AlgebraElement(structure.partial("alpha", operator, point), zero, coeffs)
        d_beta = AlgebraElement(structure.partial("beta", operator, point), zero, coeffs)
    d_i = _apply(operator, Section.generator(), point, structure, d)
    two_i_beta = AlgebraElement(coeffs.beta, 2.0 + 0.0 * coeffs.beta, coeffs)
    bracket = d_alpha + d_beta * i_elem + two_i_beta * d_i
    form = -(f.v(x, y) * g.v(x, y)) * bracket
    return direct, form


def leibniz_defect(f: Section, g: Section, point: Point, structure: StructureField) -> LeibnizReport:
    """
    ∂_z̄(fg) − ∂_z̄(f)g − f∂_z̄(g), ½·v·q·𝒢 öngörüsüyle birlikte.
    """
    x, y = point
    direct, form = total_defect(f, g, point, structure, operator="dbar")
    obs = structure.obstruction(point)
    predicted = (0.5 * f.v(x, y) * g.v(x, y)) * obs.G
    return LeibnizReport(direct=direct, predicted=predicted, total_defect_form=form)


# =============================================================================
# AĞIRLIKLI YAPILAR
# =============================================================================

def weighted_product(f: Section, g: Section, psi: Weight, structure: StructureField) -> Section:
    """f ◇ g = f·g·ψ."""
    return f.product(g, structure).scaled(psi.field)


def intertwining_residual(f: Section, psi: Weight, point: Point, structure: StructureField) -> AlgebraElement:
    """∂_z̄(ψf) − ψ·D f; ψ ağırlık denklemini sağlıyorsa sıfır."""
    x, y = point
    d = structure.generator_derivatives(point)
    left = dbar(f.scaled(psi.field), point, structure, d)
    right = psi(x, y) * covariant_D(f, point, structure, d)
    return left - right


# =============================================================================
# RİJİTLİK GÖSTERGELERİ
# =============================================================================

@dataclass(frozen=True)
class RigidityIndicators:
    """
    Bir noktadaki dört rijitlik göstergesi.

    Attributes:
        obstruction: |𝒢|
        burgers: |λ_x + λλ_y|
        leibniz: örnek kesit çiftlerinde en büyük |Leibniz kusuru|
        inhomogeneity: |(A, B)|
    """
    obstruction: float
    burgers: float
    leibniz: float
    inhomogeneity: float

    def to_dict(self) -> Dict[str, float]:
        return {
            "obstruction": self.obstruction,
            "burgers": self.burgers,
            "leibniz": self.leibniz,
            "inhomogeneity": self.inhomogeneity,
        }


def default_section_pairs() -> Sequence[Tuple[Section, Section]]:
    return (
        (Section.generator(), Section.generator()),
        (Section.from_expressions("x*y", "1+x"), Section.from_expressions("y", "cos(x)")),
    )


def rigidity_indicators(point: Point, structure: StructureField,
                        pairs: Optional[Iterable[Tuple[Section, Section]]] = None) -> RigidityIndicators:
    obs = structure.obstruction(point)
    leibniz = 0.0
    for f, g in pairs or default_section_pairs():
        leibniz = max(leibniz, leibniz_defect(f, g, point, structure).direct.magnitude())
    return RigidityIndicators(
        obstruction=float(np.max(np.hypot(obs.G0, obs.G1))),
        burgers=float(np.max(np.abs(structure.conservative_residual(point)))),
        leibniz=leibniz,
        inhomogeneity=float(np.max(np.hypot(obs.A, obs.B))),
    )
