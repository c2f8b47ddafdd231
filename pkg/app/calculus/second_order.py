"""
Varel - İkinci Mertebe Açılım
=============================

Rijit yapılarda

    4 ∂_z ∂_z̄ (u + v i) = (L u + R0) + (L v + R1) i
    L  = ∂_x² − β ∂_xy + α ∂_y²
    R0 = α_y u_y + α_y v_x − 2α β_y v_y
    R1 = β_y u_y + β_y v_x + (2α_y − 2β β_y) v_y

özdeşliğinin sonlu farkla doğrulanması. İç ∂_z̄ analitik, dış ∂_z
merkezi farkla alınır (tek kontrollü hata kaynağı O(h²)).

Kullanım:
    from app.calculus.second_order import verify_expansion

    report = verify_expansion(f, (0.1, 0.2), structure)
    print(report.order)   # ~2
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from app.algebra.fiber import AlgebraElement, conj, generator
from app.calculus.cr import dbar
from app.calculus.sections import Section
from app.core.exceptions import DomainError, EllipticityError, RigidityGateError, StencilError
from app.core.types import Point, RealLike
from app.structure.fields import ScalarField
from app.structure.structure_field import StructureField

logger = logging.getLogger(__name__)

DEFAULT_STEPS = (1e-2, 5e-3, 2.5e-3)


@dataclass(frozen=True)
class ConvergenceRow:
    h: float
    residual_scalar: float
    residual_i: float

    @property
    def residual(self) -> float:
        return float(np.hypot(self.residual_scalar, self.residual_i))


@dataclass(frozen=True)
class SecondOrderReport:
    """
    lhs = 4∂_z∂_z̄ f (en küçük h ile), rhs analitik, adım tablosu ve
    Richardson mertebe tahmini.
    """
    lhs: AlgebraElement
    rhs: AlgebraElement
    rows: List[ConvergenceRow] = field(default_factory=list)
    order: float = float("nan")

    @property
    def residual(self) -> float:
        return self.rows[-1].residual if self.rows else float("nan")

    @property
    def step(self) -> float:
        return self.rows[-1].h if self.rows else float("nan")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lhs": [float(self.lhs.u), float(self.lhs.v)],
            "rhs": [float(self.rhs.u), float(self.rhs.v)],
            "residual": self.residual,
            "order": self.order,
            "table": [
                {"h": r.h, "residual_scalar": r.residual_scalar, "residual_i": r.residual_i}
                for r in self.rows
            ],
        }


# =============================================================================
# OPERATÖRLER
# =============================================================================

def L_op(w: ScalarField, point: Point, structure: StructureField) -> RealLike:
    """L w = w_xx − β w_xy + α w_yy."""
    x, y = point
    coeffs = structure.coefficients(point)
    return (
        w.derivative("xx", x, y)
        - coeffs.beta * w.derivative("xy", x, y)
        + coeffs.alpha * w.derivative("yy", x, y)
    )


def corrections(f: Section, point: Point, structure: StructureField) -> Tuple[RealLike, RealLike]:
    """Birinci mertebe düzeltmeler (R0, R1)."""
    coeffs = structure.require_elliptic(point)
    alpha, beta = coeffs.alpha, coeffs.beta
    a_y = structure.partial("alpha", "y", point)
    b_y = structure.partial("beta", "y", point)
    u_x, u_y, v_x, v_y = f.first_partials(point)
    r0 = a_y * u_y + a_y * v_x - 2.0 * alpha * b_y * v_y
    r1 = b_y * u_y + b_y * v_x + (2.0 * a_y - 2.0 * beta * b_y) * v_y
    return r0, r1


def expansion_rhs(f: Section, point: Point, structure: StructureField) -> AlgebraElement:
    """(L u + R0) + (L v + R1) i."""
    coeffs = structure.require_elliptic(point)
    r0, r1 = corrections(f, point, structure)
    return AlgebraElement(L_op(f.u, point, structure) + r0, L_op(f.v, point, structure) + r1, coeffs)


# =============================================================================
# DOĞRULAMA
# =============================================================================

def _gate(structure: StructureField, points: Sequence[Point]) -> None:
    xs = np.array([p[0] for p in points], dtype=float)
    ys = np.array([p[1] for p in points], dtype=float)
    worst = structure.max_rigidity_residual(xs, ys)
    tol = structure.settings.TOL_RIGID * structure.evaluator.scale
    if worst > tol:
        logger.warning(f"[SECOND_ORDER] rigidity gate refused {structure.name}: {worst:.3e}")
        raise RigidityGateError(residual=worst, tolerance=tol, where="second-order expansion")


def _lhs(f: Section, point: Point, structure: StructureField, h: float) -> AlgebraElement:
    """
    4∂_z W, W = ∂_z̄ f: dış türev W bileşenlerinin merkezi farkı +
    hareketli üreteç düzeltmesi W1·i_x, W1·i_y.
    """
    x, y = point

    def inner(px: float, py: float) -> AlgebraElement:
        return dbar(f, (px, py), structure)

    center = inner(x, y)
    east, west = inner(x + h, y), inner(x - h, y)
    north, south = inner(x, y + h), inner(x, y - h)
    d = structure.generator_derivatives(point)
    coeffs = d.ix.coeffs
    w_x = AlgebraElement((east.u - west.u) / (2.0 * h), (east.v - west.v) / (2.0 * h), coeffs) + center.v * d.ix
    w_y = AlgebraElement((north.u - south.u) / (2.0 * h), (north.v - south.v) / (2.0 * h), coeffs) + center.v * d.iy
    hat_i = conj(generator(coeffs))
    return 2.0 * (w_x + hat_i * w_y)


def verify_expansion(
    f: Section,
    point: Point,
    structure: StructureField,
    h_list: Iterable[float] = DEFAULT_STEPS,
) -> SecondOrderReport:
    """
    Sonlu fark doğrulaması; her h için artık ve ardışık adımlardan mertebe.

    Raises:
        RigidityGateError: yapı rijit değil
        StencilError: şablon tanım kümesinden taşıyor
    """
    steps = sorted((float(h) for h in h_list), reverse=True)
    x, y = point
    h_max = steps[0]
    stencil = [(x, y), (x + h_max, y), (x - h_max, y), (x, y + h_max), (x, y - h_max)]
    try:
        for p in stencil:
            structure.require_elliptic(p)
    except (DomainError, EllipticityError):
        raise StencilError(point=(float(x), float(y)), step=h_max)
    _gate(structure, stencil)

    rhs = expansion_rhs(f, point, structure)
    rows: List[ConvergenceRow] = []
    lhs = rhs
    for h in steps:
        lhs = _lhs(f, point, structure, h)
        diff = lhs - rhs
        rows.append(ConvergenceRow(h=h, residual_scalar=float(abs(diff.u)), residual_i=float(abs(diff.v))))

    order = estimate_order(rows)
    logger.info(f"[SECOND_ORDER] {f.name} at {point}: residual={rows[-1].residual:.3e} order={order:.2f}")
    return SecondOrderReport(lhs=lhs, rhs=rhs, rows=rows, order=order)


def estimate_order(rows: Sequence[ConvergenceRow], floor: float = 1e-13) -> float:
    """Son iki adımın artık oranından mertebe; artık yuvarlama tabanındaysa nan."""
    if len(rows) < 2:
        return float("nan")
    coarse, fine = rows[-2], rows[-1]
    if coarse.residual <= floor or fine.residual <= floor:
        return float("nan")
    return float(np.log(coarse.residual / fine.residual) / np.log(coarse.h / fine.h))


def principal_part_shift(
    f: Section,
    affine: Tuple[float, float, float, float, float, float],
    point: Point,
    structure: StructureField,
) -> Tuple[AlgebraElement, AlgebraElement]:
    """
    f'ye afin (c0 + c1 x + c2 y, d0 + d1 x + d2 y) eklendiğinde rhs farkı ve
    yalnızca R0/R1 birinci türev terimlerinden gelen öngörü.
    """
    c0, c1, c2, d0, d1, d2 = affine
    x_field, y_field = ScalarField.coordinate("x"), ScalarField.coordinate("y")
    shift = Section(u=c0 + c1 * x_field + c2 * y_field, v=d0 + d1 * x_field + d2 * y_field, name="affine")
    shifted = f + shift
    delta = expansion_rhs(shifted, point, structure) - expansion_rhs(f, point, structure)
    r0, r1 = corrections(shift, point, structure)
    predicted = AlgebraElement(r0, r1, delta.coeffs)
    return delta, predicted


def batch_verify(
    sections: Sequence[Section],
    points: Sequence[Point],
    structure: StructureField,
    h_list: Iterable[float] = DEFAULT_STEPS,
) -> List[SecondOrderReport]:
    """Birden çok kesit ve nokta için doğrulama (deterministik sıra)."""
    steps = tuple(h_list)
    return [verify_expansion(f, p, structure, steps) for f in sections for p in points]
