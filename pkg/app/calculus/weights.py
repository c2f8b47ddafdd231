"""
Varel - Ağırlık Denklemi
========================

∂_z̄ψ = ½ i_y ψ denkleminin artığı ve logaritmik potansiyel üzerinden
çözümü:

    φ_x = A_y,  φ_y = B_y,  ψ = exp(φ)

Çözüm, eksenlere paralel bir dikdörtgende (A_y)_y = (B_y)_x uyum
koşulu sağlanıyorsa L-yolu boyunca bileşik Gauss–Legendre ile hesaplanır.

Kullanım:
    from app.calculus.weights import solve_weight, weight_residual

    psi = solve_weight(structure, basepoint=(0.0, 0.0), point=(0.3, 0.2))
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from app.algebra.fiber import AlgebraElement
from app.calculus.cr import dbar
from app.calculus.sections import Weight
from app.config import Settings
from app.core.exceptions import NotIntegrableError
from app.core.types import Point, RealLike
from app.integral.quadrature import composite_gauss
from app.structure.fields import ScalarField
from app.structure.structure_field import StructureField

logger = logging.getLogger(__name__)

Rectangle = Tuple[float, float, float, float]  # x0, y0, x1, y1


@dataclass(frozen=True)
class WeightResidual:
    """∂_z̄ψ − ½ i_y ψ ve reel çift (ψ_x − A_y ψ, ψ_y − B_y ψ)."""
    element: AlgebraElement
    real_pair: Tuple[RealLike, RealLike]

    def magnitude(self) -> float:
        return float(max(np.max(np.abs(self.real_pair[0])), np.max(np.abs(self.real_pair[1]))))


@dataclass(frozen=True)
class CompatibilityReport:
    """(A_y)_y − (B_y)_x örneklemesi."""
    max_residual: float
    tolerance: float
    samples: int

    @property
    def integrable(self) -> bool:
        return self.max_residual <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "samples": self.samples,
            "integrable": self.integrable,
        }


# =============================================================================
# ARTIK
# =============================================================================

def weight_residual(psi: Weight, point: Point, structure: StructureField) -> WeightResidual:
    x, y = point
    d = structure.generator_derivatives(point)
    value = psi(x, y)
    element = dbar(psi.as_section(), point, structure, d) - 0.5 * (value * d.iy)
    real_pair = (
        psi.field.derivative("x", x, y) - d.iy.u * value,
        psi.field.derivative("y", x, y) - d.iy.v * value,
    )
    return WeightResidual(element=element, real_pair=real_pair)


# =============================================================================
# UYUM KOŞULU
# =============================================================================

def check_weight_compatibility(
    structure: StructureField,
    rectangle: Rectangle,
    samples: int = 9,
    step: Optional[float] = None,
    tolerance: Optional[float] = None,
) -> CompatibilityReport:
    """
    Dikdörtgen üzerinde (A_y)_y − (B_y)_x; merkezi farkla örneklenir.
    Tolerans τ_compat · ölçek.
    """
    settings: Settings = structure.settings
    h = step if step is not None else settings.second_step()
    tol = tolerance if tolerance is not None else settings.TOL_COMPAT * structure.evaluator.scale
    x0, y0, x1, y1 = rectangle
    xs, ys = np.meshgrid(np.linspace(x0, x1, samples), np.linspace(y0, y1, samples))
    xs, ys = xs.ravel(), ys.ravel()

    def iy(px: np.ndarray, py: np.ndarray) -> AlgebraElement:
        return structure.generator_derivatives((px, py)).iy

    ay_y = (iy(xs, ys + h).u - iy(xs, ys - h).u) / (2.0 * h)
    by_x = (iy(xs + h, ys).v - iy(xs - h, ys).v) / (2.0 * h)
    worst = float(np.max(np.abs(ay_y - by_x)))
    logger.debug(f"[WEIGHT] compatibility max={worst:.3e} tol={tol:.1e}")
    return CompatibilityReport(max_residual=worst, tolerance=tol, samples=xs.size)


# =============================================================================
# ÇÖZÜM
# =============================================================================

def _segment_integral(structure: StructureField, start: Point, end: Point, panels: int, order: int) -> float:
    """∫ A_y dx + B_y dy, eksene paralel doğru parçası boyunca."""
    (xa, ya), (xb, yb) = start, end
    if xa != xb:
        nodes, weights = composite_gauss(xa, xb, panels, order)
        iy = structure.generator_derivatives((nodes, np.full_like(nodes, ya))).iy
        return float(weights @ iy.u)
    if ya != yb:
        nodes, weights = composite_gauss(ya, yb, panels, order)
        iy = structure.generator_derivatives((np.full_like(nodes, xa), nodes)).iy
        return float(weights @ iy.v)
    return 0.0


def log_potential(
    structure: StructureField,
    basepoint: Point,
    point: Point,
    reverse: bool = False,
    panels: Optional[int] = None,
    order: Optional[int] = None,
) -> float:
    """
    φ(point) − φ(basepoint). Varsayılan L-yolu: önce x, sonra y;
    reverse=True: önce y, sonra x.
    """
    settings = structure.settings
    n_panels = panels or settings.WEIGHT_PANELS
    n_order = order or settings.GAUSS_ORDER
    (xb, yb), (x, y) = basepoint, point
    corner = (xb, y) if reverse else (x, yb)
    return _segment_integral(structure, basepoint, corner, n_panels, n_order) + _segment_integral(
        structure, corner, point, n_panels, n_order
    )


def solve_weight(
    structure: StructureField,
    basepoint: Point,
    point: Point,
    rectangle: Optional[Rectangle] = None,
    reverse: bool = False,
    check: bool = True,
) -> float:
    """
    ψ(point), ψ(basepoint) = 1 normalizasyonuyla.

    Raises:
        NotIntegrableError: uyum artığı τ_compat'ı aşıyor
        EllipticityError: yol eliptik olmayan noktadan geçiyor
    """
    (xb, yb), (x, y) = basepoint, point
    rect = rectangle or (min(xb, x), min(yb, y), max(xb, x), max(yb, y))
    if check:
        report = check_weight_compatibility(structure, rect)
        if not report.integrable:
            logger.warning(f"[WEIGHT] not integrable on {rect}: {report.max_residual:.3e}")
            raise NotIntegrableError(max_residual=report.max_residual, tolerance=report.tolerance)
    phi = log_potential(structure, basepoint, point, reverse=reverse)
    return float(np.exp(phi))


def solved_weight(structure: StructureField, basepoint: Point, rectangle: Rectangle) -> Weight:
    """solve_weight'i Weight olarak sarar (türevler FD yedeğiyle)."""
    report = check_weight_compatibility(structure, rectangle)
    if not report.integrable:
        raise NotIntegrableError(max_residual=report.max_residual, tolerance=report.tolerance)

    def value(x: RealLike, y: RealLike) -> RealLike:
        if np.ndim(x) or np.ndim(y):
            xs, ys = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
            out = np.array([solve_weight(structure, basepoint, (px, py), check=False)
                            for px, py in zip(xs.ravel(), ys.ravel())])
            return out.reshape(xs.shape)
        return solve_weight(structure, basepoint, (float(x), float(y)), check=False)

    return Weight(ScalarField(value=value, name="psi_solved", settings=structure.settings), name="psi_solved")
