"""
Varel - Rijit ε-Ailesi
======================

Açık rijit yapı ailesi:

    α(x, y) = 1/(1 − εx),   β(x, y) = εy/(1 − εx)

Eliptik bölge S(x, y) = 4(1 − εx) − ε²y² > 0, ağırlık ψ = C·√S.
Tüm kısmi türevler analitiktir; aile tüm testlerin referans yapısıdır.

Kullanım:
    from app.structure.epsilon import EpsilonStructure

    family = EpsilonStructure.make(0.1)
    family.elliptic_domain_contains((0.0, 0.0)).s_value   # 4.0
    family.structure().rigidity_residual((0.2, 0.1))       # ~0
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from app.algebra.fiber import AlgebraElement
from app.config import Settings
from app.core.exceptions import DomainError
from app.core.types import Point, RealLike
from app.structure.expressions import parse_expression
from app.structure.fields import ScalarField
from app.structure.structure_field import CoefficientEvaluator, SpectralState, StructureField

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EllipticDomainReport:
    """
    ε-ailesi tanım kümesi raporu.

    Attributes:
        inside: S > 0 ve 1 − εx ≠ 0
        s_value: S(x, y) (parabol S = 0'a uzaklık göstergesi)
        pole_factor: 1 − εx (kutup doğrusu 1 − εx = 0)
    """
    inside: bool
    s_value: float
    pole_factor: float

    def to_dict(self) -> Dict[str, Any]:
        return {"inside": self.inside, "s_value": self.s_value, "pole_factor": self.pole_factor}


@dataclass(frozen=True)
class EpsilonStructure:
    """
    ε parametreli rijit aile.

    Attributes:
        epsilon: aile parametresi
        normalization: ağırlık sabiti C (varsayılan 1)
    """

    epsilon: float
    normalization: float = 1.0
    settings: Optional[Settings] = None

    @classmethod
    def make(cls, epsilon: float, normalization: float = 1.0, settings: Optional[Settings] = None) -> "EpsilonStructure":
        return cls(epsilon=float(epsilon), normalization=float(normalization), settings=settings)

    # ---- yardımcı büyüklükler ------------------------------------------

    def pole_factor(self, x: RealLike) -> RealLike:
        """1 − εx."""
        return 1.0 - self.epsilon * x

    def s_value(self, x: RealLike, y: RealLike) -> RealLike:
        """S = 4(1 − εx) − ε²y²."""
        return 4.0 * (1.0 - self.epsilon * x) - self.epsilon ** 2 * y ** 2

    def ode_rate(self, x: RealLike) -> RealLike:
        """K(x) = ε/(1 − εx)."""
        return self.epsilon / (1.0 - self.epsilon * x)

    # ---- değerlendirici -------------------------------------------------

    @cached_property
    def evaluator(self) -> CoefficientEvaluator:
        """Analitik kısmi türevli değerlendirici; tanım kümesi 1 − εx ≠ 0."""
        e = self.epsilon

        def k(x: RealLike) -> RealLike:
            return 1.0 - e * x

        alpha = ScalarField(
            value=lambda x, y: 1.0 / k(x),
            partials={
                "x": lambda x, y: e / k(x) ** 2,
                "y": lambda x, y: 0.0,
                "xx": lambda x, y: 2.0 * e ** 2 / k(x) ** 3,
                "xy": lambda x, y: 0.0,
                "yy": lambda x, y: 0.0,
            },
            name=f"alpha_eps({e})",
            settings=self.settings,
        )
        beta = ScalarField(
            value=lambda x, y: e * y / k(x),
            partials={
                "x": lambda x, y: e ** 2 * y / k(x) ** 2,
                "y": lambda x, y: e / k(x),
                "xx": lambda x, y: 2.0 * e ** 3 * y / k(x) ** 3,
                "xy": lambda x, y: e ** 2 / k(x) ** 2,
                "yy": lambda x, y: 0.0,
            },
            name=f"beta_eps({e})",
            settings=self.settings,
        )
        return CoefficientEvaluator(
            alpha=alpha,
            beta=beta,
            domain=lambda x, y: k(x) != 0.0,
            name=f"epsilon({e})",
        )

    def structure(self) -> StructureField:
        return StructureField(self.evaluator, settings=self.settings)

    # ---- PUBLIC API -----------------------------------------------------

    def elliptic_domain_contains(self, point: Point) -> EllipticDomainReport:
        x, y = point
        s = float(self.s_value(x, y))
        k = float(self.pole_factor(x))
        return EllipticDomainReport(inside=bool(s > 0.0 and k != 0.0), s_value=s, pole_factor=k)

    def _require_inside(self, point: Point) -> None:
        x, y = point
        s = self.s_value(x, y)
        if np.any(s <= 0.0) or np.any(self.pole_factor(x) == 0.0):
            raise DomainError(
                (float(np.min(x)), float(np.min(y))),
                reason=f"outside elliptic strip of epsilon={self.epsilon} (S={float(np.min(s)):.3e})",
            )

    def weight(self, point: Point) -> RealLike:
        """ψ = C·√S."""
        self._require_inside(point)
        x, y = point
        return self.normalization * np.sqrt(self.s_value(x, y))

    def weight_field(self) -> ScalarField:
        """ψ = C√S ve analitik türevleri."""
        e, c = self.epsilon, self.normalization
        s = self.s_value

        return ScalarField(
            value=lambda x, y: c * np.sqrt(s(x, y)),
            partials={
                "x": lambda x, y: -2.0 * e * c / np.sqrt(s(x, y)),
                "y": lambda x, y: -(e ** 2) * y * c / np.sqrt(s(x, y)),
                "xx": lambda x, y: -4.0 * e ** 2 * c / s(x, y) ** 1.5,
                "xy": lambda x, y: -2.0 * e ** 3 * y * c / s(x, y) ** 1.5,
                "yy": lambda x, y: c * (-(e ** 2) / np.sqrt(s(x, y)) - e ** 4 * y ** 2 / s(x, y) ** 1.5),
            },
            name=f"psi_eps({e})",
            settings=self.settings,
        )

    def iy_closed_form(self, point: Point) -> AlgebraElement:
        """i_y = −ε(2 + εy·i)/S = (−2ε/S, −ε²y/S)."""
        self._require_inside(point)
        x, y = point
        s = self.s_value(x, y)
        coeffs = self.evaluator.coefficients(x, y)
        return AlgebraElement(-2.0 * self.epsilon / s, -(self.epsilon ** 2) * y / s, coeffs)

    def spectral_closed_form(self, point: Point) -> SpectralState:
        """λ = (−εy + i√S)/(2(1 − εx)) ve türevleri."""
        self._require_inside(point)
        x, y = point
        e = self.epsilon
        k = self.pole_factor(x)
        root = np.sqrt(self.s_value(x, y))
        numerator = -e * y + 1j * root
        lam = numerator / (2.0 * k)
        lam_x = (1j * (-4.0 * e) / (2.0 * root)) / (2.0 * k) + numerator * e / (2.0 * k ** 2)
        lam_y = (-e + 1j * (-2.0 * e ** 2 * y) / (2.0 * root)) / (2.0 * k)
        return SpectralState(lam=lam, lam_x=lam_x, lam_y=lam_y)

    def ode_residuals(self, x: RealLike) -> Tuple[RealLike, RealLike]:
        """
        α′ − αK ve K′ − K²; türevler ifade dilinin sembolik türeviyle alınır.
        """
        env = {"x": x, "y": 0.0, "eps": self.epsilon}
        alpha = parse_expression("1/(1-eps*x)")
        rate = parse_expression("eps/(1-eps*x)")
        a, a_x = alpha.evaluate(env), alpha.diff("x").evaluate(env)
        k, k_x = rate.evaluate(env), rate.diff("x").evaluate(env)
        return a_x - a * k, k_x - k * k

    def boundary_parabola(self, n: int = 16, y_max: Optional[float] = None) -> List[Point]:
        """
        ε²y² = 4(1 − εx) parabolü üzerinde örnek noktalar (ε ≠ 0).

        Tepe noktası kutup doğrusu üzerindedir; örnekler |y| ≥ y_max/4 ile sınırlı.
        """
        if self.epsilon == 0.0:
            return []
        e = self.epsilon
        limit = y_max if y_max is not None else 2.0 / abs(e)
        half = np.linspace(limit / 4.0, limit, max(1, n // 2))
        ys = np.concatenate([-half[::-1], half])
        return [(float((1.0 - e ** 2 * y ** 2 / 4.0) / e), float(y)) for y in ys]
