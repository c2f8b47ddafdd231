"""
Varel - Değişken Yapı Alanı
===========================

(α, β) katsayı alanını temsil eder; üretecin türevlerini, içsel engeli
𝒢 = i_x + i·i_y, spektral parametreyi λ ve Burgers / zorlanmış katsayı
artıklarını hesaplar.

Tüm sorgular skaler nokta veya numpy dizileri kabul eder (x, y aynı
şekilde yayınlanır). Tanım kümesi dışında değerlendirme DomainError verir;
sessiz ekstrapolasyon yapılmaz.

Kullanım:
    from app.structure.structure_field import CoefficientEvaluator, StructureField

    evaluator = CoefficientEvaluator.from_expressions("1", "y/2")
    structure = StructureField(evaluator)
    structure.obstruction((0.0, 0.3)).G
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Any, Callable, Dict, Iterable, Mapping, Optional, Tuple

import numpy as np

from app.algebra.fiber import (
    AlgebraElement,
    FiberCoefficients,
    generator,
    inv_two_i_plus_beta,
)
from app.config import Settings, get_settings
from app.core.exceptions import (
    DomainError,
    EllipticityError,
    MissingDerivativeError,
    NotParabolicError,
)
from app.core.types import Point, RealLike, Regime
from app.structure.fields import ScalarField

logger = logging.getLogger(__name__)

DomainPredicate = Callable[[RealLike, RealLike], Any]


# =============================================================================
# VERİ YAPILARI
# =============================================================================

@dataclass(frozen=True)
class Classification:
    """Bir noktadaki rejim ve Δ değeri."""
    regime: Regime
    delta: float

    def to_dict(self) -> Dict[str, Any]:
        return {"regime": self.regime.value, "delta": self.delta}


@dataclass(frozen=True)
class GeneratorDerivatives:
    """
    Üretecin kısmi türevleri: i_x = A_x + B_x i, i_y = A_y + B_y i
    ve istenirse ikinci mertebe i_xx, i_xy, i_yy.
    """
    ix: AlgebraElement
    iy: AlgebraElement
    ixx: Optional[AlgebraElement] = None
    ixy: Optional[AlgebraElement] = None
    iyy: Optional[AlgebraElement] = None


@dataclass(frozen=True)
class Obstruction:
    """
    İçsel engel 𝒢 = i_x + i·i_y = G0 + G1·i ve kapalı form (A, B).
    """
    G: AlgebraElement
    G0: RealLike
    G1: RealLike
    A: RealLike
    B: RealLike

    def agreement(self) -> float:
        """Fiber hesabı ile kapalı formun en büyük farkı."""
        return float(np.max(np.abs(self.G0 - self.A)) + np.max(np.abs(self.G1 - self.B)))


@dataclass(frozen=True)
class SpectralState:
    """λ = a + i b (b > 0) ve kısmi türevleri."""
    lam: complex | np.ndarray
    lam_x: Optional[complex | np.ndarray] = None
    lam_y: Optional[complex | np.ndarray] = None

    @property
    def a(self) -> RealLike:
        return np.real(self.lam)

    @property
    def b(self) -> RealLike:
        return np.imag(self.lam)


@dataclass(frozen=True)
class ConsistencyReport:
    """Analitik kısmi türevlerin merkezi farklarla uyumu."""
    max_deviation: float
    worst_partial: str
    step: float
    samples: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "max_deviation": self.max_deviation,
            "worst_partial": self.worst_partial,
            "step": self.step,
            "samples": self.samples,
        }


# =============================================================================
# KATSAYI DEĞERLENDİRİCİ
# =============================================================================

@dataclass(frozen=True)
class CoefficientEvaluator:
    """
    (α, β) değerlendiricisi, türev sağlayıcısı ve tanım kümesi yüklemi.

    Attributes:
        alpha: α alanı (analitik türevli veya FD yedekli)
        beta: β alanı
        domain: (x, y) -> bool; None ise tüm düzlem
        scale: tanım kümesi ölçeği (toleranslar ve FD adımları için)
        name: loglar için ad
    """

    alpha: ScalarField
    beta: ScalarField
    domain: Optional[DomainPredicate] = None
    scale: float = 1.0
    name: str = "structure"

    def __post_init__(self) -> None:
        # Alanlar kendi FD adımlarını ölçekle çarpar
        for which in ("alpha", "beta"):
            field = getattr(self, which)
            if field.scale != self.scale:
                object.__setattr__(self, which, replace(field, scale=self.scale))

    @classmethod
    def from_expressions(
        cls,
        alpha: str,
        beta: str,
        params: Optional[Mapping[str, float]] = None,
        partials: Optional[Mapping[str, str]] = None,
        settings: Optional[Settings] = None,
        name: str = "",
        scale: float = 1.0,
    ) -> "CoefficientEvaluator":
        """
        İfadelerden yapı. partials verilirse ("alpha_x": "...", "beta_yy": "...")
        sembolik türevlerin yerine geçer. scale, FD yedeğinin ve rijitlik
        toleranslarının uzunluk ölçeğidir.
        """
        alpha_field = ScalarField.from_expression(alpha, params, settings)
        beta_field = ScalarField.from_expression(beta, params, settings)
        if partials:
            alpha_field = _override_partials(alpha_field, "alpha", partials, params, settings)
            beta_field = _override_partials(beta_field, "beta", partials, params, settings)
        return cls(alpha=alpha_field, beta=beta_field, scale=scale, name=name or f"alpha={alpha}; beta={beta}")

    @classmethod
    def constant(cls, alpha: float = 1.0, beta: float = 0.0) -> "CoefficientEvaluator":
        return cls(
            alpha=ScalarField.constant(alpha),
            beta=ScalarField.constant(beta),
            name=f"constant(alpha={alpha}, beta={beta})",
        )

    def check_domain(self, x: RealLike, y: RealLike) -> None:
        if self.domain is None:
            return
        inside = np.asarray(self.domain(x, y), dtype=bool)
        if not np.all(inside):
            if inside.ndim:
                idx = int(np.argmin(inside))
                point = (float(np.ravel(np.broadcast_to(x, inside.shape))[idx]),
                         float(np.ravel(np.broadcast_to(y, inside.shape))[idx]))
            else:
                point = (float(x), float(y))
            raise DomainError(point, reason=f"outside domain of {self.name}")

    def coefficients(self, x: RealLike, y: RealLike) -> FiberCoefficients:
        self.check_domain(x, y)
        return FiberCoefficients(alpha=self.alpha(x, y), beta=self.beta(x, y))

    def partial(self, which: str, order: str, x: RealLike, y: RealLike) -> RealLike:
        """which ∈ {"alpha", "beta"}, order ∈ {"", "x", "y", "xx", "xy", "yy"}."""
        field = self.alpha if which == "alpha" else self.beta
        return field.derivative(order, x, y)

    def self_consistency(self, points: Iterable[Point], step: Optional[float] = None) -> ConsistencyReport:
        """
        Analitik türevleri merkezi farklarla karşılaştırır (O(h²) uyum beklenir).
        """
        h = step if step is not None else get_settings().first_step() * self.scale
        worst, worst_name, count = 0.0, "", 0
        for x, y in points:
            count += 1
            for which, field in (("alpha", self.alpha), ("beta", self.beta)):
                for order in ("x", "y"):
                    if not field.has_analytic(order):
                        continue
                    if order == "x":
                        fd = (field(x + h, y) - field(x - h, y)) / (2.0 * h)
                    else:
                        fd = (field(x, y + h) - field(x, y - h)) / (2.0 * h)
                    deviation = float(np.max(np.abs(field.derivative(order, x, y) - fd)))
                    if deviation > worst:
                        worst, worst_name = deviation, f"{which}_{order}"
        return ConsistencyReport(max_deviation=worst, worst_partial=worst_name, step=h, samples=count)


def _override_partials(
    field: ScalarField,
    which: str,
    partials: Mapping[str, str],
    params: Optional[Mapping[str, float]],
    settings: Optional[Settings],
) -> ScalarField:
    overrides = {}
    for key, text in partials.items():
        prefix, _, order = key.partition("_")
        if prefix == which:
            overrides[order] = ScalarField.from_expression(text, params, settings).value
    if not overrides:
        return field
    merged = {**field.partials, **overrides}
    return ScalarField(value=field.value, partials=merged, name=field.name, settings=settings)


# =============================================================================
# YAPI ALANI
# =============================================================================

class StructureField:
    """
    Değişken eliptik yapı. Tüm sorgular saf fonksiyonlardır.

    Example:
        >>> structure = StructureField(CoefficientEvaluator.constant())
        >>> structure.classify((0.0, 0.0)).delta
        4.0
    """

    def __init__(self, evaluator: CoefficientEvaluator, settings: Optional[Settings] = None):
        self.evaluator = evaluator
        self.settings = settings or get_settings()

    def __repr__(self) -> str:
        return f"StructureField({self.evaluator.name})"

    @property
    def name(self) -> str:
        return self.evaluator.name

    # ---- temel sorgular --------------------------------------------------

    def coefficients(self, point: Point) -> FiberCoefficients:
        x, y = point
        return self.evaluator.coefficients(x, y)

    def partial(self, which: str, order: str, point: Point) -> RealLike:
        x, y = point
        return self.evaluator.partial(which, order, x, y)

    def delta(self, point: Point) -> RealLike:
        return self.coefficients(point).discriminant()

    def classify(self, point: Point) -> Classification:
        """
        Rejim ve Δ. |Δ| ≤ τ_par parabolik, Δ > τ_par eliptik, aksi hiperbolik.
        """
        coeffs = self.coefficients(point)
        delta = float(coeffs.discriminant())
        return Classification(regime=coeffs.regime(self.settings.TOL_PARABOLIC), delta=delta)

    def require_elliptic(self, point: Point) -> FiberCoefficients:
        """Eliptik değilse EllipticityError; fiber katsayılarını döndürür."""
        coeffs = self.coefficients(point)
        delta = coeffs.discriminant()
        if np.any(delta <= self.settings.TOL_PARABOLIC):
            x, y = point
            if np.ndim(delta):
                idx = int(np.argmin(delta))
                where = (float(np.ravel(np.broadcast_to(x, np.shape(delta)))[idx]),
                         float(np.ravel(np.broadcast_to(y, np.shape(delta)))[idx]))
            else:
                where = (float(x), float(y))
            raise EllipticityError(delta=float(np.min(delta)), point=where)
        return coeffs

    # ---- üreteç türevleri -----------------------------------------------

    def generator_derivatives(self, point: Point, order: int = 1) -> GeneratorDerivatives:
        """
        i_x = −(α_x + β_x i)(2i+β)⁻¹, i_y benzer; order=2 için

            (2i+β) i_xx = −(2 i_x² + 2β_x i_x + α_xx + β_xx i)
            (2i+β) i_xy = −(2 i_x i_y + β_y i_x + β_x i_y + α_xy + β_xy i)
            (2i+β) i_yy = −(2 i_y² + 2β_y i_y + α_yy + β_yy i)
        """
        if order not in (1, 2):
            raise MissingDerivativeError(f"generator derivatives of order {order} (supported: 1, 2)")
        coeffs = self.require_elliptic(point)
        inv = inv_two_i_plus_beta(coeffs)

        ax, ay = self.partial("alpha", "x", point), self.partial("alpha", "y", point)
        bx, by = self.partial("beta", "x", point), self.partial("beta", "y", point)
        ix = -(AlgebraElement(ax, bx, coeffs) * inv)
        iy = -(AlgebraElement(ay, by, coeffs) * inv)
        if order == 1:
            return GeneratorDerivatives(ix=ix, iy=iy)

        # c1, c2: d1 ve d2'nin β türevi katsayıları
        def second(o: str, d1: AlgebraElement, d2: AlgebraElement, c1: RealLike, c2: RealLike) -> AlgebraElement:
            rhs = (
                2.0 * (d1 * d2)
                + c1 * d1
                + c2 * d2
                + AlgebraElement(self.partial("alpha", o, point), self.partial("beta", o, point), coeffs)
            )
            return -(rhs * inv)

        ixx = second("xx", ix, ix, bx, bx)
        ixy = second("xy", ix, iy, by, bx)  # β_y i_x + β_x i_y
        iyy = second("yy", iy, iy, by, by)
        return GeneratorDerivatives(ix=ix, iy=iy, ixx=ixx, ixy=ixy, iyy=iyy)

    def defining_residual(self, point: Point) -> Tuple[AlgebraElement, AlgebraElement]:
        """(2i+β)·i_x + α_x + β_x·i ve y karşılığı; sıfır olmalı."""
        d = self.generator_derivatives(point)
        coeffs = d.ix.coeffs
        two_i_beta = AlgebraElement(coeffs.beta, 2.0 + 0.0 * coeffs.beta, coeffs)
        rx = two_i_beta * d.ix + AlgebraElement(
            self.partial("alpha", "x", point), self.partial("beta", "x", point), coeffs
        )
        ry = two_i_beta * d.iy + AlgebraElement(
            self.partial("alpha", "y", point), self.partial("beta", "y", point), coeffs
        )
        return rx, ry

    # ---- içsel engel ------------------------------------------------------

    def closed_form_AB(self, point: Point) -> Tuple[RealLike, RealLike]:
        """
        A = [β(α_x − αβ_y) − 2α(β_x + α_y − ββ_y)]/Δ
        B = [2(α_x − αβ_y) − β(β_x + α_y − ββ_y)]/Δ
        """
        coeffs = self.require_elliptic(point)
        alpha, beta = coeffs.alpha, coeffs.beta
        delta = coeffs.discriminant()
        a = self.partial("alpha", "x", point) - alpha * self.partial("beta", "y", point)
        b = (
            self.partial("beta", "x", point)
            + self.partial("alpha", "y", point)
            - beta * self.partial("beta", "y", point)
        )
        return (beta * a - 2.0 * alpha * b) / delta, (2.0 * a - beta * b) / delta

    def obstruction(self, point: Point) -> Obstruction:
        d = self.generator_derivatives(point)
        G = d.ix + generator(d.ix.coeffs) * d.iy
        A, B = self.closed_form_AB(point)
        return Obstruction(G=G, G0=G.u, G1=G.v, A=A, B=B)

    def rigidity_residual(self, point: Point) -> RealLike:
        """√(G0² + G1²); rijit noktada sıfır (∂_z̄ i = ½𝒢 = 0)."""
        obs = self.obstruction(point)
        return np.hypot(obs.G0, obs.G1)

    def max_rigidity_residual(self, xs: np.ndarray, ys: np.ndarray) -> float:
        return float(np.max(self.rigidity_residual((np.asarray(xs, float), np.asarray(ys, float)))))

    def forced_coefficient_residual(self, point: Point) -> Tuple[RealLike, RealLike]:
        """
        α_x − (αβ_y − βG0 + 2αG1) ve (β_x + α_y) − (ββ_y − 2G0 + βG1).
        """
        coeffs = self.require_elliptic(point)
        alpha, beta = coeffs.alpha, coeffs.beta
        obs = self.obstruction(point)
        by = self.partial("beta", "y", point)
        r0 = self.partial("alpha", "x", point) - (alpha * by - beta * obs.G0 + 2.0 * alpha * obs.G1)
        r1 = (self.partial("beta", "x", point) + self.partial("alpha", "y", point)) - (
            beta * by - 2.0 * obs.G0 + beta * obs.G1
        )
        return r0, r1

    # ---- spektral parametre ----------------------------------------------

    def spectral_lambda(self, point: Point, with_derivatives: bool = True) -> SpectralState:
        """
        λ = (−β + i√Δ)/2, b > 0 dalı. Türevler zincir kuralıyla:
        λ_• = −β_•/2 + i Δ_•/(4√Δ), Δ_• = 4α_• − 2ββ_•.
        """
        coeffs = self.require_elliptic(point)
        root = np.sqrt(coeffs.discriminant())
        lam = (-coeffs.beta + 1j * root) / 2.0
        if not with_derivatives:
            return SpectralState(lam=lam)

        def chain(o: str) -> complex | np.ndarray:
            d_alpha = self.partial("alpha", o, point)
            d_beta = self.partial("beta", o, point)
            d_delta = 4.0 * d_alpha - 2.0 * coeffs.beta * d_beta
            return -d_beta / 2.0 + 1j * d_delta / (4.0 * root)

        return SpectralState(lam=lam, lam_x=chain("x"), lam_y=chain("y"))

    def conservative_residual(self, point: Point) -> complex | np.ndarray:
        """λ_x + λ·λ_y (rijitlikte sıfır)."""
        s = self.spectral_lambda(point)
        return s.lam_x + s.lam * s.lam_y

    def burgers_residual(self, point: Point) -> complex | np.ndarray:
        """λ_x + λλ_y − (G0 + λG1); her C¹ eliptik yapı için sıfır."""
        s = self.spectral_lambda(point)
        obs = self.obstruction(point)
        return s.lam_x + s.lam * s.lam_y - (obs.G0 + s.lam * obs.G1)

    # ---- parabolik yol ----------------------------------------------------

    def parabolic_canonical_derivatives(self, point: Point) -> Tuple[AlgebraElement, AlgebraElement]:
        """
        Δ = 0 noktasında kanonik seçim i_x := −β_x/2, i_y := −β_y/2.

        Raises:
            NotParabolicError: |Δ| > τ_par
        """
        coeffs = self.coefficients(point)
        delta = coeffs.discriminant()
        tol = self.settings.TOL_PARABOLIC
        if np.any(np.abs(delta) > tol):
            raise NotParabolicError(delta=float(np.max(np.abs(delta))), tolerance=tol)
        zero = 0.0 * coeffs.beta
        return (
            AlgebraElement(-self.partial("beta", "x", point) / 2.0, zero, coeffs),
            AlgebraElement(-self.partial("beta", "y", point) / 2.0, zero, coeffs),
        )
