"""
Varel - Fiber Cebiri
====================

i² + β·i + α = 0 bağıntısıyla tanımlı iki boyutlu değişmeli cebir A_z
üzerinde kesin aritmetik: çarpım, eşlenik, norm, ters, (2i+β)⁻¹ ve
normalizasyon elemanı j.

Elemanlar (u, v) katsayı çiftidir: w = u + v·i. Katsayılar skaler veya
numpy dizisi olabilir; dizi hâlinde tüm işlemler eleman bazında çalışır
(kuadratür düğümlerinde toplu değerlendirme için).

Kullanım:
    from app.algebra.fiber import AlgebraElement, FiberCoefficients, j_element

    c = FiberCoefficients(alpha=2.0, beta=1.0)
    w = AlgebraElement(1.0, 1.0, c)
    print(w.norm())          # 2.0
    print(j_element(c) * j_element(c))   # (-1, 0)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from app.config import get_settings
from app.core.exceptions import (
    EllipticityError,
    FiberMismatchError,
    NonInvertibleError,
    ParabolicDegeneracyError,
)
from app.core.types import RealLike, Regime

logger = logging.getLogger(__name__)

Scalar = Union[float, int, np.ndarray, np.floating]


# =============================================================================
# FİBER KATSAYILARI
# =============================================================================

@dataclass(frozen=True, eq=False)
class FiberCoefficients:
    """
    Bir noktadaki (veya düğüm dizisindeki) yapı katsayıları (α, β).

    Attributes:
        alpha: i² + β i + α = 0 bağıntısının sabit terimi
        beta: lineer terim katsayısı
    """

    alpha: RealLike
    beta: RealLike

    def discriminant(self) -> RealLike:
        """Δ = 4α − β²."""
        return 4.0 * self.alpha - self.beta ** 2

    def regime(self, tolerance: Optional[float] = None) -> Regime:
        """Skaler fiber için rejim sınıflandırması (|Δ| ≤ τ_par parabolik)."""
        tol = get_settings().TOL_PARABOLIC if tolerance is None else tolerance
        delta = float(self.discriminant())
        if abs(delta) <= tol:
            return Regime.PARABOLIC
        return Regime.ELLIPTIC if delta > 0 else Regime.HYPERBOLIC

    def same_as(self, other: "FiberCoefficients") -> bool:
        """Saklanan değerler birebir aynı mı? (fiberler arası interpolasyon yok)"""
        if self is other:
            return True
        return bool(np.array_equal(self.alpha, other.alpha) and np.array_equal(self.beta, other.beta))

    def as_tuple(self) -> Tuple[float, float]:
        return (float(np.max(self.alpha)), float(np.max(self.beta)))

    def spectral_root(self) -> complex | np.ndarray:
        """λ = (−β + i√Δ)/2, üst yarı düzlem kökü."""
        delta = self.discriminant()
        return (-self.beta + 1j * np.sqrt(delta)) / 2.0


# =============================================================================
# CEBİR ELEMANI
# =============================================================================

@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """
    A_z elemanı w = u + v·i.

    Aynı fiberdeki elemanlar toplanıp çarpılabilir; farklı fiberler
    FiberMismatchError üretir. Reel sayılarla (veya reel dizilerle)
    çarpım skaler ölçeklemedir.
    """

    u: RealLike
    v: RealLike
    coeffs: FiberCoefficients

    # numpy'nin ndarray * AlgebraElement çarpımını ele geçirmemesi için
    __array_ufunc__ = None

    # ---- temel aritmetik -------------------------------------------------

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return add(self, other)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return sub(self, other)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(-self.u, -self.v, self.coeffs)

    def __mul__(self, other: Union["AlgebraElement", Scalar]) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            return mul(self, other)
        return scale(self, other)

    def __rmul__(self, other: Scalar) -> "AlgebraElement":
        return scale(self, other)

    def __truediv__(self, other: Scalar) -> "AlgebraElement":
        return scale(self, 1.0 / other)

    def __repr__(self) -> str:
        return f"AlgebraElement(u={self.u!r}, v={self.v!r})"

    # ---- yardımcılar -----------------------------------------------------

    def conj(self) -> "AlgebraElement":
        return conj(self)

    def norm(self) -> RealLike:
        return norm(self)

    def inverse(self) -> "AlgebraElement":
        return inverse(self)

    def to_complex(self) -> complex | np.ndarray:
        return to_complex(self)

    def components(self) -> np.ndarray:
        """(u, v) çiftini numpy dizisi olarak döndürür."""
        return np.array([self.u, self.v], dtype=float)

    def magnitude(self) -> float:
        """Öklid büyüklüğü √(u² + v²) (toleranslar için; dizi ise maksimum)."""
        return float(np.max(np.hypot(self.u, self.v)))

    def is_close(self, other: "AlgebraElement", tol: float = 1e-10) -> bool:
        """Bileşen bazında karşılaştırma (aynı fiber varsayılır)."""
        return bool(np.all(np.abs(self.u - other.u) <= tol) and np.all(np.abs(self.v - other.v) <= tol))

    def in_fiber(self, coeffs: FiberCoefficients) -> "AlgebraElement":
        """Katsayıları aynen koruyarak başka fibere yerleştirir (coefficientwise taşıma)."""
        return AlgebraElement(self.u, self.v, coeffs)


# =============================================================================
# PUBLIC API
# =============================================================================

def _check_same_fiber(a: AlgebraElement, b: AlgebraElement) -> None:
    if not a.coeffs.same_as(b.coeffs):
        raise FiberMismatchError(a.coeffs.as_tuple(), b.coeffs.as_tuple())


def element(u: RealLike, v: RealLike, coeffs: FiberCoefficients) -> AlgebraElement:
    return AlgebraElement(u, v, coeffs)


def unit(coeffs: FiberCoefficients) -> AlgebraElement:
    """Birim eleman 1 = (1, 0)."""
    return AlgebraElement(np.ones_like(coeffs.alpha, dtype=float) if np.ndim(coeffs.alpha) else 1.0,
                          np.zeros_like(coeffs.alpha, dtype=float) if np.ndim(coeffs.alpha) else 0.0,
                          coeffs)


def generator(coeffs: FiberCoefficients) -> AlgebraElement:
    """Üreteç i = (0, 1)."""
    one = unit(coeffs)
    return AlgebraElement(one.v, one.u, coeffs)


def zero(coeffs: FiberCoefficients) -> AlgebraElement:
    one = unit(coeffs)
    return AlgebraElement(one.v, one.v, coeffs)


def add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _check_same_fiber(a, b)
    return AlgebraElement(a.u + b.u, a.v + b.v, a.coeffs)


def sub(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _check_same_fiber(a, b)
    return AlgebraElement(a.u - b.u, a.v - b.v, a.coeffs)


def scale(a: AlgebraElement, s: Scalar) -> AlgebraElement:
    """Reel skaler (veya reel dizi) ile çarpım."""
    return AlgebraElement(s * a.u, s * a.v, a.coeffs)


def mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """
    i² = −β·i − α indirgemesiyle çarpım.

    (u_a u_b − α v_a v_b, u_a v_b + v_a u_b − β v_a v_b)
    """
    _check_same_fiber(a, b)
    alpha, beta = a.coeffs.alpha, a.coeffs.beta
    vv = a.v * b.v
    return AlgebraElement(
        a.u * b.u - alpha * vv,
        a.u * b.v + a.v * b.u - beta * vv,
        a.coeffs,
    )


def conj(a: AlgebraElement) -> AlgebraElement:
    """Eşlenik: î = −β − i, yani (u − βv, −v). İnvolüsyon ve halka homomorfizmi."""
    return AlgebraElement(a.u - a.coeffs.beta * a.v, -a.v, a.coeffs)


def norm(a: AlgebraElement) -> RealLike:
    """N(w) = w·ŵ skaler kısmı = u² − β·u·v + α·v²."""
    return a.u * a.u - a.coeffs.beta * a.u * a.v + a.coeffs.alpha * a.v * a.v


def inverse(a: AlgebraElement) -> AlgebraElement:
    """
    w⁻¹ = ŵ / N(w).

    Raises:
        NonInvertibleError: |N(w)| < TOL_INVERTIBLE
    """
    n = norm(a)
    tol = get_settings().TOL_INVERTIBLE
    if np.any(np.abs(n) < tol):
        smallest = float(np.min(np.abs(n)))
        logger.debug(f"[FIBER] inverse refused: norm={smallest:.3e}")
        raise NonInvertibleError(norm=smallest)
    c = conj(a)
    return AlgebraElement(c.u / n, c.v / n, a.coeffs)


def inv_two_i_plus_beta(coeffs: FiberCoefficients) -> AlgebraElement:
    """
    (2i+β)⁻¹ = (−β − 2i)/Δ = (−β/Δ, −2/Δ).

    Raises:
        ParabolicDegeneracyError: |Δ| ≤ τ_par (2i+β sıfır bölen)
    """
    delta = coeffs.discriminant()
    tol = get_settings().TOL_PARABOLIC
    if np.any(np.abs(delta) <= tol):
        raise ParabolicDegeneracyError(delta=float(np.min(np.abs(delta))))
    return AlgebraElement(-coeffs.beta / delta, -2.0 / delta, coeffs)


def j_element(coeffs: FiberCoefficients) -> AlgebraElement:
    """
    j = (2i+β)/√Δ = (β/√Δ, 2/√Δ); j² = −1.

    Raises:
        EllipticityError: Δ ≤ τ_par
    """
    delta = coeffs.discriminant()
    if np.any(delta <= get_settings().TOL_PARABOLIC):
        raise EllipticityError(delta=float(np.min(delta)))
    root = np.sqrt(delta)
    return AlgebraElement(coeffs.beta / root, 2.0 / root, coeffs)


# =============================================================================
# STANDART KARMAŞIK DÜZLEME GÖMME
# =============================================================================

def to_complex(a: AlgebraElement) -> complex | np.ndarray:
    """
    Cebir izomorfizması A_z → ℂ, i ↦ λ = (−β + i√Δ)/2 (Δ > 0).

    Çarpım, eşlenik, norm ve ters bu gömme ile sıra değiştirir.
    """
    delta = a.coeffs.discriminant()
    if np.any(delta <= 0):
        raise EllipticityError(delta=float(np.min(delta)))
    return a.u + a.v * a.coeffs.spectral_root()


def from_complex(w: complex | np.ndarray, coeffs: FiberCoefficients) -> AlgebraElement:
    """
    to_complex'in tersi: w = u + v·λ ⇒ v = Im w / b, u = Re w − v·a.
    """
    delta = coeffs.discriminant()
    if np.any(delta <= 0):
        raise EllipticityError(delta=float(np.min(delta)))
    a = -coeffs.beta / 2.0
    b = np.sqrt(delta) / 2.0
    w = np.asarray(w, dtype=complex)
    v = w.imag / b
    u = w.real - v * a
    if np.ndim(u) == 0:
        return AlgebraElement(float(u), float(v), coeffs)
    return AlgebraElement(u, v, coeffs)
