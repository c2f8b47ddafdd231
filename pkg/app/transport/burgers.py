"""
Varel - Karmaşık Burgers Taşınımı
=================================

Spektral parametre λ = a + ib için

    λ_x + λ λ_y = G0 + λ G1

taşınım yasasının karakteristiklerle çözümü:

- solve_implicit: korunumlu durumda λ = λ0(y − λx) örtük bağıntısı,
  sönümlü Newton ile (gerçek düzlemde, yörünge izlenmeden)
- integrate_forced: dy/dx = λ, dλ/dx = G0 + λG1 sisteminin klasik RK4
  ile tanılayıcı entegrasyonu (karmaşık y veya dondurulmuş y kipi)
- detect_crossing: karakteristik Jacobian'ı 1 + x·λ0′ sıfıra yaklaşıyor mu
- reconstruct_coefficients: λ'dan (α, β) = (a² + b², −2a)

Kullanım:
    from app.transport.burgers import InitialProfile, solve_implicit

    profile = InitialProfile.epsilon_trace(0.1)
    lam = solve_implicit(profile, (0.3, 0.2))
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.algebra.fiber import FiberCoefficients
from app.config import Settings, get_settings
from app.core.exceptions import (
    ConfigError,
    ConvergenceError,
    CrossingDetectedError,
    DomainError,
    EllipticityError,
    QuadratureError,
    VarelException,
)
from app.core.types import Point
from app.structure.structure_field import SpectralState, StructureField

logger = logging.getLogger(__name__)

ComplexFn = Callable[[Any], Any]
ForcingFn = Callable[[float, Any], Any]


# =============================================================================
# VERİ YAPILARI
# =============================================================================

@dataclass(frozen=True)
class InitialProfile:
    """
    x = 0 doğrusu üzerindeki başlangıç verisi λ0(y), Im λ0 > 0.

    λ0 karmaşık argüman da kabul etmelidir (örtük bağıntı y − λx karmaşıktır).

    Attributes:
        lambda0: y -> λ0(y)
        derivative: y -> λ0′(y); None ise merkezi fark
        name: loglar için ad
    """

    lambda0: ComplexFn
    derivative: Optional[ComplexFn] = None
    name: str = "profile"

    def __call__(self, y: Any) -> Any:
        return self.lambda0(y)

    def slope(self, y: Any, step: Optional[float] = None) -> Any:
        if self.derivative is not None:
            return self.derivative(y)
        h = step or get_settings().first_step()
        return (self.lambda0(y + h) - self.lambda0(y - h)) / (2.0 * h)

    def check_elliptic(self, ys: Sequence[float]) -> None:
        """Örnek noktalarda Im λ0 > 0 değilse EllipticityError."""
        values = np.asarray(self.lambda0(np.asarray(ys, dtype=float)), dtype=complex)
        b = np.imag(values)
        if np.any(b <= 0.0):
            idx = int(np.argmin(b))
            raise EllipticityError(delta=float(4.0 * b[idx] * abs(b[idx])), point=(0.0, float(np.ravel(ys)[idx])))

    # ---- hazır profiller -------------------------------------------------

    @classmethod
    def constant(cls, value: complex = 1j) -> "InitialProfile":
        return cls(
            lambda0=lambda y: value + 0.0 * np.asarray(y),
            derivative=lambda y: 0.0 * np.asarray(y) + 0.0j,
            name=f"constant({value})",
        )

    @classmethod
    def affine(cls, base: complex = 1j, slope: complex = 0.1) -> "InitialProfile":
        return cls(
            lambda0=lambda y: base + slope * np.asarray(y),
            derivative=lambda y: slope + 0.0 * np.asarray(y),
            name=f"affine({base}, {slope})",
        )

    @classmethod
    def epsilon_trace(cls, epsilon: float) -> "InitialProfile":
        """ε-ailesinin x = 0 izi: F(s) = (−εs + i√(4 − ε²s²))/2."""
        e = float(epsilon)

        def root(s: Any) -> Any:
            return np.sqrt(np.asarray(4.0 - e * e * np.asarray(s) ** 2, dtype=complex))

        return cls(
            lambda0=lambda s: (-e * np.asarray(s) + 1j * root(s)) / 2.0,
            derivative=lambda s: (-e - 1j * e * e * np.asarray(s) / root(s)) / 2.0,
            name=f"epsilon_trace({e})",
        )


@dataclass(frozen=True)
class CharacteristicState:
    """
    Karakteristik üzerindeki durum.

    Attributes:
        x: gerçek parametre
        y: konum (karmaşık kipte karmaşık)
        lam: λ
        jacobian: ∂y/∂y0
        sensitivity: ∂λ/∂y0
    """
    x: float
    y: complex
    lam: complex
    jacobian: complex = 1.0 + 0.0j
    sensitivity: complex = 0.0j

    @property
    def jacobian_modulus(self) -> float:
        return float(abs(self.jacobian))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "x": self.x,
            "y": [float(np.real(self.y)), float(np.imag(self.y))],
            "lambda": [float(np.real(self.lam)), float(np.imag(self.lam))],
            "jacobian_modulus": self.jacobian_modulus,
        }


@dataclass(frozen=True)
class Forcing:
    """(G0, G1) nokta fonksiyonları; varsayılan sıfır (korunumlu)."""
    g0: ForcingFn = lambda x, y: 0.0  # noqa: E731
    g1: ForcingFn = lambda x, y: 0.0  # noqa: E731
    name: str = "conservative"

    @classmethod
    def constant(cls, g0: float = 0.0, g1: float = 0.0) -> "Forcing":
        return cls(g0=lambda x, y: g0, g1=lambda x, y: g1, name=f"constant({g0}, {g1})")

    @classmethod
    def from_structure(cls, structure: StructureField) -> "Forcing":
        """Yapının içsel engeli; karmaşık y için gerçek iz Re y kullanılır."""
        def g(which: str) -> ForcingFn:
            def value(x: float, y: Any) -> float:
                obs = structure.obstruction((float(x), float(np.real(y))))
                return float(obs.G0 if which == "G0" else obs.G1)
            return value

        return cls(g0=g("G0"), g1=g("G1"), name=f"obstruction({structure.name})")


@dataclass(frozen=True)
class Crossing:
    x: float
    y0: float
    modulus: float

    def to_dict(self) -> Dict[str, float]:
        return {"x": self.x, "y0": self.y0, "modulus": self.modulus}


@dataclass(frozen=True)
class ScanRow:
    x: float
    y: float
    re_lambda: float
    im_lambda: float
    jacobian_modulus: float

    def as_tuple(self) -> Tuple[float, float, float, float, float]:
        return (self.x, self.y, self.re_lambda, self.im_lambda, self.jacobian_modulus)


# =============================================================================
# ÖRTÜK ÇÖZÜCÜ
# =============================================================================

def solve_implicit(
    profile: InitialProfile,
    point: Point,
    settings: Optional[Settings] = None,
    tol: Optional[float] = None,
    seed: Optional[complex] = None,
) -> complex:
    """
    λ = λ0(y − λx) için sönümlü Newton; başlangıç λ0(y).

    Raises:
        CrossingDetectedError: |1 + x·λ0′| < τ_cross
        ConvergenceError: iterasyon sınırı aşıldı
    """
    settings = settings or get_settings()
    tolerance = settings.NEWTON_TOL if tol is None else tol
    x, y = float(point[0]), float(point[1])
    lam = complex(profile(y) if seed is None else seed)

    def phi(value: complex) -> complex:
        return value - complex(profile(y - value * x))

    residual = phi(lam)
    for iteration in range(settings.NEWTON_MAX_ITER):
        if abs(residual) <= tolerance * max(1.0, abs(lam)):
            logger.debug(f"[BURGERS] newton converged at ({x}, {y}) in {iteration} steps")
            return lam
        derivative = 1.0 + x * complex(profile.slope(y - lam * x))
        if abs(derivative) < settings.TOL_CROSSING:
            raise CrossingDetectedError(x=x, y=y, modulus=abs(derivative))
        step = -residual / derivative
        t = 1.0
        candidate = lam + step
        trial = phi(candidate)
        halvings = 0
        while abs(trial) > abs(residual) and halvings < settings.NEWTON_MAX_HALVINGS:
            t *= 0.5
            halvings += 1
            candidate = lam + t * step
            trial = phi(candidate)
        lam, residual = candidate, trial

    if abs(residual) <= tolerance * max(1.0, abs(lam)):
        return lam
    logger.warning(f"[BURGERS] newton failed at ({x}, {y}): residual={abs(residual):.3e}")
    raise ConvergenceError(residual=abs(residual), iterations=settings.NEWTON_MAX_ITER)


def jacobian_modulus(profile: InitialProfile, point: Point, lam: complex) -> float:
    """|1 + x·λ0′(y − λx)|."""
    x, y = point
    return float(abs(1.0 + x * complex(profile.slope(y - lam * x))))


# =============================================================================
# ZORLANMIŞ KARAKTERİSTİKLER
# =============================================================================

def _rhs(forcing: Forcing, x: float, state: np.ndarray, frozen: bool, h: float) -> np.ndarray:
    y, lam, jac, sens = state
    g0, g1 = forcing.g0(x, y), forcing.g1(x, y)
    if frozen:
        return np.array([0.0, g0 + lam * g1, 0.0, g1 * sens], dtype=complex)
    dg0 = (forcing.g0(x, y + h) - forcing.g0(x, y - h)) / (2.0 * h)
    dg1 = (forcing.g1(x, y + h) - forcing.g1(x, y - h)) / (2.0 * h)
    return np.array([lam, g0 + lam * g1, sens, (dg0 + lam * dg1) * jac + g1 * sens], dtype=complex)


def integrate_forced(
    start: CharacteristicState,
    forcing: Forcing,
    x_end: float,
    steps: int,
    frozen: bool = False,
    settings: Optional[Settings] = None,
) -> CharacteristicState:
    """
    Klasik RK4 ile (y, λ, ∂y/∂y0, ∂λ/∂y0) sistemi.

    frozen=True: y sabit; λ′ = G0 + λG1 doğrusal ODE'si (noktasal kontrol).

    Raises:
        QuadratureError: adım boyu sıfıra düştü
        DomainError: yörünge sonlu olmayan değere kaçtı
    """
    settings = settings or get_settings()
    if steps < 1:
        raise QuadratureError(f"integration needs at least one step, got {steps}")
    h = (float(x_end) - start.x) / steps
    if h != 0.0 and abs(h) < 1e-14 * max(1.0, abs(x_end)):
        raise QuadratureError(f"RK4 step underflow: h={h:.3e}")
    fd = settings.first_step()

    x = start.x
    state = np.array([start.y, start.lam, start.jacobian, start.sensitivity], dtype=complex)
    for _ in range(steps):
        k1 = _rhs(forcing, x, state, frozen, fd)
        k2 = _rhs(forcing, x + h / 2, state + h / 2 * k1, frozen, fd)
        k3 = _rhs(forcing, x + h / 2, state + h / 2 * k2, frozen, fd)
        k4 = _rhs(forcing, x + h, state + h * k3, frozen, fd)
        state = state + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        x += h
        if not np.all(np.isfinite(state)):
            raise DomainError((float(x), float(np.real(state[0]))), reason="characteristic left the domain")

    y, lam, jac, sens = state
    return CharacteristicState(x=float(x_end), y=complex(y), lam=complex(lam), jacobian=complex(jac), sensitivity=complex(sens))


def start_state(profile: InitialProfile, y0: complex) -> CharacteristicState:
    """x = 0'da λ0(y0) ve ∂λ/∂y0 = λ0′(y0)."""
    return CharacteristicState(
        x=0.0, y=complex(y0), lam=complex(profile(y0)), sensitivity=complex(profile.slope(y0))
    )


def estimate_order(
    start: CharacteristicState,
    forcing: Forcing,
    x_end: float,
    base_steps: int = 8,
    frozen: bool = False,
) -> float:
    """n, 2n, 4n adımlı çözümlerden Richardson mertebe tahmini (~4)."""
    values = [integrate_forced(start, forcing, x_end, base_steps * m, frozen).lam for m in (1, 2, 4)]
    coarse, fine = abs(values[0] - values[1]), abs(values[1] - values[2])
    if fine == 0.0 or coarse == 0.0:
        return float("nan")
    return float(np.log2(coarse / fine))


# =============================================================================
# KESİŞİM VE KATSAYILAR
# =============================================================================

def detect_crossing(
    profile: InitialProfile,
    x_range: Tuple[float, float],
    y_samples: Sequence[float],
    settings: Optional[Settings] = None,
) -> Optional[Crossing]:
    """
    J(x) = 1 + x·p, p = λ0′(y0) afin olduğundan {|J| < τ_cross} kümesi kapalı
    biçimde bir aralıktır:

        x ∈ (−Re p ∓ √(|p|²τ² − (Im p)²)) / |p|²

    Aralık x_range ile kesiştirilir; tüm y0 örnekleri içinde en küçük x
    döner (uç nokta zaten eşik altındaysa o uç). modulus, kesişim
    içindeki en küçük |J|'dir. Kesişim yoksa None.
    """
    settings = settings or get_settings()
    tau = settings.TOL_CROSSING
    x0, x1 = min(x_range), max(x_range)
    first: Optional[Crossing] = None
    for y0 in y_samples:
        p = complex(profile.slope(float(y0)))
        size2 = abs(p) ** 2
        if size2 == 0.0:
            continue
        disc = size2 * tau * tau - p.imag ** 2
        if disc <= 0.0:
            continue
        root = float(np.sqrt(disc))
        lo, hi = (-p.real - root) / size2, (-p.real + root) / size2
        start, end = max(lo, x0), min(hi, x1)
        if start > end or start >= hi or end <= lo:
            continue
        x_min = min(max(-p.real / size2, start), end)
        modulus = abs(1.0 + x_min * p)
        if first is None or start < first.x:
            first = Crossing(x=float(start), y0=float(y0), modulus=float(modulus))
    if first is not None:
        logger.info(f"[BURGERS] crossing for {profile.name} at x={first.x:.6g} (y0={first.y0:.6g})")
    return first


def reconstruct_coefficients(lam: Any) -> FiberCoefficients:
    """
    (α, β) = (a² + b², −2a).

    Raises:
        EllipticityError: Im λ ≤ 0
    """
    a, b = np.real(lam), np.imag(lam)
    if np.any(b <= 0.0):
        worst = float(np.min(b))
        raise EllipticityError(delta=4.0 * worst * abs(worst))
    alpha, beta = a * a + b * b, -2.0 * a
    if np.ndim(alpha) == 0:
        return FiberCoefficients(alpha=float(alpha), beta=float(beta))
    return FiberCoefficients(alpha=alpha, beta=beta)


def conservative_real_residual(state: SpectralState) -> Tuple[Any, Any]:
    """(a_x + a a_y − b b_y, b_x + a b_y + b a_y)."""
    a, b = state.a, state.b
    a_x, b_x = np.real(state.lam_x), np.imag(state.lam_x)
    a_y, b_y = np.real(state.lam_y), np.imag(state.lam_y)
    return a_x + a * a_y - b * b_y, b_x + a * b_y + b * a_y


# =============================================================================
# IZGARA TARAMASI
# =============================================================================

def scan_grid(
    profile: InitialProfile,
    xs: Sequence[float],
    ys: Sequence[float],
    settings: Optional[Settings] = None,
) -> List[ScanRow]:
    """Örtük çözücü ızgara taraması; başarısız noktalar NaN satırı olur."""
    settings = settings or get_settings()
    rows: List[ScanRow] = []
    failures = 0
    for x in xs:
        for y in ys:
            try:
                lam = solve_implicit(profile, (float(x), float(y)), settings)
                rows.append(ScanRow(float(x), float(y), lam.real, lam.imag,
                                    jacobian_modulus(profile, (float(x), float(y)), lam)))
            except VarelException as exc:
                failures += 1
                logger.debug(f"[BURGERS] scan point ({x}, {y}) failed: {exc.message}")
                rows.append(ScanRow(float(x), float(y), float("nan"), float("nan"), float("nan")))
    if failures:
        logger.warning(f"[BURGERS] {failures} scan points failed for {profile.name}")
    return rows


def make_profile(preset: str, params: Optional[Dict[str, Any]] = None) -> InitialProfile:
    """CLI hazır profilleri: constant, affine, epsilon."""
    params = params or {}

    def as_complex(key: str, default: complex) -> complex:
        value = params.get(key, default)
        if isinstance(value, (list, tuple)):
            return complex(float(value[0]), float(value[1]))
        return complex(value)

    if preset == "constant":
        return InitialProfile.constant(as_complex("value", 1j))
    if preset == "affine":
        return InitialProfile.affine(as_complex("base", 1j), as_complex("slope", 0.1))
    if preset == "epsilon":
        return InitialProfile.epsilon_trace(float(params.get("epsilon", 0.1)))
    raise ConfigError(f"unknown profile preset: {preset}",
                      user_message="Profil 'constant', 'affine' veya 'epsilon' olmalı.")
