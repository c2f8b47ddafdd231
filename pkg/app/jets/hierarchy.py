"""
Varel - Jet Hiyerarşisi
=======================

Bir yapı ailesi ε ↦ (α^ε, β^ε) için λ^ε = i + εμ + ε²ν + ε³ρ + …
açılımının katsayılarını ε yönünde merkezi farklarla çıkarır ve

    μ_x + i μ_y = 0
    ν_x + i ν_y = −μ μ_y
    ρ_x + i ρ_y = −(μ ν_y + ν μ_y)

denklemlerini uzaysal 5 noktalı farklarla doğrular.

ε şablonu {0, ±δ, ±2δ, ±3δ}; δ ve δ/2 ile iki seviyeli Richardson.

Kullanım:
    from app.jets.hierarchy import epsilon_family, extract_jets, check_first_jet

    jets = extract_jets(epsilon_family(), (0.3, 0.1))
    residual = check_first_jet(jets.mu, (0.3, 0.1))
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.config import Settings, get_settings
from app.core.exceptions import StencilError
from app.core.types import Point
from app.structure.epsilon import EpsilonStructure
from app.structure.structure_field import CoefficientEvaluator, StructureField

logger = logging.getLogger(__name__)

Family = Callable[[float], StructureField]
JetField = Callable[[Point], complex]

# ε yönünde 7 noktalı şablonlar (ofset −3..3)
FIRST = np.array([-1 / 60, 3 / 20, -3 / 4, 0.0, 3 / 4, -3 / 20, 1 / 60])
SECOND = np.array([1 / 90, -3 / 20, 3 / 2, -49 / 18, 3 / 2, -3 / 20, 1 / 90])
THIRD = np.array([1 / 8, -1.0, 13 / 8, 0.0, -13 / 8, 1.0, -1 / 8])
OFFSETS = np.arange(-3, 4)

# uzaysal 5 noktalı birinci türev
SPATIAL = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0


# =============================================================================
# AİLELER
# =============================================================================

def epsilon_family(settings: Optional[Settings] = None) -> Family:
    """ε ↦ ε-ailesinin yapı alanı."""
    return lambda eps: EpsilonStructure.make(eps, settings=settings).structure()


def constant_family(settings: Optional[Settings] = None) -> Family:
    """ε'dan bağımsız sabit yapı α ≡ 1, β ≡ 0."""
    structure = StructureField(CoefficientEvaluator.constant(), settings=settings)
    return lambda eps: structure


def epsilon_jets() -> Tuple[JetField, JetField, JetField]:
    """
    ε-ailesinin kapalı form jetleri:

        μ = −y/2 + i x/2
        ν = −xy/2 + i(3x² − y²)/8
        ρ = −x²y/2 + i(5x³ − 3xy²)/16
    """
    def mu(p: Point) -> complex:
        x, y = p
        return complex(-y / 2.0, x / 2.0)

    def nu(p: Point) -> complex:
        x, y = p
        return complex(-x * y / 2.0, (3.0 * x * x - y * y) / 8.0)

    def rho(p: Point) -> complex:
        x, y = p
        return complex(-x * x * y / 2.0, (5.0 * x ** 3 - 3.0 * x * y * y) / 16.0)

    return mu, nu, rho


# =============================================================================
# ÇIKARIM
# =============================================================================

def memoize_family(family: Family) -> Family:
    """ε ↦ yapı çağrılarını önbelleğe alır; şablon ε değerleri noktalar arasında ortaktır."""
    if hasattr(family, "cache_info"):
        return family
    return functools.lru_cache(maxsize=None)(family)


def _samples(family: Family, point: Point, delta: float) -> np.ndarray:
    return np.array([
        complex(family(float(k * delta)).spectral_lambda(point, with_derivatives=False).lam)
        for k in OFFSETS
    ])


def _stencil(samples: np.ndarray, weights: np.ndarray, delta: float, power: int) -> complex:
    return complex(weights @ samples) / delta ** power


def jet_coefficients(family: Family, point: Point, order: int = 3, step: Optional[float] = None,
                     settings: Optional[Settings] = None) -> Tuple[complex, ...]:
    """
    (λ⁰, μ, ν, ρ)[:order + 1] tek noktada.

    Raises:
        StencilError: δ < JET_MIN_STEP
        EllipticityError: bir ε örneği noktada eliptik değil
    """
    settings = settings or get_settings()
    delta = settings.JET_STEP if step is None else step
    if delta < settings.JET_MIN_STEP:
        raise StencilError(point=(float(point[0]), float(point[1])), step=delta)

    coarse = _samples(family, point, delta)
    fine = _samples(family, point, delta / 2.0)
    lam0 = fine[3]
    out = [lam0]
    if order >= 1:
        d_c, d_f = _stencil(coarse, FIRST, delta, 1), _stencil(fine, FIRST, delta / 2.0, 1)
        out.append((64.0 * d_f - d_c) / 63.0)
    if order >= 2:
        d_c, d_f = _stencil(coarse, SECOND, delta, 2), _stencil(fine, SECOND, delta / 2.0, 2)
        out.append((64.0 * d_f - d_c) / 63.0 / 2.0)
    if order >= 3:
        d_c, d_f = _stencil(coarse, THIRD, delta, 3), _stencil(fine, THIRD, delta / 2.0, 3)
        out.append((16.0 * d_f - d_c) / 15.0 / 6.0)
    return tuple(out)


@dataclass(frozen=True)
class JetData:
    """
    Çıkarılmış jetler. mu/nu/rho alan olarak herhangi bir noktada
    değerlendirilebilir; values çıkarım noktasındaki değerlerdir.
    """
    family: Family
    point: Tuple[float, float]
    order: int
    step: float
    values: Tuple[complex, ...]
    # nokta -> (λ⁰, μ, ν, ρ); mu/nu/rho aynı örneklerden okunur
    _cache: Dict[Tuple[float, float], Tuple[complex, ...]] = field(default_factory=dict, compare=False, repr=False)

    def coefficients_at(self, p: Point) -> Tuple[complex, ...]:
        key = (float(p[0]), float(p[1]))
        if key not in self._cache:
            self._cache[key] = jet_coefficients(self.family, key, 3, self.step)
        return self._cache[key]

    def _field(self, index: int) -> JetField:
        return lambda p: self.coefficients_at(p)[index]

    @property
    def lam0(self) -> complex:
        return self.values[0]

    @property
    def mu(self) -> JetField:
        return self._field(1)

    @property
    def nu(self) -> JetField:
        return self._field(2)

    @property
    def rho(self) -> JetField:
        return self._field(3)

    @property
    def samples(self) -> List[float]:
        return [float(k * self.step) for k in OFFSETS] + [float(k * self.step / 2.0) for k in OFFSETS]

    def to_dict(self) -> Dict[str, Any]:
        names = ("lambda0", "mu", "nu", "rho")
        return {
            "point": list(self.point),
            "step": self.step,
            **{names[k]: [v.real, v.imag] for k, v in enumerate(self.values)},
        }


def extract_jets(family: Family, point: Point, order: int = 3, eps_step: Optional[float] = None,
                 settings: Optional[Settings] = None) -> JetData:
    settings = settings or get_settings()
    step = settings.JET_STEP if eps_step is None else eps_step
    family = memoize_family(family)
    values = jet_coefficients(family, point, order, step, settings)
    logger.debug(f"[JETS] extracted order {order} at {point}: mu={values[1] if order >= 1 else None}")
    return JetData(
        family=family, point=(float(point[0]), float(point[1])), order=order, step=step, values=values
    )


# =============================================================================
# DOĞRULAMA
# =============================================================================

def _partials(field: JetField, point: Point, h: float) -> Tuple[complex, complex]:
    x, y = point
    fx = sum(c * field((x + k * h, y)) for c, k in zip(SPATIAL, range(-2, 3)) if c != 0.0) / h
    fy = sum(c * field((x, y + k * h)) for c, k in zip(SPATIAL, range(-2, 3)) if c != 0.0) / h
    return complex(fx), complex(fy)


def _step(step: Optional[float]) -> float:
    return get_settings().JET_FD_STEP if step is None else step


def check_first_jet(mu: JetField, point: Point, step: Optional[float] = None) -> complex:
    """μ_x + i μ_y."""
    mu_x, mu_y = _partials(mu, point, _step(step))
    return mu_x + 1j * mu_y


def check_second_jet(mu: JetField, nu: JetField, point: Point, step: Optional[float] = None) -> complex:
    """(ν_x + i ν_y) + μ μ_y."""
    h = _step(step)
    _, mu_y = _partials(mu, point, h)
    nu_x, nu_y = _partials(nu, point, h)
    return nu_x + 1j * nu_y + mu(point) * mu_y


def check_third_jet(mu: JetField, nu: JetField, rho: JetField, point: Point,
                    step: Optional[float] = None) -> complex:
    """(ρ_x + i ρ_y) + (μ ν_y + ν μ_y)."""
    h = _step(step)
    _, mu_y = _partials(mu, point, h)
    _, nu_y = _partials(nu, point, h)
    rho_x, rho_y = _partials(rho, point, h)
    return rho_x + 1j * rho_y + (mu(point) * nu_y + nu(point) * mu_y)


@dataclass(frozen=True)
class JetCheckRow:
    x: float
    y: float
    first: float
    second: float
    third: float

    def to_dict(self) -> Dict[str, float]:
        return {"x": self.x, "y": self.y, "first": self.first, "second": self.second, "third": self.third}


def check_hierarchy(family: Family, points: Sequence[Point], eps_step: Optional[float] = None,
                    fd_step: Optional[float] = None) -> List[JetCheckRow]:
    """Izgara noktalarında üç jet denkleminin artık modülleri."""
    rows = []
    family = memoize_family(family)
    for point in points:
        jets = extract_jets(family, point, 3, eps_step)
        rows.append(JetCheckRow(
            x=float(point[0]),
            y=float(point[1]),
            first=abs(check_first_jet(jets.mu, point, fd_step)),
            second=abs(check_second_jet(jets.mu, jets.nu, point, fd_step)),
            third=abs(check_third_jet(jets.mu, jets.nu, jets.rho, point, fd_step)),
        ))
    worst = max((max(r.first, r.second, r.third) for r in rows), default=0.0)
    logger.info(f"[JETS] checked {len(rows)} points, worst residual={worst:.3e}")
    return rows
