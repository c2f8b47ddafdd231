"""
Varel - Kesitler ve Ağırlıklar
==============================

Cebir değerli kesit f = u + v·i, bileşen alanları (u, v) ve türev
sağlayıcılarıyla. Kesit çarpımı fiber çarpımıdır; katsayı alanları
(α, β) yapıdan alındığı için türevler çarpım kuralıyla analitik kalır.

Kullanım:
    from app.calculus.sections import Section, Weight

    f = Section.from_expressions("x*y", "x+y")
    g = f.product(f, structure)
    psi = Weight(family.weight_field())
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from app.algebra.fiber import AlgebraElement
from app.config import Settings
from app.core.exceptions import DomainError
from app.core.types import Point, RealLike
from app.structure.fields import ScalarField
from app.structure.structure_field import StructureField

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Section:
    """
    f = u + v·i.

    Attributes:
        u: skaler kısım alanı
        v: i katsayısı alanı
        name: loglar için ad
    """

    u: ScalarField
    v: ScalarField
    name: str = "f"

    @classmethod
    def from_expressions(
        cls,
        u: str,
        v: str,
        params: Optional[Mapping[str, float]] = None,
        settings: Optional[Settings] = None,
    ) -> "Section":
        return cls(
            u=ScalarField.from_expression(u, params, settings),
            v=ScalarField.from_expression(v, params, settings),
            name=f"({u}) + ({v})i",
        )

    @classmethod
    def constant(cls, c0: float, c1: float = 0.0) -> "Section":
        return cls(ScalarField.constant(c0), ScalarField.constant(c1), name=f"const({c0}, {c1})")

    @classmethod
    def generator(cls) -> "Section":
        """Üreteç kesiti i = (0, 1)."""
        return cls.constant(0.0, 1.0)

    def at(self, structure: StructureField, point: Point) -> AlgebraElement:
        """Noktadaki eleman (fiber katsayıları yapıdan)."""
        x, y = point
        coeffs = structure.coefficients(point)
        return AlgebraElement(self.u(x, y), self.v(x, y), coeffs)

    def first_partials(self, point: Point) -> tuple:
        x, y = point
        return (
            self.u.derivative("x", x, y),
            self.u.derivative("y", x, y),
            self.v.derivative("x", x, y),
            self.v.derivative("y", x, y),
        )

    def product(self, other: "Section", structure: StructureField) -> "Section":
        """
        Noktasal fiber çarpımı: (u₁u₂ − α v₁v₂, u₁v₂ + v₁u₂ − β v₁v₂).
        """
        alpha, beta = structure.evaluator.alpha, structure.evaluator.beta
        vv = self.v * other.v
        return Section(
            u=self.u * other.u - alpha * vv,
            v=self.u * other.v + self.v * other.u - beta * vv,
            name=f"({self.name})({other.name})",
        )

    def scaled(self, factor: ScalarField) -> "Section":
        """Reel skaler alanla çarpım."""
        return Section(u=self.u * factor, v=self.v * factor, name=f"{factor.name}*({self.name})")

    def __add__(self, other: "Section") -> "Section":
        return Section(u=self.u + other.u, v=self.v + other.v, name=f"{self.name} + {other.name}")

    @classmethod
    def gauge(cls, h: "Section | complex", psi: "Weight") -> "Section":
        """
        f = h/ψ; ∂_z̄ h = 0 ise D f = 0 (ψ ağırlık denklemini sağlıyorsa).
        Sayı verilirse a + b·1j sabit kesit a + b·i olarak okunur.
        """
        if not isinstance(h, Section):
            c = complex(h)
            h = cls.constant(c.real, c.imag)
        return h.scaled(psi.field.reciprocal())


@dataclass(frozen=True)
class Weight:
    """
    Sıfırlanmayan reel ağırlık ψ; ∂_z̄ψ = ½ i_y ψ denkleminin çözümü.
    """

    field: ScalarField
    name: str = "psi"

    def __call__(self, x: RealLike, y: RealLike) -> RealLike:
        value = self.field(x, y)
        if np.any(value == 0.0):
            raise DomainError((float(np.min(x)), float(np.min(y))), reason="weight vanishes")
        return value

    def as_section(self) -> Section:
        """ψ'yi v ≡ 0 kesiti olarak döndürür."""
        return Section(u=self.field, v=ScalarField.constant(0.0), name=self.name)

    def log_field(self) -> ScalarField:
        """φ = log ψ (yalnızca değer; türevler FD yedeğiyle)."""
        return ScalarField(value=lambda x, y: np.log(np.abs(self.field(x, y))), name=f"log {self.name}")
