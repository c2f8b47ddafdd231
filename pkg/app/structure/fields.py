"""
Varel - Skaler Alanlar
======================

Düzlemde tanımlı reel alan + türev sağlayıcısı. Analitik kısmi türevler
verilmişse onlar kullanılır; verilmemişse merkezi fark yedeği devreye girer
(adım = FD_STEP · DOMAIN_SCALE, hata modeli O(h²)).

Alanlar arası +, −, ×, ÷ türevleri çarpım/bölüm kuralıyla taşır; böylece
kesit çarpımları ve ağırlık ölçeklemeleri analitik kalır.

Kullanım:
    from app.structure.fields import ScalarField

    f = ScalarField.from_expression("x^2 + y^2")
    f.derivative("xx", 0.0, 0.0)  # 2.0
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping, Optional

import numpy as np

from app.config import Settings, get_settings
from app.core.exceptions import MissingDerivativeError
from app.core.types import RealLike
from app.structure.expressions import Expression, check_bound, parse_expression

logger = logging.getLogger(__name__)

FieldFn = Callable[[RealLike, RealLike], RealLike]

FIRST_ORDERS = ("x", "y")
SECOND_ORDERS = ("xx", "xy", "yy")
ORDERS = FIRST_ORDERS + SECOND_ORDERS


def _broadcast(value: RealLike, x: RealLike, y: RealLike) -> RealLike:
    if np.ndim(x) or np.ndim(y):
        return value + np.zeros(np.broadcast(x, y).shape)
    return value


@dataclass(frozen=True)
class ScalarField:
    """
    Reel değerli alan ve kısmi türevleri.

    Attributes:
        value: (x, y) -> değer
        partials: "x", "y", "xx", "xy", "yy" anahtarlı analitik türevler
        name: Loglar için ad
        settings: FD adımları için ayarlar (None: global ayarlar)
        scale: tanım kümesi ölçeği; FD adımları bununla çarpılır
    """

    value: FieldFn
    partials: Mapping[str, FieldFn] = field(default_factory=dict)
    name: str = "field"
    settings: Optional[Settings] = None
    scale: float = 1.0

    # ---- değerlendirme ---------------------------------------------------

    def __call__(self, x: RealLike, y: RealLike) -> RealLike:
        return _broadcast(self.value(x, y), x, y)

    def has_analytic(self, order: str) -> bool:
        return order in self.partials

    def derivative(self, order: str, x: RealLike, y: RealLike) -> RealLike:
        """
        Kısmi türev. order ∈ {"", "x", "y", "xx", "xy", "yy"}.

        Raises:
            MissingDerivativeError: Desteklenmeyen mertebe
        """
        if order == "":
            return self(x, y)
        if order not in ORDERS:
            raise MissingDerivativeError(f"{self.name}: unsupported partial '{order}'")
        if order in self.partials:
            return _broadcast(self.partials[order](x, y), x, y)
        return self._finite_difference(order, x, y)

    def _finite_difference(self, order: str, x: RealLike, y: RealLike) -> RealLike:
        settings = self.settings or get_settings()
        if order in FIRST_ORDERS:
            h = settings.first_step() * self.scale
            if order == "x":
                return (self(x + h, y) - self(x - h, y)) / (2.0 * h)
            return (self(x, y + h) - self(x, y - h)) / (2.0 * h)

        # İkinci mertebe: analitik birinci türev varsa onu farkla
        first, second = order[0], order[1]
        if second in self.partials:
            h = settings.first_step() * self.scale
            g = self.partials[second]
            if first == "x":
                return (g(x + h, y) - g(x - h, y)) / (2.0 * h) + 0.0 * x
            return (g(x, y + h) - g(x, y - h)) / (2.0 * h) + 0.0 * x
        if first in self.partials and order == "xy":
            h = settings.first_step() * self.scale
            g = self.partials["x"]
            return (g(x, y + h) - g(x, y - h)) / (2.0 * h) + 0.0 * x

        h = settings.second_step() * self.scale
        if order == "xx":
            return (self(x + h, y) - 2.0 * self(x, y) + self(x - h, y)) / (h * h)
        if order == "yy":
            return (self(x, y + h) - 2.0 * self(x, y) + self(x, y - h)) / (h * h)
        return (
            self(x + h, y + h) - self(x + h, y - h) - self(x - h, y + h) + self(x - h, y - h)
        ) / (4.0 * h * h)

    def gradient(self, x: RealLike, y: RealLike) -> tuple:
        return self.derivative("x", x, y), self.derivative("y", x, y)

    # ---- kurucular -------------------------------------------------------

    @classmethod
    def constant(cls, c: float, name: str = "") -> "ScalarField":
        zero: FieldFn = lambda x, y: 0.0  # noqa: E731
        return cls(
            value=lambda x, y: c,
            partials={order: zero for order in ORDERS},
            name=name or f"const({c})",
        )

    @classmethod
    def coordinate(cls, axis: str) -> "ScalarField":
        """x veya y koordinat fonksiyonu."""
        zero: FieldFn = lambda x, y: 0.0  # noqa: E731
        one: FieldFn = lambda x, y: 1.0  # noqa: E731
        if axis == "x":
            return cls(lambda x, y: x, {"x": one, "y": zero, "xx": zero, "xy": zero, "yy": zero}, name="x")
        return cls(lambda x, y: y, {"x": zero, "y": one, "xx": zero, "xy": zero, "yy": zero}, name="y")

    @classmethod
    def from_expression(
        cls,
        text: str,
        params: Optional[Mapping[str, float]] = None,
        settings: Optional[Settings] = None,
    ) -> "ScalarField":
        """İfadeden alan; türevler sembolik olarak ikinci mertebeye kadar hazırlanır."""
        tree = parse_expression(text)
        return cls.from_tree(tree, params=params, name=text, settings=settings)

    @classmethod
    def from_tree(
        cls,
        tree: Expression,
        params: Optional[Mapping[str, float]] = None,
        name: str = "",
        settings: Optional[Settings] = None,
    ) -> "ScalarField":
        bound = dict(params or {})
        check_bound(tree, bound, name)

        def compile_tree(node: Expression) -> FieldFn:
            return lambda x, y: node.evaluate({**bound, "x": x, "y": y})

        dx, dy = tree.diff("x"), tree.diff("y")
        trees: Dict[str, Expression] = {
            "x": dx,
            "y": dy,
            "xx": dx.diff("x"),
            "xy": dx.diff("y"),
            "yy": dy.diff("y"),
        }
        return cls(
            value=compile_tree(tree),
            partials={order: compile_tree(node) for order, node in trees.items()},
            name=name or str(tree),
            settings=settings,
        )

    # ---- aritmetik (türev taşıyarak) ------------------------------------

    def _coerce(self, other: "ScalarField | float") -> "ScalarField":
        if isinstance(other, ScalarField):
            return other
        return ScalarField.constant(float(other))

    def __add__(self, other: "ScalarField | float") -> "ScalarField":
        g = self._coerce(other)
        return ScalarField(
            value=lambda x, y: self(x, y) + g(x, y),
            partials={o: (lambda o: lambda x, y: self.derivative(o, x, y) + g.derivative(o, x, y))(o) for o in ORDERS},
            name=f"({self.name} + {g.name})",
            settings=self.settings,
            scale=self.scale,
        )

    __radd__ = __add__

    def __neg__(self) -> "ScalarField":
        return ScalarField(
            value=lambda x, y: -self(x, y),
            partials={o: (lambda o: lambda x, y: -self.derivative(o, x, y))(o) for o in ORDERS},
            name=f"-{self.name}",
            settings=self.settings,
            scale=self.scale,
        )

    def __sub__(self, other: "ScalarField | float") -> "ScalarField":
        return self + (-self._coerce(other))

    def __rsub__(self, other: float) -> "ScalarField":
        return self._coerce(other) + (-self)

    def __mul__(self, other: "ScalarField | float") -> "ScalarField":
        g = self._coerce(other)
        f = self

        def d(order: str) -> FieldFn:
            if order in FIRST_ORDERS:
                return lambda x, y: f.derivative(order, x, y) * g(x, y) + f(x, y) * g.derivative(order, x, y)
            a, b = order[0], order[1]
            # (fg)_ab = f_ab g + f_a g_b + f_b g_a + f g_ab
            return lambda x, y: (
                f.derivative(order, x, y) * g(x, y)
                + f.derivative(a, x, y) * g.derivative(b, x, y)
                + f.derivative(b, x, y) * g.derivative(a, x, y)
                + f(x, y) * g.derivative(order, x, y)
            )

        return ScalarField(
            value=lambda x, y: f(x, y) * g(x, y),
            partials={o: d(o) for o in ORDERS},
            name=f"{f.name}*{g.name}",
            settings=self.settings,
            scale=self.scale,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "ScalarField":
        """1/g; r_a = −g_a/g², r_ab = −g_ab/g² + 2 g_a g_b/g³."""
        g = self

        def d(order: str) -> FieldFn:
            if order in FIRST_ORDERS:
                return lambda x, y: -g.derivative(order, x, y) / g(x, y) ** 2
            a, b = order[0], order[1]
            return lambda x, y: (
                -g.derivative(order, x, y) / g(x, y) ** 2
                + 2.0 * g.derivative(a, x, y) * g.derivative(b, x, y) / g(x, y) ** 3
            )

        return ScalarField(
            value=lambda x, y: 1.0 / g(x, y),
            partials={o: d(o) for o in ORDERS},
            name=f"1/{g.name}",
            settings=self.settings,
            scale=self.scale,
        )

    def __truediv__(self, other: "ScalarField | float") -> "ScalarField":
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other: float) -> "ScalarField":
        return self._coerce(other) * self.reciprocal()
