"""
Varel - Kuadratür Kuralları
===========================

Gauss–Legendre düğümleri (numpy.polynomial.legendre.leggauss), bileşik
kurallar ve periyodik trapez kuralı.

Kullanım:
    from app.integral.quadrature import composite_gauss

    nodes, weights = composite_gauss(0.0, 1.0, panels=4, order=8)
    approx = weights @ np.sin(nodes)
"""

from functools import lru_cache
from typing import Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from app.core.exceptions import QuadratureError


@lru_cache(maxsize=64)
def gauss_legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """[-1, 1] üzerinde order noktalı Gauss–Legendre (önbellekli)."""
    if order < 1:
        raise QuadratureError(f"gauss order must be >= 1, got {order}")
    nodes, weights = leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def composite_gauss(a: float, b: float, panels: int, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    [a, b] aralığını eşit panellere böler; her panelde order noktalı kural.

    a > b ise ağırlıklar negatif olur (yönlü integral).
    """
    if panels < 1:
        raise QuadratureError(f"panel count must be >= 1, got {panels}")
    ref_nodes, ref_weights = gauss_legendre(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * ref_nodes[None, :]).ravel()
    weights = (half[:, None] * ref_weights[None, :]).ravel()
    return nodes, weights


def composite_gauss_unit(panels: int, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """[0, 1] üzerinde bileşik kural (ölçeklenebilir düğümler)."""
    return composite_gauss(0.0, 1.0, panels, order)


def periodic_trapezoid(n: int, period: float = 2.0 * np.pi) -> Tuple[np.ndarray, float]:
    """Periyodik trapez: n eşit aralıklı düğüm ve sabit ağırlık."""
    if n < 1:
        raise QuadratureError(f"sample count must be >= 1, got {n}")
    return np.arange(n) * (period / n), period / n


def graded_gauss(a: float, b: float, panels: int, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    [a, b] üzerinde x = a + (b − a)·φ(s), φ(s) = 3s² − 2s³ eşlemeli bileşik
    Gauss. φ′ uçlarda sıfırlandığından √(x − a) tipi uç davranışı s'de
    düzgünleşir (kiriş ve dikey teğet uçları için).
    """
    s, ws = composite_gauss_unit(panels, order)
    nodes = a + (b - a) * (3.0 * s ** 2 - 2.0 * s ** 3)
    weights = (b - a) * 6.0 * s * (1.0 - s) * ws
    return nodes, weights
