"""
Varel - Ortak Tip Tanımları
===========================

Paketler arası paylaşılan tip takma adları, rejim, taşıma ve alan kuralı
enum'ları,
selftest rapor kayıtları.

Kullanım:
    from app.core.types import Point, RealLike, Regime

    def delta(alpha: RealLike, beta: RealLike) -> RealLike:
        return 4 * alpha - beta**2
"""

from enum import Enum
from typing import Dict, Tuple, Union

import numpy as np
from typing_extensions import TypedDict

# ============================================================================
# SAYISAL TİPLER
# ============================================================================

# Tüm alan değerlendiricileri skaler veya numpy dizisi kabul eder
RealLike = Union[float, np.ndarray]
Point = Tuple[RealLike, RealLike]


class Regime(str, Enum):
    """Fiber rejimi (Δ = 4α − β² işaretine göre)."""
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


class Transport(str, Enum):
    """Hareketli fiberden ζ fiberine taşıma kuralı."""
    COEFFICIENTWISE = "coefficientwise"
    EMBEDDED = "embedded"


class AreaRule(str, Enum):
    """Alan integrali kuralı: ζ merkezli polar, yama + hücreler veya bölgeye göre seçim."""
    POLAR = "polar"
    CELLS = "cells"
    AUTO = "auto"


# ============================================================================
# RAPOR TİPLERİ
# ============================================================================

class CheckRecord(TypedDict):
    """Selftest tek kontrol kaydı."""
    name: str
    module: str
    passed: bool
    value: float
    tolerance: float


class RunSummary(TypedDict):
    """Selftest özet kaydı."""
    total: int
    passed: int
    failed: int
    by_module: Dict[str, Dict[str, int]]
