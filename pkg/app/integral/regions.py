"""
Varel - Bölgeler
================

Cauchy–Pompeiu integralleri için pozitif yönlü, parçalı C¹ sınırlı
bölgeler: disk, eksenlere paralel dikdörtgen ve parametrik eğri listesiyle
verilen genel bölge (CurveRegion; çokgen ve elips kurucuları).

Her bölge sınır parçalarını t ∈ [0, 1] parametresiyle (nokta ve teğet),
iç nokta testini, sınıra uzaklığı ve ζ'dan çıkan ışınların sınıra
uzunluğunu R(θ) verir. Polar alan kuadratürü R(θ)'nın kırıklarını
angular_sectors ile öğrenir; R(θ) tanımsız olan (yıldız biçimli olmayan)
CurveRegion alanları yama + hücre kuralıyla integrallenir.

Kullanım:
    from app.integral.regions import Disk, signed_area

    region = Disk(center=(0.0, 0.0), radius=0.5)
    signed_area(region)   # ≈ π/4
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.core.exceptions import ConfigError
from app.integral.quadrature import composite_gauss_unit

CurveFn = Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]]

# parça uçları arasındaki en büyük izinli boşluk
CLOSURE_TOL = 1e-12


@dataclass(frozen=True)
class BoundarySegment:
    """
    Sınır parçası: point(t) ve tangent(t) (t ∈ [0, 1], dz/dt).
    """
    point: CurveFn
    tangent: CurveFn
    name: str = "segment"


# =============================================================================
# DİSK
# =============================================================================

@dataclass(frozen=True)
class Disk:
    center: Tuple[float, float]
    radius: float

    def __post_init__(self) -> None:
        if self.radius <= 0.0:
            raise ConfigError(f"disk radius must be positive, got {self.radius}")

    @property
    def kind(self) -> str:
        return "disk"

    def segments(self) -> List[BoundarySegment]:
        cx, cy = self.center
        r = self.radius
        two_pi = 2.0 * np.pi

        def point(t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
            return cx + r * np.cos(two_pi * t), cy + r * np.sin(two_pi * t)

        def tangent(t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
            return -two_pi * r * np.sin(two_pi * t), two_pi * r * np.cos(two_pi * t)

        return [BoundarySegment(point=point, tangent=tangent, name="circle")]

    def contains(self, point: Tuple[float, float]) -> bool:
        return self.distance_to_boundary(point) > 0.0

    def distance_to_boundary(self, point: Tuple[float, float]) -> float:
        """İç noktada pozitif, dışta negatif."""
        dx, dy = point[0] - self.center[0], point[1] - self.center[1]
        return float(self.radius - np.hypot(dx, dy))

    def radial_extent(self, zeta: Tuple[float, float], theta: np.ndarray) -> np.ndarray:
        """ζ + t·e(θ) ışınının çemberi kestiği t > 0."""
        dx, dy = zeta[0] - self.center[0], zeta[1] - self.center[1]
        proj = dx * np.cos(theta) + dy * np.sin(theta)
        return -proj + np.sqrt(proj ** 2 - (dx * dx + dy * dy) + self.radius ** 2)

    def angular_sectors(self, zeta: Tuple[float, float]) -> Optional[List[Tuple[float, float]]]:
        """R(θ) düzgün ve periyodik; sektör bölmesi gerekmez."""
        return None

    def bounding_box(self) -> Tuple[float, float, float, float]:
        cx, cy = self.center
        r = self.radius
        return (cx - r, cy - r, cx + r, cy + r)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "disk", "center": list(self.center), "radius": self.radius}


# =============================================================================
# DİKDÖRTGEN
# =============================================================================

@dataclass(frozen=True)
class Rectangle:
    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self) -> None:
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ConfigError(f"rectangle corners must satisfy x0 < x1, y0 < y1: {self.corners()}")

    @property
    def kind(self) -> str:
        return "rectangle"

    def corners(self) -> List[Tuple[float, float]]:
        """Saat yönünün tersine: sol alt, sağ alt, sağ üst, sol üst."""
        return [(self.x0, self.y0), (self.x1, self.y0), (self.x1, self.y1), (self.x0, self.y1)]

    def segments(self) -> List[BoundarySegment]:
        return _edges(self.corners())

    def contains(self, point: Tuple[float, float]) -> bool:
        return self.distance_to_boundary(point) > 0.0

    def distance_to_boundary(self, point: Tuple[float, float]) -> float:
        x, y = point
        return float(min(x - self.x0, self.x1 - x, y - self.y0, self.y1 - y))

    def radial_extent(self, zeta: Tuple[float, float], theta: np.ndarray) -> np.ndarray:
        """Işının dört kenardan ilk kestiği mesafe."""
        xi, eta = zeta
        c, s = np.cos(theta), np.sin(theta)
        with np.errstate(divide="ignore", invalid="ignore"):
            tx = np.where(c > 0, (self.x1 - xi) / c, np.where(c < 0, (self.x0 - xi) / c, np.inf))
            ty = np.where(s > 0, (self.y1 - eta) / s, np.where(s < 0, (self.y0 - eta) / s, np.inf))
        return np.minimum(tx, ty)

    def angular_sectors(self, zeta: Tuple[float, float]) -> List[Tuple[float, float]]:
        """Köşe açıları arasındaki dört sektör; her birinde R(θ) düzgün."""
        angles = sorted(float(np.arctan2(cy - zeta[1], cx - zeta[0])) for cx, cy in self.corners())
        angles.append(angles[0] + 2.0 * np.pi)
        return [(angles[k], angles[k + 1]) for k in range(4)]

    def bounding_box(self) -> Tuple[float, float, float, float]:
        return (self.x0, self.y0, self.x1, self.y1)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "rectangle", "corners": [[self.x0, self.y0], [self.x1, self.y1]]}


# =============================================================================
# GENEL EĞRİ BÖLGESİ
# =============================================================================

@dataclass(frozen=True)
class CurveRegion:
    """
    Parçalı C¹ parametrik sınır listesiyle tanımlı bölge (yıldız biçimli
    olması gerekmez). İç nokta testi sınırın çokgen yaklaşımı üzerinde
    dolanım sayısıyla yapılır.

    Attributes:
        boundary: pozitif yönlü, uç uca eklenmiş sınır parçaları
        name: loglar için ad
        samples_per_segment: çokgen yaklaşımında parça başına nokta
    """
    boundary: Tuple[BoundarySegment, ...]
    name: str = "curve"
    samples_per_segment: int = 256

    def __post_init__(self) -> None:
        if not self.boundary:
            raise ConfigError("curve region needs at least one boundary segment")
        object.__setattr__(self, "boundary", tuple(self.boundary))
        gap = closure_gap(self)
        if gap > CLOSURE_TOL:
            raise ConfigError(f"boundary of {self.name} is not closed (gap={gap:.3e})",
                              user_message="Bölge sınırı kapalı değil.")
        if signed_area(self) <= 0.0:
            raise ConfigError(f"boundary of {self.name} is not positively oriented",
                              user_message="Bölge sınırı saat yönünün tersine olmalı.")

    @property
    def kind(self) -> str:
        return "curve"

    @classmethod
    def polygon(cls, vertices: Sequence[Tuple[float, float]], name: str = "polygon") -> "CurveRegion":
        """Köşeleri saat yönünün tersine verilmiş basit çokgen."""
        if len(vertices) < 3:
            raise ConfigError(f"polygon needs at least 3 vertices, got {len(vertices)}")
        return cls(boundary=tuple(_edges([(float(x), float(y)) for x, y in vertices])), name=name)

    @classmethod
    def ellipse(cls, center: Tuple[float, float], semi_axes: Tuple[float, float], name: str = "ellipse") -> "CurveRegion":
        cx, cy = center
        a, b = semi_axes
        if a <= 0.0 or b <= 0.0:
            raise ConfigError(f"ellipse semi-axes must be positive, got {semi_axes}")
        two_pi = 2.0 * np.pi

        def point(t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
            return cx + a * np.cos(two_pi * t), cy + b * np.sin(two_pi * t)

        def tangent(t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
            return -two_pi * a * np.sin(two_pi * t), two_pi * b * np.cos(two_pi * t)

        return cls(boundary=(BoundarySegment(point=point, tangent=tangent, name="ellipse"),), name=name)

    def segments(self) -> List[BoundarySegment]:
        return list(self.boundary)

    @cached_property
    def polyline(self) -> Tuple[np.ndarray, np.ndarray]:
        """Kapalı çokgen yaklaşımı (son köşe tekrarlanmaz)."""
        t = np.linspace(0.0, 1.0, self.samples_per_segment, endpoint=False)
        xs, ys = [], []
        for seg in self.boundary:
            x, y = seg.point(t)
            xs.append(np.broadcast_to(x, t.shape))
            ys.append(np.broadcast_to(y, t.shape))
        return np.concatenate(xs), np.concatenate(ys)

    def winding_number(self, point: Tuple[float, float]) -> int:
        """Çokgen yaklaşımının point etrafındaki dolanım sayısı."""
        px, py = float(point[0]), float(point[1])
        xs, ys = self.polyline
        ax, ay = xs - px, ys - py
        bx, by = np.roll(ax, -1), np.roll(ay, -1)
        cross = ax * by - ay * bx
        upward = (ay <= 0.0) & (by > 0.0) & (cross > 0.0)
        downward = (ay > 0.0) & (by <= 0.0) & (cross < 0.0)
        return int(np.sum(upward) - np.sum(downward))

    def contains(self, point: Tuple[float, float]) -> bool:
        return self.winding_number(point) != 0

    def distance_to_boundary(self, point: Tuple[float, float]) -> float:
        """İç noktada pozitif, dışta negatif (çokgen yaklaşımına uzaklık)."""
        px, py = float(point[0]), float(point[1])
        xs, ys = self.polyline
        bx, by = np.roll(xs, -1), np.roll(ys, -1)
        ex, ey = bx - xs, by - ys
        length2 = np.maximum(ex * ex + ey * ey, np.finfo(float).tiny)
        s = np.clip(((px - xs) * ex + (py - ys) * ey) / length2, 0.0, 1.0)
        d = float(np.min(np.hypot(xs + s * ex - px, ys + s * ey - py)))
        return d if self.contains(point) else -d

    def bounding_box(self) -> Tuple[float, float, float, float]:
        xs, ys = self.polyline
        return (float(np.min(xs)), float(np.min(ys)), float(np.max(xs)), float(np.max(ys)))

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "name": self.name, "segments": [seg.name for seg in self.boundary]}


def _edges(vertices: Sequence[Tuple[float, float]]) -> List[BoundarySegment]:
    out = []
    n = len(vertices)
    for k in range(n):
        (ax, ay), (bx, by) = vertices[k], vertices[(k + 1) % n]

        def point(t: np.ndarray, ax=ax, ay=ay, bx=bx, by=by) -> Tuple[np.ndarray, np.ndarray]:
            t = np.asarray(t, dtype=float)
            return ax + (bx - ax) * t, ay + (by - ay) * t

        def tangent(t: np.ndarray, ax=ax, ay=ay, bx=bx, by=by) -> Tuple[np.ndarray, np.ndarray]:
            t = np.asarray(t, dtype=float)
            return np.full_like(t, bx - ax), np.full_like(t, by - ay)

        out.append(BoundarySegment(point=point, tangent=tangent, name=f"edge{k}"))
    return out


Region = Union[Disk, Rectangle, CurveRegion]


# =============================================================================
# DOĞRULAMA YARDIMCILARI
# =============================================================================

def signed_area(region: Region, panels: int = 8, order: int = 8) -> float:
    """½∮(x dy − y dx); pozitif yönlü sınır için pozitif."""
    t, w = composite_gauss_unit(panels, order)
    total = 0.0
    for seg in region.segments():
        x, y = seg.point(t)
        dx, dy = seg.tangent(t)
        total += 0.5 * float(w @ (x * dy - y * dx))
    return total


def closure_gap(region: Region) -> float:
    """Ardışık parçaların uç noktaları arasındaki en büyük boşluk."""
    segs = region.segments()
    start, end = np.array([0.0]), np.array([1.0])
    gap = 0.0
    for k, seg in enumerate(segs):
        nxt = segs[(k + 1) % len(segs)]
        ex, ey = seg.point(end)
        sx, sy = nxt.point(start)
        gap = max(gap, float(np.hypot(ex[0] - sx[0], ey[0] - sy[0])))
    return gap


def sample_grid(region: Region, n: int = 9) -> Tuple[np.ndarray, np.ndarray]:
    """Bölge içindeki düzenli örnek noktalar (rijitlik kapısı için)."""
    x0, y0, x1, y1 = region.bounding_box()
    xs, ys = np.meshgrid(np.linspace(x0, x1, n), np.linspace(y0, y1, n))
    xs, ys = xs.ravel(), ys.ravel()
    keep = np.array([region.distance_to_boundary((px, py)) >= 0.0 for px, py in zip(xs, ys)])
    return xs[keep], ys[keep]


def _required(data: Dict[str, Any], key: str) -> Any:
    value = data.get(key)
    if value is None:
        raise ConfigError(f"{data.get('kind')} region requires '{key}'")
    return value


def make_region(data: Dict[str, Any]) -> Region:
    """
    Yapılandırma sözlüğünden bölge:

        {"kind": "disk", "center": [..], "radius": r}
        {"kind": "rectangle", "corners": [[x0, y0], [x1, y1]]}
        {"kind": "polygon", "vertices": [[x, y], ...]}
        {"kind": "ellipse", "center": [..], "semi_axes": [a, b]}
    """
    kind = data.get("kind", "disk")
    if kind == "disk":
        cx, cy = data.get("center", (0.0, 0.0))
        return Disk(center=(float(cx), float(cy)), radius=float(data.get("radius", 0.5)))
    if kind == "rectangle":
        (x0, y0), (x1, y1) = _required(data, "corners")
        return Rectangle(float(x0), float(y0), float(x1), float(y1))
    if kind == "polygon":
        return CurveRegion.polygon([(float(x), float(y)) for x, y in _required(data, "vertices")])
    if kind == "ellipse":
        cx, cy = data.get("center", (0.0, 0.0))
        a, b = _required(data, "semi_axes")
        return CurveRegion.ellipse((float(cx), float(cy)), (float(a), float(b)))
    raise ConfigError(
        f"unknown region kind: {kind}",
        user_message="Bölge türü 'disk', 'rectangle', 'polygon' veya 'ellipse' olmalı.",
    )
