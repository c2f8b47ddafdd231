"""
Varel - Değişken Yapılı Cauchy–Pompeiu Gösterimi
================================================

Çekirdek Z(z, ζ) = (y − η) − i(z)(x − ξ), Cauchy 1-formu dz̃ = dy − i dx
ve rijit yapılarda

    f(ζ) = (2π j(ζ))⁻¹ ∮ f Z⁻¹ dz̃ − (π j(ζ))⁻¹ ∬ (D f) Z⁻¹ dA

gösteriminin sayısal değerlendirmesi. İntegrandlar hareketli fiberde
indirgenir, sonra ζ fiberine taşınır:

    coefficientwise  (u, v) bileşenleri reel olarak integrallenir
    embedded         A_z → ℂ (i ↦ λ(z)) gömmesiyle integrallenir, ζ'da geri alınır

Coefficientwise taşımada Stokes teoremi ek bir çerçeve terimi
−conj(f Z⁻¹)·i_y üretir; frame_correction=True bu terimi ekler.

Alan integrali iki kuralla alınır:

    polar   ζ merkezli polar koordinatlar; Z = r·(sin θ − i cos θ) olduğundan
            r·Z⁻¹ düzgündür (disk ve dikdörtgen, ışın uzunluğu bilinen bölgeler)
    cells   ζ çevresinde polar yama + kalan bölgede düşey şeritli tensör
            Gauss hücreleri (genel kapalı eğri bölgeler)

auto kuralı ışın uzunluğu bilinen bölgelerde polar, diğerlerinde cells seçer.

Kullanım:
    from app.integral.cauchy_pompeiu import reconstruct
    from app.integral.regions import Disk

    report = reconstruct(f, Disk((0.0, 0.0), 0.5), (0.0, 0.0), structure)
    print(report.residual)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.algebra.fiber import AlgebraElement, FiberCoefficients, conj, from_complex, j_element, norm
from app.calculus.cr import covariant_D, dbar
from app.calculus.sections import Section
from app.config import Settings
from app.core.exceptions import ConfigError, DomainError, QuadratureError, RigidityGateError
from app.core.types import AreaRule, Point, Transport
from app.integral.quadrature import composite_gauss, composite_gauss_unit, graded_gauss, periodic_trapezoid
from app.integral.regions import BoundarySegment, Rectangle, Region, sample_grid
from app.structure.fields import ScalarField
from app.structure.structure_field import StructureField

logger = logging.getLogger(__name__)

AreaIntegrand = Callable[[Point], AlgebraElement]

BISECT_ITERATIONS = 60


# =============================================================================
# MESH VE RAPORLAR
# =============================================================================

def parse_area_rule(rule: Union[AreaRule, str, None]) -> AreaRule:
    try:
        return AreaRule(rule or AreaRule.AUTO)
    except ValueError:
        raise ConfigError(
            f"unknown area rule: {rule}",
            user_message="Alan kuralı 'polar', 'cells' veya 'auto' olmalı.",
        )


@dataclass(frozen=True)
class QuadratureMesh:
    """
    Attributes:
        radial_panels: ışın başına radyal panel
        radial_order: panel başına Gauss düğümü
        angular_nodes: açısal düğüm (dikdörtgende sektörlere bölünür)
        boundary_panels: sınır parçası başına panel
        boundary_order: sınır paneli başına Gauss düğümü
        area_rule: alan kuralı (polar | cells | auto)
    """
    radial_panels: int = 4
    radial_order: int = 8
    angular_nodes: int = 64
    boundary_panels: int = 16
    boundary_order: int = 8
    area_rule: AreaRule = AreaRule.AUTO

    @classmethod
    def from_settings(cls, settings: Settings) -> "QuadratureMesh":
        panels = settings.CP_RADIAL_PANELS
        return cls(
            radial_panels=panels,
            radial_order=max(1, settings.CP_PATCH_NODES // panels),
            angular_nodes=settings.CP_ANGULAR_NODES,
            boundary_panels=settings.CP_BOUNDARY_PANELS,
            boundary_order=settings.GAUSS_ORDER,
            area_rule=parse_area_rule(settings.CP_AREA_RULE),
        )

    def refined(self) -> "QuadratureMesh":
        """Hücre boyutunu yarıya indirir."""
        return replace(
            self,
            radial_panels=2 * self.radial_panels,
            angular_nodes=2 * self.angular_nodes,
            boundary_panels=2 * self.boundary_panels,
        )

    def coarsened(self) -> "QuadratureMesh":
        return replace(
            self,
            radial_panels=max(1, self.radial_panels // 2),
            angular_nodes=max(4, self.angular_nodes // 2),
            boundary_panels=max(1, self.boundary_panels // 2),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "radial_panels": self.radial_panels,
            "radial_order": self.radial_order,
            "angular_nodes": self.angular_nodes,
            "boundary_panels": self.boundary_panels,
            "boundary_order": self.boundary_order,
            "area_rule": self.area_rule.value,
        }


@dataclass(frozen=True)
class QuadratureReport:
    """Integral değeri, kaba mesh ile farktan hata tahmini ve örnek sayısı."""
    value: AlgebraElement
    error_estimate: float
    samples: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": [float(self.value.u), float(self.value.v)],
            "error_estimate": self.error_estimate,
            "samples": self.samples,
        }


@dataclass(frozen=True)
class ReconstructionReport:
    boundary: QuadratureReport
    area: QuadratureReport
    frame: Optional[AlgebraElement]
    value: AlgebraElement
    truth: AlgebraElement
    residual: float
    transport: Transport
    mesh: QuadratureMesh

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "boundary": self.boundary.to_dict(),
            "area": self.area.to_dict(),
            "value": [float(self.value.u), float(self.value.v)],
            "truth": [float(self.truth.u), float(self.truth.v)],
            "residual": self.residual,
            "transport": self.transport.value,
            "mesh": self.mesh.to_dict(),
        }
        if self.frame is not None:
            out["frame"] = [float(self.frame.u), float(self.frame.v)]
        return out


@dataclass(frozen=True)
class ResidueRow:
    radius: float
    frozen: AlgebraElement
    variable: AlgebraElement
    target: AlgebraElement

    @property
    def error(self) -> float:
        return (self.variable - self.target).magnitude()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "radius": self.radius,
            "frozen": [float(self.frozen.u), float(self.frozen.v)],
            "variable": [float(self.variable.u), float(self.variable.v)],
            "error": self.error,
        }


@dataclass(frozen=True)
class CirculationReport:
    """Küçük kare çevresinde dolaşım ve alan öngörüsü (kare merkezinin fiberinde)."""
    circulation: AlgebraElement
    predicted: AlgebraElement
    side: float

    @property
    def gap(self) -> float:
        return (self.circulation - self.predicted).magnitude()


@dataclass(frozen=True)
class RefinementRow:
    level: int
    mesh: QuadratureMesh
    residual: float

    def to_dict(self) -> Dict[str, Any]:
        return {"level": self.level, "residual": self.residual, **self.mesh.to_dict()}


# =============================================================================
# ÇEKİRDEK
# =============================================================================

def kernel(structure: StructureField, point: Point, zeta: Point) -> AlgebraElement:
    """Z(z, ζ) z fiberinde."""
    x, y = point
    xi, eta = zeta
    coeffs = structure.coefficients(point)
    return AlgebraElement(y - eta + 0.0 * x, -(x - xi) + 0.0 * y, coeffs)


def kernel_section(zeta: Point) -> Section:
    """z ↦ Z(z, ζ) kesiti: u = y − η, v = −(x − ξ)."""
    xi, eta = zeta
    return Section(
        u=ScalarField.coordinate("y") - float(eta),
        v=-(ScalarField.coordinate("x") - float(xi)),
        name=f"Z(.,{zeta})",
    )


def kernel_inverse_section(structure: StructureField, zeta: Point) -> Section:
    """z ↦ Z(z, ζ)⁻¹; türevler FD yedeğiyle."""
    def component(which: int) -> ScalarField:
        def value(x, y):
            inv = kernel(structure, (x, y), zeta).inverse()
            return inv.u if which == 0 else inv.v
        return ScalarField(value=value, name=f"Zinv[{which}]", settings=structure.settings)

    return Section(u=component(0), v=component(1), name=f"Zinv(.,{zeta})")


def comparability_bracket(
    structure: StructureField,
    zeta: Point,
    r_inner: float,
    r_outer: float,
    n_radii: int = 8,
    n_angles: int = 64,
) -> Tuple[float, float]:
    """Halka üzerinde √N_z(Z) / |z − ζ| oranının (min, max) değerleri."""
    radii = np.linspace(r_inner, r_outer, n_radii)
    theta, _ = periodic_trapezoid(n_angles)
    rr, tt = np.meshgrid(radii, theta)
    xs = zeta[0] + rr * np.cos(tt)
    ys = zeta[1] + rr * np.sin(tt)
    structure.require_elliptic((xs, ys))
    ratio = np.sqrt(norm(kernel(structure, (xs, ys), zeta))) / rr
    return float(np.min(ratio)), float(np.max(ratio))


def kernel_dbar(structure: StructureField, zeta: Point, point: Point) -> Tuple[float, float]:
    """(|∂_z̄ Z|, |∂_z̄ Z⁻¹|) köşegen dışı bir noktada; rijitlikte ikisi de sıfır."""
    d = structure.generator_derivatives(point)
    dz_kernel = dbar(kernel_section(zeta), point, structure, d)
    dz_inverse = dbar(kernel_inverse_section(structure, zeta), point, structure, d)
    return dz_kernel.magnitude(), dz_inverse.magnitude()


# =============================================================================
# REZİDÜLER
# =============================================================================

def _circle(zeta: Point, radius: float, n_samples: int) -> Tuple[np.ndarray, float, np.ndarray, np.ndarray]:
    theta, weight = periodic_trapezoid(n_samples)
    return theta, weight, radius * np.cos(theta), radius * np.sin(theta)


def frozen_residue(structure: StructureField, zeta: Point, radius: float, n_samples: Optional[int] = None) -> AlgebraElement:
    """
    ∮ Z₀⁻¹ dz̃₀, i(ζ) sabit tutularak; trapez kuralıyla 2π j(ζ)'ya spektral yakınsar.
    """
    n = n_samples or structure.settings.RESIDUE_SAMPLES
    coeffs = structure.require_elliptic(zeta)
    _, weight, dx, dy = _circle(zeta, radius, n)
    z0 = AlgebraElement(dy, -dx, coeffs)
    dz0 = AlgebraElement(dx, dy, coeffs)
    integrand = z0.inverse() * dz0
    return AlgebraElement(float(weight * np.sum(integrand.u)), float(weight * np.sum(integrand.v)), coeffs)


def variable_residue(structure: StructureField, zeta: Point, radius: float, n_samples: Optional[int] = None) -> AlgebraElement:
    """
    ∮ Z⁻¹ dz̃ hareketli fiberde; bileşenler ζ fiberine coefficientwise taşınır.
    """
    n = n_samples or structure.settings.RESIDUE_SAMPLES
    coeffs_zeta = structure.require_elliptic(zeta)
    _, weight, dx, dy = _circle(zeta, radius, n)
    points = (zeta[0] + dx, zeta[1] + dy)
    coeffs = structure.require_elliptic(points)
    integrand = AlgebraElement(dy, -dx, coeffs).inverse() * AlgebraElement(dx, dy, coeffs)
    return AlgebraElement(float(weight * np.sum(integrand.u)), float(weight * np.sum(integrand.v)), coeffs_zeta)


def residue_table(
    structure: StructureField,
    zeta: Point,
    radii: Sequence[float],
    n_samples: Optional[int] = None,
) -> List[ResidueRow]:
    target = 2.0 * np.pi * j_element(structure.require_elliptic(zeta))
    rows = []
    for r in radii:
        rows.append(ResidueRow(
            radius=float(r),
            frozen=frozen_residue(structure, zeta, r, n_samples),
            variable=variable_residue(structure, zeta, r, n_samples),
            target=target,
        ))
    return rows


def empirical_rate(radii: Sequence[float], errors: Sequence[float], floor: float = 1e-14) -> float:
    """log(hata) ~ p·log(r) eğimi; yuvarlama tabanındaki noktalar atlanır."""
    pairs = [(r, e) for r, e in zip(radii, errors) if e > floor]
    if len(pairs) < 2:
        return float("nan")
    r, e = np.array(pairs).T
    slope, _ = np.polyfit(np.log(r), np.log(e), 1)
    return float(slope)


# =============================================================================
# SINIR VE ALAN İNTEGRALLERİ
# =============================================================================

def _transport(integrand: AlgebraElement, weights: np.ndarray, coeffs_zeta: FiberCoefficients,
               transport: Transport) -> AlgebraElement:
    """Ağırlıklı toplamı ζ fiberinde birleştirir."""
    if transport is Transport.EMBEDDED:
        return from_complex(complex(weights @ integrand.to_complex()), coeffs_zeta)
    return AlgebraElement(float(weights @ integrand.u), float(weights @ integrand.v), coeffs_zeta)


def _require_interior(region: Region, zeta: Point, settings: Settings) -> None:
    if region.distance_to_boundary(zeta) <= settings.TOL_BOUNDARY:
        raise DomainError((float(zeta[0]), float(zeta[1])), reason="zeta on or outside the region boundary")


def boundary_integral(
    f: Section,
    region: Region,
    zeta: Point,
    structure: StructureField,
    mesh: Optional[QuadratureMesh] = None,
    transport: Transport = Transport.COEFFICIENTWISE,
) -> AlgebraElement:
    """
    ∮ f Z⁻¹ dz̃; dz̃ = (y′, −x′) dt hareketli fiberde, parça başına bileşik Gauss.
    """
    settings = structure.settings
    mesh = mesh or QuadratureMesh.from_settings(settings)
    _require_interior(region, zeta, settings)
    coeffs_zeta = structure.require_elliptic(zeta)
    t, w = composite_gauss_unit(mesh.boundary_panels, mesh.boundary_order)

    total = AlgebraElement(0.0, 0.0, coeffs_zeta)
    for seg in region.segments():
        px, py = seg.point(t)
        tx, ty = seg.tangent(t)
        coeffs = structure.require_elliptic((px, py))
        z = AlgebraElement(py - zeta[1], -(px - zeta[0]), coeffs)
        dz_tilde = AlgebraElement(ty, -tx, coeffs)
        integrand = f.at(structure, (px, py)).in_fiber(coeffs) * z.inverse() * dz_tilde
        total = total + _transport(integrand, w, coeffs_zeta, transport)
    return total


# =============================================================================
# ALAN DÜĞÜMLERİ
# =============================================================================

@dataclass(frozen=True)
class AreaNodes:
    """
    Alan kuadratürü düğümleri. Integrand g·K⁻¹·w olarak toplanır; K çekirdek
    taşıyıcısıdır: polar düğümlerde K = Z/r = sin θ − i cos θ (r Jacobian'ı
    yutulur), hücre düğümlerinde K = Z.
    """
    xs: np.ndarray
    ys: np.ndarray
    ku: np.ndarray
    kv: np.ndarray
    weights: np.ndarray
    rule: AreaRule
    patch_radius: float = float("nan")

    @property
    def count(self) -> int:
        return int(self.weights.size)

    @classmethod
    def concatenate(cls, parts: Sequence["AreaNodes"], rule: AreaRule, patch_radius: float) -> "AreaNodes":
        def join(name: str) -> np.ndarray:
            return np.concatenate([getattr(p, name) for p in parts])

        return cls(join("xs"), join("ys"), join("ku"), join("kv"), join("weights"), rule, patch_radius)


def resolve_area_rule(region: Region, rule: Union[AreaRule, str, None]) -> AreaRule:
    """AUTO: ışın uzunluğu R(θ) bilinen bölgelerde polar, diğerlerinde hücreler."""
    rule = parse_area_rule(rule)
    polar_capable = hasattr(region, "radial_extent")
    if rule is AreaRule.AUTO:
        return AreaRule.POLAR if polar_capable else AreaRule.CELLS
    if rule is AreaRule.POLAR and not polar_capable:
        raise QuadratureError(f"polar area rule needs ray extents; region kind '{region.kind}' has none")
    return rule


def area_nodes(region: Region, zeta: Point, mesh: QuadratureMesh) -> AreaNodes:
    """ζ için alan düğümleri (mesh.area_rule'a göre)."""
    if resolve_area_rule(region, mesh.area_rule) is AreaRule.POLAR:
        return _polar_nodes(region, zeta, mesh)
    return _cell_nodes(region, zeta, mesh)


def _polar_nodes(region: Region, zeta: Point, mesh: QuadratureMesh) -> AreaNodes:
    """
    ζ merkezli polar düğümler. Dönen ağırlıklar R(θ)·w_s·w_θ'dır; r Jacobian'ı
    r·Z⁻¹ = (sin θ − i cos θ)⁻¹ içinde yutulur.
    """
    s, ws = composite_gauss_unit(mesh.radial_panels, mesh.radial_order)
    sectors = region.angular_sectors(zeta)
    if sectors is None:
        theta, wt = periodic_trapezoid(mesh.angular_nodes)
        wt = np.full_like(theta, wt)
    else:
        per_sector = max(2, mesh.angular_nodes // len(sectors))
        parts = [composite_gauss(a, b, 1, per_sector) for a, b in sectors]
        theta = np.concatenate([p[0] for p in parts])
        wt = np.concatenate([p[1] for p in parts])

    extent = region.radial_extent(zeta, theta)
    if not np.all(np.isfinite(extent)) or np.any(extent <= 0.0):
        raise QuadratureError(f"ray extent undefined around zeta={zeta}")
    tt, ss = np.meshgrid(theta, s, indexing="ij")
    rr = extent[:, None] * ss
    weights = (wt * extent)[:, None] * ws[None, :]
    xs = zeta[0] + rr * np.cos(tt)
    ys = zeta[1] + rr * np.sin(tt)
    return AreaNodes(
        xs=xs.ravel(), ys=ys.ravel(), ku=np.sin(tt).ravel(), kv=-np.cos(tt).ravel(),
        weights=weights.ravel(), rule=AreaRule.POLAR,
    )


def _patch_nodes(zeta: Point, radius: float, mesh: QuadratureMesh) -> AreaNodes:
    """ζ çevresinde yarıçapı radius olan polar yama."""
    r, wr = composite_gauss(0.0, radius, mesh.radial_panels, mesh.radial_order)
    theta, wt = periodic_trapezoid(mesh.angular_nodes)
    tt, rr = np.meshgrid(theta, r, indexing="ij")
    weights = wt * np.broadcast_to(wr[None, :], rr.shape)
    return AreaNodes(
        xs=(zeta[0] + rr * np.cos(tt)).ravel(), ys=(zeta[1] + rr * np.sin(tt)).ravel(),
        ku=np.sin(tt).ravel(), kv=-np.cos(tt).ravel(), weights=weights.ravel(), rule=AreaRule.CELLS,
    )


def _bisect(fn: Callable[[float], float], a: float, b: float, iterations: int = BISECT_ITERATIONS) -> float:
    fa = fn(a)
    for _ in range(iterations):
        m = 0.5 * (a + b)
        fm = fn(m)
        if (fm > 0.0) == (fa > 0.0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _monotone_pieces(seg: BoundarySegment, samples: int = 256) -> List[Tuple[float, float]]:
    """
    Parçayı x(t)'nin monoton olduğu alt aralıklara böler. Dikey (x sabit)
    kısımlar atlanır; düşey şerit kuralı onları görmez.
    """
    t = np.linspace(0.0, 1.0, samples + 1)
    tx = np.broadcast_to(np.asarray(seg.tangent(t)[0], dtype=float), t.shape)
    scale = float(np.max(np.abs(tx)))
    if scale == 0.0:
        return []
    sign = np.where(np.abs(tx) <= 1e-12 * scale, 0.0, np.sign(tx))

    def tangent_x(s: float) -> float:
        return float(np.ravel(seg.tangent(np.array([s]))[0])[0])

    cuts = [0.0]
    for k in range(samples):
        a, b = sign[k], sign[k + 1]
        if a != 0.0 and b != 0.0 and a != b:
            cuts.append(_bisect(tangent_x, float(t[k]), float(t[k + 1])))
        elif b == 0.0 and k + 1 < samples:
            cuts.append(float(t[k + 1]))
    cuts.append(1.0)

    pieces = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b <= a:
            continue
        xa, xb = np.ravel(seg.point(np.array([a, b]))[0])
        if abs(xb - xa) > 1e-14 * max(1.0, scale):
            pieces.append((a, b))
    return pieces


def _invert_monotone(seg: BoundarySegment, ta: float, tb: float, targets: np.ndarray,
                     increasing: bool) -> np.ndarray:
    """x(t) = target çözümleri (vektörel ikiye bölme)."""
    lo = np.full_like(targets, ta)
    hi = np.full_like(targets, tb)
    for _ in range(BISECT_ITERATIONS):
        mid = 0.5 * (lo + hi)
        xm = np.broadcast_to(np.asarray(seg.point(mid)[0], dtype=float), mid.shape)
        below = xm < targets if increasing else xm > targets
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def _strip_nodes(region: Region, zeta: Point, radius: float, cell: float, order: int) -> AreaNodes:
    """
    Bölge eksi ζ yaması üzerinde tensör Gauss hücreleri: x yönünde kırık
    noktaları (monoton parça uçları ve ξ ± ρ) arasında dereceli Gauss, her
    düşey doğruda sınır kesişimlerinden çift-tek eşlemeyle y aralıkları.
    """
    xi, eta = float(zeta[0]), float(zeta[1])
    pieces = [(seg, a, b) for seg in region.segments() for a, b in _monotone_pieces(seg)]
    if not pieces:
        raise QuadratureError(f"region '{region.kind}' has no boundary pieces crossing vertical lines")

    ends = []
    for seg, a, b in pieces:
        xa, xb = np.ravel(seg.point(np.array([a, b]))[0])
        ends.append((float(xa), float(xb)))
    x_lo = min(min(e) for e in ends)
    x_hi = max(max(e) for e in ends)
    breaks = sorted({x for e in ends for x in e} | {xi - radius, xi + radius})
    tiny = 1e-12 * (x_hi - x_lo)

    xs_parts, wx_parts = [], []
    for a, b in zip(breaks[:-1], breaks[1:]):
        if b - a <= tiny or b <= x_lo or a >= x_hi:
            continue
        panels = max(1, int(np.ceil((b - a) / cell)))
        nodes, weights = graded_gauss(a, b, panels, order)
        xs_parts.append(nodes)
        wx_parts.append(weights)
    X = np.concatenate(xs_parts)
    WX = np.concatenate(wx_parts)

    idx_parts, y_parts = [], []
    for (seg, a, b), (xa, xb) in zip(pieces, ends):
        sel = np.nonzero((X > min(xa, xb)) & (X < max(xa, xb)))[0]
        if sel.size == 0:
            continue
        t = _invert_monotone(seg, a, b, X[sel], increasing=xb > xa)
        idx_parts.append(sel)
        y_parts.append(np.broadcast_to(np.asarray(seg.point(t)[1], dtype=float), sel.shape))
    idx = np.concatenate(idx_parts)
    yc = np.concatenate(y_parts)
    ordering = np.lexsort((yc, idx))
    idx, yc = idx[ordering], yc[ordering]
    bounds = np.searchsorted(idx, np.arange(X.size + 1))

    out_x, out_y, out_w = [], [], []
    for k in range(X.size):
        crossings = yc[bounds[k]:bounds[k + 1]]
        if crossings.size % 2:
            raise QuadratureError(f"odd number of boundary crossings at x={X[k]:.6g}")
        intervals = list(zip(crossings[0::2], crossings[1::2]))
        dx = X[k] - xi
        if abs(dx) < radius:
            chord = float(np.sqrt(radius * radius - dx * dx))
            intervals = [
                piece
                for lo, hi in intervals
                for piece in ((lo, min(hi, eta - chord)), (max(lo, eta + chord), hi))
            ]
        for lo, hi in intervals:
            if hi <= lo:
                continue
            panels = max(1, int(np.ceil((hi - lo) / cell)))
            yn, wy = composite_gauss(float(lo), float(hi), panels, order)
            out_x.append(np.full_like(yn, X[k]))
            out_y.append(yn)
            out_w.append(WX[k] * wy)

    xs, ys = np.concatenate(out_x), np.concatenate(out_y)
    return AreaNodes(xs=xs, ys=ys, ku=ys - eta, kv=-(xs - xi), weights=np.concatenate(out_w), rule=AreaRule.CELLS)


def _cell_nodes(region: Region, zeta: Point, mesh: QuadratureMesh) -> AreaNodes:
    """
    Yama + hücre kuralı. Hücre boyu h = kutu kenarı / (4·radial_panels);
    yama yarıçapı ρ = min(2h, sınır uzaklığının yarısı), hücreler ≤ min(h, ρ/2).
    """
    x0, y0, x1, y1 = region.bounding_box()
    h = max(x1 - x0, y1 - y0) / (4.0 * mesh.radial_panels)
    radius = min(2.0 * h, 0.5 * region.distance_to_boundary(zeta))
    cell = min(h, 0.5 * radius)
    patch = _patch_nodes(zeta, radius, mesh)
    strips = _strip_nodes(region, zeta, radius, cell, mesh.radial_order)
    logger.debug(f"[CP] cell rule: rho={radius:.3e} cell={cell:.3e} nodes={patch.count}+{strips.count}")
    return AreaNodes.concatenate([patch, strips], AreaRule.CELLS, radius)


def _area_sum(
    g: AreaIntegrand,
    nodes: AreaNodes,
    zeta: Point,
    structure: StructureField,
    transport: Transport,
    conjugate: bool = False,
) -> AlgebraElement:
    coeffs_zeta = structure.require_elliptic(zeta)
    points = (nodes.xs, nodes.ys)
    coeffs = structure.require_elliptic(points)
    carrier_inverse = AlgebraElement(nodes.ku, nodes.kv, coeffs).inverse()
    integrand = g(points).in_fiber(coeffs) * carrier_inverse
    if conjugate:
        # çerçeve terimi conj(g Z⁻¹)·i_y
        integrand = conj(integrand) * structure.generator_derivatives(points).iy.in_fiber(coeffs)
    return _transport(integrand, nodes.weights, coeffs_zeta, transport)


def area_integral(
    g: AreaIntegrand,
    region: Region,
    zeta: Point,
    structure: StructureField,
    mesh: Optional[QuadratureMesh] = None,
    transport: Transport = Transport.COEFFICIENTWISE,
) -> AlgebraElement:
    """∬ g Z⁻¹ dA, ζ fiberinde."""
    settings = structure.settings
    _require_interior(region, zeta, settings)
    nodes = area_nodes(region, zeta, mesh or QuadratureMesh.from_settings(settings))
    return _area_sum(g, nodes, zeta, structure, transport)


# =============================================================================
# GÖSTERİM
# =============================================================================

def _rigidity_gate(structure: StructureField, region: Region, zeta: Point) -> None:
    xs, ys = sample_grid(region)
    xs, ys = np.append(xs, zeta[0]), np.append(ys, zeta[1])
    structure.require_elliptic((xs, ys))
    worst = structure.max_rigidity_residual(xs, ys)
    tol = structure.settings.TOL_RIGID * structure.evaluator.scale
    if worst > tol:
        logger.warning(f"[CP] rigidity gate refused {structure.name}: residual={worst:.3e} tol={tol:.1e}")
        raise RigidityGateError(residual=worst, tolerance=tol, where="Cauchy-Pompeiu reconstruction")


def _parse_transport(transport: Union[Transport, str, None], settings: Settings) -> Transport:
    try:
        return Transport(transport or settings.CP_TRANSPORT)
    except ValueError:
        raise ConfigError(
            f"unknown transport: {transport}",
            user_message="Taşıma kuralı 'coefficientwise' veya 'embedded' olmalı.",
        )


def _evaluate(
    f: Section,
    region: Region,
    zeta: Point,
    structure: StructureField,
    mesh: QuadratureMesh,
    transport: Transport,
    frame_correction: bool,
) -> Tuple[AlgebraElement, AlgebraElement, Optional[AlgebraElement], AlgebraElement, int]:
    coeffs_zeta = structure.require_elliptic(zeta)
    j = j_element(coeffs_zeta)
    boundary = boundary_integral(f, region, zeta, structure, mesh, transport)

    def df(point: Point) -> AlgebraElement:
        return covariant_D(f, point, structure)

    nodes = area_nodes(region, zeta, mesh)
    area = _area_sum(df, nodes, zeta, structure, transport)
    value = (-1.0 / (2.0 * np.pi)) * (j * boundary) + (1.0 / np.pi) * (j * area)
    frame = None
    if frame_correction:
        frame = _area_sum(lambda p: f.at(structure, p), nodes, zeta, structure, transport, conjugate=True)
        value = value + (-1.0 / (2.0 * np.pi)) * (j * frame)
    return boundary, area, frame, value, nodes.count


def reconstruct(
    f: Section,
    region: Region,
    zeta: Point,
    structure: StructureField,
    mesh: Optional[QuadratureMesh] = None,
    transport: Union[Transport, str, None] = None,
    frame_correction: bool = False,
    estimate_error: bool = False,
) -> ReconstructionReport:
    """
    f(ζ) = −j·B/(2π) + j·A/π (+ çerçeve terimi), B sınır, A = ∬ (D f) Z⁻¹ dA.

    Raises:
        RigidityGateError: bölgede rijitlik artığı τ_rigid·ölçek üstünde
        DomainError: ζ sınırda veya dışında
        ConfigError: frame_correction embedded taşımayla istendi
    """
    settings = structure.settings
    mode = _parse_transport(transport, settings)
    if frame_correction and mode is Transport.EMBEDDED:
        raise ConfigError("frame correction applies to coefficientwise transport only",
                          user_message="Çerçeve düzeltmesi yalnızca coefficientwise taşımada kullanılır.")
    mesh = mesh or QuadratureMesh.from_settings(settings)
    _require_interior(region, zeta, settings)
    _rigidity_gate(structure, region, zeta)

    boundary, area, frame, value, n_area = _evaluate(f, region, zeta, structure, mesh, mode, frame_correction)
    b_err = a_err = float("nan")
    if estimate_error:
        cb, ca, _, _, _ = _evaluate(f, region, zeta, structure, mesh.coarsened(), mode, False)
        b_err, a_err = (boundary - cb).magnitude(), (area - ca).magnitude()

    truth = f.at(structure, zeta)
    residual = float(np.sqrt(abs(norm(value - truth))))
    n_boundary = len(region.segments()) * mesh.boundary_panels * mesh.boundary_order
    logger.info(f"[CP] {f.name} at {zeta} ({mode.value}): residual={residual:.3e}")
    return ReconstructionReport(
        boundary=QuadratureReport(value=boundary, error_estimate=b_err, samples=n_boundary),
        area=QuadratureReport(value=area, error_estimate=a_err, samples=n_area),
        frame=frame,
        value=value,
        truth=truth,
        residual=residual,
        transport=mode,
        mesh=mesh,
    )


def mesh_refinement_study(
    f: Section,
    region: Region,
    zeta: Point,
    structure: StructureField,
    mesh: Optional[QuadratureMesh] = None,
    levels: int = 2,
    transport: Union[Transport, str, None] = None,
    frame_correction: bool = False,
) -> List[RefinementRow]:
    """Her seviyede mesh yarılanarak yeniden yapılandırma artığı."""
    current = mesh or QuadratureMesh.from_settings(structure.settings)
    rows = []
    for level in range(levels):
        report = reconstruct(f, region, zeta, structure, current, transport, frame_correction)
        rows.append(RefinementRow(level=level, mesh=current, residual=report.residual))
        current = current.refined()
    return rows


# =============================================================================
# 1-FORM ÖZDEŞLİKLERİ
# =============================================================================

def _square_circulation(integrand_at: Callable[[Point, AlgebraElement], AlgebraElement],
                        structure: StructureField, center: Point, side: float,
                        panels: int, order: int) -> AlgebraElement:
    """Kare çevresinde gömülü taşımayla ∮ (integrand · dz̃), merkez fiberinde."""
    half = 0.5 * side
    square = Rectangle(center[0] - half, center[1] - half, center[0] + half, center[1] + half)
    coeffs_center = structure.require_elliptic(center)
    t, w = composite_gauss_unit(panels, order)
    total = 0.0 + 0.0j
    for seg in square.segments():
        px, py = seg.point(t)
        tx, ty = seg.tangent(t)
        coeffs = structure.require_elliptic((px, py))
        form = integrand_at((px, py), AlgebraElement(ty, -tx, coeffs))
        total += complex(w @ form.to_complex())
    return from_complex(total, coeffs_center)


def dtheta_circulation(structure: StructureField, center: Point, side: float,
                       panels: int = 2, order: int = 8) -> CirculationReport:
    """∮ dz̃ ≈ i_y · alan (d dz̃ = i_y dx∧dy)."""
    circulation = _square_circulation(lambda p, form: form, structure, center, side, panels, order)
    iy = structure.generator_derivatives(center).iy
    return CirculationReport(circulation=circulation, predicted=side * side * iy, side=side)


def wedge_circulation(g: Section, structure: StructureField, center: Point, side: float,
                      panels: int = 2, order: int = 8) -> CirculationReport:
    """∮ g dz̃ ≈ [2∂_z̄ g + g·i_y] · alan."""
    def integrand(point: Point, form: AlgebraElement) -> AlgebraElement:
        return g.at(structure, point).in_fiber(form.coeffs) * form

    circulation = _square_circulation(integrand, structure, center, side, panels, order)
    d = structure.generator_derivatives(center)
    density = 2.0 * dbar(g, center, structure, d) + g.at(structure, center).in_fiber(d.iy.coeffs) * d.iy
    return CirculationReport(circulation=circulation, predicted=side * side * density, side=side)
