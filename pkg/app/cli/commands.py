"""
Varel - CLI Komutları
=====================

Her komut (RunConfig, Settings) alır ve bir Report döndürür. Ön koşul
ihlalleri VarelException olarak yükselir; çıkış koduna main çevirir.

Komutlar:
    - structure eval: α, β, Δ, G0, G1, λ ızgara dökümü
    - rigidity scan: dört rijitlik göstergesinin taraması (yalnızca rapor)
    - burgers solve: örtük çözücü ızgarası + kesişim raporu
    - residue: donmuş/değişken rezidü tablosu
    - cp reconstruct: Cauchy–Pompeiu yeniden yapılandırma
    - weight solve: ağırlık denklemi çözümü
    - second-order verify: ikinci mertebe açılımın FD doğrulaması
    - jets check: jet hiyerarşisi artık tablosu
"""

import logging
import math
from typing import Callable, Dict, List, Tuple

import numpy as np

from app.calculus.cr import rigidity_indicators
from app.calculus.second_order import batch_verify
from app.calculus.weights import check_weight_compatibility, solve_weight
from app.cli.report import BURGERS_COLUMNS, STRUCTURE_COLUMNS, Report
from app.config import Settings
from app.core.config_models import JetFamilyKind, ProfilePreset, RunConfig, StructureKind
from app.core.exceptions import VarelException
from app.core.types import Regime
from app.integral.cauchy_pompeiu import (
    QuadratureMesh,
    empirical_rate,
    mesh_refinement_study,
    reconstruct,
    residue_table,
)
from app.integral.regions import sample_grid
from app.jets.hierarchy import check_hierarchy, constant_family, epsilon_family
from app.transport.burgers import detect_crossing, make_profile, scan_grid

logger = logging.getLogger(__name__)

Command = Callable[[RunConfig, Settings], Report]

NAN = float("nan")

# jets check eşikleri (μ, ν, ρ)
JET_TOLERANCES = (1e-8, 1e-6, 1e-5)


# =============================================================================
# YAPI
# =============================================================================

def structure_eval(config: RunConfig, settings: Settings) -> Report:
    structure = config.build_structure(settings)
    rows: List[Dict[str, float]] = []
    elliptic = 0
    for x, y in config.grid.points():
        row = {key: NAN for key in STRUCTURE_COLUMNS}
        row.update(x=x, y=y)
        try:
            coeffs = structure.coefficients((x, y))
            row.update(alpha=float(coeffs.alpha), beta=float(coeffs.beta), delta=float(coeffs.discriminant()))
            if structure.classify((x, y)).regime is Regime.ELLIPTIC:
                obs = structure.obstruction((x, y))
                lam = complex(structure.spectral_lambda((x, y), with_derivatives=False).lam)
                row.update(g0=float(obs.G0), g1=float(obs.G1), re_lambda=lam.real, im_lambda=lam.imag)
                elliptic += 1
        except VarelException as exc:
            logger.debug(f"[CLI] structure eval skipped ({x}, {y}): {exc.message}")
        rows.append(row)
    report = Report("structure eval", rows=rows, columns=STRUCTURE_COLUMNS)
    return report.add("structure", structure.name).add("points", len(rows)).add("elliptic_points", elliptic)


def rigidity_scan(config: RunConfig, settings: Settings) -> Report:
    structure = config.build_structure(settings)
    rows = []
    worst = {"obstruction": 0.0, "burgers": 0.0, "leibniz": 0.0, "inhomogeneity": 0.0}
    skipped = 0
    for x, y in config.grid.points():
        try:
            indicators = rigidity_indicators((x, y), structure).to_dict()
        except VarelException as exc:
            skipped += 1
            logger.debug(f"[CLI] rigidity scan skipped ({x}, {y}): {exc.message}")
            continue
        rows.append({"x": x, "y": y, **indicators})
        for key, value in indicators.items():
            worst[key] = max(worst[key], value)
    report = Report("rigidity scan", rows=rows, columns=("x", "y", *worst.keys()))
    report.add("structure", structure.name).add("points", len(rows)).add("skipped", skipped)
    report.add("max_residual", worst["obstruction"])
    for key, value in worst.items():
        report.add(f"max_{key}", value)
    return report


# =============================================================================
# TAŞINIM
# =============================================================================

def burgers_solve(config: RunConfig, settings: Settings) -> Report:
    options = config.options
    params = dict(options.profile_params)
    if options.profile == ProfilePreset.EPSILON and config.structure.kind == StructureKind.EPSILON:
        params.setdefault("epsilon", config.structure.epsilon)
    profile = make_profile(options.profile.value, params)
    xs, ys = config.grid.axes()
    rows = scan_grid(profile, xs, ys, settings)
    y_samples = np.linspace(config.grid.y_min, config.grid.y_max, options.crossing_samples)
    crossing = detect_crossing(profile, (config.grid.x_min, config.grid.x_max), y_samples, settings)

    report = Report(
        "burgers solve",
        rows=[dict(zip(BURGERS_COLUMNS, row.as_tuple())) for row in rows],
        columns=BURGERS_COLUMNS,
    )
    report.add("profile", profile.name)
    report.add("failed_points", sum(1 for row in rows if math.isnan(row.re_lambda)))
    report.add("crossing", crossing.to_dict() if crossing else None)

    epsilon = config.epsilon_structure(settings)
    if options.profile == ProfilePreset.EPSILON and epsilon is not None and epsilon.epsilon == params["epsilon"]:
        deviation = 0.0
        for row in rows:
            if math.isnan(row.re_lambda) or not epsilon.elliptic_domain_contains((row.x, row.y)).inside:
                continue
            exact = complex(epsilon.spectral_closed_form((row.x, row.y)).lam)
            deviation = max(deviation, abs(complex(row.re_lambda, row.im_lambda) - exact))
        report.add("closed_form_deviation", deviation)
    return report


# =============================================================================
# İNTEGRAL GÖSTERİMİ
# =============================================================================

def residue(config: RunConfig, settings: Settings) -> Report:
    structure = config.build_structure(settings)
    options = config.options
    rows = residue_table(structure, options.zeta, options.radii, options.n_samples)
    rate = empirical_rate([r.radius for r in rows], [r.error for r in rows])
    target = rows[0].target if rows else None
    report = Report("residue", rows=[r.to_dict() for r in rows], columns=("radius", "frozen", "variable", "error"))
    report.add("zeta", list(options.zeta))
    if target is not None:
        report.add("target", [float(target.u), float(target.v)])
        report.add("max_frozen_error", max((r.frozen - target).magnitude() for r in rows))
    return report.add("empirical_rate", rate)


def cp_reconstruct(config: RunConfig, settings: Settings) -> Report:
    structure = config.build_structure(settings)
    region = config.region.build()
    options = config.options
    f = config.build_sections(settings)[0]
    mesh = QuadratureMesh.from_settings(settings)
    result = reconstruct(
        f, region, options.zeta, structure, mesh,
        transport=options.transport, frame_correction=options.frame_correction, estimate_error=True,
    )
    report = Report("cp reconstruct")
    report.add("section", f.name).add("region", region.to_dict()).add("zeta", list(options.zeta))
    for key, value in result.to_dict().items():
        report.add(key, value)
    if options.refine_levels:
        study = mesh_refinement_study(
            f, region, options.zeta, structure, mesh,
            levels=options.refine_levels + 1, transport=options.transport,
            frame_correction=options.frame_correction,
        )
        report.rows = [row.to_dict() for row in study]
        report.columns = ("level", "residual", *mesh.to_dict().keys())
    return report


def weight_solve(config: RunConfig, settings: Settings) -> Report:
    structure = config.build_structure(settings)
    region = config.region.build()
    rectangle = region.bounding_box()
    basepoint = config.options.basepoint
    compatibility = check_weight_compatibility(structure, rectangle)
    report = Report("weight solve").add("compatibility", compatibility.to_dict()).add("rectangle", list(rectangle))

    epsilon = config.epsilon_structure(settings)
    scale = float(epsilon.weight(basepoint)) if epsilon is not None else NAN
    rows = []
    worst = 0.0
    xs, ys = sample_grid(region, n=5)
    for x, y in zip(xs, ys):
        psi = solve_weight(structure, basepoint, (float(x), float(y)), rectangle=rectangle)
        row = {"x": float(x), "y": float(y), "psi": psi, "relative_deviation": NAN}
        if epsilon is not None:
            reference = float(epsilon.weight((x, y))) / scale
            row["relative_deviation"] = abs(psi / reference - 1.0)
            worst = max(worst, row["relative_deviation"])
        rows.append(row)
    report.rows, report.columns = rows, ("x", "y", "psi", "relative_deviation")
    if epsilon is not None:
        report.add("max_relative_deviation", worst)
        report.passed = worst <= 1e-7
    return report


# =============================================================================
# İKİNCİ MERTEBE VE JETLER
# =============================================================================

def second_order_verify(config: RunConfig, settings: Settings) -> Report:
    structure = config.build_structure(settings)
    sections = config.build_sections(settings)
    points = config.grid.points()
    reports = batch_verify(sections, points, structure, config.options.steps)
    rows = []
    for index, item in enumerate(reports):
        f, (x, y) = sections[index // len(points)], points[index % len(points)]
        rows.append({"section": f.name, "x": x, "y": y, "residual": item.residual, "order": item.order})
    report = Report("second-order verify", rows=rows, columns=("section", "x", "y", "residual", "order"))
    report.add("cases", len(rows)).add("step", min(config.options.steps))
    report.add("max_residual", max((r["residual"] for r in rows), default=0.0))
    orders = [r["order"] for r in rows if not math.isnan(r["order"])]
    report.add("median_order", float(np.median(orders)) if orders else NAN)
    return report


def jets_check(config: RunConfig, settings: Settings) -> Report:
    if config.options.jet_family == JetFamilyKind.CONSTANT:
        family = constant_family(settings)
    else:
        family = epsilon_family(settings)
    rows = check_hierarchy(family, config.grid.points())
    worst = tuple(max((getattr(r, key) for r in rows), default=0.0) for key in ("first", "second", "third"))
    report = Report("jets check", rows=[r.to_dict() for r in rows], columns=("x", "y", "first", "second", "third"))
    report.add("family", config.options.jet_family.value)
    for key, value, tol in zip(("first", "second", "third"), worst, JET_TOLERANCES):
        report.add(f"max_{key}", value).add(f"tolerance_{key}", tol)
    report.passed = all(value <= tol for value, tol in zip(worst, JET_TOLERANCES))
    return report


COMMANDS: Dict[Tuple[str, ...], Command] = {
    ("structure", "eval"): structure_eval,
    ("rigidity", "scan"): rigidity_scan,
    ("burgers", "solve"): burgers_solve,
    ("residue",): residue,
    ("cp", "reconstruct"): cp_reconstruct,
    ("weight", "solve"): weight_solve,
    ("second-order", "verify"): second_order_verify,
    ("jets", "check"): jets_check,
}
