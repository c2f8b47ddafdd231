"""
Varel - Öz Test Paketi
======================

Tüm modüllerin kabul kontrollerini tek çalıştırmada toplar. Her kontrol
bir CheckRecord üretir; özet modül bazında sayılır. Örneklem boyutları kabul
ölçütlerini izler: Burgers için 10³ nokta, Leibniz için 10 kesit çifti × 100
nokta, ikinci mertebe için 5 kesit × 10 nokta.

Kullanım:
    varel selftest
    varel --json selftest
"""

import logging
from typing import Callable, Dict, List, Tuple

import numpy as np

from app.algebra.fiber import AlgebraElement, FiberCoefficients, j_element
from app.calculus.cr import (
    covariant_D,
    intertwining_residual,
    leibniz_defect,
    rigidity_indicators,
    total_defect,
    weighted_product,
)
from app.calculus.second_order import SecondOrderReport, batch_verify
from app.calculus.sections import Section, Weight
from app.calculus.weights import solve_weight, weight_residual
from app.cli.report import Report
from app.config import Settings
from app.core.config_models import RunConfig
from app.core.exceptions import VarelException
from app.core.types import CheckRecord, Point, RunSummary
from app.integral.cauchy_pompeiu import (
    QuadratureMesh,
    empirical_rate,
    frozen_residue,
    kernel_section,
    mesh_refinement_study,
    reconstruct,
    residue_table,
)
from app.integral.regions import CurveRegion, Disk
from app.jets.hierarchy import (
    check_first_jet,
    check_second_jet,
    check_third_jet,
    constant_family,
    epsilon_family,
    extract_jets,
)
from app.structure.epsilon import EpsilonStructure
from app.structure.structure_field import CoefficientEvaluator, StructureField
from app.transport.burgers import InitialProfile, detect_crossing, solve_implicit

logger = logging.getLogger(__name__)

# (ad, modül, değer fonksiyonu, tolerans, yön) ; yön "max": değer ≤ tol, "min": değer ≥ tol
Check = Tuple[str, str, Callable[[], float], float, str]

SAMPLE_POINTS: Tuple[Point, ...] = ((0.0, 0.0), (0.3, 0.1), (-0.2, 0.25), (0.1, -0.3))

# kabul örneklem boyutları
BURGERS_POINTS = 1000
LEIBNIZ_PAIRS = 10
LEIBNIZ_POINTS = 100
EXPANSION_SECTIONS = 5
EXPANSION_POINTS = 10
SAMPLE_BOX = 0.45


def _random_points(rng: np.random.Generator, n: int, half: float = SAMPLE_BOX) -> Tuple[np.ndarray, np.ndarray]:
    xs, ys = rng.uniform(-half, half, (2, n))
    return xs, ys


def _random_section(rng: np.random.Generator) -> Section:
    c = rng.normal(size=6)
    params = {f"c{k}": float(c[k]) for k in range(6)}
    return Section.from_expressions("c0 + c1*x*y + c2*sin(y)", "c3*x + c4*y^2 + c5*cos(x)", params=params)


def _random_cubic(rng: np.random.Generator) -> Section:
    c = rng.uniform(-0.05, 0.05, size=7)
    params = {f"c{k}": float(c[k]) for k in range(7)}
    return Section.from_expressions(
        "c0*x^3 + c1*x*y^2 + c2*y", "c3*x^3 + c4*y^3 + c5*x*y^2 + c6*x^2", params=params
    )


# =============================================================================
# KONTROL TANIMLARI
# =============================================================================

def _algebra_checks(rng: np.random.Generator) -> List[Check]:
    n = 10_000
    beta = rng.uniform(-2.0, 2.0, n)
    alpha = beta ** 2 / 4.0 + rng.uniform(0.05, 3.0, n)
    coeffs = FiberCoefficients(alpha=alpha, beta=beta)
    a = AlgebraElement(rng.normal(size=n), rng.normal(size=n), coeffs)
    b = AlgebraElement(rng.normal(size=n), rng.normal(size=n), coeffs)

    def multiplicativity() -> float:
        lhs, rhs = (a * b).norm(), a.norm() * b.norm()
        return float(np.max(np.abs(lhs - rhs) / np.maximum(np.abs(rhs), 1.0)))

    def conjugation() -> float:
        return float(np.max(np.abs(((a * b).conj() - a.conj() * b.conj()).components())))

    def inverse() -> float:
        one = a * a.inverse()
        return float(max(np.max(np.abs(one.u - 1.0)), np.max(np.abs(one.v))))

    def j_squared() -> float:
        j = j_element(coeffs)
        square = j * j
        return float(max(np.max(np.abs(square.u + 1.0)), np.max(np.abs(square.v))))

    def embedding() -> float:
        lhs, rhs = (a * b).to_complex(), a.to_complex() * b.to_complex()
        return float(np.max(np.abs(lhs - rhs) / np.maximum(np.abs(rhs), 1.0)))

    return [
        ("norm_multiplicative", "algebra", multiplicativity, 1e-10, "max"),
        ("conjugation_homomorphism", "algebra", conjugation, 1e-10, "max"),
        ("inverse_round_trip", "algebra", inverse, 1e-10, "max"),
        ("j_squared", "algebra", j_squared, 1e-10, "max"),
        ("embedding_product", "algebra", embedding, 1e-10, "max"),
    ]


def _structure_checks(eps: EpsilonStructure, nonrigid: StructureField, rng: np.random.Generator,
                      settings: Settings) -> List[Check]:
    rigid = eps.structure()
    burgers_family = (
        rigid,
        EpsilonStructure.make(0.3, settings=settings).structure(),
        nonrigid,
        StructureField(
            CoefficientEvaluator.from_expressions("1 + x^2/4", "x*y/3", settings=settings, name="polynomial"),
            settings=settings,
        ),
    )
    points = _random_points(rng, BURGERS_POINTS)

    def defining() -> float:
        worst = 0.0
        for p in SAMPLE_POINTS:
            rx, ry = rigid.defining_residual(p)
            worst = max(worst, rx.magnitude(), ry.magnitude())
        return worst

    def iy_closed() -> float:
        return max((rigid.generator_derivatives(p).iy - eps.iy_closed_form(p)).magnitude() for p in SAMPLE_POINTS)

    def universal_burgers() -> float:
        return max(float(np.max(np.abs(s.burgers_residual(points)))) for s in burgers_family)

    def forced_coefficients() -> float:
        worst = 0.0
        for s in burgers_family:
            r0, r1 = s.forced_coefficient_residual(points)
            worst = max(worst, float(np.max(np.abs(r0))), float(np.max(np.abs(r1))))
        return worst

    return [
        ("defining_residual", "structure", defining, 1e-10, "max"),
        ("iy_closed_form", "structure", iy_closed, 1e-10, "max"),
        ("universal_burgers", "structure", universal_burgers, 1e-8, "max"),
        ("forced_coefficients", "structure", forced_coefficients, 1e-8, "max"),
    ]


def _rigidity_checks(rigid: StructureField, nonrigid: StructureField) -> List[Check]:
    def epsilon_indicators() -> float:
        return max(max(rigidity_indicators(p, rigid).to_dict().values()) for p in SAMPLE_POINTS)

    def nonrigid_obstruction() -> float:
        return min(rigidity_indicators(p, nonrigid).obstruction for p in SAMPLE_POINTS[1:])

    return [
        ("epsilon_indicators", "rigidity", epsilon_indicators, 1e-8, "max"),
        ("nonrigid_obstruction", "rigidity", nonrigid_obstruction, 1e-3, "min"),
    ]


def _burgers_checks(eps: EpsilonStructure, settings: Settings) -> List[Check]:
    profile = InitialProfile.epsilon_trace(eps.epsilon)

    def implicit_vs_closed_form() -> float:
        return max(
            abs(solve_implicit(profile, p, settings) - complex(eps.spectral_closed_form(p).lam))
            for p in SAMPLE_POINTS
        )

    def crossing_location() -> float:
        crossing = detect_crossing(InitialProfile.affine(1j, -1.0), (0.0, 2.0), np.linspace(-1.0, 1.0, 5), settings)
        return abs(crossing.x - 1.0) if crossing else float("inf")

    return [
        ("implicit_vs_closed_form", "burgers", implicit_vs_closed_form, 1e-9, "max"),
        ("affine_crossing", "burgers", crossing_location, 1e-3, "max"),
    ]


def _integral_checks(eps: EpsilonStructure, nonrigid: StructureField, settings: Settings) -> List[Check]:
    rigid = eps.structure()
    classical = StructureField(CoefficientEvaluator.constant(), settings=settings)
    disk = Disk(center=(0.0, 0.0), radius=0.5)
    u_shape = CurveRegion.polygon(
        [(-0.5, -0.4), (0.5, -0.4), (0.5, 0.4), (0.2, 0.4), (0.2, -0.1), (-0.2, -0.1), (-0.2, 0.4), (-0.5, 0.4)]
    )
    zeta = (0.1, 0.05)
    radii = [0.4, 0.2, 0.1, 0.05]
    outside = kernel_section((1.5, 0.2))
    coarse = QuadratureMesh(radial_panels=1, radial_order=2, angular_nodes=8, boundary_panels=2, boundary_order=8)

    def frozen() -> float:
        target = 2.0 * np.pi * j_element(rigid.require_elliptic(zeta))
        return (frozen_residue(rigid, zeta, 0.1, settings.RESIDUE_SAMPLES) - target).magnitude()

    def variable_exact() -> float:
        return max(row.error for row in residue_table(rigid, zeta, radii))

    def variable_rate() -> float:
        rows = residue_table(nonrigid, (0.1, 0.3), radii)
        return empirical_rate(radii, [row.error for row in rows])

    def classical_cp() -> float:
        return reconstruct(Section.from_expressions("x", "y"), disk, zeta, classical).residual

    def coefficientwise_cp() -> float:
        return reconstruct(Section.constant(1.0), disk, (0.0, 0.0), rigid).residual

    def exact_cp() -> float:
        return max(
            reconstruct(f, disk, zeta, rigid, transport=mode, frame_correction=frame).residual
            for f in (Section.constant(1.0), outside)
            for mode, frame in (("embedded", False), ("coefficientwise", True))
        )

    def mesh_refinement() -> float:
        rows = mesh_refinement_study(Section.from_expressions("x", "y"), disk, zeta, rigid,
                                     mesh=coarse, levels=2, transport="embedded")
        coarse_residual, fine_residual = rows[0].residual, rows[1].residual
        if fine_residual < 1e-10:
            return float("inf")
        return coarse_residual / fine_residual

    def curve_region_cp() -> float:
        return reconstruct(outside, u_shape, (-0.35, 0.1), rigid, transport="embedded").residual

    return [
        ("frozen_residue", "cauchy_pompeiu", frozen, 1e-10, "max"),
        ("variable_residue_exact", "cauchy_pompeiu", variable_exact, 1e-9, "max"),
        ("variable_residue_rate", "cauchy_pompeiu", variable_rate, 0.9, "min"),
        ("classical_reconstruction", "cauchy_pompeiu", classical_cp, 1e-6, "max"),
        ("coefficientwise_reconstruction", "cauchy_pompeiu", coefficientwise_cp, 1e-3, "max"),
        ("exact_reconstruction", "cauchy_pompeiu", exact_cp, 1e-8, "max"),
        ("mesh_refinement_ratio", "cauchy_pompeiu", mesh_refinement, 4.0, "min"),
        ("curve_region_reconstruction", "cauchy_pompeiu", curve_region_cp, 1e-6, "max"),
    ]


def _calculus_checks(eps: EpsilonStructure, nonrigid: StructureField, rng: np.random.Generator) -> List[Check]:
    rigid = eps.structure()
    psi = Weight(eps.weight_field(), name="psi_eps")
    units = (Section.gauge(1.0, psi), Section.gauge(1j, psi))

    def weight_equation() -> float:
        return max(weight_residual(psi, p, rigid).magnitude() for p in SAMPLE_POINTS)

    def solved_weight() -> float:
        s0 = float(eps.s_value(0.0, 0.0))
        worst = 0.0
        for p in SAMPLE_POINTS[1:]:
            expected = float(np.sqrt(eps.s_value(*p) / s0))
            worst = max(worst, abs(solve_weight(rigid, (0.0, 0.0), p) - expected) / expected)
        return worst

    def closure() -> float:
        return max(
            covariant_D(weighted_product(f, g, psi, rigid), p, rigid).magnitude()
            for f in units for g in units for p in SAMPLE_POINTS
        )

    def intertwining() -> float:
        points = _random_points(rng, 200)
        return max(intertwining_residual(_random_section(rng), psi, points, rigid).magnitude() for _ in range(5))

    def leibniz() -> float:
        worst = 0.0
        for structure, rigid_case in ((rigid, True), (nonrigid, False)):
            for _ in range(LEIBNIZ_PAIRS):
                report = leibniz_defect(_random_section(rng), _random_section(rng),
                                        _random_points(rng, LEIBNIZ_POINTS), structure)
                worst = max(worst, report.form_gap(), report.prediction_gap() if rigid_case else 0.0)
        return worst

    def real_derivative_defects() -> float:
        worst = 0.0
        for structure in (rigid, nonrigid):
            for _ in range(LEIBNIZ_PAIRS):
                f, g, points = _random_section(rng), _random_section(rng), _random_points(rng, LEIBNIZ_POINTS)
                for operator in ("x", "y"):
                    direct, form = total_defect(f, g, points, structure, operator)
                    worst = max(worst, (direct - form).magnitude())
        return worst

    expansions: List[SecondOrderReport] = []

    def expansion_reports() -> List[SecondOrderReport]:
        if not expansions:
            sections = [_random_cubic(rng) for _ in range(EXPANSION_SECTIONS)]
            points = [(float(x), float(y)) for x, y in rng.uniform(-0.4, 0.4, (EXPANSION_POINTS, 2))]
            expansions.extend(batch_verify(sections, points, rigid))
        return expansions

    def second_order() -> float:
        return max(report.residual for report in expansion_reports())

    def second_order_rate() -> float:
        return max(abs(report.order - 2.0) for report in expansion_reports())

    return [
        ("weight_equation", "weights", weight_equation, 1e-10, "max"),
        ("solved_weight", "weights", solved_weight, 1e-7, "max"),
        ("weighted_product_closure", "weights", closure, 1e-7, "max"),
        ("intertwining", "weights", intertwining, 1e-8, "max"),
        ("leibniz_tuples", "cr", leibniz, 1e-9, "max"),
        ("real_derivative_defects", "cr", real_derivative_defects, 1e-10, "max"),
        ("second_order_expansion", "second_order", second_order, 1e-6, "max"),
        ("second_order_rate", "second_order", second_order_rate, 0.3, "max"),
    ]


def _jet_checks(settings: Settings) -> List[Check]:
    points = SAMPLE_POINTS[:2]

    def residuals(index: int) -> Callable[[], float]:
        def run() -> float:
            worst = 0.0
            for p in points:
                jets = extract_jets(epsilon_family(settings), p, 3, settings=settings)
                value = (
                    check_first_jet(jets.mu, p),
                    check_second_jet(jets.mu, jets.nu, p),
                    check_third_jet(jets.mu, jets.nu, jets.rho, p),
                )[index]
                worst = max(worst, abs(value))
            return worst
        return run

    def constant_jets() -> float:
        return max(abs(v) for v in extract_jets(constant_family(settings), (0.2, 0.1), 3, settings=settings).values[1:])

    return [
        ("first_jet", "jets", residuals(0), 1e-8, "max"),
        ("second_jet", "jets", residuals(1), 1e-6, "max"),
        ("third_jet", "jets", residuals(2), 1e-5, "max"),
        ("constant_family_jets", "jets", constant_jets, 1e-12, "max"),
    ]


# =============================================================================
# ÇALIŞTIRICI
# =============================================================================

def run_check(check: Check) -> CheckRecord:
    name, module, compute, tolerance, direction = check
    try:
        value = float(compute())
    except VarelException as exc:
        logger.warning(f"[CLI] selftest {module}.{name} raised: {exc.message}")
        value = float("nan")
    passed = bool(value <= tolerance) if direction == "max" else bool(value >= tolerance)
    level = logging.DEBUG if passed else logging.WARNING
    logger.log(level, f"[CLI] selftest {module}.{name}: value={value:.3e} tol={tolerance:.1e} passed={passed}")
    return CheckRecord(name=name, module=module, passed=passed, value=value, tolerance=tolerance)


def build_suite(config: RunConfig, settings: Settings) -> List[Check]:
    eps = config.epsilon_structure(settings) or EpsilonStructure.make(0.1, settings=settings)
    nonrigid = StructureField(
        CoefficientEvaluator.from_expressions("1", "y/2", settings=settings, name="nonrigid"), settings=settings
    )
    rng = np.random.default_rng(20240607)
    return [
        *_algebra_checks(rng),
        *_structure_checks(eps, nonrigid, rng, settings),
        *_rigidity_checks(eps.structure(), nonrigid),
        *_burgers_checks(eps, settings),
        *_integral_checks(eps, nonrigid, settings),
        *_calculus_checks(eps, nonrigid, rng),
        *_jet_checks(settings),
    ]


def summarize(records: List[CheckRecord]) -> RunSummary:
    by_module: Dict[str, Dict[str, int]] = {}
    for record in records:
        entry = by_module.setdefault(record["module"], {"total": 0, "passed": 0})
        entry["total"] += 1
        entry["passed"] += 1 if record["passed"] else 0
    passed = sum(1 for r in records if r["passed"])
    return RunSummary(total=len(records), passed=passed, failed=len(records) - passed, by_module=by_module)


def selftest(config: RunConfig, settings: Settings) -> Report:
    records = [run_check(check) for check in build_suite(config, settings)]
    summary = summarize(records)
    report = Report("selftest", rows=[dict(r) for r in records],
                    columns=("module", "name", "passed", "value", "tolerance"))
    report.add("total", summary["total"]).add("passed", summary["passed"]).add("failed", summary["failed"])
    report.add("by_module", summary["by_module"])
    report.passed = summary["failed"] == 0
    return report
