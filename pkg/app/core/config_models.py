"""
Varel - Çalıştırma Yapılandırma Modelleri
=========================================

Bu modül, CLI'ın okuduğu yapılandırma belgesini (JSON) tanımlar.

Bölümler:
    - structure: Yapı tanımı (ε-ailesi veya α/β ifadeleri)
    - sections: Kesit tanımları (u + v·i ifadeleri)
    - region: İntegrasyon bölgesi (disk, dikdörtgen, çokgen veya elips)
    - numerics: Settings üzerine yazılan sayısal seçenekler
    - grid: Tarama ızgarası
    - options: Komuta özel parametreler
    - params: İfadelerde kullanılan adlandırılmış parametreler

Kullanım:
    from app.core.config_models import RunConfig

    config = RunConfig.from_file("run.json").with_overrides({"structure.epsilon": "0.2"})
    structure = config.build_structure(settings)

Not:
    Doğrulama hataları ConfigError'a çevrilir (çıkış kodu 3).
"""

import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from app.calculus.sections import Section
from app.config import Settings
from app.core.exceptions import ConfigError
from app.core.types import AreaRule, Point, Transport
from app.integral.regions import Region, make_region
from app.structure.epsilon import EpsilonStructure
from app.structure.structure_field import CoefficientEvaluator, StructureField

# =============================================================================
# ENUM TANIMLARI
# =============================================================================

class StructureKind(str, Enum):
    """Yapı tanım türleri."""
    EPSILON = "epsilon"
    EXPRESSIONS = "expressions"


class RegionKind(str, Enum):
    """Bölge türleri."""
    DISK = "disk"
    RECTANGLE = "rectangle"
    POLYGON = "polygon"
    ELLIPSE = "ellipse"


class ProfilePreset(str, Enum):
    """Burgers başlangıç profilleri."""
    CONSTANT = "constant"
    AFFINE = "affine"
    EPSILON = "epsilon"


class JetFamilyKind(str, Enum):
    """Jet çıkarımı için yapı aileleri."""
    EPSILON = "epsilon"
    CONSTANT = "constant"


# =============================================================================
# BÖLÜM MODELLERİ
# =============================================================================

class StructureSpec(BaseModel):
    """Yapı tanımı."""
    # --structure.alpha 1 gibi sayısal geçersiz kılmalar ifade metnine çevrilir
    model_config = ConfigDict(coerce_numbers_to_str=True)

    kind: StructureKind = StructureKind.EPSILON
    epsilon: float = 0.1
    normalization: float = Field(default=1.0, gt=0)
    alpha: Optional[str] = None
    beta: Optional[str] = None
    # "alpha_x": "..." biçiminde analitik türev geçersiz kılmaları
    partials: Dict[str, str] = Field(default_factory=dict)
    # ifade yapılarında FD adımı ve rijitlik toleransı ölçeği
    scale: float = Field(default=1.0, gt=0)
    name: str = ""

    @model_validator(mode="after")
    def _expressions_complete(self) -> "StructureSpec":
        if self.kind == StructureKind.EXPRESSIONS and (not self.alpha or not self.beta):
            raise ValueError("expressions structure requires both 'alpha' and 'beta'")
        return self


class SectionSpec(BaseModel):
    """f = u + v·i."""
    model_config = ConfigDict(coerce_numbers_to_str=True)

    name: str = "f"
    u: str = "1"
    v: str = "0"


class RegionConfig(BaseModel):
    kind: RegionKind = RegionKind.DISK
    center: Tuple[float, float] = (0.0, 0.0)
    radius: float = Field(default=0.5, gt=0)
    corners: Optional[Tuple[Tuple[float, float], Tuple[float, float]]] = None
    vertices: Optional[List[Tuple[float, float]]] = None
    semi_axes: Optional[Tuple[float, float]] = None

    @model_validator(mode="after")
    def _shape_complete(self) -> "RegionConfig":
        required = {
            RegionKind.RECTANGLE: ("corners", self.corners),
            RegionKind.POLYGON: ("vertices", self.vertices),
            RegionKind.ELLIPSE: ("semi_axes", self.semi_axes),
        }
        if self.kind in required:
            name, value = required[self.kind]
            if value is None:
                raise ValueError(f"{self.kind.value} region requires '{name}'")
        return self

    def build(self) -> Region:
        return make_region(self.model_dump(mode="json"))


class NumericsConfig(BaseModel):
    """
    Settings üzerine yazılan seçenekler. Alan adları Settings alanlarının
    küçük harfli karşılığıdır; None olanlar dokunulmaz.
    """
    fd_step: Optional[float] = Field(default=None, gt=0)
    fd_step_second: Optional[float] = Field(default=None, gt=0)
    domain_scale: Optional[float] = Field(default=None, gt=0)
    tol_rigid: Optional[float] = Field(default=None, gt=0)
    tol_compat: Optional[float] = Field(default=None, gt=0)
    tol_crossing: Optional[float] = Field(default=None, gt=0)
    newton_tol: Optional[float] = Field(default=None, gt=0)
    newton_max_iter: Optional[int] = Field(default=None, ge=1)
    jet_step: Optional[float] = Field(default=None, gt=0)
    jet_fd_step: Optional[float] = Field(default=None, gt=0)
    gauss_order: Optional[int] = Field(default=None, ge=1)
    cp_radial_panels: Optional[int] = Field(default=None, ge=1)
    cp_patch_nodes: Optional[int] = Field(default=None, ge=1)
    cp_angular_nodes: Optional[int] = Field(default=None, ge=4)
    cp_boundary_panels: Optional[int] = Field(default=None, ge=1)
    cp_transport: Optional[Transport] = None
    cp_area_rule: Optional[AreaRule] = None
    residue_samples: Optional[int] = Field(default=None, ge=8)
    weight_panels: Optional[int] = Field(default=None, ge=1)

    def apply(self, settings: Settings) -> Settings:
        update = {key.upper(): value for key, value in self.model_dump(mode="json", exclude_none=True).items()}
        return settings.model_copy(update=update) if update else settings


class GridConfig(BaseModel):
    x_min: float = -0.5
    x_max: float = 0.5
    y_min: float = -0.5
    y_max: float = 0.5
    nx: int = Field(default=11, ge=1)
    ny: int = Field(default=11, ge=1)

    @model_validator(mode="after")
    def _ordered(self) -> "GridConfig":
        if self.x_min > self.x_max or self.y_min > self.y_max:
            raise ValueError("grid bounds must satisfy min <= max")
        return self

    def axes(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.linspace(self.x_min, self.x_max, self.nx), np.linspace(self.y_min, self.y_max, self.ny)

    def points(self) -> List[Point]:
        xs, ys = self.axes()
        return [(float(x), float(y)) for y in ys for x in xs]


class CommandOptions(BaseModel):
    """Komuta özel parametreler."""
    zeta: Tuple[float, float] = (0.0, 0.0)
    radii: List[float] = Field(default_factory=lambda: [0.4, 0.2, 0.1, 0.05])
    n_samples: Optional[int] = Field(default=None, ge=8)
    transport: Optional[Transport] = None
    frame_correction: bool = False
    refine_levels: int = Field(default=0, ge=0)
    steps: List[float] = Field(default_factory=lambda: [1e-2, 5e-3, 2.5e-3])
    profile: ProfilePreset = ProfilePreset.EPSILON
    profile_params: Dict[str, Any] = Field(default_factory=dict)
    basepoint: Tuple[float, float] = (0.0, 0.0)
    jet_family: JetFamilyKind = JetFamilyKind.EPSILON
    crossing_samples: int = Field(default=41, ge=2)


# =============================================================================
# ÇALIŞTIRMA BELGESİ
# =============================================================================

class RunConfig(BaseModel):
    structure: StructureSpec = Field(default_factory=StructureSpec)
    sections: List[SectionSpec] = Field(default_factory=lambda: [SectionSpec()])
    region: RegionConfig = Field(default_factory=RegionConfig)
    numerics: NumericsConfig = Field(default_factory=NumericsConfig)
    grid: GridConfig = Field(default_factory=GridConfig)
    options: CommandOptions = Field(default_factory=CommandOptions)
    params: Dict[str, float] = Field(default_factory=dict)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "RunConfig":
        try:
            return cls.model_validate(dict(data))
        except ValidationError as e:
            first = e.errors()[0]
            where = ".".join(str(part) for part in first["loc"]) or "<root>"
            raise ConfigError(
                f"invalid configuration at {where}: {first['msg']}",
                user_message=f"Geçersiz yapılandırma: {where}",
            ) from e

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except FileNotFoundError as e:
            raise ConfigError(f"config file not found: {path}", user_message="Yapılandırma dosyası bulunamadı.") from e
        except json.JSONDecodeError as e:
            raise ConfigError(
                f"config file {path} is not valid JSON: {e.msg} (line {e.lineno})",
                user_message="Yapılandırma dosyası geçerli JSON değil.",
            ) from e
        if not isinstance(data, dict):
            raise ConfigError(f"config file {path} must hold an object", user_message="Yapılandırma bir nesne olmalı.")
        return cls.from_mapping(data)

    def with_overrides(self, overrides: Mapping[str, str]) -> "RunConfig":
        """
        "bölüm.anahtar" → değer geçersiz kılmaları. Değer JSON olarak
        çözülebiliyorsa çözülür, değilse metin olarak kalır.
        """
        if not overrides:
            return self
        data = self.model_dump(mode="json")
        for dotted, raw in overrides.items():
            keys = dotted.split(".")
            target: Any = data
            for key in keys[:-1]:
                if isinstance(target, list) and key.isdigit() and int(key) < len(target):
                    target = target[int(key)]
                elif isinstance(target, dict):
                    target = target.setdefault(key, {})
                else:
                    raise ConfigError(f"cannot override '{dotted}'", user_message=f"Geçersiz anahtar: {dotted}")
            try:
                value = json.loads(raw)
            except (json.JSONDecodeError, TypeError):
                value = raw
            if isinstance(target, list) and keys[-1].isdigit() and int(keys[-1]) < len(target):
                target[int(keys[-1])] = value
            elif isinstance(target, dict):
                target[keys[-1]] = value
            else:
                raise ConfigError(f"cannot override '{dotted}'", user_message=f"Geçersiz anahtar: {dotted}")
        return RunConfig.from_mapping(data)

    # ---- fabrikalar -------------------------------------------------------

    def settings(self, base: Settings) -> Settings:
        return self.numerics.apply(base)

    def epsilon_structure(self, settings: Settings) -> Optional[EpsilonStructure]:
        if self.structure.kind != StructureKind.EPSILON:
            return None
        return EpsilonStructure.make(self.structure.epsilon, self.structure.normalization, settings=settings)

    def build_structure(self, settings: Settings) -> StructureField:
        spec = self.structure
        if spec.kind == StructureKind.EPSILON:
            return self.epsilon_structure(settings).structure()
        evaluator = CoefficientEvaluator.from_expressions(
            spec.alpha, spec.beta, params=self.params, partials=spec.partials or None,
            settings=settings, name=spec.name, scale=spec.scale,
        )
        return StructureField(evaluator, settings=settings)

    def build_sections(self, settings: Settings) -> List[Section]:
        built = []
        for spec in self.sections:
            section = Section.from_expressions(spec.u, spec.v, params=self.params, settings=settings)
            built.append(Section(u=section.u, v=section.v, name=spec.name))
        return built
