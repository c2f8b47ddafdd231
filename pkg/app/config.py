"""
Varel - Uygulama Yapılandırması
===============================

Sonlu fark adımları, toleranslar, kuadratür boyutları ve log tercihleri.
Değerler ortam değişkeni > .env > varsayılan sırasıyla çözülür.

Kullanım:
    from app.config import get_settings

    settings = get_settings()
    print(settings.FD_STEP)

Örnek:
    FD_STEP=1e-6 LOG_LEVEL=INFO varel selftest
"""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Sayısal varsayılanlar.

    CLI, `numerics` bölümündeki alanları `NumericsConfig.apply` ile
    bu nesnenin bir kopyasına yazar; önbellekteki örnek değişmez.
    """

    # =========================================================================
    # GENEL AYARLAR
    # =========================================================================
    APP_NAME: str = Field(default="Varel", description="Uygulama adı")
    LOG_LEVEL: str = Field(default="WARNING", description="Log seviyesi")
    LOG_TO_FILE: bool = Field(default=False, description="logs/varel.log dosyasına yaz")
    LOG_DIR: str = Field(default="logs", description="Log dizini")

    # =========================================================================
    # SONLU FARK AYARLARI
    # =========================================================================
    # Adımlar DOMAIN_SCALE ile çarpılır
    DOMAIN_SCALE: float = Field(default=1.0, gt=0, description="Tanım kümesi ölçeği")
    FD_STEP: float = Field(default=1e-5, gt=0, description="Birinci türev merkezi fark adımı (göreli)")
    FD_STEP_SECOND: float = Field(default=1e-4, gt=0, description="İkinci türev merkezi fark adımı (göreli)")

    # =========================================================================
    # TOLERANSLAR
    # =========================================================================
    TOL_ALGEBRA: float = Field(default=1e-10, description="Cebirsel özdeşlik toleransı")
    TOL_PARABOLIC: float = Field(default=1e-10, description="|Δ| guard band (τ_par)")
    TOL_INVERTIBLE: float = Field(default=1e-14, description="Tersinirlik için minimum norm")
    TOL_RIGID: float = Field(default=1e-6, description="Rijitlik kapısı (τ_rigid, ölçekli)")
    TOL_COMPAT: float = Field(default=1e-6, description="Ağırlık uyumluluk toleransı (τ_compat)")
    TOL_BOUNDARY: float = Field(default=1e-8, description="ζ sınır mesafesi alt sınırı")
    TOL_CROSSING: float = Field(default=1e-6, description="Karakteristik Jacobian eşiği (τ_cross)")

    # =========================================================================
    # NEWTON / KARAKTERİSTİK AYARLARI
    # =========================================================================
    NEWTON_TOL: float = Field(default=1e-12, description="Örtük Burgers çözücü artık toleransı")
    NEWTON_MAX_ITER: int = Field(default=100, description="Maksimum Newton iterasyonu")
    NEWTON_MAX_HALVINGS: int = Field(default=40, description="Sönümleme yarılama sayısı")

    # =========================================================================
    # JET AYARLARI
    # =========================================================================
    JET_STEP: float = Field(default=1e-2, description="ε şablon adımı δ")
    JET_MIN_STEP: float = Field(default=1e-4, description="Sadeleşme koruması: δ alt sınırı")
    JET_FD_STEP: float = Field(default=1e-3, description="Jet alanlarının uzaysal fark adımı")

    # =========================================================================
    # KUADRATÜR AYARLARI
    # =========================================================================
    GAUSS_ORDER: int = Field(default=8, ge=1, description="Panel başına Gauss-Legendre düğümü")
    CP_RADIAL_PANELS: int = Field(default=4, ge=1, description="Dış radyal panel sayısı (mesh)")
    CP_PATCH_NODES: int = Field(default=32, ge=1, description="Tekil yama radyal düğüm sayısı")
    CP_ANGULAR_NODES: int = Field(default=64, ge=4, description="Açısal düğüm sayısı")
    CP_BOUNDARY_PANELS: int = Field(default=16, ge=1, description="Sınır eğrisi başına panel")
    CP_TRANSPORT: str = Field(default="coefficientwise", description="coefficientwise | embedded")
    CP_AREA_RULE: str = Field(default="auto", description="auto | polar | cells")
    RESIDUE_SAMPLES: int = Field(default=256, ge=8, description="Rezidü trapez düğüm sayısı")
    WEIGHT_PANELS: int = Field(default=8, ge=1, description="Ağırlık yol integrali panel sayısı")

    # =========================================================================
    # PYDANTIC YAPILANDIRMASI
    # =========================================================================
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # =========================================================================
    # YARDIMCI METODLAR
    # =========================================================================
    def first_step(self) -> float:
        """Birinci türevler için mutlak FD adımı."""
        return self.FD_STEP * self.DOMAIN_SCALE

    def second_step(self) -> float:
        """İkinci türevler için mutlak FD adımı."""
        return self.FD_STEP_SECOND * self.DOMAIN_SCALE


@lru_cache()
def get_settings() -> Settings:
    """
    Ayarları döndürür (Singleton pattern).

    lru_cache ile sarıldığından, ilk çağrıda Settings nesnesi
    oluşturulur ve sonraki çağrılarda aynı nesne döndürülür.

    Returns:
        Settings: Yapılandırma nesnesi
    """
    return Settings()
