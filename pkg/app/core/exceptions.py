"""
Varel - Özel Hata Sınıfları
===========================

Bu modül, kütüphanede kullanılan özel exception sınıflarını tanımlar.
Her hata sınıfı:
- Teknik detay (loglama için)
- Kısa, okunabilir mesaj (CLI raporunda gösterilecek)
- CLI çıkış kodu

Kullanım:
    from app.core.exceptions import EllipticityError, NonInvertibleError

    if delta <= 0:
        raise EllipticityError(point=(x, y), delta=delta)

Exception Hiyerarşisi:
    VarelException (base)
    ├── ToleranceError (2)
    ├── ConfigError (3)
    │   └── ExpressionParseError (3)
    └── PreconditionError (4)
        ├── FiberMismatchError
        ├── NonInvertibleError
        ├── ParabolicDegeneracyError
        ├── EllipticityError
        ├── NotParabolicError
        ├── DomainError
        ├── MissingDerivativeError
        ├── ConvergenceError
        ├── CrossingDetectedError
        ├── NotIntegrableError
        ├── RigidityGateError
        ├── QuadratureError
        └── StencilError
"""

from typing import Optional, Tuple

# =============================================================================
# ÇIKIŞ KODLARI
# =============================================================================

EXIT_OK = 0
EXIT_TOLERANCE = 2
EXIT_CONFIG = 3
EXIT_DOMAIN = 4


class VarelException(Exception):
    """
    Varel temel hata sınıfı.

    Tüm özel hatalar bu sınıftan türetilir. İki tür mesaj içerir:
    - message: Teknik detay (log dosyalarına yazılır)
    - user_message: Kısa mesaj (CLI raporunda gösterilir)

    Attributes:
        message (str): Teknik hata mesajı (loglama için)
        user_message (str): Raporda gösterilecek mesaj
        exit_code (int): CLI çıkış kodu

    Example:
        >>> raise VarelException(
        ...     message="quadrature diverged: 1e+3",
        ...     user_message="Hesaplama başarısız.",
        ...     exit_code=4
        ... )
    """

    def __init__(
        self,
        message: str,
        user_message: Optional[str] = None,
        exit_code: int = 1
    ):
        self.message = message
        self.user_message = user_message or "Bir hata oluştu."
        self.exit_code = exit_code
        super().__init__(message)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(message={self.message!r}, exit_code={self.exit_code})"


# =============================================================================
# TOLERANS VE YAPILANDIRMA HATALARI
# =============================================================================

class ToleranceError(VarelException):
    """
    Tolerans ihlali.

    Bir doğrulama (selftest, rigidity gate dışı kontroller) beklenen
    toleransı aştığında fırlatılır. Çıkış kodu 2.

    Example:
        >>> raise ToleranceError("burgers residual 3e-6 > 1e-8", check="burgers")
    """

    def __init__(self, message: str, check: Optional[str] = None):
        self.check = check
        super().__init__(
            message=message,
            user_message=f"Tolerans aşıldı: {check}" if check else "Tolerans aşıldı.",
            exit_code=EXIT_TOLERANCE
        )


class ConfigError(VarelException):
    """
    Yapılandırma hatası.

    Config dosyası okunamadığında, alan eksik veya geçersiz olduğunda
    fırlatılır. Çıkış kodu 3.
    """

    def __init__(self, message: str, user_message: Optional[str] = None):
        super().__init__(
            message=message,
            user_message=user_message or "Geçersiz yapılandırma. Config dosyasını kontrol edin.",
            exit_code=EXIT_CONFIG
        )


class ExpressionParseError(ConfigError):
    """
    İfade ayrıştırma hatası.

    Attributes:
        position (int): Hatanın metin içindeki konumu (0 tabanlı)
        text (str): Ayrıştırılan ifade

    Example:
        >>> raise ExpressionParseError("unexpected token ')'", text="1+)", position=2)
    """

    def __init__(self, message: str, text: str = "", position: int = -1):
        self.text = text
        self.position = position
        where = f" (konum {position})" if position >= 0 else ""
        super().__init__(
            message=f"{message} at position {position} in {text!r}",
            user_message=f"İfade ayrıştırılamadı{where}: {message}"
        )


# =============================================================================
# ÖN KOŞUL / TANIM KÜMESİ HATALARI
# =============================================================================

class PreconditionError(VarelException):
    """
    Bir işlemin ön koşulu sağlanmadığında fırlatılan ortak sınıf.

    Çıkış kodu 4 (domain violation). Mesaj, ihlal edilen ön koşulu adlandırır.
    """

    def __init__(self, message: str, user_message: Optional[str] = None):
        super().__init__(
            message=message,
            user_message=user_message or "Ön koşul sağlanmadı.",
            exit_code=EXIT_DOMAIN
        )


class FiberMismatchError(PreconditionError):
    """İki eleman farklı fiberlerde yaşıyor; çarpım/toplam tanımsız."""

    def __init__(self, left: Tuple[float, float], right: Tuple[float, float]):
        self.left = left
        self.right = right
        super().__init__(
            message=f"fiber mismatch: (alpha, beta)={left} vs {right}",
            user_message="Elemanlar aynı fibere ait değil."
        )


class NonInvertibleError(PreconditionError):
    """
    Norm sıfıra çok yakın; eleman tersinir değil.

    Attributes:
        norm (float): Hesaplanan norm değeri
    """

    def __init__(self, norm: float):
        self.norm = norm
        super().__init__(
            message=f"element not invertible: norm={norm:.3e}",
            user_message="Eleman tersinir değil (norm ~ 0)."
        )


class ParabolicDegeneracyError(PreconditionError):
    """Δ = 0: 2i+β sıfır bölen, ters alınamaz."""

    def __init__(self, delta: float):
        self.delta = delta
        super().__init__(
            message=f"parabolic degeneracy: delta={delta:.3e}, 2i+beta is a zero divisor",
            user_message="Parabolik fiber: 2i+β tersinir değil."
        )


class EllipticityError(PreconditionError):
    """
    Eliptiklik ihlali (Δ ≤ 0).

    Attributes:
        point: İhlalin gözlendiği nokta (varsa)
        delta (float): Δ = 4α − β² değeri
    """

    def __init__(self, delta: float, point: Optional[Tuple[float, float]] = None):
        self.delta = delta
        self.point = point
        where = f" at {point}" if point is not None else ""
        super().__init__(
            message=f"ellipticity violated{where}: delta={delta:.6e} <= 0",
            user_message="Yapı bu noktada eliptik değil."
        )


class NotParabolicError(PreconditionError):
    """Parabolik yol çağrıldı ama |Δ| guard band dışında."""

    def __init__(self, delta: float, tolerance: float):
        self.delta = delta
        super().__init__(
            message=f"not parabolic: |delta|={abs(delta):.3e} > tau_par={tolerance:.1e}",
            user_message="Nokta parabolik değil."
        )


class DomainError(PreconditionError):
    """Nokta tanım kümesi dışında; sessiz ekstrapolasyon yapılmaz."""

    def __init__(self, point: Tuple[float, float], reason: str = "outside domain"):
        self.point = point
        super().__init__(
            message=f"point {point}: {reason}",
            user_message=f"Nokta tanım kümesi dışında: {reason}"
        )


class MissingDerivativeError(PreconditionError):
    """İstenen türev sağlanamıyor (ör. order > 2)."""

    def __init__(self, what: str):
        super().__init__(
            message=f"missing derivative: {what}",
            user_message="Gerekli türev mevcut değil."
        )


class ConvergenceError(PreconditionError):
    """
    Newton iterasyonu yakınsamadı.

    Attributes:
        residual (float): Son artık
        iterations (int): Yapılan iterasyon sayısı
    """

    def __init__(self, residual: float, iterations: int):
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            message=f"newton did not converge after {iterations} iterations: residual={residual:.3e}",
            user_message="Örtük çözüm yakınsamadı."
        )


class CrossingDetectedError(PreconditionError):
    """Karakteristik Jacobian'ı sıfıra yaklaştı (karakteristik kesişimi)."""

    def __init__(self, x: float, y: float, modulus: float):
        self.x = x
        self.y = y
        self.modulus = modulus
        super().__init__(
            message=f"characteristic crossing near ({x}, {y}): |jacobian|={modulus:.3e}",
            user_message="Karakteristikler kesişiyor; düzgün çözüm bölgesi dışında."
        )


class NotIntegrableError(PreconditionError):
    """Ağırlık 1-formu kapalı değil: (A_y)_y ≠ (B_y)_x."""

    def __init__(self, max_residual: float, tolerance: float):
        self.max_residual = max_residual
        super().__init__(
            message=f"weight system not integrable: max |(A_y)_y - (B_y)_x| = {max_residual:.3e} > {tolerance:.1e}",
            user_message="Ağırlık denklemi bu dikdörtgende integre edilemez."
        )


class RigidityGateError(PreconditionError):
    """
    Rijit olmayan yapı reddedildi.

    Cauchy–Pompeiu gösterimi ve ikinci mertebe açılım rijitlik varsayar.
    """

    def __init__(self, residual: float, tolerance: float, where: str = ""):
        self.residual = residual
        super().__init__(
            message=f"rigidity gate{(' ' + where) if where else ''}: max |G| = {residual:.3e} > {tolerance:.1e}",
            user_message="Yapı rijit değil; işlem rijitlik gerektiriyor."
        )


class QuadratureError(PreconditionError):
    """Kuadratür kurulamadı (ζ sınıra çok yakın, bölge dışı vb.)."""

    def __init__(self, message: str):
        super().__init__(message=message, user_message="Kuadratür başarısız.")


class StencilError(PreconditionError):
    """Sonlu fark şablonu tanım kümesinden taşıyor."""

    def __init__(self, point: Tuple[float, float], step: float):
        self.point = point
        self.step = step
        super().__init__(
            message=f"finite-difference stencil of step {step:.2e} at {point} leaves the domain",
            user_message="Sonlu fark şablonu tanım kümesi dışına taşıyor."
        )
