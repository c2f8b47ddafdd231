"""
Varel - Ana Paket
=================

Değişken eliptik yapılar için sayısal kütüphane ve komut satırı aracı.

Alt Paketler:
    - core: Loglama, hata sınıfları, ortak tipler, çalışma yapılandırması
    - algebra: Hareketli kuadratik fiber cebiri
    - structure: (α, β) alanları, ifade dili, ε-ailesi
    - transport: Karmaşık Burgers taşınımı (karakteristikler)
    - calculus: Kesitler, ∂_z̄, kovaryant D, ağırlıklar, ikinci mertebe
    - integral: Kuadratür, bölgeler, Cauchy–Pompeiu gösterimi
    - jets: Sabit yapı etrafında ε-jet hiyerarşisi
    - cli: Komut satırı arayüzü

Kullanım:
    from app.config import get_settings
    from app.structure.epsilon import EpsilonStructure
    from app.integral.cauchy_pompeiu import reconstruct
"""

__version__ = "0.1.0"
__author__ = "Varel Team"
