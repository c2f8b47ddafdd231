"""
Core Modülü
===========

Kütüphanenin temel altyapı bileşenlerini içerir.

Modüller:
    - exceptions: Özel hata sınıfları ve CLI çıkış kodları
    - logger: Merkezi loglama yapılandırması
    - types: Ortak tip tanımları
    - config_models: CLI çalışma yapılandırması (pydantic modelleri)
"""
