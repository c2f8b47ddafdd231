"""
Varel - Komut Satırı Paketi
===========================

Modüller:
    - main: argparse giriş noktası ve çıkış kodu eşlemesi
    - commands: grup/eylem komutları
    - selftest: kabul kontrolleri paketi
    - report: metin, JSON ve CSV biçimlendirme
"""
