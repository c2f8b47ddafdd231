"""
Varel - Ana Giriş Noktası
=========================

Bu dosya bir köprüdür; gerçek kod app/cli/main.py içindedir.

Çalıştırma (her iki yol da geçerli):
    python main.py selftest
    varel selftest
"""

# =============================================================================
# YENİ YAPIYI KULLAN
# =============================================================================

from app.cli.main import main

if __name__ == "__main__":
    raise SystemExit(main())
