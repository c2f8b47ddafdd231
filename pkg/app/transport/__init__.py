"""
Varel - Taşınım Paketi
======================

Spektral parametre için korunumlu ve zorlanmış karmaşık Burgers taşınımı.
"""
