"""
Varel - İntegral Paketi
=======================

Kuadratür kuralları, bölgeler ve değişken yapılı Cauchy–Pompeiu gösterimi.
"""
