"""
Structure Modülü
================

Değişken yapı alanları (α, β), ifade dili, skaler alanlar ve rijit ε-ailesi.
"""
