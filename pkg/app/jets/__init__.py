"""
Varel - Jet Paketi
==================

Sabit yapı etrafında spektral parametrenin ε-jetleri (μ, ν, ρ).
"""
