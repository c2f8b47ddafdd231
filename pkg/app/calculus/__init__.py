"""
Calculus Modülü
===============

Cebir değerli kesitler üzerinde birinci ve ikinci mertebe analiz:
∂_x, ∂_y, ∂_z̄, ∂_z, kovaryant D, ağırlıklar, ikinci mertebe açılım.
"""
