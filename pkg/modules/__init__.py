"""
Modules package for the plane-partition congruence toolkit.
"""
