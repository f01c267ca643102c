"""
qqpft - Quaternion quadratic-phase Fourier transforms and their uncertainty principles
"""

__version__ = "0.1.0"
