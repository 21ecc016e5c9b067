"""
Core модули: тройки Маркова, матрицы 3×3, квадратичные формы, норменные уравнения
"""

from .models import MarkoffTriple, Orientation, IdentityReport
from .mat3 import Mat3

__all__ = ['MarkoffTriple', 'Orientation', 'IdentityReport', 'Mat3']
