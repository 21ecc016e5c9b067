"""
Helper utilities
"""

from .export import ExportUtils
from .logger import setup_logging

__all__ = ['ExportUtils', 'setup_logging']
