"""
Service layer: verification suites
"""

from .verification_service import VerificationService, SUITES

__all__ = ['VerificationService', 'SUITES']
