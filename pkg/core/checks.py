"""
Сборка IdentityReport с необязательной порчей первой проверки (негативный контроль)
"""
import logging
from typing import Any, Dict, Optional, Tuple

from core.mat3 import Mat3
from core.models import IdentityReport

logger = logging.getLogger(__name__)

Corruption = Tuple[int, int]


def _perturb(value: Any, entry: Corruption) -> Any:
    if isinstance(value, Mat3):
        i, j = entry
        return value.with_entry(i, j, value[i, j] + 1)
    if isinstance(value, tuple):
        return (value[0] + 1,) + value[1:]
    return value + 1


class Checker:
    """
    Thin wrapper over IdentityReport.
    With corrupt=(i, j) the left-hand side of the first equality is perturbed
    by +1 in entry (i, j) (first component for vectors, +1 for scalars).
    """

    def __init__(self, identity_id: str, subject: Any, params: Optional[Dict[str, Any]] = None,
                 corrupt: Optional[Corruption] = None):
        self.report = IdentityReport(identity_id=identity_id, subject=str(subject),
                                     params=dict(params or {}))
        self._corrupt = corrupt

    def eq(self, name: str, lhs: Any, rhs: Any) -> bool:
        if self._corrupt is not None:
            lhs = _perturb(lhs, self._corrupt)
            self._corrupt = None
        if isinstance(lhs, tuple):
            return self.report.add_residual(name, tuple(x - y for x, y in zip(lhs, rhs)))
        return self.report.add_equality(name, lhs, rhs)

    def cond(self, name: str, ok: bool, detail: Any = None) -> bool:
        if self._corrupt is not None:
            ok = False
            self._corrupt = None
        return self.report.add_condition(name, ok, detail)

    def note(self, name: str, value: Any):
        self.report.add_note(name, value)

    def printed(self, name: str, lhs: Any, rhs: Any):
        """Report-only comparison of a printed formula variant"""
        residual = lhs - rhs if not isinstance(lhs, tuple) else tuple(x - y for x, y in zip(lhs, rhs))
        zero = residual.is_zero() if isinstance(residual, Mat3) else (
            all(r == 0 for r in residual) if isinstance(residual, tuple) else residual == 0)
        self.report.add_note(f"printed:{name}", "holds" if zero else f"residual {residual}")
        if not zero:
            logger.warning(f"{self.report.identity_id} on {self.report.subject}: printed form of {name} "
                           f"differs, residual {residual}")

    def merge(self, other: IdentityReport, prefix: Optional[str] = None):
        self.report.merge(other, prefix)

    def done(self) -> IdentityReport:
        return self.report
