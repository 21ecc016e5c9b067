# core/models.py

from dataclasses import dataclass, field
from typing import Optional, List, Dict, Any, Tuple, Iterator

from core.exceptions import BadInput, NotMarkoff


def _is_zero(value: Any) -> bool:
    is_zero = getattr(value, "is_zero", None)
    if callable(is_zero):
        return is_zero()
    if isinstance(value, (tuple, list)):
        return all(_is_zero(v) for v in value)
    return value == 0


@dataclass(frozen=True)
class Factorization:
    """Разложение натурального числа на простые множители"""
    value: int
    factors: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        product = 1
        previous = 1
        for prime, exponent in self.factors:
            if prime <= previous or exponent < 1:
                raise BadInput(f"Factors must have increasing primes and positive exponents, got {self.factors}")
            previous = prime
            product *= prime ** exponent
        if product != self.value:
            raise BadInput(f"Factors {self.factors} do not multiply to {self.value}")

    @property
    def primes(self) -> List[int]:
        return [p for p, _ in self.factors]

    @property
    def odd_primes(self) -> List[int]:
        return [p for p, _ in self.factors if p != 2]

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.factors)

    def __repr__(self):
        return f"Factorization({self.value} = {list(self.factors)})"


@dataclass(frozen=True)
class MarkoffTriple:
    """Решение уравнения Маркова в сортированной форме (𝔞 ≤ 𝔟 ≤ 𝔠)"""
    a_frak: int
    b_frak: int
    c_frak: int

    def __post_init__(self):
        if not 1 <= self.a_frak <= self.b_frak <= self.c_frak:
            raise BadInput(f"Triple members must be positive and sorted, got {tuple(self)}")

    @classmethod
    def of(cls, x: int, y: int, z: int) -> 'MarkoffTriple':
        """Sorts and validates; raises NotMarkoff when the equation fails"""
        if min(x, y, z) < 1:
            raise BadInput(f"Triple members must be positive, got {(x, y, z)}")
        if x * x + y * y + z * z != 3 * x * y * z:
            raise NotMarkoff(f"{(x, y, z)} does not satisfy x² + y² + z² = 3xyz")
        return cls(*sorted((x, y, z)))

    @property
    def members(self) -> Tuple[int, int, int]:
        return (self.a_frak, self.b_frak, self.c_frak)

    @property
    def scaled(self) -> Tuple[int, int, int]:
        return (3 * self.a_frak, 3 * self.b_frak, 3 * self.c_frak)

    @property
    def dominant(self) -> int:
        return self.c_frak

    @property
    def sort_key(self) -> Tuple[int, int, int]:
        return (self.c_frak, self.b_frak, self.a_frak)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __repr__(self):
        return f"({self.a_frak},{self.b_frak},{self.c_frak})"

    def display_name(self) -> str:
        return repr(self)

    def to_dict(self) -> Dict[str, Any]:
        return {'a': self.a_frak, 'b': self.b_frak, 'c': self.c_frak}


@dataclass(frozen=True)
class Orientation:
    """
    Упорядоченная масштабированная тройка (a, b, c), a² + b² + c² = abc.
    When max(a, b, c) is a or c this is the data of the MT-matrix M(a, b, c).
    """
    a: int
    b: int
    c: int

    @classmethod
    def of(cls, a: int, b: int, c: int) -> 'Orientation':
        if min(a, b, c) < 1 or a % 3 or b % 3 or c % 3:
            raise BadInput(f"Scaled members must be positive multiples of 3, got {(a, b, c)}")
        if a * a + b * b + c * c != a * b * c:
            raise NotMarkoff(f"{(a, b, c)} does not satisfy a² + b² + c² = abc")
        return cls(a, b, c)

    @classmethod
    def from_frak(cls, a_frak: int, b_frak: int, c_frak: int) -> 'Orientation':
        return cls.of(3 * a_frak, 3 * b_frak, 3 * c_frak)

    @property
    def m(self) -> int:
        """m = ac − b, the scaled Vieta partner of b"""
        return self.a * self.c - self.b

    @property
    def m_frak(self) -> int:
        return self.m // 3

    @property
    def a_frak(self) -> int:
        return self.a // 3

    @property
    def b_frak(self) -> int:
        return self.b // 3

    @property
    def c_frak(self) -> int:
        return self.c // 3

    @property
    def is_mt(self) -> bool:
        return max(self.a, self.b, self.c) in (self.a, self.c)

    @property
    def triple(self) -> MarkoffTriple:
        return MarkoffTriple(*sorted((self.a_frak, self.b_frak, self.c_frak)))

    @property
    def dominant_triple(self) -> MarkoffTriple:
        """Triple (𝔞, 𝔠, 𝔪) obtained by replacing 𝔟 with its Vieta partner"""
        return MarkoffTriple(*sorted((self.a_frak, self.c_frak, self.m_frak)))

    def mirror(self) -> 'Orientation':
        return Orientation(self.c, self.b, self.a)

    def __iter__(self) -> Iterator[int]:
        return iter((self.a, self.b, self.c))

    def __repr__(self):
        return f"M({self.a},{self.b},{self.c})"

    def to_dict(self) -> Dict[str, Any]:
        return {'a': self.a, 'b': self.b, 'c': self.c, 'm': self.m}


@dataclass
class IdentityReport:
    """Результат проверки одного тождества; pass ⇔ все невязки нулевые"""
    identity_id: str
    subject: str
    params: Dict[str, Any] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)
    residuals: Dict[str, Any] = field(default_factory=dict)
    notes: Dict[str, Any] = field(default_factory=dict)

    def add_residual(self, name: str, residual: Any) -> bool:
        """Records an exact residual; nonzero residuals are kept for the report"""
        ok = _is_zero(residual)
        self.checks[name] = ok
        if not ok:
            self.residuals[name] = residual
        return ok

    def add_equality(self, name: str, lhs: Any, rhs: Any) -> bool:
        return self.add_residual(name, lhs - rhs)

    def add_condition(self, name: str, ok: bool, detail: Any = None) -> bool:
        self.checks[name] = bool(ok)
        if not ok and detail is not None:
            self.residuals[name] = detail
        return bool(ok)

    def add_note(self, name: str, value: Any):
        """Report-only value, never affects the pass flag"""
        self.notes[name] = value

    def merge(self, other: 'IdentityReport', prefix: Optional[str] = None):
        for name, ok in other.checks.items():
            key = f"{prefix}:{name}" if prefix else name
            self.checks[key] = ok
            if name in other.residuals:
                self.residuals[key] = other.residuals[name]
        for name, value in other.notes.items():
            self.notes[f"{prefix}:{name}" if prefix else name] = value

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    def failed_checks(self) -> List[str]:
        return [name for name, ok in self.checks.items() if not ok]

    def __repr__(self):
        status = "pass" if self.passed else f"FAIL {self.failed_checks()}"
        return f"IdentityReport({self.identity_id} on {self.subject}: {status})"

    def to_dict(self) -> Dict[str, Any]:
        detail: Dict[str, Any] = {'checks': len(self.checks)}
        if self.params:
            detail['params'] = {k: str(v) for k, v in self.params.items()}
        if self.residuals:
            detail['residuals'] = {k: str(v) for k, v in self.residuals.items()}
        if self.notes:
            detail['notes'] = {k: str(v) for k, v in self.notes.items()}
        return detail


@dataclass
class CheckRecord:
    """Одна строка отчёта"""
    cmd: str
    subject: str
    check: str
    passed: bool
    detail: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_identity(cls, cmd: str, report: IdentityReport) -> 'CheckRecord':
        return cls(cmd=cmd, subject=report.subject, check=report.identity_id,
                   passed=report.passed, detail=report.to_dict())

    def to_dict(self) -> Dict[str, Any]:
        return {
            'cmd': self.cmd,
            'subject': self.subject,
            'check': self.check,
            'pass': self.passed,
            'detail': self.detail,
        }


@dataclass
class Report:
    """Отчёт команды CLI; overall pass ⇔ все записи прошли"""
    command: str
    params: Dict[str, Any] = field(default_factory=dict)
    records: List[CheckRecord] = field(default_factory=list)
    wall_time: float = 0.0

    def add(self, record: CheckRecord):
        self.records.append(record)

    def extend(self, records: List[CheckRecord]):
        self.records.extend(records)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> List[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def summary(self) -> Dict[str, Any]:
        return {
            'cmd': self.command,
            'subject': 'summary',
            'check': 'overall',
            'pass': self.passed,
            'detail': {
                'params': self.params,
                'records': len(self.records),
                'failures': len(self.failures()),
            },
        }

    def __repr__(self):
        return f"Report({self.command}: {len(self.records)} records, {'pass' if self.passed else 'FAIL'})"
