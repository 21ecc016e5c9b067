"""
Точная арифметика 3×3 матриц над рациональными числами (и над QuadExt)
"""
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Any, List, Sequence, Tuple

from core.exceptions import BadInput, NotNilpotent

Vector = Tuple[Any, Any, Any]


def _coerce(value: Any) -> Any:
    if isinstance(value, bool):
        raise BadInput(f"Matrix entries must be exact numbers, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (float, complex)):
        raise BadInput(f"Matrix entries must be exact, got float {value!r}")
    return value


def _fmt(value: Any) -> str:
    if isinstance(value, Fraction) and value.denominator == 1:
        return str(value.numerator)
    return str(value)


class Mat3:
    """Immutable 3×3 matrix with exact entries"""

    __slots__ = ('_e',)

    def __init__(self, rows: Sequence[Sequence[Any]]):
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise BadInput(f"Mat3 needs 3 rows of 3 entries, got {rows!r}")
        object.__setattr__(self, '_e', tuple(tuple(_coerce(v) for v in r) for r in rows))

    def __setattr__(self, name, value):
        raise AttributeError("Mat3 is immutable")

    def __reduce__(self):
        # the __setattr__ guard breaks default unpickling of slots
        return (Mat3, (self._e,))

    # --- constructors ---

    @classmethod
    def identity(cls) -> 'Mat3':
        return cls([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    @classmethod
    def zero(cls) -> 'Mat3':
        return cls([[0] * 3 for _ in range(3)])

    @classmethod
    def diag(cls, x: Any, y: Any, z: Any) -> 'Mat3':
        return cls([[x, 0, 0], [0, y, 0], [0, 0, z]])

    @classmethod
    def outer(cls, u: Sequence[Any], v: Sequence[Any]) -> 'Mat3':
        """u vᵗ for column u and row v"""
        return cls([[ui * vj for vj in v] for ui in u])

    @classmethod
    def from_columns(cls, c1: Sequence[Any], c2: Sequence[Any], c3: Sequence[Any]) -> 'Mat3':
        return cls([[c1[i], c2[i], c3[i]] for i in range(3)])

    # --- access ---

    def __getitem__(self, ij: Tuple[int, int]) -> Any:
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> Vector:
        return self._e[i]

    def col(self, j: int) -> Vector:
        return (self._e[0][j], self._e[1][j], self._e[2][j])

    @property
    def rows(self) -> Tuple[Vector, Vector, Vector]:
        return self._e

    def entries(self) -> List[Any]:
        return [v for r in self._e for v in r]

    def with_entry(self, i: int, j: int, value: Any) -> 'Mat3':
        rows = [list(r) for r in self._e]
        rows[i][j] = value
        return Mat3(rows)

    # --- arithmetic ---

    def __add__(self, other: 'Mat3') -> 'Mat3':
        if not isinstance(other, Mat3):
            return NotImplemented
        return Mat3([[self._e[i][j] + other._e[i][j] for j in range(3)] for i in range(3)])

    def __sub__(self, other: 'Mat3') -> 'Mat3':
        if not isinstance(other, Mat3):
            return NotImplemented
        return Mat3([[self._e[i][j] - other._e[i][j] for j in range(3)] for i in range(3)])

    def __neg__(self) -> 'Mat3':
        return Mat3([[-v for v in r] for r in self._e])

    def __mul__(self, scalar: Any) -> 'Mat3':
        if isinstance(scalar, Mat3):
            return NotImplemented
        scalar = _coerce(scalar)
        return Mat3([[v * scalar for v in r] for r in self._e])

    def __rmul__(self, scalar: Any) -> 'Mat3':
        return self.__mul__(scalar)

    def __truediv__(self, scalar: Any) -> 'Mat3':
        scalar = _coerce(scalar)
        return Mat3([[v / scalar for v in r] for r in self._e])

    def __matmul__(self, other):
        if isinstance(other, Mat3):
            b = other._e
            return Mat3([[sum((self._e[i][k] * b[k][j] for k in range(1, 3)), self._e[i][0] * b[0][j])
                          for j in range(3)] for i in range(3)])
        if isinstance(other, (tuple, list)) and len(other) == 3:
            vec = [_coerce(v) for v in other]
            return tuple(self._e[i][0] * vec[0] + self._e[i][1] * vec[1] + self._e[i][2] * vec[2]
                         for i in range(3))
        return NotImplemented

    def __pow__(self, n: int) -> 'Mat3':
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        result = Mat3.identity()
        for _ in range(abs(n)):
            result = result @ base
        return result

    @property
    def T(self) -> 'Mat3':
        return Mat3([[self._e[j][i] for j in range(3)] for i in range(3)])

    def congruence(self, n: 'Mat3') -> 'Mat3':
        """nᵗ·self·n"""
        return n.T @ self @ n

    # --- invariants ---

    def trace(self) -> Any:
        return self._e[0][0] + self._e[1][1] + self._e[2][2]

    def _minor(self, r: Tuple[int, int], c: Tuple[int, int]) -> Any:
        e = self._e
        return e[r[0]][c[0]] * e[r[1]][c[1]] - e[r[0]][c[1]] * e[r[1]][c[0]]

    def det(self) -> Any:
        e = self._e
        return (e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1])
                - e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0])
                + e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]))

    def adjugate(self) -> 'Mat3':
        """m·adj(m) = det(m)·E"""
        cof = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                rows = tuple(k for k in range(3) if k != i)
                cols = tuple(k for k in range(3) if k != j)
                sign = 1 if (i + j) % 2 == 0 else -1
                cof[i][j] = sign * self._minor(rows, cols)
        return Mat3([[cof[j][i] for j in range(3)] for i in range(3)])

    def inverse(self) -> 'Mat3':
        d = self.det()
        if d == 0:
            raise BadInput(f"singular matrix {self}")
        return self.adjugate() / d

    def charpoly(self) -> Tuple[Any, Any, Any, Any]:
        """Coefficients of det(m − λE) = −λ³ + tr·λ² − m₂·λ + det, highest first"""
        m2 = sum((self._minor((i, j), (i, j)) for i, j in combinations(range(3), 2)), Fraction(0))
        return (Fraction(-1), self.trace(), -m2, self.det())

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.entries())

    def is_integral(self) -> bool:
        return all(isinstance(v, Fraction) and v.denominator == 1 for v in self.entries())

    def denominator(self) -> int:
        """lcm of entry denominators (rational matrices only)"""
        return reduce(lambda x, y: x * y // gcd(x, y), (v.denominator for v in self.entries()), 1)

    def divisible_by(self, d: int) -> bool:
        return self.is_integral() and all(v.numerator % d == 0 for v in self.entries())

    def smith_invariants(self) -> Tuple[int, int, int]:
        """
        Smith invariants via determinantal divisors d₁ | d₂ | d₃:
        d₁ = gcd of entries, d₂ = gcd of 2×2 minors, d₃ = |det|.
        """
        if not self.is_integral():
            raise BadInput(f"Smith invariants need integer entries, got {self}")
        d1 = reduce(gcd, (int(v) for v in self.entries()), 0)
        pairs = list(combinations(range(3), 2))
        d2 = reduce(gcd, (int(self._minor(r, c)) for r in pairs for c in pairs), 0)
        d3 = abs(int(self.det()))
        invariants = []
        previous = 1
        for d in (d1, d2, d3):
            if d == 0 or previous == 0:
                invariants.append(0)
                previous = 0
            else:
                invariants.append(d // previous)
                previous = d
        return tuple(invariants)

    def exp_nilpotent(self, s: Any = 1) -> 'Mat3':
        """e^{sN} = E + sN + s²N²/2 for N³ = 0"""
        n2 = self @ self
        if not (n2 @ self).is_zero():
            raise NotNilpotent(f"matrix is not nilpotent of order 3: {self}")
        s = _coerce(s)
        return Mat3.identity() + self * s + n2 * (s * s / 2)

    # --- comparison / display ---

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat3):
            return NotImplemented
        return all(a == b for a, b in zip(self.entries(), other.entries()))

    def __hash__(self):
        return hash(tuple(str(v) for v in self.entries()))

    def __repr__(self):
        return "[" + ", ".join("[" + ",".join(_fmt(v) for v in r) + "]" for r in self._e) + "]"

    def to_rows(self) -> List[List[str]]:
        return [[_fmt(v) for v in r] for r in self._e]
