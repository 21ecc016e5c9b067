"""
Профиль вычетов (k_𝔠, k_𝔪, k_𝔞, l_𝔠, l_𝔪, l_𝔞) тройки Маркова с доминирующим 𝔪,
тождества Фробениуса, матрица 𝔄 и явная формула для 𝔄⁻¹
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from core.arith import is_square, symmetric_residue
from core.checks import Checker, Corruption
from core.exceptions import BadInput, DegenerateTriple
from core.families import Z, script_A
from core.mat3 import Mat3
from core.models import IdentityReport, MarkoffTriple, Orientation
from core.tree import enumerate_triples

logger = logging.getLogger(__name__)

SHIFTS = (-2, -1, 0, 1, 2)


@dataclass(frozen=True)
class ResidueProfile:
    """Ориентация (𝔠, 𝔪, 𝔞) и параметры k, l"""
    c: int
    m: int
    a: int
    k_c: int
    k_m: int
    k_a: int
    l_c: int
    l_m: int
    l_a: int
    from_table: bool = False

    @property
    def b(self) -> int:
        """The smaller Vieta partner 𝔟 = 3𝔞𝔠 − 𝔪"""
        return 3 * self.a * self.c - self.m

    @property
    def orientation(self) -> Orientation:
        """M(3𝔞, 3𝔟, 3𝔠); its m equals 3𝔪"""
        return Orientation(3 * self.a, 3 * self.b, 3 * self.c)

    @property
    def k(self) -> Tuple[int, int, int]:
        return (self.k_c, self.k_m, self.k_a)

    @property
    def l(self) -> Tuple[int, int, int]:
        return (self.l_c, self.l_m, self.l_a)

    @property
    def sign(self) -> int:
        return -1 if min(self.k) < 0 else 1

    @property
    def mu(self) -> int:
        return 1 if self.a < self.c else -1

    @property
    def frak_A(self) -> Mat3:
        return Mat3([[self.c, self.m, self.a], list(self.k), list(self.l)])

    def shifted(self, x: int) -> Tuple[Tuple[int, int, int], Tuple[int, int, int]]:
        """k_𝔵(x) = k_𝔵 + 𝔵x, l_𝔵(x) = l_𝔵 + 2k_𝔵x + 𝔵x²"""
        members = (self.c, self.m, self.a)
        ks = tuple(k + v * x for k, v in zip(self.k, members))
        ls = tuple(l + 2 * k * x + v * x * x for l, k, v in zip(self.l, self.k, members))
        return ks, ls

    def u_values(self, x: int = 0) -> Tuple[Fraction, Fraction]:
        """(u_a(x), u_c(x)) from the shifted parameters"""
        (k_c, k_m, k_a), (_, l_m, _) = self.shifted(x)
        u_a = Fraction(2 * k_c + self.a * (l_m - 3 * k_m), self.m)
        u_c = Fraction(-2 * k_a + self.c * (l_m + 3 * k_m), self.m)
        return u_a, u_c

    def __repr__(self):
        return f"({self.c},{self.m},{self.a})"

    def to_dict(self) -> Dict[str, Any]:
        return {'orientation': [self.c, self.m, self.a], 'k': list(self.k), 'l': list(self.l)}


# Orientations of (1,1,1), (1,1,2), (1,2,5) and (1,5,13), checked by inspection.
# Below 𝔪 = 5 the residue formula does not apply.
DEGENERATE_PROFILES = {
    (1, 1, 1): ResidueProfile(1, 1, 1, 0, 1, 2, 1, 2, 5, from_table=True),
    (1, 2, 1): ResidueProfile(1, 2, 1, 0, 1, 1, 1, 1, 2, from_table=True),
    (1, 5, 2): ResidueProfile(1, 5, 2, 0, 2, 1, 1, 1, 1, from_table=True),
    (2, 5, 1): ResidueProfile(2, 5, 1, -1, -2, 0, 1, 1, 1, from_table=True),
    (1, 13, 5): ResidueProfile(1, 13, 5, 0, 5, 2, 1, 2, 1, from_table=True),
    (5, 13, 1): ResidueProfile(5, 13, 1, -2, -5, 0, 1, 2, 1, from_table=True),
}


def profile_orientations(t: MarkoffTriple) -> List[Tuple[int, int, int]]:
    """(𝔠, 𝔪, 𝔞) with 𝔪 the dominant member"""
    x, y, m = t.members
    return sorted({(x, m, y), (y, m, x)})


def _profile_of(c: int, m: int, a: int) -> ResidueProfile:
    if (c, m, a) in DEGENERATE_PROFILES:
        return DEGENERATE_PROFILES[(c, m, a)]
    if m < 5:
        raise DegenerateTriple(f"no table entry for orientation {(c, m, a)}")
    return _computed_profile(c, m, a)


def _computed_profile(c: int, m: int, a: int) -> ResidueProfile:
    k_m = symmetric_residue(a * pow(c, -1, m), m)
    k_c = (c * k_m - a) // m
    k_a = (c + a * k_m) // m
    return ResidueProfile(c, m, a, k_c, k_m, k_a,
                          (k_c * k_c + 1) // c, (k_m * k_m + 1) // m, (k_a * k_a + 1) // a)


def compute_profile(t: MarkoffTriple, orientation: Optional[Tuple[int, int, int]] = None,
                    sign: int = 1) -> ResidueProfile:
    """
    Профиль для ориентации (𝔠, 𝔪, 𝔞) тройки t.
    Without an orientation the sign picks one of the two orientations: the
    mirror orientation carries the profile (−k_a, −k_m, −k_c).
    """
    candidates = profile_orientations(t)
    if orientation is not None:
        if tuple(orientation) not in candidates:
            raise BadInput(f"{orientation} is not a profile orientation of {t}")
        return _profile_of(*orientation)
    if sign not in (1, -1):
        raise BadInput(f"sign must be +1 or -1, got {sign}")
    profiles = [_profile_of(*o) for o in candidates]
    for p in profiles:
        if p.sign == sign:
            return p
    raise DegenerateTriple(f"{t} has no profile of sign {sign}")


def all_profiles(m_max: int, m_min: int = 1) -> List[ResidueProfile]:
    """Every profile orientation of every triple with m_min ≤ 𝔪 ≤ m_max"""
    result = []
    for t in enumerate_triples(m_max):
        if t.dominant < m_min:
            continue
        result.extend(_profile_of(*o) for o in profile_orientations(t))
    return result


def frak_B(p: ResidueProfile) -> Mat3:
    """Z⁻¹·𝒜(k_m, l_m) on the orientation of the profile"""
    o = p.orientation
    return Z(o).inverse() @ script_A(o.m, p.k_m, p.l_m, check=False)


def frobenius_identities(p: ResidueProfile, corrupt: Optional[Corruption] = None) -> IdentityReport:
    c, m, a, b = p.c, p.m, p.a, p.b
    k_c, k_m, k_a = p.k
    l_c, l_m, l_a = p.l
    chk = Checker('6.4', p, {'k': p.k, 'l': p.l}, corrupt)

    chk.eq('k_m l_a - k_a l_m', k_m * l_a - k_a * l_m, l_c + 3 * k_c)
    chk.eq('k_c l_m - k_m l_c', k_c * l_m - k_m * l_c, l_a - 3 * k_a)
    chk.eq('m l_a - a l_m', m * l_a - a * l_m, 2 * k_c + 3 * c)
    chk.eq('c l_m - m l_c', c * l_m - m * l_c, 2 * k_a - 3 * a)

    chk.eq('c k_m - m k_c = a', c * k_m - m * k_c, a)
    chk.eq('m k_a - a k_m = c', m * k_a - a * k_m, c)
    for name, k, l, v in zip(('c', 'm', 'a'), p.k, p.l, (c, m, a)):
        chk.eq(f'k_{name}^2+1', k * k + 1, v * l)
    if p.from_table and p.m >= 5:
        computed = _computed_profile(p.c, p.m, p.a)
        chk.cond('table entry matches residue formula', (computed.k, computed.l) == (p.k, p.l), computed.k)
    if p.m >= 5:
        chk.cond('same sign', all(k >= 0 for k in p.k) or all(k <= 0 for k in p.k), p.k)
        chk.cond('|k| <= x/2', all(2 * abs(k) <= v for k, v in zip(p.k, (c, m, a))), p.k)
        chk.cond('l <= x/4 + 1/x', all(Fraction(l) <= Fraction(v, 4) + Fraction(1, v)
                                       for l, v in zip(p.l, (c, m, a))), p.l)

    chk.eq('A (c,-b,a) = (0,0,2)', p.frak_A @ (c, -b, a), (0, 0, 2))
    chk.eq('det A = 2', p.frak_A.det(), 2)
    chk.eq('admissible', a * l_c + c * l_a - 2 * k_c * k_a, 3 * b)

    for x in SHIFTS:
        (kc, km, ka), (lc, lm, la) = p.shifted(x)
        chk.eq(f'b l_m({x})', b * lm, ka * ka + kc * kc)
        chk.eq(f'k_a^2+k_c^2({x})', ka * ka + kc * kc, a * la + c * lc - 2)
        chk.eq(f'a l_a - b l_m + c l_c ({x})', a * la - b * lm + c * lc, 2)
        u_a, u_c = p.u_values(x)
        base_a, base_c = p.u_values(0)
        chk.eq(f'u_a({x}) polynomial', u_a, a * x * x + (2 * k_a - 3 * a) * x + base_a)
        chk.eq(f'u_c({x}) polynomial', u_c, c * x * x + (2 * k_c + 3 * c) * x + base_c)
        chk.eq(f'v_a({x}) = l_a({x})', u_a + 3 * ka, la)
        chk.eq(f'v_c({x}) = l_c({x})', u_c - 3 * kc, lc)
    u_a, u_c = p.u_values(0)
    chk.cond('u integral', u_a.denominator == 1 and u_c.denominator == 1, (u_a, u_c))
    return chk.done()


@dataclass(frozen=True)
class InverseFormula:
    """2𝔄⁻¹ in closed form together with the sign data"""
    matrix: Mat3
    mu: int
    nu: Optional[int]
    y: int
    k_b: Fraction
    l_b: Fraction


def _inverse_quadratic(p: ResidueProfile, y, sigma: int):
    b = p.b
    return p.m * y * y - 4 * b * p.k_m * y - (9 * b * b - 4) * p.m + 4 * b * b * p.l_m + 8 * b * sigma


def inverse_discriminant(p: ResidueProfile, sigma: int) -> int:
    """Discriminant in y of 𝔪y² − 4𝔟k_m·y − (9𝔟² − 4)𝔪 + 4𝔟²l_m + 8𝔟σ"""
    b = p.b
    const = -(9 * b * b - 4) * p.m + 4 * b * b * p.l_m + 8 * b * sigma
    return 16 * b * b * p.k_m * p.k_m - 4 * p.m * const


def inverse_formula(p: ResidueProfile) -> InverseFormula:
    if p.a == p.c:
        raise DegenerateTriple(f"inverse formula needs distinct 𝔞, 𝔠, got {p}")
    adj = p.frak_A.adjugate()
    mu, b = p.mu, p.b
    y = int(adj[1, 1])
    k_b = Fraction(y - 3 * mu * b, 2)
    l_b = -adj[1, 0] - 3 * mu * k_b

    nu_candidates = [s for s in (1, -1) if 2 * abs(Fraction(y - 3 * s * b, 2)) <= b]
    nu = nu_candidates[0] if len(nu_candidates) == 1 else None

    c, a = p.c, p.a
    k_c, _, k_a = p.k
    l_c, _, l_a = p.l
    matrix = Mat3([
        [l_c + 3 * k_c, -(2 * k_c + 3 * c), c],
        [-(l_b + 3 * mu * k_b), 2 * k_b + 3 * mu * b, -b],
        [l_a - 3 * k_a, -(2 * k_a - 3 * a), a],
    ]) / 2
    return InverseFormula(matrix, mu, nu, y, k_b, l_b)


def check_inverse_formula(p: ResidueProfile, corrupt: Optional[Corruption] = None) -> IdentityReport:
    f = inverse_formula(p)
    chk = Checker('6.28', p, {'mu': f.mu, 'y': f.y}, corrupt)
    chk.eq('formula * A = E', f.matrix @ p.frak_A, Mat3.identity())
    chk.cond('k_b integral', f.k_b.denominator == 1, f.k_b)
    chk.eq('k_b^2+1 = b l_b', f.k_b * f.k_b + 1, p.b * f.l_b)
    chk.eq('quadratic sigma=1', _inverse_quadratic(p, f.y, 1), 0)
    disc_minus = inverse_discriminant(p, -1)
    chk.note('sigma=-1 discriminant', disc_minus)
    chk.cond('sigma=-1 has no rational root', not is_square(disc_minus), disc_minus)
    chk.note('nu', f.nu)
    if f.nu is not None and f.nu != f.mu:
        chk.note('nu != mu', True)
        logger.debug(f"{p}: nu={f.nu} differs from mu={f.mu}")
    return chk.done()


def cor69_check(p: ResidueProfile, corrupt: Optional[Corruption] = None) -> IdentityReport:
    """Z⁻¹𝒜 = 𝔄⁻¹·diag(1/3, 1, 3) and 𝔪² divides Z^adj·𝒜"""
    o = p.orientation
    chk = Checker('cor6.9', p, {'orientation': repr(o)}, corrupt)
    script = script_A(o.m, p.k_m, p.l_m, check=False)
    chk.eq('Z^-1 A', Z(o).inverse() @ script,
           p.frak_A.inverse() @ Mat3.diag(Fraction(1, 3), 1, 3))
    za = Z(o).adjugate() @ script
    chk.cond('m^2 | Z^adj A', za.divisible_by(p.m * p.m), za)
    return chk.done()
