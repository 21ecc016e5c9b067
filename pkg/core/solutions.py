"""
Целочисленные решения системы XᵗM X = G_q с первым столбцом (c, −b, a)ᵗ,
их разложение Z·X = 𝒜·ℬ и соответствие вычетов −1 и пар делителей
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional

from core.arith import factorize, sqrt_minus_one
from core.checks import Checker, Corruption
from core.exceptions import BadInput, BadParams, FactorizationFailed, NotAResidue, NotDivisibleBy3
from core.families import G_q, J_ANTI, M, R, W, Z, alpha_data, script_A, script_B
from core.mat3 import Mat3
from core.models import IdentityReport, Orientation
from core.tree import ROOT_ORIENTATION, transformer

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolutionX:
    """Решение X на ориентации `orientation` с параметрами q, ε, j"""
    matrix: Mat3
    orientation: Orientation
    q: int
    eps: int
    j: int

    def first_column(self):
        return self.matrix.col(0)

    def validate(self, corrupt: Optional[Corruption] = None) -> IdentityReport:
        """XᵗMX = G_q, first column (c, −b, a), ε² + 1 = (q/3)·j, and the R-chain on the columns"""
        o = self.orientation
        chk = Checker('X', o, {'q': self.q, 'eps': self.eps, 'j': self.j}, corrupt)
        chk.eq('XtMX=G_q', M(o).congruence(self.matrix), G_q(self.q))
        chk.eq('first_column', self.first_column(), (o.c, -o.b, o.a))
        chk.eq('eps^2+1=(q/3)j', self.eps * self.eps + 1, (self.q // 3) * self.j)
        chk.cond('integral', self.matrix.is_integral())
        r = R(o)
        x1, x2, x3 = self.matrix.col(0), self.matrix.col(1), self.matrix.col(2)
        chk.eq('R x2 = x3', r @ x2, x3)
        chk.eq('R x3 = 4q x1', r @ x3, tuple(4 * self.q * v for v in x1))
        return chk.done()

    def to_dict(self) -> Dict[str, Any]:
        return {'orientation': repr(self.orientation), 'q': self.q, 'eps': self.eps,
                'j': self.j, 'X': self.matrix.to_rows()}


@dataclass(frozen=True)
class SolutionFactors:
    """Z·X = 𝒜(α, l)·ℬ(q, ε)"""
    script_A: Mat3
    script_B: Mat3
    alpha: int
    k: int
    l: int
    eps: int
    j: Fraction


@dataclass(frozen=True)
class ResiduePairing:
    """n² + 1 = 𝕞·l; p·q = 𝕞, p | cn + a, q | cn − a"""
    n: int
    l: int
    p: int
    q: int
    modulus: int


def _check_q(q: int):
    if q < 3 or q % 3:
        raise NotDivisibleBy3(f"q must be a positive multiple of 3, got {q}")


def root_solution(q: int, eps: int) -> SolutionX:
    """Closed form of X on M(3,3,3) for one ε with ε² ≡ −1 (mod q/3)"""
    _check_q(q)
    third = q // 3
    if (eps * eps + 1) % third:
        raise NotAResidue(f"{eps}^2 + 1 is not divisible by q/3 = {third}")
    j = (eps * eps + 1) // third
    x22 = Fraction(eps - j + third, 2)
    x32 = Fraction(eps + j - third, 2)
    x12 = third - 2 * x22 - x32
    matrix = Mat3([
        [3, x12, -3 * q + 6 * eps],
        [-3, x22, q - 6 * eps],
        [3, x32, q + 6 * eps],
    ])
    return SolutionX(matrix, ROOT_ORIENTATION, q, eps, j)


def solve_root_system(q: int) -> List[SolutionX]:
    """One solution on the root triple per residue class ε ∈ [0, q/3)"""
    _check_q(q)
    solutions = []
    for eps in sqrt_minus_one(q // 3):
        x = root_solution(q, eps)
        report = x.validate()
        if not report.passed:
            logger.error(f"root solution q={q}, eps={eps} fails {report.failed_checks()}")
            continue
        solutions.append(x)
    logger.debug(f"solve_root_system({q}) -> {len(solutions)} classes")
    return solutions


def transport_solution(x: SolutionX, dst: Orientation) -> SolutionX:
    """N·X with Nᵗ·M(dst)·N = M(src); keeps the first-column shape and G_q"""
    n = transformer(x.orientation, dst)
    return SolutionX(n @ x.matrix, dst, x.q, x.eps, x.j)


def w_solution(o: Orientation) -> SolutionX:
    """X = W with q = m and ε = α"""
    alpha, _, l = alpha_data(o)
    return SolutionX(W(o), o, o.m, alpha, l)


def factor_solution(x: SolutionX, alpha: Optional[int] = None) -> SolutionFactors:
    """
    ℬ = 𝒜⁻¹·Z·X must match the template [[0,q,0],[0,ε,2q],[2,J,4ε]];
    ε is read from the middle entry.
    """
    o = x.orientation
    alpha, k, l = alpha_data(o, alpha)
    a_mat = script_A(o.m, alpha, l)
    zx = Z(o) @ x.matrix
    b_mat = a_mat.inverse() @ zx
    eps = b_mat[1, 1]
    if eps.denominator != 1:
        raise FactorizationFailed(f"middle entry of B is not an integer: {b_mat}")
    eps = int(eps)
    try:
        template = script_B(x.q, eps)
    except BadParams as e:
        raise FactorizationFailed(f"B does not fit the template for q={x.q}: {e}") from e
    if template != b_mat:
        raise FactorizationFailed(f"B = {b_mat} differs from template {template}")
    return SolutionFactors(a_mat, b_mat, alpha, k, l, eps, Fraction(eps * eps + 1, x.q // 3))


def check_factorization(x: SolutionX, corrupt: Optional[Corruption] = None) -> IdentityReport:
    o = x.orientation
    f = factor_solution(x)
    chk = Checker('ZX=AB', o, {'q': x.q, 'alpha': f.alpha, 'eps': f.eps}, corrupt)
    chk.eq('ZX=AB', Z(o) @ x.matrix, f.script_A @ f.script_B)
    chk.eq('c*alpha-a=m*k', o.c * f.alpha - o.a, o.m * f.k)
    chk.eq('alpha^2+1=(m/3)l', 3 * (f.alpha * f.alpha + 1), o.m * f.l)
    chk.eq('eps^2+1=(q/3)j', f.eps * f.eps + 1, (x.q // 3) * f.j)
    chk.cond('j integral', f.j.denominator == 1)
    if o.m % 2:
        den = (f.script_A.inverse() @ Z(o)).denominator()
        chk.cond('A^-1 Z denominators divide 3', 3 % den == 0, den)
    return chk.done()


def equivalent(x1: SolutionX, x2: SolutionX) -> Optional[int]:
    """
    i with e^{(i/2)·R/3}·X₁ = X₂, or None when ε₁ ≢ ε₂ (mod q/3).
    The sign of i depends on the orientation, so both signs are tried.
    """
    if x1.orientation != x2.orientation or x1.q != x2.q:
        return None
    third = x1.q // 3
    if (x2.eps - x1.eps) % third:
        return None
    i = (x2.eps - x1.eps) // third
    r3 = R(x1.orientation) / 3
    for candidate in (i, -i):
        if r3.exp_nilpotent(Fraction(candidate, 2)) @ x1.matrix == x2.matrix:
            return candidate
    logger.debug(f"no exponent relates eps={x1.eps} and eps={x2.eps} for q={x1.q}")
    return None


SEARCH_RADIUS = 6


def search_equivalence(x1: SolutionX, x2: SolutionX, radius: int = SEARCH_RADIUS) -> Optional[int]:
    """
    Перебор i = 0, 1, −1, 2, −2, … с |i| ≤ radius и проверкой e^{(i/2)·R/3}·X₁ = X₂.
    No congruence shortcut: every candidate is tested as a matrix identity.
    """
    if radius < 0:
        raise BadInput(f"radius must be >= 0, got {radius}")
    if x1.orientation != x2.orientation or x1.q != x2.q:
        return None
    r3 = R(x1.orientation) / 3
    for step in range(radius + 1):
        for i in ((0,) if step == 0 else (step, -step)):
            if r3.exp_nilpotent(Fraction(i, 2)) @ x1.matrix == x2.matrix:
                return i
    return None


def pairing_modulus(o: Orientation) -> int:
    """𝕞 = m/3 for odd m, m/6 for even m"""
    return o.m // 3 if o.m % 2 else o.m // 6


def unitary_divisors(n: int) -> List[int]:
    """d | n with gcd(d, n/d) = 1"""
    divisors = [1]
    if n == 1:
        return divisors
    for prime, exponent in factorize(n):
        divisors = divisors + [d * prime ** exponent for d in divisors]
    return sorted(divisors)


def residue_pairing(n: int, o: Orientation) -> ResiduePairing:
    """The unique ordered (p, q), p·q = 𝕞, with p | c·n + a and q | c·n − a"""
    modulus = pairing_modulus(o)
    if (n * n + 1) % modulus:
        raise NotAResidue(f"{n}^2 + 1 is not divisible by {modulus}")
    plus, minus = o.c * n + o.a, o.c * n - o.a
    for p in unitary_divisors(modulus):
        q = modulus // p
        if plus % p == 0 and minus % q == 0:
            return ResiduePairing(n, (n * n + 1) // modulus, p, q, modulus)
    raise NotAResidue(f"no divisor pair of {modulus} fits n={n} on {o}")


def F_polynomial(n: int, o: Orientation) -> int:
    """F(n) = 𝔠n² + (3𝔪𝔠 − 2𝔞)n − 𝔠"""
    a, c, m = o.a_frak, o.c_frak, o.m_frak
    return c * n * n + (3 * m * c - 2 * a) * n - c


def frak_A(n: int, o: Orientation) -> Mat3:
    """𝔸 = Z^adj·𝒜(n, l), l = (n² + 1)/𝔪"""
    m_frak = o.m_frak
    if (n * n + 1) % m_frak:
        raise NotAResidue(f"{n}^2 + 1 is not divisible by {m_frak}")
    return Z(o).adjugate() @ script_A(o.m, n, (n * n + 1) // m_frak)


def check_F_polynomial(n: int, o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    a, c, m = o.a_frak, o.c_frak, o.m_frak
    fp, fm = F_polynomial(n, o), F_polynomial(-n, o)
    chk = Checker('4.11', o, {'n': n}, corrupt)
    chk.eq('F(n)F(-n)', fp * fm, c * c * (n * n + 1) ** 2 - (9 * c * c - 4) * m * m * n * n)
    chk.printed('F(n)F(-n)', fp * fm, c * c * (n * n + 1) ** 2 + (9 * c * c - 4) * m * m * n * n)
    chk.note('F(n)', fp)
    chk.note('F(-n)', fm)
    chk.cond('frak_m^2 | F(n)F(-n) iff frak_m | n^2+1',
             ((fp * fm) % (m * m) == 0) == ((n * n + 1) % m == 0), (fp * fm) % (m * m))
    modulus = pairing_modulus(o)
    if (n * n + 1) % modulus == 0:
        pairing = residue_pairing(n, o)
        chk.note('pairing', (pairing.p, pairing.q))
        chk.cond('q^2 | F(n)', fp % (pairing.q ** 2) == 0, fp)
        chk.cond('p^2 | F(-n)', fm % (pairing.p ** 2) == 0, fm)
        chk.cond('frak_m^2 | F(n) iff p = 1', (fp % (modulus ** 2) == 0) == (pairing.p == 1))
        if (n * n + 1) % m == 0:
            big_a = frak_A(n, o)
            chk.eq('A11 = 3F(n)', big_a[0, 0], 3 * fp)
            if o.m % 2:
                chk.cond('q^2 | first column of A', all(v.denominator == 1 and v.numerator % pairing.q ** 2 == 0
                                                       for v in big_a.col(0)), big_a.col(0))
            chk.note('A first column', big_a.col(0))
    return chk.done()


def check_W_reconstruction(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    """W alone determines (a, b, c) and q = ac − b"""
    w = W(o)
    chk = Checker('4.1', o, {}, corrupt)
    chk.eq('w12,w32,w22', (w[0, 1], w[2, 1], w[1, 1]), (0, 0, 1))
    c, minus_b, a = w.col(0)
    recovered = Orientation(int(a), int(-minus_b), int(c))
    chk.cond('recovered orientation', recovered == o, recovered)
    chk.eq('q=ac-b', recovered.a * recovered.c - recovered.b, o.m)
    chk.eq('WtMW=G_q', M(recovered).congruence(w), G_q(o.m))
    return chk.done()


def check_mirror_conjugation(x: SolutionX) -> IdentityReport:
    """
    Exploratory: X* = 𝒥·X·diag(1,1,−1) against two readings of the conjugator
    e^{E − (β/2q)R}. Everything is report-only.
    """
    chk = Checker('cor4.4', x.orientation, {'q': x.q, 'eps': x.eps})
    star = J_ANTI @ x.matrix @ Mat3.diag(1, 1, -1)
    beta = x.matrix[2, 2]
    r3 = R(x.orientation) / 3
    nilpotent_only = r3.exp_nilpotent(-beta / (2 * x.q)) @ x.matrix
    linear = (Mat3.identity() - r3 * (beta / (2 * x.q))) @ x.matrix
    chk.printed('without E', nilpotent_only, star)
    chk.printed('first order with E', linear, star)
    if x.orientation.a == x.orientation.c:
        chk.cond('X* is a solution', M(x.orientation).congruence(star) == G_q(x.q))
    else:
        chk.note('X* is a solution', M(x.orientation).congruence(star) == G_q(x.q))
    return chk.done()
