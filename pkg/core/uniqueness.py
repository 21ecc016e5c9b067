"""
Пары ориентаций с общим m: рациональные изоморфизмы N(s), тождества для пар,
разложение 𝕞 = f·g и проверка единственности по доминирующему члену
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import List, Optional, Tuple

from core.checks import Checker, Corruption
from core.exceptions import BadInput, NoSolution
from core.families import M, R, W, Z, alpha_data, script_A, script_B
from core.mat3 import Mat3
from core.models import IdentityReport, Orientation
from core.solutions import SolutionX, pairing_modulus, unitary_divisors
from core.tree import transformer, triple_dominated_by, triples_by_dominant

logger = logging.getLogger(__name__)

S_SAMPLES = (Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2))


@dataclass(frozen=True)
class DominantPair:
    """Две ориентации (a₁,b₁,c₁), (a₂,b₂,c₂) с общим m = a·c − b"""
    first: Orientation
    second: Orientation

    def __post_init__(self):
        if self.first.m != self.second.m:
            raise BadInput(f"{self.first} and {self.second} do not share m")

    @property
    def m(self) -> int:
        return self.first.m

    @property
    def modulus(self) -> int:
        """𝕞"""
        return pairing_modulus(self.first)

    @property
    def r(self) -> Fraction:
        return Fraction(self.first.a * self.first.c, self.second.a * self.second.c)

    @property
    def is_identical(self) -> bool:
        return self.first == self.second

    @property
    def same_members(self) -> bool:
        return {self.first.a, self.first.c} == {self.second.a, self.second.c}

    @property
    def cross(self) -> int:
        """a₁c₂ − c₁a₂"""
        return self.first.a * self.second.c - self.first.c * self.second.a

    @property
    def straight(self) -> int:
        """a₁a₂ − c₁c₂"""
        return self.first.a * self.second.a - self.first.c * self.second.c

    def __repr__(self):
        return f"{self.first}~{self.second}"


@dataclass(frozen=True)
class FGFactorization:
    f: int
    g: int


def dominant_orientation(m_frak: int) -> Orientation:
    """M(3x, 3(3xy − 𝔪), 3y) for the triple (x ≤ y ≤ 𝔪) dominated by 𝔪"""
    x, y, _ = triple_dominated_by(m_frak).members
    return Orientation(3 * x, 3 * (3 * x * y - m_frak), 3 * y)


def dominant_pairs(m_frak: int) -> List[DominantPair]:
    """The identical pair and, when it differs, the orientation swap"""
    o = dominant_orientation(m_frak)
    pairs = [DominantPair(o, o)]
    if o.mirror() != o:
        pairs.append(DominantPair(o, o.mirror()))
    return pairs


def n_zero(pair: DominantPair) -> Mat3:
    """N(0) = W₂·W₁⁻¹"""
    return W(pair.second) @ W(pair.first).inverse()


def n_of_s(pair: DominantPair, s) -> Mat3:
    """N(s) = e^{−sR₂/2}·N(0); N(s)ᵗ·M₂·N(s) = M₁"""
    return R(pair.second).exp_nilpotent(-Fraction(s) / 2) @ n_zero(pair)


def solve_s(pair: DominantPair, q: Mat3) -> Optional[Fraction]:
    """
    Рациональное s с Q = N(s), либо None.
    With L = Q·N(0)⁻¹ − E = −(s/2)R₂ + (s²/8)R₂² one has L·R₂ = −(s/2)R₂².
    """
    r2 = R(pair.second)
    r2sq = r2 @ r2
    lr = (q @ n_zero(pair).inverse() - Mat3.identity()) @ r2
    for i in range(3):
        for j in range(3):
            if r2sq[i, j] != 0:
                s = -2 * lr[i, j] / r2sq[i, j]
                return s if n_of_s(pair, s) == q else None
    return None


def is_orthogonal_mod3(q: Mat3) -> bool:
    """Qᵗ·Q ≡ E (mod 3) for integral Q"""
    if not q.is_integral():
        return False
    residual = q.T @ q - Mat3.identity()
    return residual.divisible_by(3)


def check_n_of_s(pair: DominantPair, corrupt: Optional[Corruption] = None) -> IdentityReport:
    chk = Checker('3.4', pair, {'m': pair.m}, corrupt)
    m1, m2 = M(pair.first), M(pair.second)
    for s in S_SAMPLES:
        n = n_of_s(pair, s)
        chk.eq(f'N({s})^t M2 N({s}) = M1', m2.congruence(n), m1)
        chk.eq(f'det N({s})', n.det(), 1)
    chk.eq('N(0) W1 = W2', n_zero(pair) @ W(pair.first), W(pair.second))
    if pair.is_identical:
        chk.eq('N(s) automorph', n_of_s(pair, 2), R(pair.first).exp_nilpotent(-1))
    # tree transformers are integral members of the family
    tree_q = transformer(pair.first, pair.second)
    s = solve_s(pair, tree_q)
    chk.cond('tree transformer = N(s)', s is not None, tree_q)
    chk.note('s of tree transformer', s)
    chk.cond('tree transformer orthogonal mod 3', is_orthogonal_mod3(tree_q))
    # every small integral isomorph belongs to the family
    hits = lattice_transformers(pair)
    chk.note('lattice hits', len(hits))
    strays = [q for q in hits if solve_s(pair, q) is None]
    chk.cond('lattice hits are N(s)', not strays, strays)
    chk.cond('lattice hits orthogonal mod 3', all(is_orthogonal_mod3(q) for q in hits))
    if pair.is_identical:
        chk.cond('E among lattice hits', Mat3.identity() in hits)
    return chk.done()


LATTICE_BOUND = 4


def lattice_transformers(pair: DominantPair, entry_bound: int = LATTICE_BOUND) -> List[Mat3]:
    """
    Полный перебор целочисленных Q с |q_ij| ≤ entry_bound, det Q = 1 и QᵗM₂Q = M₁.
    Columns are pre-filtered by their diagonal value v·M₂v.
    """
    if entry_bound < 0:
        raise BadInput(f"entry_bound must be >= 0, got {entry_bound}")
    m1, m2 = M(pair.first), M(pair.second)

    def form(u, v):
        return sum(x * y for x, y in zip(u, m2 @ v))

    box = range(-entry_bound, entry_bound + 1)
    columns: List[List[Tuple[int, int, int]]] = [[], [], []]
    for v in product(box, repeat=3):
        value = form(v, v)
        for j in range(3):
            if value == m1[j, j]:
                columns[j].append(v)

    found = []
    for c1 in columns[0]:
        for c2 in columns[1]:
            if form(c1, c2) != m1[0, 1] or form(c2, c1) != m1[1, 0]:
                continue
            for c3 in columns[2]:
                if (form(c1, c3), form(c3, c1), form(c2, c3), form(c3, c2)) != \
                        (m1[0, 2], m1[2, 0], m1[1, 2], m1[2, 1]):
                    continue
                q = Mat3.from_columns(c1, c2, c3)
                if q.det() == 1:
                    found.append(q)
    logger.debug(f"lattice_transformers({pair}, {entry_bound}) -> {len(found)}")
    return found


def lemma51(pair: DominantPair, corrupt: Optional[Corruption] = None) -> IdentityReport:
    a1, b1, c1 = pair.first.a, pair.first.b, pair.first.c
    a2, b2, c2 = pair.second.a, pair.second.b, pair.second.c
    m = pair.m
    chk = Checker('5.1', pair, {'m': m}, corrupt)
    chk.eq('cross straight b', (a1 * c2 - c1 * a2) * (a1 * a2 - c1 * c2), m * m * (b1 - b2))
    chk.eq('ac difference', m * m * (a1 * c1 - a2 * c2), m * m * (b1 - b2))
    chk.eq('a1 square', (m * a1 * a2 - a1 * c2 - c1 * a2) * (m * a1 * c2 - a1 * a2 - c1 * c2),
           m * m * (m * a1 * a1 - a1 * c1 - a2 * c2))
    chk.eq('a2 square', (m * a1 * a2 - a1 * c2 - c1 * a2) * (m * c1 * a2 - a1 * a2 - c1 * c2),
           m * m * (m * a2 * a2 - a1 * c1 - a2 * c2))
    chk.eq('a-difference', (m * a1 * a2 - a1 * c2 - c1 * a2) * (a1 * c2 - c1 * a2), m * m * (a1 * a1 - a2 * a2))
    chk.eq('c-difference', (m * c1 * c2 - c1 * a2 - a1 * c2) * (c1 * a2 - a1 * c2), m * m * (c1 * c1 - c2 * c2))
    chk.printed('c-difference', (m * a1 * a2 - a1 * c2 - c1 * a2) * (a1 * c2 - c1 * a2),
                m * m * (c1 * c1 - c2 * c2))
    return chk.done()


def fg_factorization(pair: DominantPair) -> FGFactorization:
    """𝕞 = f·g, f² | a₁c₂ − c₁a₂, g² | a₁a₂ − c₁c₂, f ⊥ a₁a₂ − c₁c₂, g ⊥ a₁c₂ − c₁a₂"""
    cross, straight = pair.cross, pair.straight
    for f in unitary_divisors(pair.modulus):
        g = pair.modulus // f
        if cross % (f * f) or straight % (g * g):
            continue
        if gcd(f, straight) == 1 and gcd(g, cross) == 1:
            return FGFactorization(f, g)
    raise NoSolution(f"no f·g factorization of {pair.modulus} for {pair}")


def _has_large_prime(n: int) -> bool:
    for p in (2, 3):
        while n % p == 0:
            n //= p
    return n > 1


def check_fg(pair: DominantPair, corrupt: Optional[Corruption] = None) -> IdentityReport:
    fg = fg_factorization(pair)
    f, g = fg.f, fg.g
    a1, b1, c1 = pair.first.a, pair.first.b, pair.first.c
    a2, b2, c2 = pair.second.a, pair.second.b, pair.second.c
    chk = Checker('5.5', pair, {'f': f, 'g': g}, corrupt)
    chk.eq('fg', f * g, pair.modulus)
    chk.cond('f^2 | a1c2 - c1a2', pair.cross % (f * f) == 0, pair.cross)
    chk.cond('g^2 | a1a2 - c1c2', pair.straight % (g * g) == 0, pair.straight)
    if pair.same_members:
        chk.cond('{f,g} = {1,m}', {f, g} == {1, pair.modulus}, (f, g))
    chk.cond('c1 = c2 mod f', (c1 - c2) % f == 0)
    chk.cond('a1 = a2 mod f', (a1 - a2) % f == 0)
    chk.cond('c1 = a2 mod g', (c1 - a2) % g == 0)
    chk.cond('a1 = c2 mod g', (a1 - c2) % g == 0)
    chk.cond('b1 = b2 mod frak_m', (b1 - b2) % pair.modulus == 0)
    # only distinct member sets would have to satisfy the prime conditions
    chk.cond('member sets coincide', pair.same_members)
    chk.note('f has prime > 3', _has_large_prime(f))
    chk.note('g has prime > 3', _has_large_prime(g))
    return chk.done()


@dataclass(frozen=True)
class N0Decomposition:
    """2m²·N(s)⁻¹ = x²N₂ + x(2N₁⁽¹⁾ + m·N₁⁽²⁾) + 2m²N₀, x = α₂ − α₁"""
    x: int
    n_s_inv: Mat3
    n2: Mat3
    n1_1: Mat3
    n1_2: Mat3
    n0: Mat3
    s: Optional[Fraction]


def decompose_n0(pair: DominantPair) -> N0Decomposition:
    o1, o2, m = pair.first, pair.second, pair.m
    alpha1, _, _ = alpha_data(o1)
    alpha2, _, l2 = alpha_data(o2)
    a_mat = script_A(m, alpha2, l2)
    b_mat = script_B(m, alpha1)
    w1, z2 = W(o1), Z(o2)
    n_s_inv = w1 @ (a_mat @ b_mat).inverse() @ z2
    x1 = w1.col(0)
    n2 = Mat3.outer(x1, z2.row(0))
    n1_1 = Mat3.outer(x1, z2.row(1))
    n1_2 = Mat3.outer(w1.col(2), z2.row(0)) / m
    n0 = n_zero(pair).inverse()
    s = solve_s(pair, n_s_inv.inverse())
    return N0Decomposition(alpha2 - alpha1, n_s_inv, n2, n1_1, n1_2, n0, s)


def p_matrix(x: int, m: int) -> Mat3:
    return Mat3([[x * x - 2, 2 * x, m], [2 * m, 0, 0], [x, 1, 0]])


def check_decomposition(pair: DominantPair, corrupt: Optional[Corruption] = None) -> IdentityReport:
    d = decompose_n0(pair)
    m = pair.m
    o1, o2 = pair.first, pair.second
    r1, r2 = R(o1), R(o2)
    chk = Checker('5.4', pair, {'x': d.x, 's': d.s}, corrupt)
    expansion = d.n2 * (d.x * d.x) + (d.n1_1 * 2 + d.n1_2 * m) * d.x + d.n0 * (2 * m * m)
    chk.eq('expansion', expansion, d.n_s_inv * (2 * m * m))
    chk.eq('W1 P(x) Z2', W(o1) @ p_matrix(d.x, m) @ Z(o2), d.n_s_inv * (2 * m * m))

    alpha1, _, _ = alpha_data(o1)
    alpha2, _, l2 = alpha_data(o2)
    x2 = Z(o2).inverse() @ script_A(m, alpha2, l2) @ script_B(m, alpha1)
    chk.merge(SolutionX(x2, o2, m, alpha1, (alpha1 * alpha1 + 1) // (m // 3)).validate(), 'X2')
    chk.cond('N(s) X1 = X2 for rational s', d.s is not None)

    for name, n in (('N(s)^-1', d.n_s_inv), ('N2', d.n2), ('N0', d.n0)):
        chk.eq(f'R1 {name} = {name} R2', r1 @ n, n @ r2)
    if d.x == 0:
        chk.eq('N(s)^-1 = N0', d.n_s_inv, d.n0)

    fg = fg_factorization(pair)
    m2_n0_inv = d.n0 * (m * m)
    chk.eq('m^2 N(0)^-1 = W1 W2^adj / 2', m2_n0_inv, W(o1) @ W(o2).adjugate() / 2)
    chk.cond('f^2 | m^2 N(0)^-1', m2_n0_inv.divisible_by(fg.f * fg.f), m2_n0_inv)
    a1, c1, a2, c2 = o1.a, o1.c, o2.a, o2.c
    cross, plus = a1 * c2 - c1 * a2, a1 * a2 + c1 * c2
    block = Mat3([[-plus, 0, cross], [cross * c1, 0, -cross * a1], [-cross, 0, -plus]]) + \
        Mat3.diag(c1 * a2, m, a1 * c2) * m
    chk.printed('N0 inverse block', block, m2_n0_inv)
    if d.s is not None:
        n = d.s * 3 * fg.g
        chk.note('n = 3gs', n)
    return chk.done()


@dataclass
class UniquenessResult:
    bound: int
    dominants: List[int]
    non_singletons: List[int]

    @property
    def passed(self) -> bool:
        return not self.non_singletons


def verify_uniqueness(bound: int) -> UniquenessResult:
    """Each dominant member 𝔠 ≤ bound belongs to exactly one triple"""
    if bound < 1:
        raise BadInput(f"bound must be >= 1, got {bound}")
    groups = triples_by_dominant(bound)
    non_singletons = sorted(m for m, ts in groups.items() if len(ts) != 1)
    if non_singletons:
        logger.error(f"dominant members with several triples: {non_singletons}")
    logger.info(f"uniqueness up to {bound}: {len(groups)} dominant members")
    return UniquenessResult(bound, sorted(groups), non_singletons)
