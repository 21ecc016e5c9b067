"""
Каталог тождеств: id → проверка одного субъекта (ориентация, пара, профиль, число Маркова)
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

from core.checks import Checker, Corruption
from core.exceptions import BadInput, UnknownIdentity
from core.families import (K_PRIME, FRAK_J, M, N1, N_m, G_q, H, K_q, Q_script, R, S, T, U_script,
                           A3, B3, C3, D3, F3, K3, L3, V3, V3_inv, W, Y, Z, alpha_data, exp_R, script_A,
                           script_B)
from core.mat3 import Mat3
from core.models import IdentityReport, Orientation
from core.orbit import (check_classes, check_omega, check_uv, dominated_pair, gram_identity,
                        section10_suite, uv_sequences)
from core.qforms import check_square_sum_system, check_markoff_cycle, check_pipeline
from core.residue_profile import (all_profiles, check_inverse_formula, cor69_check,
                                  frobenius_identities)
from core.solutions import check_F_polynomial, check_W_reconstruction, check_factorization, w_solution
from core.tree import J_ANTI, ROOT_ORIENTATION, W_ROOT, all_orientations, transformer, triples_by_dominant
from core.uniqueness import check_decomposition, check_fg, check_n_of_s, dominant_pairs, lemma51

logger = logging.getLogger(__name__)

# 𝒲⁻¹·(R/3)·𝒲
R_NORMAL = Mat3([[0, 2, 1], [0, 0, 2], [0, 0, 0]])
EXP_SAMPLES = (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(2, 3))
UV_WINDOW = 5


def _kernel_row(o: Orientation) -> Tuple[Tuple[int, int, int], Tuple[int, int, int]]:
    """(c, −b, a) и (c, ac − b, a)"""
    return (o.c, -o.b, o.a), (o.c, o.m, o.a)


# --- transformers and R ---

def check_transformer(pair: Tuple[Orientation, Orientation], corrupt: Optional[Corruption] = None) -> IdentityReport:
    src, dst = pair
    n = transformer(src, dst)
    chk = Checker('1.2', f"{src}->{dst}", {'N': n}, corrupt)
    chk.eq('Nt M(dst) N = M(src)', M(dst).congruence(n), M(src))
    chk.eq('det N', n.det(), 1)
    chk.cond('N integral', n.is_integral())
    (col_src, row_src), (col_dst, row_dst) = _kernel_row(src), _kernel_row(dst)
    chk.eq('N (c,-b,a)', n @ col_src, col_dst)
    chk.eq('Nt (c,ac-b,a)', n.T @ row_dst, row_src)
    chk.eq('N = W(dst) W(src)^-1', n, _normal_W(dst) @ _normal_W(src).inverse())
    chk.eq('N^-1 H(dst) N = H(src)', n.inverse() @ H(dst) @ n, H(src))
    return chk.done()


def _normal_W(o: Orientation) -> Mat3:
    return transformer(ROOT_ORIENTATION, o) @ W_ROOT


def check_R(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    m, r, h = M(o), R(o), H(o)
    chk = Checker('2.1', o, {}, corrupt)
    chk.eq('Rt M + M R', r.T @ m + m @ r, Mat3.zero())
    chk.eq('Ht M H', m.congruence(h), m)
    chk.eq('HR = RH', h @ r, r @ h)
    chk.eq('charpoly R', r.charpoly(), (-1, 0, 0, 0))
    chk.eq('charpoly H', h.charpoly(), (-1, 3, -3, 1))
    chk.eq('R^3', r @ r @ r, Mat3.zero())
    return chk.done()


def check_exp_R(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    m = M(o)
    chk = Checker('prop2.2a', o, {'s': [str(s) for s in EXP_SAMPLES]}, corrupt)
    for s in EXP_SAMPLES:
        chk.eq(f'e^(sR) automorph s={s}', m.congruence(exp_R(s, o)), m)
    chk.eq('H = e^(-R/2)', exp_R(Fraction(-1, 2), o), H(o))
    return chk.done()


def check_R_adjugate(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    r = R(o)
    col, row = _kernel_row(o)
    chk = Checker('prop2.2b', o, {}, corrupt)
    chk.eq('R^adj = R^2', r.adjugate(), r @ r)
    chk.eq('J^2 = J^adj', FRAK_J @ FRAK_J, FRAK_J.adjugate())
    chk.eq('R^2 = 4 (c,-b,a)(c,ac-b,a)', r @ r, Mat3.outer(col, row) * 4)
    return chk.done()


def check_H_R(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    e, r, h, s = Mat3.identity(), R(o), H(o), S(o)
    col, row = _kernel_row(o)
    chk = Checker('prop2.3', o, {}, corrupt)
    chk.eq('H = E - R/2 + R^2/8', e - r / 2 + (r @ r) / 8, h)
    chk.eq('R = 3E - 4H + H^2', e * 3 - h * 4 + h @ h, r)
    chk.eq('S^2', s @ s, Mat3.outer(col, row))
    chk.eq('S^3', s @ s @ s, Mat3.zero())
    return chk.done()


def check_W_normal(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    """𝒲⁻¹(R/3)𝒲 и первый столбец 𝒲"""
    w = _normal_W(o)
    chk = Checker('2.2', o, {'W': w}, corrupt)
    chk.eq('W^-1 (R/3) W', w.inverse() @ (R(o) / 3) @ w, R_NORMAL)
    chk.eq('det W', w.det(), -1)
    chk.cond('W integral', w.is_integral())
    chk.eq('first column', w.col(0), (o.c_frak, -o.b_frak, o.a_frak))
    chk.printed('first column (a,-b,c)', w.col(0), (o.a_frak, -o.b_frak, o.c_frak))
    return chk.done()


def check_smith(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    chk = Checker('smith', o, {}, corrupt)
    chk.eq('Smith(R/3)', (R(o) / 3).smith_invariants(), (1, 4, 0))
    return chk.done()


# --- T factorization ---

def check_T(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    t, s = T(o), S(o)
    ac = o.a * o.c
    shift = Mat3([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    chk = Checker('3.T', o, {}, corrupt)
    chk.eq('ST = T shift', s @ t, t @ shift)
    chk.eq('det T', t.det(), -(ac * o.m) ** 3)
    chk.eq('T = ABCD', A3(o) @ B3(o) @ C3(o) @ D3(o), t)
    chk.eq('A^-1 = FKL/m^2', A3(o).inverse(), F3(o) @ K3(o) @ L3(o) / (o.m * o.m))
    chk.eq('U = MT = VBCD', M(o) @ t, V3(o) @ B3(o) @ C3(o) @ D3(o))
    chk.eq('V^-1', V3(o).inverse(), V3_inv(o))
    return chk.done()


# --- W, Z and the script matrices ---

def check_W_form(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    """WᵗMW = G_m и W⁻¹RW = K_m"""
    w, r, m = W(o), R(o), o.m
    chk = Checker('4.2', o, {'m': m}, corrupt)
    chk.eq('Wt M W', M(o).congruence(w), G_q(m))
    chk.eq('W^-1 R W', w.inverse() @ r @ w, K_q(m))
    chk.eq('R w2 = w3', r @ w.col(1), w.col(2))
    chk.eq('R w3 = 4m w1', r @ w.col(2), tuple(4 * m * v for v in w.col(0)))
    chk.eq('det W', w.det(), 2 * m * m)
    return chk.done()


def check_Z_form(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    z, m = Z(o), o.m
    a, b, c = o.a, o.b, o.c
    z_adj = Mat3([[-2 * c, 2 * a - m * c, m * c], [2 * a * c, c * c - a * a, -m * b],
                  [-2 * a, m * a - 2 * c, m * a]])
    chk = Checker('4.6', o, {'m': m}, corrupt)
    chk.eq('(Z^adj)t M Z^adj', M(o).congruence(z.adjugate()), Y(m) * (2 * m * m))
    chk.eq('Z^adj', z.adjugate(), z_adj)
    chk.eq('det Z', z.det(), 2 * m * m)
    return chk.done()


def check_ZW(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    z, m = Z(o), o.m
    rt = R(o).T
    chk = Checker('ZW', o, {'m': m}, corrupt)
    chk.eq('ZW', z @ W(o), Mat3([[0, m, 0], [0, 0, 2 * m * m], [2 * m, 2, 0]]))
    chk.eq('Rt z3 = 4 z2', rt @ z.row(2), tuple(4 * v for v in z.row(1)))
    chk.eq('Rt z2 = 2m z1', rt @ z.row(1), tuple(2 * m * v for v in z.row(0)))
    return chk.done()


def check_UQU(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    m = o.m
    u = U_script(o)
    chk = Checker('UQU', o, {}, corrupt)
    chk.eq('U = W shear', u, W(o) @ Mat3([[1, 0, 0], [-m, 1, 0], [0, 0, 1]]))
    chk.eq('Ut Q U', Q_script(o).congruence(u), Mat3.diag(-m * m, 1, -4 * m * m))
    chk.eq('det Q', Q_script(o).det(), 1)
    return chk.done()


def _script_data(o: Orientation) -> Tuple[int, int, Mat3]:
    alpha, _, l = alpha_data(o)
    return alpha, l, script_A(o.m, alpha, l)


def check_script_A(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    alpha, l, a_mat = _script_data(o)
    x = Z(o).inverse() @ a_mat
    chk = Checker('4.23', o, {'alpha': alpha, 'l': l}, corrupt)
    chk.eq('(Z^-1 A)t M (Z^-1 A)', M(o).congruence(x), K_PRIME / 2)
    den = (a_mat.inverse() @ Z(o)).denominator()
    chk.note('A^-1 Z denominator', den)
    chk.cond('A^-1 Z denominator divides 3 or 6', (3 if o.m % 2 else 6) % den == 0, den)
    return chk.done()


def check_script_A_form(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    alpha, l, a_mat = _script_data(o)
    m = o.m
    chk = Checker('4.25', o, {'alpha': alpha, 'l': l}, corrupt)
    chk.eq('At Y A', Y(m).congruence(a_mat), K_PRIME * (m * m))
    chk.eq('det A', a_mat.det(), m * m)
    return chk.done()


def check_script_B_form(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    """q = m, ε = α"""
    alpha, _, _ = _script_data(o)
    b_inv = script_B(o.m, alpha).inverse()
    chk = Checker('4.26', o, {'q': o.m, 'eps': alpha}, corrupt)
    chk.eq('(B^-1)t G_q B^-1', G_q(o.m).congruence(b_inv), K_PRIME / 2)
    return chk.done()


def check_W_script_B(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    alpha, _, _ = _script_data(o)
    x = W(o) @ script_B(o.m, alpha).inverse()
    chk = Checker('4.27', o, {'q': o.m, 'eps': alpha}, corrupt)
    chk.eq('(W B^-1)t M (W B^-1)', M(o).congruence(x), K_PRIME / 2)
    return chk.done()


def check_script_A_shift(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    """Две пары (α, l): α₂ = α₁ + 𝔪"""
    m = o.m
    alpha1, l1, a1 = _script_data(o)
    alpha2 = alpha1 + o.m_frak
    a2 = script_A(m, alpha2, (alpha2 * alpha2 + 1) // o.m_frak)
    t = Fraction(alpha1 - alpha2, m)
    chk = Checker('4.28', o, {'alpha': (alpha1, alpha2)}, corrupt)
    chk.eq('A1^-1 A2', a1.inverse() @ a2, N1.exp_nilpotent(t))
    chk.eq('A2 A1^-1', a2 @ a1.inverse(), N_m(m).exp_nilpotent(t))
    return chk.done()


def check_script_B_shift(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    q = o.m
    eps1, _, _ = _script_data(o)
    eps2 = eps1 + q // 3
    b1, b2 = script_B(q, eps1), script_B(q, eps2)
    t = Fraction(eps2 - eps1, q)
    chk = Checker('4.29', o, {'q': q, 'eps': (eps1, eps2)}, corrupt)
    chk.eq('B2 B1^-1', b2 @ b1.inverse(), N1.exp_nilpotent(t))
    chk.eq('B1^-1 B2', b1.inverse() @ b2, K_q(q).exp_nilpotent(t / 2))
    chk.printed('B1^-1 B2 without 1/2', b1.inverse() @ b2, K_q(q).exp_nilpotent(t))
    return chk.done()


def check_W_mirror(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    chk = Checker('W-mirror', o, {}, corrupt)
    chk.eq('W(c,b,a) = J W(a,b,c) diag(1,1,-1)', W(o.mirror()), J_ANTI @ W(o) @ Mat3.diag(1, 1, -1))
    sym = Mat3([[0, o.m, 0], [o.m, 1, o.m ** 2], [0, o.m ** 2, 4 * o.m ** 2]])
    chk.eq('G_m = diag(1,1,-1) G_sym', G_q(o.m), Mat3.diag(1, 1, -1) @ sym)
    chk.printed('G_m = G_sym diag(1,1,-1)', G_q(o.m), sym @ Mat3.diag(1, 1, -1))
    return chk.done()


def automorph_family(m: int, alpha: Any, beta: Any, gamma: Any) -> Mat3:
    """Общее решение Kᵗ·Y + Y·K = 0 для K = K_m"""
    return Mat3([[0, alpha, 0], [alpha, gamma, beta], [0, -beta, -4 * m * alpha]])


def check_Y_automorph(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    m = o.m
    k = K_q(m)
    g = G_q(m)
    chk = Checker('Y-automorph', o, {'m': m}, corrupt)
    chk.eq('G_m in family', automorph_family(m, m, m * m, 1), g)
    sample = automorph_family(m, 2, -3, 5)
    chk.eq('Kt Y + Y K', k.T @ sample + sample @ k, Mat3.zero())
    for s in EXP_SAMPLES:
        chk.eq(f'e^(sKt) G e^(sK) s={s}', k.T.exp_nilpotent(s) @ g @ k.exp_nilpotent(s), g)
    s = EXP_SAMPLES[0]
    chk.printed('e^(sKt) G e^(-sK)', k.T.exp_nilpotent(s) @ g @ k.exp_nilpotent(-s), g)
    printed_family = Mat3([[0, 2, 0], [2, 5, -3], [0, 3, -4 * m]])
    chk.printed('corner -2m alpha', k.T @ printed_family + printed_family @ k, Mat3.zero())
    return chk.done()


def check_W_solution(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    """W как решение с q = m и его разложение Z·W = 𝒜·ℬ"""
    x = w_solution(o)
    chk = Checker('ZX=AB', o, {}, corrupt)
    chk.merge(x.validate(corrupt), 'X')
    chk.merge(check_factorization(x), 'factors')
    return chk.done()


def check_F_default(o: Orientation, corrupt: Optional[Corruption] = None) -> IdentityReport:
    alpha, _, _ = alpha_data(o)
    return check_F_polynomial(alpha, o, corrupt)


# --- adapters for other modules ---

def _check_square_sum_pair(subject: Tuple[int, int, int], corrupt: Optional[Corruption] = None) -> IdentityReport:
    m, a0, a1 = subject
    report = check_square_sum_system(m, a0, corrupt)
    if a1 != a0:
        report.merge(check_square_sum_system(m, a1), f'a={a1}')
    return report


def _check_omega(subject: Tuple[int, int, int], corrupt: Optional[Corruption] = None) -> IdentityReport:
    return check_omega(*subject, corrupt=corrupt)


def _check_uv(subject: Tuple[int, int, int], corrupt: Optional[Corruption] = None,
              window: int = UV_WINDOW) -> IdentityReport:
    return check_uv(uv_sequences(*subject, window=window), corrupt)


def _check_gram(subject: Tuple[int, int, int], corrupt: Optional[Corruption] = None,
                window: int = UV_WINDOW) -> IdentityReport:
    seq = uv_sequences(*subject, window=window)
    report = gram_identity(seq, -window, corrupt)
    for n in range(-window + 1, window):
        report.merge(gram_identity(seq, n), f'n={n}')
    return report


def _check_diagonalization(m: int, corrupt: Optional[Corruption] = None, n_max: int = 4) -> IdentityReport:
    return section10_suite(m, n_max, corrupt)


# --- subjects ---

def markoff_numbers(bound: int) -> List[int]:
    return sorted(triples_by_dominant(bound))


def orientation_pairs(bound: int) -> List[Tuple[Orientation, Orientation]]:
    """(root → o) and (o → mirror) for every MT-matrix"""
    pairs = []
    for o in all_orientations(bound):
        pairs.append((ROOT_ORIENTATION, o))
        if o.mirror() != o:
            pairs.append((o, o.mirror()))
    return pairs


def dominated_subjects(bound: int) -> List[Tuple[int, int, int]]:
    return [(m, *dominated_pair(m)) for m in markoff_numbers(bound)]


SUBJECTS: Dict[str, Callable[[int], List[Any]]] = {
    'orientation': all_orientations,
    'orientation_pair': orientation_pairs,
    'dominant_pair': lambda bound: [p for m in markoff_numbers(bound) for p in dominant_pairs(m)],
    'profile': all_profiles,
    # the inverse formula needs 𝔞 ≠ 𝔠
    'profile_distinct': lambda bound: [p for p in all_profiles(bound) if p.a != p.c],
    'markoff': markoff_numbers,
    'dominated': dominated_subjects,
}


@dataclass(frozen=True)
class IdentityEntry:
    identity_id: str
    subject_kind: str
    check: Callable[..., IdentityReport]
    summary: str


def _entry(identity_id: str, kind: str, check: Callable[..., IdentityReport], summary: str) -> IdentityEntry:
    return IdentityEntry(identity_id, kind, check, summary)


CATALOG: Dict[str, IdentityEntry] = {s.identity_id: s for s in (
    _entry('1.2', 'orientation_pair', check_transformer, 'transformer between MT-matrices'),
    _entry('2.1', 'orientation', check_R, 'Rt M + M R = 0, H automorph'),
    _entry('prop2.2a', 'orientation', check_exp_R, 'e^(sR) automorphs'),
    _entry('prop2.2b', 'orientation', check_R_adjugate, 'R^adj = R^2'),
    _entry('prop2.3', 'orientation', check_H_R, 'H = e^(-R/2), S^2'),
    _entry('2.2', 'orientation', check_W_normal, 'integral normal form of R/3'),
    _entry('smith', 'orientation', check_smith, 'Smith invariants of R/3'),
    _entry('3.T', 'orientation', check_T, 'T factorization'),
    _entry('4.1', 'orientation', check_W_reconstruction, 'W determines the triple'),
    _entry('4.2', 'orientation', check_W_form, 'Wt M W depends on m only'),
    _entry('4.6', 'orientation', check_Z_form, '(Z^adj)t M Z^adj'),
    _entry('4.11', 'orientation', check_F_default, 'F(n)F(-n) and the residue pairing'),
    _entry('ZW', 'orientation', check_ZW, 'Z W product'),
    _entry('UQU', 'orientation', check_UQU, 'orthogonal basis of Q'),
    _entry('ZX=AB', 'orientation', check_W_solution, 'Z X = A B for X = W'),
    _entry('4.23', 'orientation', check_script_A, '(Z^-1 A)t M (Z^-1 A)'),
    _entry('4.25', 'orientation', check_script_A_form, 'At Y A'),
    _entry('4.26', 'orientation', check_script_B_form, '(B^-1)t G_q B^-1'),
    _entry('4.27', 'orientation', check_W_script_B, '(W B^-1)t M (W B^-1)'),
    _entry('4.28', 'orientation', check_script_A_shift, 'A1^-1 A2 as exponential'),
    _entry('4.29', 'orientation', check_script_B_shift, 'B1^-1 B2 as exponential'),
    _entry('W-mirror', 'orientation', check_W_mirror, 'W(c,b,a) = J W(a,b,c) diag(1,1,-1)'),
    _entry('Y-automorph', 'orientation', check_Y_automorph, 'automorphs of Wt M W'),
    _entry('3.4', 'dominant_pair', check_n_of_s, 'N(s) isomorphs'),
    _entry('5.1', 'dominant_pair', lemma51, 'two-triple identities'),
    _entry('5.4', 'dominant_pair', check_decomposition, 'N(0) decomposition'),
    _entry('5.5', 'dominant_pair', check_fg, 'f g factorization'),
    _entry('6.4', 'profile', frobenius_identities, 'residue profile identities'),
    _entry('6.28', 'profile_distinct', check_inverse_formula, 'inverse formula'),
    _entry('cor6.9', 'profile', cor69_check, 'profile transformer'),
    _entry('7.6', 'profile', check_pipeline, 'height reduction pipeline'),
    _entry('7.2', 'markoff', check_markoff_cycle, 'cycle of the Markoff form'),
    _entry('7.31', 'dominated', _check_square_sum_pair, 'sum-of-squares system'),
    _entry('8.4', 'dominated', _check_omega, 'omega expansion of the a-sequence'),
    _entry('8.8', 'markoff', check_classes, 'fundamental solution classes'),
    _entry('9.2', 'dominated', _check_uv, '(u_n, v_n) recursion'),
    _entry('9.gram', 'dominated', _check_gram, 'Gram identity'),
    _entry('10.7', 'markoff', _check_diagonalization, 'diagonalization of Psi(F)'),
)}


def identity_ids() -> List[str]:
    return list(CATALOG)


def get_entry(identity_id: str) -> IdentityEntry:
    entry = CATALOG.get(identity_id)
    if entry is None:
        raise UnknownIdentity(f"unknown identity id: {identity_id}")
    return entry


def subjects_for(identity_id: str, bound: int) -> List[Any]:
    if bound < 1:
        raise BadInput(f"bound must be >= 1, got {bound}")
    return SUBJECTS[get_entry(identity_id).subject_kind](bound)


def verify_identity(identity_id: str, subject: Any, corrupt: Optional[Corruption] = None,
                    **params: Any) -> IdentityReport:
    """Проверка одного тождества на одном субъекте; невязки точные"""
    entry = get_entry(identity_id)
    report = entry.check(subject, corrupt, **params)
    if not report.passed:
        logger.debug(f"{identity_id} fails on {subject}: {report.failed_checks()}")
    return report


def verify_all(bound: int, ids: Optional[Iterable[str]] = None) -> List[IdentityReport]:
    """Every catalog identity on every subject up to bound, in catalog order"""
    selected = list(ids) if ids is not None else identity_ids()
    for identity_id in selected:
        get_entry(identity_id)
    reports = []
    for identity_id in selected:
        for subject in subjects_for(identity_id, bound):
            reports.append(verify_identity(identity_id, subject))
    logger.info(f"verified {len(selected)} identities up to {bound}: {len(reports)} reports")
    return reports
