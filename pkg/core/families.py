"""
Именованные семейства 3×3 матриц, построенные по ориентации тройки
"""
import logging
from fractions import Fraction
from typing import Any, Callable, Dict, Optional

from core.exceptions import BadInput, BadParams
from core.mat3 import Mat3
from core.models import Orientation
from core.tree import J_ANTI, normal_form_W

logger = logging.getLogger(__name__)

FRAK_J = Mat3([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
K_PRIME = Mat3([[0, 1, 1], [-1, -2, 0], [1, 0, 0]])
SHIFT_DOWN = Mat3([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
N1 = Mat3([[0, 0, 0], [1, 0, 0], [0, 2, 0]])


# --- matrices of one orientation ---

def M(o: Orientation) -> Mat3:
    return Mat3([[1, o.a, o.b], [0, 1, o.c], [0, 0, 1]])


def M_inv(o: Orientation) -> Mat3:
    return Mat3([[1, -o.a, o.a * o.c - o.b], [0, 1, -o.c], [0, 0, 1]])


def H(o: Orientation) -> Mat3:
    """H = M⁻¹·Mᵗ"""
    return M_inv(o) @ M(o).T


def R(o: Orientation) -> Mat3:
    """Nilpotent solution of RᵗM + MR = 0"""
    a, b, c = o.a, o.b, o.c
    return Mat3([
        [a * a + b * b - a * b * c, 2 * a + b * c - a * c * c, 2 * b - a * c],
        [b * c - 2 * a, c * c - a * a, 2 * c - a * b],
        [a * c - 2 * b, -2 * c - a * b + a * a * c, a * b * c - b * b - c * c],
    ])


def exp_R(s: Any, o: Orientation) -> Mat3:
    """e^{sR} = E + sR + s²R²/2; NotNilpotent off the Markoff surface"""
    return R(o).exp_nilpotent(s)


def S(o: Orientation) -> Mat3:
    return H(o) - Mat3.identity()


def W(o: Orientation) -> Mat3:
    a, b, c, m = o.a, o.b, o.c, o.m
    return Mat3([[c, 0, 2 * a - m * c], [-b, 1, c * c - a * a], [a, 0, m * a - 2 * c]])


def Z(o: Orientation) -> Mat3:
    a, c, m = o.a, o.c, o.m
    return Mat3([[c, m, a], [-a, 0, c], [a, 2, c]])


def T(o: Orientation) -> Mat3:
    a, b, c, m = o.a, o.b, o.c, o.m
    ac = a * c
    return Mat3([
        [c, ac * (a * c * c - b * c - a), ac * m * c],
        [m, -ac * c * c, -ac * m * b],
        [a, ac * c, ac * m * a],
    ])


def A3(o: Orientation) -> Mat3:
    a, b, c, m = o.a, o.b, o.c, o.m
    return Mat3([[0, c * m - a, c], [1, -c * c, -b], [0, c, a]])


def B3(o: Orientation) -> Mat3:
    return Mat3.diag(o.a * o.c, 1, 1)


def C3(o: Orientation) -> Mat3:
    return Mat3([[1, 0, 0], [0, 1, 0], [1, 0, 1]])


def D3(o: Orientation) -> Mat3:
    return Mat3.diag(1, o.a * o.c, o.a * o.c * o.m)


def F3(o: Orientation) -> Mat3:
    return Mat3.diag(o.m, 1, 1)


def K3(o: Orientation) -> Mat3:
    a, c, m = o.a, o.c, o.m
    return Mat3([[c, 1, a], [a, 0, -c], [-c, 0, c * m - a]])


def L3(o: Orientation) -> Mat3:
    return Mat3.diag(1, o.m, 1)


def V3(o: Orientation) -> Mat3:
    """V = M·A"""
    a, c, m = o.a, o.c, o.m
    return Mat3([[a, -a, c], [1, 0, m], [0, c, a]])


def V3_inv(o: Orientation) -> Mat3:
    a, b, c, m = o.a, o.b, o.c, o.m
    return Mat3([
        [c * m, -b * m, a * m],
        [a, -a * a, a * m - c],
        [-c, a * c, -a],
    ]) / (m * m)


def U_script(o: Orientation) -> Mat3:
    """𝒰 = W·[[1,0,0],[−m,1,0],[0,0,1]]"""
    a, c, m = o.a, o.c, o.m
    return Mat3([[c, 0, 2 * a - m * c], [-a * c, 1, c * c - a * a], [a, 0, m * a - 2 * c]])


def Q_script(o: Orientation) -> Mat3:
    """𝒬 = (M + Mᵗ)/2"""
    return (M(o) + M(o).T) / 2


# --- constants depending on m or q only ---

def G_q(q) -> Mat3:
    return Mat3([[0, q, 0], [q, 1, q * q], [0, -q * q, -4 * q * q]])


def N_m(m) -> Mat3:
    return Mat3([[0, 0, 0], [m, 0, 0], [0, 2, 0]])


def K_q(q) -> Mat3:
    return Mat3([[0, 0, 4 * q], [0, 0, 0], [0, 1, 0]])


def Y(m) -> Mat3:
    return Mat3([[-2, m, m], [-m, -2, 0], [m, 0, 0]])


# --- parametrised families ---

def default_alpha(o: Orientation) -> int:
    """α ≡ 𝔞·𝔠⁻¹ (mod 𝔪) in (−𝔪/2, 𝔪/2], so that 𝔠α − 𝔞 = 𝔪k"""
    from core.arith import symmetric_residue
    m_frak = o.m_frak
    if m_frak == 1:
        return 0
    return symmetric_residue(o.a_frak * pow(o.c_frak, -1, m_frak), m_frak)


def alpha_data(o: Orientation, alpha: Optional[int] = None):
    """(α, k, l) with 𝔠α − 𝔞 = 𝔪k and α² + 1 = 𝔪l"""
    if alpha is None:
        alpha = default_alpha(o)
    m_frak = o.m_frak
    if (o.c_frak * alpha - o.a_frak) % m_frak or (alpha * alpha + 1) % m_frak:
        raise BadParams(f"alpha={alpha} does not fit {o}")
    return alpha, (o.c_frak * alpha - o.a_frak) // m_frak, (alpha * alpha + 1) // m_frak


def script_A(m: int, alpha: int, l: int, check: bool = True) -> Mat3:
    """𝒜(α, l); requires α² + 1 = (m/3)·l"""
    if check and 3 * (alpha * alpha + 1) != m * l:
        raise BadParams(f"alpha^2 + 1 must equal (m/3)·l, got alpha={alpha}, l={l}, m={m}")
    return Mat3([[1, 0, 0], [-alpha, m, 0], [Fraction(l, 3), -2 * alpha, m]])


def script_B(q: int, eps: int) -> Mat3:
    """ℬ(q, ε) = [[0,q,0],[0,ε,2q],[2,J,4ε]], J = (ε² + 1)/q"""
    if q <= 0 or q % 3:
        raise BadParams(f"q must be a positive multiple of 3, got {q}")
    if (eps * eps + 1) % (q // 3):
        raise BadParams(f"q/3 must divide eps^2 + 1, got q={q}, eps={eps}")
    return Mat3([[0, q, 0], [0, eps, 2 * q], [2, Fraction(eps * eps + 1, q), 4 * eps]])


_ORIENTATION_FAMILIES: Dict[str, Callable[[Orientation], Mat3]] = {
    'M': M, 'M_inv': M_inv, 'H': H, 'R': R, 'S': S, 'W': W, 'Z': Z,
    'T': T, 'A3': A3, 'B3': B3, 'C3': C3, 'D3': D3, 'F3': F3, 'K3': K3, 'L3': L3,
    'V3': V3, 'V3_inv': V3_inv, 'U_script': U_script, 'Q_script': Q_script,
    'W_normal': normal_form_W,
}


_CONSTANTS: Dict[str, Mat3] = {'J': J_ANTI, 'frak_J': FRAK_J, 'K_prime': K_PRIME, 'N1': N1}


def _required(kind: str, name: str, value: Any) -> Any:
    if value is None:
        raise BadInput(f"family {kind} needs {name}")
    return value


def build(kind: str, o: Optional[Orientation] = None, **params: Any) -> Mat3:
    """Matrix family by tag; parametrised kinds read α, l, q, ε, m from params"""
    if kind in _ORIENTATION_FAMILIES:
        return _ORIENTATION_FAMILIES[kind](_required(kind, 'an orientation', o))
    if kind in _CONSTANTS:
        return _CONSTANTS[kind]
    if kind == 'Z_adj':
        return Z(_required(kind, 'an orientation', o)).adjugate()
    if kind == 'script_A':
        o = _required(kind, 'an orientation', o)
        if 'l' in params:
            return script_A(o.m, _required(kind, 'alpha together with l', params.get('alpha')), params['l'])
        alpha, _, l = alpha_data(o, params.get('alpha'))
        return script_A(o.m, alpha, l)
    if kind == 'script_B':
        return script_B(_required(kind, 'q', params.get('q')), _required(kind, 'eps', params.get('eps')))
    if kind in ('G_q', 'K_q'):
        q = _required(kind, 'q or an orientation', params.get('q', o.m if o is not None else None))
        return G_q(q) if kind == 'G_q' else K_q(q)
    if kind in ('N_m', 'Y'):
        m = _required(kind, 'm or an orientation', params.get('m', o.m if o is not None else None))
        return N_m(m) if kind == 'N_m' else Y(m)
    raise BadInput(f"unknown matrix family: {kind}")
