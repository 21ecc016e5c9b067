"""
Дерево троек Маркова: соседи, перечисление, MT-матрицы и матрицы перехода N
"""
import logging
from functools import lru_cache
from math import isqrt
from typing import Dict, List, Optional, Tuple

from core.exceptions import BadInput, BadParams, NotMarkoff
from core.mat3 import Mat3
from core.models import MarkoffTriple, Orientation

logger = logging.getLogger(__name__)

ROOT = MarkoffTriple(1, 1, 1)
ROOT_ORIENTATION = Orientation(3, 3, 3)

# 𝒲(3,3,3): first column (1,−1,1), det −1
W_ROOT = Mat3([[1, -2, 0], [-1, 1, 1], [1, 0, -1]])

# anti-diagonal 𝒥
J_ANTI = Mat3([[0, 0, 1], [0, 1, 0], [1, 0, 0]])


def is_markoff(a: int, b: int, c: int) -> bool:
    if min(a, b, c) < 1:
        raise BadInput(f"members must be >= 1, got {(a, b, c)}")
    return a * a + b * b + c * c == 3 * a * b * c


def neighbors(t: MarkoffTriple) -> List[MarkoffTriple]:
    """Replace one member x by 3·(product of the others) − x"""
    x, y, z = t.members
    result = {
        MarkoffTriple(*sorted((3 * y * z - x, y, z))),
        MarkoffTriple(*sorted((x, 3 * x * z - y, z))),
        MarkoffTriple(*sorted((x, y, 3 * x * y - z))),
    }
    result.discard(t)
    return sorted(result, key=lambda s: s.sort_key)


def parent(t: MarkoffTriple) -> Optional[MarkoffTriple]:
    """Neighbor with the smaller dominant member; None at the root"""
    if t == ROOT:
        return None
    x, y, z = t.members
    return MarkoffTriple(*sorted((x, y, 3 * x * y - z)))


def enumerate_triples(bound: int) -> List[MarkoffTriple]:
    """All triples with 𝔠 ≤ bound, sorted by (𝔠, 𝔟, 𝔞)"""
    if bound < 1:
        raise BadInput(f"bound must be >= 1, got {bound}")
    return list(_enumerate_cached(bound))


@lru_cache(maxsize=16)
def _enumerate_cached(bound: int) -> Tuple[MarkoffTriple, ...]:
    seen = {ROOT}
    stack = [ROOT]
    while stack:
        current = stack.pop()
        for nb in neighbors(current):
            if nb.c_frak <= bound and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    logger.debug(f"enumerated {len(seen)} triples up to {bound}")
    return tuple(sorted(seen, key=lambda s: s.sort_key))


def triples_by_dominant(bound: int) -> Dict[int, List[MarkoffTriple]]:
    groups: Dict[int, List[MarkoffTriple]] = {}
    for t in enumerate_triples(bound):
        groups.setdefault(t.dominant, []).append(t)
    return groups


def triple_dominated_by(m: int) -> MarkoffTriple:
    """The triple whose largest member is m"""
    if m < 1:
        raise NotMarkoff(f"{m} is not a Markoff number")
    groups = triples_by_dominant(m)
    if m not in groups:
        raise NotMarkoff(f"{m} is not a Markoff number")
    return groups[m][0]


def is_markoff_number(m: int) -> bool:
    try:
        triple_dominated_by(m)
        return True
    except NotMarkoff:
        return False


def common_third_members(x: int, y: int) -> List[int]:
    """Members z with (x, y, z) Markoff, from c² − 3xy·c + x² + y² = 0"""
    disc = 9 * x * x * y * y - 4 * (x * x + y * y)
    if disc < 0:
        return []
    root = isqrt(disc)
    if root * root != disc:
        return []
    return sorted({(3 * x * y + s * root) // 2 for s in (1, -1)
                   if (3 * x * y + s * root) % 2 == 0 and 3 * x * y + s * root > 0})


def p_triples(p: int, bound: int) -> List[Tuple[int, int, int]]:
    """
    Решения a² + b² + c² = p·abc + 3 − p, порождённые из (1,1,1) ходами
    (a, b, c) → (a, b, p·ab − c), |члены| ≤ bound.
    Triples are stored up to an even number of sign changes (any sign change
    when p = 0): sorted absolute values, the sign of the product carried by the
    smallest member.
    """
    if p in (1, 2) or p < -1:
        raise BadParams(f"p must be >= 3 or in {{0, -1}}, got {p}")
    if bound < 1:
        raise BadInput(f"bound must be >= 1, got {bound}")

    def canonical(t: Tuple[int, int, int]) -> Tuple[int, int, int]:
        mags = sorted(abs(v) for v in t)
        if p != 0 and t[0] * t[1] * t[2] < 0:
            mags[0] = -mags[0]
        return tuple(mags)

    start = (1, 1, 1)
    seen = {canonical(start)}
    stack = [start]
    while stack:
        x, y, z = stack.pop()
        for nxt in ((p * y * z - x, y, z), (x, p * x * z - y, z), (x, y, p * x * y - z)):
            if max(abs(v) for v in nxt) > bound or 0 in nxt:
                continue
            key = canonical(nxt)
            if key not in seen:
                seen.add(key)
                stack.append(nxt)
    return sorted(seen, key=lambda t: (abs(t[2]), abs(t[1]), abs(t[0]), t))


# --- MT-matrices and moves ---

def P_move(x) -> Mat3:
    """P(x)ᵗ M(x,y,z) P(x) = M(x, z, xz − y)"""
    return Mat3([[0, -1, 0], [1, x, 0], [0, 0, 1]])


def Q_move(z) -> Mat3:
    """Q(z)ᵗ M(x,y,z) Q(z) = M(xz − y, x, z)"""
    return Mat3([[1, 0, 0], [0, z, 1], [0, -1, 0]])


def mt_matrices(t: MarkoffTriple) -> List[Orientation]:
    """All orderings (a, b, c) of the scaled triple with max ∈ {a, c}"""
    a, b, c = t.scaled
    perms = {(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)}
    result = [Orientation(*p) for p in perms if max(p) in (p[0], p[2])]
    return sorted(result, key=lambda o: (o.a, o.b, o.c))


def all_orientations(bound: int) -> List[Orientation]:
    return [o for t in enumerate_triples(bound) for o in mt_matrices(t)]


def tree_parent(o: Orientation) -> Optional[Tuple[Orientation, str, int]]:
    """
    (parent orientation, move name, move parameter) with
    Moveᵗ·M(parent)·Move = M(o); None at M(3,3,3).
    """
    if not o.is_mt:
        raise BadInput(f"{o} is not an MT-matrix")
    if o == ROOT_ORIENTATION:
        return None
    a, b, c = o.a, o.b, o.c
    if c >= a:
        return Orientation(a, a * b - c, b), 'P', a
    return Orientation(b, b * c - a, c), 'Q', c


def tree_path(o: Orientation) -> List[Tuple[str, int]]:
    """Moves from the root; replaying them reproduces o"""
    path = []
    current = o
    while True:
        step = tree_parent(current)
        if step is None:
            break
        current, name, x = step
        path.append((name, x))
    path.reverse()
    return path


def replay_path(path: List[Tuple[str, int]]) -> Orientation:
    a, b, c = 3, 3, 3
    for name, x in path:
        if name == 'P':
            if x != a:
                raise BadInput(f"P({x}) does not apply to M({a},{b},{c})")
            a, b, c = a, c, a * c - b
        else:
            if x != c:
                raise BadInput(f"Q({x}) does not apply to M({a},{b},{c})")
            a, b, c = a * c - b, a, c
    return Orientation(a, b, c)


@lru_cache(maxsize=4096)
def path_matrix(o: Orientation) -> Mat3:
    """G with Gᵗ·M(3,3,3)·G = M(o)"""
    g = Mat3.identity()
    for name, x in tree_path(o):
        g = g @ (P_move(x) if name == 'P' else Q_move(x))
    return g


def transformer(src: Orientation, dst: Orientation) -> Mat3:
    """
    N with Nᵗ·M(dst)·N = M(src), det N = 1,
    N·(c₁,−b₁,a₁)ᵗ = (c₂,−b₂,a₂)ᵗ and Nᵗ·(c₂,m₂,a₂)ᵗ = (c₁,m₁,a₁)ᵗ
    (index 1 for src, 2 for dst).
    """
    return path_matrix(dst).inverse() @ path_matrix(src)


def normal_form_W(o: Orientation) -> Mat3:
    """𝒲(o) = N·𝒲(3,3,3) with N the transformer from the root to o"""
    return transformer(ROOT_ORIENTATION, o) @ W_ROOT
