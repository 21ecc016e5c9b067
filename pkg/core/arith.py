"""
Целочисленные ядра: разложение, квадратные корни из −1, суммы двух квадратов
"""
import logging
from math import isqrt, gcd
from typing import List, Tuple

from sympy import factorint
from sympy.ntheory import sqrt_mod
from sympy.ntheory.modular import crt

from core.exceptions import BadInput, NoSolution
from core.models import Factorization

logger = logging.getLogger(__name__)

Sl2Tuple = Tuple[Tuple[int, int], Tuple[int, int]]


def factorize(n: int) -> Factorization:
    """Разложение n ≥ 1 на простые множители"""
    if n < 1:
        raise BadInput(f"n must be >= 1, got {n}")
    factors = tuple(sorted(factorint(n).items()))
    return Factorization(value=n, factors=factors)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def sqrt_minus_one(n: int) -> List[int]:
    """
    All ε in [0, n) with ε² ≡ −1 (mod n), sorted.
    Roots are found per prime power and combined by CRT.
    """
    if n < 1:
        raise BadInput(f"n must be >= 1, got {n}")
    if n == 1:
        return [0]
    fact = factorize(n)
    if n % 4 == 0 or any(p % 4 == 3 for p in fact.odd_primes):
        return []

    moduli = []
    root_sets = []
    for prime, exponent in fact:
        modulus = prime ** exponent
        roots = sqrt_mod(modulus - 1, modulus, all_roots=True)
        if not roots:
            return []
        moduli.append(modulus)
        root_sets.append(sorted(roots))

    combined = [[]]
    for roots in root_sets:
        combined = [prefix + [r] for prefix in combined for r in roots]

    result = set()
    for residues in combined:
        value, _ = crt(moduli, residues)
        result.add(int(value) % n)
    logger.debug(f"sqrt_minus_one({n}) -> {len(result)} residues")
    return sorted(result)


def symmetric_residue(x: int, n: int) -> int:
    """Representative of x mod n in (−n/2, n/2]"""
    r = x % n
    if 2 * r > n:
        r -= n
    return r


def mod_inverse(x: int, n: int) -> int:
    if gcd(x, n) != 1:
        raise NoSolution(f"{x} is not invertible modulo {n}")
    return pow(x, -1, n)


def two_square_decompositions(n: int) -> List[Tuple[int, int]]:
    """All (x, y) with 0 ≤ x ≤ y and x² + y² = n, sorted by x"""
    if n < 1:
        raise BadInput(f"n must be >= 1, got {n}")
    result = []
    for x in range(isqrt(n // 2) + 1):
        rest = n - x * x
        y = isqrt(rest)
        if y * y == rest and x <= y:
            result.append((x, y))
    return result


def signed_two_square_representations(n: int) -> List[Tuple[int, int]]:
    """All integer (x, y), any signs and order, with x² + y² = n"""
    reps = set()
    for x, y in two_square_decompositions(n):
        for u, v in ((x, y), (y, x)):
            for su in (1, -1):
                for sv in (1, -1):
                    reps.add((su * u, sv * v))
    return sorted(reps)


def symmetric_sl2_root(n: int, k: int, l: int) -> Sl2Tuple:
    """
    Единственная матрица T ≥ 0 с det T = 1 и T·Tᵗ = [[n, k], [k, l]].
    The first row (p, q) is a two-square decomposition of n; the second row
    follows from det T = 1 and T·Tᵗ = [[n, k], [k, l]].
    """
    if n * l - k * k != 1 or min(n, k, l) < 0:
        raise NoSolution(f"[[{n},{k}],[{k},{l}]] is not a positive definite unimodular matrix with k >= 0")
    for x, y in two_square_decompositions(n):
        for p, q in ((x, y), (y, x)):
            r_num = p * k - q
            s_num = q * k + p
            if r_num % n or s_num % n:
                continue
            r, s = r_num // n, s_num // n
            if r < 0 or s < 0 or r * r + s * s != l:
                continue
            return ((p, q), (r, s))
    raise NoSolution(f"no non-negative symmetric root for [[{n},{k}],[{k},{l}]]")
