"""
Brute-force scans used to cross-check the constructive algorithms
"""
from math import isqrt
from typing import List, Tuple

from core.models import MarkoffTriple


def scan_markoff_triples(bound: int) -> List[MarkoffTriple]:
    """Solve c² − 3ab·c + (a² + b²) = 0 for every a ≤ b ≤ bound"""
    found = set()
    for a in range(1, bound + 1):
        for b in range(a, bound + 1):
            disc = 9 * a * a * b * b - 4 * (a * a + b * b)
            if disc < 0:
                continue
            root = isqrt(disc)
            if root * root != disc:
                continue
            for num in (3 * a * b - root, 3 * a * b + root):
                if num % 2 == 0:
                    c = num // 2
                    if b <= c <= bound:
                        found.add(MarkoffTriple(a, b, c))
    return sorted(found, key=lambda t: t.sort_key)


def scan_p_triples(p: int, bound: int) -> List[Tuple[int, int, int]]:
    """Positive solutions of a² + b² + c² = p·abc + 3 − p with a ≤ b ≤ c ≤ bound"""
    found = set()
    for a in range(1, bound + 1):
        for b in range(a, bound + 1):
            const = a * a + b * b - 3 + p
            disc = p * p * a * a * b * b - 4 * const
            if disc < 0:
                continue
            root = isqrt(disc)
            if root * root != disc:
                continue
            for num in (p * a * b - root, p * a * b + root):
                if num % 2 == 0:
                    c = num // 2
                    if b <= c <= bound:
                        found.add((a, b, c))
    return sorted(found, key=lambda t: (t[2], t[1], t[0]))


def scan_sqrt_minus_one(n: int) -> List[int]:
    return [e for e in range(n) if (e * e + 1) % n == 0]
