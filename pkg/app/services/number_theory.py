"""
Exact arithmetic for the congruence x^2 = 2 (mod n).

Moduli stay within 64-bit range; factorization is plain trial division and is
practical up to about 10**12.
"""

import logging
import math
from itertools import product
from typing import Dict, Iterable, Set, Tuple

from app.exceptions import DomainError
from app.models.congruence import CongruenceSolutions, Factorization

logger = logging.getLogger(__name__)

# Above this bound square roots mod p switch from a scan to Tonelli-Shanks.
SCAN_LIMIT = 10 ** 6


def factorize(n: int) -> Factorization:
    if n < 1:
        raise DomainError(f"Can only factorize positive integers, got {n}")
    factors = []
    remaining = n
    divisor = 2
    while divisor * divisor <= remaining:
        if remaining % divisor == 0:
            exponent = 0
            while remaining % divisor == 0:
                remaining //= divisor
                exponent += 1
            factors.append((divisor, exponent))
        divisor += 1 if divisor == 2 else 2
    if remaining > 1:
        factors.append((remaining, 1))
    return Factorization(n, factors)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorize(n).factors == [(n, 1)]


def _require_odd_prime(p: int):
    if p == 2 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")


def gauss_criterion(a: int, p: int) -> bool:
    """
    Decide whether a is a square mod p by counting sign changes.

    Reduce a, 2a, ..., ((p-1)/2)a to the symmetric range around 0; a is a
    quadratic residue exactly when the number of negative representatives
    is even.
    """
    _require_odd_prime(p)
    if a % p == 0:
        raise DomainError(f"{p} divides {a}")
    half = (p - 1) // 2
    negatives = sum(1 for k in range(1, half + 1) if (k * a) % p > half)
    return negatives % 2 == 0


def tonelli_shanks(a: int, p: int) -> Set[int]:
    """Square roots of a modulo an odd prime p."""
    a %= p
    if a == 0:
        return {0}
    if pow(a, (p - 1) // 2, p) != 1:
        return set()

    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    if s == 1:
        root = pow(a, (p + 1) // 4, p)
        return {root, p - root}

    z = next(k for k in range(2, p) if pow(k, (p - 1) // 2, p) == p - 1)
    c = pow(z, q, p)
    root = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        i, square = 1, (t * t) % p
        while square != 1:
            square = (square * square) % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        root = (root * b) % p
        c = (b * b) % p
        t = (t * c) % p
        m = i
    return {root, p - root}


def sqrt_mod_prime(a: int, p: int) -> Set[int]:
    """All x in 0..p-1 with x*x = a (mod p)."""
    _require_odd_prime(p)
    if p > SCAN_LIMIT:
        return tonelli_shanks(a, p)
    target = a % p
    return {x for x in range(p) if (x * x) % p == target}


def hensel_lift(a: int, p: int, m: int) -> Set[int]:
    """Square roots of a modulo p**m, lifted from the roots mod p by Newton steps."""
    if m < 1:
        raise DomainError(f"Exponent must be positive, got {m}")
    if a % p == 0:
        raise DomainError(f"{p} divides {a}")
    roots = sqrt_mod_prime(a, p)
    modulus = p
    for _ in range(m - 1):
        modulus *= p
        roots = {(x - (x * x - a) * pow(2 * x, -1, modulus)) % modulus for x in roots}
    return roots


def crt_combine(residue_sets: Iterable[Tuple[int, Iterable[int]]]) -> Set[int]:
    """
    Combine residue classes over pairwise coprime moduli.

    Each entry is (modulus, residues); the result holds every residue modulo
    the product that reduces into each of the given sets.
    """
    residue_sets = [(modulus, sorted(residues)) for modulus, residues in residue_sets]
    total = math.prod(modulus for modulus, _ in residue_sets)
    combined = set()
    for choice in product(*(residues for _, residues in residue_sets)):
        x = 0
        for (modulus, _), residue in zip(residue_sets, choice):
            cofactor = total // modulus
            x += residue * cofactor * pow(cofactor, -1, modulus)
        combined.add(x % total)
    return combined


def solve_x2_eq_2(n: int) -> CongruenceSolutions:
    """Every x mod n with x^2 = 2 (mod n)."""
    if n < 1:
        raise DomainError(f"Modulus must be positive, got {n}")
    if n == 1:
        return CongruenceSolutions(1, [0])

    per_prime_power = []
    for p, a in factorize(n).factors:
        if p == 2:
            # x^2 = 2 mod 4 has no solution, mod 2 it forces x even
            if a > 1:
                return CongruenceSolutions(n, [])
            roots = {0}
        else:
            roots = hensel_lift(2, p, a)
        if not roots:
            return CongruenceSolutions(n, [])
        per_prime_power.append((p ** a, roots))
    return CongruenceSolutions(n, crt_combine(per_prime_power))


def predicted_count(n: int) -> int:
    """Number of nonorientable regular embeddings of K_{n,n} up to isomorphism."""
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    if n == 2:
        return 1
    if n % 4 != 2:
        return 0
    primes = factorize(n // 2).primes
    if all(p % 8 in (1, 7) for p in primes):
        return 2 ** len(primes)
    return 0


def count_details(n: int) -> Dict:
    """The predicted count together with the data it was read from."""
    count = predicted_count(n)
    details = {'n': n, 'count': count, 'half_factorization': None, 'residues_mod_8': None}
    if n % 2 == 0:
        half = factorize(n // 2)
        details['half_factorization'] = [[p, a] for p, a in half.factors]
        details['residues_mod_8'] = {str(p): p % 8 for p in half.primes}
    logger.debug(f"Predicted count for n={n}: {count}")
    return details
