import random

import pytest
from sympy import nextprime, primerange

from app.exceptions import DomainError
from app.services.number_theory import (
    crt_combine, factorize, gauss_criterion, hensel_lift, predicted_count,
    solve_x2_eq_2, sqrt_mod_prime, tonelli_shanks,
)


def squares_mod(a, modulus):
    return {x for x in range(modulus) if (x * x - a) % modulus == 0}


def test_factorize_examples():
    assert factorize(1).factors == []
    assert factorize(14).factors == [(2, 1), (7, 1)]
    assert factorize(1666).factors == [(2, 1), (7, 2), (17, 1)]
    assert factorize(2 ** 10 * 3 ** 4).factors == [(2, 10), (3, 4)]


def test_factorize_rejects_zero():
    with pytest.raises(DomainError):
        factorize(0)


def test_gauss_criterion_examples():
    assert gauss_criterion(2, 7) is True
    assert gauss_criterion(2, 5) is False
    assert gauss_criterion(1, 11) is True


def test_gauss_criterion_divisible_argument():
    with pytest.raises(DomainError):
        gauss_criterion(14, 7)


def test_gauss_criterion_agrees_with_exhaustive_residues():
    rng = random.Random(2024)
    for p in map(int, primerange(3, 1000)):
        residues = [2] + [rng.randrange(1, p) for _ in range(20)]
        for a in residues:
            if a % p == 0:
                continue
            assert gauss_criterion(a, p) == bool(squares_mod(a, p)), (a, p)


def test_sqrt_mod_prime_examples():
    assert sqrt_mod_prime(2, 7) == {3, 4}
    assert sqrt_mod_prime(2, 17) == {6, 11}
    assert sqrt_mod_prime(2, 5) == set()
    assert sqrt_mod_prime(0, 13) == {0}


def test_sqrt_mod_prime_requires_odd_prime():
    with pytest.raises(DomainError):
        sqrt_mod_prime(2, 9)
    with pytest.raises(DomainError):
        sqrt_mod_prime(1, 2)


def test_tonelli_shanks_matches_scan():
    for p in (7, 17, 41, 97, 113, 257, 65537):
        for a in (2, 3, 5, 10):
            assert tonelli_shanks(a, p) == squares_mod(a, p), (a, p)


def test_tonelli_shanks_large_prime():
    p = int(nextprime(10 ** 6))
    roots = sqrt_mod_prime(2, p)
    assert all((x * x - 2) % p == 0 for x in roots)
    assert len(roots) in (0, 2)


def test_hensel_lift_examples():
    assert hensel_lift(2, 7, 1) == {3, 4}
    lifted = hensel_lift(2, 7, 2)
    assert lifted == {10, 39}
    assert lifted == squares_mod(2, 49)
    assert {x % 7 for x in lifted} == {3, 4}
    assert hensel_lift(2, 5, 3) == set()


def test_hensel_lift_divisible_argument():
    with pytest.raises(DomainError):
        hensel_lift(7, 7, 2)


@pytest.mark.parametrize('p', [7, 17, 23, 31])
def test_hensel_lift_preserves_root_count(p):
    base = sqrt_mod_prime(2, p)
    for m in range(1, 5):
        roots = hensel_lift(2, p, m)
        assert len(roots) == len(base)
        assert all((x * x - 2) % p ** m == 0 for x in roots)


def test_crt_combine():
    assert crt_combine([(2, {0}), (7, {3, 4})]) == {4, 10}
    assert crt_combine([(4, {1, 3}), (9, {2})]) == {29, 11}


def test_solve_examples():
    assert solve_x2_eq_2(14).solutions == [4, 10]
    assert solve_x2_eq_2(12).solutions == []
    assert solve_x2_eq_2(34).solutions == [6, 28]
    assert solve_x2_eq_2(1).solutions == [0]
    assert solve_x2_eq_2(2).solutions == [0]


def test_solve_matches_exhaustive_scan():
    for n in range(1, 2001):
        assert solve_x2_eq_2(n).solutions == sorted(squares_mod(2, n)), n


def test_predicted_count_examples():
    assert predicted_count(14) == 2
    assert predicted_count(2) == 1
    assert predicted_count(6) == 0
    assert predicted_count(15) == 0
    assert predicted_count(12) == 0
    assert predicted_count(34) == 2
    # 2 * 7 * 17
    assert predicted_count(238) == 4


def test_predicted_count_rejects_small_n():
    with pytest.raises(DomainError):
        predicted_count(1)


def test_predicted_count_matches_solution_count():
    for n in range(6, 2001, 4):
        large = [x for x in solve_x2_eq_2(n) if n > x > 3]
        assert len(large) == predicted_count(n), n
        assert all(x > 3 for x in solve_x2_eq_2(n)), n
