"""Exact determinants and ranks against independent oracles."""

import random
from fractions import Fraction
from itertools import permutations

import pytest

from tlbgram.linalg import (
    MODULAR_PRIMES,
    ExactMatrix,
    det_fraction_free,
    det_modular,
    is_prime,
    rank_exact,
)
from tlbgram.polynomials import BivariatePolynomial

A = BivariatePolynomial.var_a()
D = BivariatePolynomial.var_d()


def det_by_cofactor(rows):
    """Leibniz/cofactor oracle; fine for tiny matrices."""
    n = len(rows)
    total = None
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):  # count inversions
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = rows[0][perm[0]]
        for i in range(1, n):
            term = term * rows[i][perm[i]]
        term = term * sign
        total = term if total is None else total + term
    return total


def test_matrix_shape_validation():
    with pytest.raises(AssertionError):
        ExactMatrix.from_rows([])
    with pytest.raises(AssertionError):
        ExactMatrix.from_rows([[1, 2], [3]])
    m = ExactMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert (m.nrows, m.ncols) == (2, 3)
    assert m[1, 2] == 6
    assert not m.is_square()


def test_symmetry_predicate():
    assert ExactMatrix.from_rows([[1, 2], [2, 1]]).is_symmetric()
    assert not ExactMatrix.from_rows([[1, 2], [3, 1]]).is_symmetric()
    assert not ExactMatrix.from_rows([[1, 2, 3], [4, 5, 6]]).is_symmetric()


def test_det_frozen_examples():
    g1 = ExactMatrix.from_rows([[D, A], [A, D]])
    assert det_fraction_free(g1) == D * D - A * A
    eye4 = ExactMatrix.from_rows(
        [[int(i == j) for j in range(4)] for i in range(4)]
    )
    assert det_fraction_free(eye4) == 1


def test_det_matches_cofactor_on_random_integer_matrices():
    rng = random.Random(201)
    for _ in range(20):
        n = rng.randint(1, 4)
        rows = [
            [BivariatePolynomial.constant(rng.randint(-9, 9)) for _ in range(n)]
            for _ in range(n)
        ]
        assert det_fraction_free(ExactMatrix.from_rows(rows)) == det_by_cofactor(rows)


def test_det_matches_cofactor_on_random_polynomial_matrices():
    rng = random.Random(202)
    for _ in range(12):
        n = rng.randint(2, 3)
        rows = [
            [
                BivariatePolynomial(
                    {
                        (rng.randint(0, 1), rng.randint(0, 1)): rng.randint(-4, 4)
                        for _ in range(2)
                    }
                )
                for _ in range(n)
            ]
            for _ in range(n)
        ]
        assert det_fraction_free(ExactMatrix.from_rows(rows)) == det_by_cofactor(rows)


def test_det_singular_and_pivoting():
    # zero leading entry forces a row swap
    m = ExactMatrix.from_rows(
        [
            [BivariatePolynomial.zero(), BivariatePolynomial.constant(1)],
            [BivariatePolynomial.constant(1), BivariatePolynomial.zero()],
        ]
    )
    assert det_fraction_free(m) == BivariatePolynomial.constant(-1)
    sing = ExactMatrix.from_rows([[D, D], [D, D]])
    assert det_fraction_free(sing) == 0
    assert det_fraction_free(ExactMatrix.from_rows([[0, 0], [0, 0]])) == 0


def test_det_alternating_multilinearity_spot_check():
    rng = random.Random(203)
    for _ in range(10):
        rows = [[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)]
        swapped = [rows[1], rows[0], rows[2]]
        m = ExactMatrix.from_rows(rows)
        s = ExactMatrix.from_rows(swapped)
        assert det_fraction_free(m) == -det_fraction_free(s)


def test_rank_frozen_examples():
    assert rank_exact(ExactMatrix.from_rows([[1, 1], [1, 1]])) == 1
    assert rank_exact(ExactMatrix.from_rows([[0] * 3] * 3)) == 0
    eye = ExactMatrix.from_rows([[int(i == j) for j in range(4)] for i in range(4)])
    assert rank_exact(eye) == 4


def test_rank_of_constructed_rank_two_matrix():
    rng = random.Random(204)
    for _ in range(10):
        r1 = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(4)]
        r2 = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(4)]
        # two independent rows, each duplicated with a scalar
        rows = [r1, r2, [3 * x for x in r1], [Fraction(-1, 2) * x for x in r2]]
        m = ExactMatrix.from_rows(rows)
        expected = rank_exact(ExactMatrix.from_rows([r1, r2]))
        if expected == 2:  # regenerate-free: almost always independent
            assert rank_exact(m) == 2


def rank_by_gauss(rows):
    """Plain rational Gaussian elimination, the independent rank oracle."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    for col in range(len(m[0]) if m else 0):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def test_rank_matches_gauss_oracle():
    rng = random.Random(205)
    for _ in range(25):
        nr = rng.randint(1, 5)
        nc = rng.randint(1, 5)
        rows = [
            [Fraction(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(nc)]
            for _ in range(nr)
        ]
        assert rank_exact(ExactMatrix.from_rows(rows)) == rank_by_gauss(rows)


def test_det_modular_frozen_examples():
    assert det_modular(ExactMatrix.from_rows([[2, 0], [0, 3]]), 7) == 6
    eye = ExactMatrix.from_rows([[int(i == j) for j in range(5)] for i in range(5)])
    for p in (7, MODULAR_PRIMES[0]):
        assert det_modular(eye, p) == 1
    assert det_modular(ExactMatrix.from_rows([[7, 0], [0, 1]]), 7) == 0


def test_det_modular_rejects_composite():
    with pytest.raises(ValueError):
        det_modular(ExactMatrix.from_rows([[1]]), 10)


def test_det_modular_matches_fraction_free():
    rng = random.Random(206)
    p = MODULAR_PRIMES[1]
    for _ in range(15):
        n = rng.randint(1, 6)
        rows = [[rng.randint(-50, 50) for _ in range(n)] for _ in range(n)]
        m = ExactMatrix.from_rows(rows)
        exact = det_fraction_free(m)
        value = exact.terms.get((0, 0), 0)
        assert det_modular(m, p) == value % p


def test_prime_test_against_sieve():
    sieve = [True] * 2000
    sieve[0] = sieve[1] = False
    for i in range(2, 45):
        if sieve[i]:
            for j in range(i * i, 2000, i):
                sieve[j] = False
    for n in range(2000):
        assert is_prime(n) == sieve[n], n


def test_prime_test_larger_values():
    assert is_prime(2**31 - 1)  # Mersenne prime
    assert not is_prime(2**32 + 1)  # 641 * 6700417
    assert not is_prime(341550071728321)  # strong pseudoprime to low bases
    assert is_prime(2**61 - 1)


def test_modular_primes_are_prime_and_sized():
    assert len(set(MODULAR_PRIMES)) == 4
    for p in MODULAR_PRIMES:
        assert is_prime(p)
        assert p < 2**53
        assert p > 2**52
    assert list(MODULAR_PRIMES) == sorted(MODULAR_PRIMES, reverse=True)


def test_modular_primes_are_the_four_largest_below_2_to_53():
    # every number above the list and between its entries is composite
    upper = 2**53
    for lo, hi in zip(MODULAR_PRIMES, (upper,) + MODULAR_PRIMES[:-1]):
        assert all(not is_prime(x) for x in range(lo + 1, hi))
