"""Exact linear algebra over polynomial and rational coefficients.

Everything here is fraction-free or exact-rational; no floating point
enters at any stage.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .polynomials import BivariatePolynomial

# The four largest primes below 2^53; large enough that a single random
# evaluation of a degree-D identity with D ~ 10^4 has error probability
# well under 2^-30, and small enough that hand checks stay printable.
MODULAR_PRIMES = (
    9007199254740881,
    9007199254740847,
    9007199254740761,
    9007199254740727,
)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3 * 10^24 (fixed witness set)."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


assert all(is_prime(p) for p in MODULAR_PRIMES)


@dataclass(frozen=True)
class ExactMatrix:
    """Dense rectangular matrix with exact entries (any exact ring)."""

    entries: tuple

    def __post_init__(self):
        assert self.entries, "matrix must have at least one row"
        width = len(self.entries[0])
        assert width > 0, "matrix must have at least one column"
        assert all(len(row) == width for row in self.entries)

    @classmethod
    def from_rows(cls, rows) -> "ExactMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def __getitem__(self, pos):
        i, j = pos
        return self.entries[i][j]

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        m = self.entries
        return all(
            m[i][j] == m[j][i] for i in range(self.nrows) for j in range(i)
        )


def det_fraction_free(matrix: ExactMatrix) -> BivariatePolynomial:
    """Determinant over the bivariate polynomial ring, Bareiss style.

    Every intermediate entry is a minor of the input, so all divisions
    are exact; no rational arithmetic is needed.  Integer entries are
    coerced to constant polynomials.
    """
    assert matrix.is_square()
    n = matrix.nrows
    m = [
        [
            BivariatePolynomial.constant(e) if isinstance(e, int) else e
            for e in row
        ]
        for row in matrix.entries
    ]
    sign = 1
    prev = BivariatePolynomial.constant(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = next(
                (r for r in range(k + 1, n) if not m[r][k].is_zero()), None
            )
            if pivot_row is None:
                return BivariatePolynomial.zero()
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            head = row_i[k]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - head * row_k[j]).exact_div(prev)
            row_i[k] = BivariatePolynomial.zero()
        prev = pivot
    result = m[n - 1][n - 1]
    return -result if sign < 0 else result


def _integer_rank(rows: list) -> int:
    """Rank of an integer matrix by fraction-free elimination, full pivoting."""
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if m else 0
    rank = 0
    prev = 1
    while rank < nr and rank < nc:
        pr = pc = -1
        for i in range(rank, nr):
            for j in range(rank, nc):
                if m[i][j]:
                    pr, pc = i, j
                    break
            if pr >= 0:
                break
        if pr < 0:
            break
        m[rank], m[pr] = m[pr], m[rank]
        if pc != rank:
            for row in m:
                row[rank], row[pc] = row[pc], row[rank]
        pivot = m[rank][rank]
        for i in range(rank + 1, nr):
            head = m[i][rank]
            for j in range(rank + 1, nc):
                m[i][j] = (pivot * m[i][j] - head * m[rank][j]) // prev
            m[i][rank] = 0
        prev = pivot
        rank += 1
    return rank


def rank_exact(matrix: ExactMatrix) -> int:
    """Exact rank of a matrix with Fraction (or int) entries.

    Rows are scaled to integers first (rank is unchanged by nonzero row
    scaling); elimination itself is integer and fraction-free.
    """
    scaled = []
    for row in matrix.entries:
        fracs = [Fraction(e) for e in row]
        mult = lcm(*(f.denominator for f in fracs)) if fracs else 1
        scaled.append([int(f * mult) for f in fracs])
    return _integer_rank(scaled)


def det_modular(matrix: ExactMatrix, p: int) -> int:
    """Determinant of an integer matrix mod p by Gaussian elimination.

    Requires p prime (checked); returns a value in [0, p).
    """
    assert matrix.is_square()
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    n = matrix.nrows
    m = [[int(e) % p for e in row] for row in matrix.entries]
    det = 1
    for k in range(n):
        pivot_row = next((r for r in range(k, n) if m[r][k]), None)
        if pivot_row is None:
            return 0
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            det = -det
        pivot = m[k][k]
        det = det * pivot % p
        inv = pow(pivot, -1, p)
        for i in range(k + 1, n):
            factor = m[i][k] * inv % p
            if factor:
                row_i = m[i]
                row_k = m[k]
                for j in range(k, n):
                    row_i[j] = (row_i[j] - factor * row_k[j]) % p
    return det % p
