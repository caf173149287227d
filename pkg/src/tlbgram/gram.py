"""The Gram matrix of the annular basis and its determinant identity.

The bilinear form assigns each pair of basis diagrams a monomial
a^m d^t.  The determinant of the full matrix factors as

    prod_{i=1..n} (T_i(d)^2 - a^2)^C(2n, n-i)

with T_i the normalized Chebyshev polynomials.  This module builds the
matrix, expands the product, and compares the two either symbolically
(fraction-free determinant) or modulo a large prime at random points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from . import __version__
from ._limits import guard
from .annular import AnnularDiagram, PairingValue, enumerate_diagrams, pair
from .linalg import (
    MODULAR_PRIMES,
    ExactMatrix,
    det_fraction_free,
    det_modular,
    is_prime,
    rank_exact,
)
from .polynomials import BivariatePolynomial, chebyshev


@dataclass(frozen=True)
class GramMatrix:
    """Basis diagrams plus the pairing of every two of them."""

    n: int
    basis: tuple[AnnularDiagram, ...]
    pairings: tuple[tuple[PairingValue, ...], ...]
    entries: ExactMatrix

    def size(self) -> int:
        return len(self.basis)

    def evaluate_mod(self, a_value: int, d_value: int, p: int) -> list[list[int]]:
        return [
            [
                pow(a_value, v.nontrivial, p) * pow(d_value, v.trivial, p) % p
                for v in row
            ]
            for row in self.pairings
        ]

    def evaluate_rational(self, a_value: Fraction, d_value: Fraction) -> ExactMatrix:
        a_value = Fraction(a_value)
        d_value = Fraction(d_value)
        return ExactMatrix.from_rows(
            [
                [a_value**v.nontrivial * d_value**v.trivial for v in row]
                for row in self.pairings
            ]
        )


@lru_cache(maxsize=None)
def gram_matrix(n: int) -> GramMatrix:
    """Pair every two basis diagrams; the result is symmetric with d^n diagonal."""
    guard(1 <= n <= 5, f"gram_matrix tested for 1 <= n <= 5, got n={n}")
    basis = enumerate_diagrams(n)
    size = len(basis)
    vals: list[list[PairingValue]] = [[None] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            v = pair(basis[i], basis[j])
            vals[i][j] = v
            vals[j][i] = v
        assert vals[i][i] == PairingValue(0, n)
    pairings = tuple(tuple(row) for row in vals)
    entries = ExactMatrix.from_rows(
        [[v.as_polynomial() for v in row] for row in pairings]
    )
    return GramMatrix(n, basis, pairings, entries)


def crossing_signs(basis) -> tuple[int, ...]:
    """(-1)^(crossing number) for each basis diagram."""
    return tuple(-1 if d.cut_crossings() & 1 else 1 for d in basis)


def sign_conjugation_check(n: int) -> bool:
    """Negating the non-trivial loop variable conjugates by the sign matrix.

    Checks entrywise that the a -> -a image of every pairing equals
    sign_i * sign_j times the pairing, i.e. the parity of m matches the
    parity of the two crossing numbers combined.
    """
    g = gram_matrix(n)
    signs = crossing_signs(g.basis)
    for i in range(g.size()):
        for j in range(g.size()):
            entry = g.entries[i, j]
            expected = entry if signs[i] * signs[j] > 0 else -entry
            if entry.substitute_negated_a() != expected:
                return False
    return True


def determinant_product_form(n: int) -> BivariatePolynomial:
    """Expanded product prod_i (T_i(d)^2 - a^2)^C(2n, n-i)."""
    guard(1 <= n <= 3, f"symbolic product expansion tested for n <= 3, got n={n}")
    a_sq = BivariatePolynomial.monomial(2, 0)
    result = BivariatePolynomial.constant(1)
    for i in range(1, n + 1):
        factor = chebyshev(i) * chebyshev(i) - a_sq
        result = result * factor ** comb(2 * n, n - i)
    return result


def determinant_product_value_mod(n: int, a_value: int, d_value: int, p: int) -> int:
    """The factored determinant evaluated at a point mod p."""
    assert n >= 1
    t_prev, t_cur = 2 % p, d_value % p  # T_0, T_1
    a_sq = a_value * a_value % p
    result = 1
    for i in range(1, n + 1):
        factor = (t_cur * t_cur - a_sq) % p
        result = result * pow(factor, comb(2 * n, n - i), p) % p
        t_prev, t_cur = t_cur, (d_value * t_cur - t_prev) % p
    return result


def degree_bound(n: int) -> int:
    """Total-degree bound used for the random-evaluation error estimate.

    The determinant has degree exactly n*C(2n, n); the doubled value is
    kept as a deliberately crude margin.
    """
    return 2 * n * comb(2 * n, n)


def verify_determinant(
    n: int,
    mode: str = "symbolic",
    trials: int = 32,
    seed: int = 0,
    prime: int | None = None,
) -> dict:
    """Compare det G_n against the Chebyshev product; returns a report dict.

    Symbolic mode expands both sides exactly.  Modular mode samples
    random points mod a fixed prime and compares evaluations, reporting
    the Schwartz-Zippel style error bound trials * D / p.
    """
    if mode == "symbolic":
        guard(n <= 3, f"symbolic verification tested for n <= 3, got n={n}")
        g = gram_matrix(n)
        det = det_fraction_free(g.entries)
        product = determinant_product_form(n)
        return {
            "version": __version__,
            "n": n,
            "mode": "symbolic",
            "trials": None,
            "prime": None,
            "seed": None,
            "pass": det == product,
            "bound": 0.0,
            "determinant": det.to_text(),
        }
    if mode != "modular":
        raise ValueError(f"mode must be 'symbolic' or 'modular', got {mode!r}")
    if trials < 1:
        raise ValueError("need at least one trial")
    p = MODULAR_PRIMES[0] if prime is None else prime
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    bound_degree = degree_bound(n)
    if p <= bound_degree:
        raise ValueError("prime too small for the degree bound")
    g = gram_matrix(n)
    rng = random.Random(seed)
    trial_results = []
    for _ in range(trials):
        a_value = rng.randrange(p)
        d_value = rng.randrange(p)
        det = det_modular(
            ExactMatrix.from_rows(g.evaluate_mod(a_value, d_value, p)), p
        )
        trial_results.append(det == determinant_product_value_mod(n, a_value, d_value, p))
    return {
        "version": __version__,
        "n": n,
        "mode": "modular",
        "trials": trials,
        "prime": p,
        "seed": seed,
        "pass": all(trial_results),
        "bound": trials * bound_degree / p,
        "trial_results": trial_results,
    }


def specialized_nullity(n: int, k: int, delta_value: Fraction) -> int:
    """Nullity of G_n at a = (-1)^(k-1) T_k(d0), d = d0, exact over Q.

    d0 should be generic; for a generic sample the answer is the
    dimension drop forced by the k-th factor of the determinant.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    delta_value = Fraction(delta_value)
    t_k = chebyshev(k).evaluate(0, delta_value)
    a_value = t_k if k & 1 else -t_k
    g = gram_matrix(n)
    rank = rank_exact(g.evaluate_rational(a_value, delta_value))
    return g.size() - rank


def random_delta(rng: random.Random) -> Fraction:
    """A random rational sample with numerator and denominator up to 10^3."""
    num = rng.randint(-1000, 1000)
    if num == 0:
        num = 1
    return Fraction(num, rng.randint(1, 1000))


def nullity_with_resample(
    n: int, k: int, rng: random.Random, max_attempts: int = 5
) -> tuple[int, list[Fraction]]:
    """Specialized nullity at fresh random samples until two of them agree.

    A non-generic sample can inflate the nullity; agreement of two
    independent samples is accepted, disagreement triggers a resample,
    and more than max_attempts samples raises RuntimeError.  Returns the
    agreed value together with every sample drawn.
    """
    counts: dict[int, int] = {}
    samples: list[Fraction] = []
    for _ in range(max_attempts):
        delta_value = random_delta(rng)
        samples.append(delta_value)
        value = specialized_nullity(n, k, delta_value)
        counts[value] = counts.get(value, 0) + 1
        if counts[value] == 2:
            return value, samples
    raise RuntimeError(
        f"no two of {max_attempts} samples agreed on the nullity: {counts}"
    )
