"""Sparse exact polynomial arithmetic.

Three coefficient domains cover everything computed here:

* ``BivariatePolynomial``: integer polynomials in the two loop variables
  ``a`` (non-trivial loop) and ``d`` (trivial loop), stored as a dict
  mapping ``(a_exp, d_exp)`` to a nonzero integer coefficient.
* ``LaurentScalar``: integer Laurent polynomials in the bracket variable
  ``A``, stored as a dict mapping an integer exponent to a nonzero
  integer coefficient.
* ``RationalFunction``: reduced quotients of Laurent polynomials, the
  coefficient field needed for Jones-Wenzl projectors.

All three keep a canonical zero-free representation, so structural
equality coincides with mathematical equality.  Instances are treated as
immutable; arithmetic always builds new objects.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd


class BivariatePolynomial:
    """Integer polynomial in the loop variables ``a`` and ``d``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                if coeff:
                    ea, ed = exps
                    assert ea >= 0 and ed >= 0
                    clean[exps] = coeff
        self.terms = clean

    @classmethod
    def zero(cls) -> "BivariatePolynomial":
        return cls()

    @classmethod
    def constant(cls, c: int) -> "BivariatePolynomial":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a_exp: int, d_exp: int, coeff: int = 1) -> "BivariatePolynomial":
        return cls({(a_exp, d_exp): coeff})

    @classmethod
    def var_a(cls) -> "BivariatePolynomial":
        return cls({(1, 0): 1})

    @classmethod
    def var_d(cls) -> "BivariatePolynomial":
        return cls({(0, 1): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def degree_a(self) -> int:
        """Largest ``a`` exponent, -1 for the zero polynomial."""
        return max((e[0] for e in self.terms), default=-1)

    def degree_d(self) -> int:
        return max((e[1] for e in self.terms), default=-1)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = BivariatePolynomial.constant(other)
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self) -> "BivariatePolynomial":
        return BivariatePolynomial({e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> "BivariatePolynomial":
        if isinstance(other, int):
            other = BivariatePolynomial.constant(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = BivariatePolynomial.__new__(BivariatePolynomial)
        res.terms = out
        return res

    __radd__ = __add__

    def __sub__(self, other) -> "BivariatePolynomial":
        if isinstance(other, int):
            other = BivariatePolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "BivariatePolynomial":
        if isinstance(other, int):
            if other == 0:
                return BivariatePolynomial.zero()
            res = BivariatePolynomial.__new__(BivariatePolynomial)
            res.terms = {e: c * other for e, c in self.terms.items()}
            return res
        out: dict = {}
        for (ea1, ed1), c1 in self.terms.items():
            for (ea2, ed2), c2 in other.terms.items():
                key = (ea1 + ea2, ed1 + ed2)
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        res = BivariatePolynomial.__new__(BivariatePolynomial)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "BivariatePolynomial":
        assert exponent >= 0
        result = BivariatePolynomial.constant(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def leading(self) -> tuple[tuple[int, int], int]:
        """Leading term under lex order with ``d`` major, ``a`` minor."""
        assert self.terms, "zero polynomial has no leading term"
        e = max(self.terms, key=lambda t: (t[1], t[0]))
        return e, self.terms[e]

    def exact_div(self, divisor: "BivariatePolynomial") -> "BivariatePolynomial":
        """Quotient self/divisor, raising ValueError unless division is exact."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return BivariatePolynomial.zero()
        (dea, ded), dc = divisor.leading()
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            e = max(rem, key=lambda t: (t[1], t[0]))
            c = rem[e]
            ea, ed = e
            if ea < dea or ed < ded or c % dc:
                raise ValueError("inexact polynomial division")
            qe = (ea - dea, ed - ded)
            qc = c // dc
            quot[qe] = qc
            for (fa, fd), fc in divisor.terms.items():
                key = (qe[0] + fa, qe[1] + fd)
                s = rem.get(key, 0) - qc * fc
                if s:
                    rem[key] = s
                else:
                    rem.pop(key, None)
        res = BivariatePolynomial.__new__(BivariatePolynomial)
        res.terms = quot
        return res

    def substitute_negated_a(self) -> "BivariatePolynomial":
        """The image under a -> -a."""
        return BivariatePolynomial(
            {e: (-c if e[0] & 1 else c) for e, c in self.terms.items()}
        )

    def evaluate(self, a_value, d_value):
        """Evaluate at exact scalars (int or Fraction)."""
        total = 0
        for (ea, ed), c in self.terms.items():
            total += c * a_value**ea * d_value**ed
        return total

    def evaluate_mod(self, a_value: int, d_value: int, p: int) -> int:
        total = 0
        for (ea, ed), c in self.terms.items():
            total += c * pow(a_value, ea, p) * pow(d_value, ed, p)
        return total % p

    def to_text(self) -> str:
        """Canonical text form, e.g. ``-1*a^2*d^0 + 1*a^0*d^2``."""
        if not self.terms:
            return "0"
        parts = []
        for (ea, ed) in sorted(self.terms, reverse=True):
            parts.append(f"{self.terms[(ea, ed)]}*a^{ea}*d^{ed}")
        return " + ".join(parts)

    _TERM_RE = re.compile(r"^(-?\d+)\*a\^(\d+)\*d\^(\d+)$")

    @classmethod
    def from_text(cls, text: str) -> "BivariatePolynomial":
        text = text.strip()
        if text == "0":
            return cls.zero()
        terms: dict = {}
        for part in text.split(" + "):
            m = cls._TERM_RE.match(part.strip())
            if not m:
                raise ValueError(f"bad polynomial term: {part!r}")
            coeff, ea, ed = int(m.group(1)), int(m.group(2)), int(m.group(3))
            key = (ea, ed)
            if key in terms:
                raise ValueError(f"repeated exponent pair {key}")
            terms[key] = coeff
        return cls(terms)

    def __repr__(self):
        return f"BivariatePolynomial({self.to_text()!r})"


class LaurentScalar:
    """Integer Laurent polynomial in the bracket variable ``A``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls) -> "LaurentScalar":
        return cls()

    @classmethod
    def constant(cls, c: int) -> "LaurentScalar":
        return cls({0: c})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentScalar":
        return cls({exp: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def min_exp(self) -> int:
        assert self.terms
        return min(self.terms)

    def max_exp(self) -> int:
        assert self.terms
        return max(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentScalar.constant(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self) -> "LaurentScalar":
        return LaurentScalar({e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> "LaurentScalar":
        if isinstance(other, int):
            other = LaurentScalar.constant(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = LaurentScalar.__new__(LaurentScalar)
        res.terms = out
        return res

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentScalar":
        if isinstance(other, int):
            other = LaurentScalar.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "LaurentScalar":
        if isinstance(other, int):
            if other == 0:
                return LaurentScalar.zero()
            res = LaurentScalar.__new__(LaurentScalar)
            res.terms = {e: c * other for e, c in self.terms.items()}
            return res
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = e1 + e2
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        res = LaurentScalar.__new__(LaurentScalar)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentScalar":
        assert exponent >= 0
        result = LaurentScalar.constant(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def evaluate(self, a_value: Fraction) -> Fraction:
        """Evaluate at a nonzero exact scalar."""
        assert a_value != 0
        total = Fraction(0)
        for e, c in self.terms.items():
            total += c * Fraction(a_value) ** e
        return total

    def to_text(self) -> str:
        """Canonical text form, e.g. ``1*A^4 + 1*A^-4``."""
        if not self.terms:
            return "0"
        return " + ".join(
            f"{self.terms[e]}*A^{e}" for e in sorted(self.terms, reverse=True)
        )

    _TERM_RE = re.compile(r"^(-?\d+)\*A\^(-?\d+)$")

    @classmethod
    def from_text(cls, text: str) -> "LaurentScalar":
        text = text.strip()
        if text == "0":
            return cls.zero()
        terms: dict = {}
        for part in text.split(" + "):
            m = cls._TERM_RE.match(part.strip())
            if not m:
                raise ValueError(f"bad Laurent term: {part!r}")
            exp = int(m.group(2))
            if exp in terms:
                raise ValueError(f"repeated exponent {exp}")
            terms[exp] = int(m.group(1))
        return cls(terms)

    def __repr__(self):
        return f"LaurentScalar({self.to_text()!r})"


# The loop value of a trivial circle in bracket variables: -A^2 - A^-2.
LOOP_VALUE_A = LaurentScalar({2: -1, -2: -1})


# --- dense integer polynomial helpers (internal, used for gcd reduction) ---


def _poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_content(p: list) -> int:
    g = 0
    for c in p:
        g = gcd(g, c)
    return g


def _poly_primitive(p: list) -> list:
    g = _poly_content(p)
    if g == 0:
        return []
    if p[-1] < 0:
        g = -g
    return [c // g for c in p]


def _poly_mul_scalar(p: list, s: int) -> list:
    return [c * s for c in p]

def _poly_sub(p: list, q: list) -> list:
    n = max(len(p), len(q))
    out = [0] * n
    for i, c in enumerate(p):
        out[i] = c
    for i, c in enumerate(q):
        out[i] -= c
    return _poly_trim(out)


def _poly_shift_mul(p: list, k: int) -> list:
    return [0] * k + p


def _poly_pseudo_rem(u: list, v: list) -> list:
    # leading-coefficient-scaled remainder; keeps everything in integers
    assert v
    u = list(u)
    lv = v[-1]
    while len(u) >= len(v):
        du = len(u) - len(v)
        lead = u[-1]
        u = _poly_sub(_poly_mul_scalar(u, lv), _poly_shift_mul(_poly_mul_scalar(v, lead), du))
        if not u:
            break
    return u


def _poly_gcd(u: list, v: list) -> list:
    """Primitive gcd of integer polynomials with positive leading coefficient."""
    u = _poly_primitive(_poly_trim(list(u)))
    v = _poly_primitive(_poly_trim(list(v)))
    while v:
        u, v = v, _poly_primitive(_poly_pseudo_rem(u, v))
    return u


def _poly_divexact(p: list, q: list) -> list:
    """Exact quotient of integer polynomials; asserts exactness."""
    assert q
    p = list(p)
    out = [0] * (len(p) - len(q) + 1) if len(p) >= len(q) else []
    while len(p) >= len(q):
        d = len(p) - len(q)
        lead = p[-1]
        assert lead % q[-1] == 0
        c = lead // q[-1]
        out[d] = c
        p = _poly_sub(p, _poly_shift_mul(_poly_mul_scalar(q, c), d))
    assert not p, "inexact polynomial division"
    return _poly_trim(out)


class RationalFunction:
    """Quotient of Laurent polynomials in ``A``, kept in reduced form.

    Canonical form: the denominator is an ordinary integer polynomial
    with nonzero constant term and positive leading coefficient, the
    numerator carries any leftover power of ``A``, the polynomial parts
    share no common factor, and gcd of the two integer contents is 1.
    With that normalization structural equality is semantic equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, int):
            num = LaurentScalar.constant(num)
        if den is None:
            den = LaurentScalar.constant(1)
        elif isinstance(den, int):
            den = LaurentScalar.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = LaurentScalar.zero()
            self.den = LaurentScalar.constant(1)
            return
        shift = num.min_exp() - den.min_exp()
        np = _dense_from_laurent(num)
        dp = _dense_from_laurent(den)
        g = _poly_gcd(np, dp)
        if len(g) > 1 or g[0] != 1:
            np = _poly_divexact(np, g)
            dp = _poly_divexact(dp, g)
        cg = gcd(_poly_content(np), _poly_content(dp))
        if dp[-1] < 0:
            cg = -cg
        np = [c // cg for c in np]
        dp = [c // cg for c in dp]
        self.num = _laurent_from_dense(np, shift)
        self.den = _laurent_from_dense(dp, 0)

    @classmethod
    def from_laurent(cls, s: LaurentScalar) -> "RationalFunction":
        return cls(s)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, LaurentScalar)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self) -> "RationalFunction":
        out = RationalFunction.__new__(RationalFunction)
        out.num = -self.num
        out.den = self.den
        return out

    def __add__(self, other) -> "RationalFunction":
        if isinstance(other, (int, LaurentScalar)):
            other = RationalFunction(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, LaurentScalar)):
            other = RationalFunction(other)
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "RationalFunction":
        if isinstance(other, (int, LaurentScalar)):
            other = RationalFunction(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        if isinstance(other, (int, LaurentScalar)):
            other = RationalFunction(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def evaluate(self, a_value: Fraction) -> Fraction:
        d = self.den.evaluate(a_value)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at A={a_value}")
        return self.num.evaluate(a_value) / d

    def to_text(self) -> str:
        if self.den == LaurentScalar.constant(1):
            return self.num.to_text()
        return f"({self.num.to_text()}) / ({self.den.to_text()})"

    def __repr__(self):
        return f"RationalFunction({self.to_text()!r})"


def _dense_from_laurent(s: LaurentScalar) -> list:
    lo = s.min_exp()
    out = [0] * (s.max_exp() - lo + 1)
    for e, c in s.terms.items():
        out[e - lo] = c
    return out


def _laurent_from_dense(p: list, shift: int) -> LaurentScalar:
    return LaurentScalar({i + shift: c for i, c in enumerate(p) if c})


_CHEBYSHEV_CACHE = [
    BivariatePolynomial.constant(2),
    BivariatePolynomial.var_d(),
]


def chebyshev(i: int) -> BivariatePolynomial:
    """Normalized Chebyshev polynomial T_i(d): T_0=2, T_1=d, T_i=d*T_{i-1}-T_{i-2}.

    With this normalization T_i(x + 1/x) = x^i + x^-i.
    """
    assert i >= 0
    d = BivariatePolynomial.var_d()
    while len(_CHEBYSHEV_CACHE) <= i:
        _CHEBYSHEV_CACHE.append(
            d * _CHEBYSHEV_CACHE[-1] - _CHEBYSHEV_CACHE[-2]
        )
    return _CHEBYSHEV_CACHE[i]


def chebyshev_in_bracket(k: int) -> LaurentScalar:
    """T_k evaluated at d = -A^2 - A^-2, namely (-1)^k (A^{2k} + A^{-2k})."""
    assert k >= 0
    sign = -1 if k & 1 else 1
    if k == 0:
        return LaurentScalar.constant(2)
    return LaurentScalar({2 * k: sign, -2 * k: sign})


def substitute_loop_values(
    p: BivariatePolynomial,
    a_image: LaurentScalar,
    d_image: LaurentScalar = LOOP_VALUE_A,
) -> LaurentScalar:
    """Substitute Laurent images for both loop variables."""
    a_pows = [LaurentScalar.constant(1)]
    d_pows = [LaurentScalar.constant(1)]
    total = LaurentScalar.zero()
    for (ea, ed), c in sorted(p.terms.items()):
        while len(a_pows) <= ea:
            a_pows.append(a_pows[-1] * a_image)
        while len(d_pows) <= ed:
            d_pows.append(d_pows[-1] * d_image)
        total = total + a_pows[ea] * d_pows[ed] * c
    return total
