"""Exact rational layer: Bernoulli machinery, Apostol-Dedekind sums and their
reciprocity polynomial.

Everything in this module is computed with arbitrary-precision rationals
(`fractions.Fraction`), so "zero" means the exact rational zero.  The periodic
Bernoulli function uses the Fourier-series value at integers, i.e.
bernoulli_function(1, integer) == 0, not B_1 = -1/2.
"""

from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

Coeff = Union[Fraction, complex]
ExpPair = Tuple[int, int]

__all__ = [
    "CoprimePair",
    "LaurentPoly",
    "bernoulli_number",
    "bernoulli_polynomial",
    "bernoulli_function",
    "apostol_sum",
    "g_poly",
    "verify_apostol_reciprocity",
    "dim_data",
    "rational_str",
    "parse_rational",
]


def rational_str(r: Fraction) -> str:
    """Canonical "num/den" form, denominator always shown (so zero is "0/1")."""
    return f"{r.numerator}/{r.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


@dataclass(frozen=True)
class CoprimePair:
    """A pair (p, q) with p >= 1 and gcd(p, q) = 1.

    Membership in U additionally requires q >= 1; use `in_u` to check.
    """

    p: int
    q: int

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"p must be a positive integer, got {self.p}")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"gcd(p, q) must be 1, got ({self.p}, {self.q})")

    @property
    def in_u(self) -> bool:
        return self.q >= 1

    def require_u(self) -> "CoprimePair":
        if not self.in_u:
            raise ValueError(f"({self.p}, {self.q}) is not in U (need q >= 1)")
        return self


# ---------------------------------------------------------------------------
# Bernoulli numbers / polynomials / periodic functions
# ---------------------------------------------------------------------------

_bernoulli_cache = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli_number(k: int) -> Fraction:
    """B_k in the convention with B_1 = -1/2.

    Defining recurrence sum_{j=0}^{k} C(k+1, j) B_j = 0, memoized; safe for
    concurrent callers.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k >= len(_bernoulli_cache):
        with _bernoulli_lock:
            while len(_bernoulli_cache) <= k:
                m = len(_bernoulli_cache)
                acc = sum(
                    Fraction(math.comb(m + 1, j)) * _bernoulli_cache[j]
                    for j in range(m)
                )
                _bernoulli_cache.append(-acc / (m + 1))
    return _bernoulli_cache[k]


def _bernoulli_poly_coeffs(k: int) -> Tuple[Fraction, ...]:
    # B_k(x) = sum_j C(k, j) B_j x^{k-j}; coefficients in descending powers.
    return tuple(Fraction(math.comb(k, j)) * bernoulli_number(j) for j in range(k + 1))


def bernoulli_polynomial(k: int, x: Union[Fraction, int]) -> Fraction:
    """Exact value of the kth Bernoulli polynomial at rational x."""
    if k < 0:
        raise ValueError("k must be >= 0")
    x = Fraction(x)
    acc = Fraction(0)
    for c in _bernoulli_poly_coeffs(k):
        acc = acc * x + c
    return acc


def bernoulli_function(k: int, x: Union[Fraction, int]) -> Fraction:
    """Periodic Bernoulli function: B_k({x}), with the Fourier value 0 at
    integer x when k = 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    x = Fraction(x)
    frac = x - (x.numerator // x.denominator)
    if k == 1 and frac == 0:
        return Fraction(0)
    return bernoulli_polynomial(k, frac)


def apostol_sum(k: int, q: int, p: int) -> Fraction:
    """Apostol-Dedekind sum s_k(q, p) = sum_{mu=1}^{p-1} B_1~(mu/p) B_k~(mu q / p).

    The first factor is the sawtooth mu/p - 1/2; with the bare weight mu/p the
    sum would differ by (p^{1-k} - 1) B_k / 2, which vanishes for odd k >= 3
    but would break the exact vanishing of the even-k sums.

    Direct O(p) exact summation; this deliberately doubles as the oracle for
    the elliptic degeneration checks.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if p < 1:
        raise ValueError("p must be >= 1")
    if math.gcd(p, q) != 1:
        raise ValueError(f"gcd(p, q) must be 1, got ({p}, {q})")
    acc = Fraction(0)
    for mu in range(1, p):
        acc += (Fraction(mu, p) - Fraction(1, 2)) * bernoulli_function(k, Fraction(mu * q, p))
    return acc


# ---------------------------------------------------------------------------
# Sparse two-variable Laurent polynomials
# ---------------------------------------------------------------------------


@dataclass
class LaurentPoly:
    """Sparse Laurent polynomial in (p, q): map (i, j) -> coefficient.

    Exponents may be negative.  Zero coefficients are never stored.
    Coefficients are Fractions or complex numbers; mixing is allowed and
    promotes to complex.
    """

    coeffs: Dict[ExpPair, Coeff] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {e: c for e, c in self.coeffs.items() if c != 0}

    @classmethod
    def monomial(cls, i: int, j: int, c: Coeff = Fraction(1)) -> "LaurentPoly":
        return cls({(i, j): c})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls({})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def scale(self, s: Coeff) -> "LaurentPoly":
        if s == 0:
            return LaurentPoly.zero()
        return LaurentPoly({e: c * s for e, c in self.coeffs.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: Dict[ExpPair, Coeff] = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                e = (i1 + i2, j1 + j2)
                s = out.get(e, 0) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return LaurentPoly(out)

    def swap_vars(self) -> "LaurentPoly":
        return LaurentPoly({(j, i): c for (i, j), c in self.coeffs.items()})

    def evaluate(self, p, q):
        """Evaluate at nonzero (p, q); exact when arguments and coefficients
        are rational."""
        if p == 0 or q == 0:
            if any(i < 0 or j < 0 for (i, j) in self.coeffs):
                raise ZeroDivisionError("Laurent polynomial has a pole at 0")
        acc = 0
        for (i, j), c in self.coeffs.items():
            if isinstance(c, Fraction) and isinstance(p, int) and isinstance(q, int):
                term = c * Fraction(p) ** i * Fraction(q) ** j
            else:
                term = c * p**i * q**j
            acc = acc + term
        return acc

    def substitute_p_plus_q(self, which: str) -> "LaurentPoly":
        """Substitute p -> p+q (which='p') or q -> p+q (which='q') by binomial
        expansion.  Requires the substituted exponent to be >= 0 everywhere;
        identity checks multiply through by pq(p+q) first.
        """
        out = LaurentPoly.zero()
        for (i, j), c in self.coeffs.items():
            e = i if which == "p" else j
            if e < 0:
                raise ValueError(
                    "cannot expand a negative power of (p+q); clear denominators first"
                )
            # (p+q)^e distributed over the remaining variable's exponent
            terms = {}
            for r in range(e + 1):
                b = math.comb(e, r)
                bc = c * b if isinstance(c, complex) else Fraction(b) * c
                if which == "p":
                    terms[(r, j + e - r)] = terms.get((r, j + e - r), 0) + bc
                else:
                    terms[(i + r, e - r)] = terms.get((i + r, e - r), 0) + bc
            out = out + LaurentPoly(terms)
        return out

    def max_abs_coeff(self) -> float:
        if not self.coeffs:
            return 0.0
        return max(abs(complex(c)) for c in self.coeffs.values())

    def to_json_obj(self) -> list:
        items = []
        for (i, j) in sorted(self.coeffs):
            c = self.coeffs[(i, j)]
            if isinstance(c, Fraction):
                items.append({"i": i, "j": j, "coeff": rational_str(c)})
            else:
                c = complex(c)
                items.append({"i": i, "j": j, "coeff": {"re": c.real, "im": c.imag}})
        return items

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, items: Iterable[dict]) -> "LaurentPoly":
        out: Dict[ExpPair, Coeff] = {}
        for it in items:
            c = it["coeff"]
            coeff: Coeff
            if isinstance(c, str):
                coeff = Fraction(c)
            else:
                coeff = complex(c["re"], c["im"])
            out[(it["i"], it["j"])] = coeff
        return cls(out)

    @classmethod
    def from_json(cls, s: str) -> "LaurentPoly":
        return cls.from_json_obj(json.loads(s))


# ---------------------------------------------------------------------------
# The reciprocity polynomial g_w and the exact reciprocity verifier
# ---------------------------------------------------------------------------


def g_poly(w: int) -> LaurentPoly:
    """The degree-w odd reciprocity Laurent polynomial g_w(p, q).

    g_w(p,q) = -(1/pq) [ sum_{j=0}^{w/2+1} w! B_{2j} B_{w+2-2j}
                         / (2 (2j)! (w+2-2j)!) p^{2j} q^{w+2-2j}
                         + B_{w+2} / (2(w+2)) ].
    """
    if w < 2 or w % 2 != 0:
        raise ValueError("w must be an even integer >= 2")
    coeffs: Dict[ExpPair, Coeff] = {}
    wfact = math.factorial(w)
    for j in range(w // 2 + 2):
        c = -Fraction(wfact) * bernoulli_number(2 * j) * bernoulli_number(w + 2 - 2 * j)
        c /= 2 * math.factorial(2 * j) * math.factorial(w + 2 - 2 * j)
        if c != 0:
            coeffs[(2 * j - 1, w + 1 - 2 * j)] = coeffs.get((2 * j - 1, w + 1 - 2 * j), Fraction(0)) + c
    coeffs[(-1, -1)] = -bernoulli_number(w + 2) / (2 * (w + 2))
    return LaurentPoly(coeffs)


def verify_apostol_reciprocity(w: int, pair: CoprimePair) -> Fraction:
    """Residual of the exact reciprocity law

        p^w s_{w+1}(q,p) + q^w s_{w+1}(p,q) + 2(w+1) g_w(p,q);

    the contract is that this is exactly 0 for (p, q) in U and even w >= 2.
    """
    if w < 2 or w % 2 != 0:
        raise ValueError("w must be an even integer >= 2")
    pair.require_u()
    p, q = pair.p, pair.q
    lhs = Fraction(p) ** w * apostol_sum(w + 1, q, p) + Fraction(q) ** w * apostol_sum(w + 1, p, q)
    return lhs + 2 * (w + 1) * g_poly(w).evaluate(p, q)


def dim_data(w: int) -> Tuple[int, int]:
    """(d_w, dim M_{w+2}): cusp-form dimension bracket formula and d_w + 1."""
    if w < 2 or w % 2 != 0:
        raise ValueError("w must be an even integer >= 2")
    d = (w + 2) // 12 - 1 if w % 12 == 0 else (w + 2) // 12
    return d, d + 1
