"""Eisenstein period data, the one-dimensional span identity, the basis-rank
demonstration, and the three-term / coefficient identities for the weighted
reciprocity polynomials."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .exact import CoprimePair, LaurentPoly, bernoulli_number, dim_data, g_poly
from .qseries import (
    DEFAULT_POLICY,
    ComplexVal,
    SeriesPolicy,
    TauPoint,
    eisenstein,
    eisenstein_normalized,
    eisenstein_tau_derivative,
    zeta_odd,
)
from .symbols import reciprocity_rhs

TWO_PI_I = 2j * math.pi

__all__ = [
    "CoefficientVector",
    "PeriodData",
    "c_coefficients",
    "verify_eq73",
    "coefficient_scale",
    "t_weighted",
    "verify_three_term",
    "eisenstein_period_data",
    "reciprocity_laurent",
    "verify_eq64_onedim",
    "basis_rank",
    "random_taus",
]


@dataclass(frozen=True)
class CoefficientVector:
    """The n+2 coefficients c_0..c_{n+1} of the weighted reciprocity
    polynomial T^-_{2n}(p,q;tau) = sum_j c_j p^{2j} q^{2n+2-2j}."""

    n: int
    c: Tuple[ComplexVal, ...]

    def __post_init__(self):
        if len(self.c) != self.n + 2:
            raise ValueError("need n+2 coefficients")


@dataclass(frozen=True)
class PeriodData:
    """Eisenstein period data for weight 2n+2: the period r_{2n}(G_{2n+2}),
    the Petersson norm (G_{2n+2}, G_{2n+2}) and the odd period polynomial
    r^-(G_{2n+2}) with exact rational coefficients."""

    n: int
    r2n: complex
    petersson: float
    odd_period: LaurentPoly


def c_coefficients(n: int, tau: TauPoint,
                   policy: SeriesPolicy = DEFAULT_POLICY) -> CoefficientVector:
    """The three-case coefficient table:

        c_j = E_{2n+2}                                   j = 0, n+1
        c_j = -E_{2j} E_{2n+2-2j}
              - (delta_{j,1} + delta_{j,n}) (pi i / n) dE_{2n}/dtau    1 <= j <= n

    For n = 1 the two Kronecker deltas coincide at j = 1, doubling the
    derivative term; that doubling is what the degenerate case requires.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    e_top = eisenstein(n + 1, tau, policy)
    de = eisenstein_tau_derivative(n, tau, policy)
    cs: List[ComplexVal] = []
    for j in range(n + 2):
        if j == 0 or j == n + 1:
            cs.append(e_top)
            continue
        cj = -(eisenstein(j, tau, policy) * eisenstein(n + 1 - j, tau, policy))
        delta = (1 if j == 1 else 0) + (1 if j == n else 0)
        if delta:
            cj = cj - de * (delta * 1j * math.pi / n)
        cs.append(cj)
    return CoefficientVector(n, tuple(cs))


def verify_eq73(n: int, k: int, tau: TauPoint,
                policy: SeriesPolicy = DEFAULT_POLICY) -> ComplexVal:
    """Residual of the binomial coefficient identity

        sum_{i: 2i >= k-1} C(2i, k-1) c_i + sum_{i: 2i <= k} C(2n+2-2i, 2n+2-k) c_i
            = c_{(k-1)/2} (k odd) or c_{k/2} (k even).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 1 <= k <= 2 * n + 2:
        raise ValueError(f"k must be in [1, {2*n+2}], got {k}")
    cv = c_coefficients(n, tau, policy)
    lhs = ComplexVal(0j, 0.0)
    for i in range(n + 2):
        if 2 * i >= k - 1:
            lhs = lhs + cv.c[i] * float(math.comb(2 * i, k - 1))
        if 2 * i <= k:
            lhs = lhs + cv.c[i] * float(math.comb(2 * n + 2 - 2 * i, 2 * n + 2 - k))
    rhs = cv.c[(k - 1) // 2] if k % 2 == 1 else cv.c[k // 2]
    return lhs - rhs


def coefficient_scale(n: int, tau: TauPoint,
                      policy: SeriesPolicy = DEFAULT_POLICY) -> float:
    """Magnitude of the largest quantity entering the c_j table: the
    Eisenstein products, E_{2n+2} itself and the scaled tau-derivative.

    Used to normalize residuals.  The coefficients themselves can all vanish
    simultaneously (at special points where every form of weight 2n+2 is
    zero), so max |c_j| is not a usable scale.
    """
    scale = abs(eisenstein(n + 1, tau, policy).value)
    scale = max(scale, math.pi / n * abs(eisenstein_tau_derivative(n, tau, policy).value))
    for j in range(1, n + 1):
        scale = max(scale, abs(eisenstein(j, tau, policy).value
                               * eisenstein(n + 1 - j, tau, policy).value))
    return scale


def t_weighted(n: int, pair: CoprimePair, tau: TauPoint,
               policy: SeriesPolicy = DEFAULT_POLICY) -> ComplexVal:
    """T^-_{2n}(p,q;tau) = (2 pi i)^2 pq [ R^-_{2n}(p,q;tau)
    - (2n+1) E_{2n+2} / ((2 pi i)^2 pq) ]."""
    p, q = pair.p, pair.q
    r = reciprocity_rhs(n, pair, tau, policy)
    e_top = eisenstein(n + 1, tau, policy)
    s = r - e_top * ((2 * n + 1) / ((TWO_PI_I**2).real * p * q))
    return s * ((TWO_PI_I**2).real * p * q)


def verify_three_term(n: int, pair: CoprimePair, tau: TauPoint,
                      policy: SeriesPolicy = DEFAULT_POLICY) -> ComplexVal:
    """Residual of p T(p+q,q) + q T(p,p+q) - (p+q) T(p,q)."""
    pair.require_u()
    p, q = pair.p, pair.q
    t1 = t_weighted(n, CoprimePair(p + q, q), tau, policy)
    t2 = t_weighted(n, CoprimePair(p, p + q), tau, policy)
    t3 = t_weighted(n, pair, tau, policy)
    return t1 * float(p) + t2 * float(q) - t3 * float(p + q)


def eisenstein_period_data(n: int, zeta_tol: float = 1e-12) -> PeriodData:
    """Period data of the normalized weight-(2n+2) Eisenstein series:

        r_{2n}   = (2n)! zeta(2n+1) / (2 (2 pi i)^{2n+1}),
        (G, G)   = ((2n)!/(4 pi)^{2n+1}) (B_{2n+2}/(2(2n+2))) zeta(2n+1),
        r^-(G)   = the exact rational odd period Laurent polynomial,

    which coincides with the degree-2n reciprocity polynomial g_{2n}.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    z = zeta_odd(n, zeta_tol)
    r2n = math.factorial(2 * n) * z / (2 * TWO_PI_I ** (2 * n + 1))
    pet = (
        math.factorial(2 * n) / (4 * math.pi) ** (2 * n + 1)
        * float(bernoulli_number(2 * n + 2)) / (2 * (2 * n + 2))
        * z
    )
    return PeriodData(n, r2n, pet, g_poly(2 * n))


def reciprocity_laurent(w: int, tau: TauPoint,
                        policy: SeriesPolicy = DEFAULT_POLICY) -> Tuple[LaurentPoly, float]:
    """R^-_w(.,.;tau) as a sparse Laurent polynomial in (p, q) with numeric
    Eisenstein coefficients; returns (poly, coefficient error bound)."""
    if w < 2 or w % 2 != 0:
        raise ValueError("w must be an even integer >= 2")
    n = w // 2
    inv = 1.0 / (TWO_PI_I**2).real
    e_top = eisenstein(n + 1, tau, policy)
    de = eisenstein_tau_derivative(n, tau, policy)
    coeffs = {}
    err = e_top.err + de.err

    def bump(e, c):
        coeffs[e] = coeffs.get(e, 0j) + c

    for j in range(1, n + 1):
        ej = eisenstein(j, tau, policy)
        ek = eisenstein(n + 1 - j, tau, policy)
        prod = ej * ek
        bump((2 * j - 1, 2 * n + 1 - 2 * j), -inv * prod.value)
        err = max(err, prod.err)
    bump((2 * n + 1, -1), inv * e_top.value)
    bump((-1, 2 * n + 1), inv * e_top.value)
    bump((-1, -1), inv * (2 * n + 1) * e_top.value)
    dcoef = -de.value / (4j * math.pi * n)
    bump((2 * n - 1, 1), dcoef)
    bump((1, 2 * n - 1), dcoef)
    return LaurentPoly(coeffs), err


def verify_eq64_onedim(w: int, tau: TauPoint,
                       policy: SeriesPolicy = DEFAULT_POLICY,
                       zeta_tol: float = 1e-12) -> LaurentPoly:
    """Coefficient residual of the span identity in the one-dimensional case:

        R^-_w(p,q;tau) + (2 i pi^w / w!) (r_w(G_{w+2}) / (G,G))
                         r^-(G_{w+2})(p,q) G_{w+2}(tau)

    for weights with no cusp forms (w in {2, 4, 6, 8, 12})."""
    d, _ = dim_data(w)
    if d != 0:
        raise ValueError(f"w = {w} has d_w = {d} > 0; the one-dimensional form needs d_w = 0")
    n = w // 2
    lhs, _ = reciprocity_laurent(w, tau, policy)
    pd = eisenstein_period_data(n, zeta_tol)
    g_val = eisenstein_normalized(n + 1, tau, policy)
    scalar = -(2j * math.pi**w / math.factorial(w)) * pd.r2n / pd.petersson * g_val.value
    rhs = LaurentPoly({e: scalar * complex(c) for e, c in pd.odd_period.coeffs.items()})
    return lhs - rhs


def random_taus(count: int, seed: int) -> List[TauPoint]:
    """Reproducible pseudorandom sample points: Re in [-0.4, 0.4],
    Im in [0.8, 1.5]."""
    rng = random.Random(seed)
    return [
        TauPoint(complex(rng.uniform(-0.4, 0.4), rng.uniform(0.8, 1.5)))
        for _ in range(count)
    ]


def basis_rank(w: int, taus: List[TauPoint],
               policy: SeriesPolicy = DEFAULT_POLICY,
               threshold: float = 1e-8) -> int:
    """Numerical rank of the reciprocity polynomials {R^-_w(.,.;tau_i)} over
    their monomial support (singular values above threshold x largest)."""
    polys = [reciprocity_laurent(w, t, policy)[0] for t in taus]
    support = sorted({e for poly in polys for e in poly.coeffs})
    mat = np.array(
        [[complex(poly.coeffs.get(e, 0j)) for e in support] for poly in polys]
    )
    sv = np.linalg.svd(mat, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > threshold * sv[0]))
