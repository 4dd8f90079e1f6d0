"""Elliptic Apostol-Dedekind sums, their reciprocity functions and generating
functions, Machide's elliptic Dedekind-Rademacher sums, and the residual
verifiers built on them.

Double sums over (lambda, mu) run in row-major order with compensated
accumulation so repeated runs are bit-identical.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from .exact import CoprimePair
from .qseries import (
    DEFAULT_POLICY,
    ComplexVal,
    SeriesPolicy,
    TauPoint,
    _Kahan,
    eisenstein,
    eisenstein_tau_derivative,
    elliptic_bernoulli,
    sigma_log_tau_derivative,
    weierstrass_p_deriv,
    weierstrass_zeta,
    weierstrass_zeta_deriv,
)

TWO_PI_I = 2j * math.pi

__all__ = [
    "Route",
    "EllipticSumResult",
    "MachideSpec",
    "elliptic_apostol_sum",
    "reciprocity_rhs",
    "generating_D",
    "generating_R",
    "machide_sum",
    "machide_reciprocity_residuals",
    "proposition31_residual",
    "proposition31_constant_closed_form",
    "expected_constant",
]


class Route(Enum):
    ZETA_DERIVATIVE = "zeta_derivative"
    BERNOULLI_PRODUCT = "bernoulli_product"


@dataclass(frozen=True)
class EllipticSumResult:
    value: ComplexVal
    route: Route
    p: int
    q: int
    n: int
    tau: TauPoint


def _sum_complexvals(terms) -> ComplexVal:
    acc = _Kahan()
    err = 0.0
    mag = 0.0
    for t in terms:
        acc.add(t.value)
        err += t.err
        mag += abs(t.value)
    return ComplexVal(acc.value, err + 2.0**-52 * mag)


def _zeta_bracket(z: complex, mu_over_p: float, e2: ComplexVal,
                  tau: TauPoint, policy: SeriesPolicy) -> ComplexVal:
    """zeta(z) - E_2 z + 2 pi i * (mu/p); the recurring odd-symbol factor."""
    return weierstrass_zeta(z, tau, policy) - e2 * z + ComplexVal(TWO_PI_I * mu_over_p, 0.0)


def elliptic_apostol_sum(n: int, pair: CoprimePair, tau: TauPoint,
                         route: Route = Route.ZETA_DERIVATIVE,
                         policy: SeriesPolicy = DEFAULT_POLICY) -> EllipticSumResult:
    """The elliptic Apostol-Dedekind sum D^-_{2n}(p, q; tau).

    Route ZETA_DERIVATIVE is the defining double sum over p-division points,

        1/((2 pi i)^2 p (2n)!) sum_{(l,m) != 0} zeta^{(2n)}((l+m tau)/p)
            * [zeta(q(l+m tau)/p) - E_2 q(l+m tau)/p + 2 pi i q m / p].

    Route BERNOULLI_PRODUCT rewrites both factors through the Kronecker
    lattice-sum correspondence as elliptic Bernoulli functions.  The
    zeta-derivative factor is a plain shifted lattice sum while the Bernoulli
    functions are character-twisted sums; converting one to the other by a
    finite Fourier transform over the p-division points turns the weight-1
    argument into q^{-1} mod p and rescales:

        -(2 pi i)^{2n} p^{2n-1} / (2n+1)! sum_{(l,m) != 0}
            B_{2n+1}(-l/p, m/p; tau) B_1(-q* l/p, q* m/p; tau),

    with q* q = 1 (mod p).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    p, q = pair.p, pair.q
    t = tau.tau
    terms = []
    if route is Route.ZETA_DERIVATIVE:
        e2 = eisenstein(1, tau, policy)
        for lam in range(p):
            for mu in range(p):
                if lam == 0 and mu == 0:
                    continue
                z = (lam + mu * t) / p
                zd = weierstrass_zeta_deriv(2 * n, z, tau, policy)
                terms.append(zd * _zeta_bracket(q * z, q * mu / p, e2, tau, policy))
        total = _sum_complexvals(terms)
        val = total * (1.0 / ((TWO_PI_I**2).real * p * math.factorial(2 * n)))
    else:
        q_inv = pow(q % p, -1, p) if p > 1 else 0
        for lam in range(p):
            for mu in range(p):
                if lam == 0 and mu == 0:
                    continue
                b_hi = elliptic_bernoulli(2 * n + 1, -lam / p, mu / p, tau, policy)
                b_lo = elliptic_bernoulli(1, -q_inv * lam / p, q_inv * mu / p,
                                          tau, policy)
                terms.append(b_hi * b_lo)
        total = _sum_complexvals(terms)
        val = total * (-(TWO_PI_I ** (2 * n)) * p ** (2 * n - 1)
                       / math.factorial(2 * n + 1))
    return EllipticSumResult(val, route, p, q, n, tau)


def reciprocity_rhs(n: int, pair: CoprimePair, tau: TauPoint,
                    policy: SeriesPolicy = DEFAULT_POLICY) -> ComplexVal:
    """The reciprocity function R^-_{2n}(p, q; tau) in closed form:

        -1/((2 pi i)^2 pq) [ sum_{j=1}^{n} E_{2j} E_{2n+2-2j} p^{2j} q^{2n+2-2j}
                             - E_{2n+2} (p^{2n+2} + q^{2n+2})
                             - (2n+1) E_{2n+2} ]
        - 1/(4 pi i n) dE_{2n}/dtau (p^{2n-1} q + p q^{2n-1}).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    pair.require_u()
    p, q = pair.p, pair.q
    e_top = eisenstein(n + 1, tau, policy)
    bracket = ComplexVal(0j, 0.0)
    for j in range(1, n + 1):
        bracket = bracket + eisenstein(j, tau, policy) * eisenstein(n + 1 - j, tau, policy) * float(
            p ** (2 * j) * q ** (2 * n + 2 - 2 * j)
        )
    bracket = bracket - e_top * float(p ** (2 * n + 2) + q ** (2 * n + 2))
    bracket = bracket - e_top * float(2 * n + 1)
    de = eisenstein_tau_derivative(n, tau, policy)
    out = bracket * (-1.0 / ((TWO_PI_I**2).real * p * q))
    out = out + de * (-(p ** (2 * n - 1) * q + p * q ** (2 * n - 1)) / (4j * math.pi * n))
    return out


def generating_D(pair: CoprimePair, tau: TauPoint, x: float,
                 policy: SeriesPolicy = DEFAULT_POLICY) -> ComplexVal:
    """Generating function D^-(p, q; tau; x) of the D^-_{2n}: the double sum
    of two odd-symbol brackets, the first shifted by x."""
    p, q = pair.p, pair.q
    if abs(x) >= 1 / (2 * p):
        raise ValueError(f"|x| must be < 1/(2p) = {1/(2*p)}, got {x}")
    t = tau.tau
    e2 = eisenstein(1, tau, policy)
    terms = []
    for lam in range(p):
        for mu in range(p):
            if lam == 0 and mu == 0:
                continue
            z = (lam + mu * t) / p
            terms.append(
                _zeta_bracket(z - x, mu / p, e2, tau, policy)
                * _zeta_bracket(q * z, q * mu / p, e2, tau, policy)
            )
    total = _sum_complexvals(terms)
    return total * (1.0 / ((TWO_PI_I**2).real * p))


def generating_R(pair: CoprimePair, tau: TauPoint, x: float,
                 policy: SeriesPolicy = DEFAULT_POLICY) -> ComplexVal:
    """Generating function R^-(p, q; tau; x): zeta-product block, two
    sigma-log blocks and the pe block."""
    pair.require_u()
    p, q = pair.p, pair.q
    if not 0 < abs(x) < 1 / (2 * max(p, q)):
        raise ValueError(f"need 0 < |x| < 1/(2 max(p,q)), got {x}")
    e2 = eisenstein(1, tau, policy)
    de2 = eisenstein_tau_derivative(1, tau, policy)

    def zblock(c: int) -> ComplexVal:
        return weierstrass_zeta(c * x, tau, policy) - e2 * (c * x)

    def sblock(c: int) -> ComplexVal:
        return (
            sigma_log_tau_derivative(c * x, tau, policy) * 2.0
            - de2 * (c * x) ** 2
            - e2 * (1.0 / (1j * math.pi))
        )

    out = zblock(p) * zblock(q) * (-1.0 / (TWO_PI_I**2).real)
    out = out + sblock(p) * (q / (4j * math.pi * p))
    out = out + sblock(q) * (p / (4j * math.pi * q))
    out = out + (weierstrass_p_deriv(0, x, tau, policy) + e2) * (1.0 / ((TWO_PI_I**2).real * p * q))
    return out


def expected_constant(pair: CoprimePair, tau: TauPoint,
                      policy: SeriesPolicy = DEFAULT_POLICY) -> ComplexVal:
    """C(tau) = -E_2(tau) / ((2 pi i)^2 p q), the reciprocity defect constant."""
    e2 = eisenstein(1, tau, policy)
    return e2 * (-1.0 / ((TWO_PI_I**2).real * pair.p * pair.q))


# ---------------------------------------------------------------------------
# Machide's elliptic Dedekind-Rademacher sums
# ---------------------------------------------------------------------------

IntPair = Tuple[int, int]
RealPair = Tuple[float, float]

_NONINT_GAP = 1e-9


def _in_integer_multiples(v: float, g: int) -> bool:
    return abs(v / g - round(v / g)) * g < _NONINT_GAP


@dataclass(frozen=True)
class MachideSpec:
    """Parameter block for the elliptic Dedekind-Rademacher sum S^tau_{m,n}.

    Vectors are (primed, unprimed) pairs: vec_a = (a', a) etc.  The
    non-degeneracy conditions a'z' - c'x' not in gcd(a',c') Z and
    b'z' - c'y' not in gcd(b',c') Z are enforced with an absolute gap of
    1e-9 from the nearest admissible multiple.
    """

    vec_a: IntPair
    vec_b: IntPair
    vec_c: IntPair
    vec_x: RealPair
    vec_y: RealPair
    vec_z: RealPair
    m: int
    n: int

    def __post_init__(self):
        for name, (u, v) in (("a", self.vec_a), ("b", self.vec_b), ("c", self.vec_c)):
            if u < 1 or v < 1:
                raise ValueError(f"vec_{name} components must be positive integers")
        if self.m < 0 or self.n < 0:
            raise ValueError("m, n must be >= 0")
        ap, _ = self.vec_a
        bp, _ = self.vec_b
        cp, _ = self.vec_c
        xp, _ = self.vec_x
        yp, _ = self.vec_y
        zp, _ = self.vec_z
        if _in_integer_multiples(ap * zp - cp * xp, math.gcd(ap, cp)):
            raise ValueError("degenerate spec: a'z' - c'x' in gcd(a',c') Z (or within 1e-9)")
        if _in_integer_multiples(bp * zp - cp * yp, math.gcd(bp, cp)):
            raise ValueError("degenerate spec: b'z' - c'y' in gcd(b',c') Z (or within 1e-9)")


def machide_sum(spec: MachideSpec, tau: TauPoint,
                policy: SeriesPolicy = DEFAULT_POLICY) -> ComplexVal:
    """S^tau_{m,n}: the (1/c') double residue-class sum of two elliptic
    Bernoulli factors at the rescaled parameters (a'/a) tau and (b'/b) tau."""
    ap, a = spec.vec_a
    bp, b = spec.vec_b
    cp, c = spec.vec_c
    xp, x = spec.vec_x
    yp, y = spec.vec_y
    zp, z = spec.vec_z
    tau_a = TauPoint(ap / a * tau.tau)
    tau_b = TauPoint(bp / b * tau.tau)
    terms = []
    for j in range(c):
        for jp in range(cp):
            f1 = elliptic_bernoulli(
                spec.m, ap * (jp + zp) / cp - xp, a * (j + z) / c - x, tau_a, policy
            )
            f2 = elliptic_bernoulli(
                spec.n, bp * (jp + zp) / cp - yp, b * (j + z) / c - y, tau_b, policy
            )
            terms.append(f1 * f2)
    return _sum_complexvals(terms) * (1.0 / cp)


def machide_reciprocity_residuals(pair: CoprimePair, s: float, t: float,
                                  tau: TauPoint,
                                  policy: SeriesPolicy = DEFAULT_POLICY,
                                  ) -> Tuple[ComplexVal, ComplexVal, ComplexVal]:
    """The three vanishing combinations of Machide sums at the substitution

        vec_a = (1,1), vec_b = (p,p), vec_c = (q,q),
        vec_x = (s,0), vec_y = (pt,0), vec_z = (-qt,0),

    over the cyclic arrangements A1 = (a,b,c; x,y,z), A2 = (b,c,a; y,z,x),
    A3 = (c,a,b; z,x,y):

        r1 = -(c/2b) S_{2,0}(A2) + (c/2a) S_{0,2}(A3)
        r2 =  (b/2a) S_{2,0}(A1) - (b/2c) S_{0,2}(A2)
        r3 =  (a/2b) S_{0,2}(A1) - S_{1,1}(A1) + (b/2a) S_{2,0}(A1)
              - S_{1,1}(A2) - (c/2b) S_{2,0}(A2)
              + (c/a) S_{0,2}(A3) - S_{1,1}(A3)

    with a = 1, b = p, c = q.  All three are zero in exact arithmetic.
    """
    pair.require_u()
    p, q = pair.p, pair.q
    a, b, c = 1, p, q
    va, vb, vc = (1, 1), (p, p), (q, q)
    vx, vy, vz = (s, 0.0), (p * t, 0.0), (-q * t, 0.0)
    arr1 = (va, vb, vc, vx, vy, vz)
    arr2 = (vb, vc, va, vy, vz, vx)
    arr3 = (vc, va, vb, vz, vx, vy)

    def S(arr, m, n):
        spec = MachideSpec(arr[0], arr[1], arr[2], arr[3], arr[4], arr[5], m, n)
        return machide_sum(spec, tau, policy)

    r1 = S(arr2, 2, 0) * (-c / (2 * b)) + S(arr3, 0, 2) * (c / (2 * a))
    r2 = S(arr1, 2, 0) * (b / (2 * a)) - S(arr2, 0, 2) * (b / (2 * c))
    r3 = (S(arr1, 0, 2) * (a / (2 * b)) - S(arr1, 1, 1)
          + S(arr1, 2, 0) * (b / (2 * a))
          - S(arr2, 1, 1) - S(arr2, 2, 0) * (c / (2 * b))
          + S(arr3, 0, 2) * (c / a) - S(arr3, 1, 1))
    return r1, r2, r3


# ---------------------------------------------------------------------------
# The B_1-level reciprocity residual
# ---------------------------------------------------------------------------


def _b1_division_sum(p: int, q: int, s: float, tau: TauPoint,
                     policy: SeriesPolicy) -> ComplexVal:
    """(1/p) sum_{(l,m) != 0}^{p-1} B_1(l/p - s, m/p) B_1(q l/p, q m/p)."""
    terms = []
    for lam in range(p):
        for mu in range(p):
            if lam == 0 and mu == 0:
                continue
            terms.append(
                elliptic_bernoulli(1, lam / p - s, mu / p, tau, policy)
                * elliptic_bernoulli(1, q * lam / p, q * mu / p, tau, policy)
            )
    return _sum_complexvals(terms) * (1.0 / p)


def proposition31_residual(pair: CoprimePair, s: float, tau: TauPoint,
                           policy: SeriesPolicy = DEFAULT_POLICY) -> ComplexVal:
    """Left side of the B_1-level reciprocity identity minus its four
    s-dependent right-side terms.  The contract is that the result does not
    depend on s and equals -E_2(tau)/((2 pi i)^2 pq)."""
    pair.require_u()
    p, q = pair.p, pair.q
    if not 0 < abs(s) < 1 / (2 * max(p, q)):
        raise ValueError(f"need 0 < |s| < 1/(2 max(p,q)), got {s}")
    lhs = _b1_division_sum(p, q, s, tau, policy) + _b1_division_sum(q, p, s, tau, policy)
    e2 = eisenstein(1, tau, policy)
    rhs = -(elliptic_bernoulli(1, p * s, 0.0, tau, policy)
            * elliptic_bernoulli(1, q * s, 0.0, tau, policy))
    rhs = rhs + elliptic_bernoulli(2, p * s, 0.0, tau, policy) * (q / (2 * p))
    rhs = rhs + elliptic_bernoulli(2, q * s, 0.0, tau, policy) * (p / (2 * q))
    # dB_1(s,0)/ds = (1/2 pi i)[pe(s) + E_2]
    db1 = (weierstrass_p_deriv(0, s, tau, policy) + e2) * (1.0 / TWO_PI_I)
    rhs = rhs + db1 * (1.0 / (TWO_PI_I * p * q))
    return lhs - rhs


def proposition31_constant_closed_form(pair: CoprimePair, tau: TauPoint,
                                       policy: SeriesPolicy = DEFAULT_POLICY) -> ComplexVal:
    """C(tau) via the residue-class closed form (1/2pq) sum B_2(p l/q, p m/q).

    The (0,0) term is the regular value B_2(0, 0; tau) =
    -(1/ pi i)(1/(2 pi i)) E_2(tau), the constant term of the tau-derivative
    expansion of B_2(x, 0; tau) at x = 0.
    """
    pair.require_u()
    p, q = pair.p, pair.q
    e2 = eisenstein(1, tau, policy)
    b2_origin = e2 * (-1.0 / (1j * math.pi * TWO_PI_I))
    terms = [b2_origin]
    for lam in range(q):
        for mu in range(q):
            if lam == 0 and mu == 0:
                continue
            terms.append(elliptic_bernoulli(2, p * lam / q, p * mu / q, tau, policy))
    return _sum_complexvals(terms) * (1.0 / (2 * p * q))
