"""q-series engine: Eisenstein series, Weierstrass functions, elliptic
Bernoulli functions and brute-force lattice-sum oracles.

All evaluation is binary64 complex with explicit truncation-error tracking
(`ComplexVal.err` bounds the discarded series tails via geometric estimates).
Summation is in a fixed ascending order with compensated (Kahan) accumulation
so repeated runs are bit-identical.
"""

from __future__ import annotations

import cmath
import math
import threading
import warnings
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from .exact import bernoulli_number

TWO_PI_I = 2j * math.pi

__all__ = [
    "TauPoint",
    "ComplexVal",
    "SeriesPolicy",
    "LatticeCutoff",
    "SlowNomeWarning",
    "parse_tau",
    "eisenstein",
    "eisenstein_normalized",
    "eisenstein_tau_derivative",
    "elliptic_bernoulli",
    "weierstrass_zeta",
    "weierstrass_p_deriv",
    "weierstrass_zeta_deriv",
    "sigma_log_tau_derivative",
    "kronecker_direct",
    "zeta_odd",
]


class SlowNomeWarning(UserWarning):
    """Im(tau) is small enough that q-series convergence is slow."""


class LatticePointError(ValueError):
    """Evaluation requested at a point of the period lattice."""


@dataclass(frozen=True)
class TauPoint:
    """A point tau in the upper half-plane, with its nome q = e^{2 pi i tau}."""

    tau: complex

    def __post_init__(self):
        if not self.tau.imag > 0:
            raise ValueError(f"tau must satisfy Im(tau) > 0, got {self.tau}")

    @property
    def nome(self) -> complex:
        return cmath.exp(TWO_PI_I * self.tau)

    def __str__(self) -> str:
        return f"{self.tau.real}+{self.tau.imag}i"


def parse_tau(s: str) -> TauPoint:
    """Parse "a+bi" (decimal a, b) into a TauPoint."""
    t = s.strip().replace(" ", "").replace("I", "i")
    if not t.endswith("i"):
        raise ValueError(f"tau must be of the form 'a+bi', got {s!r}")
    try:
        z = complex(t.replace("i", "j"))
    except ValueError as e:
        raise ValueError(f"cannot parse tau {s!r}") from e
    return TauPoint(z)


_EPS = 2.0**-52


@dataclass(frozen=True)
class ComplexVal:
    """A complex value with an a-posteriori error bound.

    err bounds the truncated series tails plus a first-order rounding model,
    so that subtracting two large nearly-equal values reports the expected
    loss of significance."""

    value: complex
    err: float = 0.0

    def __post_init__(self):
        if self.err < 0:
            raise ValueError("err must be >= 0")

    def __add__(self, other):
        if isinstance(other, ComplexVal):
            return ComplexVal(
                self.value + other.value,
                self.err + other.err + _EPS * (abs(self.value) + abs(other.value)),
            )
        return ComplexVal(self.value + other, self.err + _EPS * abs(other))

    __radd__ = __add__

    def __neg__(self):
        return ComplexVal(-self.value, self.err)

    def __sub__(self, other):
        return self + (-other if isinstance(other, ComplexVal) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ComplexVal):
            return ComplexVal(
                self.value * other.value,
                abs(self.value) * other.err + abs(other.value) * self.err
                + self.err * other.err + _EPS * abs(self.value) * abs(other.value),
            )
        return ComplexVal(self.value * other, (self.err + _EPS * abs(self.value)) * abs(other))

    __rmul__ = __mul__

    def to_json_obj(self) -> dict:
        return {"re": self.value.real, "im": self.value.imag, "err": self.err}


@dataclass(frozen=True)
class SeriesPolicy:
    """Truncation contract shared by every q-series and lattice sum."""

    tol: float = 1e-12
    max_terms: int = 10**6
    min_im_tau: float = 0.05

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be > 0")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")


DEFAULT_POLICY = SeriesPolicy()


@dataclass(frozen=True)
class LatticeCutoff:
    """Truncation radius for direct lattice sums: max(|m|, |n|) <= radius."""

    radius: int

    def __post_init__(self):
        if self.radius < 1:
            raise ValueError("radius must be >= 1")


class NonConvergenceError(RuntimeError):
    """Term cap reached before the tolerance; carries the partial value."""

    def __init__(self, message: str, partial: ComplexVal):
        super().__init__(message)
        self.partial = partial


def _check_tau(tau: TauPoint, policy: SeriesPolicy) -> int:
    """Reject or warn on small Im(tau); returns the effective term cap."""
    im = tau.tau.imag
    if im < policy.min_im_tau:
        raise ValueError(
            f"Im(tau) = {im} below the accepted bound {policy.min_im_tau}"
        )
    if im < 0.11:
        warnings.warn(
            f"Im(tau) = {im} gives |q| = {abs(tau.nome):.3f}; convergence is slow",
            SlowNomeWarning,
            stacklevel=3,
        )
        return policy.max_terms * 10
    return policy.max_terms


class _Kahan:
    """Compensated complex accumulator (fixed-order, bit-reproducible)."""

    __slots__ = ("s", "c")

    def __init__(self):
        self.s = 0j
        self.c = 0j

    def add(self, x: complex):
        y = x - self.c
        t = self.s + y
        self.c = (t - self.s) - y
        self.s = t

    @property
    def value(self) -> complex:
        return self.s


# ---------------------------------------------------------------------------
# Eisenstein series via the divisor-sum q-expansion
# ---------------------------------------------------------------------------

_sigma_cache: dict = {}
_sigma_lock = threading.Lock()
_divisors_cache: List[List[int]] = [[], [1]]


def _divisor_power_sum(ell: int, k: int) -> float:
    """sigma_ell(k) = sum_{d | k} d^ell, cached per exponent."""
    key = ell
    with _sigma_lock:
        table = _sigma_cache.setdefault(key, {})
        if k not in table:
            while len(_divisors_cache) <= k:
                m = len(_divisors_cache)
                _divisors_cache.append([d for d in range(1, m + 1) if m % d == 0])
            table[k] = float(sum(d**ell for d in _divisors_cache[k]))
        return table[k]


def _eisenstein_q_sum(n: int, tau: TauPoint, policy: SeriesPolicy,
                      tau_deriv: bool) -> Tuple[complex, float]:
    """sum_k sigma_{2n-1}(k) q^k, optionally with the termwise 2 pi i k factor.

    Returns (sum, tail bound)."""
    cap = _check_tau(tau, policy)
    q = tau.nome
    aq = abs(q)
    acc = _Kahan()
    qk = 1.0 + 0j
    small_streak = 0
    last = 0.0
    k = 0
    while k < cap:
        k += 1
        qk *= q
        term = _divisor_power_sum(2 * n - 1, k) * qk
        if tau_deriv:
            term *= TWO_PI_I * k
        acc.add(term)
        last = abs(term)
        scale = max(abs(acc.value), 1e-300)
        if last <= policy.tol * scale or last == 0.0:
            small_streak += 1
            if small_streak >= 3:
                break
        else:
            small_streak = 0
    else:
        raise NonConvergenceError(
            f"Eisenstein q-series (n={n}) hit max_terms={cap}",
            ComplexVal(acc.value, float("inf")),
        )
    # Ratio of consecutive terms is <= ((k+1)/k)^{2n+1} |q|; bound the tail
    # geometrically with a safety factor.
    r = aq * ((k + 1) / k) ** (2 * n + (2 if tau_deriv else 1))
    r = min(r, 0.99)
    tail = 2.0 * last * r / (1.0 - r) + 1e-16 * abs(acc.value) * max(k, 1)
    return acc.value, tail


def eisenstein(n: int, tau: TauPoint, policy: SeriesPolicy = DEFAULT_POLICY) -> ComplexVal:
    """Eisenstein series E_{2n}(tau) = 2 zeta(2n) + (2 (2 pi i)^{2n} / (2n-1)!)
    sum_k sigma_{2n-1}(k) q^k, with 2 zeta(2n) = -(2 pi i)^{2n} B_{2n} / (2n)!."""
    if n < 1:
        raise ValueError("n must be >= 1")
    pref = 2 * TWO_PI_I ** (2 * n) / math.factorial(2 * n - 1)
    const = -(TWO_PI_I ** (2 * n)) * float(bernoulli_number(2 * n)) / math.factorial(2 * n)
    s, tail = _eisenstein_q_sum(n, tau, policy, tau_deriv=False)
    return ComplexVal(const + pref * s, abs(pref) * tail)


def eisenstein_normalized(n: int, tau: TauPoint, policy: SeriesPolicy = DEFAULT_POLICY) -> ComplexVal:
    """G_{2n}(tau) = -B_{2n}/(4n) + sum_k sigma_{2n-1}(k) q^k."""
    if n < 1:
        raise ValueError("n must be >= 1")
    const = -float(bernoulli_number(2 * n)) / (4 * n)
    s, tail = _eisenstein_q_sum(n, tau, policy, tau_deriv=False)
    return ComplexVal(const + s, tail)


def eisenstein_tau_derivative(n: int, tau: TauPoint, policy: SeriesPolicy = DEFAULT_POLICY) -> ComplexVal:
    """dE_{2n}/dtau by termwise differentiation of the q-expansion."""
    if n < 1:
        raise ValueError("n must be >= 1")
    pref = 2 * TWO_PI_I ** (2 * n) / math.factorial(2 * n - 1)
    s, tail = _eisenstein_q_sum(n, tau, policy, tau_deriv=True)
    return ComplexVal(pref * s, abs(pref) * tail)


# ---------------------------------------------------------------------------
# Elliptic Bernoulli functions
# ---------------------------------------------------------------------------

_LATTICE_EPS = 1e-12


def _on_lattice(x: float, y: float) -> bool:
    return abs(x - round(x)) < _LATTICE_EPS and abs(y - round(y)) < _LATTICE_EPS


def _bernoulli_poly_float(m: int, y: float) -> float:
    acc = 0.0
    for j in range(m + 1):
        acc = acc * y + math.comb(m, j) * float(bernoulli_number(j))
    return acc


def _pow_00(base: float, e: int) -> float:
    # 0^0 = 1 by convention (matters only for m = 1 factors).
    if e == 0:
        return 1.0
    return base**e


def elliptic_bernoulli(m: int, x: float, y: float, tau: TauPoint,
                       policy: SeriesPolicy = DEFAULT_POLICY) -> ComplexVal:
    """Elliptic Bernoulli function B_m(x, y; tau) (Kronecker's double series).

    B_m(x,y;tau) = m [ sum_{j>=1} (y-j)^{m-1} e(-y tau) q^j / (e(-x) - e(-y tau) q^j)
                     - sum_{j>=1} (y+j)^{m-1} e(y tau) q^j / (e(x) - e(y tau) q^j)
                     + y^{m-1} e(-x+y tau) / (e(-x+y tau) - 1) ] + B_m(y),

    with y reduced into [0, 1) first and B_m(y) the Bernoulli polynomial of
    the reduced y.  m = 0 returns 1 (the generating-series residue), which the
    Machide sums need.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if _on_lattice(x, y):
        raise LatticePointError(f"B_{m}({x}, {y}; tau): x - y*tau is a lattice point")
    if m == 0:
        return ComplexVal(1.0 + 0j, 0.0)
    cap = _check_tau(tau, policy)
    t = tau.tau
    y = y - math.floor(y)
    if y < _LATTICE_EPS or y > 1 - _LATTICE_EPS:
        # x is off-integer here (lattice check above); snap y to exactly 0
        y = 0.0
    emx = cmath.exp(-TWO_PI_I * x)
    epx = cmath.exp(TWO_PI_I * x)
    # e(-y tau) q^j = e((j - y) tau);  e(y tau) q^j = e((j + y) tau)
    acc = _Kahan()
    decay = abs(cmath.exp(TWO_PI_I * t))  # = |q| < 1
    j = 0
    last = 0.0
    while j < cap:
        j += 1
        w1 = cmath.exp(TWO_PI_I * (j - y) * t)
        w2 = cmath.exp(TWO_PI_I * (j + y) * t)
        t1 = _pow_00(y - j, m - 1) * w1 / (emx - w1)
        t2 = _pow_00(y + j, m - 1) * w2 / (epx - w2)
        acc.add(t1)
        acc.add(-t2)
        last = abs(t1) + abs(t2)
        if last <= policy.tol * max(abs(acc.value), 1.0) and j >= 2:
            break
    else:
        raise NonConvergenceError(
            f"elliptic Bernoulli series hit max_terms={cap}",
            ComplexVal(acc.value, float("inf")),
        )
    v = cmath.exp(TWO_PI_I * (-x + y * t))
    closing = _pow_00(y, m - 1) * v / (v - 1)
    acc.add(closing)
    r = decay * ((j + 1 + y) / max(j - y, 0.5)) ** (m - 1)
    r = min(r, 0.99)
    tail = m * (2.0 * last * r / (1.0 - r) + 1e-16 * abs(acc.value) * j)
    return ComplexVal(m * acc.value + _bernoulli_poly_float(m, y), tail)


# ---------------------------------------------------------------------------
# Weierstrass functions
# ---------------------------------------------------------------------------


def _decompose(z: complex, tau: TauPoint) -> Tuple[float, float]:
    """Write z = x - y*tau with real x, y."""
    t = tau.tau
    y = -z.imag / t.imag
    x = z.real + y * t.real
    return x, y


def weierstrass_zeta(z: complex, tau: TauPoint,
                     policy: SeriesPolicy = DEFAULT_POLICY) -> ComplexVal:
    """Weierstrass zeta(z; tau).

    Decomposes z = x - y*tau, reduces (x, y) into [0,1)^2 where the elliptic
    Bernoulli series converges, and inverts

        B_1(x, y; tau) = -(1/2 pi i)[zeta(x - y tau) - E_2 (x - y tau)] + y,

    restoring the shift with the quasi-periods zeta(z+1) = zeta(z) + E_2 and
    zeta(z+tau) = zeta(z) + E_2 tau - 2 pi i.
    """
    z = complex(z)
    x, y = _decompose(z, tau)
    if _on_lattice(x, y):
        raise LatticePointError(f"zeta pole: z = {z} is on the lattice")
    nx = math.floor(x)
    ny = math.floor(y)
    x0, y0 = x - nx, y - ny
    b1 = elliptic_bernoulli(1, x0, y0, tau, policy)
    if y0 < _LATTICE_EPS or y0 > 1 - _LATTICE_EPS:
        y0 = round(y0)  # keep z0 consistent with the snap inside B_1
    z0 = x0 - y0 * tau.tau
    e2 = eisenstein(1, tau, policy)
    zeta0 = -TWO_PI_I * (b1 - y0) + e2 * z0
    # z = z0 + nx - ny*tau
    return zeta0 + e2 * (nx - ny * tau.tau) + ComplexVal(TWO_PI_I * ny, 0.0)


_phi_polys: List[List[int]] = [[0, 1]]
_phi_lock = threading.Lock()


def _phi_poly(k: int) -> List[int]:
    """Numerator P_k of (u d/du)^k [u/(1-u)^2] = P_k(u)/(1-u)^{k+2}.

    Recurrence: P_{k+1}(u) = u [ P_k'(u)(1-u) + (k+2) P_k(u) ].
    """
    with _phi_lock:
        while len(_phi_polys) <= k:
            kk = len(_phi_polys) - 1
            p = _phi_polys[-1]
            dp = [i * c for i, c in enumerate(p)][1:] or [0]
            # P'(u)(1-u)
            a = dp + [0]
            for i, c in enumerate(dp):
                a[i + 1] -= c
            b = [(kk + 2) * c for c in p] + [0] * (len(a) - len(p))
            s = [ai + bi for ai, bi in zip(a, b)]
            _phi_polys.append([0] + s)
        return _phi_polys[k]


def _phi(k: int, w: complex) -> complex:
    p = _phi_poly(k)
    num = 0j
    for c in reversed(p):
        num = num * w + c
    return num / (1 - w) ** (k + 2)


def weierstrass_p_deriv(k: int, z: complex, tau: TauPoint,
                        policy: SeriesPolicy = DEFAULT_POLICY) -> ComplexVal:
    """kth z-derivative of the Weierstrass pe function.

    Fourier form in u = e(z), differentiated termwise:

        pe^{(k)}(z) = -E_2 [k=0] + (2 pi i)^{k+2} [ Phi_k(u)
                      + sum_{j>=1} ( Phi_k(u q^j) + (-1)^k Phi_k(q^j / u) ) ]

    with Phi_k = (u d/du)^k [u/(1-u)^2].  z is reduced modulo the lattice so
    that 0 <= Im(z after reduction) <= Im(tau)/2, using evenness.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    z = complex(z)
    t = tau.tau
    x, y = _decompose(z, tau)
    if _on_lattice(x, y):
        raise LatticePointError(f"pe pole: z = {z} is on the lattice")
    sign = 1.0
    y0 = y - round(y)
    if y0 < -_LATTICE_EPS:
        # pe^{(k)}(-z) = (-1)^k pe^{(k)}(z)
        sign = (-1.0) ** k
        x, y0 = -x, -y0
    elif abs(y0) <= _LATTICE_EPS:
        y0 = 0.0
    x0 = x - math.floor(x)
    u = cmath.exp(TWO_PI_I * (x0 - y0 * t))
    q = tau.nome
    aq = abs(q)
    cap = _check_tau(tau, policy)
    acc = _Kahan()
    acc.add(_phi(k, u))
    par = (-1.0) ** k
    qj = 1.0 + 0j
    j = 0
    last = 0.0
    while j < cap:
        j += 1
        qj *= q
        t1 = _phi(k, u * qj)
        t2 = par * _phi(k, qj / u)
        acc.add(t1)
        acc.add(t2)
        last = abs(t1) + abs(t2)
        if last <= policy.tol * max(abs(acc.value), 1.0) and j >= 2:
            break
    else:
        raise NonConvergenceError(
            f"pe Fourier series hit max_terms={cap}",
            ComplexVal(acc.value, float("inf")),
        )
    pref = TWO_PI_I ** (k + 2)
    r = min(aq * 2.0, 0.99)
    tail = abs(pref) * (2.0 * last * r / (1.0 - r) + 1e-16 * abs(acc.value) * j)
    val = ComplexVal(sign * pref * acc.value, tail)
    if k == 0:
        val = val - eisenstein(1, tau, policy)
    return val


def weierstrass_zeta_deriv(j: int, z: complex, tau: TauPoint,
                           policy: SeriesPolicy = DEFAULT_POLICY) -> ComplexVal:
    """zeta^{(j)}(z; tau); for j >= 1 this is -pe^{(j-1)}(z; tau)."""
    if j < 0:
        raise ValueError("j must be >= 0")
    if j == 0:
        return weierstrass_zeta(z, tau, policy)
    return -weierstrass_p_deriv(j - 1, z, tau, policy)


def sigma_log_tau_derivative(z: complex, tau: TauPoint,
                             policy: SeriesPolicy = DEFAULT_POLICY) -> ComplexVal:
    """d(log sigma(z; tau))/dtau by termwise tau-differentiation of the
    expansion log sigma(z) = log z - sum_{n>=2} E_{2n}(tau) z^{2n} / (2n).

    Valid for |z| inside the lattice injectivity radius; callers keep |z|
    well below 1/2.
    """
    z = complex(z)
    acc = _Kahan()
    err = 0.0
    prev = float("inf")
    n = 1
    while n < 60:
        n += 1
        d = eisenstein_tau_derivative(n, tau, policy)
        term = -d.value * z ** (2 * n) / (2 * n)
        acc.add(term)
        err += d.err * abs(z) ** (2 * n) / (2 * n)
        mag = abs(term)
        if mag <= policy.tol * max(abs(acc.value), 1e-30) and mag <= prev:
            break
        prev = mag
    ratio = min(abs(z) ** 2 * 4.0, 0.9)  # |z| < 1/2 keeps this < 1
    err += 2.0 * abs(prev if prev != float("inf") else 0.0) * ratio / (1 - ratio)
    return ComplexVal(acc.value, err)


# ---------------------------------------------------------------------------
# Direct lattice-sum oracle (absolutely convergent weights only)
# ---------------------------------------------------------------------------


def kronecker_direct(k: int, z: complex, tau: TauPoint,
                     cutoff: LatticeCutoff) -> ComplexVal:
    """Truncated Kronecker lattice sum

        C_k(z) ~ sum_{|m|,|n| <= R, (m,n) != 0} chi(w conj(z)) / w^k,

    with w = m tau + n and chi(t) = exp(2 pi i Im(t) / Im(tau)).  Only the
    absolutely convergent range k >= 3 is supported; the reported err is the
    O(R^{2-k}) lattice tail bound.
    """
    if k < 3:
        raise ValueError("k must be >= 3 (conditionally convergent sums are out of scope)")
    t = complex(tau.tau)
    R = cutoff.radius
    ms = np.arange(-R, R + 1)
    ns = np.arange(-R, R + 1)
    M, N = np.meshgrid(ms, ns, indexing="ij")
    W = M * t + N
    mask = (M != 0) | (N != 0)
    Wm = np.where(mask, W, 1.0)
    chi = np.exp(2j * np.pi * (Wm * np.conjugate(z)).imag / t.imag)
    terms = np.where(mask, chi / Wm**k, 0.0)
    # inner sum over n first, then over m (Eisenstein summation order)
    val = complex(terms.sum(axis=1).sum())
    # points at ring max(|m|,|n|) = s number ~ 8s and satisfy |w| >= c*s
    c = min(1.0, t.imag) / (1.0 + abs(t.real))
    tail = 8.0 * c ** (-k) * R ** (2 - k) / (k - 2)
    return ComplexVal(val, tail)


# ---------------------------------------------------------------------------
# Odd zeta values
# ---------------------------------------------------------------------------


def zeta_odd(n: int, tol: float = 1e-12) -> float:
    """zeta(2n+1) by direct summation plus an Euler-Maclaurin tail below tol."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be > 0")
    s = 2 * n + 1
    K = 10
    # remainder after the K^{-s-1} correction term is O(s^3 K^{-s-3})
    while s**3 * K ** (-(s + 3)) > tol * 0.01 and K < 10**6:
        K *= 2
    acc = math.fsum(k ** (-s) for k in range(1, K + 1))
    tail = K ** (1 - s) / (s - 1) - 0.5 * K ** (-s) + s / 12.0 * K ** (-(s + 1))
    return acc + tail
