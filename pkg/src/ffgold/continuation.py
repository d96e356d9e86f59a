"""Residue decomposition of the Goldbach Dirichlet series.

Evaluates the six pieces obtained by shifting the Mellin-Barnes contour
(the three residue series over the poles/zeros of zeta_{K2}, the double-pole
residue at z = 0, the finite binomial sum, and the remaining line integral)
and assembles them into the continued value.  Every truncated series and
quadrature carries a floating-point-evaluated analytic tail bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.special import digamma as _sc_digamma
from scipy.special import loggamma as _sc_loggamma

from .errors import (
    DomainError,
    NearPole,
    NearZeroOfLogDeriv,
    PoleAtNonPositiveInteger,
    QuadratureNotConverged,
    ToleranceUnreachable,
)
from .ff_models import FunctionFieldSpec
from .goldbach import EvalResult, FieldPair

EULER_GAMMA = 0.5772156649015328606065
GUARD_RADIUS = 1e-6
CONTOUR_EPS = 0.05
TAIL_EXTRA = 400        # extra majorant terms summed past each window
_SUP_SAMPLES = 2048
_SUP_SAFETY = 2.0


@dataclass(frozen=True)
class LaurentAtZero:
    C_minus1: complex
    C_0: complex


@dataclass(frozen=True)
class DecompositionConfig:
    N: int = 2
    alpha: float = 1.0 + CONTOUR_EPS
    M_b: Optional[int] = None
    M_c: Optional[int] = None
    M_a: int = 40
    T: Optional[float] = None
    quad_points: int = 32

    def window_b(self, im_s: float, log_q2: float) -> int:
        auto = math.ceil((abs(im_s) + 10.0) * log_q2 / (2 * math.pi)) + 20
        return self.M_b if self.M_b is not None else auto

    def window_c(self, im_s: float, log_q2: float) -> int:
        auto = math.ceil((abs(im_s) + 10.0) * log_q2 / (2 * math.pi)) + 20
        return self.M_c if self.M_c is not None else auto

    def height(self, im_s: float) -> float:
        return self.T if self.T is not None else abs(im_s) + 14.0


# -- special functions -------------------------------------------------------

def _near_nonpositive_integer(z: complex, guard: float = 1e-12) -> bool:
    n = round(z.real)
    return n <= 0 and abs(z - n) < guard


def log_gamma(z: complex) -> complex:
    if _near_nonpositive_integer(z):
        raise PoleAtNonPositiveInteger(f"log_gamma pole at {z}")
    return complex(_sc_loggamma(complex(z)))


def digamma(z: complex) -> complex:
    if _near_nonpositive_integer(z):
        raise PoleAtNonPositiveInteger(f"digamma pole at {z}")
    return complex(_sc_digamma(complex(z)))


def gamma_ratio(s: complex, rho) -> complex:
    """Gamma(s - rho) * Gamma(rho) / Gamma(s), stable in log space."""
    return np.exp(_sc_loggamma(s - rho) + _sc_loggamma(rho) - _sc_loggamma(complex(s)))


def gamma_ratio_log_abs(s: complex, rho) -> float:
    return np.real(_sc_loggamma(s - rho) + _sc_loggamma(rho) - _sc_loggamma(complex(s)))


# -- zeta'/zeta as a cached rational function --------------------------------

class ZetaLogDeriv:
    """zeta'/zeta of one function field as a rational function of u = q^{-s}.

    Caches the numerator Q(u) = L'(u)(1-u)(1-qu) + L(u)(1+q-2qu) and the
    denominator D(u) = L(u)(1-u)(1-qu); coefficients low-to-high.
    """

    def __init__(self, spec: FunctionFieldSpec):
        self.spec = spec
        q = spec.q.q
        self.log_q = spec.q.log_q
        L = np.array(spec.L_coeffs, dtype=float)
        Lp = P.polyder(L) if len(L) > 1 else np.array([0.0])
        pole_part = P.polymul([1.0, -1.0], [1.0, -float(q)])
        self.Q = P.polyadd(P.polymul(Lp, pole_part), P.polymul(L, [1.0 + q, -2.0 * q]))
        self.D = P.polymul(L, pole_part)
        self.Qp = P.polyder(self.Q)
        self.Dp = P.polyder(self.D)
        # vertical lines carrying poles: (real part, tuple of Im offsets)
        lines = [(0.0, (0.0,)), (1.0, (0.0,))]
        if spec.genus > 0:
            args = np.angle(spec.inverse_roots())
            lines.append((0.5, tuple(a / self.log_q for a in args)))
        self.pole_lines = lines

    def u(self, s: complex) -> complex:
        return np.exp(-np.asarray(s, dtype=complex) * self.log_q)

    def pole_distance(self, s: complex) -> float:
        """Distance from s to the pole set of zeta'/zeta (all of zeta's
        poles and zeros), using vertical periodicity."""
        period = 2 * math.pi / self.log_q
        s = complex(s)
        best = math.inf
        for x0, offsets in self.pole_lines:
            dx = s.real - x0
            for off in offsets:
                dy = (s.imag - off) % period
                dy = min(dy, period - dy)
                best = min(best, math.hypot(dx, dy))
        return best

    def value(self, s, guarded: bool = True):
        if guarded and self.pole_distance(complex(np.atleast_1d(s)[0])) < GUARD_RADIUS:
            raise NearPole(f"zeta'/zeta of q={self.spec.q.q} near pole at s={s}")
        u = self.u(s)
        return -self.log_q * u * P.polyval(u, self.Q) / P.polyval(u, self.D)

    def value_array(self, s):
        u = self.u(s)
        return -self.log_q * u * P.polyval(u, self.Q) / P.polyval(u, self.D)

    def derivative(self, s, guarded: bool = True):
        """d/ds of zeta'/zeta, via d/ds = -log q * u * d/du on u Q/D."""
        if guarded and self.pole_distance(complex(np.atleast_1d(s)[0])) < GUARD_RADIUS:
            raise NearPole(f"zeta'/zeta derivative of q={self.spec.q.q} near pole at s={s}")
        u = self.u(s)
        Q = P.polyval(u, self.Q)
        D = P.polyval(u, self.D)
        Qp = P.polyval(u, self.Qp)
        Dp = P.polyval(u, self.Dp)
        g_prime = (Q + u * Qp) / D - u * Q * Dp / (D * D)
        return self.log_q ** 2 * u * g_prime

    def sup_on_line(self, x0: float) -> float:
        return _sup_on_line(self.spec, round(x0, 12))

    def numerator_root_lines(self):
        """Vertical lines of zeros of zeta'/zeta: Re and Im offsets from the
        roots w_k of Q."""
        roots = np.roots(self.Q[::-1])
        lines = []
        for w in roots:
            if w == 0:
                continue
            lines.append((-math.log(abs(w)) / self.log_q,
                          -np.angle(w) / self.log_q))
        return lines

    def zero_distance(self, s: complex) -> float:
        period = 2 * math.pi / self.log_q
        s = complex(s)
        best = math.inf
        for x0, off in self.numerator_root_lines():
            dy = (s.imag - off) % period
            dy = min(dy, period - dy)
            best = min(best, math.hypot(s.real - x0, dy))
        return best


@lru_cache(maxsize=256)
def _zld(spec: FunctionFieldSpec) -> ZetaLogDeriv:
    return ZetaLogDeriv(spec)


@lru_cache(maxsize=4096)
def _sup_on_line(spec: FunctionFieldSpec, x0: float) -> float:
    zld = _zld(spec)
    for line_x, _ in zld.pole_lines:
        if abs(x0 - line_x) < 10 * GUARD_RADIUS:
            raise NearPole(f"supremum line Re s = {x0} carries poles")
    period = 2 * math.pi / zld.log_q
    ys = np.linspace(0.0, period, _SUP_SAMPLES, endpoint=False)
    vals = np.abs(zld.value_array(x0 + 1j * ys))
    return float(vals.max()) * _SUP_SAFETY


def zeta_logderiv(spec: FunctionFieldSpec, s: complex) -> complex:
    return complex(_zld(spec).value(complex(s)))


def zeta_logderiv_derivative(spec: FunctionFieldSpec, s: complex) -> complex:
    return complex(_zld(spec).derivative(complex(s)))


def laurent_at_zero(spec: FunctionFieldSpec) -> LaurentAtZero:
    """Laurent data of zeta_K at s = 0 in closed form.

    With t = s log q:  zeta(s) = L(e^{-t}) / ((1-e^{-t})(1-q e^{-t}))
    = L(1)/((1-q) t) - L'(1)/(1-q) - L(1)(3q-1)/(2(1-q)^2) + O(t).
    """
    q = spec.q.q
    L1 = float(sum(spec.L_coeffs))
    Lp1 = float(sum(j * c for j, c in enumerate(spec.L_coeffs)))
    c_minus1 = L1 / ((1 - q) * spec.q.log_q)
    c_0 = -Lp1 / (1 - q) - L1 * (3 * q - 1) / (2 * (1 - q) ** 2)
    return LaurentAtZero(C_minus1=c_minus1, C_0=c_0)


# -- quadrature kernel -------------------------------------------------------

def _line_quadrature(f, x0: float, T: float, quad_points: int,
                     refine_at=(0.0,)) -> complex:
    """(1/2*pi*i) * integral of f over the vertical segment |Im z| <= T.

    Composite Gauss-Legendre with unit-width panels aligned to the integer
    grid, geometrically refined around the ordinates in ``refine_at`` where
    integrand poles sit just off the contour.
    """
    nodes, weights = np.polynomial.legendre.leggauss(quad_points)
    edges = {-T, T}
    edges.update(float(k) for k in range(math.floor(-T) + 1, math.ceil(T)))
    for yr in refine_at:
        for d in (0.0, 0.0125, 0.025, 0.05, 0.1, 0.2, 0.4):
            for y in (yr - d, yr + d):
                if -T < y < T:
                    edges.add(y)
    edges = sorted(edges)
    total = 0.0 + 0.0j
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid, half = (lo + hi) / 2.0, (hi - lo) / 2.0
        ys = mid + half * nodes
        total += half * np.sum(weights * f(x0 + 1j * ys))
    return total / (2 * math.pi)


def _gamma_line_tail(s: complex, x0: float, T: float, extra_log_sup: float) -> float:
    """Bound the |Im z| > T tail of the shifted-contour integrand.

    The integrand magnitude decays at least like y^{sigma-1} e^{-pi y} once
    |y| dominates |Im s|; the tail integral is bounded by the endpoint value
    times the inverse decay rate, with a safety factor of 2.
    """
    c = max(s.real - 1.0, 0.0)
    rate = math.pi - c / T
    if rate <= 0:
        raise QuadratureNotConverged(f"tail decay not established at T={T}")
    end = 0.0
    for y in (T, -T):
        end += math.exp(gamma_ratio_log_abs(s, x0 + 1j * y) + extra_log_sup)
    return 2.0 * end / rate / (2 * math.pi)


def mellin_barnes_check(lam: float, s: complex, alpha: Optional[float] = None,
                        T: Optional[float] = None, quad_points: int = 32,
                        tol: float = 1e-11) -> complex:
    """Numerical (1/2*pi*i) integral of Gamma(s-z)Gamma(z)/Gamma(s) lam^{-z};
    must reproduce (1 + lam)^{-s}.  Self-test of the shared quadrature kernel."""
    s = complex(s)
    if not (lam > 0):
        raise DomainError("lambda must be positive")
    if s.real <= 0:
        raise DomainError("Re s must be positive")
    if alpha is None:
        alpha = min(1.0 + CONTOUR_EPS, s.real / 2.0)
    if not (0 < alpha < s.real):
        raise DomainError(f"need 0 < alpha={alpha} < Re s={s.real}")
    if T is None:
        T = abs(s.imag) + 14.0
    log_lam = math.log(lam)

    def f(z):
        return np.exp(_sc_loggamma(s - z) + _sc_loggamma(z) - _sc_loggamma(s)
                      - z * log_lam)

    # lam^{-z} has constant magnitude lam^{-alpha} on the line
    tail = _gamma_line_tail(s, alpha, T, -alpha * log_lam)
    if tail > tol:
        raise QuadratureNotConverged(f"tail estimate {tail} above {tol}")
    return complex(_line_quadrature(f, alpha, T, quad_points,
                                    refine_at=(0.0, s.imag)))


# -- residue series ----------------------------------------------------------

def _series_sum(pair: FieldPair, s: complex, rho_of_index, window: int,
                sign: float, skip: int = None) -> EvalResult:
    """Sum sign * Gamma(s-rho)Gamma(rho)/Gamma(s) * (zeta'/zeta)_{K1}(s-rho)
    over indices |m| <= window, with a Stirling tail certificate.

    ``skip`` omits one index; the boundary probe uses this to sum the
    non-dominant terms directly instead of by a cancellation-prone
    subtraction of two large values.
    """
    s = complex(s)
    zld1 = _zld(pair.K1)
    ms = np.arange(-window, window + 1)
    if skip is not None:
        ms = ms[ms != skip]
    rhos = rho_of_index(ms)
    shifted = s - rhos
    for w in shifted:
        if _near_nonpositive_integer(complex(w), GUARD_RADIUS):
            raise NearPole(f"Gamma(s - rho) pole near s - rho = {w}")
        if zld1.pole_distance(complex(w)) < GUARD_RADIUS:
            raise NearPole(f"zeta'/zeta pole near s - rho = {w}")
    ratio = np.exp(_sc_loggamma(shifted) + _sc_loggamma(rhos) - _sc_loggamma(s))
    value = sign * np.sum(ratio * zld1.value_array(shifted))

    # tail: |zeta'/zeta| is bounded on the line Re = Re(s - rho) by periodicity
    sup1 = zld1.sup_on_line(s.real - float(np.real(rhos[0])))
    tail = 0.0
    last = 0.0
    for m_abs in range(window + 1, window + TAIL_EXTRA + 1):
        step = 0.0
        for m in (m_abs, -m_abs):
            rho = complex(rho_of_index(np.array([m]))[0])
            step += math.exp(min(gamma_ratio_log_abs(s, rho), 700.0)) * sup1
        tail += step
        last = step
        if step < tail * 1e-16 + 1e-300:
            break
    tail += last * 9.0  # geometric remainder, ratio <= 0.9 in the decay regime
    return EvalResult(value=complex(value), tail_bound=tail, terms_used=len(ms))


def sigma_1(pair: FieldPair, s: complex, config: DecompositionConfig = DecompositionConfig(),
            skip_b: int = None) -> EvalResult:
    """Residue series over the Re = 1 poles of zeta_{K2}."""
    s = complex(s)
    log_q2 = pair.K2.q.log_q
    window = config.window_b(s.imag, log_q2)
    step = 2 * math.pi / log_q2

    def rho(ms):
        return 1.0 + 1j * step * ms

    return _series_sum(pair, s, rho, window, sign=-1.0, skip=skip_b)


def sigma_0(pair: FieldPair, s: complex, config: DecompositionConfig = DecompositionConfig()) -> EvalResult:
    """Residue series over the Re = 0 poles of zeta_{K2}, a != 0."""
    s = complex(s)
    log_q2 = pair.K2.q.log_q
    window = config.M_a
    step = 2 * math.pi / log_q2
    zld1 = _zld(pair.K1)
    ms = np.concatenate([np.arange(-window, 0), np.arange(1, window + 1)])
    rhos = 1j * step * ms
    shifted = s - rhos
    for w in shifted:
        if _near_nonpositive_integer(complex(w), GUARD_RADIUS):
            raise NearPole(f"Gamma(s - rho) pole near s - rho = {w}")
        if zld1.pole_distance(complex(w)) < GUARD_RADIUS:
            raise NearPole(f"zeta'/zeta pole near s - rho = {w}")
    ratio = np.exp(_sc_loggamma(shifted) + _sc_loggamma(rhos) - _sc_loggamma(s))
    value = -np.sum(ratio * zld1.value_array(shifted))
    sup1 = zld1.sup_on_line(s.real)
    tail = 0.0
    for m_abs in range(window + 1, window + 60):
        for m in (m_abs, -m_abs):
            rho = 1j * step * m
            tail += math.exp(min(gamma_ratio_log_abs(s, rho), 700.0)) * sup1
    tail *= 2.0
    return EvalResult(value=complex(value), tail_bound=tail, terms_used=len(ms))


def sigma_half(pair: FieldPair, s: complex, config: DecompositionConfig = DecompositionConfig()) -> EvalResult:
    """Residue series over the critical-line zeros of zeta_{K2}.

    zeta'/zeta has residue +1 at each simple zero, so this series enters the
    decomposition with the opposite sign of the pole series.
    """
    s = complex(s)
    if pair.K2.genus == 0:
        return EvalResult(value=0.0 + 0.0j, tail_bound=0.0, terms_used=0)
    log_q2 = pair.K2.q.log_q
    window = config.window_c(s.imag, log_q2)
    step = 2 * math.pi / log_q2
    args = np.angle(pair.K2.inverse_roots())  # in (-pi, pi]
    total = 0.0 + 0.0j
    tail = 0.0
    terms = 0
    for theta in args:
        off = theta / log_q2

        def rho(ms, off=off):
            return 0.5 + 1j * (off + step * ms)

        part = _series_sum(pair, s, rho, window, sign=+1.0)
        total += part.value
        tail += part.tail_bound
        terms += part.terms_used
    return EvalResult(value=total, tail_bound=tail, terms_used=terms)


def sigma_N(pair: FieldPair, s: complex, N: int) -> complex:
    """Finite binomial sum over the Gamma poles z = -1, ..., -(N-1)."""
    s = complex(s)
    if N < 1:
        raise DomainError("N must be >= 1")
    zld1, zld2 = _zld(pair.K1), _zld(pair.K2)
    total = 0.0 + 0.0j
    binom = 1.0 + 0.0j  # binom(-s, 0)
    for n in range(1, N):
        binom *= -(s + n - 1) / n   # binom(-s, n) recurrence
        total += binom * zld1.value(s + n) * zld2.value(-float(n))
    return total


def r_0(pair: FieldPair, s: complex) -> complex:
    """Residue of the integrand at its double pole z = 0.

    Equals (zeta'/zeta)_{K1}(s) * [psi(s) + gamma + C0/C-1] + (zeta'/zeta)'_{K1}(s);
    cross-checked against a small-circle contour integral in the tests.
    """
    s = complex(s)
    zld1 = _zld(pair.K1)
    if zld1.zero_distance(s) < GUARD_RADIUS:
        raise NearZeroOfLogDeriv(f"s={s} within guard of a zero of zeta'/zeta")
    a = zld1.value(s)
    ap = zld1.derivative(s)
    lz = laurent_at_zero(pair.K2)
    return a * (digamma(s) + EULER_GAMMA + lz.C_0 / lz.C_minus1) + ap


def i_N(pair: FieldPair, s: complex, config: DecompositionConfig = DecompositionConfig()) -> EvalResult:
    """Shifted line integral along Re z = -N + eps."""
    s = complex(s)
    N = config.N
    x0 = -N + CONTOUR_EPS
    if s.real <= 1.0 - N + CONTOUR_EPS + 0.01:
        raise DomainError(f"Re s = {s.real} too small for shift depth N = {N}")
    zld1, zld2 = _zld(pair.K1), _zld(pair.K2)
    T = config.height(s.imag)

    def f(z):
        return (np.exp(_sc_loggamma(s - z) + _sc_loggamma(z) - _sc_loggamma(s))
                * zld1.value_array(s - z) * zld2.value_array(z))

    value = _line_quadrature(f, x0, T, config.quad_points)
    sup1 = zld1.sup_on_line(s.real - x0)
    sup2 = zld2.sup_on_line(x0)
    tail = _gamma_line_tail(s, x0, T, math.log(max(sup1 * sup2, 1e-300)))
    return EvalResult(value=complex(value), tail_bound=tail, terms_used=config.quad_points)


def phi_continued(pair: FieldPair, s: complex,
                  config: DecompositionConfig = DecompositionConfig()) -> EvalResult:
    """Continued value: Sigma_1 + Sigma_1/2 + Sigma_0 + R_0 + Sigma_N + I_N."""
    s = complex(s)
    s1 = sigma_1(pair, s, config)
    sh = sigma_half(pair, s, config)
    s0 = sigma_0(pair, s, config)
    r0 = r_0(pair, s)
    sn = sigma_N(pair, s, config.N)
    iN = i_N(pair, s, config)
    value = s1.value + sh.value + s0.value + r0 + sn + iN.value
    tail = s1.tail_bound + sh.tail_bound + s0.tail_bound + iN.tail_bound
    terms = s1.terms_used + sh.terms_used + s0.terms_used + iN.terms_used
    return EvalResult(value=value, tail_bound=tail, terms_used=terms)
