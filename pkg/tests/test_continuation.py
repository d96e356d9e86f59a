import cmath
import math

import numpy as np
import pytest

from ffgold import (
    DecompositionConfig,
    FieldPair,
    PrimePower,
    digamma,
    i_N,
    laurent_at_zero,
    log_gamma,
    make_custom_field,
    make_rational_field,
    mellin_barnes_check,
    phi_continued,
    phi_direct,
    r_0,
    sigma_0,
    sigma_1,
    sigma_N,
    sigma_half,
    zeta_logderiv,
    zeta_logderiv_derivative,
)
from ffgold.errors import PoleAtNonPositiveInteger

EULER_GAMMA = 0.5772156649015328606065

R2 = make_rational_field(PrimePower(2, 1))
R3 = make_rational_field(PrimePower(3, 1))
E2 = make_custom_field(PrimePower(2, 1), (1, 0, 2))

PAIR22 = FieldPair.create(R2, R2, depth=8)
PAIR23 = FieldPair.create(R2, R3, depth=8)
PAIR2E3 = FieldPair.create(R2, E2, depth=8)


def test_special_functions():
    assert abs(log_gamma(1.0)) < 1e-14
    assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-14)
    assert digamma(1.0) == pytest.approx(-EULER_GAMMA, rel=1e-13)
    # |Gamma(1+iy)|^2 = pi y / sinh(pi y), an independent reflection identity
    for y in (1.0, 2.0, 5.0):
        lhs = abs(cmath.exp(log_gamma(1 + 1j * y))) ** 2
        rhs = math.pi * y / math.sinh(math.pi * y)
        assert lhs == pytest.approx(rhs, rel=1e-12)
    with pytest.raises(PoleAtNonPositiveInteger):
        log_gamma(-3.0)
    with pytest.raises(PoleAtNonPositiveInteger):
        digamma(0.0)


def test_zeta_logderiv_against_dirichlet_series():
    # zeta'/zeta(s) = -sum_k N_k log q q^{-ks} for Re s large
    from ffgold import point_counts
    for spec in (R2, R3, E2):
        N = point_counts(spec, 200).N
        lq = spec.q.log_q
        for s in (3.0, 2.5 + 1.7j):
            series = -sum(N[k - 1] * lq * spec.q.q ** (-k * s.real)
                          * cmath.exp(-1j * k * s.imag * lq)
                          for k in range(1, 201))
            assert zeta_logderiv(spec, s) == pytest.approx(series, rel=1e-10)


def test_zeta_logderiv_periodicity_and_decay():
    period = 2j * math.pi / R2.q.log_q
    s = 2.3 + 0.9j
    assert zeta_logderiv(R2, s) == pytest.approx(zeta_logderiv(R2, s + period),
                                                 rel=1e-12)
    assert abs(zeta_logderiv(R2, 30.0)) < 1e-7


def test_zeta_logderiv_derivative_finite_difference():
    s = 2.7 + 1.3j
    h = 1e-5
    for spec in (R2, E2):
        fd = (zeta_logderiv(spec, s + h) - zeta_logderiv(spec, s - h)) / (2 * h)
        assert zeta_logderiv_derivative(spec, s) == pytest.approx(fd, rel=1e-7)


def test_laurent_at_zero():
    assert laurent_at_zero(R2).C_minus1 == pytest.approx(-1 / math.log(2), rel=1e-14)
    assert laurent_at_zero(E2).C_minus1 == pytest.approx(-3 / math.log(2), rel=1e-14)
    # Richardson fit of s zeta(s) = C_-1 + C_0 s + O(s^2) on two radii
    for spec in (R2, E2):
        def s_zeta(s):
            u = spec.q.q ** -s
            L = sum(c * u ** j for j, c in enumerate(spec.L_coeffs))
            return s * L / ((1 - u) * (1 - spec.q.q * u))
        lz = laurent_at_zero(spec)
        for h in (1e-3, 1e-4):
            c0_est = (s_zeta(h) - s_zeta(-h)) / (2 * h)
            assert c0_est == pytest.approx(lz.C_0, rel=1e-5)
        # even part is C_-1 + C_1 h^2 + O(h^4): Richardson over the two radii
        mid = {h: (s_zeta(h) + s_zeta(-h)) / 2 for h in (1e-3, 1e-4)}
        extrap = (100 * mid[1e-4] - mid[1e-3]) / 99
        assert extrap == pytest.approx(lz.C_minus1, rel=1e-9)


def test_mellin_barnes_closed_forms():
    cases = [(1.0, 1.0, 0.5), (3.0, 2.5, 1.2), (0.1, 1 + 2j, 0.6)]
    for lam, s, alpha in cases:
        got = mellin_barnes_check(lam, s, alpha=alpha)
        assert abs(got - (1 + lam) ** (-s)) < 1e-10


def test_sigma1_b0_term_reduction():
    # the b2 = 0 summand alone is -(zeta'/zeta)_{K1}(s-1)/(s-1)
    s = 2.5
    cfg = DecompositionConfig(M_b=0)
    got = sigma_1(PAIR22, s, cfg).value
    want = -zeta_logderiv(R2, s - 1) / (s - 1)
    assert got == pytest.approx(want, rel=1e-13)


def test_series_window_doubling():
    s = 2.5 + 1.0j
    for pair in (PAIR22, PAIR23, PAIR2E3):
        for fn in (sigma_1, sigma_0, sigma_half):
            base = fn(pair, s)
            cfg = DecompositionConfig(M_b=80, M_c=80, M_a=80)
            wide = fn(pair, s, cfg)
            assert abs(base.value - wide.value) <= base.tail_bound + 1e-15


def test_sigma_half_zero_for_genus_zero():
    r = sigma_half(PAIR23, 2.5)
    assert r.value == 0 and r.tail_bound == 0


def test_sigma_N_small_cases():
    s = 2.5
    assert sigma_N(PAIR22, s, 1) == 0
    want = -s * zeta_logderiv(R2, s + 1) * zeta_logderiv(R2, -1.0)
    assert sigma_N(PAIR22, s, 2) == pytest.approx(want, rel=1e-13)


def test_r0_against_contour_residue():
    # integrate the integrand on a small circle around its double pole z=0
    for pair, s in ((PAIR22, 2.5), (PAIR23, 2.2 + 0.7j), (PAIR2E3, 3.0)):
        radius = 0.1
        M = 800
        total = 0.0 + 0.0j
        for t in range(M):
            z = radius * cmath.exp(2j * math.pi * t / M)
            h = (cmath.exp(log_gamma(s - z) + log_gamma(z) - log_gamma(s))
                 * zeta_logderiv(pair.K1, s - z) * zeta_logderiv(pair.K2, z))
            total += h * z  # dz = 2 pi i z dt / M
        oracle = total / M
        assert r_0(pair, s) == pytest.approx(oracle, rel=1e-8)


def test_i_N_convergence_and_conjugacy():
    s = 2.5 + 1.2j
    base = i_N(PAIR23, s)
    fine = i_N(PAIR23, s, DecompositionConfig(T=40.0, quad_points=64))
    assert abs(base.value - fine.value) <= 2 * base.tail_bound + 1e-12
    conj = i_N(PAIR23, s.conjugate())
    assert conj.value == pytest.approx(base.value.conjugate(), rel=1e-12)


def test_master_identity_spot_checks():
    for pair in (PAIR22, PAIR23, PAIR2E3):
        for s in (2.5, 2.3 + 1.5j):
            d = phi_direct(pair, s)
            c = phi_continued(pair, s)
            assert abs(d.value - c.value) <= d.tail_bound + c.tail_bound + 1e-8


def test_continued_conjugate_symmetry():
    s = 2.4 + 2.1j
    a = phi_continued(PAIR23, s).value
    b = phi_continued(PAIR23, s.conjugate()).value
    assert a == pytest.approx(b.conjugate(), rel=1e-10)
