import math

import pytest

from ffgold import (
    FieldPair,
    PrimePower,
    WeierstrassCurve,
    goldbach_G,
    goldbach_G_bruteforce,
    lambda_norm_sum,
    make_elliptic_field,
    make_rational_field,
    phi_direct,
    places_by_enumeration,
    representations,
)
from ffgold.errors import DepthExceeded, DomainError, ValidationError

R2 = make_rational_field(PrimePower(2, 1))
R3 = make_rational_field(PrimePower(3, 1))
E2 = make_elliptic_field(PrimePower(2, 1), WeierstrassCurve.parse("y2+y=x3"))


def test_lambda_norm_sum():
    # [DERIVED] q=2 rational, k=2: 3 degree-1 places at h=2 plus one degree-2
    # place contribute (3 + 2) log 2
    assert lambda_norm_sum(R2, 1) == pytest.approx(3 * math.log(2), rel=1e-15)
    assert lambda_norm_sum(R2, 2) == pytest.approx(5 * math.log(2), rel=1e-15)
    assert lambda_norm_sum(E2, 2) == pytest.approx(9 * math.log(2), rel=1e-15)


def test_representations():
    assert representations(4, 2, 2) == [(1, 1)]
    assert representations(6, 2, 2) == [(1, 2), (2, 1)]
    assert representations(5, 2, 3) == [(1, 1)]
    assert representations(7, 2, 3) == [(2, 1)]
    assert representations(5, 2, 2) == []


def test_goldbach_known_values():
    pair = FieldPair.create(R2, R2, depth=8)
    l2 = math.log(2)
    assert goldbach_G(pair, 4).value == pytest.approx(9 * l2 ** 2, rel=1e-15)
    assert goldbach_G(pair, 6).value == pytest.approx(30 * l2 ** 2, rel=1e-15)
    assert goldbach_G(pair, 5).value == 0.0


def test_goldbach_depth_guard():
    pair = FieldPair.create(R2, R2, depth=2)
    with pytest.raises(DepthExceeded):
        goldbach_G(pair, 2 ** 5 + 2)


def test_goldbach_against_bruteforce():
    for K1, K2 in ((R2, R2), (R2, R3), (E2, R3)):
        pair = FieldPair.create(K1, K2, depth=10)
        for n in range(2, 101):
            want = goldbach_G_bruteforce(pair, n)
            got = goldbach_G(pair, n).value
            assert got == pytest.approx(want, rel=1e-13, abs=1e-13)


def test_places_by_enumeration_matches_counts():
    from ffgold import place_counts
    assert places_by_enumeration(R2, 5) == place_counts(R2, 5).a
    assert places_by_enumeration(E2, 4) == place_counts(E2, 4).a


def test_phi_direct_domain_and_tail():
    pair = FieldPair.create(R2, R3, depth=64)
    with pytest.raises(DomainError):
        phi_direct(pair, 2.05)
    r = phi_direct(pair, 2.5, target_tail=1e-10)
    assert r.tail_bound < 1e-10
    assert r.value.imag == 0.0


def test_phi_direct_against_naive_sum():
    # independent oracle: plain python double loop over the (k1, k2) grid
    pair = FieldPair.create(R2, R2, depth=60)
    s = 3.0
    r = phi_direct(pair, s, target_tail=1e-12)
    lg = math.log(2) ** 2
    naive = sum(lg * pair.N1[k1 - 1] * pair.N2[k2 - 1]
                * (2 ** k1 + 2 ** k2) ** -s
                for k1 in range(1, 61) for k2 in range(1, 61))
    assert abs(r.value - naive) < 1e-10


def test_phi_direct_conjugate_symmetry_and_orders():
    pair = FieldPair.create(R2, R3, depth=64)
    s = 2.7 + 1.3j
    a = phi_direct(pair, s).value
    b = phi_direct(pair, s.conjugate()).value
    assert a == pytest.approx(b.conjugate(), rel=1e-14)
    g = phi_direct(pair, s, order="grid")
    n = phi_direct(pair, s, order="by_n")
    assert abs(g.value - n.value) <= g.tail_bound + n.tail_bound + 1e-15
    with pytest.raises(ValidationError):
        phi_direct(pair, s, order="bogus")


def test_phi_direct_monotone_on_reals():
    pair = FieldPair.create(R2, R2, depth=64)
    vals = [phi_direct(pair, s).value.real for s in (2.2, 2.5, 3.0, 4.0)]
    assert all(a > b > 0 for a, b in zip(vals, vals[1:]))
