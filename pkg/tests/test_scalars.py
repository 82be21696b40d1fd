import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ncalg.errors import InputError, NormTooLarge, NotPure, NotUnitNorm, ZeroInverse
from ncalg.scalars import (HQ, QQ, PrimeField, Quat, QuaternionFloat, Scalar, diff_unit_norms,
                           domain_from_dict, pure_commutator, scalar_oracle, sqrt_unit,
                           unit_commutator, zero_sum_values)

H = QuaternionFloat()
fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
quats = st.builds(Quat, fracs, fracs, fracs, fracs)
small = st.floats(-3, 3, allow_nan=False)
fquats = st.builds(Quat, small, small, small, small)


def _close(p: Quat, q: Quat, tol=1e-10):
    return all(abs(x - y) <= tol for x, y in zip(p.coords(), q.coords()))


def test_hamilton_relations():
    i, j, k = Quat(0, 1, 0, 0), Quat(0, 0, 1, 0), Quat(0, 0, 0, 1)
    assert i * j == k and j * k == i and k * i == j
    assert i * i == Quat(-1, 0, 0, 0)
    assert j * i == -k


@given(quats, quats, quats)
def test_quaternion_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a * b).norm() == a.norm() * b.norm()
    assert (a * b).conj() == b.conj() * a.conj()


@given(quats)
def test_exact_inverse(q):
    if q.norm() == 0:
        with pytest.raises(ZeroInverse):
            HQ.inv(q)
        return
    assert HQ.mul(q, HQ.inv(q)) == HQ.one()
    assert HQ.mul(HQ.inv(q), q) == HQ.one()


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
def test_prime_field_inverses(p):
    F = PrimeField(p)
    for x in range(1, p):
        assert F.mul(x, F.inv(x)) == 1


def test_prime_field_rejects_composite():
    with pytest.raises(InputError):
        PrimeField(6)


@pytest.mark.parametrize("dom,text", [
    (QQ, "-3/4"), (PrimeField(7), "5"), (HQ, "1/2-3i+j-2/3k"), (H, "0.5+2i-k"),
])
def test_parse_format_round_trip(dom, text):
    x = dom.parse(text)
    assert dom.eq(dom.parse(dom.format(x)), x)


def test_domain_dict_round_trip():
    for dom in (QQ, HQ, PrimeField(5), QuaternionFloat(1e-6)):
        assert domain_from_dict(dom.describe()) == dom


@given(fquats)
def test_diff_unit_norms_property(q):
    n = math.sqrt(q.norm())
    if n > 2:
        with pytest.raises(NormTooLarge):
            diff_unit_norms(H, q)
        return
    u, v = diff_unit_norms(H, q)
    assert abs(u.norm() - 1) < 1e-10 and abs(v.norm() - 1) < 1e-10
    assert _close(u - v, q)


def test_diff_unit_norms_boundary():
    u, v = diff_unit_norms(H, Quat(2.0, 0.0, 0.0, 0.0))
    assert _close(u, Quat(1.0, 0, 0, 0)) and _close(v, Quat(-1.0, 0, 0, 0))
    with pytest.raises(NormTooLarge):
        diff_unit_norms(H, Quat(0.0, 2.001, 0.0, 0.0))


@given(fquats)
def test_unit_commutator_property(q):
    if q.norm() < 1e-6:
        return
    u = q.scale(1 / math.sqrt(q.norm()))
    a, b = unit_commutator(H, u)
    for z in (a, b):
        assert _close(z * z, Quat(-1.0, 0, 0, 0), 1e-12)
    assert _close(a * b * H.inv(a) * H.inv(b), u, 1e-10)


def test_unit_commutator_rejects_non_unit():
    with pytest.raises(NotUnitNorm):
        unit_commutator(H, Quat(2.0, 0, 0, 0))


@given(fquats)
def test_sqrt_unit(q):
    if q.norm() < 1e-6:
        return
    u = q.scale(1 / math.sqrt(q.norm()))
    r = sqrt_unit(H, u)
    assert _close(r * r, u, 1e-10)


@given(quats)
def test_pure_commutator_exact(q):
    v = q.imag()
    if v.norm() == 0:
        return
    a, b = pure_commutator(HQ, v)
    assert a * b - b * a == v
    assert a.a == 0 and b.a == 0


def test_pure_commutator_rejects_real_part():
    with pytest.raises(NotPure):
        pure_commutator(HQ, Quat(Fraction(1), Fraction(1), Fraction(0), Fraction(0)))


@given(quats)
def test_scalar_oracle_exact(h):
    if h.norm() == 0:
        return
    a1, b1, a2, b2 = scalar_oracle(HQ, h)
    c1, c2 = a1 * b1 - b1 * a1, a2 * b2 - b2 * a2
    assert c1 * c2 == h
    assert c1.norm() != 0 and c2.norm() != 0


@pytest.mark.parametrize("p,n", [(3, 2), (3, 5), (5, 4), (7, 3), (2, 4)])
def test_zero_sum_values(p, n):
    F = PrimeField(p)
    xs = zero_sum_values(F, n)
    assert len(xs) == n and all(x != 0 for x in xs) and sum(xs) % p == 0


def test_scalar_wrapper_arithmetic():
    F = PrimeField(5)
    x = Scalar(F, 3)
    assert (x * x.inv()) == Scalar(F, 1)
    assert (x + 2).is_zero()
    assert str(QQ("2/6")) == "1/3"
