import numpy as np
import pytest
from hypothesis import given, strategies as st

from ncalg import commfact as cf
from ncalg.errors import (DomainMismatch, FieldTooSmall, NoLambda, NormTooLarge, NotSL,
                          PreconditionError, UnsupportedPolynomial)
from ncalg.freealg import parse_poly, standard_poly
from ncalg.matcore import (Matrix, commutator, determinant, dieudonne_value, direct_sum,
                           is_invertible, parse_matrix)
from ncalg.scalars import HQ, QQ, PrimeField, QuaternionFloat, Scalar

H = QuaternionFloat()
seeds = st.integers(0, 2**32 - 1)


def _sl_float(n, rng):
    A = Matrix.random(H, n, rng)
    return A.lscale(H.coerce(dieudonne_value(A) ** (-1.0 / n)))


def _rel(cert):
    return cert.residual() / max(1.0, cert.input.max_norm())


@given(seeds, st.sampled_from([(2, 3), (3, 5), (4, 7), (2, 0), (3, 0)]))
def test_two_commutators_field_exact(seed, nq):
    n, q = nq
    dom = PrimeField(q) if q else QQ
    A = Matrix.random(dom, n, np.random.default_rng(seed))
    cert = cf.two_commutators_field(A, seed)
    assert cert.recombine().equals(A)
    assert is_invertible(cert.parts[0].value())


def test_two_commutators_field_too_small():
    with pytest.raises(FieldTooSmall):
        cf.two_commutators_field(Matrix.identity(PrimeField(2), 3))


@pytest.mark.parametrize("text", ["1,0;0,1", "0,0;0,0", "2,0;0,2", "0,1;0,0"])
def test_two_commutators_field_special(text):
    A = parse_matrix(text, PrimeField(5))
    assert cf.two_commutators_field(A).recombine().equals(A)


@given(seeds, st.integers(2, 4))
def test_two_commutators_quaternion_float(seed, n):
    A = Matrix.random(H, n, np.random.default_rng(seed))
    cert = cf.two_commutators_quaternion(A, seed)
    assert _rel(cert) <= 1e-6
    assert is_invertible(cert.parts[0].value())


@given(seeds, st.integers(1, 3))
def test_two_commutators_quaternion_exact(seed, n):
    A = Matrix.random(HQ, n, np.random.default_rng(seed))
    cert = cf.two_commutators_quaternion(A, seed)
    assert cert.recombine().equals(A)


@pytest.mark.parametrize("dom", [HQ, H])
def test_two_commutators_quaternion_central_and_singular(dom):
    for A in (Matrix.scalar(dom, 3, dom.coerce(2)), Matrix.zeros(dom, 3),
              direct_sum(Matrix.identity(dom, 2), Matrix.zeros(dom, 1))):
        cert = cf.two_commutators_quaternion(A)
        assert cert.replay()


@given(seeds)
def test_q_gt_n_block_identities_exact(seed):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(1, 4))
    B = Matrix.random(HQ, 1, rng, m)
    C = Matrix.random(HQ, m, rng, 1)
    E = tuple(Matrix.random(HQ, m, rng) for _ in range(4))
    F = commutator(E[0], E[1])
    if not is_invertible(F):
        return
    lam = cf.find_regularizing_lambda(E[2]).value
    d1, d2 = HQ.parse("i"), HQ.parse("j")
    X1, Y1, X2, Y2 = cf.q_gt_n_blocks(B, C, E, d1, d2, lam)
    d = HQ.sub(HQ.mul(d1, d2), HQ.mul(d2, d1))
    # first factor is d ⊕ [E1, E2]
    assert commutator(X1, Y1).equals(direct_sum(Matrix(HQ, [[d]]), F))
    A = direct_sum(Matrix.zeros(HQ, 1), F @ commutator(E[2], E[3]))
    A.rows[0][1:] = B.rows[0]
    for r in range(m):
        A.rows[r + 1][0] = C.rows[r][0]
    assert (commutator(X1, Y1) @ commutator(X2, Y2)).equals(A)


@given(seeds)
def test_q_gt_n_recursion(seed):
    A = Matrix.random(H, 3, np.random.default_rng(seed))
    cert = cf.q_gt_n_recursion(A, seed)
    assert _rel(cert) <= 1e-6


@given(seeds, st.integers(1, 4))
def test_regularizing_lambda(seed, n):
    F = PrimeField(7)
    A = Matrix.random(F, n, np.random.default_rng(seed))
    lam = cf.find_regularizing_lambda(A).value
    assert is_invertible(A - Matrix.scalar(F, n, lam))


@pytest.mark.parametrize("q", [2, 3])
def test_no_lambda_for_companion_of_frobenius_polynomial(q):
    F = PrimeField(q)
    coeffs = [0, F.neg(1)] + [0] * (q - 2)  # t^q − t
    C = cf.companion_matrix(F, coeffs)
    with pytest.raises(NoLambda) as exc:
        cf.find_regularizing_lambda(C)
    assert len(exc.value.witnesses) == q


@given(seeds, st.integers(2, 4))
def test_skew_commutators(seed, n):
    A = _sl_float(n, np.random.default_rng(seed))
    cert = cf.skew_commutators_sl(A, seed)
    assert _rel(cert) <= 1e-6
    I = Matrix.identity(H, n)
    for p in cert.parts:
        assert p.tag == "MultCommutator"
        for Z in p.operands:
            assert (Z @ Z + I).max_norm() <= 1e-7


def test_skew_commutators_canned_cases():
    for sign in (1, -1):
        I = Matrix.identity(H, 3).lscale(H.coerce(sign))
        cert = cf.skew_commutators_sl(I)
        assert len(cert.parts) == 1
        assert cert.recombine().equals(I, 0.0)


def test_skew_commutators_rejects_non_sl():
    with pytest.raises(NotSL):
        cf.skew_commutators_sl(Matrix.identity(H, 2).lscale(H.coerce(2.0)))


@given(seeds, st.sampled_from([QQ, PrimeField(7), PrimeField(2)]), st.integers(2, 4))
def test_sl_difference_fields(seed, dom, n):
    A = Matrix.random(dom, n, np.random.default_rng(seed))
    B, C = cf.sl_difference(A, seed)
    assert determinant(B) == dom.one() and determinant(C) == dom.one()
    assert (B - C).equals(A)


@given(seeds, st.integers(2, 3))
def test_sl_difference_quaternion(seed, n):
    A = Matrix.random(H, n, np.random.default_rng(seed))
    B, C = cf.sl_difference(A, seed)
    assert abs(dieudonne_value(B) - 1) <= 1e-7 and abs(dieudonne_value(C) - 1) <= 1e-7
    assert (B - C).residual(A) <= 1e-9


def test_sl_difference_exact_quaternions_unsupported():
    with pytest.raises(DomainMismatch):
        cf.sl_difference(Matrix.identity(HQ, 2))


@pytest.mark.parametrize("poly", ["x1*x2 - x2*x1", "x1*x2", "x1*x2*x3 - x3*x2*x1",
                                  "x1*x2*x3 + x2*x3*x1 - 2*x3*x1*x2"])
def test_pure_witness(poly):
    f = parse_poly(poly)
    plus, minus = cf.pure_witness(f)
    from ncalg.commfact import _eval_on_quats
    from ncalg.scalars import Quat
    assert _eval_on_quats(f, plus) == Quat(0, 1, 0, 0)
    assert _eval_on_quats(f, minus) == Quat(0, -1, 0, 0)


def test_pure_witness_refuses_real_valued():
    with pytest.raises(UnsupportedPolynomial):
        cf.pure_witness(standard_poly(4))


def test_theorem_real_decomposition():
    A = Matrix.random(H, 2, np.random.default_rng(11))
    cert = cf.theorem_real_decomposition(A, "x1*x2 - x2*x1", seed=3)
    from ncalg.certificates import verify_certificate
    rep = verify_certificate(cert)
    assert rep.ok, rep.failures
    assert len(cert.witnesses) == 8


@given(seeds, st.sampled_from([HQ, PrimeField(7), H]))
def test_waring_split(seed, dom):
    A = Matrix.random(dom, 2, np.random.default_rng(seed))
    cert = cf.waring_split_2x2(A)
    assert cert.replay(1e-9)
    b, c = A.rows[0][1], A.rows[1][0]
    for case, ok in (("b", not dom.is_zero(b)), ("c", not dom.is_zero(c))):
        if ok:
            assert cf.waring_split_2x2(A, case).replay(1e-9)
        else:
            with pytest.raises(PreconditionError):
                cf.waring_split_2x2(A, case)


def test_waring_diag_case():
    A = Matrix.diag(HQ, [HQ.parse("1+i"), HQ.parse("2-k")])
    cert = cf.waring_split_2x2(A)
    assert cert.aux["case"] == "diag" and cert.recombine().equals(A)


@pytest.mark.parametrize("text", ["i+j", "0.6+0.8k", "1.5-0.3i+0.2j", "0", "2"])
def test_quaternion_certificates(text):
    q = Scalar(H, H.parse(text))
    for build in (cf.quat_difference_certificate, cf.quat_commutator_certificate):
        assert build(q).residual() <= 1e-12


def test_quaternion_norm_boundary():
    with pytest.raises(NormTooLarge):
        cf.quat_difference_certificate(Scalar(H, H.parse("3")))
