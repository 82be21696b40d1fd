import numpy as np
import pytest
from hypothesis import given, strategies as st

from ncalg.errors import InputError, Singular
from ncalg.matcore import (Matrix, commutator, determinant, dieudonne_value, direct_sum,
                           format_matrix, inverse, is_central_matrix, is_invertible,
                           mult_commutator, parse_matrix, rank, reduced_norm, sl_test, solve,
                           trace)
from ncalg.scalars import HQ, QQ, PrimeField, Quat, QuaternionFloat

H = QuaternionFloat()
seeds = st.integers(0, 2**32 - 1)


def _brute_det(rows, p):
    """Leibniz expansion as an independent oracle."""
    import itertools
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = (-1) ** inv
        for r in range(n):
            term *= rows[r][perm[r]]
        total += term
    return total % p if p else total


@given(seeds, st.integers(1, 4), st.sampled_from([2, 3, 7]))
def test_determinant_matches_leibniz(seed, n, p):
    F = PrimeField(p)
    A = Matrix.random(F, n, np.random.default_rng(seed))
    assert determinant(A) == _brute_det(A.rows, p)


@given(seeds, st.integers(1, 4))
def test_inverse_rational(seed, n):
    A = Matrix.random(QQ, n, np.random.default_rng(seed))
    if not is_invertible(A):
        with pytest.raises(Singular):
            inverse(A)
        return
    I = Matrix.identity(QQ, n)
    assert (A @ inverse(A)).equals(I) and (inverse(A) @ A).equals(I)


@given(seeds, st.integers(1, 4))
def test_quaternion_inverse_exact(seed, n):
    A = Matrix.random(HQ, n, np.random.default_rng(seed))
    if is_invertible(A):
        assert (A @ inverse(A)).equals(Matrix.identity(HQ, n))


@given(seeds, st.integers(1, 4))
def test_solve(seed, n):
    rng = np.random.default_rng(seed)
    A = Matrix.random(HQ, n, rng)
    b = Matrix.random(HQ, n, rng, 1)
    if is_invertible(A):
        assert (A @ solve(A, b)).equals(b)


@given(seeds, st.integers(1, 3))
def test_reduced_norm_multiplicative(seed, n):
    rng = np.random.default_rng(seed)
    A, B = Matrix.random(HQ, n, rng), Matrix.random(HQ, n, rng)
    assert reduced_norm(A @ B) == reduced_norm(A) * reduced_norm(B)


def test_reduced_norm_scalar_case():
    q = Quat(*map(__import__("fractions").Fraction, (1, 2, 3, 4)))
    assert reduced_norm(Matrix(HQ, [[q]])) == q.norm()


@given(seeds, st.integers(1, 4))
def test_dieudonne_value_multiplicative(seed, n):
    rng = np.random.default_rng(seed)
    A, B = Matrix.random(H, n, rng), Matrix.random(H, n, rng)
    lhs = dieudonne_value(A @ B)
    rhs = dieudonne_value(A) * dieudonne_value(B)
    assert abs(lhs - rhs) <= 1e-8 * max(1.0, rhs)


def test_sl_test_on_commutators():
    rng = np.random.default_rng(3)
    X, Y = Matrix.random(H, 3, rng), Matrix.random(H, 3, rng)
    assert sl_test(mult_commutator(X, Y))
    assert not sl_test(X.lscale(H.coerce(2.0)) @ X.lscale(H.coerce(2.0)))


@given(seeds, st.integers(1, 4))
def test_commutator_has_trace_zero_over_field(seed, n):
    rng = np.random.default_rng(seed)
    F = PrimeField(5)
    X, Y = Matrix.random(F, n, rng), Matrix.random(F, n, rng)
    assert trace(commutator(X, Y)) == 0


def test_rank_and_direct_sum():
    A = parse_matrix("1,2;2,4", QQ)
    assert rank(A) == 1
    D = direct_sum(A, Matrix.identity(QQ, 2))
    assert D.shape == (4, 4) and rank(D) == 3


def test_central_detection():
    assert is_central_matrix(Matrix.scalar(QQ, 3, QQ.coerce(5)))
    assert not is_central_matrix(Matrix.scalar(HQ, 2, HQ.parse("i")))
    assert not is_central_matrix(parse_matrix("1,1;0,1", QQ))


@pytest.mark.parametrize("text", ["1,2;3", "", "1,x;2,3"])
def test_parse_errors(text):
    with pytest.raises(InputError):
        parse_matrix(text, QQ)


def test_format_round_trip():
    A = parse_matrix("1/2, -3i+j; 0, 1+k", HQ)
    assert parse_matrix(format_matrix(A), HQ).equals(A)
