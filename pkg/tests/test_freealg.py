import numpy as np
import pytest
from hypothesis import given, strategies as st

from ncalg.errors import BudgetExceeded, NotMultilinear, PolySyntaxError, UnknownVariable
from ncalg.freealg import (coefficient_sum, commutator_poly, evaluate, is_multilinear,
                           p_commutator_poly, parse_poly, standard_poly, tilde_normalize)
from ncalg.matcore import Matrix, commutator
from ncalg.scalars import HQ, QQ, PrimeField, QuaternionFloat

seeds = st.integers(0, 2**32 - 1)


def test_parse_and_print():
    f = parse_poly("x1*x2 - x2*x1")
    assert str(f) == "x1*x2 - x2*x1"
    g = parse_poly("-3/2*x1^2 + 4 + x2")
    assert g.coefficient(()) == 4
    assert g.coefficient((1, 1)) == QQ.parse("-3/2")
    assert parse_poly(str(g)) == g


def test_like_terms_cancel():
    assert parse_poly("x1*x2 - x1*x2").is_zero()


@pytest.mark.parametrize("text,offset", [("x1 + * x2", 5), ("x1 x2", 3), ("x1 + 3/0*x2", 7)])
def test_syntax_error_offsets(text, offset):
    with pytest.raises(PolySyntaxError) as exc:
        parse_poly(text)
    assert exc.value.offset == offset


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse_poly("x0 + y")


def test_gf_coefficients_reduce():
    f = parse_poly("3*x1 + 2*x1", PrimeField(5))
    assert f.is_zero()


@given(seeds)
def test_evaluate_commutator_matches_matrix_bracket(seed):
    rng = np.random.default_rng(seed)
    X, Y = Matrix.random(HQ, 2, rng), Matrix.random(HQ, 2, rng)
    assert evaluate(commutator_poly(), [X, Y]).equals(commutator(X, Y))


@given(seeds)
def test_evaluate_is_a_ring_map(seed):
    rng = np.random.default_rng(seed)
    f = parse_poly("x1*x2 + 2*x2^2 - 1")
    g = parse_poly("x2*x1 - x1 + 1/3")
    args = [Matrix.random(QQ, 3, rng), Matrix.random(QQ, 3, rng)]
    assert evaluate(f * g, args).equals(evaluate(f, args) @ evaluate(g, args))
    assert evaluate(f + g, args).equals(evaluate(f, args) + evaluate(g, args))


def test_standard_poly():
    s3 = standard_poly(3)
    assert len(s3.terms) == 6 and is_multilinear(s3)
    assert coefficient_sum(s3) == QQ(0)
    with pytest.raises(BudgetExceeded):
        standard_poly(8)


@given(seeds)
def test_s4_vanishes_on_2x2(seed):
    # the classic identity for 2×2 matrices over a commutative ring
    rng = np.random.default_rng(seed)
    args = [Matrix.random(QQ, 2, rng) for _ in range(4)]
    assert evaluate(standard_poly(4), args).is_zero()


def test_tilde_normalize_and_coefficient_sum():
    f = parse_poly("x1*x2*x3 + 2*x3*x2*x1 - x2*x1*x3")
    assert str(tilde_normalize(f)) == "2*x1*x2*x3"
    assert coefficient_sum(f) == QQ(2)
    with pytest.raises(NotMultilinear):
        coefficient_sum(parse_poly("x1^2"))


def test_p_commutator_poly():
    f = p_commutator_poly([0, 1, 1])
    assert str(f) == "x1*x2 - x2*x1 + x1*x2*x1*x2 - x2*x1*x2*x1"


def test_quaternion_float_evaluation_embeds_rational_coefficients():
    H = QuaternionFloat()
    X = Matrix.scalar(H, 1, H.parse("i"))
    out = evaluate(parse_poly("x1^2 + 1"), [X])
    assert out.max_norm() < 1e-12
