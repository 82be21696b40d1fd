import numpy as np
import pytest
from hypothesis import given, strategies as st

from ncalg import imagelab as il
from ncalg.errors import BudgetExceeded, InputError
from ncalg.freealg import parse_poly
from ncalg.matcore import Matrix, parse_matrix
from ncalg.scalars import PrimeField

R2 = il.parse_ring("2x2@2")
R3 = il.parse_ring("2x2@3")
T3 = il.parse_ring("T3@2")
masks = st.lists(st.integers(0, 15), max_size=6)


def _mask(R, ids):
    return R.mask(ids) if ids else np.zeros(R.size_ids, dtype=bool)


def test_encoding_round_trip():
    for x in range(R3.size_ids):
        assert R3.encode(R3.decode(x)) == x


def test_tables_match_matrix_arithmetic():
    rng = np.random.default_rng(0)
    F = PrimeField(3)
    for _ in range(50):
        A, B = Matrix.random(F, 2, rng), Matrix.random(F, 2, rng)
        a, b = R3.encode(A), R3.encode(B)
        assert R3.mul[a, b] == R3.encode(A @ B)
        assert R3.add[a, b] == R3.encode(A + B)
        assert R3.neg[a] == R3.encode(-A)


def test_ring_structure():
    assert R2.order == 16 and int(R2.center_mask.sum()) == 2
    assert T3.order == 64
    assert int(il.commutator_span(R2).sum()) == 8
    assert il.commutator_ideal(R2).all()


def test_parse_ring_errors():
    with pytest.raises(InputError):
        il.parse_ring("2x3@2")
    with pytest.raises(InputError):
        il.parse_ring("2x2@4")
    with pytest.raises(BudgetExceeded):
        il.parse_ring("3x3@3")


@given(masks, masks)
def test_closures_are_closure_operators(xs, ys):
    X, Y = _mask(R2, xs), _mask(R2, ys)
    for close in (lambda S: il.additive_closure(R2, S), lambda S: il.subring_closure(R2, S),
                  lambda S: il.ideal_closure(R2, S)):
        cX = close(X)
        assert not (X & ~cX).any()  # extensive
        assert np.array_equal(close(cX), cX)  # idempotent
        assert not (cX & ~close(X | Y)).any()  # monotone


@given(masks, masks)
def test_additive_closure_of_products(xs, ys):
    # (X•Y)⁺ = X⁺Y⁺ as additive groups
    X, Y = _mask(R3, xs), _mask(R3, ys)
    lhs = il.additive_closure(R3, il.product_set(R3, X, Y))
    Xp, Yp = il.additive_closure(R3, X), il.additive_closure(R3, Y)
    rhs = il.additive_closure(R3, il.product_set(R3, Xp, Yp))
    assert np.array_equal(lhs, rhs)


def test_commutator_image_is_commutators():
    img = il.image_set("x1*x2 - x2*x1", R3)
    assert img.exhaustive
    assert np.array_equal(img.mask, il.commutator_set(R3, R3.element_mask, R3.element_mask))


def test_central_valued_detection():
    assert il.is_central_valued(il.image_set("x1*x2 - x2*x1 + x2*x1 - x1*x2 + 1", R2))
    assert il.is_central_valued(il.image_set("x1^2 + x1^4", R2))
    assert not il.is_central_valued(il.image_set("x1^2", R2))
    # (xy − yx)² is central on 2×2 matrices
    f = parse_poly("x1*x2*x1*x2 - x1*x2*x2*x1 - x2*x1*x1*x2 + x2*x1*x2*x1", PrimeField(3))
    assert il.is_central_valued(il.image_set(f, R3))


def test_dichotomy_commutator():
    rep = il.check_m2f2_dichotomies("x1*x2 - x2*x1")
    assert rep.verdict == il.FULL
    assert rep.verdicts["additive"] == "CONTAINS_[R,R]"


def test_exceptional_gf4_witness():
    rep = il.check_m2f2_dichotomies("x1^3 + x1^5")
    assert rep.verdicts == {"products": il.EXC_GF4, "additive": il.EXC_GF4}
    img = il.image_set("x1^3 + x1^5", R2)
    assert np.array_equal(il.additive_closure(R2, img.mask),
                          R2.mask_from_matrices(parse_matrix(t, PrimeField(2)) for t in il.GF4_COPY))


def test_p_commutator_exceptions_on_m2f2():
    r1 = il.p_commutator_set_check([0, 0, 0, 0, 1, 1], R2)
    assert r1.verdict == il.EXC_I
    r2 = il.p_commutator_set_check([0, 0, 0, 1, 0, 1], R2)
    assert r2.verdict == il.EXC_II
    assert il.p_commutator_set_check([0, 0, 1, 0, 1], R2).verdict == il.CENTRAL


@pytest.mark.parametrize("ring", ["2x2@3", "2x2@5"])
@pytest.mark.parametrize("p", ["x^2", "x^3", "x^2 + x"])
def test_p_commutator_equals_commutator_span(ring, p):
    R = il.parse_ring(ring)
    rep = il.p_commutator_set_check(il.parse_univariate(p, R.p), R)
    assert rep.verdict == il.EQUAL and rep.exhaustive


def test_small_sweep_has_no_refutations():
    res = il.sweep_m2f2(2, 2)
    assert len(res.rows) == 2 ** 7
    assert not res.refutations()
    assert res.to_csv().startswith("index,poly")


def test_sum_length_profile():
    img = il.image_set("x1*x2 - x2*x1", R3)
    prof = il.sum_length_profile(R3, img.mask, 2)
    assert prof.reaches_ring and prof.minimal_N >= 1
    assert prof.layer_sizes[-1] == R3.order


def test_sum_length_on_upper_triangular_does_not_reach_ring():
    img = il.image_set("x1*x2 - x2*x1", T3)
    prof = il.sum_length_profile(T3, img.mask, 1)
    assert not prof.reaches_ring


def test_fully_noncentral():
    assert il.fully_noncentral_check(R2, il.image_set("x1*x2 - x2*x1", R2).mask)
    assert not il.fully_noncentral_check(R2, R2.center_mask)


@pytest.mark.parametrize("poly", ["x1*x2", "x1*x2 + x2*x1", "x1*x2*x3 - x3*x2*x1", "x2*x1*x3"])
def test_tilde_equivalence(poly):
    rep = il.tilde_equivalence_check(poly, R2)
    assert rep.ok and rep.exhaustive


def test_standard_poly_probe():
    rep = il.standard_poly_probe(2, 2, R3)
    assert rep.exhaustive and rep.verdict == il.FULL


def test_reports_are_deterministic():
    a = il.image_report("x1^2 + x1*x2", R3, seed=4).to_dict()
    b = il.image_report("x1^2 + x1*x2", R3, seed=4).to_dict()
    assert a == b


def test_sampling_marks_non_exhaustive():
    R = il.parse_ring("2x2@3", budget=1000)
    img = il.image_set("x1*x2*x3", R, seed=1)
    assert not img.exhaustive
    with pytest.raises(BudgetExceeded):
        il.tilde_equivalence_check("x1*x2*x3", R)
