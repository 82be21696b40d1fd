"""Products of commutators and related splittings of square matrices."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .canonical import (MAX_RETRIES, block_merge_similarity, diagonalize_tri_distinct,
                        lhu_decompose, poly_from_roots, rowen_form, skew_involution_form,
                        tri_zero_trace_commutator, zero_diagonal_form)
from .certificates import FactorizationCertificate, Part, Witness
from .errors import (CentralInput, Degenerate2x2GF2, DomainMismatch, FieldTooSmall,
                     InfeasibleCase, NoLambda, NormResidual, NotMultilinear, NotSL,
                     PreconditionError, RetryExhausted, ShapeMismatch, Singular,
                     UnsupportedPolynomial)
from .freealg import FreePoly, is_multilinear, parse_poly
from .matcore import (Matrix, block, determinant, dieudonne_value, direct_sum, inverse,
                      is_central_matrix, is_invertible, sl_test, solve)
from .scalars import (QQ, PrimeField, Quat, QuaternionFloat, Scalar, ScalarDomain,
                      diff_unit_norms, scalar_oracle, unit_commutator, zero_sum_values)


FLOAT_ATTEMPTS = 8
GOOD_RESIDUAL = 1e-10


def _rng(seed):
    return np.random.default_rng(seed)


def _square(A: Matrix) -> int:
    if not A.is_square:
        raise ShapeMismatch(f"expected a square matrix, got {A.shape}")
    return A.nrows


def _check_replay(cert: FactorizationCertificate) -> FactorizationCertificate:
    if not cert.replay():
        raise NormResidual(f"{cert.kind}: replay residual {cert.residual():.3g}")
    return cert


# regularizing shifts -------------------------------------------------------

def _lambda_candidates(dom: ScalarDomain, n: int):
    if isinstance(dom, PrimeField):
        yield from range(dom.p)
        return
    yield dom.from_base(0)
    for k in range(1, 2 * n + 2):
        yield dom.from_base(k)
        yield dom.from_base(-k)


def _regularizing_lambda(A: Matrix):
    n = _square(A)
    dom = A.domain
    I = Matrix.identity(dom, n)
    tried = []
    for lam in _lambda_candidates(dom, n):
        if is_invertible(A - I.lscale(lam)):
            return lam
        tried.append(lam)
    raise NoLambda(f"A − λI is singular for every λ in {[dom.format(x) for x in tried]}",
                   [Scalar(dom, x) for x in tried])


def find_regularizing_lambda(A: Matrix) -> Scalar:
    """Central λ with A − λI invertible."""
    return Scalar(A.domain, _regularizing_lambda(A))


def companion_matrix(dom: ScalarDomain, coeffs: Sequence) -> Matrix:
    """Companion of the monic t^m + c_{m−1}t^{m−1} + … + c_0, coefficients lowest-first."""
    m = len(coeffs)
    C = Matrix.zeros(dom, m)
    for i in range(1, m):
        C.rows[i][i - 1] = dom.one()
    for i, c in enumerate(coeffs):
        C.rows[i][m - 1] = dom.neg(dom.coerce(c))
    return C


# fields ----------------------------------------------------------------

def _cycle_permutation(dom: ScalarDomain, sigma: Sequence[int]) -> Matrix:
    n = len(sigma)
    P = Matrix.zeros(dom, n)
    for j, i in enumerate(sigma):
        P.rows[i][j] = dom.one()
    return P


def _full_cycles(n: int, limit: int):
    """n-cycles as maps j ↦ σ(j), starting with j ↦ j+1."""
    count = 0
    for rest in itertools.permutations(range(1, n)):
        order = (0,) + rest
        sigma = [0] * n
        for t in range(n):
            sigma[order[t]] = order[(t + 1) % n]
        yield sigma
        count += 1
        if count >= limit:
            return


def _scaling_for_cycle(Ap: Matrix, sigma) -> Matrix | None:
    """W = P_σ·diag(d) with trace(W⁻¹A′) = 0 and d nonzero, or None."""
    dom = Ap.domain
    n = Ap.nrows
    P = _cycle_permutation(dom, sigma)
    PtA = P.transpose() @ Ap
    c = [PtA.rows[i][i] for i in range(n)]
    support = [i for i in range(n) if not dom.is_zero(c[i])]
    e = [dom.one()] * n
    if len(support) == 1:
        return None
    if support:
        try:
            y = zero_sum_values(dom, len(support))
        except InfeasibleCase:
            return None
        for i, yi in zip(support, y):
            e[i] = dom.mul(yi, dom.inv(c[i]))
    return P @ Matrix.diag(dom, [dom.inv(x) for x in e])


def trace_zero_pair_field(A: Matrix, seed: int | None = 0) -> tuple[Matrix, Matrix]:
    """A = B·C with trace(B) = trace(C) = 0 and B invertible.

    B is a monomial matrix P_σ·diag(d) on a full cycle σ (so its diagonal is
    zero) and d is chosen to kill trace(B⁻¹A). When no cycle works a random
    similarity is tried first.
    """
    n = _square(A)
    dom = A.domain
    if not dom.commutative:
        raise DomainMismatch("trace_zero_pair_field needs a field")
    if n < 2:
        raise ShapeMismatch("need n ≥ 2")
    rng = _rng(seed)
    for attempt in range(MAX_RETRIES):
        if attempt == 0:
            Q = Qi = Matrix.identity(dom, n)
        else:
            Q = Matrix.random(dom, n, rng)
            if not is_invertible(Q):
                continue
            Qi = inverse(Q)
        Ap = Qi @ A @ Q
        for sigma in _full_cycles(n, 24):
            W = _scaling_for_cycle(Ap, sigma)
            if W is not None:
                B = Q @ W @ Qi
                return B, inverse(B) @ A
    if n == 2 and dom.size == 2:
        raise Degenerate2x2GF2("no trace-zero pair with invertible first factor in M₂(GF(2)) for this A")
    raise RetryExhausted("no trace-zero pair found")


def _distinct_values(dom: ScalarDomain, n: int) -> list:
    if dom.size is not None and dom.size < n:
        raise FieldTooSmall(f"|F| = {dom.size} < n = {n}")
    return [dom.from_int(i) for i in range(n)]


def commutator_from_zero_diagonal(M: Matrix) -> tuple[Matrix, Matrix]:
    """[X, Y] = M with X = diag(0, 1, …, n−1) for M with zero diagonal."""
    n = _square(M)
    dom = M.domain
    if not dom.commutative:
        raise DomainMismatch("commutator_from_zero_diagonal needs a field")
    if any(not dom.is_zero(M.rows[i][i]) for i in range(n)):
        raise PreconditionError("diagonal is not zero", "M has zero diagonal")
    d = _distinct_values(dom, n)
    Y = Matrix.zeros(dom, n)
    for i in range(n):
        for j in range(n):
            if i != j:
                Y.rows[i][j] = dom.mul(M.rows[i][j], dom.inv(dom.sub(d[i], d[j])))
    return Matrix.diag(dom, d), Y


def _field_commutator(Z: Matrix, rng) -> tuple[Matrix, Matrix]:
    cert = zero_diagonal_form(Z, rng)
    X, Y = commutator_from_zero_diagonal(cert.canonical)
    P, Pi = cert.P, inverse(cert.P)
    return P @ X @ Pi, P @ Y @ Pi


def two_commutators_field(A: Matrix, seed: int | None = 0) -> FactorizationCertificate:
    """A = [X₁,Y₁]·[X₂,Y₂] over a field, exact, with [X₁,Y₁] invertible."""
    n = _square(A)
    dom = A.domain
    if not dom.commutative:
        raise DomainMismatch("two_commutators_field needs a field")
    if dom.size is not None and dom.size < n:
        raise FieldTooSmall(f"|F| = {dom.size} < n = {n}")
    rng = _rng(seed)
    B, C = trace_zero_pair_field(A, seed)
    X1, Y1 = _field_commutator(B, rng)
    X2, Y2 = _field_commutator(C, rng)
    parts = [Part("Commutator", (X1, Y1), {"invertible": True}),
             Part("Commutator", (X2, Y2))]
    return _check_replay(FactorizationCertificate("two-commutators", A, parts, "product", seed))


# quaternions: scalar pieces -------------------------------------------

def _q(dom: ScalarDomain, a=0, b=0, c=0, d=0) -> Quat:
    return dom.coerce(Quat(a, b, c, d))


def _need_quaternion(A: Matrix) -> None:
    if not A.domain.is_quaternion:
        raise DomainMismatch("quaternion matrices required")


def _central_brackets(dom: ScalarDomain, n: int, lam) -> tuple:
    """λI = [a₁I, b₁I]·[a₂I, b₂I]; for λ = 0 the first bracket is kI and the second is 0."""
    if dom.is_zero(lam):
        xs = (_q(dom, 0, 1), _q(dom, 0, 0, Fraction(1, 2)), dom.zero(), dom.zero())
    else:
        xs = scalar_oracle(dom, lam)
    return tuple(Matrix.scalar(dom, n, x) for x in xs)


def _brackets_cert(kind: str, A: Matrix, mats: tuple, seed, aux=None) -> FactorizationCertificate:
    X1, Y1, X2, Y2 = mats
    parts = [Part("Commutator", (X1, Y1), {"invertible": True}),
             Part("Commutator", (X2, Y2))]
    cert = FactorizationCertificate(kind, A, parts, "product", seed, aux=aux or {})
    return _check_replay(cert)


# q > n recursion ----------------------------------------------------------

def q_gt_n_blocks(B: Matrix, C: Matrix, E: tuple, d1, d2, lam) -> tuple:
    """Assemble the two brackets for [[0, B],[C, [E₁,E₂][E₃,E₄]]].

    First factor [diag(d₁,E₁), diag(d₂,E₂)] = d ⊕ F with d = [d₁,d₂], F = [E₁,E₂].
    Second factor [diag(λ, E₃), [[0, −d⁻¹BR],[RF⁻¹C, E₄]]] with R = (E₃ − λI)⁻¹.
    """
    dom = B.domain
    E1, E2, E3, E4 = E
    m = E1.nrows
    d = dom.sub(dom.mul(d1, d2), dom.mul(d2, d1))
    F = E1 @ E2 - E2 @ E1
    Fi = inverse(F)
    R = inverse(E3 - Matrix.scalar(dom, m, lam))
    one = lambda x: Matrix(dom, [[x]], True)  # noqa: E731
    X1 = direct_sum(one(d1), E1)
    Y1 = direct_sum(one(d2), E2)
    X2 = direct_sum(one(lam), E3)
    Y2 = block([[one(dom.zero()), (B @ R).lscale(dom.neg(dom.inv(d)))],
                [R @ Fi @ C, E4]])
    return X1, Y1, X2, Y2


def _qgtn(A: Matrix, rng, attempt: int) -> tuple:
    dom = A.domain
    n = A.nrows
    if is_central_matrix(A):
        return _central_brackets(dom, n, A.rows[0][0])
    if n == 1:
        return _central_brackets(dom, 1, A.rows[0][0])
    cert = rowen_form(A, None if attempt == 0 else rng)
    M = cert.canonical
    B = M.sub(0, 1, 1, n)
    C = M.sub(1, n, 0, 1)
    E = M.sub(1, n, 1, n)
    Es = _qgtn(E, rng, attempt)
    lam = _regularizing_lambda(Es[2])
    X1, Y1, X2, Y2 = q_gt_n_blocks(B, C, Es, _q(dom, 0, 1), _q(dom, 0, 0, 1), lam)
    P, Pi = cert.P, inverse(cert.P)
    return tuple(P @ X @ Pi for X in (X1, Y1, X2, Y2))


def q_gt_n_recursion(A: Matrix, seed: int | None = 0) -> FactorizationCertificate:
    """A = [X₁,Y₁]·[X₂,Y₂] over ℍ by peeling a Rowen-form corner at each step."""
    _square(A)
    _need_quaternion(A)
    rng = _rng(seed)
    last = None
    for attempt in range(MAX_RETRIES):
        mats = _qgtn(A, rng, attempt)
        try:
            return _brackets_cert("two-commutators", A, mats, seed, {"route": "q>n recursion"})
        except NormResidual as exc:
            last = exc
    raise RetryExhausted(f"recursion did not meet tolerance: {last}")


# quaternions: LHU route -----------------------------------------------

def _lhu_route(A: Matrix, rng, randomize: bool = False) -> tuple:
    dom = A.domain
    n = A.nrows
    xs = [dom.from_base(x) for x in zero_sum_values(QQ, n - 1)]
    hs = [dom.mul(x, x) for x in xs]
    lhu = lhu_decompose(A, hs, rng, randomize)
    a1, b1, a2, b2 = scalar_oracle(dom, lhu.h_last)
    h1 = dom.sub(dom.mul(a1, b1), dom.mul(b1, a1))
    h2 = dom.sub(dom.mul(a2, b2), dom.mul(b2, a2))
    L1 = lhu.L @ Matrix.diag(dom, xs + [h1])
    U1 = Matrix.diag(dom, xs + [h2]) @ lhu.U
    m = n - 1
    L2, row = L1.sub(0, m, 0, m), L1.sub(m, n, 0, m)
    U2, col = U1.sub(0, m, 0, m), U1.sub(0, m, m, n)
    p = poly_from_roots(dom, xs)
    c1 = block_merge_similarity(L2, row, h1, p, side="lower")
    c2 = block_merge_similarity(U2, col, h2, p, side="upper")
    L3, L4 = tri_zero_trace_commutator(L2)
    U3, U4 = tri_zero_trace_commutator(U2)
    G1 = lhu.P @ c1.P
    G2 = lhu.P @ c2.P
    G1i, G2i = inverse(G1), inverse(G2)
    one = lambda x: Matrix(dom, [[x]], True)  # noqa: E731
    return (G1 @ direct_sum(L3, one(a1)) @ G1i, G1 @ direct_sum(L4, one(b1)) @ G1i,
            G2 @ direct_sum(U3, one(a2)) @ G2i, G2 @ direct_sum(U4, one(b2)) @ G2i)


def two_commutators_quaternion(A: Matrix, seed: int | None = 0) -> FactorizationCertificate:
    """A = [X₁,Y₁]·[X₂,Y₂] over ℍ with [X₁,Y₁] invertible.

    Central input uses the scalar oracle. Invertible noncentral input with
    n ≥ 3 goes through the LHU pivot route; n = 2 and singular input use the
    corner recursion.
    """
    n = _square(A)
    _need_quaternion(A)
    dom = A.domain
    if is_central_matrix(A):
        return _brackets_cert("two-commutators", A, _central_brackets(dom, n, A.rows[0][0]),
                              seed, {"route": "central"})
    if n < 3 or not is_invertible(A):
        return q_gt_n_recursion(A, seed)
    rng = _rng(seed)
    # float: seeded random bases are far better conditioned; keep the best of a few
    best = None
    for attempt in range(1 if dom.exact else FLOAT_ATTEMPTS):
        mats = _lhu_route(A, rng, randomize=not dom.exact)
        cert = FactorizationCertificate("two-commutators", A,
                                        [Part("Commutator", mats[:2], {"invertible": True}),
                                         Part("Commutator", mats[2:])],
                                        "product", seed, aux={"route": "lhu", "attempts": attempt + 1})
        if best is None or cert.residual() < best.residual():
            best = cert
        if dom.exact or best.residual() <= GOOD_RESIDUAL:
            break
    return _check_replay(best)


# SL: multiplicative commutators of skew involutions ----------------------

def _skew_pair_block(dom, g) -> tuple[Matrix, Matrix]:
    """S = [[0, g],[−g⁻¹, 0]], K = [[0,1],[−1,0]] with SKS⁻¹K⁻¹ = diag(g², g⁻²) for real g."""
    z, o = dom.zero(), dom.one()
    S = Matrix(dom, [[z, g], [dom.neg(dom.inv(g)), z]], True)
    K = Matrix(dom, [[z, o], [dom.neg(o), z]], True)
    return S, K


def _skew_factors(dom, layout: list) -> tuple[Matrix, Matrix]:
    """Direct sums of skew involutions from a layout of ('minus1',) / ('pair', g) / ('unit', u)."""
    Ss, Ks = [], []
    for item in layout:
        if item[0] == "minus1":
            Ss.append(Matrix(dom, [[_q(dom, 0, 1)]], True))
            Ks.append(Matrix(dom, [[_q(dom, 0, 0, 1)]], True))
        elif item[0] == "pair":
            S, K = _skew_pair_block(dom, item[1])
            Ss.append(S)
            Ks.append(K)
        else:
            a, b = unit_commutator(dom, item[1])
            Ss.append(Matrix(dom, [[a]], True))
            Ks.append(Matrix(dom, [[b]], True))
    return direct_sum(*Ss), direct_sum(*Ks)


def _normalized_unit(dom, t: Quat) -> Quat:
    r = math.sqrt(t.norm())
    if abs(r * r - 1.0) > 1e-6:
        raise NotSL(f"last pivot has norm {r * r:.9g}")
    return t.scale(1.0 / r)


def _skew_pipeline(A: Matrix, rng, offset: int) -> tuple:
    dom = A.domain
    n = A.nrows
    lhu = lhu_decompose(A, [dom.one()] * (n - 1), rng)
    t = _normalized_unit(dom, lhu.h_last)
    x, y = unit_commutator(dom, t)
    w = Quat(0.5, math.sqrt(3.0) / 2, 0.0, 0.0)
    odd = n % 2
    npairs = (n - odd) // 2 - 1
    hs = [float(k + 2 + offset) for k in range(npairs)]
    V, U = [], []
    lay1, lay2 = [], []
    if odd:
        V.append(dom.from_base(-1))
        U.append(dom.from_base(-1))
        lay1.append(("minus1",))
        lay2.append(("minus1",))
    for h in hs:
        V += [dom.from_base(h * h), dom.from_base(1 / (h * h))]
        U += [dom.one(), dom.one()]
        lay1.append(("pair", dom.from_base(h)))
        lay2.append(("pair", dom.from_base(1 / h)))
    V += [w, y]
    U += [dom.one(), x]
    lay1 += [("unit", w), ("unit", y)]
    lay2 += [("unit", dom.inv(w)), ("unit", dom.inv(y))]
    Um, Vm = Matrix.diag(dom, U), Matrix.diag(dom, V)
    Umi, Vmi = inverse(Um), inverse(Vm)
    M1 = Umi @ lhu.L @ Um @ Vm
    M2 = Vmi @ lhu.U
    c1 = diagonalize_tri_distinct(M1, "pairwise-nonconjugate")
    c2 = diagonalize_tri_distinct(M2, "pairwise-nonconjugate")
    S1, K1 = _skew_factors(dom, lay1)
    S2, K2 = _skew_factors(dom, lay2)
    G1 = lhu.P @ Um @ c1.P
    G2 = lhu.P @ c2.P
    G1i, G2i = inverse(G1), inverse(G2)
    return (G1 @ S1 @ G1i, G1 @ K1 @ G1i, G2 @ S2 @ G2i, G2 @ K2 @ G2i)


def _skew_parts(A: Matrix, seed) -> list:
    n = _square(A)
    dom = A.domain
    if not isinstance(dom, QuaternionFloat):
        raise DomainMismatch("skew_commutators_sl works over float quaternions")
    if not sl_test(A, 1e-7):
        raise NotSL(f"Dieudonné value {dieudonne_value(A):.12g} ≠ 1")
    flags = {"skew_involution": True}
    i, j = Matrix.scalar(dom, n, _q(dom, 0, 1)), Matrix.scalar(dom, n, _q(dom, 0, 0, 1))
    I = Matrix.identity(dom, n)
    if A.equals(I, 1e-9):
        return [Part("MultCommutator", (i, i), flags)]
    if A.equals(-I, 1e-9):
        return [Part("MultCommutator", (i, j), flags)]
    if n < 2:
        raise ShapeMismatch("need n ≥ 2 for noncentral input")
    rng = _rng(seed)
    last = None
    for attempt in range(MAX_RETRIES):
        try:
            S1, K1, S2, K2 = _skew_pipeline(A, rng, attempt)
        except (CentralInput, Singular, PreconditionError) as exc:
            if isinstance(exc, NotSL):
                raise
            last = exc
            continue
        parts = [Part("MultCommutator", (S1, K1), dict(flags)),
                 Part("MultCommutator", (S2, K2), dict(flags))]
        ok = all(((Z @ Z) + I).max_norm() <= 1e-8 for p in parts for Z in p.operands)
        cert = FactorizationCertificate("skew-commutators", A, parts, "product", seed)
        if ok and cert.residual() <= 1e-7:
            return parts
        last = NormResidual(f"attempt {attempt}: residual {cert.residual():.3g}")
    raise RetryExhausted(f"skew pipeline failed: {last}")


def skew_commutators_sl(A: Matrix, seed: int | None = 0) -> FactorizationCertificate:
    """A ∈ SLₙ(ℍ) as a product of at most two multiplicative commutators of skew involutions."""
    parts = _skew_parts(A, seed)
    return _check_replay(FactorizationCertificate("skew-commutators", A, parts, "product", seed))


# SL differences ------------------------------------------------------------

def _random_unitriangular_pair(dom: ScalarDomain, n: int, rng) -> Matrix:
    L = Matrix.identity(dom, n)
    U = Matrix.identity(dom, n)
    for i in range(n):
        for j in range(i):
            L.rows[i][j] = dom.random(rng)
            U.rows[j][i] = dom.random(rng)
    return L @ U


def _positions(n: int):
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def _sl_difference_field(A: Matrix, rng) -> Matrix:
    dom = A.domain
    n = A.nrows
    I = Matrix.identity(dom, n)
    if dom.eq(determinant(I - A), dom.one()):
        return I
    for attempt in range(MAX_RETRIES):
        G = I if attempt == 0 else _random_unitriangular_pair(dom, n, rng)
        beta = determinant(G - A)
        for i, j in _positions(n):
            B1 = G @ (I + Matrix.unit(dom, n, i, j))
            alpha = dom.sub(determinant(B1 - A), beta)
            if dom.is_zero(alpha):
                continue
            t = dom.mul(dom.sub(dom.one(), beta), dom.inv(alpha))
            return G @ (I + Matrix.unit(dom, n, i, j).lscale(t))
    raise RetryExhausted("every shear direction has vanishing cofactor")


def _sl_difference_quat(A: Matrix, rng) -> Matrix:
    """B = G(I + q·e_ij) with a quaternion q solving Ddet(B − A) = 1 in closed form.

    Let Y be G − A with column j replaced by g = G·e_i and write column j of
    G − A as Y·z. Right column operations give Ddet(B − A) = Ddet(Y)·|z_j + q|,
    so q = −z_j + u/Ddet(Y) for any unit u.
    """
    dom = A.domain
    n = A.nrows
    I = Matrix.identity(dom, n)
    if abs(dieudonne_value(I - A) - 1.0) <= 1e-12:
        return I
    for attempt in range(MAX_RETRIES):
        G = I if attempt == 0 else _random_unitriangular_pair(dom, n, rng)
        GA = G - A
        for i, j in _positions(n):
            Y = GA.copy_rows()
            for r in range(n):
                Y[r][j] = G.rows[r][i]
            Y = Matrix(dom, Y, True)
            d0 = dieudonne_value(Y)
            if d0 <= 1e-6:
                continue
            z = solve(Y, GA.col(j))
            s = z.rows[j][0]
            ns = math.sqrt(s.norm())
            u = s.scale(1.0 / ns) if ns > 1e-12 else dom.one()
            q = u.scale(1.0 / d0) - s
            B = G @ (I + Matrix.unit(dom, n, i, j).rscale(q))
            if abs(dieudonne_value(B - A) - 1.0) <= 1e-9:
                return B
    raise RetryExhausted("no shear direction with nonsingular complement")


def sl_difference(A: Matrix, seed: int | None = 0) -> tuple[Matrix, Matrix]:
    """A = B − C with B and C of determinant (Dieudonné value) 1."""
    n = _square(A)
    dom = A.domain
    if n < 2:
        raise ShapeMismatch("need n ≥ 2")
    rng = _rng(seed)
    if dom.commutative:
        B = _sl_difference_field(A, rng)
    elif isinstance(dom, QuaternionFloat):
        B = _sl_difference_quat(A, rng)
    else:
        raise DomainMismatch("sl_difference over ℍ needs the float quaternion domain")
    return B, B - A


def sl_difference_certificate(A: Matrix, seed: int | None = 0) -> FactorizationCertificate:
    B, C = sl_difference(A, seed)
    parts = [Part("Matrix", (B,), {"sl": True}, 0), Part("Matrix", (C,), {"sl": True}, 1)]
    return _check_replay(FactorizationCertificate("sl-difference", A, parts, "difference", seed))


# images of polynomials on skew involutions --------------------------------

def _cyc(q: Quat, k: int) -> Quat:
    # automorphism i → j → k → i applied k times
    for _ in range(k % 3):
        q = Quat(q.a, q.d, q.b, q.c)
    return q


def _eval_on_quats(f: FreePoly, xs: Sequence[Quat]) -> Quat:
    out = Quat(Fraction(0), Fraction(0), Fraction(0), Fraction(0))
    for c, w in f.terms:
        prod = Quat(Fraction(1), Fraction(0), Fraction(0), Fraction(0))
        for v in w:
            prod = prod * xs[v - 1]
        out = out + prod.scale(Fraction(c))
    return out


def pure_witness(f: FreePoly) -> tuple[tuple, tuple]:
    """Exact rational quaternion tuples s₊, s₋ with f(s₊) = i and f(s₋) = −i.

    Each basis tuple from {1, i, j, k} evaluates to a real multiple of a single
    basis unit. If some tuple lands on a pure unit, rescaling one variable and
    a cyclic automorphism of ℍ move it to ±i. If none does, f only takes real
    values on ℍ and no witness exists.
    """
    if not is_multilinear(f) or f.nvars == 0:
        raise NotMultilinear("witness search needs a multilinear polynomial")
    if not isinstance(f.domain, type(QQ)):
        raise UnsupportedPolynomial("witnesses need rational coefficients")
    one = Fraction(1)
    z = Fraction(0)
    basis = [Quat(one, z, z, z), Quat(z, one, z, z), Quat(z, z, one, z), Quat(z, z, z, one)]
    m = f.nvars
    budget = 4 ** min(m, 8)
    for count, idx in enumerate(itertools.product(range(4), repeat=m)):
        if count >= budget:
            break
        xs = [basis[t] for t in idx]
        v = _eval_on_quats(f, xs)
        for k, coeff in ((1, v.b), (2, v.c), (3, v.d)):
            if coeff != 0:
                shift = (4 - k) % 3  # j needs two steps, k one, i none
                xs2 = [_cyc(x, shift) for x in xs]
                plus = [xs2[0].scale(1 / coeff)] + xs2[1:]
                minus = [plus[0].scale(-1)] + plus[1:]
                return tuple(plus), tuple(minus)
    raise UnsupportedPolynomial(f"polynomial of degree {f.degree} with {len(f.terms)} terms "
                                "takes only real values on ℍ; no pure witness exists")


def theorem_real_decomposition(A: Matrix, polys, seed: int | None = 0) -> FactorizationCertificate:
    """A = Π₂ mult-commutators − Π₂ mult-commutators of skew involutions in p_k-images.

    ``polys`` is one polynomial (used for all eight operands) or a list of eight.
    """
    n = _square(A)
    dom = A.domain
    if not isinstance(dom, QuaternionFloat):
        raise DomainMismatch("theorem_real_decomposition works over float quaternions")
    if isinstance(polys, (str, FreePoly)):
        polys = [polys] * 8
    polys = [parse_poly(p, QQ) if isinstance(p, str) else p for p in polys]
    if len(polys) != 8:
        raise ShapeMismatch("need eight polynomials")
    wits = [pure_witness(f) for f in polys]
    B, C = sl_difference(A, seed)
    i_mat = Matrix.scalar(dom, n, _q(dom, 0, 1))
    parts = []
    for g, half in enumerate((B, C)):
        ps = _skew_parts(half, seed)
        if len(ps) == 1:
            ps.append(Part("MultCommutator", (i_mat, i_mat), {"skew_involution": True}))
        for p in ps:
            p.group = g
        parts += ps
    witnesses = []
    k = 0
    for pi, part in enumerate(parts):
        for oi, Z in enumerate(part.operands):
            f = polys[k]
            plus, minus = wits[k]
            sf = skew_involution_form(Z, _q(dom, 0, 1))
            r = sf.aux["r"]
            P, Pi = sf.P, inverse(sf.P)
            args = tuple(P @ Matrix.diag(dom, [dom.coerce(plus[v])] * r + [dom.coerce(minus[v])] * (n - r)) @ Pi
                         for v in range(f.nvars))
            witnesses.append(Witness(pi, oi, str(f), args))
            k += 1
    cert = FactorizationCertificate("theorem-real", A, parts, "difference", seed,
                                    tolerances={"replay": 1e-5, "operand": 1e-7, "sl": 1e-7,
                                                "witness": 1e-7},
                                    witnesses=witnesses)
    return _check_replay(cert)


# Waring-type 2×2 splittings -----------------------------------------------

def waring_split_2x2(A: Matrix, case: str | None = None) -> FactorizationCertificate:
    """Exact 2×2 identities behind M₂(D) = p(M₂(D)).

    Cases: 'diag' (b = c = 0), 'b' (b ≠ 0), 'c' (c ≠ 0). ``case`` forces a
    display when its hypothesis holds. Each non-conjugator part carries a
    ``subfield`` flag naming θ; its entries commute with θ.
    """
    if A.shape != (2, 2):
        raise ShapeMismatch("waring_split_2x2 needs a 2×2 matrix")
    dom = A.domain
    (a, b), (c, d) = A.rows
    z, o = dom.zero(), dom.one()
    m1 = dom.neg(o)
    mul, sub, inv, fmt = dom.mul, dom.sub, dom.inv, dom.format
    if case is None:
        case = "b" if not dom.is_zero(b) else ("c" if not dom.is_zero(c) else "diag")
    if case == "b" and dom.is_zero(b) or case == "c" and dom.is_zero(c) \
            or case == "diag" and not (dom.is_zero(b) and dom.is_zero(c)):
        raise PreconditionError(f"case {case!r} does not apply", f"hypothesis of case {case!r}")
    M = lambda rows: Matrix(dom, rows, True)  # noqa: E731
    if case == "diag":
        parts = [Part("Matrix", (M([[z, a], [o, z]]),), {"subfield": fmt(a)}),
                 Part("Matrix", (M([[z, d], [o, z]]),), {"subfield": fmt(d)})]
        theta = [a, d]
    elif case == "b":
        bi = inv(b)
        t1 = sub(mul(bi, a), mul(d, bi))
        t2 = sub(mul(c, b), mul(mul(mul(d, bi), a), b))
        N = M([[bi, z], [mul(bi, a), o]])
        parts = [Part("Matrix", (M([[m1, z], [t1, o]]),), {"subfield": fmt(t1)}),
                 Part("Inverse", (N,)),
                 Part("Matrix", (M([[z, m1], [t2, z]]),), {"subfield": fmt(t2)}),
                 Part("Matrix", (N,))]
        theta = [t1, t2]
    elif case == "c":
        ci = inv(c)
        t3 = sub(mul(mul(mul(a, ci), d), c), mul(b, c))
        t4 = sub(mul(ci, d), mul(a, ci))
        N = M([[o, dom.neg(mul(a, ci))], [z, ci]])
        parts = [Part("Inverse", (N,)),
                 Part("Matrix", (M([[z, t3], [o, z]]),), {"subfield": fmt(t3)}),
                 Part("Matrix", (N,)),
                 Part("Matrix", (M([[o, t4], [z, m1]]),), {"subfield": fmt(t4)})]
        theta = [t3, t4]
    else:
        raise ValueError("case must be 'diag', 'b' or 'c'")
    cert = FactorizationCertificate("waring", A, parts, "product", None,
                                    aux={"case": case, "theta": theta})
    return _check_replay(cert)


# scalar quaternions -----------------------------------------------------------

def quat_difference_certificate(q: Scalar) -> FactorizationCertificate:
    """q = u − v with unit-norm u, v (needs ‖q‖ ≤ 2)."""
    dom = q.domain
    if not isinstance(dom, QuaternionFloat):
        raise DomainMismatch("unit-norm differences need float quaternions")
    u, v = diff_unit_norms(dom, q.value)
    one = lambda x: Matrix(dom, [[x]], True)  # noqa: E731
    parts = [Part("Matrix", (one(u),), {"unit_norm": True}, 0),
             Part("Matrix", (one(v),), {"unit_norm": True}, 1)]
    return _check_replay(FactorizationCertificate("quat-difference", one(q.value), parts,
                                                  "difference", None))


def quat_commutator_certificate(q: Scalar) -> FactorizationCertificate:
    """A unit q as aba⁻¹b⁻¹ with a² = b² = −1; otherwise q = (unit) − (unit), each such a commutator."""
    dom = q.domain
    if not isinstance(dom, QuaternionFloat):
        raise DomainMismatch("multiplicative commutators need float quaternions")
    one = lambda x: Matrix(dom, [[x]], True)  # noqa: E731
    flags = {"skew_involution": True}
    if abs(q.value.norm() - 1.0) <= dom.tolerance:
        a, b = unit_commutator(dom, q.value)
        parts = [Part("MultCommutator", (one(a), one(b)), dict(flags))]
        rule = "product"
    else:
        u, v = diff_unit_norms(dom, q.value)
        parts = []
        for g, w in enumerate((u, v)):
            a, b = unit_commutator(dom, w)
            parts.append(Part("MultCommutator", (one(a), one(b)), dict(flags), g))
        rule = "difference"
    return _check_replay(FactorizationCertificate("quat-commutator", one(q.value), parts, rule, None))
