"""Similarity decompositions over division rings.

Every routine returns a ``SimilarityCertificate`` (or a small dataclass) whose
fields satisfy ``P⁻¹·input·P = canonical``; ``replay`` checks that identity by
direct multiplication.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (CentralInput, ConjugateDiagonal, HypothesisViolated,
                     Invertible, Nilpotent, NonzeroTrace, NoScalarSkewInvolution,
                     NotNilpotent, NotSkewInvolution, NotTriangular,
                     RetryExhausted, ShapeMismatch, Singular)
from .matcore import (Matrix, block, column_rank, direct_sum, extend_to_basis,
                      inverse, is_central_matrix, is_invertible,
                      is_lower_triangular, is_upper_triangular, non_eigenvector,
                      null_space, poly_eval, row_reduce, trace)
from .scalars import PrimeField, Quat, QuaternionFloat, ScalarDomain

MAX_RETRIES = 64


@dataclass
class SimilarityCertificate:
    input: Matrix
    P: Matrix
    canonical: Matrix
    kind: str
    aux: dict = field(default_factory=dict)

    def residual(self) -> float:
        return (inverse(self.P) @ self.input @ self.P).residual(self.canonical)

    def replay(self, tol: float | None = None) -> bool:
        lhs = inverse(self.P) @ self.input @ self.P
        return lhs.equals(self.canonical, tol)


def _square(A: Matrix) -> int:
    if not A.is_square:
        raise ShapeMismatch(f"expected a square matrix, got {A.shape}")
    return A.nrows


def _basis_vector(dom: ScalarDomain, n: int, i: int) -> Matrix:
    return Matrix.column(dom, [dom.one() if k == i else dom.zero() for k in range(n)])


def _random_independent(vectors: list, n: int, dom: ScalarDomain, rng) -> list:
    out = list(vectors)
    while len(out) < n:
        v = Matrix.column(dom, [dom.random(rng) for _ in range(n)])
        if column_rank(out + [v]) == len(out) + 1:
            out.append(v)
    return out


def _qdot(u: Matrix, x: Matrix):
    """Σ conj(u_i)·x_i for float quaternion columns."""
    out = Quat(0.0, 0.0, 0.0, 0.0)
    for (a,), (b,) in zip(u.rows, x.rows):
        out = out + a.conj() * b
    return out


def _orthonormalize(vectors: list) -> list:
    """Gram–Schmidt for right-linear spans of float quaternion columns."""
    out = []
    for x in vectors:
        for u in out:
            x = x - u.rscale(_qdot(u, x))
        nrm = math.sqrt(_qdot(x, x).a)
        if nrm <= 1e-12:
            return []
        out.append(x.rscale(Quat(1.0 / nrm, 0.0, 0.0, 0.0)))
    return out


def _float_pivot_basis(M: Matrix, h1, rng, tries: int = 16) -> list | None:
    """Basis (v, Mv − vh₁, orthonormal rest) with v chosen so the first two columns are far from parallel."""
    dom = M.domain
    n = M.nrows
    best, best_q = None, 0.0
    for _ in range(tries):
        v = Matrix.column(dom, [dom.random(rng) for _ in range(n)])
        v = v.rscale(Quat(1.0 / math.sqrt(_qdot(v, v).a), 0.0, 0.0, 0.0))
        w = M @ v - v.rscale(h1)
        wn = math.sqrt(_qdot(w, w).a)
        if wn <= 1e-9:
            continue
        w = w.rscale(Quat(1.0 / wn, 0.0, 0.0, 0.0))
        # |⟨v,w⟩| near 1 means nearly dependent
        q = 1.0 - math.sqrt(_qdot(v, w).norm())
        if q > best_q:
            best, best_q = (v, w), q
    if best is None or best_q < 1e-6:
        return None
    v, w = best
    ortho = _orthonormalize([v, w])
    if not ortho:
        return None
    for k in range(n):
        e = _basis_vector(dom, n, k)
        cand = _orthonormalize(ortho + [e])
        if cand:
            ortho = cand
        if len(ortho) == n:
            break
    return [v, w] + ortho[2:]


def _random_non_eigenvector(A: Matrix, rng) -> Matrix:
    dom = A.domain
    for _ in range(1000):
        v = Matrix.column(dom, [dom.random(rng) for _ in range(A.nrows)])
        if column_rank([v, A @ v]) == 2:
            return v
    return non_eigenvector(A)


# Rowen form ---------------------------------------------------------------

def rowen_form(A: Matrix, rng=None) -> SimilarityCertificate:
    """Similar matrix with (1,1) entry zero: basis (v, Av, ...) for a non-eigenvector v.

    With ``rng`` the vector and the basis extension are drawn at random, which
    is how callers ask for a different conjugate.
    """
    n = _square(A)
    if is_central_matrix(A):
        raise CentralInput("central matrix has no Rowen form with zero corner")
    dom = A.domain
    if rng is None:
        v = non_eigenvector(A)
        basis = extend_to_basis([v, A @ v], n)
    else:
        v = _random_non_eigenvector(A, rng)
        basis = _random_independent([v, A @ v], n, dom, rng)
    P = Matrix.from_columns(dom, basis)
    return SimilarityCertificate(A, P, inverse(P) @ A @ P, "rowen")


# Sylvester ----------------------------------------------------------------

def poly_from_roots(dom: ScalarDomain, roots: Sequence) -> list:
    """Coefficients (lowest first) of Π (t − r) for central roots r."""
    coeffs = [dom.one()]
    for r in roots:
        nxt = [dom.zero()] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] = dom.add(nxt[k + 1], c)
            nxt[k] = dom.sub(nxt[k], dom.mul(r, c))
        coeffs = nxt
    return coeffs


def _central_coeffs(dom: ScalarDomain, p: Sequence) -> list:
    return [c if isinstance(c, Quat) else dom.coerce(c) for c in p]


def _telescope(A: Matrix, B: Matrix, C: Matrix, p: list) -> Matrix:
    """X₀ = Σ_k c_k Σ_{i+j=k−1} A^i C B^j, so that A X₀ − X₀ B = p(A) C − C p(B)."""
    dom = A.domain
    X0 = Matrix.zeros(dom, C.nrows, C.ncols)
    S = C  # S_k = Σ_{i+j=k−1} A^i C B^j
    Bk = B
    for k in range(1, len(p)):
        if not dom.is_zero(p[k]):
            X0 = X0 + S.rscale(p[k])
        S = A @ S + C @ Bk
        Bk = Bk @ B
    return X0


def sylvester_solve(A: Matrix, B: Matrix, C: Matrix, p: Sequence) -> Matrix:
    """The unique X with AX − XB = C, given a central polynomial p with p(A) = 0, p(B) invertible.

    The mirrored hypothesis p(B) = 0 with p(A) invertible is accepted too.
    """
    n, m = _square(A), _square(B)
    if C.shape != (n, m):
        raise ShapeMismatch(f"C must be {n}×{m}")
    dom = A.domain
    p = _central_coeffs(dom, p)
    pA, pB = poly_eval(p, A), poly_eval(p, B)
    tol = None if dom.exact else dom.tolerance * 1e3
    if pA.equals(Matrix.zeros(dom, n), tol) and is_invertible(pB):
        return -(_telescope(A, B, C, p) @ inverse(pB))
    if pB.equals(Matrix.zeros(dom, m), tol) and is_invertible(pA):
        return inverse(pA) @ _telescope(A, B, C, p)
    raise HypothesisViolated("need p(A) = 0 with p(B) invertible (or the mirror)")


def block_merge_similarity(B: Matrix, alpha: Matrix, a, p: Sequence,
                           side: str = "upper") -> SimilarityCertificate:
    """Split [[B, α],[0, a]] (or [[B, 0],[α, a]] for side='lower') into B ⊕ a.

    Upper: y solves By − ya = α and P = [[I, −y],[0, 1]].
    Lower: y solves ay − yB = −α and P = [[I, 0],[y, 1]].
    """
    n = _square(B)
    dom = B.domain
    one = Matrix.identity(dom, 1)
    a_m = Matrix(dom, [[a]], True)
    In = Matrix.identity(dom, n)
    if side == "upper":
        y = sylvester_solve(B, a_m, alpha, p)
        M = block([[B, alpha], [Matrix.zeros(dom, 1, n), a_m]])
        P = block([[In, -y], [Matrix.zeros(dom, 1, n), one]])
    elif side == "lower":
        y = sylvester_solve(a_m, B, -alpha, p)
        M = block([[B, Matrix.zeros(dom, n, 1)], [alpha, a_m]])
        P = block([[In, Matrix.zeros(dom, n, 1)], [y, one]])
    else:
        raise ValueError("side must be 'upper' or 'lower'")
    return SimilarityCertificate(M, P, direct_sum(B, a_m), "block_merge", {"y": y})


# LHU ----------------------------------------------------------------------

@dataclass
class LHUDecomposition:
    input: Matrix
    P: Matrix
    L: Matrix
    H: Matrix
    U: Matrix
    h_last: object
    attempts: int = 1

    def replay(self, tol: float | None = None) -> bool:
        return (inverse(self.P) @ self.input @ self.P).equals(self.L @ self.H @ self.U, tol)

    def residual(self) -> float:
        return (inverse(self.P) @ self.input @ self.P).residual(self.L @ self.H @ self.U)


class _Retry(Exception):
    pass


def _lhu_step(M: Matrix, hs: list, rng):
    dom = M.domain
    n = M.nrows
    if n == 1:
        h = M.rows[0][0]
        if dom.is_zero(h):
            raise Singular("last pivot vanished")
        I1 = Matrix.identity(dom, 1)
        return I1, I1, I1, h
    if is_central_matrix(M):
        raise _Retry()
    h1 = hs[0]
    basis = None
    if rng is not None and isinstance(dom, QuaternionFloat):
        basis = _float_pivot_basis(M, h1, rng)
    if basis is None:
        v = non_eigenvector(M) if rng is None else _random_non_eigenvector(M, rng)
        w = M @ v - v.rscale(h1)
        basis = extend_to_basis([v, w], n) if rng is None else _random_independent([v, w], n, dom, rng)
    P0 = Matrix.from_columns(dom, basis)
    M0 = inverse(P0) @ M @ P0
    b = M0.sub(0, 1, 1, n)
    c = M0.sub(1, n, 0, 1)
    h1i = dom.inv(h1)
    S = M0.sub(1, n, 1, n) - c.rscale(h1i) @ b
    Q, L1, U1, hn = _lhu_step(S, hs[1:], rng)
    one = Matrix.identity(dom, 1)
    z_row = Matrix.zeros(dom, 1, n - 1)
    z_col = Matrix.zeros(dom, n - 1, 1)
    P = P0 @ direct_sum(one, Q)
    L = block([[one, z_row], [inverse(Q) @ c.rscale(h1i), L1]])
    U = block([[one, b.lscale(h1i) @ Q], [z_col, U1]])
    return P, L, U, hn


def lhu_decompose(A: Matrix, h: Sequence, rng=None, randomize: bool = False) -> LHUDecomposition:
    """P⁻¹AP = L·diag(h_1..h_{n−1}, h_n)·U with the first n−1 pivots prescribed.

    The first attempt uses a deterministic basis unless ``randomize`` is set.
    """
    n = _square(A)
    dom = A.domain
    if n < 2:
        raise ShapeMismatch("need n ≥ 2")
    if len(h) != n - 1 or any(dom.is_zero(x) for x in h):
        raise ShapeMismatch("need n − 1 nonzero prescribed pivots")
    if is_central_matrix(A):
        raise CentralInput("A is central")
    if not is_invertible(A):
        raise Singular("A is singular")
    h = list(h)
    if rng is None:
        rng = np.random.default_rng(0)
    for attempt in range(MAX_RETRIES):
        try:
            P, L, U, hn = _lhu_step(A, h, None if attempt == 0 and not randomize else rng)
        except _Retry:
            continue
        H = Matrix.diag(dom, h + [hn])
        return LHUDecomposition(A, P, L, H, U, hn, attempt + 1)
    raise RetryExhausted(f"LHU failed after {MAX_RETRIES} attempts")


# triangular diagonalization ----------------------------------------------

def quaternions_conjugate(dom: ScalarDomain, a, b) -> bool:
    if dom.commutative:
        return dom.eq(a, b)
    if dom.exact:
        return a.a == b.a and a.norm() == b.norm()
    t = dom.tolerance
    return abs(a.a - b.a) <= t and abs(a.norm() - b.norm()) <= t * max(1.0, a.norm())


def _left_mult(q: Quat) -> list:
    # columns are q·1, q·i, q·j, q·k
    cols = [(q * Quat(*e)).coords() for e in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))]
    return [[cols[c][r] for c in range(4)] for r in range(4)]


def _right_mult(q: Quat) -> list:
    cols = [(Quat(*e) * q).coords() for e in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))]
    return [[cols[c][r] for c in range(4)] for r in range(4)]


def scalar_sylvester(dom: ScalarDomain, a, b, c):
    """x with a x − x b = c; a and b must not be conjugate."""
    if quaternions_conjugate(dom, a, b):
        raise ConjugateDiagonal(f"{dom.format(a)} and {dom.format(b)} are conjugate")
    if dom.commutative or dom.is_central(a):
        return dom.mul(c, dom.inv(dom.sub(a, b)))
    if dom.is_central(b):
        return dom.mul(dom.inv(dom.sub(a, b)), c)
    La, Rb = _left_mult(a), _right_mult(b)
    M = [[La[r][k] - Rb[r][k] for k in range(4)] for r in range(4)]
    rhs = list(c.coords())
    if dom.exact:
        from .scalars import QQ
        sol = inverse(Matrix(QQ, M, True)) @ Matrix.column(QQ, rhs)
        return Quat(*(sol.rows[t][0] for t in range(4)))
    x = np.linalg.solve(np.array(M, dtype=float), np.array(rhs, dtype=float))
    return Quat(*(float(v) for v in x))


def _check_mode(dom, diag, mode):
    n = len(diag)
    if mode == "central-distinct":
        for i in range(n - 1):
            if not dom.is_central(diag[i]):
                raise ConjugateDiagonal(f"entry {i + 1} is not central")
        for i in range(n):
            for j in range(i + 1, n):
                if dom.eq(diag[i], diag[j]):
                    raise ConjugateDiagonal(f"entries {i + 1} and {j + 1} coincide")
    elif mode == "pairwise-nonconjugate":
        for i in range(n):
            for j in range(i + 1, n):
                if quaternions_conjugate(dom, diag[i], diag[j]):
                    raise ConjugateDiagonal(f"entries {i + 1} and {j + 1} are conjugate")
    else:
        raise ValueError(f"unknown mode {mode!r}")


def _diag_upper(T: Matrix) -> Matrix:
    dom = T.domain
    n = T.nrows
    if n == 1:
        return Matrix.identity(dom, 1)
    Prest = _diag_upper(T.sub(1, n, 1, n))
    beta = T.sub(0, 1, 1, n) @ Prest
    a1 = T.rows[0][0]
    x = [scalar_sylvester(dom, a1, T.rows[j][j], dom.neg(beta.rows[0][j - 1])) for j in range(1, n)]
    one = Matrix.identity(dom, 1)
    E = block([[one, Matrix(dom, [x], True)], [Matrix.zeros(dom, n - 1, 1), Matrix.identity(dom, n - 1)]])
    return direct_sum(one, Prest) @ E


def _diag_lower(T: Matrix) -> Matrix:
    dom = T.domain
    n = T.nrows
    if n == 1:
        return Matrix.identity(dom, 1)
    Prest = _diag_lower(T.sub(1, n, 1, n))
    beta = inverse(Prest) @ T.sub(1, n, 0, 1)
    a1 = T.rows[0][0]
    x = [scalar_sylvester(dom, T.rows[j][j], a1, dom.neg(beta.rows[j - 1][0])) for j in range(1, n)]
    one = Matrix.identity(dom, 1)
    E = block([[one, Matrix.zeros(dom, 1, n - 1)], [Matrix.column(dom, x), Matrix.identity(dom, n - 1)]])
    return direct_sum(one, Prest) @ E


def diagonalize_tri_distinct(T: Matrix, mode: str = "pairwise-nonconjugate") -> SimilarityCertificate:
    """Conjugate a triangular matrix with suitably distinct diagonal to its diagonal."""
    _square(T)
    dom = T.domain
    d = T.diagonal()
    _check_mode(dom, d, mode)
    if is_upper_triangular(T):
        P = _diag_upper(T)
    elif is_lower_triangular(T):
        P = _diag_lower(T)
    else:
        raise NotTriangular("matrix is neither upper nor lower triangular")
    return SimilarityCertificate(T, P, Matrix.diag(dom, d), "diagonalize", {"mode": mode})


# nilpotent and Fitting ----------------------------------------------------

def _is_zero_matrix(A: Matrix) -> bool:
    if A.domain.exact:
        return A.is_zero()
    return A.max_norm() <= A.domain.tolerance * 1e3


def jordan_block(dom: ScalarDomain, m: int) -> Matrix:
    J = Matrix.zeros(dom, m)
    for k in range(m - 1):
        J.rows[k][k + 1] = dom.one()
    return J


def nilpotent_jordan(N: Matrix) -> SimilarityCertificate:
    n = _square(N)
    dom = N.domain
    powers = [Matrix.identity(dom, n)]
    while not _is_zero_matrix(powers[-1]):
        if len(powers) > n:
            raise NotNilpotent("N^n ≠ 0")
        powers.append(powers[-1] @ N)
    m = len(powers) - 1  # nilpotency index
    kernels = [[]] + [null_space(powers[k]) for k in range(1, m + 1)]
    tops: list[tuple[Matrix, int]] = []
    for k in range(m, 0, -1):
        base = list(kernels[k - 1])
        for v, j in tops:
            base.append(powers[j - k] @ v)
        r = column_rank(base)
        for cand in kernels[k]:
            if column_rank(base + [cand]) > r:
                base.append(cand)
                r += 1
                tops.append((cand, k))
    cols, sizes = [], []
    for v, k in tops:
        sizes.append(k)
        cols.extend(powers[k - 1 - t] @ v for t in range(k))
    P = Matrix.from_columns(dom, cols)
    canon = direct_sum(*(jordan_block(dom, k) for k in sizes))
    return SimilarityCertificate(N, P, canon, "nilpotent_jordan", {"sizes": sizes})


def fitting_split(A: Matrix) -> SimilarityCertificate:
    """P⁻¹AP = G ⊕ N from im(Aⁿ) ⊕ ker(Aⁿ)."""
    n = _square(A)
    dom = A.domain
    if is_invertible(A):
        raise Invertible("A is invertible")
    An = A ** n
    if _is_zero_matrix(An):
        raise Nilpotent("A is nilpotent")
    rr = row_reduce(An)
    image = [An.col(c) for c in rr.pivots]
    kernel = null_space(An)
    P = Matrix.from_columns(dom, image + kernel)
    g = len(image)
    canon = inverse(P) @ A @ P
    G = canon.sub(0, g, 0, g)
    Nb = canon.sub(g, n, g, n)
    return SimilarityCertificate(A, P, direct_sum(G, Nb), "fitting",
                                 {"G": G, "N": Nb, "split": g})


# skew involutions ---------------------------------------------------------

def find_skew_scalar(dom: ScalarDomain):
    """A central-or-not α with α² = −1, or NoScalarSkewInvolution."""
    if dom.is_quaternion:
        return dom.coerce(Quat(0, 1, 0, 0))
    if isinstance(dom, PrimeField):
        if dom.p == 2:
            return dom.one()
        for x in range(dom.p):
            if (x * x + 1) % dom.p == 0:
                return x
    raise NoScalarSkewInvolution(f"{dom} has no square root of −1")


def skew_involution_form(A: Matrix, alpha=None) -> SimilarityCertificate:
    """Canonical form of A with A² = −I.

    Away from characteristic 2 the canonical form is diag(αI_r, −αI_{n−r}); the
    columns of P are the projections (v ∓ (Av)α)/2 of standard basis vectors onto
    the right eigenspaces {v : Av = ±vα}. Over GF(2) it is [[I,I],[0,I]] ⊕ I.
    """
    n = _square(A)
    dom = A.domain
    I = Matrix.identity(dom, n)
    tol = None if dom.exact else dom.tolerance * 1e3
    if not (A @ A).equals(-I, tol):
        raise NotSkewInvolution("A² ≠ −I")
    if dom.characteristic == 2:
        return _skew_char2(A)
    a = find_skew_scalar(dom) if alpha is None else dom.coerce(alpha)
    if not dom.eq(dom.mul(a, a), dom.neg(dom.one())):
        raise NoScalarSkewInvolution("α² ≠ −1")
    half = dom.inv(dom.from_int(2))
    plus, minus = [], []
    for k in range(n):
        e = _basis_vector(dom, n, k)
        Aea = (A @ e).rscale(a)
        for vec, bucket in (((e - Aea).rscale(half), plus), ((e + Aea).rscale(half), minus)):
            if _is_zero_matrix(vec):
                continue
            if column_rank(plus + minus + [vec]) > len(plus) + len(minus):
                bucket.append(vec)
    P = Matrix.from_columns(dom, plus + minus)
    r = len(plus)
    canon = Matrix.diag(dom, [a] * r + [dom.neg(a)] * (n - r))
    return SimilarityCertificate(A, P, canon, "skew_involution", {"r": r, "alpha": a})


def _skew_char2(A: Matrix) -> SimilarityCertificate:
    n = A.nrows
    dom = A.domain
    N = A + Matrix.identity(dom, n)  # N² = 0
    rr = row_reduce(N)
    r = rr.rank
    ws = [_basis_vector(dom, n, c) for c in rr.pivots]
    images = [N @ w for w in ws]
    kernel = null_space(N)
    rest = []
    cur = list(images)
    base_rank = column_rank(cur)
    for z in kernel:
        if len(cur) == n - r:
            break
        if column_rank(cur + [z]) > base_rank:
            cur.append(z)
            rest.append(z)
            base_rank += 1
    P = Matrix.from_columns(dom, images + ws + rest)
    Ir = Matrix.identity(dom, r)
    top = block([[Ir, Ir], [Matrix.zeros(dom, r), Ir]]) if r else Matrix.zeros(dom, 0)
    canon = direct_sum(top, Matrix.identity(dom, n - 2 * r)) if r else Matrix.identity(dom, n)
    return SimilarityCertificate(A, P, canon, "skew_involution", {"r": r})


# triangular trace-zero commutator ----------------------------------------

def _upper_commutator(T: Matrix) -> tuple[Matrix, Matrix]:
    dom = T.domain
    n = T.nrows
    X = jordan_block(dom, n)
    Y = Matrix.zeros(dom, n)
    # subdiagonal of Y from partial sums of the diagonal of T
    s = dom.zero()
    for k in range(1, n):
        s = dom.add(s, T.rows[k - 1][k - 1])
        Y.rows[k][k - 1] = s
    # offset e = d − 1 ≥ 0 of Y from diagonal d of T, chain seeded with 0
    for d in range(1, n):
        e = d - 1
        s = dom.zero()
        for i in range(0, n - d):
            s = dom.add(s, T.rows[i][i + d])
            Y.rows[i + 1][i + 1 + e] = s
    return X, Y


def tri_zero_trace_commutator(T: Matrix) -> tuple[Matrix, Matrix]:
    """(X, Y) with XY − YX = T for triangular T of trace zero."""
    _square(T)
    dom = T.domain
    tr = trace(T)
    if not dom.is_zero(tr):
        raise NonzeroTrace("trace(T) ≠ 0")
    if is_upper_triangular(T):
        return _upper_commutator(T)
    if is_lower_triangular(T):
        # X has 0/1 entries, so transposition reverses products: T = [Yᵀ, Xᵀ]
        X, Y = _upper_commutator(T.transpose())
        return Y.transpose(), X.transpose()
    raise NotTriangular("matrix is neither upper nor lower triangular")


# zero diagonal -------------------------------------------------------------

def _zero_diag(A: Matrix, rng) -> Matrix:
    dom = A.domain
    n = A.nrows
    if A.is_zero():
        return Matrix.identity(dom, n)
    if n == 1:
        raise _Retry()  # unreachable for trace-zero input
    if is_central_matrix(A):
        raise _Retry()
    cert = rowen_form(A, rng)
    M = cert.canonical
    Q = _zero_diag(M.sub(1, n, 1, n), rng)
    return cert.P @ direct_sum(Matrix.identity(dom, 1), Q)


def zero_diagonal_form(A: Matrix, rng=None) -> SimilarityCertificate:
    """Similar matrix with zero diagonal, for trace-zero A."""
    _square(A)
    dom = A.domain
    if not dom.is_zero(trace(A)):
        raise NonzeroTrace("trace(A) ≠ 0")
    if is_central_matrix(A) and not A.is_zero():
        raise CentralInput("nonzero scalar matrix cannot have zero diagonal")
    if rng is None:
        rng = np.random.default_rng(0)
    for attempt in range(MAX_RETRIES):
        try:
            P = _zero_diag(A, None if attempt == 0 else rng)
        except _Retry:
            continue
        canon = inverse(P) @ A @ P
        return SimilarityCertificate(A, P, canon, "zero_diagonal", {"attempts": attempt + 1})
    raise RetryExhausted(f"zero-diagonal search failed after {MAX_RETRIES} attempts")
