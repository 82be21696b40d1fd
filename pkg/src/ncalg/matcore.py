"""Dense matrices over a scalar domain, with elimination over division rings.

Conventions: vectors are columns spanning a right D-space, and row operations
multiply on the left. Entries are raw domain values; ``A[i, j]`` returns one.
Matrices are treated as immutable once built.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (CentralInput, DomainMismatch, InputError, ShapeMismatch,
                     Singular)
from .scalars import (PrimeField, Quat, QuaternionFloat, QuaternionRational,
                      Scalar, ScalarDomain)


class Matrix:
    __slots__ = ("domain", "rows", "nrows", "ncols")

    def __init__(self, domain: ScalarDomain, rows: Sequence[Sequence], _trusted: bool = False):
        self.domain = domain
        if _trusted:
            self.rows = rows
        else:
            self.rows = [[domain.coerce(x.value if isinstance(x, Scalar) else x) for x in r]
                         for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if not _trusted and any(len(r) != self.ncols for r in self.rows):
            raise ShapeMismatch("ragged rows")

    # constructors
    @classmethod
    def zeros(cls, domain: ScalarDomain, r: int, c: int | None = None) -> "Matrix":
        c = r if c is None else c
        z = domain.zero()
        return cls(domain, [[z] * c for _ in range(r)], True)

    @classmethod
    def identity(cls, domain: ScalarDomain, n: int) -> "Matrix":
        return cls.scalar(domain, n, domain.one())

    @classmethod
    def scalar(cls, domain: ScalarDomain, n: int, x) -> "Matrix":
        z = domain.zero()
        return cls(domain, [[x if i == j else z for j in range(n)] for i in range(n)], True)

    @classmethod
    def diag(cls, domain: ScalarDomain, entries: Sequence) -> "Matrix":
        n = len(entries)
        z = domain.zero()
        return cls(domain, [[entries[i] if i == j else z for j in range(n)] for i in range(n)], True)

    @classmethod
    def unit(cls, domain: ScalarDomain, n: int, i: int, j: int) -> "Matrix":
        """e_ij with 0-based indices."""
        m = cls.zeros(domain, n)
        m.rows[i][j] = domain.one()
        return m

    @classmethod
    def column(cls, domain: ScalarDomain, entries: Sequence) -> "Matrix":
        return cls(domain, [[x] for x in entries], True)

    @classmethod
    def from_columns(cls, domain: ScalarDomain, cols: Sequence["Matrix"]) -> "Matrix":
        n = cols[0].nrows
        return cls(domain, [[c.rows[i][0] for c in cols] for i in range(n)], True)

    @classmethod
    def random(cls, domain: ScalarDomain, n: int, rng, m: int | None = None) -> "Matrix":
        m = n if m is None else m
        return cls(domain, [[domain.random(rng) for _ in range(m)] for _ in range(n)], True)

    # access
    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def col(self, j: int) -> "Matrix":
        return Matrix(self.domain, [[r[j]] for r in self.rows], True)

    def col_values(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def sub(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix(self.domain, [row[c0:c1] for row in self.rows[r0:r1]], True)

    def with_entry(self, i: int, j: int, x) -> "Matrix":
        rows = [list(r) for r in self.rows]
        rows[i][j] = x
        return Matrix(self.domain, rows, True)

    def copy_rows(self) -> list[list]:
        return [list(r) for r in self.rows]

    def diagonal(self) -> list:
        return [self.rows[i][i] for i in range(min(self.nrows, self.ncols))]

    # arithmetic
    def _same(self, other: "Matrix") -> None:
        if not isinstance(other, Matrix):
            raise DomainMismatch(f"expected Matrix, got {type(other).__name__}")
        if other.domain != self.domain:
            raise DomainMismatch(f"{self.domain} vs {other.domain}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        add = self.domain.add
        return Matrix(self.domain, [[add(x, y) for x, y in zip(r, s)]
                                    for r, s in zip(self.rows, other.rows)], True)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} - {other.shape}")
        sub = self.domain.sub
        return Matrix(self.domain, [[sub(x, y) for x, y in zip(r, s)]
                                    for r, s in zip(self.rows, other.rows)], True)

    def __neg__(self) -> "Matrix":
        neg = self.domain.neg
        return Matrix(self.domain, [[neg(x) for x in r] for r in self.rows], True)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        dot = self.domain.dot
        return Matrix(self.domain, [[dot(r, c) for c in cols] for r in self.rows], True)

    def lscale(self, x) -> "Matrix":
        """x·A"""
        mul = self.domain.mul
        return Matrix(self.domain, [[mul(x, y) for y in r] for r in self.rows], True)

    def rscale(self, x) -> "Matrix":
        """A·x"""
        mul = self.domain.mul
        return Matrix(self.domain, [[mul(y, x) for y in r] for r in self.rows], True)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise ShapeMismatch("power of non-square matrix")
        if k < 0:
            return inverse(self) ** (-k)
        out = Matrix.identity(self.domain, self.nrows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def transpose(self) -> "Matrix":
        return Matrix(self.domain, [list(c) for c in zip(*self.rows)], True)

    # comparisons
    def max_norm(self) -> float:
        if isinstance(self.domain, PrimeField):
            return 0.0 if self.is_zero() else 1.0
        best = 0.0
        for r in self.rows:
            for x in r:
                if isinstance(self.domain, QuaternionFloat):
                    m = math.sqrt(x.norm())
                elif isinstance(self.domain, QuaternionRational):
                    m = math.sqrt(float(x.norm()))
                else:
                    m = abs(float(x))
                if m > best:
                    best = m
        return best

    def is_zero(self) -> bool:
        z = self.domain.is_zero
        return all(z(x) for r in self.rows for x in r)

    def equals(self, other: "Matrix", tol: float | None = None) -> bool:
        """Exact equality for exact domains; float uses tol scaled by max(1, ‖·‖max)."""
        self._same(other)
        if self.shape != other.shape:
            return False
        if self.domain.exact:
            return self.rows == other.rows
        t = self.domain.tolerance if tol is None else tol
        scale = max(1.0, self.max_norm(), other.max_norm())
        return (self - other).max_norm() <= t * scale

    def residual(self, other: "Matrix") -> float:
        """Relative max-norm distance, 0 for exact equality."""
        self._same(other)
        if self.domain.exact:
            return 0.0 if self.rows == other.rows else float("inf")
        return (self - other).max_norm() / max(1.0, other.max_norm())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix) or other.domain != self.domain:
            return False
        return self.shape == other.shape and self.equals(other)

    __hash__ = None  # type: ignore[assignment]

    # text
    def to_strings(self) -> list[list[str]]:
        f = self.domain.format
        return [[f(x) for x in r] for r in self.rows]

    def __str__(self) -> str:
        return "; ".join(", ".join(r) for r in self.to_strings())

    def __repr__(self) -> str:
        return f"Matrix({self.domain}, [{self}])"

    def to_numpy_complex(self) -> np.ndarray:
        """Standard 2n×2n complex representation of a quaternion matrix."""
        n, m = self.shape
        out = np.zeros((2 * n, 2 * m), dtype=complex)
        for i, r in enumerate(self.rows):
            for j, q in enumerate(r):
                al = complex(float(q.a), float(q.b))
                be = complex(float(q.c), float(q.d))
                out[2 * i, 2 * j] = al
                out[2 * i, 2 * j + 1] = be
                out[2 * i + 1, 2 * j] = -be.conjugate()
                out[2 * i + 1, 2 * j + 1] = al.conjugate()
        return out


def from_strings(domain: ScalarDomain, rows: Sequence[Sequence[str]]) -> Matrix:
    if not rows or any(len(r) != len(rows[0]) for r in rows) or not rows[0]:
        raise InputError("matrix rows are empty or have different lengths")
    try:
        return Matrix(domain, [[domain.parse(s) for s in r] for r in rows], True)
    except (TypeError, AttributeError) as exc:
        raise InputError("matrix entries must be strings") from exc


def parse_matrix(text: str, domain: ScalarDomain) -> Matrix:
    """Rows separated by ';', entries by ','."""
    rows = [r for r in text.strip().split(";")]
    if not text.strip():
        raise InputError("empty matrix")
    return from_strings(domain, [[e.strip() for e in r.split(",")] for r in rows])


def format_matrix(A: Matrix) -> str:
    return str(A)


# structure helpers

def hstack(blocks: Sequence[Matrix]) -> Matrix:
    dom = blocks[0].domain
    n = blocks[0].nrows
    return Matrix(dom, [sum((list(b.rows[i]) for b in blocks), []) for i in range(n)], True)


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    dom = blocks[0].domain
    return Matrix(dom, [list(r) for b in blocks for r in b.rows], True)


def block(grid: Sequence[Sequence[Matrix]]) -> Matrix:
    return vstack([hstack(row) for row in grid])


def direct_sum(*mats: Matrix) -> Matrix:
    dom = mats[0].domain
    n = sum(m.nrows for m in mats)
    c = sum(m.ncols for m in mats)
    out = Matrix.zeros(dom, n, c)
    r0 = c0 = 0
    for m in mats:
        if m.domain != dom:
            raise DomainMismatch("direct sum across domains")
        for i in range(m.nrows):
            out.rows[r0 + i][c0:c0 + m.ncols] = list(m.rows[i])
        r0 += m.nrows
        c0 += m.ncols
    return out


def trace(A: Matrix):
    if not A.is_square:
        raise ShapeMismatch("trace of non-square matrix")
    s = A.domain.zero()
    for i in range(A.nrows):
        s = A.domain.add(s, A.rows[i][i])
    return s


def is_central_matrix(A: Matrix) -> bool:
    if not A.is_square:
        return False
    dom = A.domain
    x = A.rows[0][0]
    if not dom.is_central(x):
        return False
    n = A.nrows
    for i in range(n):
        for j in range(n):
            y = A.rows[i][j]
            if i == j:
                if not dom.eq(y, x):
                    return False
            elif not dom.is_zero(y):
                return False
    return True


def is_upper_triangular(A: Matrix) -> bool:
    z = A.domain.is_zero
    return all(z(A.rows[i][j]) for i in range(A.nrows) for j in range(min(i, A.ncols)))


def is_lower_triangular(A: Matrix) -> bool:
    z = A.domain.is_zero
    return all(z(A.rows[i][j]) for i in range(A.nrows) for j in range(i + 1, A.ncols))


def poly_eval(coeffs: Sequence, A: Matrix) -> Matrix:
    """Σ c_k A^k for central coefficients given lowest degree first (Horner)."""
    n = A.nrows
    dom = A.domain
    out = Matrix.zeros(dom, n)
    for c in reversed(coeffs):
        out = out @ A + Matrix.scalar(dom, n, dom.from_base(c) if not isinstance(c, Quat) else c)
    return out


# elimination

@dataclass
class RowReduction:
    R: Matrix
    P: Matrix
    rank: int
    pivots: list


def _pivot_row(dom: ScalarDomain, rows: list, col: int, start: int, scale: float):
    if dom.exact:
        for r in range(start, len(rows)):
            if not dom.is_zero(rows[r][col]):
                return r
        return None
    best, best_m = None, 0.0
    for r in range(start, len(rows)):
        m = dom.magnitude(rows[r][col])
        if m > best_m:
            best, best_m = r, m
    if best is None or best_m <= dom.tolerance * scale:
        return None
    return best


def row_reduce(A: Matrix, reduced: bool = True) -> RowReduction:
    """P·A = R with R in (reduced) row-echelon form; left row operations only."""
    dom = A.domain
    n, m = A.shape
    rows = [list(A.rows[i]) + [dom.one() if k == i else dom.zero() for k in range(n)]
            for i in range(n)]
    scale = max(1.0, A.max_norm()) if not dom.exact else 1.0
    mul, sub, inv = dom.mul, dom.sub, dom.inv
    pivots = []
    r = 0
    for c in range(m):
        if r == n:
            break
        pr = _pivot_row(dom, rows, c, r, scale)
        if pr is None:
            if not dom.exact:
                for k in range(r, n):
                    rows[k][c] = dom.zero()
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pinv = inv(rows[r][c])
        rows[r] = [mul(pinv, x) for x in rows[r]]
        rows[r][c] = dom.one()
        prow = rows[r]
        targets = range(n) if reduced else range(r + 1, n)
        for k in targets:
            if k == r:
                continue
            f = rows[k][c]
            if dom.is_zero(f):
                continue
            rows[k] = [sub(x, mul(f, y)) for x, y in zip(rows[k], prow)]
            rows[k][c] = dom.zero()
        pivots.append(c)
        r += 1
    R = Matrix(dom, [row[:m] for row in rows], True)
    P = Matrix(dom, [row[m:] for row in rows], True)
    return RowReduction(R, P, r, pivots)


def rank(A: Matrix) -> int:
    return row_reduce(A, reduced=False).rank


def is_invertible(A: Matrix) -> bool:
    return A.is_square and rank(A) == A.nrows


def inverse(A: Matrix) -> Matrix:
    if not A.is_square:
        raise ShapeMismatch("inverse of non-square matrix")
    rr = row_reduce(A)
    if rr.rank < A.nrows:
        raise Singular(f"rank {rr.rank} < {A.nrows}")
    return rr.P


def null_space(A: Matrix) -> list[Matrix]:
    """Basis of {x : A x = 0} as right-D column vectors."""
    dom = A.domain
    rr = row_reduce(A)
    m = A.ncols
    free = [c for c in range(m) if c not in rr.pivots]
    basis = []
    for f in free:
        x = [dom.zero()] * m
        x[f] = dom.one()
        for row, pc in enumerate(rr.pivots):
            x[pc] = dom.neg(rr.R.rows[row][f])
        basis.append(Matrix.column(dom, x))
    return basis


def solve(A: Matrix, b: Matrix) -> Matrix:
    """Unique x with A x = b for invertible A."""
    return inverse(A) @ b


def column_rank(vectors: Sequence[Matrix]) -> int:
    if not vectors:
        return 0
    return rank(Matrix.from_columns(vectors[0].domain, vectors))


def extend_to_basis(vectors: Sequence[Matrix], n: int, candidates: Iterable[Matrix] | None = None
                    ) -> list[Matrix]:
    """Append candidates (default e_1..e_n) that keep independence until n vectors."""
    dom = vectors[0].domain
    out = list(vectors)
    if candidates is None:
        candidates = [Matrix.column(dom, [dom.one() if k == i else dom.zero() for k in range(n)])
                      for i in range(n)]
    cur = column_rank(out)
    if cur < len(out):
        raise Singular("vectors are dependent")
    for v in candidates:
        if len(out) == n:
            break
        if column_rank(out + [v]) > cur:
            out.append(v)
            cur += 1
    if len(out) < n:
        raise Singular("candidates do not span")
    return out


def commutator(A: Matrix, B: Matrix) -> Matrix:
    return A @ B - B @ A


def mult_commutator(A: Matrix, B: Matrix) -> Matrix:
    return A @ B @ inverse(A) @ inverse(B)


def conjugate(A: Matrix, P: Matrix) -> Matrix:
    """P⁻¹AP"""
    return inverse(P) @ A @ P


def determinant(A: Matrix):
    """Ordinary determinant; fields only."""
    dom = A.domain
    if not dom.commutative:
        raise DomainMismatch("determinant needs a commutative domain")
    if not A.is_square:
        raise ShapeMismatch("determinant of non-square matrix")
    n = A.nrows
    rows = A.copy_rows()
    det = dom.one()
    for c in range(n):
        pr = next((r for r in range(c, n) if not dom.is_zero(rows[r][c])), None)
        if pr is None:
            return dom.zero()
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            det = dom.neg(det)
        piv = rows[c][c]
        det = dom.mul(det, piv)
        pinv = dom.inv(piv)
        for r in range(c + 1, n):
            f = dom.mul(rows[r][c], pinv)
            if not dom.is_zero(f):
                rows[r] = [dom.sub(x, dom.mul(f, y)) for x, y in zip(rows[r], rows[c])]
    return det


def reduced_norm(A: Matrix):
    """det of the complex representation of a quaternion matrix, exact over ℍ(ℚ).

    Row swaps act on the representation as pairs of swaps and shears are
    unimodular, so the value is the product of pivot norms.
    """
    dom = A.domain
    if not dom.is_quaternion:
        raise DomainMismatch("reduced norm is for quaternion matrices")
    if not dom.exact:
        return float(np.linalg.det(A.to_numpy_complex()).real)
    n = A.nrows
    rows = A.copy_rows()
    out = 1
    for c in range(n):
        pr = next((r for r in range(c, n) if not dom.is_zero(rows[r][c])), None)
        if pr is None:
            return 0 * out
        rows[c], rows[pr] = rows[pr], rows[c]
        piv = rows[c][c]
        out = out * piv.norm()
        pinv = dom.inv(piv)
        for r in range(c + 1, n):
            f = dom.mul(rows[r][c], pinv)
            if not dom.is_zero(f):
                rows[r] = [dom.sub(x, dom.mul(f, y)) for x, y in zip(rows[r], rows[c])]
    return out


def dieudonne_value(A: Matrix) -> float:
    """Nonnegative real |Ddet(A)|: square root of the complex-representation determinant."""
    if not A.is_square:
        raise ShapeMismatch("non-square")
    return math.sqrt(max(0.0, float(reduced_norm(A))))


def sl_test(A: Matrix, tol: float | None = None) -> bool:
    dom = A.domain
    if not A.is_square:
        raise ShapeMismatch("non-square")
    if dom.commutative:
        d = determinant(A)
        if dom.is_zero(d):
            raise Singular("determinant is zero")
        return dom.eq(d, dom.one())
    if dom.exact:
        nr = reduced_norm(A)
        if nr == 0:
            raise Singular("reduced norm is zero")
        return nr == 1
    v = dieudonne_value(A)
    t = dom.tolerance if tol is None else tol
    if v <= t:
        raise Singular("Dieudonné value is zero")
    return abs(v - 1.0) <= t


def _candidate_vectors(dom: ScalarDomain, n: int, rng=None):
    def e(i):
        return [dom.one() if k == i else dom.zero() for k in range(n)]

    for i in range(n):
        yield e(i)
    for i in range(n):
        for j in range(i + 1, n):
            v = e(i)
            v[j] = dom.one()
            yield v
    if dom.is_quaternion:
        units = [dom.coerce(Quat(0, 1, 0, 0)), dom.coerce(Quat(0, 0, 1, 0)), dom.coerce(Quat(0, 0, 0, 1))]
        for i in range(n):
            for j in range(i + 1, n):
                for u in units:
                    v = e(i)
                    v[j] = u
                    yield v
    if rng is not None:
        while True:
            yield [dom.random(rng) for _ in range(n)]


def non_eigenvector(A: Matrix, rng=None, skip: int = 0) -> Matrix:
    """v with {v, Av} right-independent; deterministic search order, optional random tail."""
    if not A.is_square:
        raise ShapeMismatch("non-square")
    if is_central_matrix(A):
        raise CentralInput("central matrix: every vector is an eigenvector")
    dom = A.domain
    n = A.nrows
    for idx, v in enumerate(_candidate_vectors(dom, n, rng)):
        vm = Matrix.column(dom, v)
        if idx >= skip and column_rank([vm, A @ vm]) == 2:
            return vm
        if rng is None and idx > 10 * n * n + 50:
            break
    if rng is None:
        import numpy.random as npr
        return non_eigenvector(A, npr.default_rng(0), skip)
    raise CentralInput("no non-eigenvector found")
