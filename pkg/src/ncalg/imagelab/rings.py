"""Small matrix rings over GF(p) as integer IDs with dense operation tables.

An n×n matrix with entries in GF(p) is encoded as Σ a_rc·p^(r·n + c). Sets of
ring elements are boolean masks over the full ID space, so closures are
fixed-point iterations over table lookups.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..errors import BudgetExceeded, InputError
from ..matcore import Matrix
from ..scalars import PrimeField

MAX_IDS = 5000
DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class FiniteRingSpec:
    """M_n(GF(p)) (kind 'full') or its upper triangular subring T_n (kind 'upper')."""

    n: int
    p: int
    budget: int = DEFAULT_BUDGET
    kind: str = "full"

    def __post_init__(self):
        PrimeField(self.p)  # validates p
        if self.n < 1:
            raise InputError("n ≥ 1")
        if self.kind not in ("full", "upper"):
            raise InputError(f"unknown ring kind {self.kind!r}")
        if self.p ** (self.n * self.n) > MAX_IDS:
            raise BudgetExceeded(f"{self.p}^{self.n * self.n} matrices exceed the table cap {MAX_IDS}")

    # encoding -----------------------------------------------------------
    @property
    def size_ids(self) -> int:
        return self.p ** (self.n * self.n)

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.p)

    def label(self) -> str:
        base = f"{self.n}x{self.n}@{self.p}"
        return base if self.kind == "full" else f"T{self.n}@{self.p}"

    def __str__(self) -> str:
        return self.label()

    @cached_property
    def digits(self) -> np.ndarray:
        """(N, n, n) entry array for every ID."""
        ids = np.arange(self.size_ids)
        n2 = self.n * self.n
        pw = self.p ** np.arange(n2)
        return ((ids[:, None] // pw[None, :]) % self.p).reshape(-1, self.n, self.n)

    def encode_array(self, ent: np.ndarray) -> np.ndarray:
        n2 = self.n * self.n
        pw = self.p ** np.arange(n2)
        return (ent.reshape(ent.shape[:-2] + (n2,)) % self.p) @ pw

    def encode(self, M: Matrix) -> int:
        if M.shape != (self.n, self.n):
            raise InputError(f"expected a {self.n}×{self.n} matrix")
        return int(self.encode_array(np.array([[int(x) for x in r] for r in M.rows])))

    def decode(self, x: int) -> Matrix:
        return Matrix(self.field, self.digits[int(x)].tolist())

    # tables -------------------------------------------------------------
    @cached_property
    def add(self) -> np.ndarray:
        D = self.digits
        out = np.empty((self.size_ids, self.size_ids), dtype=np.int32)
        for i in range(self.size_ids):
            out[i] = self.encode_array(D[i][None] + D)
        return out

    @cached_property
    def mul(self) -> np.ndarray:
        D = self.digits
        out = np.empty((self.size_ids, self.size_ids), dtype=np.int32)
        for i in range(self.size_ids):
            out[i] = self.encode_array(np.einsum("ij,bjk->bik", D[i], D))
        return out

    @cached_property
    def neg(self) -> np.ndarray:
        return self.encode_array(-self.digits).astype(np.int32)

    @cached_property
    def scale(self) -> np.ndarray:
        """scale[c, x] = c·x for c in GF(p)."""
        return np.stack([self.encode_array(c * self.digits) for c in range(self.p)]).astype(np.int32)

    @property
    def zero(self) -> int:
        return 0

    @cached_property
    def one(self) -> int:
        return int(self.encode_array(np.eye(self.n, dtype=np.int64)))

    # structure ----------------------------------------------------------
    @cached_property
    def element_mask(self) -> np.ndarray:
        if self.kind == "full":
            return np.ones(self.size_ids, dtype=bool)
        lower = np.tril(np.ones((self.n, self.n), dtype=bool), -1)
        return ~(self.digits[:, lower] != 0).any(axis=1)

    @cached_property
    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.element_mask).astype(np.int32)

    @property
    def order(self) -> int:
        return int(self.element_mask.sum())

    @cached_property
    def basis(self) -> np.ndarray:
        """Matrix units spanning the ring over GF(p)."""
        out = []
        for r in range(self.n):
            for c in range(self.n):
                if self.kind == "upper" and c < r:
                    continue
                e = np.zeros((self.n, self.n), dtype=np.int64)
                e[r, c] = 1
                out.append(int(self.encode_array(e)))
        return np.array(out, dtype=np.int32)

    @cached_property
    def center_mask(self) -> np.ndarray:
        E = self.elements
        m = np.zeros(self.size_ids, dtype=bool)
        for x in E:
            if np.array_equal(self.mul[x, self.basis], self.mul[self.basis, x]):
                m[x] = True
        return m

    def mask(self, ids) -> np.ndarray:
        m = np.zeros(self.size_ids, dtype=bool)
        m[np.asarray(list(ids), dtype=np.int64)] = True
        return m

    def mask_from_matrices(self, mats) -> np.ndarray:
        return self.mask([self.encode(M) for M in mats])

    def matrices(self, mask: np.ndarray) -> list[Matrix]:
        return [self.decode(x) for x in np.flatnonzero(mask)]

    def tuples_needed(self, m: int) -> int:
        return self.order ** m


_RING_RE = re.compile(r"^\s*(?:(\d+)x(\d+)|T(\d+))\s*@\s*(\d+)\s*$")


def parse_ring(text: str, budget: int = DEFAULT_BUDGET) -> FiniteRingSpec:
    """'2x2@3' for M₂(GF(3)); 'T3@2' for upper triangular 3×3 over GF(2)."""
    m = _RING_RE.match(text)
    if not m:
        raise InputError(f"ring spec {text!r} is not of the form NxN@p or TN@p")
    if m.group(3):
        return FiniteRingSpec(int(m.group(3)), int(m.group(4)), budget, "upper")
    if m.group(1) != m.group(2):
        raise InputError("only square matrix rings")
    return FiniteRingSpec(int(m.group(1)), int(m.group(4)), budget)


# closures ---------------------------------------------------------------

def additive_closure(R: FiniteRingSpec, S: np.ndarray) -> np.ndarray:
    """Additive subgroup generated by S (the GF(p)-span, since pR = 0)."""
    gens = np.flatnonzero(S)
    C = np.zeros(R.size_ids, dtype=bool)
    C[0] = True
    frontier = np.array([0], dtype=np.int64)
    while frontier.size and gens.size:
        cand = R.add[np.ix_(frontier, gens)].ravel()
        new = np.unique(cand[~C[cand]])
        C[new] = True
        frontier = new
    return C


def product_set(R: FiniteRingSpec, *sets: np.ndarray) -> np.ndarray:
    """{x₁x₂⋯x_k : x_i ∈ S_i}"""
    cur = sets[0].copy()
    for S in sets[1:]:
        a, b = np.flatnonzero(cur), np.flatnonzero(S)
        cur = np.zeros(R.size_ids, dtype=bool)
        if a.size and b.size:
            cur[R.mul[np.ix_(a, b)].ravel()] = True
    return cur


def product_power(R: FiniteRingSpec, S: np.ndarray, k: int) -> np.ndarray:
    return product_set(R, *([S] * k))


def subring_closure(R: FiniteRingSpec, S: np.ndarray) -> np.ndarray:
    """Closure under +, − and · (no unit adjoined)."""
    C = additive_closure(R, S)
    while True:
        nxt = additive_closure(R, C | product_set(R, C, C))
        if np.array_equal(nxt, C):
            return C
        C = nxt


def ideal_closure(R: FiniteRingSpec, S: np.ndarray) -> np.ndarray:
    """Two-sided ideal of a unital ring generated by S."""
    units = np.zeros(R.size_ids, dtype=bool)
    units[R.basis] = True
    units[R.one] = True
    C = additive_closure(R, S)
    while True:
        nxt = additive_closure(R, C | product_set(R, units, C) | product_set(R, C, units))
        if np.array_equal(nxt, C):
            return C
        C = nxt


def commutator_set(R: FiniteRingSpec, S: np.ndarray, T: np.ndarray) -> np.ndarray:
    a, b = np.flatnonzero(S), np.flatnonzero(T)
    out = np.zeros(R.size_ids, dtype=bool)
    if a.size and b.size:
        ab = R.mul[np.ix_(a, b)]
        ba = R.mul[np.ix_(b, a)].T
        out[R.add[ab, R.neg[ba]].ravel()] = True
    return out


def commutator_span(R: FiniteRingSpec) -> np.ndarray:
    """[R, R]⁺, spanned by brackets of basis elements."""
    B = R.mask(R.basis)
    return additive_closure(R, commutator_set(R, B, B))


def commutator_ideal(R: FiniteRingSpec) -> np.ndarray:
    return ideal_closure(R, commutator_span(R))
