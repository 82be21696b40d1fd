"""Polynomial images on small matrix rings and the checks built on them."""
from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import BudgetExceeded, InputError
from ..freealg import FreePoly, p_commutator_poly, parse_poly, standard_poly, tilde_normalize
from ..scalars import PrimeField
from . import kernels
from .rings import (FiniteRingSpec, additive_closure, commutator_ideal, commutator_set,
                    commutator_span, ideal_closure, product_power, subring_closure)

# M₂(GF(2)) sets, rows listed top to bottom
GF4_COPY = ("0,0;0,0", "1,0;0,1", "1,1;1,0", "0,1;1,1")
LIE_EXCEPTION = ("0,0;0,0", "0,1;1,0", "1,1;0,1", "1,0;1,1")

# verdict tags
CENTRAL = "CENTRAL_VALUED"
FULL = "FULL"
CONTAINS_COMMUTATORS = "CONTAINS_[R,R]"
EXC_GF4 = "EXCEPTIONAL_GF4"
EXC_LIE = "EXCEPTIONAL_LIE"
EQUAL = "EQUAL_[R,R]"
EXC_I = "EXCEPTION_I"
EXC_II = "EXCEPTION_II"
REFUTATION = "REFUTATION"
NOT_APPLICABLE = "NOT_APPLICABLE"


def _named_mask(R: FiniteRingSpec, rows: Sequence[str]) -> np.ndarray:
    from ..matcore import parse_matrix
    return R.mask_from_matrices([parse_matrix(t, R.field) for t in rows])


def _is_m2f2(R: FiniteRingSpec) -> bool:
    return R.kind == "full" and R.n == 2 and R.p == 2


def _coerce_poly(f, R: FiniteRingSpec) -> FreePoly:
    dom = R.field
    if isinstance(f, str):
        return parse_poly(f, dom)
    if f.domain == dom:
        return f
    # rational coefficients reduce mod p when denominators allow
    pairs = []
    for c, w in f.terms:
        if hasattr(c, "denominator"):
            if c.denominator % R.p == 0:
                raise InputError(f"coefficient {c} is undefined mod {R.p}")
            c = dom.mul(dom.from_int(c.numerator), dom.inv(dom.from_int(c.denominator)))
        pairs.append((c, w))
    return FreePoly.from_terms(dom, pairs)


def _flatten(f: FreePoly):
    coeffs = np.array([int(c) for c, _ in f.terms], dtype=np.int64)
    ptr = np.zeros(len(f.terms) + 1, dtype=np.int64)
    words = []
    for k, (_, w) in enumerate(f.terms):
        words.extend(v - 1 for v in w)
        ptr[k + 1] = len(words)
    return coeffs, ptr, np.array(words, dtype=np.int64)


@dataclass
class Substitutions:
    var_vals: np.ndarray  # (m, T)
    exhaustive: bool


def substitutions(R: FiniteRingSpec, m: int, seed: int = 0, allow_sampling: bool = True) -> Substitutions:
    """All m-tuples of ring elements, or a seeded sample of ``budget`` tuples."""
    E = R.elements
    m = max(m, 1)
    total = len(E) ** m
    if total <= R.budget:
        idx = np.indices((len(E),) * m).reshape(m, -1)
        return Substitutions(E[idx].astype(np.int32), True)
    if not allow_sampling:
        raise BudgetExceeded(f"{total} substitution tuples exceed the budget {R.budget}")
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, len(E), size=(m, R.budget))
    return Substitutions(E[idx].astype(np.int32), False)


def evaluate_all(f, R: FiniteRingSpec, subs: Substitutions) -> np.ndarray:
    f = _coerce_poly(f, R)
    coeffs, ptr, words = _flatten(f)
    return kernels.eval_poly(subs.var_vals, coeffs, ptr, words, R.mul, R.add, R.scale, R.one)


@dataclass
class ImageSet:
    ring: FiniteRingSpec
    mask: np.ndarray
    exhaustive: bool

    def __len__(self) -> int:
        return int(self.mask.sum())

    def matrices(self):
        return self.ring.matrices(self.mask)


def image_set(f, R: FiniteRingSpec, seed: int = 0, allow_sampling: bool = True) -> ImageSet:
    f = _coerce_poly(f, R)
    subs = substitutions(R, f.nvars, seed, allow_sampling)
    vals = evaluate_all(f, R, subs)
    mask = np.zeros(R.size_ids, dtype=bool)
    mask[vals] = True
    return ImageSet(R, mask, subs.exhaustive)


def is_central_valued(img: ImageSet) -> bool:
    return not (img.mask & ~img.ring.center_mask).any()


# dichotomies on M₂(GF(2)) ---------------------------------------------------

@dataclass
class ImageReport:
    polynomial: str
    ring: str
    exhaustive: bool
    image_size: int
    closures: dict
    verdict: str
    verdicts: dict = field(default_factory=dict)
    product_powers: dict = field(default_factory=dict)
    minimal_N: int | None = None
    witnesses: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"poly": self.polynomial, "ring": self.ring, "exhaustive": self.exhaustive,
                "image_size": self.image_size, "closures": self.closures, "verdict": self.verdict,
                "verdicts": self.verdicts, "product_powers": self.product_powers,
                "minimal_N": self.minimal_N, "witnesses": self.witnesses}


class _M2F2:
    """Cached reference sets for M₂(GF(2))."""

    def __init__(self):
        self.R = FiniteRingSpec(2, 2)
        self.full = self.R.element_mask
        self.gf4 = _named_mask(self.R, GF4_COPY)
        self.lie = _named_mask(self.R, LIE_EXCEPTION)
        self.comm = commutator_span(self.R)


_M2F2_CACHE: list = []


def _m2f2() -> _M2F2:
    if not _M2F2_CACHE:
        _M2F2_CACHE.append(_M2F2())
    return _M2F2_CACHE[0]


def classify_image_m2f2(mask: np.ndarray) -> dict:
    """Verdicts for an image set f(R) ⊆ M₂(GF(2)).

    'products': (f(R)•f(R))⁺ is R or the GF(4) copy.
    'additive': f(R)⁺ contains [R,R] or is one of the two 4-element sets.
    """
    ref = _m2f2()
    R = ref.R
    if not (mask & ~R.center_mask).any():
        return {"central": True, "products": CENTRAL, "additive": CENTRAL}
    sq = additive_closure(R, product_power(R, mask, 2))
    if np.array_equal(sq, ref.full):
        v27 = FULL
    elif np.array_equal(sq, ref.gf4):
        v27 = EXC_GF4
    else:
        v27 = REFUTATION
    add = additive_closure(R, mask)
    if not (ref.comm & ~add).any():
        v4 = CONTAINS_COMMUTATORS
    elif np.array_equal(add, ref.lie):
        v4 = EXC_LIE
    elif np.array_equal(add, ref.gf4):
        v4 = EXC_GF4
    else:
        v4 = REFUTATION
    return {"central": False, "products": v27, "additive": v4}


def check_m2f2_dichotomies(f, seed: int = 0) -> ImageReport:
    R = _m2f2().R
    f = _coerce_poly(f, R)
    img = image_set(f, R, seed, allow_sampling=False)
    v = classify_image_m2f2(img.mask)
    verdict = REFUTATION if REFUTATION in (v["products"], v["additive"]) else v["products"]
    sq = additive_closure(R, product_power(R, img.mask, 2))
    return ImageReport(str(f), R.label(), img.exhaustive, len(img),
                       {"additive": int(additive_closure(R, img.mask).sum()),
                        "subring": int(subring_closure(R, img.mask).sum()),
                        "products_additive": int(sq.sum())},
                       verdict, {"products": v["products"], "additive": v["additive"]},
                       witnesses={"image": [str(M) for M in img.matrices()]})


# sweep --------------------------------------------------------------------

def sweep_words(nvars: int, max_deg: int) -> list[tuple]:
    out = [()]
    for d in range(1, max_deg + 1):
        out.extend(itertools.product(range(1, nvars + 1), repeat=d))
    return out


@dataclass
class SweepResult:
    words: list
    codes: np.ndarray  # image bitmask per polynomial index
    rows: list  # (index, poly, image_size, central, products, additive)
    exhaustive: bool = True

    def counts(self, column: str) -> dict:
        k = {"products": 4, "additive": 5}[column]
        out: dict = {}
        for r in self.rows:
            out[r[k]] = out.get(r[k], 0) + 1
        return out

    def refutations(self) -> list:
        return [r for r in self.rows if REFUTATION in (r[4], r[5])]

    def witnesses(self) -> dict:
        """First polynomial reaching each exceptional verdict."""
        out: dict = {}
        for r in self.rows:
            for col, v in (("products", r[4]), ("additive", r[5])):
                if v in (EXC_GF4, EXC_LIE) and f"{col}:{v}" not in out:
                    out[f"{col}:{v}"] = r[1]
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "poly", "image_size", "central", "products_verdict", "additive_verdict"])
        w.writerows(self.rows)
        return buf.getvalue()


def _poly_from_index(s: int, words: list) -> str:
    terms = [words[b] for b in range(len(words)) if s >> b & 1]
    if not terms:
        return "0"
    return " + ".join("1" if not w else "*".join(f"x{v}" for v in w) for w in terms)


def sweep_m2f2(nvars: int = 2, max_deg: int = 3) -> SweepResult:
    """Every GF(2)-polynomial in ≤ nvars variables of degree ≤ max_deg, constant term included."""
    R = _m2f2().R
    words = sweep_words(nvars, max_deg)
    if len(words) > 20:
        raise BudgetExceeded(f"2^{len(words)} polynomials is beyond the sweep budget")
    subs = substitutions(R, nvars, allow_sampling=False)
    one = PrimeField(2).one()
    word_vals = np.stack([evaluate_all(FreePoly(PrimeField(2), ((one, w),)), R, subs)
                          for w in words]).astype(np.uint8)
    codes = kernels.sweep_xor_images(word_vals)
    cache: dict[int, tuple] = {}
    rows = []
    for s, code in enumerate(codes.tolist()):
        if code not in cache:
            mask = np.array([(code >> x) & 1 for x in range(R.size_ids)], dtype=bool)
            v = classify_image_m2f2(mask)
            cache[code] = (int(mask.sum()), v["central"], v["products"], v["additive"])
        size, central, v27, v4 = cache[code]
        rows.append((s, _poly_from_index(s, words), size, central, v27, v4))
    return SweepResult(words, codes, rows)


# p-commutators ------------------------------------------------------------

def parse_univariate(text: str, p: int) -> list[int]:
    """'x^2 + x' → coefficients lowest-first in GF(p)."""
    import re
    f = parse_poly(re.sub(r"x(?!\d)", "x1", text), PrimeField(p))
    if f.nvars > 1:
        raise InputError("univariate polynomial in x expected")
    out = [0] * (f.degree + 1)
    for c, w in f.terms:
        out[len(w)] = int(c)
    return out


@dataclass
class PCommutatorReport:
    p: list
    ring: str
    central_valued: bool
    verdict: str
    sizes: dict
    center_exceeds_two: bool  # full matrix ring whose center has more than two elements
    exhaustive: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def p_commutator_set_check(p: Sequence[int], R: FiniteRingSpec, seed: int = 0) -> PCommutatorReport:
    p = [int(c) % R.p for c in p]
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    if len(p) < 2:
        raise InputError("p must be nonconstant")
    dom = R.field
    univ = FreePoly.from_terms(dom, ((c, (1,) * k) for k, c in enumerate(p)))
    pR = image_set(univ, R, seed)
    central = is_central_valued(pR)
    pc = image_set(p_commutator_poly(p, dom), R, seed)
    A = additive_closure(R, pc.mask)
    CRR = commutator_span(R)
    sizes = {"p(R)": len(pR), "p[R,R]": len(pc), "p[R,R]+": int(A.sum()), "[R,R]+": int(CRR.sum())}
    center_size = int(R.center_mask.sum())
    if central:
        verdict = CENTRAL
    elif np.array_equal(A, CRR):
        verdict = EQUAL
    elif _is_m2f2(R) and np.array_equal(A, _m2f2().lie):
        verdict = EXC_I
    elif (_is_m2f2(R) and np.array_equal(additive_closure(R, pR.mask), _m2f2().gf4)
          and np.array_equal(A, R.mask([R.zero, R.one]))):
        verdict = EXC_II
    else:
        verdict = REFUTATION
    return PCommutatorReport(p, R.label(), central, verdict, sizes,
                             R.kind == "full" and center_size > 2, pR.exhaustive and pc.exhaustive)


# sums of products -----------------------------------------------------------

@dataclass
class SumLengthProfile:
    reaches_ring: bool
    minimal_N: int
    layer_sizes: list
    closure_size: int


def sum_length_profile(R: FiniteRingSpec, S: np.ndarray, k: int = 1) -> SumLengthProfile:
    """Layer t holds 0 and all sums of at most t elements of S^[k]."""
    X = product_power(R, S, k)
    target = additive_closure(R, X)
    gens = np.flatnonzero(X)
    layer = X.copy()
    layer[0] = True
    sizes = [int(layer.sum())]
    t = 1
    while not np.array_equal(layer, target):
        cur = np.flatnonzero(layer)
        nxt = layer.copy()
        nxt[R.add[np.ix_(cur, gens)].ravel()] = True
        if np.array_equal(nxt, layer):  # cannot happen for a finite group, kept as a guard
            break
        layer = nxt
        t += 1
        sizes.append(int(layer.sum()))
    reaches = bool(np.array_equal(target, R.element_mask))
    return SumLengthProfile(reaches, t, sizes, int(target.sum()))


def fully_noncentral_check(R: FiniteRingSpec, S: np.ndarray) -> bool:
    """Whether the ideal generated by [S, R] is all of R (R unital here)."""
    br = commutator_set(R, S, R.mask(R.basis))
    return bool(np.array_equal(ideal_closure(R, br), R.element_mask))


# f versus its sorted-word twin -------------------------------------------

@dataclass
class TildeReport:
    ok: bool
    exhaustive: bool
    tuples: int
    counterexample: tuple | None = None
    verdict: str = ""


def tilde_equivalence_check(f, R: FiniteRingSpec, seed: int = 0) -> TildeReport:
    """f(ā) ∈ ideal([R,R]) iff f̃(ā) ∈ ideal([R,R]) for every tuple ā."""
    f = _coerce_poly(f, R)
    ft = tilde_normalize(f)
    m = max(f.nvars, ft.nvars, 1)
    subs = substitutions(R, m, seed, allow_sampling=False)
    J = commutator_ideal(R)
    a = J[evaluate_all(f, R, subs)]
    b = J[evaluate_all(ft, R, subs)]
    bad = np.flatnonzero(a != b)
    if bad.size:
        t = int(bad[0])
        ce = tuple(str(R.decode(x)) for x in subs.var_vals[:, t])
        return TildeReport(False, subs.exhaustive, subs.var_vals.shape[1], ce, REFUTATION)
    return TildeReport(True, subs.exhaustive, subs.var_vals.shape[1], None, "AGREE")


# standard polynomials -------------------------------------------------------

def standard_poly_probe(m: int, k: int, R: FiniteRingSpec, seed: int = 0) -> ImageReport:
    f = standard_poly(m, R.field)
    img = image_set(f, R, seed, allow_sampling=False)
    X = product_power(R, img.mask, k)
    closure = additive_closure(R, X)
    equal = bool(np.array_equal(closure, R.element_mask))
    prof = sum_length_profile(R, img.mask, k) if equal else None
    comm = commutator_span(R)
    return ImageReport(str(f), R.label(), img.exhaustive, len(img),
                       {"products_additive": int(closure.sum()),
                        "additive": int(additive_closure(R, img.mask).sum()),
                        "[R,R]+": int(comm.sum())},
                       FULL if equal else "PROPER",
                       {"image_additive_equals_[R,R]": bool(np.array_equal(additive_closure(R, img.mask), comm))},
                       product_powers={k: int(closure.sum())},
                       minimal_N=prof.minimal_N if prof else None)


def image_report(f, R: FiniteRingSpec, max_power: int = 3, seed: int = 0) -> ImageReport:
    f = _coerce_poly(f, R)
    img = image_set(f, R, seed)
    add = additive_closure(R, img.mask)
    sub = subring_closure(R, img.mask)
    powers = {k: int(additive_closure(R, product_power(R, img.mask, k)).sum())
              for k in range(1, max_power + 1)}
    wit = {"image": [str(M) for M in img.matrices()]} if len(img) <= 64 else {}
    return ImageReport(str(f), R.label(), img.exhaustive, len(img),
                       {"additive": int(add.sum()), "subring": int(sub.sum()), "ring": R.order},
                       CENTRAL if is_central_valued(img) else "NONCENTRAL",
                       product_powers=powers, witnesses=wit)
