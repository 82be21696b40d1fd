"""Scalar domains: GF(p), the rationals, and quaternions over ℚ or floats.

Domains do arithmetic on raw values: ``int`` for GF(p), ``gmpy2.mpq`` for ℚ
(``Fraction`` when gmpy2 is missing) and ``Quat`` for quaternions. Matrices
store raw values and call the domain, which keeps the inner loops free of
wrapper objects. ``Scalar`` is the user-facing value that carries its domain
and refuses cross-domain arithmetic.
"""
from __future__ import annotations

import math
import numbers
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .errors import (DomainMismatch, InfeasibleCase, InfiniteDomain, InputError,
                     NormTooLarge, NotPure, NotUnitNorm, ZeroInput, ZeroInverse)

try:
    from gmpy2 import mpq as _mpq
except ImportError:  # exact but roughly ten times slower
    _mpq = Fraction


def rat(x, den=None):
    """Exact rational from an int, rational, numpy integer or string."""
    if den is not None:
        return _mpq(int(x), int(den))
    if isinstance(x, numbers.Integral) and not isinstance(x, int):
        x = int(x)
    return _mpq(x)


class Quat:
    """a + bi + cj + dk with components from any ordered field (exact rationals or floats)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    def __add__(self, o: "Quat") -> "Quat":
        return Quat(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o: "Quat") -> "Quat":
        return Quat(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __neg__(self) -> "Quat":
        return Quat(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, o: "Quat") -> "Quat":
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        return Quat(a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                    a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                    a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                    a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)

    def scale(self, r) -> "Quat":
        return Quat(self.a * r, self.b * r, self.c * r, self.d * r)

    def conj(self) -> "Quat":
        return Quat(self.a, -self.b, -self.c, -self.d)

    def norm(self):
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def real(self):
        return self.a

    def imag(self) -> "Quat":
        return Quat(0 * self.a, self.b, self.c, self.d)

    def vec(self) -> tuple:
        return (self.b, self.c, self.d)

    def coords(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, o) -> bool:
        return isinstance(o, Quat) and self.coords() == o.coords()

    def __hash__(self) -> int:
        return hash(self.coords())

    def __repr__(self) -> str:
        return f"Quat({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


_NUM = r"(?:\d+/\d+|\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|inf|nan)"
_QTERM = re.compile(r"\s*([+-]?)\s*(" + _NUM + r")?\s*\*?\s*([ijk]?)\s*")


def _parse_number(tok: str, exact: bool):
    if exact:
        # int() is cheaper than the generic string parser
        num, _, den = tok.partition("/")
        if num.isdigit() and (not den or den.isdigit()):
            if den and int(den) == 0:
                raise InputError(f"bad rational {tok!r}")
            return rat(int(num), int(den)) if den else rat(int(num))
        try:
            return rat(tok)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational {tok!r}") from exc
    if "/" in tok:
        n, d = tok.split("/")
        return int(n) / int(d)
    return float(tok)


def _fmt_num(x) -> str:
    if isinstance(x, float):
        return repr(float(x))
    return str(x)


class ScalarDomain:
    """Interface shared by all scalar domains; subclasses are frozen dataclasses."""

    kind: str = ""
    exact = True
    commutative = True
    characteristic = 0
    tolerance = 0.0

    @property
    def size(self) -> int | None:
        return None

    @property
    def is_quaternion(self) -> bool:
        return not self.commutative

    # arithmetic on raw values
    def zero(self): raise NotImplementedError
    def one(self): raise NotImplementedError
    def from_int(self, k: int): raise NotImplementedError
    def from_base(self, x): return self.coerce(x)
    def add(self, x, y): return x + y
    def sub(self, x, y): return x - y
    def neg(self, x): return -x
    def mul(self, x, y): return x * y

    def dot(self, xs: Sequence, ys: Sequence):
        s = self.zero()
        for x, y in zip(xs, ys):
            s = s + x * y
        return s

    def inv(self, x): raise NotImplementedError
    def is_zero(self, x) -> bool: raise NotImplementedError
    def is_central(self, x) -> bool: return True
    def magnitude(self, x) -> float: return 0.0 if self.is_zero(x) else 1.0

    def eq(self, x, y) -> bool:
        return self.is_zero(self.sub(x, y))

    def div_right(self, x, y):
        return self.mul(x, self.inv(y))

    def div_left(self, y, x):
        return self.mul(self.inv(y), x)

    def coerce(self, x): raise NotImplementedError
    def parse(self, text: str): raise NotImplementedError
    def format(self, x) -> str: raise NotImplementedError
    def random(self, rng): raise NotImplementedError

    def key(self, x):
        return x

    def describe(self) -> dict: raise NotImplementedError

    def __call__(self, x) -> "Scalar":
        v = self.parse(x) if isinstance(x, str) else self.coerce(x)
        return Scalar(self, v)


@dataclass(frozen=True)
class PrimeField(ScalarDomain):
    p: int

    kind = "gf"

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise InputError(f"{self.p} is not prime")

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.p

    @property
    def size(self) -> int:
        return self.p

    def zero(self): return 0
    def one(self): return 1
    def from_int(self, k: int): return k % self.p
    def add(self, x, y): return (x + y) % self.p
    def sub(self, x, y): return (x - y) % self.p
    def neg(self, x): return (-x) % self.p
    def mul(self, x, y): return (x * y) % self.p

    def dot(self, xs, ys):
        return sum(x * y for x, y in zip(xs, ys)) % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroInverse("0 has no inverse")
        return pow(x, -1, self.p)

    def is_zero(self, x) -> bool:
        return x % self.p == 0

    def coerce(self, x):
        if isinstance(x, numbers.Rational) and not isinstance(x, int):
            return self.mul(int(x.numerator) % self.p, self.inv(int(x.denominator) % self.p))
        if isinstance(x, bool) or not isinstance(x, int):
            if isinstance(x, Quat) or isinstance(x, float):
                raise DomainMismatch(f"cannot read {x!r} in GF({self.p})")
            x = int(x)
        return x % self.p

    def parse(self, text: str):
        t = text.strip()
        try:
            return self.coerce(rat(t))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad GF({self.p}) element {text!r}") from exc

    def format(self, x) -> str:
        return str(x)

    def random(self, rng):
        return int(rng.integers(self.p))

    def elements(self) -> list:
        return list(range(self.p))

    def describe(self) -> dict:
        return {"kind": "gf", "p": self.p}

    def __str__(self) -> str:
        return f"GF({self.p})"


@dataclass(frozen=True)
class Rational(ScalarDomain):
    kind = "rational"

    def zero(self): return rat(0)
    def one(self): return rat(1)
    def from_int(self, k: int): return rat(k)

    def inv(self, x):
        if x == 0:
            raise ZeroInverse("0 has no inverse")
        return 1 / rat(x)

    def is_zero(self, x) -> bool:
        return x == 0

    def eq(self, x, y) -> bool:
        return x == y

    def coerce(self, x):
        if isinstance(x, (Quat, float)):
            raise DomainMismatch(f"cannot read {x!r} in ℚ")
        return rat(x)

    def parse(self, text: str):
        try:
            return rat(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational {text!r}") from exc

    def format(self, x) -> str:
        return str(x)

    def random(self, rng, bound: int = 9):
        num = int(rng.integers(-bound, bound + 1))
        den = int(rng.integers(1, 4))
        return rat(num, den)

    def describe(self) -> dict:
        return {"kind": "rational"}

    def __str__(self) -> str:
        return "QQ"


class _QuaternionBase(ScalarDomain):
    commutative = False

    def _c(self, x):
        raise NotImplementedError

    def zero(self):
        z = self._c(0)
        return Quat(z, z, z, z)

    def one(self):
        z = self._c(0)
        return Quat(self._c(1), z, z, z)

    def from_int(self, k: int):
        z = self._c(0)
        return Quat(self._c(k), z, z, z)

    def from_base(self, x):
        z = self._c(0)
        return Quat(self._c(x), z, z, z)

    def dot(self, xs, ys):
        a = b = c = d = self._c(0)
        for x, y in zip(xs, ys):
            a1, b1, c1, d1 = x.a, x.b, x.c, x.d
            a2, b2, c2, d2 = y.a, y.b, y.c, y.d
            a += a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2
            b += a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2
            c += a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2
            d += a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2
        return Quat(a, b, c, d)

    def inv(self, x: Quat):
        n = x.norm()
        if self.is_zero(x):
            raise ZeroInverse("0 has no inverse")
        return Quat(x.a / n, -x.b / n, -x.c / n, -x.d / n)

    def coerce(self, x):
        if isinstance(x, Quat):
            return Quat(*(self._c(v) for v in x.coords()))
        if isinstance(x, (tuple, list)) and len(x) == 4:
            return Quat(*(self._c(v) for v in x))
        return self.from_base(x)

    def parse(self, text: str):
        t = text.replace(" ", "")
        if not t:
            raise InputError("empty quaternion")
        comps = [self._c(0)] * 4
        pos = 0
        seen = False
        while pos < len(t):
            m = _QTERM.match(t, pos)
            if m is None or m.end() == pos or (m.group(2) is None and not m.group(3)):
                raise InputError(f"bad quaternion {text!r} at offset {pos}")
            if seen and not m.group(1):
                raise InputError(f"missing sign in {text!r} at offset {pos}")
            sign = -1 if m.group(1) == "-" else 1
            num = _parse_number(m.group(2), self.exact) if m.group(2) else self._c(1)
            idx = " ijk".index(m.group(3)) if m.group(3) else 0
            comps[idx] = comps[idx] + sign * num
            pos = m.end()
            seen = True
        return Quat(*comps)

    def format(self, x: Quat) -> str:
        out = _fmt_num(x.a)
        for v, unit in ((x.b, "i"), (x.c, "j"), (x.d, "k")):
            s = _fmt_num(v)
            out += (s if s.startswith("-") else "+" + s) + unit
        return out


@dataclass(frozen=True)
class QuaternionRational(_QuaternionBase):
    kind = "quat"

    def _c(self, x):
        if isinstance(x, float):
            raise DomainMismatch("float component in ℍ(ℚ)")
        return rat(x)

    def is_zero(self, x: Quat) -> bool:
        return x.a == 0 and x.b == 0 and x.c == 0 and x.d == 0

    def eq(self, x, y) -> bool:
        return x == y

    def is_central(self, x: Quat) -> bool:
        return x.b == 0 and x.c == 0 and x.d == 0

    def magnitude(self, x: Quat) -> float:
        return math.sqrt(float(x.norm()))

    def random(self, rng, bound: int = 5):
        return Quat(*(rat(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, 3)))
                      for _ in range(4)))

    def describe(self) -> dict:
        return {"kind": "quat"}

    def __str__(self) -> str:
        return "H(QQ)"


@dataclass(frozen=True)
class QuaternionFloat(_QuaternionBase):
    tolerance: float = 1e-9

    kind = "quat-float"
    exact = False

    def __post_init__(self):
        if not self.tolerance > 0:
            raise InputError("tolerance must be positive")

    def _c(self, x):
        return float(x)

    def is_zero(self, x: Quat) -> bool:
        t = self.tolerance
        return abs(x.a) <= t and abs(x.b) <= t and abs(x.c) <= t and abs(x.d) <= t

    def is_central(self, x: Quat) -> bool:
        t = self.tolerance
        return abs(x.b) <= t and abs(x.c) <= t and abs(x.d) <= t

    def magnitude(self, x: Quat) -> float:
        return math.sqrt(x.norm())

    def random(self, rng):
        return Quat(*(float(v) for v in rng.normal(size=4)))

    def describe(self) -> dict:
        return {"kind": "quat-float", "tolerance": self.tolerance}

    def __str__(self) -> str:
        return "H(float)"


GF = PrimeField
QQ = Rational()
HQ = QuaternionRational()


def domain_from_dict(d: dict) -> ScalarDomain:
    kind = d.get("kind")
    if kind == "gf":
        return PrimeField(int(d["p"]))
    if kind == "rational":
        return QQ
    if kind == "quat":
        return HQ
    if kind == "quat-float":
        return QuaternionFloat(float(d.get("tolerance", 1e-9)))
    raise InputError(f"unknown domain kind {kind!r}")


def base_domain(dom: ScalarDomain) -> ScalarDomain:
    """The center as its own domain: ℚ for ℍ(ℚ); for float ℍ we keep floats in Quat form."""
    if isinstance(dom, QuaternionRational):
        return QQ
    return dom


@dataclass(frozen=True)
class Scalar:
    domain: ScalarDomain
    value: Any

    def _check(self, other) -> Any:
        if isinstance(other, Scalar):
            if other.domain != self.domain:
                raise DomainMismatch(f"{self.domain} vs {other.domain}")
            return other.value
        if isinstance(other, int):
            return self.domain.from_int(other)
        raise DomainMismatch(f"cannot combine Scalar with {type(other).__name__}")

    def __add__(self, o): return Scalar(self.domain, self.domain.add(self.value, self._check(o)))
    def __radd__(self, o): return Scalar(self.domain, self.domain.add(self._check(o), self.value))
    def __sub__(self, o): return Scalar(self.domain, self.domain.sub(self.value, self._check(o)))
    def __rsub__(self, o): return Scalar(self.domain, self.domain.sub(self._check(o), self.value))
    def __mul__(self, o): return Scalar(self.domain, self.domain.mul(self.value, self._check(o)))
    def __rmul__(self, o): return Scalar(self.domain, self.domain.mul(self._check(o), self.value))
    def __neg__(self): return Scalar(self.domain, self.domain.neg(self.value))

    def inv(self) -> "Scalar":
        return Scalar(self.domain, self.domain.inv(self.value))

    def is_zero(self) -> bool:
        return self.domain.is_zero(self.value)

    def close(self, other, tol: float | None = None) -> bool:
        o = self._check(other)
        if tol is None:
            return self.domain.eq(self.value, o)
        d = self.domain.sub(self.value, o)
        return self.domain.magnitude(d) <= tol

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar) or other.domain != self.domain:
            return False
        return self.domain.eq(self.value, other.value)

    def __hash__(self) -> int:
        return hash((self.domain, self.domain.key(self.value)))

    def __str__(self) -> str:
        return self.domain.format(self.value)


# scalar operations -------------------------------------------------------

def inv(s: Scalar) -> Scalar:
    return s.inv()


def is_central(s: Scalar) -> bool:
    return s.domain.is_central(s.value)


def _need_quat(s: Scalar) -> None:
    if not s.domain.is_quaternion:
        raise DomainMismatch(f"{s.domain} is not a quaternion domain")


def _need_float(s: Scalar) -> None:
    if not isinstance(s.domain, QuaternionFloat):
        raise DomainMismatch("this construction needs square roots; use QuaternionFloat")


def quat_norm(q: Scalar):
    """a² + b² + c² + d², returned as a base-field number (rational or float)."""
    _need_quat(q)
    return q.value.norm()


# raw-value helpers (shared with the matrix pipelines)

_BASIS_PURE = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _dot3(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _pure(dom: ScalarDomain, vec) -> Quat:
    return dom.coerce(Quat(0, vec[0], vec[1], vec[2]))


def orthogonal_pure(dom: ScalarDomain, vec) -> tuple:
    """A nonzero pure vector orthogonal to ``vec`` with base-field coordinates.

    Prefers a basis vector (i, then j, then k) that is already orthogonal, which
    keeps the exact outputs small and matches the textbook choices.
    """
    zero = 0 * vec[0]
    for e in _BASIS_PURE:
        if _dot3(e, vec) == 0:
            return tuple(zero + c for c in e)
    # none of i, j, k is orthogonal: cross with the axis least aligned
    e = min(_BASIS_PURE, key=lambda b: abs(_dot3(b, vec)))
    return _cross(vec, e)


def _unit_orthogonal_pure(vec) -> tuple:
    """Unit pure vector orthogonal to a unit pure ``vec`` (float only), Gram-Schmidt over i, j, k."""
    for e in _BASIS_PURE:
        d = _dot3(e, vec)
        w = (e[0] - d * vec[0], e[1] - d * vec[1], e[2] - d * vec[2])
        n = math.sqrt(_dot3(w, w))
        if n > 0.5:
            return (w[0] / n, w[1] / n, w[2] / n)
    raise AssertionError("unreachable: some axis is far from any unit vector")


def diff_unit_norms(dom: QuaternionFloat, q: Quat) -> tuple[Quat, Quat]:
    n = math.sqrt(q.norm())
    if n > 2 + dom.tolerance:
        raise NormTooLarge(f"‖q‖ = {n:.6g} > 2")
    if n == 0:
        return dom.one(), dom.one()
    e = q.coords()
    e = tuple(c / n for c in e)
    # Gram-Schmidt over 1, i, j, k; the least aligned axis always clears 0.5
    w = None
    for idx in range(4):
        b = [0.0] * 4
        b[idx] = 1.0
        d = e[idx]
        cand = [b[t] - d * e[t] for t in range(4)]
        cn = math.sqrt(sum(c * c for c in cand))
        if cn > 0.5:
            w = [c / cn for c in cand]
            break
    assert w is not None
    s = math.sqrt(max(0.0, 1.0 - n * n / 4.0))
    v = Quat(*(-n / 2 * e[t] + s * w[t] for t in range(4)))
    return v + q, v


def _angle_axis(dom: QuaternionFloat, u: Quat) -> tuple[float, tuple | None]:
    if abs(u.norm() - 1.0) > dom.tolerance:
        raise NotUnitNorm(f"N(u) = {u.norm():.12g}")
    im = u.vec()
    s = math.sqrt(_dot3(im, im))
    theta = min(max(math.atan2(s, u.a), 0.0), math.pi)
    if s <= 1e-300 or s <= dom.tolerance * 1e-3:
        return theta, None
    return theta, (im[0] / s, im[1] / s, im[2] / s)


def unit_commutator(dom: QuaternionFloat, u: Quat) -> tuple[Quat, Quat]:
    theta, axis = _angle_axis(dom, u)
    if axis is None:
        # u = ±1, axis undefined: use the frame (i, j, k)
        i = Quat(0.0, 1.0, 0.0, 0.0)
        return (i, -i) if u.a > 0 else (i, Quat(0.0, 0.0, 1.0, 0.0))
    p = _unit_orthogonal_pure(axis)
    r = _cross(axis, p)
    phi = math.pi - theta / 2
    a = Quat(0.0, *p)
    b = Quat(0.0, *(math.cos(phi) * p[t] + math.sin(phi) * r[t] for t in range(3)))
    return a, b


def sqrt_unit(dom: QuaternionFloat, u: Quat) -> Quat:
    theta, axis = _angle_axis(dom, u)
    if axis is None:
        return Quat(1.0, 0.0, 0.0, 0.0) if u.a > 0 else Quat(0.0, 1.0, 0.0, 0.0)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return Quat(c, s * axis[0], s * axis[1], s * axis[2])


def pure_commutator(dom: ScalarDomain, v: Quat) -> tuple[Quat, Quat]:
    """Pure a, b with ab − ba = v. Exact over ℚ: a need not be a unit vector."""
    if not dom.is_zero(dom.from_base(v.a)):
        raise NotPure("real part is nonzero")
    if dom.is_zero(v):
        raise ZeroInput("v = 0")
    vec = v.vec()
    if dom.exact:
        a = orthogonal_pure(dom, vec)
    else:
        n = math.sqrt(_dot3(vec, vec))
        a = _unit_orthogonal_pure(tuple(c / n for c in vec))
    c = _cross(vec, a)
    two_a2 = 2 * _dot3(a, a)
    b = tuple(x / two_a2 for x in c)
    return _pure(dom, a), _pure(dom, b)


def scalar_oracle(dom: ScalarDomain, h: Quat) -> tuple[Quat, Quat, Quat, Quat]:
    """h = [a1,b1]·[a2,b2] with both brackets nonzero and pure."""
    if dom.is_zero(h):
        raise ZeroInput("h = 0")
    vec = h.vec()
    if dom.exact:
        p = orthogonal_pure(dom, vec)
    elif _dot3(vec, vec) > 0:
        n = math.sqrt(_dot3(vec, vec))
        p = _unit_orthogonal_pure(tuple(c / n for c in vec))
    else:
        p = (1.0, 0.0, 0.0)
    P = _pure(dom, p)
    # q = P⁻¹h = −P h / |p|² is pure because p ⟂ Im(h)
    Q = (P * h).scale(-1 / dom.coerce(_dot3(p, p)).a)
    Q = Quat(0 * Q.a, Q.b, Q.c, Q.d)
    a1, b1 = pure_commutator(dom, P)
    a2, b2 = pure_commutator(dom, Q)
    return a1, b1, a2, b2


def quat_diff_unit_norms(q: Scalar) -> tuple[Scalar, Scalar]:
    """Unit-norm u, v with u − v = q, possible exactly when ‖q‖ ≤ 2."""
    _need_float(q)
    u, v = diff_unit_norms(q.domain, q.value)
    return Scalar(q.domain, u), Scalar(q.domain, v)


def unit_quaternion_commutator(u: Scalar) -> tuple[Scalar, Scalar]:
    """Pure units a, b (so a² = b² = −1) with a b a⁻¹ b⁻¹ = u."""
    _need_float(u)
    a, b = unit_commutator(u.domain, u.value)
    return Scalar(u.domain, a), Scalar(u.domain, b)


def quat_sqrt(u: Scalar) -> Scalar:
    _need_float(u)
    return Scalar(u.domain, sqrt_unit(u.domain, u.value))


def pure_as_commutator(v: Scalar) -> tuple[Scalar, Scalar]:
    _need_quat(v)
    a, b = pure_commutator(v.domain, v.value)
    return Scalar(v.domain, a), Scalar(v.domain, b)


def quaternion_scalar_oracle(h: Scalar) -> tuple[Scalar, Scalar, Scalar, Scalar]:
    _need_quat(h)
    return tuple(Scalar(h.domain, x) for x in scalar_oracle(h.domain, h.value))  # type: ignore[return-value]


def zero_sum_values(dom: ScalarDomain, n: int) -> list:
    """Raw values x_1..x_n, all nonzero and central, summing to 0."""
    if n < 2:
        raise InfeasibleCase("need n > 1")
    if dom.size == 2:
        if n % 2:
            raise InfeasibleCase("GF(2) with odd n")
        return [dom.one()] * n
    m = dom.from_int(n - 2)
    k = 1
    while True:
        a = dom.from_int(k)
        if not dom.is_zero(a) and not dom.is_zero(dom.add(a, m)):
            break
        k += 1
    return [dom.one()] * (n - 2) + [a, dom.neg(dom.add(m, a))]


def zero_sum_units(domain: ScalarDomain, n: int) -> list[Scalar]:
    return [Scalar(domain, x) for x in zero_sum_values(domain, n)]


def enumerate_field(domain: ScalarDomain) -> list[Scalar]:
    if not isinstance(domain, PrimeField):
        raise InfiniteDomain(f"{domain} is infinite")
    return [Scalar(domain, x) for x in range(domain.p)]


def central_values(dom: ScalarDomain, values: Iterable) -> list:
    return [dom.from_base(v) for v in values]
