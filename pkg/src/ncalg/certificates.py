"""Factorization certificates and their independent replay.

A certificate lists parts (commutators, multiplicative commutators, plain
matrices, inverses) and a rule for recombining them. ``verify_certificate``
recomputes everything from the serialized matrices with plain matrix
arithmetic, so it never trusts the code path that produced the certificate.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .errors import InputError
from .matcore import (Matrix, commutator, from_strings, inverse, is_invertible,
                      mult_commutator, sl_test)
from .scalars import ScalarDomain, domain_from_dict

TAGS = ("Commutator", "MultCommutator", "Matrix", "Inverse")
RULES = ("product", "difference")

DEFAULT_TOLERANCES = {"replay": 1e-6, "operand": 1e-7, "sl": 1e-7, "witness": 1e-7}


@dataclass
class Part:
    tag: str
    operands: tuple
    flags: dict = field(default_factory=dict)
    group: int = 0

    def value(self) -> Matrix:
        if self.tag == "Commutator":
            return commutator(*self.operands)
        if self.tag == "MultCommutator":
            return mult_commutator(*self.operands)
        if self.tag == "Matrix":
            return self.operands[0]
        if self.tag == "Inverse":
            return inverse(self.operands[0])
        raise InputError(f"unknown part tag {self.tag!r}")


@dataclass
class Witness:
    """Substitution showing that operand ``operand`` of part ``part`` lies in the image of ``poly``."""
    part: int
    operand: int
    poly: str
    args: tuple


@dataclass
class FactorizationCertificate:
    kind: str
    input: Matrix
    parts: list
    replay_rule: str = "product"
    seed: int | None = None
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    witnesses: list = field(default_factory=list)
    aux: dict = field(default_factory=dict)

    @property
    def domain(self) -> ScalarDomain:
        return self.input.domain

    def recombine(self) -> Matrix:
        return recombine(self.parts, self.replay_rule, self.input)

    def residual(self) -> float:
        return self.recombine().residual(self.input)

    def replay(self, tol: float | None = None) -> bool:
        if self.domain.exact:
            return self.recombine().equals(self.input)
        t = self.tolerances.get("replay", 1e-6) if tol is None else tol
        return self.residual() <= t

    def to_dict(self) -> dict:
        return certificate_to_dict(self)


def recombine(parts: list, rule: str, like: Matrix) -> Matrix:
    if rule not in RULES:
        raise InputError(f"unknown replay rule {rule!r}")
    groups: dict[int, Matrix] = {}
    for part in parts:
        v = part.value()
        groups[part.group] = groups[part.group] @ v if part.group in groups else v
    if rule == "product":
        if set(groups) != {0}:
            raise InputError("product rule expects a single group")
        return groups[0]
    if set(groups) != {0, 1}:
        raise InputError("difference rule expects groups 0 and 1")
    return groups[0] - groups[1]


# JSON ---------------------------------------------------------------------

def _mat_out(A: Matrix) -> list:
    return A.to_strings()


def _mat_in(dom: ScalarDomain, rows) -> Matrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("matrix must be an array of arrays")
    return from_strings(dom, rows)


def certificate_to_dict(cert: FactorizationCertificate, config: dict | None = None) -> dict:
    out: dict[str, Any] = {
        "kind": cert.kind,
        "domain": cert.domain.describe(),
        "input": _mat_out(cert.input),
        "parts": [{"tag": p.tag, "operands": [_mat_out(m) for m in p.operands],
                   "flags": dict(sorted(p.flags.items())), "group": p.group}
                  for p in cert.parts],
        "replay_rule": cert.replay_rule,
        "seed": cert.seed,
        "tolerances": dict(sorted(cert.tolerances.items())),
    }
    if cert.witnesses:
        out["witnesses"] = [{"part": w.part, "operand": w.operand, "poly": w.poly,
                             "args": [_mat_out(m) for m in w.args]} for w in cert.witnesses]
    if config is not None:
        out["config"] = config
    return out


def certificate_from_dict(data: dict) -> FactorizationCertificate:
    try:
        dom = domain_from_dict(data["domain"])
        A = _mat_in(dom, data["input"])
        parts = []
        for p in data["parts"]:
            if p["tag"] not in TAGS:
                raise InputError(f"unknown part tag {p['tag']!r}")
            ops = tuple(_mat_in(dom, m) for m in p["operands"])
            parts.append(Part(p["tag"], ops, dict(p.get("flags", {})), int(p.get("group", 0))))
        witnesses = [Witness(int(w["part"]), int(w["operand"]), str(w["poly"]),
                             tuple(_mat_in(dom, m) for m in w["args"]))
                     for w in data.get("witnesses", [])]
        tol = dict(DEFAULT_TOLERANCES)
        tol.update({k: float(v) for k, v in data.get("tolerances", {}).items()})
        return FactorizationCertificate(str(data["kind"]), A, parts, str(data["replay_rule"]),
                                        data.get("seed"), tol, witnesses)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed certificate: {exc}") from exc


def dumps(cert: FactorizationCertificate, config: dict | None = None) -> str:
    return json.dumps(certificate_to_dict(cert, config), indent=2, sort_keys=True,
                      ensure_ascii=False) + "\n"


def loads(text: str) -> FactorizationCertificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("certificate must be a JSON object")
    return certificate_from_dict(data)


# verification ------------------------------------------------------------

@dataclass
class VerifyReport:
    ok: bool
    residual: float
    failures: list

    def summary(self) -> str:
        if self.ok:
            return f"OK residual={self.residual:.3g}"
        return "MISMATCH: " + "; ".join(self.failures)


def _skew_residual(Z: Matrix) -> float:
    I = Matrix.identity(Z.domain, Z.nrows)
    return (Z @ Z + I).residual(Matrix.zeros(Z.domain, Z.nrows)) if not Z.domain.exact \
        else (0.0 if (Z @ Z + I).is_zero() else float("inf"))


def _unit_norm_residual(Z: Matrix) -> float:
    if Z.shape != (1, 1) or not Z.domain.is_quaternion:
        return float("inf")
    return abs(float(Z.rows[0][0].norm()) - 1.0)


def _subfield_violation(dom: ScalarDomain, part: Part, tol: float) -> str:
    try:
        theta = dom.parse(str(part.flags["subfield"]))
    except Exception as exc:
        return f"unreadable subfield generator: {exc}"
    for Z in part.operands:
        for row in Z.rows:
            for x in row:
                d = dom.sub(dom.mul(x, theta), dom.mul(theta, x))
                if dom.exact and not dom.is_zero(d) or not dom.exact and dom.magnitude(d) > tol:
                    return "an entry does not commute with the subfield generator"
    return ""


def verify_certificate(cert: FactorizationCertificate, tol: float | None = None) -> VerifyReport:
    from .freealg import evaluate, parse_poly
    from .scalars import QQ

    failures = []
    tols = dict(cert.tolerances)
    if tol is not None:
        tols["replay"] = tol
    try:
        res = cert.residual()
    except Exception as exc:  # a singular operand in a MultCommutator, etc.
        return VerifyReport(False, float("inf"), [f"recombination failed: {exc}"])
    if cert.domain.exact:
        if res != 0.0:
            failures.append("recombined parts differ from the input")
    elif res > tols["replay"]:
        failures.append(f"replay residual {res:.3g} > {tols['replay']:.3g}")
    for k, part in enumerate(cert.parts):
        if part.flags.get("invertible") and not is_invertible(part.value()):
            failures.append(f"part {k} is flagged invertible but is singular")
        if part.flags.get("skew_involution"):
            for m, Z in enumerate(part.operands):
                r = _skew_residual(Z)
                if r > tols["operand"]:
                    failures.append(f"operand {m} of part {k}: ‖Z²+I‖ = {r:.3g}")
        if part.flags.get("unit_norm"):
            for m, Z in enumerate(part.operands):
                r = _unit_norm_residual(Z)
                if r > tols["operand"]:
                    failures.append(f"operand {m} of part {k}: |N − 1| = {r:.3g}")
        if "subfield" in part.flags:
            bad = _subfield_violation(cert.domain, part, tols["operand"])
            if bad:
                failures.append(f"part {k}: {bad}")
        if part.flags.get("sl"):
            for m, Z in enumerate(part.operands):
                if not sl_test(Z, tols["sl"]):
                    failures.append(f"operand {m} of part {k} is not in SL")
    for w in cert.witnesses:
        try:
            f = parse_poly(w.poly, QQ)
            target = cert.parts[w.part].operands[w.operand]
            r = evaluate(f, list(w.args)).residual(target)
        except Exception as exc:
            failures.append(f"witness for part {w.part} failed: {exc}")
            continue
        if r > tols["witness"]:
            failures.append(f"witness for part {w.part} operand {w.operand}: residual {r:.3g}")
    return VerifyReport(not failures, res, failures)
