import copy
import json

import numpy as np
import pytest

from ncalg import commfact as cf
from ncalg.certificates import Part, dumps, loads, recombine, verify_certificate
from ncalg.errors import InputError
from ncalg.matcore import Matrix, dieudonne_value
from ncalg.scalars import HQ, QQ, PrimeField, QuaternionFloat

H = QuaternionFloat()


def _certs():
    rng = np.random.default_rng(0)
    A = Matrix.random(H, 3, rng)
    out = [
        cf.two_commutators_field(Matrix.random(PrimeField(5), 3, rng), 1),
        cf.two_commutators_quaternion(A, 2),
        cf.q_gt_n_recursion(A, 3),
        cf.skew_commutators_sl(A.lscale(H.coerce(dieudonne_value(A) ** (-1 / 3))), 4),
        cf.sl_difference_certificate(Matrix.random(QQ, 3, rng), 5),
        cf.waring_split_2x2(Matrix.random(HQ, 2, rng)),
        cf.theorem_real_decomposition(Matrix.random(H, 2, rng), "x1*x2", 6),
    ]
    return out


@pytest.mark.parametrize("idx", range(7))
def test_json_round_trip_and_verify(idx):
    cert = _certs()[idx]
    text = dumps(cert, {"seed": 1})
    back = loads(text)
    assert dumps(back, {"seed": 1}) == text
    rep = verify_certificate(back)
    assert rep.ok, rep.failures


def test_dumps_is_deterministic():
    a = cf.two_commutators_field(Matrix.random(QQ, 3, np.random.default_rng(3)), 3)
    b = cf.two_commutators_field(Matrix.random(QQ, 3, np.random.default_rng(3)), 3)
    assert dumps(a) == dumps(b)


def _tamper_entry(data):
    row = data["parts"][0]["operands"][0][0]
    row[0] = "7" if row[0] != "7" else "8"
    return data


@pytest.mark.parametrize("idx", [0, 4, 5])
def test_tamper_detected_exact(idx):
    cert = _certs()[idx]
    data = _tamper_entry(json.loads(dumps(cert)))
    rep = verify_certificate(loads(json.dumps(data)))
    assert not rep.ok


def test_tamper_detected_float():
    cert = _certs()[1]
    data = json.loads(dumps(cert))
    data["input"][0][0] = "5+0i+0j+0k"
    assert not verify_certificate(loads(json.dumps(data))).ok


def test_tighter_tolerance_can_fail():
    cert = _certs()[1]
    r = cert.residual()
    assert r > 0.0  # float route leaves rounding error
    assert verify_certificate(cert, tol=2 * r).ok
    assert not verify_certificate(cert, tol=r / 2).ok


def test_flag_checks():
    cert = _certs()[3]
    bad = copy.deepcopy(cert)
    Z = bad.parts[0].operands[0]
    bad.parts[0] = Part("MultCommutator", (Z.lscale(H.coerce(2.0)), Z), {"skew_involution": True})
    rep = verify_certificate(bad)
    assert not rep.ok


def test_subfield_flag_detects_tamper():
    cert = cf.waring_split_2x2(Matrix.random(HQ, 2, np.random.default_rng(8)))
    data = json.loads(dumps(cert))
    for p in data["parts"]:
        if "subfield" in p["flags"]:
            p["flags"]["subfield"] = "i" if p["flags"]["subfield"] != "i" else "j"
            break
    rep = verify_certificate(loads(json.dumps(data)))
    assert not rep.ok


def test_malformed_json():
    with pytest.raises(InputError):
        loads("{not json")
    with pytest.raises(InputError):
        loads(json.dumps({"kind": "x"}))


def test_recombine_rules():
    I = Matrix.identity(QQ, 2)
    parts = [Part("Matrix", (I,), {}, 0), Part("Matrix", (I,), {}, 1)]
    assert recombine(parts, "difference", I).is_zero()
    with pytest.raises(InputError):
        recombine(parts, "product", I)
