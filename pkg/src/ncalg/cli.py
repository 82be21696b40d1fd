"""Command-line front end.

Exit codes: 0 ok, 1 verification mismatch or refutation, 2 unreadable input,
3 violated precondition, 4 retries exhausted, 5 enumeration budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass
from functools import lru_cache

from . import __version__
from .errors import InputError, NcalgError, PreconditionError
from .matcore import parse_matrix
from .scalars import HQ, QQ, PrimeField, QuaternionFloat, Scalar

FACTOR_KINDS = ("two-comm", "qgtn", "skew", "sl-diff", "quat-diff", "quat-comm", "waring2")
EXPLORE_MODES = ("image", "dichotomy", "pcomm", "sumlen", "sweep", "probe", "tilde")
_QUAT_DEFAULT = {"qgtn", "skew", "quat-diff", "quat-comm"}


@dataclass
class RunConfig:
    seed: int = 0
    tolerance: float | None = None
    budget: int = 2_000_000
    output: str = "-"
    format: str = "json"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["version"] = __version__
        return d


def _env_int(name: str, default: int) -> int:
    v = os.environ.get(name)
    if v is None or v == "":
        return default
    try:
        return int(v)
    except ValueError as exc:
        raise InputError(f"{name}={v!r} is not an integer") from exc


def _env_float(name: str):
    v = os.environ.get(name)
    if v is None or v == "":
        return None
    try:
        return float(v)
    except ValueError as exc:
        raise InputError(f"{name}={v!r} is not a number") from exc


def _config(args) -> RunConfig:
    seed = args.seed if args.seed is not None else _env_int("NCALG_SEED", 0)
    tol = args.tolerance if args.tolerance is not None else _env_float("NCALG_TOLERANCE")
    return RunConfig(seed, tol, getattr(args, "budget", 2_000_000) or 2_000_000,
                     args.output, getattr(args, "format", "json") or "json")


def _domain(args, kind: str):
    name = args.domain
    if args.field is not None:
        name = f"gf{args.field}"
    if name is None:
        name = "quat" if kind in _QUAT_DEFAULT else "rational"
    if name.startswith("gf"):
        try:
            return PrimeField(int(name[2:]))
        except ValueError as exc:
            raise InputError(f"bad field {name!r}") from exc
    if name in ("rational", "q"):
        return QQ
    if name in ("quat", "h"):
        tol = _env_float("NCALG_TOLERANCE")
        return QuaternionFloat(tol) if tol else QuaternionFloat()
    if name in ("quat-exact", "hq"):
        return HQ
    raise InputError(f"unknown domain {name!r}")


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output in ("-", ""):
        sys.stdout.write(text)
    else:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)


# factor -------------------------------------------------------------------

def _build_certificate(kind: str, text: str, dom, cfg: RunConfig, case):
    from . import commfact as cf
    if kind in ("quat-diff", "quat-comm"):
        if not isinstance(dom, QuaternionFloat):
            raise InputError(f"{kind} works over float quaternions")
        q = Scalar(dom, dom.parse(text))
        return cf.quat_difference_certificate(q) if kind == "quat-diff" else cf.quat_commutator_certificate(q)
    A = parse_matrix(text, dom)
    if kind == "two-comm":
        if dom.commutative:
            return cf.two_commutators_field(A, cfg.seed)
        return cf.two_commutators_quaternion(A, cfg.seed)
    if kind == "qgtn":
        return cf.q_gt_n_recursion(A, cfg.seed)
    if kind == "skew":
        return cf.skew_commutators_sl(A, cfg.seed)
    if kind == "sl-diff":
        return cf.sl_difference_certificate(A, cfg.seed)
    if kind == "waring2":
        return cf.waring_split_2x2(A, case)
    raise InputError(f"unknown factorization {kind!r}")


def cmd_factor(args) -> int:
    from .certificates import dumps, verify_certificate
    cfg = _config(args)
    dom = _domain(args, args.kind)
    cert = _build_certificate(args.kind, args.input, dom, cfg, args.case)
    cert.seed = cfg.seed if cert.seed is not None else None
    if cfg.tolerance is not None and not dom.exact:
        cert.tolerances["replay"] = cfg.tolerance
    report = verify_certificate(cert)
    if cfg.format == "text":
        lines = [f"{cert.kind}: {report.summary()}"]
        for k, p in enumerate(cert.parts):
            ops = "  |  ".join(str(m) for m in p.operands)
            lines.append(f"  part {k} [{p.tag}, group {p.group}] {ops}")
        _emit("\n".join(lines) + "\n", cfg)
    else:
        _emit(dumps(cert, cfg.to_dict()), cfg)
    if not report.ok:
        print(report.summary(), file=sys.stderr)
    return 0 if report.ok else 1


# verify -------------------------------------------------------------------

def cmd_verify(args) -> int:
    from .certificates import loads, verify_certificate
    try:
        with open(args.path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.path}: {exc}") from exc
    cert = loads(text)
    tol = args.tolerance if args.tolerance is not None else _env_float("NCALG_TOLERANCE")
    report = verify_certificate(cert, tol)
    print(report.summary())
    return 0 if report.ok else 1


# explore ------------------------------------------------------------------

def cmd_explore(args) -> int:
    from . import imagelab as il
    cfg = _config(args)
    R = il.parse_ring(args.ring, cfg.budget)
    mode = args.mode
    out: dict
    refuted = False
    if mode == "sweep":
        if not (R.kind == "full" and R.n == 2 and R.p == 2):
            raise InputError("sweep runs on 2x2@2")
        res = il.sweep_m2f2(args.nvars, args.max_deg)
        refuted = bool(res.refutations())
        summary = {"ring": R.label(), "polynomials": len(res.rows), "products": res.counts("products"),
                   "additive": res.counts("additive"), "refutations": len(res.refutations()),
                   "witnesses": res.witnesses(), "config": cfg.to_dict()}
        if cfg.format == "csv":
            _emit(res.to_csv(), cfg)
            print(json.dumps(summary, sort_keys=True, ensure_ascii=False), file=sys.stderr)
        else:
            _emit(json.dumps(summary, indent=2, sort_keys=True, ensure_ascii=False) + "\n", cfg)
        return 1 if refuted else 0
    if mode == "pcomm":
        if not args.p:
            raise InputError("pcomm needs --p")
        rep = il.p_commutator_set_check(il.parse_univariate(args.p, R.p), R, cfg.seed)
        out = rep.to_dict()
        refuted = rep.verdict == il.REFUTATION
    else:
        if args.poly is None and mode != "probe":
            raise InputError(f"{mode} needs a polynomial")
        if mode == "image":
            out = il.image_report(args.poly, R, seed=cfg.seed).to_dict()
        elif mode == "dichotomy":
            if not (R.kind == "full" and R.n == 2 and R.p == 2):
                raise InputError("dichotomy runs on 2x2@2")
            out = il.check_m2f2_dichotomies(args.poly, cfg.seed).to_dict()
            refuted = out["verdict"] == il.REFUTATION
        elif mode == "sumlen":
            img = il.image_set(args.poly, R, cfg.seed)
            prof = il.sum_length_profile(R, img.mask, args.k)
            out = {"poly": args.poly, "ring": R.label(), "k": args.k, "exhaustive": img.exhaustive,
                   **asdict(prof)}
        elif mode == "probe":
            out = il.standard_poly_probe(args.m, args.k, R, cfg.seed).to_dict()
        elif mode == "tilde":
            rep = il.tilde_equivalence_check(args.poly, R, cfg.seed)
            out = {"poly": args.poly, "ring": R.label(), **asdict(rep)}
            refuted = not rep.ok
        else:
            raise InputError(f"unknown mode {mode!r}")
    out["config"] = cfg.to_dict()
    _emit(json.dumps(out, indent=2, sort_keys=True, ensure_ascii=False, default=str) + "\n", cfg)
    return 1 if refuted else 0


# parser -------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help="random seed (env NCALG_SEED)")
    p.add_argument("--tolerance", type=float, default=None, help="replay tolerance (env NCALG_TOLERANCE)")
    p.add_argument("-o", "--output", default="-", help="output file, '-' for stdout")


@lru_cache(maxsize=1)
def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ncalg", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"ncalg {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    f = sub.add_parser("factor", help="factor a matrix or quaternion and print a certificate")
    f.add_argument("kind", choices=FACTOR_KINDS)
    f.add_argument("input", help='matrix "a,b;c,d" or quaternion "1+2i-j"')
    f.add_argument("--field", type=int, default=None, help="work over GF(p)")
    f.add_argument("--domain", default=None,
                   help="rational | quat | quat-exact | gfP (default depends on kind)")
    f.add_argument("--case", choices=("diag", "b", "c"), default=None, help="waring2 display")
    f.add_argument("--format", choices=("json", "text"), default="json")
    _common(f)
    f.set_defaults(func=cmd_factor)

    e = sub.add_parser("explore", help="polynomial images on a small matrix ring")
    e.add_argument("mode", choices=EXPLORE_MODES)
    e.add_argument("poly", nargs="?", default=None, help='polynomial such as "x1*x2 - x2*x1"')
    e.add_argument("--ring", default="2x2@2", help="NxN@p or TN@p (upper triangular)")
    e.add_argument("--p", default=None, help='univariate polynomial for pcomm, e.g. "x^2 + x"')
    e.add_argument("-k", "--k", type=int, default=2, help="product power")
    e.add_argument("-m", "--m", type=int, default=2, help="standard polynomial degree for probe")
    e.add_argument("--max-deg", type=int, default=3)
    e.add_argument("--nvars", type=int, default=2)
    e.add_argument("--budget", type=int, default=2_000_000)
    e.add_argument("--format", choices=("json", "csv"), default=None)
    _common(e)
    e.set_defaults(func=cmd_explore)

    v = sub.add_parser("verify", help="replay a certificate file")
    v.add_argument("path")
    v.add_argument("--tolerance", type=float, default=None)
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args, extra = ap.parse_known_args(argv)
    # an optional POLY placed after flags is left over by argparse
    if args.command == "explore" and args.poly is None and len(extra) == 1:
        args.poly, extra = extra[0], []
    if extra:
        ap.error(f"unrecognized arguments: {' '.join(extra)}")
    if args.command == "explore" and args.format is None:
        args.format = "csv" if args.mode == "sweep" else "json"
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"precondition failed ({exc.hypothesis}): {exc}", file=sys.stderr)
        return exc.exit_code
    except NcalgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except BrokenPipeError:
        # downstream reader closed early (e.g. piped into head)
        sys.stderr.close()
        return 0


if __name__ == "__main__":
    sys.exit(main())
