"""Command-line front end.

Exit codes: 0 on success or a true verdict, 1 on a false verdict, 2 on bad input.
With ``--json`` every command prints a single JSON document with sorted keys,
so reruns with the same arguments are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__, bounds, campaign, macaulay, toric
from .coxring import PolynomialSyntaxError, format_polynomial, graded_dim, parse_polynomial
from .ideals import (
    HomogeneousIdeal,
    LinkCheckFailed,
    SocleFunctional,
    colon_piece,
    dim_V_monomial,
    effective_classes,
    find_link,
    graded_piece,
    ideal_from_json,
    is_artinian_monomial,
    jacobian,
    l_index,
    probe_degrees,
    socle_degree_formula,
    socle_degrees_bruteforce,
    verify_cox_gorenstein,
)


class InputError(ValueError):
    pass


class Result:
    """What a command produced: a JSON payload, a text rendering and a verdict."""

    def __init__(self, payload, text=None, verdict=True):
        self.payload = payload
        self.text = text if text is not None else _plain(payload)
        self.verdict = verdict


def _plain(payload) -> str:
    if isinstance(payload, dict):
        return "\n".join(f"{k}: {_scalar(v)}" for k, v in sorted(payload.items()))
    return _scalar(payload)


def _scalar(v) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


# ---------------------------------------------------------------------------
# argument helpers


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").strip("()[]").split(",") if x)
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"expected a rational number such as 1/4 or 0.25, got {text!r}") from None


def _n_range(text: str) -> tuple[int, ...]:
    if "-" in text and "," not in text:
        a, _, b = text.partition("-")
        return tuple(range(int(a), int(b) + 1))
    return _ints(text)


def _variety(args):
    return toric.variety_from_spec(args.variety)


def _klass(v, text: str | None, what: str = "--class"):
    if text is None:
        raise InputError(f"{what} is required")
    c = _ints(text)
    if len(c) != v.cl_rank:
        raise InputError(f"{what} needs {v.cl_rank} integer(s) for this variety, got {len(c)}")
    return c


def _divisor(v, text: str | None):
    if text is None:
        if v.cl_rank == 1:
            return (1,)
        raise InputError("--divisor is required when the class group has rank > 1")
    return _klass(v, text, "--divisor")


def _ideal(v, args, which=""):
    path = getattr(args, f"ideal{which}", None)
    gens = getattr(args, f"gens{which}", None)
    if path:
        with open(path) as fh:
            return ideal_from_json(fh.read(), v)[0]
    if gens:
        return HomogeneousIdeal.from_strings(v, [g for g in gens.split(",") if g.strip()])
    raise InputError(f"give --ideal{which} FILE or --gens{which} 'x1^2,x2^2,...'")


def _socle(v, text: str | None, flag="--socle"):
    if not text:
        raise InputError(f"{flag} POLY is required (the functional is dual to this polynomial)")
    return SocleFunctional.dual_of(parse_polynomial(text, v))


# ---------------------------------------------------------------------------
# commands


def cmd_variety(args) -> Result:
    if args.action == "validate" and args.fan:
        with open(args.fan) as fh:
            fan = toric.Fan.from_json(fh.read())
    else:
        if not args.variety:
            raise InputError("--variety or --fan is required")
        fan = _variety(args).fan
    if args.action == "fan":
        return Result(json.loads(fan.to_json()), fan.to_json())
    if args.action == "validate":
        try:
            toric.check_fan(fan)
            toric.build_variety(fan)
        except toric.FanError as exc:
            return Result({"valid": False, "reason": str(exc)}, f"invalid: {exc}", verdict=False)
        return Result({"valid": True}, "valid")
    v = toric.build_variety(fan, args.variety or args.fan)
    info = toric.cox_summary(v)
    info.update({
        "dim": v.dim,
        "nvars": v.nvars,
        "class_rank": v.cl_rank,
        "anticanonical": list(toric.anticanonical(v)),
        "walls": len(v.walls),
    })
    return Result(info)


def cmd_hilbert(args) -> Result:
    v = _variety(args)
    beta = _klass(v, args.klass)
    d = graded_dim(v, beta)
    return Result({"class": list(beta), "dim": d}, str(d))


def cmd_macaulay(args) -> Result:
    if args.c < 0 or args.n < 1:
        raise InputError("need c >= 0 and n >= 1")
    if args.action == "decomp":
        dec = macaulay.decompose(args.c, args.n)
        pairs = [list(p) for p in dec.pairs]
        text = " + ".join(f"C({k},{i})" for k, i in dec.pairs) or "0"
        return Result({"c": args.c, "n": args.n, "pairs": pairs}, text)
    fn = macaulay.lower if args.action == "lower" else macaulay.upper
    val = fn(args.c, args.n)
    return Result({"c": args.c, "n": args.n, args.action: val}, str(val))


def cmd_ideal(args) -> Result:
    v = _variety(args)
    ideal = _ideal(v, args)
    if args.action == "hilbert":
        beta = _klass(v, args.klass)
        piece = graded_piece(ideal, beta)
        return Result({"class": list(beta), "dim_S": piece.ambient_dim, "dim_I": piece.dim,
                       "codim": piece.ambient_dim - piece.dim}, str(piece.ambient_dim - piece.dim))
    if args.action == "artinian":
        ok = is_artinian_monomial(ideal)
        return Result({"artinian": ok}, str(ok).lower(), verdict=ok)
    if args.action == "colon":
        beta = _klass(v, args.klass)
        if not args.f:
            raise InputError("--f POLY is required")
        piece = colon_piece(ideal, parse_polynomial(args.f, v), beta)
        basis = [format_polynomial(p) for p in piece.polynomials()]
        return Result({"class": list(beta), "dim": piece.dim, "basis": basis},
                      "\n".join(basis) if basis else "0")
    if args.action == "dimv":
        d = dim_V_monomial(ideal)
        return Result({"dim_V": d}, str(d))
    eta = _divisor(v, args.eta)
    beta = _klass(v, args.klass) if args.klass else None
    li = l_index(ideal, args.n, eta, args.i, args.k if args.k is not None else v.dim, args.cutoff, beta)
    shown = "inf" if li == toric.INFINITE else li
    return Result({"l": shown, "n": args.n, "i": args.i, "eta": list(eta)}, str(shown))


def cmd_gorenstein(args) -> Result:
    v = _variety(args)
    ideal = _ideal(v, args)
    lam = _socle(v, args.socle)
    if args.action == "verify":
        if args.ample_only:
            degrees = probe_degrees(v, lam.socle_degree)
        else:
            degrees = [c for c in effective_classes(v, _weight(v, lam.socle_degree))]
        rep = verify_cox_gorenstein(ideal, lam, degrees)
        payload = rep.to_dict()
        lines = [f"beta={list(r.beta)} codim I={r.codim_ideal} codim ann={r.codim_annihilator} equal={r.equal}"
                 for r in rep.records]
        lines.append(f"verdict: {rep.verdict}")
        return Result(payload, "\n".join(lines), verdict=rep.verdict)
    ideal2 = _ideal(v, args, "2")
    lam2 = _socle(v, args.socle2, "--socle2")
    f = find_link(ideal, lam, ideal2, lam2)
    return Result({"F": format_polynomial(f), "degree": list(f.degree)}, format_polynomial(f))


def _weight(v, c):
    from .coxring import DEFAULT_SESSION

    ell = DEFAULT_SESSION.functional(v)
    return sum(a * b for a, b in zip(ell, c))


def cmd_jacobian(args) -> Result:
    v = _variety(args)
    if not args.poly:
        raise InputError("--poly F is required")
    f = parse_polynomial(args.poly, v)
    jac = jacobian(f)
    literal = socle_degree_formula(f, "literal")
    complement = socle_degree_formula(f, "complement")
    window = effective_classes(v, _weight(v, complement) + args.margin)
    brute = socle_degrees_bruteforce(jac, window)
    payload = {
        "generators": [format_polynomial(g) for g in jac.generators],
        "socle_literal": list(literal),
        "socle_complement": list(complement),
        "socle_bruteforce": [list(b) for b in brute],
    }
    return Result(payload)


def cmd_bounds(args) -> Result:
    a = args.action
    if a == "lemma41":
        val = bounds.lemma41_bound(args.n, args.k, args.d)
        return Result({"n": args.n, "k": args.k, "d": args.d, "bound": val}, str(val))
    if a == "corollary":
        val = bounds.corollary_bound(args.n, args.k, args.x, allow_out_of_range=args.allow_out_of_range)
        return Result({"n": args.n, "k": args.k, "x": args.x, "bound": val}, str(val))
    if a == "delta2":
        val = bounds.delta2_of(_rat(args.eps2), args.k, tol=args.tol)
        return Result({"eps2": args.eps2, "k": args.k, "delta2": str(val), "delta2_float": float(val)},
                      f"{float(val):.17g}")
    if a == "gamma":
        g, j = bounds.gamma_min(args.k, _rat(args.d))
        return Result({"k": args.k, "d": args.d, "gamma": bounds._fmt(g), "integer": j}, bounds._fmt(g))
    if a == "delta1":
        val = bounds.delta1_of(_rat(args.eps1), args.k, _rat(args.gamma), margin=args.tol)
        return Result({"eps1": args.eps1, "k": args.k, "gamma": args.gamma, "delta1": str(val),
                       "delta1_float": float(val)}, f"{float(val):.17g}")
    cert = bounds.main_certificate(_rat(args.eps), args.k, args.r,
                                   m=args.m, d=None if args.d is None else _rat(args.d))
    payload = json.loads(cert.to_json())
    lines = [f"[{'ok' if c.satisfied else 'FAIL'}] {c.text}  slack={c.slack}" for c in cert.constraints]
    lines += [f"{k} = {v}" for k, v in sorted(cert.constants.items())]
    lines.append(f"binding cap: {cert.binding_cap}")
    lines.append(f"verdict: {cert.verdict}")
    return Result(payload, "\n".join(lines), verdict=cert.verdict)


def cmd_check(args) -> Result:
    v = _variety(args)
    cfg = campaign.CampaignConfig(
        variety=args.variety,
        divisor=_divisor(v, args.divisor),
        ns=_n_range(args.n),
        trials=args.trials,
        seed=args.seed,
        sampler=args.sampler,
        max_codim=args.max_codim,
        codims=_ints(args.codims) if args.codims else None,
        force=args.force,
    )
    run = campaign.run_macaulay_campaign if args.action == "macaulay" else campaign.run_restriction_campaign
    rep = run(cfg, workers=args.workers)
    text = [f"{args.action} campaign on {cfg.variety}, D={list(cfg.divisor)}, n={list(cfg.ns)}, "
            f"trials={cfg.trials}, seed={cfg.seed}, sampler={cfg.sampler}"
            + (" [exploratory]" if rep.exploratory else ""),
            f"records: {len(rep.records)}",
            f"violations: {rep.violations}"]
    if args.action == "restriction":
        text.append(f"identity failures: {rep.identity_failures}")
        text.append(f"n=1 lemma failures: {rep.lemma_failures}")
    text.append(f"verdict: {rep.verdict}")
    if rep.witnesses:
        text.append("first witness: " + json.dumps(rep.witnesses[0], sort_keys=True))
    return Result(rep.to_dict(), "\n".join(text), verdict=rep.verdict)


# ---------------------------------------------------------------------------
# parser


def _common(p):
    p.add_argument("--json", action="store_true", help="print a JSON document")
    p.add_argument("--seed", type=int, default=0, help="PRNG seed (recorded in reports)")
    p.add_argument("--tol", type=float, default=1e-12, help="tolerance for numeric solvers")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coxlab", description="Exact Cox ring and Macaulay bound computations.")
    ap.add_argument("--version", action="version", version=f"coxlab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    var_help = "p:N, wp:q0,q1,.., f:r, pxp:a,b or a fan JSON file"

    p = sub.add_parser("variety", help="grading, irrelevant ideal, fan validation")
    p.add_argument("action", choices=["info", "validate", "fan"])
    p.add_argument("--variety", help=var_help)
    p.add_argument("--fan", help="fan JSON file (validate)")
    _common(p)
    p.set_defaults(func=cmd_variety)

    p = sub.add_parser("hilbert", help="dimension of a graded piece of the Cox ring")
    p.add_argument("--variety", required=True, help=var_help)
    p.add_argument("--class", dest="klass", required=True, help="divisor class, e.g. 5 or 1,2")
    _common(p)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("macaulay", help="Macaulay decomposition and the lower/upper maps")
    p.add_argument("action", choices=["decomp", "lower", "upper"])
    p.add_argument("c", type=int)
    p.add_argument("n", type=int)
    _common(p)
    p.set_defaults(func=cmd_macaulay)

    p = sub.add_parser("ideal", help="queries on homogeneous ideals")
    p.add_argument("action", choices=["hilbert", "artinian", "colon", "dimv", "li"])
    p.add_argument("--variety", required=True, help=var_help)
    p.add_argument("--ideal", help="ideal JSON file")
    p.add_argument("--gens", help="comma-separated generators, e.g. 'x1^2,x2^2'")
    p.add_argument("--class", dest="klass", help="degree beta")
    p.add_argument("--f", help="polynomial F for the colon (I : F)")
    p.add_argument("--eta", help="ample class eta (li)")
    p.add_argument("--n", type=int, default=1, help="starting multiple n (li)")
    p.add_argument("--i", type=int, default=1, help="index i (li)")
    p.add_argument("--k", type=int, help="dimension k (li; default dim Y)")
    p.add_argument("--cutoff", type=int, help="search cutoff for l (li)")
    _common(p)
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("gorenstein", help="annihilator verification and colon linkage")
    p.add_argument("action", choices=["verify", "link"])
    p.add_argument("--variety", required=True, help=var_help)
    p.add_argument("--ideal", help="ideal JSON file")
    p.add_argument("--gens", help="comma-separated generators")
    p.add_argument("--socle", help="polynomial P; the functional is dual to P")
    p.add_argument("--ideal2", help="second (larger) ideal JSON file (link)")
    p.add_argument("--gens2", help="second ideal generators (link)")
    p.add_argument("--socle2", help="socle polynomial of the second ideal (link)")
    p.add_argument("--ample-only", action="store_true", help="verify ample degrees only")
    _common(p)
    p.set_defaults(func=cmd_gorenstein)

    p = sub.add_parser("jacobian", help="Jacobian ideal and socle degree of a hypersurface")
    p.add_argument("--variety", required=True, help=var_help)
    p.add_argument("--poly", help="the polynomial F")
    p.add_argument("--margin", type=int, default=2, help="extra weight searched above the predicted socle")
    _common(p)
    p.set_defaults(func=cmd_jacobian)

    p = sub.add_parser("bounds", help="effective bounds and the constant certificate")
    bsub = p.add_subparsers(dest="action", required=True)
    b = bsub.add_parser("lemma41")
    b.add_argument("n", type=int)
    b.add_argument("k", type=int)
    b.add_argument("d", type=int)
    _common(b)
    b = bsub.add_parser("corollary")
    b.add_argument("n", type=int)
    b.add_argument("k", type=int)
    b.add_argument("x", type=int)
    b.add_argument("--allow-out-of-range", action="store_true")
    _common(b)
    b = bsub.add_parser("delta2")
    b.add_argument("--eps2", required=True)
    b.add_argument("--k", type=int, required=True)
    _common(b)
    b = bsub.add_parser("gamma")
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--d", required=True)
    _common(b)
    b = bsub.add_parser("delta1")
    b.add_argument("--eps1", required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--gamma", required=True)
    _common(b)
    b = bsub.add_parser("certificate")
    b.add_argument("--eps", required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--r", type=int, required=True)
    b.add_argument("--m", type=int)
    b.add_argument("--d")
    _common(b)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("check", help="seeded verification campaigns")
    p.add_argument("action", choices=["macaulay", "restriction"])
    p.add_argument("--variety", required=True, help=var_help)
    p.add_argument("--divisor", help="class of D (default 1 for Picard rank one)")
    p.add_argument("--n", default="1-4", help="n values: 3, 1-4 or 1,3")
    p.add_argument("--trials", type=int, default=200, help="trials per n")
    p.add_argument("--sampler", default="random-rational", choices=list(campaign.SAMPLERS))
    p.add_argument("--max-codim", type=int, default=10)
    p.add_argument("--codims", help="explicit codimension targets, e.g. 0,1,5")
    p.add_argument("--force", action="store_true", help="run outside the strongly Fano hypothesis (exploratory)")
    p.add_argument("--workers", type=int, help=f"worker processes (default ${campaign.THREADS_ENV} or 1)")
    _common(p)
    p.set_defaults(func=cmd_check)
    return ap


INPUT_ERRORS = (InputError, ValueError, LookupError, OSError, PolynomialSyntaxError, json.JSONDecodeError)


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        res = args.func(args)
    except LinkCheckFailed as exc:
        print(f"link check failed: {exc}", file=sys.stderr)
        return 1
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(res.payload, sort_keys=True, indent=2))
    else:
        print(res.text)
    return 0 if res.verdict else 1


if __name__ == "__main__":
    sys.exit(main())
