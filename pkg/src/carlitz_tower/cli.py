"""carlitz-tower command line.

Polynomials are written in ASCII with variable t: ``t^3+t+1``, ``2t^2+1``.
Over F_(p^r) with r > 1 a coefficient is a bracketed vector of F_p digits,
low degree first: ``t^2+t+[0,1]``.

Exit codes: 0 all checks pass, 1 a verification failed, 2 bad input,
3 a resource ceiling was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass

from . import __version__, cache, config
from . import _kernels
from .carlitz import residue_group
from .coeff_rings import PadicNum, characters_of, witt_ring
from .curve_zeta import (analytic_zeta, conjugate_pairing_report, counting_zeta, fitting_check, golden_compare,
                         golden_path, golden_record, p_part)
from .errors import CeilingError, PrecisionError, VerificationError
from .field import field_for_q
from .poly import Poly, is_irreducible, parse_poly, smallest_factor
from .stickelberger import euler_vs_sum_check, theta_chi, theta_chi0_closed_form, theta_sharp, theta_truncate
from .zeta import (congruence_exponent, degree_bound, verify_infty_interpolation, verify_vadic_congruence,
                   verify_vadic_identity, z_poly)

SCHEMA = 1


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    q: int
    P: Poly | None
    level: int = 0
    D: int | None = None
    m: int = config.WITT_PRECISION
    nu_precision: int = 4
    N: int = 16
    output: str | None = None
    budget: int = config.POINT_BUDGET

    @property
    def p(self) -> int:
        return self.P.field.p if self.P is not None else field_for_q(self.q).p

    def echo(self) -> dict:
        return {"q": self.q, "P": None if self.P is None else str(self.P), "level": self.level, "D": self.D,
                "m": self.m, "nu_precision": self.nu_precision, "N": self.N, "budget": self.budget}


def _int_expr(text: str) -> int:
    """Accept 67108864, 2^26 or 2**26."""
    s = text.replace("**", "^")
    try:
        if "^" in s:
            b, e = s.split("^")
            return int(b) ** int(e)
        return int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _load_poly(q: int, text: str) -> Poly:
    try:
        F = field_for_q(q)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    try:
        P = parse_poly(F, text)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if P.degree < 1 or not P.is_monic():
        raise InputError(f"{P} must be monic of positive degree")
    if not is_irreducible(P):
        fac = smallest_factor(P)
        raise InputError(f"{P} is reducible: divisible by {fac}")
    return P


def _config(args) -> RunConfig:
    for name in ("m", "nu_precision", "N"):
        if getattr(args, name, 1) is not None and getattr(args, name, 1) < 1:
            raise InputError(f"--{name.replace('_', '-')} must be at least 1")
    if getattr(args, "level", 0) < 0:
        raise InputError("--level must be non-negative")
    try:
        field_for_q(args.q)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    P = _load_poly(args.q, args.p) if getattr(args, "p", None) else None
    return RunConfig(q=args.q, P=P, level=getattr(args, "level", 0), D=getattr(args, "deg", None),
                     m=getattr(args, "m", config.WITT_PRECISION), nu_precision=getattr(args, "nu_precision", 4),
                     N=getattr(args, "N", 16), output=args.output, budget=getattr(args, "budget", config.POINT_BUDGET))


def _verdict(ok: bool | None) -> str:
    return "skipped" if ok is None else ("pass" if ok else "fail")


# -- commands ------------------------------------------------------------------
def cmd_theta(cfg: RunConfig) -> dict:
    P, n = cfg.P, cfg.level
    theta = theta_truncate(P, n, cfg.D)
    G = residue_group(P, n)
    ring = witt_ring(G.q, G.d, cfg.m)
    chars = []
    for chi in characters_of(G):
        ct = theta_chi(theta, chi, ring)
        entry = {"character": chi.label(), "k": chi.k, "type": chi.type, "stabilized": ct.stabilized,
                 "theta": ct.format(), "degree": ct.degree()}
        if chi.type == 3:
            entry["theta_sharp"] = None
            entry["theta_sharp_status"] = "skipped: type 3 unsupported"
        elif not ct.stabilized:
            entry["theta_sharp"] = None
            entry["theta_sharp_status"] = "skipped: not stabilized"
        else:
            s = theta_sharp(ct)
            entry["theta_sharp"] = repr(s)
            entry["theta_sharp_status"] = "pass"
            if n == 0:
                entry["theta_sharp_valuation"] = s.valuation()
        chars.append(entry)
    return {"series": theta.to_json(), "characters": chars, "verdict": "pass"}


def cmd_zeta(cfg: RunConfig, jmax: int) -> dict:
    rows = []
    ok = True
    for j in range(jmax + 1):
        try:
            Z = z_poly(cfg.q, j)
            row = {"j": j, "bound": Z.bound, "S": [str(c) for c in Z.coeffs], "Z": Z.format(),
                   "Z_at_1": str(Z.at_one()), "degree_bound": "pass"}
        except VerificationError as exc:
            ok = False
            row = {"j": j, "bound": degree_bound(cfg.q, j), "degree_bound": "fail", "error": str(exc)}
        rows.append(row)
    return {"rows": rows, "verdict": _verdict(ok)}


def _suite_vadic(cfg: RunConfig, j, i, jmax: int) -> dict:
    P = cfg.P
    qd1 = P.field.q ** P.degree - 1
    if j is not None or i is not None:
        j = j if j is not None else i
        i = i if i is not None else j
        if (i - j) % qd1:
            return {"status": "skipped", "reason": "congruence precondition", "i": i, "j": j}
        pairs = [(j, i)]
    else:
        pairs = [(j, j) for j in range(jmax + 1)] + [(j, j + qd1 * k) for j, k in ((1, 1), (2, 1), (3, 2))]
    runs = [verify_vadic_identity(P, j, i, cfg.nu_precision) for j, i in pairs]
    return {"status": _verdict(all(r.passed for r in runs)),
            "runs": [{"j": r.details["j"], "i": r.details["i"], "D": r.details["D"], "passed": r.passed}
                     for r in runs], "m": cfg.nu_precision}


def _suite_congruence(cfg: RunConfig, imax: int, samples: int = 4) -> dict:
    P = cfg.P
    p = P.field.p
    rng = random.Random(f"{cfg.q}:{P}")
    runs = []
    for i in range(imax + 1):
        for _ in range(samples):
            y = PadicNum.from_digits(p, [rng.randrange(p) for _ in range(6)])
            r = verify_vadic_congruence(P, y, i)
            runs.append({"i": i, "z_exponent": congruence_exponent(P, i), "y": str(y), "passed": r.passed})
    return {"status": _verdict(all(r["passed"] for r in runs)), "runs": runs}


def _suite_infty(cfg: RunConfig, jmax: int) -> dict:
    D = cfg.D if cfg.D is not None else 5
    runs = [verify_infty_interpolation(cfg.P, j, D) for j in range(jmax + 1)]
    return {"status": _verdict(all(r.passed for r in runs)), "D": D,
            "runs": [{"j": r.details["j"], "passed": r.passed} for r in runs]}


def _suite_fitting(cfg: RunConfig) -> dict:
    P = cfg.P
    try:
        a = analytic_zeta(P)
        c = counting_zeta(P, cfg.budget)
    except CeilingError as exc:
        return {"status": "skipped", "reason": str(exc)}
    agree = a.numerator == c.numerator
    fit = fitting_check(P, a.h)
    return {"status": _verdict(agree and fit.verdict), "paths_agree": agree, "h": a.h,
            "fitting": fit.to_json()}


def cmd_verify(cfg: RunConfig, which: str, j=None, i=None, jmax: int = 6) -> dict:
    suites = {}
    todo = ["vadic", "vadic-congruence", "infty", "euler", "chi0"] if which == "all" else [which]
    D = cfg.D if cfg.D is not None else 8
    for name in todo:
        if name == "vadic":
            suites[name] = _suite_vadic(cfg, j, i, jmax)
        elif name == "vadic-congruence":
            suites[name] = _suite_congruence(cfg, min(jmax, 10))
        elif name == "infty":
            suites[name] = _suite_infty(cfg, jmax)
        elif name == "euler":
            r = euler_vs_sum_check(cfg.P, cfg.level, D)
            suites[name] = {"status": _verdict(r.passed), "per_degree": r.per_degree, "D": D}
        elif name == "chi0":
            r = theta_chi0_closed_form(cfg.P, D)
            suites[name] = {"status": _verdict(r.passed), **{k: v for k, v in r.details.items()}}
    if which == "all" and cfg.level == 0:
        suites["fitting"] = _suite_fitting(cfg)
    statuses = [s["status"] for s in suites.values()]
    overall = "fail" if "fail" in statuses else ("pass" if "pass" in statuses else "skipped")
    return {"suites": suites, "verdict": overall}


def cmd_curve(cfg: RunConfig, write_golden: bool) -> dict:
    P = cfg.P
    a = analytic_zeta(P)
    c = counting_zeta(P, cfg.budget)
    agree = a.numerator == c.numerator
    fit = fitting_check(P, a.h)
    out = {"genus": a.genus, "numerator": a.numerator, "h": a.h, "p_part": p_part(a.h, P.field.p),
           "N_k": c.counts, "completed_by_functional_equation": c.completed_by_functional_equation,
           "paths_agree": agree, "fitting": fit.to_json(), "conjugate_pairing": conjugate_pairing_report(P),
           "precision": a.precision}
    if agree:
        try:
            out["golden"] = golden_compare(golden_record(a, c, fit), golden_path(cfg.q, P), write_golden)
        except VerificationError as exc:
            out["golden"] = f"mismatch: {exc}"
            agree = False
    else:
        out["golden"] = "skipped"
    out["verdict"] = _verdict(agree and fit.verdict and out["conjugate_pairing"]["passed"])
    return out


# -- plumbing ---------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="carlitz-tower", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, required=True, help="field size, a prime power")
    common.add_argument("--output", "-o", help="write the JSON report here instead of stdout")
    common.add_argument("--cache-dir", help=f"cache directory (default ${config.CACHE_ENV} or ~/.cache)")
    common.add_argument("--no-cache", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    withP = argparse.ArgumentParser(add_help=False, parents=[common])
    withP.add_argument("--p", required=True, help="monic irreducible conductor, e.g. t^3+t+1")
    withP.add_argument("--m", type=int, default=config.WITT_PRECISION, help="p-adic precision of W")

    t = sub.add_parser("theta", parents=[withP], help="Stickelberger series and character parts")
    t.add_argument("--level", type=int, default=0)
    t.add_argument("--deg", type=int, default=None, help="truncation degree D")

    z = sub.add_parser("zeta", parents=[common], help="power sums, Z(X, j) and Z(1, j)")
    z.add_argument("--jmax", type=int, default=10)

    v = sub.add_parser("verify", parents=[withP], help="interpolation and structural checks")
    v.add_argument("--which", choices=["vadic", "vadic-congruence", "infty", "euler", "chi0", "all"], default="all")
    v.add_argument("--j", type=int)
    v.add_argument("--i", type=int)
    v.add_argument("--jmax", type=int, default=6)
    v.add_argument("--level", type=int, default=0)
    v.add_argument("--deg", type=int, default=None)
    v.add_argument("--nu-precision", type=int, default=4, help="work modulo P^m")
    v.add_argument("--budget", type=_int_expr, default=config.POINT_BUDGET)

    c = sub.add_parser("curve", parents=[withP], help="zeta numerator, class number, Fitting experiment")
    c.add_argument("--budget", type=_int_expr, default=config.POINT_BUDGET)
    c.add_argument("--write-golden", action="store_true", help="freeze a missing golden file")
    return ap


def _payload(args, cfg: RunConfig) -> dict:
    if args.command == "theta":
        return cmd_theta(cfg)
    if args.command == "zeta":
        return cmd_zeta(cfg, args.jmax)
    if args.command == "verify":
        return cmd_verify(cfg, args.which, args.j, args.i, args.jmax)
    return cmd_curve(cfg, args.write_golden)


def run(argv=None) -> tuple[int, dict]:
    return _run(build_parser().parse_args(argv))


def _run(args) -> tuple[int, dict]:
    saved = os.environ.get(config.CACHE_ENV)
    if args.cache_dir:
        os.environ[config.CACHE_ENV] = args.cache_dir
    if args.no_cache:
        os.environ[config.CACHE_ENV] = "off"
    try:
        return _run_inner(args)
    finally:
        if saved is None:
            os.environ.pop(config.CACHE_ENV, None)
        else:
            os.environ[config.CACHE_ENV] = saved


def _run_inner(args) -> tuple[int, dict]:
    start = time.perf_counter()
    hits0 = cache.hits()
    try:
        cfg = _config(args)
        inputs = cfg.echo()
        extra = {k: getattr(args, k) for k in ("jmax", "which", "j", "i", "write_golden") if hasattr(args, k)}
        inputs.update(extra)
        key = f"report-{args.command}-{cache.digest({'v': __version__, 'in': inputs})}"
        payload = cache.load(key)
        if payload is None:
            payload = _payload(args, cfg)
            if not (args.command == "curve" and args.write_golden):
                cache.store(key, payload)
        code = {"pass": 0, "skipped": 0}.get(payload.get("verdict"), 1)
    except InputError as exc:
        return 2, {"schema": SCHEMA, "command": args.command, "error": str(exc), "exit_code": 2}
    except CeilingError as exc:
        return 3, {"schema": SCHEMA, "command": args.command, "error": str(exc), "exit_code": 3}
    except (VerificationError, PrecisionError) as exc:
        return 1, {"schema": SCHEMA, "command": args.command, "error": str(exc), "exit_code": 1}
    report = {
        "schema": SCHEMA,
        "command": args.command,
        "inputs": inputs,
        "result": payload,
        "meta": {"version": __version__, "backend": _kernels.BACKEND,
                 "seconds": round(time.perf_counter() - start, 4), "cache_hits": cache.hits() - hits0},
    }
    return code, report


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    code, report = _run(args)
    text = dumps(report)
    if "error" in report:
        print(report["error"], file=sys.stderr)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
