"""Command line front end for the certification engine.

Subcommands:
  exponent           one (order, n) stability-exponent record as JSON
  table              exponent records over a dimension range, CSV or JSON
  certify            drive one positivity certification, emit certificates
  verify-identities  replay the stated integral identities, one line per id
  gamma-check        transcendental cross-check of the order-4 root
  cascade            --dump: the recursion tables as JSON
  spectral           --dump: spectral polynomials and the quartic reduction
  report             one JSON document bundling all of the above

Exit codes: 0 on success, 2 on usage errors, 1 when a verification fails.
Every numeric claim is printed as a two-endpoint enclosure, never a single
rounded value; endpoints are rounded outward so the printed interval always
contains the computed one.  JL_PRECISION_BITS overrides the default working
precision; an explicit --precision flag beats both.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from . import cascade
from . import exponents
from . import identities
from . import lemmas
from . import spectral

DEFAULT_PREC = 256

CSV_HEADER = ("order,n,p_c_lo,p_c_hi,radical_lo,radical_hi,"
              "R1_lo,R1_hi,R2_lo,R2_hi")


class UsageError(ValueError):
    pass


def working_precision(args, default=DEFAULT_PREC):
    if getattr(args, "precision", None) is not None:
        return args.precision
    env = os.environ.get("JL_PRECISION_BITS")
    if env is not None:
        try:
            bits = int(env)
        except ValueError:
            raise UsageError(f"JL_PRECISION_BITS={env!r} is not an integer")
        if bits < 16:
            raise UsageError("JL_PRECISION_BITS must be at least 16")
        return bits
    return default


# ---------------------------------------------------------------- rendering

def _dec_directed(fr, digits, up):
    """Decimal string with `digits` places, rounded toward -inf or +inf."""
    q, r = divmod(fr.numerator * 10 ** digits, fr.denominator)
    if up and r:
        q += 1
    sign = "-" if q < 0 else ""
    body = f"{abs(q):0{digits + 1}d}"
    return f"{sign}{body[:-digits]}.{body[-digits:]}"


def _digits_for(iv):
    # print as many decimals as the enclosure actually certifies
    w = iv.width()
    d = 12
    while d < 40 and w < Fraction(1, 10 ** d):
        d += 1
    return d


def endpoints(iv):
    """Outward-rounded [lo, hi] decimal strings for an enclosure."""
    digits = _digits_for(iv)
    return [_dec_directed(iv.lo(), digits, False),
            _dec_directed(iv.hi(), digits, True)]


def texlike(expr):
    """Render a differential-ring residual as TeX-like text."""
    if expr.is_zero():
        return "0"
    parts = []
    for (m, fe, ce), c in sorted(expr.terms.items(), reverse=True):
        bits = []
        if m:
            bits.append("\\lambda" + (f"^{{{m}}}" if m > 1 else ""))
        for j, e in enumerate(fe):
            if not e:
                continue
            base = "f" + "'" * j if j <= 3 else f"f^{{({j})}}"
            bits.append(f"({base})^{{{e}}}" if e > 1 else base)
        for i, e in enumerate(ce):
            if e:
                bits.append(f"c_{i}" + (f"^{{{e}}}" if e > 1 else ""))
        body = " ".join(bits)
        if not body:
            parts.append(str(c))
        elif c == 1:
            parts.append(body)
        elif c == -1:
            parts.append(f"-{body}")
        else:
            parts.append(f"{c} {body}")
    return " + ".join(parts).replace("+ -", "- ")


# ----------------------------------------------------------------- records

def record_json(rec):
    out = {"order": rec["order"], "n": rec["n"],
           "precision": rec["precision"]}
    if rec["p_c"] == "inf":
        out.update(p_c="inf", radical=None, R1=None, R2=None)
        return out
    out["p_c"] = endpoints(rec["p_c"])
    for key in ("radical", "R1", "R2"):
        v = rec[key]
        out[key] = None if v is None else endpoints(v)
    return out


def build_records(order, n_lo, n_hi, prec):
    """One row per n; computation errors are annotated, never dropped."""
    rows, failures = [], 0
    for n in range(n_lo, n_hi + 1):
        try:
            rows.append(record_json(exponents.record(order, n, prec)))
        except (ValueError, ArithmeticError) as exc:
            failures += 1
            rows.append({"order": order, "n": n, "precision": prec,
                         "error": str(exc)})
    return rows, failures


def csv_rows(rows):
    out = [CSV_HEADER]
    for row in rows:
        if "error" in row:
            msg = row["error"].replace(",", ";")
            cells = [f"error:{msg}"] + [""] * 7
        elif row["p_c"] == "inf":
            cells = ["inf", "inf"] + [""] * 6
        else:
            cells = list(row["p_c"])
            for key in ("radical", "R1", "R2"):
                cells += row[key] if row[key] else ["", ""]
        out.append(",".join([str(row["order"]), str(row["n"])] + cells))
    return out


# ------------------------------------------------------------- subcommands

def cmd_exponent(args):
    prec = working_precision(args)
    if args.n < 2 * args.order + 1:
        raise UsageError(f"order {args.order} needs n >= {2 * args.order + 1}")
    rec = exponents.record(args.order, args.n, prec)
    print(json.dumps(record_json(rec), indent=2))
    return 0


def cmd_table(args):
    prec = working_precision(args)
    if args.n_min > args.n_max:
        raise UsageError("--n-min must not exceed --n-max")
    if args.n_min < 2 * args.order + 1:
        raise UsageError(f"order {args.order} needs n >= {2 * args.order + 1}")
    rows, failures = build_records(args.order, args.n_min, args.n_max, prec)
    if args.format == "csv":
        print("\n".join(csv_rows(rows)))
    else:
        print(json.dumps({"records": rows, "failures": failures}, indent=2))
    return 1 if failures else 0


def _parse_span(text):
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"expected A..B, got {text!r}")
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def _emit(doc, out_path):
    text = json.dumps(doc, indent=2)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_certify(args):
    prec = working_precision(args, default=128)
    if args.n is not None and args.n_range is not None:
        raise UsageError("--n and --n-range are mutually exclusive")
    span = None
    if args.n is not None:
        span = (args.n, args.n)
    elif args.n_range is not None:
        span = _parse_span(args.n_range)
    try:
        doc = lemmas.certify_lemma(args.lemma, span, prec=prec)
    except KeyError:
        known = ", ".join(sorted(lemmas.registry()))
        raise UsageError(f"unknown lemma {args.lemma!r}; known: {known}")
    except lemmas.CertificationFailure as exc:
        doc = {"lemma_id": args.lemma, "pass": False, "failure": str(exc),
               "n": exc.n,
               "isolating": ([str(x) for x in exc.isolating]
                             if exc.isolating else None)}
        _emit(doc, args.out)
        return 1
    _emit(doc, args.out)
    return 0


def identity_rows():
    rows = []
    for rec in identities.catalog():
        res = identities.residual(rec)
        rows.append({"id": rec["id"],
                     "verdict": "Verified" if res.is_zero() else "Residual",
                     "residual": None if res.is_zero() else texlike(res)})
    derived_bad = []
    for j in range(1, 8):
        if not identities.residual(identities.decompose(j, 1)).is_zero():
            derived_bad.append(f"fd1-{j}")
    for j in range(7):
        if not identities.residual(identities.decompose(j, 2)).is_zero():
            derived_bad.append(f"fd2-{j}")
    return rows, derived_bad


def cmd_verify_identities(args):
    rows, derived_bad = identity_rows()
    for row in rows:
        if row["verdict"] == "Verified":
            print(f"{row['id']}: Verified")
        else:
            print(f"{row['id']}: Residual  {row['residual']}")
    if derived_bad:
        print(f"derived decompositions FAILED: {', '.join(derived_bad)}")
        return 1
    print("derived decompositions: all 14 reduce to zero")
    return 0


def cmd_gamma_check(args):
    prec = working_precision(args, default=96)
    n_lo, n_hi = _parse_span(args.n_range)
    if n_lo < 18:
        raise UsageError("gamma-check needs n >= 18")
    try:
        tol = Fraction(args.tol)
    except ValueError:
        raise UsageError(f"bad --tol {args.tol!r}")
    bad = 0
    for n in range(n_lo, n_hi + 1):
        d = exponents.eval_d(n, prec)
        k = Fraction(n - 10, 2) - d
        res = spectral.gamma_crosscheck(n, k, prec)
        lo, hi = endpoints(res)
        ok = res.lo() <= 0 <= res.hi() and max(-res.lo(), res.hi()) <= tol
        if ok:
            print(f"n={n} ok residual=[{lo}, {hi}]")
        else:
            bad += 1
            factor = res + 1
            flo, fhi = endpoints(factor)
            print(f"n={n} FAIL residual=[{lo}, {hi}] "
                  f"discrepancy_factor=[{flo}, {fhi}]")
    return 1 if bad else 0


def cmd_cascade(args):
    print(json.dumps(cascade.dump(), indent=2))
    return 0


def cmd_spectral(args):
    print(json.dumps(spectral.dump(), indent=2))
    return 0


def build_report(prec):
    rows, derived_bad = identity_rows()
    comparison = []
    closed_ok = True
    for row in cascade.compare_with_paper():
        match = row["status"] == "Match"
        if not match and not row["symbol"].endswith("-assembly"):
            closed_ok = False
        comparison.append({"symbol": row["symbol"], "status": row["status"],
                           "diff": None if match
                           else row["diff"].serialize()})
    lemma_report = lemmas.full_report(9, 120, prec=min(prec, 192))
    table, failures = build_records(4, 9, 120, prec)
    ok = (not derived_bad and closed_ok and lemma_report["pass"]
          and not failures)
    doc = {
        "identities": {"stated": rows, "derived_failures": derived_bad},
        "closed_form_comparison": comparison,
        "lemmas": lemma_report,
        "exponents": table,
        "precision": prec,
        "pass": ok,
    }
    return doc, ok


def cmd_report(args):
    prec = working_precision(args)
    doc, ok = build_report(prec)
    _emit(doc, args.out)
    return 0 if ok else 1


# ---------------------------------------------------------------- dispatch

class Once(argparse.Action):
    """Reject a scalar flag given twice instead of silently keeping the last."""

    def __call__(self, parser, namespace, values, option_string=None):
        seen = getattr(namespace, "_seen_once", None)
        if seen is None:
            seen = set()
            namespace._seen_once = seen
        if self.dest in seen:
            parser.error(f"{option_string} given more than once")
        seen.add(self.dest)
        setattr(namespace, self.dest, values)


def _parser():
    top = argparse.ArgumentParser(
        prog="polystab",
        description="certified stability exponents and positivity lemmas")
    sub = top.add_subparsers(dest="command", required=True)

    def add_precision(p):
        p.add_argument("--precision", type=int, action=Once,
                       help=f"working precision bits (default "
                            f"{DEFAULT_PREC}, env JL_PRECISION_BITS)")

    p = sub.add_parser("exponent", help="one (order, n) record as JSON")
    p.add_argument("--order", type=int, required=True, choices=(1, 2, 3, 4),
                   action=Once)
    p.add_argument("--n", type=int, required=True, action=Once)
    add_precision(p)
    p.set_defaults(func=cmd_exponent)

    p = sub.add_parser("table", help="records over an n range")
    p.add_argument("--order", type=int, required=True, choices=(1, 2, 3, 4),
                   action=Once)
    p.add_argument("--n-min", type=int, required=True, action=Once)
    p.add_argument("--n-max", type=int, required=True, action=Once)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    add_precision(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("certify", help="run one positivity certification")
    p.add_argument("--lemma", required=True, action=Once)
    p.add_argument("--n", type=int, action=Once)
    p.add_argument("--n-range", action=Once, metavar="A..B")
    p.add_argument("--out", action=Once, metavar="FILE.json")
    add_precision(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify-identities",
                       help="replay the integral identities")
    p.set_defaults(func=cmd_verify_identities)

    p = sub.add_parser("gamma-check",
                       help="transcendental residual at the certified root")
    p.add_argument("--n-range", required=True, action=Once, metavar="A..B")
    p.add_argument("--tol", default="1e-9", action=Once)
    add_precision(p)
    p.set_defaults(func=cmd_gamma_check)

    p = sub.add_parser("cascade", help="emit the recursion tables")
    p.add_argument("--dump", action="store_true", required=True)
    p.set_defaults(func=cmd_cascade)

    p = sub.add_parser("spectral", help="emit the spectral polynomials")
    p.add_argument("--dump", action="store_true", required=True)
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("report", help="one-shot full verification report")
    p.add_argument("--out", action=Once, metavar="FILE.json")
    add_precision(p)
    p.set_defaults(func=cmd_report)

    return top


def main(argv=None):
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
