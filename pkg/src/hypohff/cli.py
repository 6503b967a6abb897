"""Command-line frontend.

Every subcommand prints one machine-readable document (JSON by default,
CSV or text on request).  Counts that can exceed 2^53 - 1 are serialized
as decimal strings; exact densities as "num/den" strings.  Runs with
identical flags and seed are byte-identical under --deterministic, whatever
--threads is; exit codes: 0 success, 1 domain error, 2 usage error.
"""
from __future__ import annotations

import argparse
import io
import json
import os
import sys
import time
from fractions import Fraction

from .errors import DomainError
from .ffield import FieldCtx, enumerate_field, make_field
from .polyring import Poly, is_irreducible
from .polyparse import format_elem, format_poly, parse_elem, parse_poly
from .bivar import squarefree_part, square_classes_independent
from .census import (CensusSpec, CensusReport, correlation_mode, run_census,
                     swan_mode, type_census)
from .discclass import berlekamp_element, disc_class_odd, parity_law_check
from .wreath import (OrbitSetup, conjugation_orbit_on_T, count_transitive,
                     lemma_sweep)

SCHEMA = "hypoh-ff/1"


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _fact_key(tup) -> str:
    return "|".join("+".join(str(p) for p in part) for part in tup)


def _parse_fact_key(s: str):
    out = []
    for part in s.split("|"):
        out.append(tuple(sorted(int(x) for x in part.split("+"))))
    return tuple(out)


def _field_doc(ctx: FieldCtx) -> dict:
    base = make_field(ctx.p, 1)
    return {
        "p": ctx.p, "k": ctx.k, "q": str(ctx.q),
        "modulus": format_poly(Poly(base, ctx.modulus)),
    }


def _census_doc(command: str, report: CensusReport, seed: int) -> dict:
    spec = report.spec
    doc = {
        "schema": SCHEMA,
        "command": command,
        "field": _field_doc(spec.ctx),
        "n": spec.n,
        "outer": [format_poly(f) for f in spec.fs],
        "mode": ({"kind": "exhaustive"} if spec.mode == "exhaustive" else
                 {"kind": "sample", "size": spec.sample_size, "seed": spec.seed,
                  "prng": report.prng}),
        "seed": seed,
        "raw": spec.raw,
        "targets": [_fact_key((t,)) for t in report.targets],
        "counts": {
            "total": str(report.total),
            "separable": str(report.separable_total),
            "inseparable": str(report.inseparable_total),
            "hits": str(report.hits),
        },
        "histogram": {_fact_key(k): str(v)
                      for k, v in sorted(report.histogram.items(),
                                         key=lambda kv: _fact_key(kv[0]))},
    }
    if report.predicted_density is not None:
        q, n = spec.ctx.q, spec.n
        doc["setup"] = {"n": n,
                        "orbit_sizes": list(report.setup.orbit_sizes)}
        doc["prediction"] = {
            "density": _frac(report.predicted_density),
            "expected_hits": _frac(report.predicted_density * q ** n),
            "deviation": _frac(report.deviation),
            "normalized_deviation": report.normalized_deviation,
        }
    return doc


# ---------------------------------------------------------------------------
# subcommand handlers


def _get_ctx(args) -> FieldCtx:
    return make_field(args.p, args.k)


def _cmd_census(args, command="census") -> dict:
    ctx = _get_ctx(args)
    fs = tuple(parse_poly(s, ctx) for s in args.f or ())
    targets = None
    if args.target:
        targets = tuple(_parse_fact_key(t)[0] for t in args.target)
    spec = CensusSpec(
        ctx=ctx, n=args.n, fs=fs,
        mode="sample" if args.sample else "exhaustive",
        sample_size=args.sample or 0, seed=args.seed,
        targets=targets, raw=args.raw)
    report = (type_census if command == "type-census" else run_census)(
        spec, threads=args.threads)
    return _census_doc(command, report, args.seed)


def _cmd_type_census(args) -> dict:
    return _cmd_census(args, command="type-census")


def _cmd_predict(args) -> dict:
    from .wreath import predict_density
    sizes = tuple(int(x) for x in args.orbits.split(","))
    setup = OrbitSetup(args.n, sizes)
    targets = None
    if args.target:
        targets = tuple(_parse_fact_key(t)[0] for t in args.target)
    density = predict_density(setup, targets=targets)
    return {
        "schema": SCHEMA, "command": "predict",
        "n": args.n, "orbit_sizes": list(sizes),
        "targets": ([_fact_key((t,)) for t in targets] if targets
                    else [str(args.n * s) for s in sizes]),
        "density": _frac(density),
    }


def _cmd_wreath(args) -> dict:
    if args.n is not None:
        sizes = tuple(int(x) for x in (args.orbits or str(args.n)).split(","))
        setup = OrbitSetup(args.n, sizes)
        import math
        count = count_transitive(setup)
        formula = math.factorial(args.n) ** setup.nu // args.n ** setup.r
        return {
            "schema": SCHEMA, "command": "wreath",
            "n": args.n, "orbit_sizes": list(sizes),
            "transitive_count": str(count),
            "formula": str(formula),
            "count_matches": count == formula,
            "conjugation_orbits": conjugation_orbit_on_T(setup),
        }
    records = lemma_sweep(args.max_n, args.max_nu, guard=args.guard)
    return {
        "schema": SCHEMA, "command": "wreath",
        "max_n": args.max_n, "max_nu": args.max_nu, "guard": args.guard,
        "all_match": all(r["count_matches"] and r["conjugation_orbits"] == 1
                         for r in records),
        "records": [{**r, "count": str(r["count"]), "formula": str(r["formula"])}
                    for r in records],
    }


def _cmd_disc(args) -> dict:
    ctx = _get_ctx(args)
    if args.parity:
        rep = parity_law_check(ctx, args.deg_bound, args.samples, seed=args.seed)
        return {
            "schema": SCHEMA, "command": "disc",
            "field": _field_doc(ctx), "mode": "parity-law",
            "degree_bound": rep.degree_bound, "samples": rep.samples,
            "checked": rep.checked, "violations": rep.violations,
        }
    if not args.poly:
        raise DomainError("disc needs --poly or --parity")
    h = parse_poly(args.poly, ctx)
    doc = {"schema": SCHEMA, "command": "disc", "field": _field_doc(ctx),
           "poly": format_poly(h)}
    if ctx.p == 2:
        a, cls = berlekamp_element(h)
        doc["kind"] = "artin-schreier"
        doc["class"] = cls.value
        doc["trivial"] = cls.value == 0
        doc["berlekamp_element"] = format_elem(cls.raw)
    else:
        from .polyring import discriminant
        doc["kind"] = "square-class"
        doc["discriminant"] = format_elem(discriminant(h))
        doc["trivial"] = disc_class_odd(h)
    return doc


def _cmd_indep(args) -> dict:
    ctx = _get_ctx(args)
    polys = [parse_poly(s, ctx, var="T") for s in args.u]
    classes = [squarefree_part(u) for u in polys]
    return {
        "schema": SCHEMA, "command": "indep", "field": _field_doc(ctx),
        "classes": [{"rep": format_poly(c.rep, var="T"),
                     "nonsquare_unit": c.nonsquare_unit} for c in classes],
        "independent": square_classes_independent(classes),
    }


def _cmd_swan(args) -> dict:
    rep = swan_mode(args.deg_bound)
    return {
        "schema": SCHEMA, "command": "swan",
        "degree_bound": rep.degree_bound,
        "candidates": str(rep.candidates),
        "reducible": str(rep.reducible),
        "counterexamples": [list(v) for v in rep.counterexamples],
        "summary": f"{len(rep.counterexamples)} counterexamples",
    }


def _cmd_corr(args) -> dict:
    ctx = _get_ctx(args)
    omegas = [parse_elem(s, ctx) for s in args.omega]
    rep = correlation_mode(ctx, omegas)
    m = len(omegas)
    return {
        "schema": SCHEMA, "command": "corr", "field": _field_doc(ctx),
        "omegas": [format_elem(w) for w in omegas],
        "total": str(rep.total),
        "joint": {format(k, f"0{m}b"): str(v)
                  for k, v in sorted(rep.joint.items())},
        "all_irreducible": str(rep.all_irreducible),
        "independence_prediction": _frac(rep.independence_prediction),
        "relative_deviation": rep.relative_deviation,
        "even_sum_ok": rep.even_sum_ok,
        "marginals": [str(x) for x in rep.marginals],
    }


def _cmd_field_info(args) -> dict:
    ctx = _get_ctx(args)
    gen = ctx.gen
    return {
        "schema": SCHEMA, "command": "field-info",
        "field": _field_doc(ctx),
        "generator_coeffs": list(gen.coeffs),
        "element_count": str(sum(1 for _ in enumerate_field(ctx))),
    }


# ---------------------------------------------------------------------------
# rendering


def _render_csv(doc: dict) -> str:
    import csv
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if "histogram" in doc:
        w.writerow(["types", "count"])
        for k, v in doc["histogram"].items():
            w.writerow([k, v])
    elif "records" in doc:
        w.writerow(["n", "orbit_sizes", "count", "formula", "conjugation_orbits"])
        for r in doc["records"]:
            w.writerow([r["n"], "+".join(str(s) for s in r["orbit_sizes"]),
                        r["count"], r["formula"], r["conjugation_orbits"]])
    elif "joint" in doc:
        w.writerow(["pattern", "count"])
        for k, v in doc["joint"].items():
            w.writerow([k, v])
    else:
        w.writerow(["key", "value"])
        for k, v in doc.items():
            if k != "schema" and not isinstance(v, (dict, list)):
                w.writerow([k, v])
    return buf.getvalue()


def _render_text(doc: dict, indent=0) -> str:
    lines = []

    def emit(k, v, depth):
        pad = "  " * depth
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            for kk, vv in v.items():
                emit(kk, vv, depth + 1)
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(f"{pad}  - " + ", ".join(f"{a}={b}" for a, b in item.items()))
        else:
            lines.append(f"{pad}{k}: {v}")

    for k, v in doc.items():
        emit(k, v, indent)
    return "\n".join(lines) + "\n"


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    default_seed = int(os.environ.get("HYPOH_SEED", "0"))
    top = argparse.ArgumentParser(
        prog="hypohff",
        description="Exact irreducibility censuses over finite fields, with "
                    "wreath-product density predictions.")
    sub = top.add_subparsers(dest="subcommand", required=True)

    def common(p, field=True):
        if field:
            p.add_argument("--p", type=int, default=2, help="field characteristic")
            p.add_argument("--k", type=int, default=1, help="extension degree")
        p.add_argument("--seed", type=int, default=default_seed)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--format", choices=["json", "csv", "text"], default="json")
        p.add_argument("--out", default=None)
        p.add_argument("--deterministic", action="store_true",
                       help="suppress the timestamp field")

    pc = sub.add_parser("census", help="count substitutions by factorization type")
    common(pc)
    pc.add_argument("--n", type=int, required=True, help="substitution degree")
    pc.add_argument("--f", action="append", required=True,
                    help="outer polynomial literal (repeatable)")
    pc.add_argument("--sample", type=int, default=0,
                    help="sample size (0 = exhaustive)")
    pc.add_argument("--target", action="append",
                    help="factorization-type partition per --f, e.g. '1+2'")
    pc.add_argument("--raw", action="store_true",
                    help="allow reducible outer polynomials; histogram only")
    pc.set_defaults(handler=_cmd_census)

    pt = sub.add_parser("type-census", help="census against explicit type targets")
    common(pt)
    pt.add_argument("--n", type=int, required=True)
    pt.add_argument("--f", action="append", required=True)
    pt.add_argument("--sample", type=int, default=0)
    pt.add_argument("--target", action="append", required=True)
    pt.add_argument("--raw", action="store_true")
    pt.set_defaults(handler=_cmd_type_census)

    pp = sub.add_parser("predict", help="wreath-model density of a type tuple")
    common(pp, field=False)
    pp.add_argument("--n", type=int, required=True)
    pp.add_argument("--orbits", required=True, help="comma-separated orbit sizes")
    pp.add_argument("--target", action="append")
    pp.set_defaults(handler=_cmd_predict)

    pw = sub.add_parser("wreath", help="verify the transitive-count identity")
    common(pw, field=False)
    pw.add_argument("--n", type=int, default=None)
    pw.add_argument("--orbits", default=None, help="comma-separated orbit sizes")
    pw.add_argument("--max-n", type=int, default=4)
    pw.add_argument("--max-nu", type=int, default=4)
    pw.add_argument("--guard", type=int, default=10 ** 6)
    pw.set_defaults(handler=_cmd_wreath)

    pd = sub.add_parser("disc", help="discriminant class of a polynomial")
    common(pd)
    pd.add_argument("--poly", default=None, help="polynomial literal in X")
    pd.add_argument("--parity", action="store_true",
                    help="run the char-2 parity-law check instead")
    pd.add_argument("--deg-bound", type=int, default=8)
    pd.add_argument("--samples", type=int, default=300)
    pd.set_defaults(handler=_cmd_disc)

    pi = sub.add_parser("indep", help="square-class independence over F_q(T)")
    common(pi)
    pi.add_argument("--u", action="append", required=True,
                    help="polynomial literal in T (repeatable)")
    pi.set_defaults(handler=_cmd_indep)

    ps = sub.add_parser("swan", help="verify composite values of the degree-8 family")
    common(ps, field=False)
    ps.add_argument("--deg-bound", type=int, required=True)
    ps.set_defaults(handler=_cmd_swan)

    pr = sub.add_parser("corr", help="joint irreducibility of quadratic shifts (char 2)")
    common(pr)
    pr.add_argument("--omega", action="append", required=True,
                    help="field-element literal (repeatable)")
    pr.set_defaults(handler=_cmd_corr)

    pf = sub.add_parser("field-info", help="describe the field construction")
    common(pf)
    pf.set_defaults(handler=_cmd_field_info)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.handler(args)
    except DomainError as exc:
        err = {"schema": SCHEMA, "error": {"kind": "domain-error",
                                           "message": str(exc)}}
        _emit(args, json.dumps(err, indent=2) + "\n")
        return 1
    if not args.deterministic:
        doc["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    if args.format == "json":
        _emit(args, json.dumps(doc, indent=2) + "\n")
    elif args.format == "csv":
        _emit(args, _render_csv(doc))
    else:
        _emit(args, _render_text(doc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
