"""Command-line interface.

Exit codes: 0 success (any verdict), 1 input error, 2 non-termination,
3 unsupported algebra class or strategy mismatch.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .algebra import AlgebraTable, close_presentation
from .errors import (AlgebraMismatch, FactorRuleRefused, InputError, NoFormFound, NonTerminating,
                     QuotientMismatch, RelationViolation, ReptypeError, TableTooShort,
                     UnsupportedClass)
from .field import parse_field
from .frobenius import find_frobenius_form
from .module import ModuleRep, trivial_module
from .repcert import (Certificate, certify_factor_rule, certify_wild_lemma, certify_wild_theorem,
                      corpus_presentation, family_member, resolve_algebra, scan_family,
                      verify_trail)
from .resolution import (DEFAULT_CUTOFF, DEFAULT_DMAX, complexity_estimate, minimal_resolution,
                         periodicity)

EXIT_OK, EXIT_INPUT, EXIT_NONTERM, EXIT_UNSUPPORTED = 0, 1, 2, 3


class StrategyMismatch(ReptypeError):
    pass


# -- loading ---------------------------------------------------------------------

def load_target(target: str, field_override: str | None = None) -> tuple[AlgebraTable, str]:
    """Close the presentation named by target; returns (algebra, reference string)."""
    if target.startswith("corpus:"):
        pres = corpus_presentation(target[7:])
        ref = target
    else:
        path = target[5:] if target.startswith("file:") else target
        pres = io.load_presentation(path)
        ref = f"file:{path}"
    if field_override:
        F = parse_field(field_override)
        if F.p != pres.field.p:
            raise InputError(f"--field {field_override}: characteristic differs from "
                             f"{pres.field.name}")
        if F != pres.field:
            return close_presentation(pres).base_change(F), ref
    return close_presentation(pres), ref


def load_module_spec(spec: str, a: AlgebraTable, ref: str) -> ModuleRep:
    """``trivial``, ``regular``, ``[family:]M:<code>``/``N:<code>``, or a module file."""
    if spec.startswith("family:"):
        spec = spec[7:]
    if spec == "trivial":
        return trivial_module(a)
    if spec == "regular":
        from .algebra import regular_module
        return regular_module(a)
    if spec[:2] in ("M:", "N:"):
        try:
            lam = int(spec[2:])
        except ValueError as exc:
            raise InputError(f"family parameter must be a field code, got {spec[2:]!r}") from exc
        if not 0 <= lam < a.field.q:
            raise InputError(f"family parameter {lam} is not a code of {a.field.name}")
        return family_member(a, spec[0], lam)

    def resolve(r):
        return a if r == ref else resolve_algebra(r)
    m = io.load_module(spec, resolve)
    if m.algebra.content_hash() != a.content_hash():
        raise AlgebraMismatch(f"module {spec} is over {m.algebra.name}, not {a.name}")
    return m


# -- commands --------------------------------------------------------------------

def cmd_algebra_check(args) -> dict:
    a, ref = load_target(args.target, args.field)
    report = {
        "command": "algebra-check",
        "algebra_ref": ref,
        "name": a.name,
        "field": {"name": a.field.name, "p": a.field.p, "e": a.field.e,
                  "modulus": list(a.field.modulus)},
        "dimension": a.dim,
        "generators": list(a.generators),
        "basis": list(a.labels),
        "content_hash": a.content_hash(),
        "checks": {"associative": a.check_associative(), "unit": a.check_unit(),
                   "relations": a.check_relations()},
        "seed": args.seed,
    }
    try:
        rd = a.radical_data
        report["radical"] = {"class": rd.kind, "dimension": int(rd.basis.shape[0]),
                             "loewy_length": rd.loewy_length}
    except UnsupportedClass as exc:
        report["radical"] = {"error": str(exc)}
    try:
        report["frobenius"] = find_frobenius_form(a, seed=args.seed).to_dict()
    except NoFormFound as exc:
        report["frobenius"] = {"error": str(exc)}
    return report


def cmd_resolve(args) -> dict:
    a, ref = load_target(args.target, args.field)
    m = load_module_spec(args.module, a, ref)
    table = minimal_resolution(m, max(args.cutoff, args.dmax))
    per = periodicity(table, args.dmax, seed=args.seed, trials=args.trials)
    shown = minimal_resolution(m, args.cutoff) if args.cutoff < args.dmax else table
    out = {"command": "resolve", "algebra_ref": ref, "module": args.module,
           "field": a.field.name, "seed": args.seed, "dmax": args.dmax,
           "table": {**shown.to_dict(), "rows": shown.to_dict()["rows"][:args.cutoff + 1]},
           "recurrence_holds": table.recurrence_holds(),
           "periodic": per.period, "warnings": per.warnings}
    try:
        est = complexity_estimate(shown, per)
        out["complexity"] = est.to_dict()
    except TableTooShort as exc:
        out["complexity"] = {"error": str(exc)}
    out["_csv"] = shown.to_csv()
    return out


def cmd_complexity(args) -> dict:
    out = cmd_resolve(args)
    out.pop("table")
    out.pop("_csv")
    out["command"] = "complexity"
    return out


def _read_certificate(path: str) -> Certificate:
    data = io.parse_document(Path(path).read_text(), path)
    # accept both a bare certificate and the certify command's report
    return Certificate.from_dict(data.get("certificate", data))


def _quotient_certificate(args) -> Certificate:
    if args.quotient_cert:
        return _read_certificate(args.quotient_cert)
    if not args.quotient:
        raise InputError("factor strategy needs --quotient REF or --quotient-cert PATH")
    qa, qref = load_target(args.quotient)
    if args.quotient_strategy == "theorem-growth":
        return certify_wild_theorem(qa, args.cutoff, algebra_ref=qref)
    fields = [parse_field(f) for f in args.scan_field] if args.scan_field else None
    rep = scan_family(qa, args.family, fields, args.cutoff, args.dmax, args.seed, args.trials,
                      algebra_ref=qref)
    return certify_wild_lemma(rep)


def cmd_certify(args) -> dict:
    a, ref = load_target(args.target, args.field)
    try:
        if args.strategy == "lemma-family":
            fields = [parse_field(f) for f in args.scan_field] if args.scan_field else None
            rep = scan_family(a, args.family, fields, args.cutoff, args.dmax, args.seed,
                              args.trials, algebra_ref=ref)
            cert = certify_wild_lemma(rep)
        elif args.strategy == "theorem-growth":
            cert = certify_wild_theorem(a, args.cutoff, algebra_ref=ref)
        else:
            if not args.ideal:
                raise InputError("factor strategy needs at least one --ideal expression")
            cert = certify_factor_rule(a, args.ideal, _quotient_certificate(args),
                                       algebra_ref=ref)
    except (RelationViolation, QuotientMismatch, FactorRuleRefused) as exc:
        raise StrategyMismatch(f"{type(exc).__name__}: {exc}") from exc
    out = {"command": "certify", "certificate": cert.to_dict()}
    if args.verify_trail:
        results = verify_trail(cert)
        out["trail_verification"] = {"all_ok": all(r["ok"] for r in results),
                                     "items": results}
    return out


def cmd_verify(args) -> dict:
    cert = _read_certificate(args.certificate)
    results = verify_trail(cert)
    return {"command": "verify", "verdict": cert.verdict,
            "all_ok": all(r["ok"] for r in results), "items": results}


# -- formatting ------------------------------------------------------------------

def _text(report: dict) -> str:
    cmd = report.get("command")
    if cmd == "resolve":
        lines = [f"{'n':>3} {'b_n':>6} {'len_Pn':>8} {'dim_syz':>8}"]
        for r in report["table"]["rows"]:
            lines.append(f"{r['n']:>3} {r['b_n']:>6} {r['len_Pn']:>8} {r['dim_syzygy']:>8}")
        lines.append(_summary(report))
        return "\n".join(lines) + "\n"
    if cmd == "algebra-check":
        lines = [f"algebra {report['name']} over {report['field']['name']}",
                 f"dimension {report['dimension']}",
                 f"basis {' '.join(report['basis'])}",
                 f"radical {report['radical']}",
                 f"frobenius {report['frobenius']}"]
        return "\n".join(lines) + "\n"
    if cmd == "certify":
        c = report["certificate"]
        lines = [f"verdict {c['verdict']} ({c['strategy']}, {c['algebra_ref']})"]
        lines += [f"hypothesis: {h}" for h in c["hypotheses"]]
        lines += [f"note: {n}" for n in c["notes"]]
        lines.append(f"evidence items: {len(c['evidence'])}")
        if "trail_verification" in report:
            lines.append(f"trail re-verified: {report['trail_verification']['all_ok']}")
        return "\n".join(lines) + "\n"
    if cmd == "complexity":
        cx = report["complexity"]
        lines = [f"module {report['module']} over {report['algebra_ref']} ({report['field']})",
                 _summary(report)]
        if "c_hat" in cx:
            lines.append(f"certified lower bound {cx['certified_lower']}")
        lines += [f"warning: {w}" for w in report.get("warnings", [])]
        return "\n".join(lines) + "\n"
    if cmd == "verify":
        lines = [f"verdict {report['verdict']}: trail "
                 f"{'reproduced' if report['all_ok'] else 'FAILED'}"]
        for r in report["items"]:
            mark = "ok  " if r["ok"] else "FAIL"
            lines.append(f"{mark} {r['check']}" + (f" ({r['detail']})" if r["detail"] else ""))
        return "\n".join(lines) + "\n"
    return io.dumps(report)


def _summary(report: dict) -> str:
    cx = report.get("complexity", {})
    per = report.get("periodic")
    parts = [f"periodic d={per}" if per else f"not periodic up to d={report['dmax']}"]
    if "c_hat" in cx:
        parts.append(f"c_hat={cx['c_hat']}")
        if cx.get("evidence_lower"):
            parts.append(f"evidence cx>={cx['evidence_lower']}")
    else:
        parts.append(cx.get("error", ""))
    return "# complexity: " + ", ".join(p for p in parts if p)


def render(report: dict, fmt: str) -> str:
    csv = report.pop("_csv", None)
    if fmt == "json":
        return io.dumps(report)
    if fmt == "csv":
        if csv is None:
            raise InputError("csv output is only available for resolve")
        return csv + _summary(report) + "\n"
    return _text(report)


# -- entry point -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="field p[,e] (must extend the presentation's field)")
    common.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    common.add_argument("--dmax", type=int, default=DEFAULT_DMAX)
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized searches (recorded in output)")
    common.add_argument("--trials", type=int, default=64)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="reptype", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("algebra-check", parents=[common], help="close a presentation")
    p.add_argument("target", help="corpus:NAME or a JSON/TOML presentation file")
    p.set_defaults(func=cmd_algebra_check)

    p = sub.add_parser("resolve", parents=[common], help="minimal resolution of a module")
    p.add_argument("target")
    p.add_argument("--module", default="trivial",
                   help="trivial | regular | M:<code> | N:<code> | module JSON file")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("complexity", parents=[common], help="complexity summary of a module")
    p.add_argument("target")
    p.add_argument("--module", default="trivial")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("certify", parents=[common], help="representation-type certificate")
    p.add_argument("target")
    p.add_argument("--strategy", required=True,
                   choices=("lemma-family", "theorem-growth", "factor"))
    p.add_argument("--family", choices=("M", "N"), default="M")
    p.add_argument("--scan-field", action="append", default=[],
                   help="field p[,e] to scan (repeatable; default p, p^2, p^3)")
    p.add_argument("--ideal", action="append", default=[],
                   help="ideal generator expression for the factor strategy (repeatable)")
    p.add_argument("--quotient", help="reference of the known quotient algebra")
    p.add_argument("--quotient-strategy", choices=("lemma-family", "theorem-growth"),
                   default="lemma-family")
    p.add_argument("--quotient-cert", help="certificate JSON for the quotient")
    p.add_argument("--verify-trail", action="store_true",
                   help="recompute every evidence item after certifying")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", parents=[common], help="re-verify a certificate's trail")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cutoff < 0 or args.dmax < 1 or args.trials < 0:
        print("error: cutoff must be >= 0, dmax >= 1 and trials >= 0", file=sys.stderr)
        return EXIT_INPUT
    try:
        report = args.func(args)
        text = render(report, args.format)
    except NonTerminating as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONTERM
    except (UnsupportedClass, StrategyMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ReptypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify" and not report["all_ok"]:
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
