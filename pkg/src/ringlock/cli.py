"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 inconclusive
(a search or saturation ran out of budget).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

from . import numberlab, planner
from .fppoly import FpPoly
from .proofkit import Certificate, CertificateFormatError, UnsupportedCertificate, verify_certificate
from .proofkit.bn import MODES, NoTermination, bn_certificate
from .proofkit.idempotent import eg_system, idempotent_certificate
from .proofkit.model import Record
from .proofkit.p2 import p2_trace
from .proofkit.render import STYLES, RenderRefused, render_certificate
from .reduction import characteristic_certificate, reduction_certificate
from .wedderlab import BudgetExceeded, period_index, verify_trace, wedderburn_status

OK, FAILED, USAGE, INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


@dataclass
class Result:
    data: Any
    text: str
    code: int = OK


def _int(s: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {s!r}") from None


def _poly(p: int, text: str) -> FpPoly:
    try:
        return FpPoly.parse(p, text)
    except ValueError as exc:
        raise UsageError(f"cannot parse polynomial {text!r}: {exc}") from None


def _cert(rec: Record, fmt: str) -> Result:
    cert = rec.to_certificate()
    text = render_certificate(cert) if fmt == "text" else cert.to_json()
    return Result(cert.to_dict(), text)


# -- handlers ------------------------------------------------------------------------


def cmd_nfields(a, fmt):
    c = numberlab.classify_n(a.n)
    return Result({"n": a.n, "fields": list(c.n_powers), "primes": list(c.n_primes), "simple": c.is_simple},
                  " ".join(map(str, c.n_powers)))


def cmd_char_cert(a, fmt):
    return _cert(characteristic_certificate(a.n), fmt)


def cmd_reduce_cert(a, fmt):
    witnesses = [_poly(a.p, w) for w in a.witness] if a.witness else None
    return _cert(reduction_certificate(a.n, a.p, full=a.full, witnesses=witnesses), fmt)


def cmd_simple(a, fmt):
    xs = numberlab.simple_numbers(a.limit)
    return Result({"limit": a.limit, "count": len(xs), "simple": xs}, " ".join(map(str, xs)))


def cmd_density(a, fmt):
    d = numberlab.simple_density(a.N)
    return Result({"N": a.N, "count": int(d * a.N), "density": float(d)},
                  f"{float(d):.6f}")


def cmd_unpleasant(a, fmt):
    r = numberlab.unpleasant_survey(a.p, a.start, a.end, jobs=a.jobs)
    data = {"p": r.p, "start": r.start, "end": r.end, "simple_at_p": r.simple_at_p,
            "unpleasant_count": len(r.unpleasant), "unpleasant": list(r.unpleasant),
            "min": min(r.unpleasant) if r.unpleasant else None}
    text = (f"simple at {r.p}: {r.simple_at_p}\nunpleasant: {len(r.unpleasant)}\n"
            f"min: {data['min']}\n{' '.join(map(str, r.unpleasant))}")
    return Result(data, text)


def cmd_good(a, fmt):
    direct, marked = numberlab.good_bad(a.p, a.kmax)
    agree = direct == marked
    data = {"p": a.p, "kmax": a.kmax, "bad": direct, "methods_agree": agree}
    text = f"bad: {' '.join(map(str, direct))}"
    if not agree:
        text += f"\norder method disagrees: {' '.join(map(str, marked))}"
    return Result(data, text, OK if agree else FAILED)


def cmd_period(a, fmt):
    f = _poly(a.p, a.f)
    try:
        r = period_index(a.p, a.k, f, **({"budget": a.budget} if a.budget else {}))
    except BudgetExceeded as exc:
        return Result({"error": str(exc)}, str(exc), INCONCLUSIVE)
    return Result({"p": a.p, "k": a.k, "f": f.to_str(), "period": r.period, "index": r.index},
                  f"period {r.period} index {r.index}")


def cmd_eg_system(a, fmt):
    return _cert(eg_system(a.p, a.k), fmt)


def cmd_bn(a, fmt):
    g = _poly(a.p, a.g)
    if a.enum == "custom":
        if not a.sequence:
            raise UsageError("--enum custom needs --sequence")
        enum = [_poly(a.p, s) for s in a.sequence.split(",")]
    elif a.sequence:
        raise UsageError("--sequence only applies to --enum custom")
    else:
        enum = a.enum
    try:
        rec = bn_certificate(a.p, a.k, g, enum)
    except NoTermination as exc:
        return Result({"error": str(exc), "steps": exc.steps}, str(exc), INCONCLUSIVE)
    return _cert(rec, fmt)


def cmd_p2_trace(a, fmt):
    return _cert(p2_trace(a.p), fmt)


def cmd_idem_cert(a, fmt):
    modulus = _poly(a.p, a.modulus) if a.modulus else None
    return _cert(idempotent_certificate(a.p, modulus), fmt)


def cmd_wstatus(a, fmt):
    f = _poly(a.p, a.f)
    st = wedderburn_status(a.p, a.k, f, saturate=a.saturate, saturation_budget=a.budget)
    data = st.to_dict()
    ev = st.evidence
    text = f"W_{{{a.p},{a.k},{st.f.to_str()}}}: {st.verdict}"
    if "period" in ev:
        text += f" (period {ev['period']}, index {ev['index']}, gcd {ev['gcd']})"
    if "saturation" in ev:
        text += f"\nsaturation: {ev['saturation']}"
    if a.trace_out and "trace" in ev:
        Path(a.trace_out).write_text(ev["trace"].to_json() + "\n")
    code = INCONCLUSIVE if a.saturate and not st.proven else OK
    return Result(data, text, code)


def cmd_plan(a, fmt):
    plan = planner.proof_plan(a.n, symmetry=not a.no_symmetry, saturate=a.saturate)
    if a.bundle:
        plan.write_bundle(a.bundle)
    return Result(plan.to_dict(), plan.to_text().rstrip("\n"))


def cmd_table(a, fmt):
    if a.start < 2 or a.end < a.start:
        raise UsageError("need 2 <= from <= to")
    rows = planner.table(a.start, a.end)
    return Result([{"n": n, "label": lab} for n, lab in rows], "\n".join(f"{n} {lab}" for n, lab in rows))


def _verify_one(path: Path) -> tuple[bool, str]:
    try:
        d = json.loads(path.read_text())
    except OSError as exc:
        return False, f"unreadable: {exc}"
    except json.JSONDecodeError as exc:
        return False, f"invalid JSON: {exc}"
    if isinstance(d, dict) and "files" in d and "plan" in d:
        failures = []
        for entry in d["files"]:
            ok, why = _verify_one(path.parent / entry["file"])
            if not ok:
                failures.append(f"{entry['file']}: {why}")
        if failures:
            return False, failures[0]
        return True, f"bundle of {len(d['files'])} certificates"
    if isinstance(d, dict) and "relations" in d and "ideal_basis" in d:
        try:
            ok, why = verify_trace(d)
        except (KeyError, ValueError, TypeError) as exc:
            return False, f"malformed trace: {exc}"
        return ok, "saturation trace" if ok else why
    try:
        report = verify_certificate(Certificate.from_dict(d))
    except (CertificateFormatError, UnsupportedCertificate) as exc:
        return False, str(exc)
    return report.ok, report.kind if report.ok else report.failure


def cmd_verify(a, fmt):
    rows = []
    for name in a.files:
        path = Path(name)
        if not path.is_file():
            raise UsageError(f"no such file: {name}")
        ok, why = _verify_one(path)
        rows.append({"file": name, "ok": ok, "detail": why})
    text = "\n".join(f"{r['file']}: {'ok' if r['ok'] else 'FAIL'} ({r['detail']})" for r in rows)
    return Result(rows, text, OK if all(r["ok"] for r in rows) else FAILED)


def cmd_render(a, fmt):
    path = Path(a.file)
    if not path.is_file():
        raise UsageError(f"no such file: {a.file}")
    try:
        text = render_certificate(path.read_text(), style=a.style)
    except (RenderRefused, CertificateFormatError, UnsupportedCertificate) as exc:
        return Result({"error": str(exc)}, str(exc), FAILED)
    return Result({"file": a.file, "style": a.style, "text": text}, text.rstrip("\n"))


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=None)
    common.add_argument("--out", help="write output here instead of stdout")

    top = _Parser(prog="ringlock", description="Commutativity certificates for rings with x^n = x.")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, fn: Callable, default_format: str, help: str):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(fn=fn, default_format=default_format)
        return sp

    sp = add("nfields", cmd_nfields, "text", "orders of the n-fields")
    sp.add_argument("n", type=_int)
    sp = add("char-cert", cmd_char_cert, "json", "characteristic certificate")
    sp.add_argument("n", type=_int)
    sp = add("reduce-cert", cmd_reduce_cert, "json", "reduction to a p^k-ring")
    sp.add_argument("n", type=_int)
    sp.add_argument("p", type=_int)
    sp.add_argument("--full", action="store_true", help="continue to the full gcd")
    sp.add_argument("--witness", action="append", help="explicit witness polynomial (repeatable)")
    sp = add("simple", cmd_simple, "text", "simple numbers up to a limit")
    sp.add_argument("--limit", type=_int, required=True)
    sp = add("density", cmd_density, "text", "density of simple numbers up to N")
    sp.add_argument("N", type=_int)
    sp = add("unpleasant", cmd_unpleasant, "text", "survey of unpleasant numbers")
    sp.add_argument("p", type=_int)
    sp.add_argument("start", type=_int)
    sp.add_argument("end", type=_int)
    sp.add_argument("--jobs", type=_int, default=None)
    sp = add("good", cmd_good, "text", "bad exponents up to kmax")
    sp.add_argument("p", type=_int)
    sp.add_argument("kmax", type=_int)
    sp = add("period", cmd_period, "text", "period and index of f under composition")
    sp.add_argument("p", type=_int)
    sp.add_argument("k", type=_int)
    sp.add_argument("f")
    sp.add_argument("--budget", type=_int, default=None)
    sp = add("eg-system", cmd_eg_system, "json", "orthogonal idempotents e_g")
    sp.add_argument("p", type=_int)
    sp.add_argument("k", type=_int)
    sp = add("bn", cmd_bn, "json", "b_n sequence certificate")
    sp.add_argument("p", type=_int)
    sp.add_argument("k", type=_int)
    sp.add_argument("g")
    sp.add_argument("--enum", choices=MODES, default="monomial")
    sp.add_argument("--sequence", help="comma-separated f_0,f_1,... for --enum custom")
    sp = add("p2-trace", cmd_p2_trace, "json", "p^2-ring trace")
    sp.add_argument("p", type=_int)
    sp = add("idem-cert", cmd_idem_cert, "json", "idempotent decomposition over GF(q)")
    sp.add_argument("p", type=_int)
    sp.add_argument("modulus", nargs="?")
    sp = add("wstatus", cmd_wstatus, "text", "status of a Wedderburn obligation")
    sp.add_argument("p", type=_int)
    sp.add_argument("k", type=_int)
    sp.add_argument("f")
    sp.add_argument("--saturate", action="store_true")
    sp.add_argument("--budget", type=_int, default=None, help="candidate relations to try")
    sp.add_argument("--trace-out", help="write the saturation trace here")
    sp = add("plan", cmd_plan, "text", "proof plan for n")
    sp.add_argument("n", type=_int)
    sp.add_argument("--bundle", help="write certificates and a manifest to this directory")
    sp.add_argument("--saturate", action="store_true")
    sp.add_argument("--no-symmetry", action="store_true")
    sp = add("table", cmd_table, "text", "table labels for a range of n")
    sp.add_argument("start", type=_int, metavar="from")
    sp.add_argument("end", type=_int, metavar="to")
    sp = add("verify", cmd_verify, "text", "verify certificates, bundles or saturation traces")
    sp.add_argument("files", nargs="+")
    sp = add("render", cmd_render, "text", "render a certificate as text")
    sp.add_argument("file")
    sp.add_argument("--style", choices=STYLES, default="terse")
    return top


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        fmt = args.format or args.default_format
        result = args.fn(args, fmt)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return USAGE
    except ValueError as exc:
        print(f"ringlock: error: {exc}", file=sys.stderr)
        return USAGE
    text = json.dumps(result.data, indent=1, sort_keys=True) if fmt == "json" else result.text
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
