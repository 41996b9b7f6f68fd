"""Command-line interface.

Subcommands: ``ehrhart``, ``hvector``, ``roots``, ``verify``, ``scan``, ``plot``.
Exit codes: 0 success, 1 failed check, 2 usage error, 3 resource or
precision-escalation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

import mpmath

from symedge import __version__
from symedge import combinatorics as comb
from symedge import lattice, roots as rootmod, svg, toric
from symedge.errors import DomainError, EscalationError, ResourceLimitError

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

SCAN_FIELDS = ["d", "D", "parity", "max_re", "max_re_radius", "volume",
               *rootmod.FLAG_NAMES, "wall_time_ms", "error"]


class UsageError(Exception):
    pass


def _exact(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def _num(x, digits: int) -> str:
    return mpmath.nstr(x, digits + 5)


def _envelope(d, payload, digits=None, started=None, timing=True) -> dict:
    wall = int(round((time.perf_counter() - started) * 1000)) if (started is not None and timing) else 0
    return {
        "d": d,
        "dim": d - 1 if isinstance(d, int) else None,
        "payload": payload,
        "meta": {"version": __version__, "digits": digits, "wall_time_ms": wall},
    }


def _emit(text: str, out: Optional[str] = None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _need_d(d: int) -> int:
    if d < 3:
        raise UsageError(f"--d must be >= 3, got {d}")
    return d


def _polytope_facts(d: int) -> dict:
    # known classification, displayed rather than recomputed
    return {"reflexive": True, "smooth": d % 2 == 1}


# ---------------------------------------------------------------- ehrhart

def cmd_ehrhart(args) -> int:
    d = _need_d(args.d)
    started = time.perf_counter()
    if args.basis == "binomial":
        coeffs = list(comb.ehrhart_binomial_basis(d).coeffs)
    else:
        coeffs = list(comb.ehrhart_monomial_basis(d).coeffs)
    strs = [_exact(c) for c in coeffs]
    if args.format == "json":
        payload = {"basis": args.basis, "coeffs": strs,
                   "normalized_volume": str(comb.normalized_volume(d)),
                   "polytope": _polytope_facts(d)}
        _emit(_dumps(_envelope(d, payload, started=started)))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "coefficient"])
        w.writerows(enumerate(strs))
        _emit(buf.getvalue())
    else:
        if args.basis == "binomial":
            terms = [f"{c}*C(m,{i})" for i, c in enumerate(strs) if c != "0"]
        else:
            terms = [f"({c})*m^{i}" if "/" in c else f"{c}*m^{i}" for i, c in enumerate(strs) if c != "0"]
        _emit(f"L_{d}(m) = " + " + ".join(terms) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------- hvector

def cmd_hvector(args) -> int:
    d = _need_d(args.d)
    started = time.perf_counter()
    names = list(comb.H_VECTOR_METHODS) if args.method == "all" else [args.method]
    vectors = {n: comb.H_VECTOR_METHODS[n](d).entries for n in names}
    first = vectors[names[0]]
    consistent = all(v == first for v in vectors.values())
    payload = {
        "method": args.method,
        "entries": [str(h) for h in first],
        "consistent": consistent,
        "palindromic": first == first[::-1],
        "sum": str(sum(first)),
        "normalized_volume": str(comb.normalized_volume(d)),
    }
    if args.method == "all":
        payload["vectors"] = {n: [str(h) for h in v] for n, v in vectors.items()}
    if args.format == "json":
        _emit(_dumps(_envelope(d, payload, started=started)))
    else:
        _emit(f"h^({d}) = ({', '.join(payload['entries'])})\n")
        if args.method == "all":
            _emit(f"methods {', '.join(names)}: {'consistent' if consistent else 'INCONSISTENT'}\n")
    if not consistent:
        for n, v in vectors.items():
            if v != first:
                diff = [j for j, (a, b) in enumerate(zip(first, v)) if a != b]
                sys.stderr.write(f"{n} differs from {names[0]} at indices {diff}\n")
        return EXIT_FAILED
    return EXIT_OK


# ---------------------------------------------------------------- roots

def _interval(lo, hi, digits) -> dict:
    mid = mpmath.ldexp(mpmath.fadd(lo, hi, exact=True), -1)
    rad = mpmath.ldexp(mpmath.fsub(hi, lo, exact=True), -1)
    return {"lower": _num(lo, digits), "upper": _num(hi, digits),
            "mid": _num(mid, digits), "radius": mpmath.nstr(rad, 3)}


def roots_summary(d: int, digits: int) -> tuple[dict, list]:
    p = rootmod.ehrhart_int_poly(d)
    sol = rootmod.solve(p, digits)
    rep = rootmod.conjecture_report(d, sol.roots, digits)
    rs = sol.roots
    summary = {
        "degree": p.degree,
        "scale": str(p.scale),
        "squarefree": sol.squarefree,
        "bits": sol.bits,
        "max_re": _interval(rep.max_re_lower, rep.max_re_upper, digits),
        "min_re": _interval(rep.min_re_lower, rep.min_re_upper, digits),
        "symmetry_defect": mpmath.nstr(rootmod.symmetry_defect(rs), 3),
        "max_radius": mpmath.nstr(max(r.radius for r in rs), 3),
        "flags": rep.flags,
        "checks": {
            "vieta_sum": rootmod.vieta_sum_ok(p, rs),
            "vieta_product": rootmod.vieta_product_ok(p, rs),
            "residual": rootmod.residual_ok(p, rs),
        },
        "polytope": _polytope_facts(d),
    }
    return summary, rs


def _root_rows(rs, digits) -> list[dict]:
    return [{"re": _num(r.re, digits), "im": _num(r.im, digits), "radius": mpmath.nstr(r.radius, 3)}
            for r in rs]


def cmd_roots(args) -> int:
    d = _need_d(args.d)
    started = time.perf_counter()
    summary, rs = roots_summary(d, args.digits)
    rows = _root_rows(rs, args.digits)
    if args.out:
        if args.format == "csv":
            buf = io.StringIO()
            w = csv.DictWriter(buf, fieldnames=["re", "im", "radius"], lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
            Path(args.out).write_text(buf.getvalue())
        else:
            Path(args.out).write_text(_dumps(rows))
    else:
        summary["roots"] = rows
    _emit(_dumps(_envelope(d, summary, args.digits, started)))
    return EXIT_OK if all(summary["checks"].values()) else EXIT_FAILED


# ---------------------------------------------------------------- verify

@dataclass
class Case:
    label: str
    status: str  # pass | fail | skipped
    detail: str = ""


def _verify_lattice(d_min, d_max, m_max) -> list[Case]:
    cases = []
    for d in range(d_min, d_max + 1):
        for m in range(0, m_max + 1):
            label = f"d={d} m={m}"
            if d > lattice.MAX_D or m > lattice.MAX_M:
                cases.append(Case(label, "skipped", f"beyond guard d<={lattice.MAX_D}, m<={lattice.MAX_M}"))
                continue
            a = lattice.count_points(d, m)
            b = toric.standard_monomial_count(d, m)
            c = comb.ehrhart_eval(d, m)
            ok = a == b == c
            cases.append(Case(label, "pass" if ok else "fail", f"minkowski={a} standard={b} ehrhart={c}"))
    return cases


def _verify_groebner(d_min, d_max, m_max) -> list[Case]:
    cases = []
    for d in range(d_min, d_max + 1):
        label = f"d={d}"
        if d > toric.MAX_D:
            cases.append(Case(label, "skipped", f"beyond guard d<={toric.MAX_D}"))
            continue
        rep = toric.buchberger_verify(d, m_max)
        size_ok = rep.basis_size == toric.claimed_basis_size(d)
        ok = rep.passed and size_ok
        detail = f"basis={rep.basis_size} spairs={rep.spairs_total} skipped={rep.spairs_skipped}"
        if not ok:
            detail += "; " + "; ".join(rep.failures[:5])
        cases.append(Case(label, "pass" if ok else "fail", detail))
    return cases


def hvector_case(d: int) -> tuple[bool, str]:
    vecs = [f(d) for f in comb.H_VECTOR_METHODS.values()]
    h = vecs[0]
    agree = all(v == h for v in vecs)
    vol = comb.normalized_volume(d)
    problems = []
    if not agree:
        problems.append("methods disagree")
    if not all(v.is_palindromic() for v in vecs):
        problems.append("not palindromic")
    if sum(h.entries) != vol:
        problems.append(f"sum {sum(h.entries)} != volume {vol}")
    if min(h.entries) <= 0:
        problems.append("nonpositive entry")
    if d % 2 == 1 and h[(d - 1) // 2] != 2 ** (d - 1):
        problems.append("middle entry is not 2^(d-1)")
    return not problems, "; ".join(problems) or f"sum={vol}"


def _verify_hvector(d_min, d_max, m_max) -> list[Case]:
    out = []
    for d in range(d_min, d_max + 1):
        ok, detail = hvector_case(d)
        out.append(Case(f"d={d}", "pass" if ok else "fail", detail))
    return out


def _verify_reciprocity(d_min, d_max, m_max) -> list[Case]:
    return [Case(f"d={d}", "pass" if comb.reciprocity_check(d) else "fail")
            for d in range(d_min, d_max + 1)]


VERIFY_TARGETS: dict[str, Callable] = {
    "lattice": _verify_lattice,
    "groebner": _verify_groebner,
    "hvector": _verify_hvector,
    "reciprocity": _verify_reciprocity,
}


def cmd_verify(args) -> int:
    if args.d_min < 3 or args.d_max < args.d_min:
        raise UsageError("need 3 <= --d-min <= --d-max")
    started = time.perf_counter()
    cases = VERIFY_TARGETS[args.target](args.d_min, args.d_max, args.m_max)
    failed = [c for c in cases if c.status == "fail"]
    skipped = [c for c in cases if c.status == "skipped"]
    for c in skipped:
        sys.stderr.write(f"warning: skipped {c.label}: {c.detail}\n")
    if args.format == "json":
        payload = {"target": args.target, "d_min": args.d_min, "d_max": args.d_max, "m_max": args.m_max,
                   "cases": [asdict(c) for c in cases],
                   "passed": len(cases) - len(failed) - len(skipped),
                   "failed": len(failed), "skipped": len(skipped)}
        _emit(_dumps(_envelope(None, payload, started=started)))
    else:
        lines = [f"{c.status.upper():8s} {args.target} {c.label}  {c.detail}".rstrip() for c in cases]
        lines.append(f"{len(cases) - len(failed) - len(skipped)} passed, {len(failed)} failed, "
                     f"{len(skipped)} skipped")
        _emit("\n".join(lines) + "\n")
    return EXIT_FAILED if failed else EXIT_OK


# ---------------------------------------------------------------- scan

@dataclass
class ScanRecord:
    d: int
    D: int
    parity: str
    max_re: str = ""
    max_re_radius: str = ""
    volume: str = ""
    violates_dstrip_upper: Optional[bool] = None
    violates_dstrip_lower: Optional[bool] = None
    violates_fano_upper: Optional[bool] = None
    violates_fano_lower: Optional[bool] = None
    exceeds_dimension: Optional[bool] = None
    wall_time_ms: int = 0
    error: str = ""


def scan_one(d: int, digits: int, timing: bool = True) -> ScanRecord:
    started = time.perf_counter()
    rec = ScanRecord(d, d - 1, "odd" if d % 2 else "even", volume=str(comb.normalized_volume(d)))
    try:
        rep = rootmod.conjecture_report(d, None, digits)
        rec.max_re = _num(rep.max_re, digits)
        rec.max_re_radius = mpmath.nstr(rep.max_re_radius, 3)
        for k, v in rep.flags.items():
            setattr(rec, k, v)
    except (EscalationError, ResourceLimitError) as exc:
        rec.error = str(exc)
    if timing:
        rec.wall_time_ms = int(round((time.perf_counter() - started) * 1000))
    return rec


def _scan_worker(job):
    return scan_one(*job)


def run_scan(d_min, d_max, parity, digits, jobs=1, timing=True) -> list[ScanRecord]:
    ds = [d for d in range(d_min, d_max + 1)
          if parity == "all" or (parity == "odd") == (d % 2 == 1)]
    work = [(d, digits, timing) for d in ds]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_scan_worker, work))
    return [_scan_worker(w) for w in work]


def first_flags(records) -> dict[str, Optional[int]]:
    return {name: next((r.d for r in records if getattr(r, name)), None) for name in rootmod.FLAG_NAMES}


def cmd_scan(args) -> int:
    if args.d_min < 3 or args.d_max < args.d_min:
        raise UsageError("need 3 <= --d-min <= --d-max")
    started = time.perf_counter()
    timing = not args.no_timing
    records = run_scan(args.d_min, args.d_max, args.parity, args.digits, args.jobs, timing)
    first = first_flags(records)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=SCAN_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in records:
            row = asdict(r)
            w.writerow({k: ("" if v is None else str(v).lower() if isinstance(v, bool) else v)
                        for k, v in row.items()})
        body = buf.getvalue()
    else:
        payload = {"d_min": args.d_min, "d_max": args.d_max, "parity": args.parity,
                   "records": [asdict(r) for r in records], "first": first}
        body = _dumps(_envelope(None, payload, args.digits, started, timing))
    if args.out:
        Path(args.out).write_text(body)
        _emit(_dumps({"first": first, "rows": len(records),
                      "errors": [r.d for r in records if r.error]}))
    else:
        _emit(body)
    return EXIT_OK


# ---------------------------------------------------------------- plot

def cmd_plot(args) -> int:
    d = _need_d(args.d)
    sol = rootmod.ehrhart_roots(d, args.digits)
    points = svg.points_from_roots(sol.roots)
    text = svg.scatter_svg(points, d - 1, title=f"Roots of the Ehrhart polynomial, d={d}, dim={d - 1}")
    Path(args.out).write_text(text)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symedge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ehrhart", help="Ehrhart polynomial coefficients")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--basis", choices=["binomial", "monomial"], default="binomial")
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.set_defaults(func=cmd_ehrhart)

    p = sub.add_parser("hvector", help="h-vector by one or all methods")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--method", choices=[*comb.H_VECTOR_METHODS, "all"], default="all")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_hvector)

    p = sub.add_parser("roots", help="certified roots of the Ehrhart polynomial")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--digits", type=int, default=rootmod.DEFAULT_DIGITS)
    p.add_argument("--out", help="write the per-root table here")
    p.add_argument("--format", choices=["json", "csv"], default="json", help="format of --out")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("verify", help="run a verification harness over a range of d")
    p.add_argument("target", choices=list(VERIFY_TARGETS))
    p.add_argument("--d-min", type=int, default=3)
    p.add_argument("--d-max", type=int, default=6)
    p.add_argument("--m-max", type=int, default=5)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="maximal real parts and conjecture flags over a range of d")
    p.add_argument("--d-min", type=int, default=3)
    p.add_argument("--d-max", type=int, required=True)
    p.add_argument("--parity", choices=["odd", "even", "all"], default="all")
    p.add_argument("--digits", type=int, default=rootmod.DEFAULT_DIGITS)
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timing", action="store_true",
                   help="record wall_time_ms as 0 so output is byte-reproducible")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("plot", help="SVG scatter of the roots")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--digits", type=int, default=rootmod.DEFAULT_DIGITS)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "digits", 1) < 1:
        parser.error("--digits must be >= 1")
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"{parser.prog}: error: {exc}\n")
        return EXIT_USAGE
    except EscalationError as exc:
        sys.stderr.write(f"escalation failure: {exc}\n")
        if exc.diagnostics:
            sys.stderr.write(json.dumps(exc.diagnostics, default=str) + "\n")
        return EXIT_RESOURCE
    except ResourceLimitError as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCE
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
