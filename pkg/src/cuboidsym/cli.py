"""Command-line interface.

Exit codes: 0 ok, 1 verification mismatch, 2 parse or usage error,
3 symmetry error, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BudgetExceeded, CuboidSymError, ParseError, SymmetryError
from .groebner import DEFAULT_BUDGET, Ideal, buchberger
from .multisym import decompose, expand_in_matrix_vars
from .poly import MonomialOrder, VarTable, format_polynomial, parse, parse_order, tokenize

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_SYMMETRY = 3
EXIT_BUDGET = 4


@dataclass
class RunReport:
    command: str
    status: str = "ok"
    items: list[dict] = field(default_factory=list)
    timing: dict[str, float] = field(default_factory=dict)

    def add(self, item_id: str, verdict: bool, detail: str = "", **extra):
        self.items.append({"id": item_id, "verdict": bool(verdict), "detail": detail, **extra})

    def settle(self) -> str:
        if self.status != "budget-exceeded":
            self.status = "ok" if all(i["verdict"] for i in self.items) else "failed"
        return self.status

    def to_json(self, with_timing: bool) -> dict:
        out = {"command": self.command, "status": self.status, "items": self.items}
        if with_timing:
            out["timing"] = self.timing
        return out


class _Timer:
    def __init__(self, report: RunReport, key: str):
        self.report, self.key = report, key

    def __enter__(self):
        self.t0 = time.perf_counter()

    def __exit__(self, *exc):
        self.report.timing[self.key] = round((time.perf_counter() - self.t0) * 1000, 3)


def _emit(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_report(args, report: RunReport, text_lines: list[str]):
    if args.format == "json":
        _emit(args, json.dumps(report.to_json(args.timing), indent=2))
    else:
        lines = list(text_lines)
        if args.timing:
            lines += [f"# {k}: {v} ms" for k, v in report.timing.items()]
        _emit(args, "\n".join(lines))


def read_expressions(path: str) -> list[tuple[int, str]]:
    """Non-empty, non-comment lines of a UTF-8 file (``-`` is stdin) with line numbers."""
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    out = []
    for n, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if line:
            out.append((n, line))
    return out


def _load_catalog(args):
    from .cuboid import factor_catalog, load_catalog

    if getattr(args, "catalog", None):
        return load_catalog(Path(args.catalog).read_text(encoding="utf-8"))
    return factor_catalog()


# ------------------------------------------------------------------ commands

def cmd_derive(args) -> int:
    from .cuboid import DISPLAY_ORDER, compare_with_catalog, derive_factor_equations, dump_catalog, dump_traces

    report = RunReport("derive")
    with _Timer(report, "derive"):
        traces = derive_factor_equations(only=args.only)
    golden = {f.id: f for f in _load_catalog(args)}
    for eq_id, diff in compare_with_catalog(traces, golden):
        if diff is None:
            report.add(eq_id, True, "matches catalog")
        else:
            mono, got, want = diff
            report.add(eq_id, False, f"coefficient of {mono}: derived {got}, catalog {want}")
    report.settle()
    if args.traces:
        Path(args.traces).write_text(dump_traces(traces), encoding="utf-8")
    results = [t.result for t in traces]
    if args.format == "json":
        _emit(args, dump_catalog(results))
    else:
        lines = [f"{format_polynomial(f.lhs, DISPLAY_ORDER)} = 0" for f in results]
        if args.timing:
            lines.append(f"# derive: {report.timing['derive']} ms")
        _emit(args, "\n".join(lines))
    for item in report.items:
        if not item["verdict"]:
            print(f"mismatch {item['id']}: {item['detail']}", file=sys.stderr)
    return EXIT_OK if report.status == "ok" else EXIT_MISMATCH


def cmd_verify(args) -> int:
    from .cuboid import CUBOID_VT, verify_polynomial

    catalog = {f.id: f for f in _load_catalog(args)}
    targets = []
    if args.input is not None:
        if args.input in catalog:
            targets.append((args.input, catalog[args.input].lhs))
        else:
            targets.append((args.input, parse(args.input, CUBOID_VT)))
    elif args.file:
        for n, line in read_expressions(args.file):
            targets.append((line, parse(line, CUBOID_VT)))
    else:
        ids = [args.only] if args.only else list(catalog)
        targets = [(i, catalog[i].lhs) for i in ids]

    report = RunReport("verify")
    lines = []
    for name, poly in targets:
        with _Timer(report, name):
            v = verify_polynomial(poly)
        if v.member:
            report.add(name, True, "member")
            lines.append(f"{name}: member")
        else:
            rem = format_polynomial(v.remainder)
            report.add(name, False, "non-member", remainder=rem)
            lines.append(f"{name}: non-member, remainder {rem}")
    report.settle()
    _emit_report(args, report, lines)
    return EXIT_OK if report.status == "ok" else EXIT_MISMATCH


def _decompose_table(args) -> VarTable:
    if args.shape is None:
        from .cuboid import CUBOID_VT

        return CUBOID_VT
    try:
        m, n = (int(v) for v in args.shape.lower().split("x"))
    except ValueError:
        raise CuboidSymError(f"bad --shape {args.shape!r}; expected MxN") from None
    prefixes = tuple(args.prefixes.split(",")) if args.prefixes else None
    invariants = tuple(v for v in (args.invariants or "").split(",") if v)
    return VarTable.matrix(m, n, prefixes, invariants)


def cmd_decompose(args) -> int:
    vt = _decompose_table(args)
    p = parse(args.input, vt)
    report = RunReport("decompose")
    with _Timer(report, "decompose"):
        rep = decompose(p)
        ok = expand_in_matrix_vars(rep) == p
    text = format_polynomial(rep)
    report.add(args.input, ok, "round-trip ok" if ok else "round-trip failed", representation=text)
    report.settle()
    _emit_report(args, report, [text, f"round-trip: {'ok' if ok else 'FAILED'}"])
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_check_numeric(args) -> int:
    from .cuboid import numeric_residual

    equations = _load_catalog(args)
    if args.only:
        equations = [f for f in equations if f.id == args.only]
        if not equations:
            raise CuboidSymError(f"unknown equation id {args.only!r}")
    report = RunReport("check-numeric")
    with _Timer(report, "sampling"):
        res = numeric_residual(args.samples, args.seed, equations)
    lines = [f"# samples={args.samples} seed={args.seed} tolerance={args.tolerance:g}"]
    for f in equations:
        r = res.max_residual[f.id]
        ok = r < args.tolerance
        report.add(f.id, ok, f"{r:.3e}", residual=r, worst_sample=res.worst_sample[f.id])
        lines.append(f"{f.id} max_residual={r:.3e} {'ok' if ok else 'FAIL'}")
    report.settle()
    _emit_report(args, report, lines)
    return EXIT_OK if report.status == "ok" else EXIT_MISMATCH


def _groebner_table(args, exprs) -> VarTable:
    if args.vars:
        return VarTable(tuple(v.strip() for v in args.vars.split(",") if v.strip()))
    names = []
    for _, line in exprs:
        for tok in tokenize(line):
            if tok.kind == "ident" and tok.text not in names:
                names.append(tok.text)
    if not names:
        raise CuboidSymError("generators mention no variables")
    return VarTable(tuple(names))


def cmd_groebner(args) -> int:
    exprs = read_expressions(args.generators)
    vt = _groebner_table(args, exprs)
    gens = []
    for n, line in exprs:
        try:
            gens.append(parse(line, vt))
        except ParseError as exc:
            raise ParseError(f"{args.generators}:{n}: {exc.message}", line, exc.line, exc.column) from None
    eliminate = [v.strip() for v in (args.eliminate or "").split(",") if v.strip()]
    if args.order:
        order = parse_order(args.order)
    elif eliminate:
        order = MonomialOrder.elimination(vt, eliminate)
    else:
        order = MonomialOrder.grevlex()
    if eliminate and not order.eliminates(vt, eliminate):
        raise CuboidSymError(f"order {order} does not eliminate {', '.join(eliminate)}")

    report = RunReport("groebner")
    try:
        with _Timer(report, "buchberger"):
            gb = buchberger(Ideal(tuple(gens), order), budget=args.budget, reduce=not args.minimal)
    except BudgetExceeded as exc:
        report.status = "budget-exceeded"
        report.add("basis", False, str(exc), stats=exc.stats)
        stats = " ".join(f"{k}={v}" for k, v in exc.stats.items())
        _emit_report(args, report, [f"# budget exceeded: {exc}", f"# {stats}"])
        return EXIT_BUDGET

    elements = list(gb.elements)
    if eliminate:
        drop = set(eliminate)
        elements = [g for g in elements if not drop & set(g.variables())]
    basis = [format_polynomial(g, order) for g in elements]
    report.add("basis", True, f"{len(basis)} elements", order=order.describe(), basis=basis, stats=gb.stats)
    report.settle()
    _emit_report(args, report, [f"# order: {order.describe()}"] + basis)
    return EXIT_OK


# -------------------------------------------------------------------- parser

def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=_positive_int, default=1000)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET)
    p.add_argument("--only", metavar="ID", help="restrict to one catalog id (F1..F8, L1, L2)")
    p.add_argument("--timing", action="store_true", help="append per-item timings (breaks byte-identical output)")


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cuboidsym", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="derive the factor equations and compare with the catalog")
    _common(p)
    p.add_argument("--catalog", metavar="FILE", help="golden catalog JSON (default: built in)")
    p.add_argument("--traces", metavar="FILE", help="write derivation traces as JSON")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("verify", help="test membership in the cuboid ideal")
    _common(p)
    p.add_argument("input", nargs="?", help="catalog id or polynomial expression")
    p.add_argument("--file", metavar="FILE", help="one expression per line")
    p.add_argument("--catalog", metavar="FILE", help="catalog JSON to verify (default: built in)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="express a multisymmetric polynomial in E-variables")
    _common(p)
    p.add_argument("input", help="polynomial expression")
    p.add_argument("--shape", metavar="MxN", help="matrix shape (default: the 2x3 cuboid table)")
    p.add_argument("--prefixes", metavar="A,B,...", help="row prefixes for --shape")
    p.add_argument("--invariants", metavar="A,B,...", help="extra invariant variables for --shape")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("check-numeric", help="floating-point residuals on random real cuboids")
    _common(p)
    p.add_argument("--catalog", metavar="FILE", help="catalog JSON (default: built in)")
    p.set_defaults(func=cmd_check_numeric)

    p = sub.add_parser("groebner", help="Groebner basis of generators read from a file")
    _common(p)
    p.add_argument("generators", help="file with one generator per line ('-' for stdin)")
    p.add_argument("--order", help="e.g. lex, grevlex(x,y,z), block(lex(x) ; grevlex(y,z))")
    p.add_argument("--eliminate", metavar="VARS", help="comma-separated variables to eliminate")
    p.add_argument("--vars", metavar="VARS", help="comma-separated variable list (default: order of appearance)")
    p.add_argument("--minimal", action="store_true", help="minimal monic basis instead of the reduced one")
    p.set_defaults(func=cmd_groebner)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        if exc.text:
            line = exc.text.splitlines()[exc.line - 1] if exc.text.splitlines() else ""
            print(f"  {line}\n  {' ' * (exc.column - 1)}^", file=sys.stderr)
        return EXIT_PARSE
    except SymmetryError as exc:
        print(f"symmetry error: {exc}", file=sys.stderr)
        print(f"witness: {exc.witness}", file=sys.stderr)
        return EXIT_SYMMETRY
    except BudgetExceeded as exc:  # pragma: no cover - handled inside cmd_groebner
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CuboidSymError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
