"""Command line interface.

Algebra files::

    algebra C3
    elements 0 a 1
    sum a a = 1          # 0 + x = x is implicit, sums are symmetric
    prod a a = 0         # optional; if any prod line is given the table must be total

Exit codes: 0 when every verdict passes, 1 on a semantic failure, 2 on a
usage or parse error.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import __version__
from .ea_core import (
    FiniteEffectAlgebra,
    ProductTable,
    check_effect_axioms,
    check_sea_axioms,
    derive_order,
    sharp_elements,
)

SCHEMA = 1


class ParseError(ValueError):
    def __init__(self, msg, line=None):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


class UsageError(ValueError):
    pass


@dataclass
class AlgebraFile:
    name: str
    elements: list
    sums: list = field(default_factory=list)    # (a, b, c, line)
    prods: list = field(default_factory=list)   # (a, b, c, line)

    @property
    def algebra(self) -> FiniteEffectAlgebra:
        return FiniteEffectAlgebra(self.elements, [s[:3] for s in self.sums], name=self.name)

    @property
    def product(self) -> ProductTable | None:
        if not self.prods:
            return None
        return ProductTable.from_entries(self.algebra, [p[:3] for p in self.prods])


def _parse_rule(toks, lineno, keyword):
    if len(toks) != 5 or toks[3] != "=":
        raise ParseError(f"expected '{keyword} a b = c'", lineno)
    return toks[1], toks[2], toks[4]


def parse_algebra(text: str) -> AlgebraFile:
    """Parse the algebra file format; errors carry line numbers."""
    name, elements = None, None
    sums, prods = [], []
    decl_line = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        kw = toks[0]
        if kw == "algebra":
            if name is not None:
                raise ParseError("second 'algebra' line", lineno)
            if len(toks) != 2:
                raise ParseError("expected 'algebra NAME'", lineno)
            name = toks[1]
        elif kw == "elements":
            if elements is not None:
                raise ParseError("second 'elements' line", lineno)
            elements = toks[1:]
            seen = set()
            for e in elements:
                if e in seen:
                    raise ParseError(f"element {e!r} listed twice", lineno)
                seen.add(e)
                decl_line[e] = lineno
        elif kw == "sum":
            sums.append((*_parse_rule(toks, lineno, "sum"), lineno))
        elif kw == "prod":
            prods.append((*_parse_rule(toks, lineno, "prod"), lineno))
        else:
            raise ParseError(f"unknown directive {kw!r}", lineno)
    if elements is None:
        raise ParseError("missing 'elements' line")
    for special in ("0", "1"):
        if special not in elements:
            raise ParseError(f"elements must include {special!r}", None)
    known = set(elements)
    for rules in (sums, prods):
        for a, b, c, ln in rules:
            for x in (a, b, c):
                if x not in known:
                    raise ParseError(f"undeclared element {x!r}", ln)
    # symmetric closure plus 0 + x = x, reporting the first conflicting line
    table = {("0", x): (x, 0) for x in elements}
    table.update({(x, "0"): (x, 0) for x in elements})
    for a, b, c, ln in sums:
        for key in ((a, b), (b, a)):
            old = table.get(key)
            if old is not None and old[0] != c:
                where = f"line {old[1]}" if old[1] else "the implicit rule 0 + x = x"
                raise ParseError(f"sum {a} + {b} = {c} conflicts with {where}", ln)
            table.setdefault(key, (c, ln))
    ptab = {}
    for a, b, c, ln in prods:
        old = ptab.get((a, b))
        if old is not None and old[0] != c:
            raise ParseError(f"prod {a} {b} = {c} conflicts with line {old[1]}", ln)
        ptab.setdefault((a, b), (c, ln))
    if prods:
        missing = [(a, b) for a in elements for b in elements if (a, b) not in ptab]
        if missing:
            raise ParseError(f"product table is partial; missing {missing[0][0]} {missing[0][1]}")
    return AlgebraFile(name or "E", list(elements), sums, prods)


def serialize_algebra(E: FiniteEffectAlgebra, product: ProductTable | None = None) -> str:
    lines = [f"algebra {E.name.replace(' ', '_')}", "elements " + " ".join(E.elements)]
    lines += [f"sum {a} {b} = {c}" for a, b, c in E.sum_triples()]
    if product is not None:
        lines += [f"prod {a} {b} = {c}" for a, b, c in product.entries()]
    return "\n".join(lines) + "\n"


def load_algebra(ref: str) -> AlgebraFile:
    """A file path, or ``chain:N``, ``boolean:K``, ``diamond`` from the catalog."""
    from .ea_construct import boolean, chain, diamond
    if not os.path.exists(ref):
        head, _, arg = ref.partition(":")
        builders = {"chain": chain, "boolean": boolean}
        if head == "diamond" and not arg:
            return parse_algebra(serialize_algebra(diamond()))
        if head in builders and arg.isdigit():
            return parse_algebra(serialize_algebra(builders[head](int(arg))))
        raise UsageError(f"no such file or catalog entry: {ref}")
    with open(ref, encoding="utf-8") as fh:
        return parse_algebra(fh.read())


# ---------------------------------------------------------------- reports


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        v = float(x)
        return v if np.isfinite(v) else str(v)
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if x is None or isinstance(x, str):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if hasattr(x, "matrix"):
        return _jsonable(np.asarray(x.matrix))
    return str(x)


def _digest(inputs: dict) -> str:
    blob = json.dumps(_jsonable(inputs), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


def make_report(command, inputs, seed, body, passed, timing=None) -> dict:
    rep = {
        "schema": SCHEMA,
        "tool": "seaworks",
        "version": __version__,
        "command": command,
        "inputs_digest": _digest(inputs),
        "seed": seed,
        "passed": bool(passed),
        **body,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    }
    if timing is not None:
        rep["wall_time"] = timing
    return _jsonable(rep)


def _file_input(ref):
    if os.path.exists(ref):
        with open(ref, "rb") as fh:
            return {"file": os.path.basename(ref), "sha256": hashlib.sha256(fh.read()).hexdigest()}
    return {"catalog": ref}


# ---------------------------------------------------------------- commands


def cmd_check(args):
    af = load_algebra(args.file)
    E = af.algebra
    rep = check_effect_axioms(E)
    body = {"algebra": E.name, "axioms": rep.as_dict()["axioms"]}
    ok = rep.passed
    lines = [f"{E.name}: {'effect algebra' if ok else 'NOT an effect algebra'}"]
    for r in rep.results.values():
        lines.append(f"  {r.name:<10} {'ok' if r.passed else 'FAIL ' + str(r.witness)}")
    if ok and af.prods:
        sea = check_sea_axioms(E, af.product)
        body["product"] = sea.as_dict()["axioms"]
        ok = sea.passed
        lines.append(f"  product: {'sequential' if sea.passed else 'NOT sequential'}")
        for r in sea.results.values():
            if not r.passed:
                lines.append(f"  {r.name:<10} FAIL {r.witness}")
    return ok, body, {"file": _file_input(args.file)}, lines


def _table_rows(t: ProductTable):
    E = t.algebra
    return [[t(a, b) for b in E.elements] for a in E.elements]


def cmd_solve(args):
    from .seq_solver import enumerate_products, search_statistics
    af = load_algebra(args.file)
    E = af.algebra
    rep = check_effect_axioms(E)
    if not rep.passed:
        f = rep.failures()[0]
        body = {"algebra": E.name, "error": f"not an effect algebra: {f.name} at {f.witness}"}
        return False, body, {"file": _file_input(args.file)}, [body["error"]]
    out = enumerate_products(E, limit=args.limit, max_size=args.max_size)
    stats = search_statistics(out)
    stats.pop("wall_time", None)
    body = {
        "algebra": E.name,
        "elements": list(E.elements),
        "verdict": out.verdict,
        "tables": [_table_rows(t) for t in out.tables],
        "truncated": out.truncated,
        "statistics": stats,
    }
    ok = True
    if args.expect:
        body["expected"] = args.expect
        ok = out.verdict == args.expect
    lines = [f"{E.name}: verdict {out.verdict} ({out.count} table(s){', truncated' if out.truncated else ''})"]
    for t in out.tables[:3]:
        w = max(len(e) for e in E.elements)
        lines.append("  " + " " * (w + 1) + " ".join(f"{b:>{w}}" for b in E.elements))
        for a, row in zip(E.elements, _table_rows(t)):
            lines.append(f"  {a:>{w}} " + " ".join(f"{c:>{w}}" for c in row))
    if args.expect and not ok:
        lines.append(f"expected {args.expect}")
    inputs = {"file": _file_input(args.file), "limit": args.limit}
    return ok, body, inputs, lines


def cmd_sharp(args):
    af = load_algebra(args.file)
    E = af.algebra
    order = derive_order(E)
    info = sharp_elements(E, order)
    hats = {}
    dominating = True
    for a in E.elements:
        doms = [s for s in info.elements if order.leq(a, s)]
        least = [s for s in doms if all(order.leq(s, t) for t in doms)]
        if least:
            hats[a] = least[0]
        else:
            dominating = False
    body = {"algebra": E.name, "sharp": info.elements, "orthoalgebra": info.orthoalgebra,
            "sharply_dominating": dominating, "hat": hats}
    lines = [f"{E.name}: sharp = {{{', '.join(info.elements)}}}",
             f"  orthoalgebra: {info.orthoalgebra}", f"  sharply dominating: {dominating}"]
    return True, body, {"file": _file_input(args.file)}, lines


def _product_for(af):
    from .seq_solver import unique_product
    t = af.product
    if t is None:
        t = unique_product(af.algebra)
        if t is None:
            raise UsageError(f"{af.name} admits no sequential product")
    return t


def cmd_quotient(args):
    from .seq_order import finite_sea, sequential_quotient
    af = load_algebra(args.file)
    E = af.algebra
    for x in (args.a, args.b):
        if x not in E.index:
            raise UsageError(f"{x!r} is not an element of {E.name}")
    M = finite_sea(E, _product_for(af))
    q = sequential_quotient(M, args.a, args.b)
    body = {"algebra": E.name, "a": args.a, "b": args.b, "quotient": q.c,
            "unique": q.unique, "reason": q.reason}
    lines = [f"{args.a}/{args.b} = {q.c}" + ("" if q.unique in (None, True) else " (not unique)")
             if q.c is not None else f"{args.a}/{args.b} undefined: {q.reason}"]
    return q.c is not None, body, {"file": _file_input(args.file), "a": args.a, "b": args.b}, lines


def cmd_construct(args):
    from .ea_construct import cartesian_product, catalog, horizontal_sum, interval_algebra
    if args.kind == "catalog":
        if not args.operands:
            raise UsageError("construct catalog NAME [PARAM...]")
        E = catalog(args.operands[0], *args.operands[1:])
        if not isinstance(E, FiniteEffectAlgebra):
            raise UsageError(f"{args.operands[0]} is not a finite table")
    elif args.kind in ("product", "hsum"):
        if len(args.operands) < 2:
            raise UsageError(f"construct {args.kind} needs at least two algebras")
        parts = [load_algebra(r).algebra for r in args.operands]
        E = cartesian_product(parts) if args.kind == "product" else horizontal_sum(parts)
    else:
        if len(args.operands) != 2:
            raise UsageError("construct interval FILE b")
        E = interval_algebra(load_algebra(args.operands[0]).algebra, args.operands[1])
    if args.name:
        E = E.relabel({}, name=args.name)
    text = serialize_algebra(E)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    rep = check_effect_axioms(E)
    body = {"algebra": E.name, "size": E.n, "effect_algebra": rep.passed, "text": text}
    lines = [text.rstrip()] if not args.output else [f"wrote {args.output} ({E.n} elements)"]
    return rep.passed, body, {"kind": args.kind, "operands": args.operands}, lines


def cmd_order(args, seed):
    from . import seq_order as so
    kw = {}
    if args.param is not None:
        key = {"boolean": "k", "hilbert": "dim", "hs": "dim", "omega": "window"}.get(args.model)
        if args.model == "fuzzy":
            kw["base"] = tuple(f"x{i}" for i in range(args.param))
        elif key:
            kw[key] = args.param
    M = so.make_model(args.model, **kw)
    n = args.samples
    enumerable = M.elements() is not None
    if args.suite == "cond1":
        rep = so.check_condition1(M, None if enumerable else so.ordered_pairs(M, n, seed))
    elif args.suite == "cond2":
        rep = so.check_condition2(M, None if enumerable else so.condition2_samples(M, n, seed))
    elif args.suite == "quotient":
        pairs = so.ordered_pairs(M, n, seed)
        wit, absent, nonunique = [], 0, 0
        for a, b in pairs:
            q = so.sequential_quotient(M, a, b)
            if q.c is None:
                absent += 1
                if len(wit) < 5:
                    wit.append({"a": str(a), "b": str(b), "reason": q.reason})
            elif q.unique is False:
                nonunique += 1
        rep = {"checked": len(pairs), "absent": absent, "not_unique": nonunique,
               "witnesses": wit, "passed": absent == 0 and nonunique == 0}
    elif args.suite == "identities":
        rep = so.identity_suite(M, n=n, seed=seed)
    else:
        rng = M.rng(seed)
        els = M.elements()
        bs = [b for b in els if not M.eq(b, M.zero)] if enumerable else \
            [M.sample(rng) for _ in range(5)]
        reps = [so.interval_report(so.interval_sea(M, b), n=n, seed=seed)
                for b in bs if not M.eq(b, M.zero)]
        rep = {"intervals": reps, "passed": all(r["passed"] for r in reps)}
    ok = rep["passed"]
    body = {"model": M.name, "suite": args.suite, "result": rep}
    if args.expect:
        body["expected"] = args.expect
        ok = (args.expect == "pass") == rep["passed"]
    lines = [f"{M.name} {args.suite}: {'pass' if rep['passed'] else 'fail'}"]
    for w in (rep.get("counterexamples") or [])[:3]:
        lines.append(f"  counterexample {w}")
    if "identities" in rep:
        for k, v in rep["identities"].items():
            lines.append(f"  {k:<20} {'ok' if v['passed'] else 'FAIL'} ({v['checked']} checked)")
    for r in rep.get("intervals", []):
        bad = [k for k, v in r.items() if v is False] + \
            [k for k, v in (r.get("axioms") or {}).items() if not v]
        why = r.get("error") or ", ".join(k for k in bad if k != "passed")
        lines.append(f"  {r['model']}: {'ok' if r['passed'] else 'FAIL ' + why}")
    if args.suite == "quotient":
        lines.append(f"  {rep['checked']} pairs, {rep['absent']} without quotient, "
                     f"{rep['not_unique']} not unique")
    inputs = {"model": args.model, "param": args.param, "suite": args.suite, "samples": n}
    return ok, body, inputs, lines


def cmd_hilbert(args, seed):
    from .hilbert_effects import run_suite
    dims = [int(d) for d in str(args.dim).split(",")]
    reps = [run_suite(args.suite, d, args.samples, seed, args.tol) for d in dims]
    ok = all(r["passed"] for r in reps)
    body = {"suite": args.suite, "results": reps}
    lines = []
    for r in reps:
        lines.append(f"hilbert {args.suite} dim={r['dim']}: {'pass' if r['passed'] else 'FAIL'}")
        for key in ("rules", "conditions"):
            for k, v in (r.get(key) or {}).items():
                lines.append(f"  {k:<12} max residual {v['max_residual']:.2e}")
    inputs = {"suite": args.suite, "dims": dims, "samples": args.samples, "tol": args.tol}
    return ok, body, inputs, lines


def cmd_fuzzy(args, seed):
    from . import fuzzy_sea as fz
    act = args.action
    inputs = {"action": act, "operands": args.operands}
    if act in ("product", "quotient", "hat", "oplus"):
        need = 1 if act == "hat" else 2
        if len(args.operands) != need:
            raise UsageError(f"fuzzy {act} needs {need} element(s) written x=p/q,...")
        els = [fz.parse_element(s) for s in args.operands]
        base = els[0].base
        els = [fz.parse_element(s, base) for s in args.operands]
        try:
            res = {"product": lambda: fz.fuzzy_product(*els),
                   "quotient": lambda: fz.fuzzy_quotient(*els),
                   "hat": lambda: fz.fuzzy_hat(*els),
                   "oplus": lambda: fz.fuzzy_oplus(*els)}[act]()
        except fz.NotBelow as exc:
            return False, {"action": act, "error": str(exc)}, inputs, [str(exc)]
        text = "undefined" if res is None else fz.format_element(res)
        return res is not None, {"action": act, "result": text}, inputs, [text]
    if act == "axioms":
        rep = fz.axioms_suite(args.points, args.samples, seed)
        inputs.update(points=args.points, samples=args.samples)
    elif act == "probe":
        cands = {"mul": lambda a, b: a * b, "min": min}
        rep = fz.rational_uniqueness_probe(cands[args.candidate], args.nmax)
        rep["failures"] = rep["failures"][:10]
        inputs.update(candidate=args.candidate, nmax=args.nmax)
    else:
        rep = fz.polynomial_counterexample(args.degree)
        c2 = fz.polynomial_condition2(args.samples, seed)
        rep = {"counterexample": rep, "condition2": c2,
               "passed": rep["passed"] and c2["passed"]}
        inputs.update(degree=args.degree, samples=args.samples)
    ok = rep["passed"]
    if args.expect:
        ok = (args.expect == "pass") == rep["passed"]
    return ok, {"action": act, "result": rep}, inputs, [f"fuzzy {act}: {'pass' if rep['passed'] else 'fail'}"]


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="seaworks", description="Effect algebras and sequential products.")
    p.add_argument("--version", action="version", version=f"seaworks {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the JSON report here")
    common.add_argument("--seed", type=int, default=None, help="default: $SEA_SEED or 0")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")
    common.add_argument("--quiet", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="check effect algebra axioms (and the product, if given)")
    s.add_argument("file")

    s = sub.add_parser("solve", parents=[common], help="enumerate sequential products")
    s.add_argument("file")
    s.add_argument("--limit", type=int, default=1000)
    s.add_argument("--max-size", type=int, default=16)
    s.add_argument("--expect", choices=["none", "unique", "multiple"])

    s = sub.add_parser("order", parents=[common], help="sequential order suites")
    s.add_argument("--model", choices=["boolean", "fuzzy", "hilbert", "omega", "hs", "polynomial"],
                   required=True)
    s.add_argument("--suite", choices=["cond1", "cond2", "quotient", "identities", "interval"],
                   required=True)
    s.add_argument("--param", type=int, help="boolean atoms, fuzzy points, dimension or window")
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--expect", choices=["pass", "fail"])

    s = sub.add_parser("sharp", parents=[common], help="sharp elements and hats")
    s.add_argument("file")

    s = sub.add_parser("quotient", parents=[common], help="sequential quotient a/b on a finite SEA")
    s.add_argument("file")
    s.add_argument("a")
    s.add_argument("b")

    s = sub.add_parser("construct", parents=[common], help="build algebras")
    s.add_argument("kind", choices=["catalog", "product", "hsum", "interval"])
    s.add_argument("operands", nargs="*")
    s.add_argument("-o", "--output")
    s.add_argument("--name")

    s = sub.add_parser("hilbert", parents=[common], help="numeric suites on E(H)")
    s.add_argument("--dim", default="3", help="dimension or comma-separated list")
    s.add_argument("--samples", type=int, default=500)
    s.add_argument("--tol", type=float, default=None)
    s.add_argument("--suite", choices=["axioms", "thm48", "thm51", "quotient", "hs"], default="axioms")

    s = sub.add_parser("fuzzy", parents=[common], help="exact fuzzy set systems")
    s.add_argument("action", choices=["product", "quotient", "hat", "oplus", "axioms", "probe",
                                      "polynomial"])
    s.add_argument("operands", nargs="*", help="elements written x=p/q,y=p/q")
    s.add_argument("--points", type=int, default=3)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--candidate", choices=["mul", "min"], default="mul")
    s.add_argument("--nmax", type=int, default=12)
    s.add_argument("--degree", type=int, default=6)
    s.add_argument("--expect", choices=["pass", "fail"])
    return p


COMMANDS = {
    "check": cmd_check, "solve": cmd_solve, "sharp": cmd_sharp, "quotient": cmd_quotient,
    "construct": cmd_construct,
}
SEEDED = {"order": cmd_order, "hilbert": cmd_hilbert, "fuzzy": cmd_fuzzy}


def run_command(argv) -> tuple[int, dict | None]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    seed = args.seed if args.seed is not None else int(os.environ.get("SEA_SEED", "0"))
    t0 = time.perf_counter()
    try:
        if args.command in SEEDED:
            ok, body, inputs, lines = SEEDED[args.command](args, seed)
        else:
            ok, body, inputs, lines = COMMANDS[args.command](args)
    except (ParseError, UsageError, ValueError, FileNotFoundError) as exc:
        print(f"seaworks {args.command}: {exc}", file=sys.stderr)
        return 2, None
    inputs = {"command": args.command, "seed": seed, **inputs}
    timing = time.perf_counter() - t0 if args.timing else None
    report = make_report(args.command, inputs, seed, body, ok, timing)
    if not args.quiet:
        print("\n".join(lines))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return (0 if ok else 1), report


def main(argv=None) -> int:
    code, _ = run_command(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
