"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 validation error, 3 property failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from . import convex as cv
from . import dfuzzy as df
from . import hypnum as hn
from . import testkit
from .dfuzzy import DFuzzySet, Universe
from .hypnum import Hyp, OrderMode, fmt_real

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_PROPERTY = 3

DOCUMENT_VERSION = 1


class DocumentError(ValueError):
    pass


class UsageError(Exception):
    pass


# -- document ---------------------------------------------------------------


@dataclass
class Document:
    universe: Universe
    sets: dict[str, DFuzzySet] = field(default_factory=dict)
    default_mode: OrderMode = OrderMode.LATTICE
    version: int = DOCUMENT_VERSION

    def get(self, name: str) -> DFuzzySet:
        try:
            return self.sets[name]
        except KeyError:
            raise UsageError(f"no set named {name!r} (have: {', '.join(self.sets) or 'none'})") from None


def _entry_to_hyp(entry: Any, where: str) -> Hyp:
    try:
        if isinstance(entry, str):
            return hn.parse(entry)
        if isinstance(entry, dict):
            keys = set(entry)
            if keys == {"e1", "e2"}:
                return Hyp(float(entry["e1"]), float(entry["e2"]))
            if keys == {"a1", "a2"}:
                return hn.from_standard(float(entry["a1"]), float(entry["a2"]))
        if isinstance(entry, (int, float)) and not isinstance(entry, bool):
            return hn.real(entry)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"{where}: {exc}") from None
    raise DocumentError(f'{where}: expected {{"e1": u, "e2": v}} or {{"a1": x, "a2": y}}, got {entry!r}')


def _hyp_to_entry(h: Hyp, form: str = "idempotent") -> dict:
    if form == "standard":
        a1, a2 = h.to_standard()
        return {"a1": _num(a1), "a2": _num(a2)}
    return {"e1": _num(h.u), "e2": _num(h.v)}


def _num(x: float) -> float:
    y = float(fmt_real(x))
    return int(y) if y.is_integer() and abs(y) < 2**53 else y


def document_from_dict(data: Any) -> Document:
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object")
    if data.get("version") != DOCUMENT_VERSION:
        raise DocumentError(f"unsupported or missing version {data.get('version')!r} (expected {DOCUMENT_VERSION})")
    uni = data.get("universe")
    if not isinstance(uni, dict) or "points" not in uni:
        raise DocumentError("universe must be an object with a 'points' list")
    points = uni["points"]
    if not isinstance(points, list):
        raise DocumentError("universe.points must be a list")
    points = [[p] if isinstance(p, (int, float)) else p for p in points]
    dim = uni.get("dim", len(points[0]) if points and isinstance(points[0], list) else None)
    for i, p in enumerate(points):
        if not isinstance(p, list) or len(p) != dim:
            raise DocumentError(f"universe point {i} must be a list of {dim} numbers")
    try:
        universe = Universe(points, uni.get("labels"))
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"universe: {exc}") from None
    try:
        mode = OrderMode.parse(data.get("default_mode", "lattice"))
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    doc = Document(universe, {}, mode)
    sets = data.get("sets", {})
    if not isinstance(sets, dict):
        raise DocumentError("sets must be an object mapping names to {values: [...]}")
    for name, body in sets.items():
        values = body.get("values") if isinstance(body, dict) else None
        if not isinstance(values, list):
            raise DocumentError(f"set {name!r}: missing 'values' list")
        hyps = [_entry_to_hyp(e, f"set {name!r}, point {i}") for i, e in enumerate(values)]
        try:
            doc.sets[name] = df.new_set(universe, hyps)
        except df.MembershipRangeError as exc:
            raise DocumentError(f"set {name!r}, point {exc.index}: {exc}") from None
        except ValueError as exc:
            raise DocumentError(f"set {name!r}: {exc}") from None
    return doc


def document_to_dict(doc: Document, form: str = "idempotent") -> dict:
    uni: dict[str, Any] = {
        "dim": doc.universe.dim,
        "points": [[_num(c) for c in p] for p in doc.universe.points],
    }
    if doc.universe.labels is not None:
        uni["labels"] = list(doc.universe.labels)
    return {
        "version": doc.version,
        "default_mode": doc.default_mode.value,
        "universe": uni,
        "sets": {
            name: {"values": [_hyp_to_entry(h, form) for h in s.values]} for name, s in doc.sets.items()
        },
    }


def loads(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return document_from_dict(data)


def dumps(doc: Document, form: str = "idempotent") -> str:
    return json.dumps(document_to_dict(doc, form), indent=2) + "\n"


def load(path) -> Document:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def save(doc: Document, path, form: str = "idempotent") -> None:
    Path(path).write_text(dumps(doc, form))


# -- operations -------------------------------------------------------------

# name -> (arity, function, takes mode)
OPS = {
    "complement": (1, df.complement, False),
    "union": (2, df.union, True),
    "intersection": (2, df.intersection, True),
    "algebraic_sum": (2, df.algebraic_sum, False),
    "algebraic_product": (2, df.algebraic_product, False),
    "absolute_difference": (2, df.absolute_difference, False),
    "convex_combination": (3, df.convex_combination, False),
    "cartesian": (2, df.cartesian_product, True),
}
OP_ALIASES = {"sum": "algebraic_sum", "product": "algebraic_product", "absdiff": "absolute_difference",
              "cartesian_product": "cartesian", "combination": "convex_combination"}


def run_op(
    doc: Document,
    op_name: str,
    set_names: list[str],
    mode: Optional[OrderMode] = None,
    out_name: Optional[str] = None,
    other: Optional[Document] = None,
) -> tuple[Document, dict]:
    """Apply a set operation; returns the updated (or, for cartesian, new)
    document and a report."""
    name = OP_ALIASES.get(op_name, op_name)
    if name not in OPS:
        raise UsageError(f"unknown op {op_name!r}; choose from {', '.join(OPS)}")
    arity, fn, uses_mode = OPS[name]
    if len(set_names) != arity:
        raise UsageError(f"{name} takes {arity} set(s), got {len(set_names)}")
    mode = doc.default_mode if mode is None else mode
    if name == "cartesian" and other is not None:
        operands = [doc.get(set_names[0]), other.get(set_names[1])]
    else:
        operands = [doc.get(n) for n in set_names]
    out_name = out_name or f"{name}({','.join(set_names)})"

    extension: list[Any] = []
    if uses_mode and mode is OrderMode.LATTICE:
        if name == "cartesian":
            A, B = operands
            extension = [
                [i, j] for i, a in enumerate(A.values) for j, b in enumerate(B.values) if not hn.comparable(a, b)
            ]
        else:
            extension = df.incomparable_points(*operands)

    result = fn(*operands, mode) if uses_mode else fn(*operands)
    if name == "cartesian":
        new = Document(result.universe, {out_name: result}, doc.default_mode)
    else:
        new = Document(doc.universe, dict(doc.sets), doc.default_mode, doc.version)
        new.sets[out_name] = result
    report = {
        "op": name,
        "sets": list(set_names),
        "mode": mode.value if uses_mode else "n/a",
        "out": out_name,
        "lattice_extension": bool(extension),
        "incomparable_at": extension,
        "values": [str(h) for h in result.values],
    }
    return new, report


def _labelled(U: Universe, idx) -> list[dict]:
    return [{"index": i, "point": U.label(i)} for i in idx]


def analyze(doc: Document, command: str, set_names: list[str], axis: int = 0,
            epsilon: Optional[Hyp] = None, mode: Optional[OrderMode] = None) -> dict:
    mode = doc.default_mode if mode is None else mode
    need = {"convexity": 1, "bounded": 1, "core": 1, "shadow": (1, 2), "separate": 2}
    if command not in need:
        raise UsageError(f"unknown analysis {command!r}; choose from {', '.join(need)}")
    arity = need[command]
    ok = len(set_names) in arity if isinstance(arity, tuple) else len(set_names) == arity
    if not ok:
        raise UsageError(f"analyze {command} takes {arity} set name(s), got {len(set_names)}")
    sets = [doc.get(n) for n in set_names]
    A = sets[0]
    U = doc.universe
    rep: dict[str, Any] = {"analysis": command, "sets": list(set_names)}

    if command == "convexity":
        cuts = cv.is_convex_by_cuts(A)
        point = cv.is_convex_pointwise(A, mode)
        strong = cv.is_strongly_convex(A)
        rep.update(
            convex=point.verdict,
            convex_by_cuts=cuts.verdict,
            convex_pointwise=point.verdict,
            definitions_agree=cuts.verdict == point.verdict,
            strongly_convex=strong.verdict,
            mode=mode.value,
            alphas_tested=len(cuts.alphas_tested),
        )
        if point.witness is not None:
            rep["witness"] = point.witness.to_dict(U)
        if cuts.witness is not None:
            rep["cut_witness"] = cuts.witness.to_dict(U)
    elif command == "bounded":
        rep["bounded"] = True
        rep["radii"] = [{"alpha": str(a), "R": str(r)} for a, r in cv.bounding_radius(A)]
    elif command == "core":
        M, attained = cv.essential_supremum(A)
        core = cv.core(A)
        rep.update(M=str(M), attained=attained, core=_labelled(U, core),
                   core_convex=cv.is_grid_convex(U, core))
        if epsilon is not None:
            q = cv.q_set(A, epsilon)
            rep.update(epsilon=str(epsilon), q_set=_labelled(U, q), empty_epsilon_core=not q)
    elif command == "shadow":
        S = cv.shadow(A, axis)
        rep["axis"] = axis
        rep["shadow"] = [{"point": S.universe.label(i), "value": str(h)} for i, h in enumerate(S.values)]
        rep["shadow_convex"] = cv.is_convex_pointwise(S).verdict
        if len(sets) == 2:
            cmp = cv.shadow_witness(A, sets[1])
            rep["comparison"] = {"verdict": cmp.verdict, "axis": cmp.axis}
    elif command == "separate":
        B = sets[1]
        r = cv.optimal_separation(A, B)
        both_convex = cv.is_convex(A) and cv.is_convex(B)
        rep.update(
            D=str(r.best_degree),
            M=str(r.intersection_max),
            one_minus_M=str(hn.ONE - r.intersection_max),
            hyperplane_u={"axis": r.best_threshold_u.axis, "threshold": _num(r.best_threshold_u.threshold)},
            hyperplane_v={"axis": r.best_threshold_v.axis, "threshold": _num(r.best_threshold_v.threshold)},
            joint_D=str(r.joint_best_degree),
            joint_hyperplane={"axis": r.joint_hyperplane.axis, "threshold": _num(r.joint_hyperplane.threshold)},
            both_convex=both_convex,
            theorem_check=("PASS" if r.theorem_holds else "FAIL") if both_convex else "n/a (not both convex)",
        )
    return rep


def props(suite: str, seed: int, trials: int) -> tuple[dict, bool]:
    try:
        results = testkit.run_suites(suite, seed, trials)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    rows = [
        {
            "suite": r.name,
            "trials": r.trials,
            "failures": r.failures,
            "status": "PASS" if r.passed else "FAIL",
            "first_counterexample": r.counterexample or "-",
        }
        for r in results
    ]
    ok = all(r.passed for r in results)
    return {"seed": seed, "trials": trials, "suites": rows, "overall": "PASS" if ok else "FAIL"}, ok


# -- rendering --------------------------------------------------------------


def render_structured(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def _scalar(v: Any, nested: bool = False) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_real(v)
    if v is None:
        return "-"
    if isinstance(v, dict):
        body = " ".join(f"{k}={_scalar(x, True)}" for k, x in v.items())
        return "{" + body + "}" if nested else body
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x, True) for x in v) + "]"
    return str(v)


def render_text(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, list) and value and all(isinstance(r, dict) for r in value):
            lines.append(f"{key}:")
            cols = list(value[0])
            cells = [[_scalar(r.get(c)) for c in cols] for r in value]
            widths = [max(len(c), *(len(row[k]) for row in cells)) for k, c in enumerate(cols)]
            lines.append("  " + "  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
            for row in cells:
                lines.append("  " + "  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip())
        elif isinstance(value, dict):
            lines.append(f"{key}: {_scalar(value)}")
        else:
            lines.append(f"{key}: {_scalar(value)}")
    return "\n".join(lines) + "\n"


def emit(report: dict, fmt: str) -> None:
    sys.stdout.write(render_structured(report) if fmt == "structured" else render_text(report))


# -- argument parsing -------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "structured"], default="text")

    doc_opts = argparse.ArgumentParser(add_help=False)
    doc_opts.add_argument("--file", "-f", required=True, help="input document (JSON)")
    doc_opts.add_argument("--mode", choices=["lattice", "strict"], help="override the document's default_mode")

    p = _Parser(prog="hyperfuzzy", description="Fuzzy sets with hyperbolic-number membership grades.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", parents=[common, doc_opts], help="print membership grades")
    e.add_argument("sets", nargs="*", help="set names (default: all)")
    e.add_argument("--at", type=int, help="only this point index")
    e.add_argument("--form", choices=["idempotent", "standard"], default="idempotent")

    o = sub.add_parser("op", parents=[common, doc_opts], help="apply a set operation")
    o.add_argument("op", help=f"one of: {', '.join(OPS)}")
    o.add_argument("sets", nargs="+")
    o.add_argument("--out", help="name for the result set")
    o.add_argument("--other", help="second document for 'cartesian' (right operand)")
    o.add_argument("--save", help="write the resulting document here (default: update --file in place)")

    a = sub.add_parser("analyze", parents=[common, doc_opts], help="convexity, bounds, core, shadow, separation")
    a.add_argument("analysis", choices=["convexity", "bounded", "core", "shadow", "separate"])
    a.add_argument("sets", nargs="+")
    a.add_argument("--axis", type=int, default=0, help="coordinate dropped by 'shadow'")
    a.add_argument("--epsilon", help="tolerance for the epsilon-core in 'core', e.g. 0.05e1+0.05e2")

    r = sub.add_parser("props", parents=[common], help="run the property suites")
    r.add_argument("suite", nargs="?", default="all", help=f"all or one of: {', '.join(testkit.SUITES)}")
    r.add_argument("--seed", type=int, default=42)
    r.add_argument("--trials", type=int, default=100)

    c = sub.add_parser("convert", parents=[common], help="convert between idempotent and standard form")
    c.add_argument("values", nargs="*", help="hyperbolic numbers, e.g. 0.3e1+0.7e2 or 0.5+(-0.2)k")
    c.add_argument("--to", choices=["idempotent", "standard"], default="standard")
    c.add_argument("--file", "-f", help="convert every membership entry of a document")
    c.add_argument("--save", help="write the converted document here (default: stdout)")
    return p


def _cmd_eval(args, doc: Document) -> dict:
    names = args.sets or list(doc.sets)
    idx = range(len(doc.universe)) if args.at is None else [args.at]
    if args.at is not None and not 0 <= args.at < len(doc.universe):
        raise UsageError(f"point index {args.at} out of range")
    rows = []
    for i in idx:
        row: dict[str, Any] = {"index": i, "point": doc.universe.label(i)}
        for n in names:
            row[n] = hn.render(doc.get(n).values[i], args.form)
        rows.append(row)
    return {"form": args.form, "points": rows}


def _cmd_op(args, doc: Document) -> dict:
    other = load(args.other) if args.other else None
    mode = OrderMode.parse(args.mode) if args.mode else None
    new, report = run_op(doc, args.op, args.sets, mode, args.out, other)
    target = args.save
    if target is None:
        if new.universe is not doc.universe:
            raise UsageError("cartesian produces a new universe; pass --save PATH")
        target = args.file
    save(new, target)
    report["saved_to"] = str(target)
    return report


def _cmd_convert(args) -> dict:
    if args.file:
        doc = load(args.file)
        text = dumps(doc, args.to)
        if args.save:
            Path(args.save).write_text(text)
            return {"converted": args.file, "to": args.to, "saved_to": args.save}
        sys.stdout.write(text)
        return {}
    if not args.values:
        raise UsageError("give values to convert or --file")
    rows = []
    for t in args.values:
        h = hn.parse(t)
        rows.append({"input": t, "idempotent": hn.render(h), "standard": hn.render(h, "standard")})
    return {"to": args.to, "values": rows}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.command == "props":
            report, ok = props(args.suite, args.seed, args.trials)
            emit(report, args.format)
            return EXIT_OK if ok else EXIT_PROPERTY
        if args.command == "convert":
            report = _cmd_convert(args)
            if report:
                emit(report, args.format)
            return EXIT_OK
        doc = load(args.file)
        if args.command == "eval":
            report = _cmd_eval(args, doc)
        elif args.command == "op":
            report = _cmd_op(args, doc)
        else:
            eps = hn.parse(args.epsilon) if args.epsilon else None
            mode = OrderMode.parse(args.mode) if args.mode else None
            report = analyze(doc, args.analysis, args.sets, args.axis, eps, mode)
        emit(report, args.format)
        return EXIT_OK
    except UsageError as exc:
        print(f"hyperfuzzy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DocumentError, ValueError) as exc:
        print(f"hyperfuzzy: invalid: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
