"""Command line interface: ``ihf <verb> ...``.

Inputs are either paths to ihf/1 JSON documents or ``preset:NAME``
(``NAME`` may be a composite such as ``sigma_2_3_7^2#-minus_L31``).

Exit codes: 0 ok, 1 usage, 2 parse, 3 validation, 4 internal
consistency failure, 5 I/O.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import format_grading
from .complex import homology
from .errors import ComplexError, ConsistencyError, ParseError, ValidationError
from .involutive import correction_terms_cone
from .io import (
    complex_to_dict,
    dumps,
    load_complex,
    module_record,
    result_document,
    result_record,
    witness_record,
)
from .iota import IotaComplex, dual, tensor, validate_iota
from .knots import PRESET_DESCRIPTIONS, preset, preset_names
from .local import find_local_map

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_INVALID, EXIT_INTERNAL, EXIT_IO = range(6)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_input(source: str, validate: bool = True) -> IotaComplex:
    if source.startswith("preset:"):
        name = source[len("preset:"):]
        try:
            return preset(name)
        except ComplexError as exc:
            raise UsageError(str(exc)) from None
    doc = load_complex(source, validate)
    x = doc.complex
    return x if x.label else x.relabel(source)


def _power(x: IotaComplex, n: int) -> IotaComplex:
    out = x
    for _ in range(n - 1):
        out = tensor(out, x)
    if n > 1:
        out = out.relabel(f"{x.label}^{n}")
    return out


def _inputs(args) -> list[IotaComplex]:
    if args.copies < 1:
        raise UsageError("--copies must be at least 1")
    return [_power(load_input(s), args.copies) for s in args.inputs]


def _product(xs: list[IotaComplex]) -> IotaComplex:
    out = xs[0]
    for y in xs[1:]:
        out = tensor(out, y)
    return out.relabel(" # ".join(x.label for x in xs))


def _emit(args, doc: dict, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(doc))
    if args.json:
        sys.stdout.write(dumps(doc))
    else:
        sys.stdout.write(text)


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "".join(
        "  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() + "\n" for r in rows
    )


def _module_lines(h) -> list[str]:
    lines = [f"  tower   top {format_grading(t)}" for t in h.free_towers]
    lines += [
        f"  torsion {format_grading(g)}  order {n}" for g, n in h.torsion
    ]
    return lines or ["  (zero)"]


def cmd_validate(args) -> int:
    x = load_input(args.input, validate=False)
    report = validate_iota(x)
    doc = {"format": "ihf/1", "kind": "validation", "label": x.label, "ok": report.ok,
           "violations": report.violations}
    if report.ok:
        h = report.witness.matrix
        doc["iota_squared_homotopy"] = [[s, t, n] for s, t, n in h.arrows()]
        text = f"{x.label}: ok\n  iota^2 ~ id via H = {h.arrows() or 0}\n"
    else:
        text = f"{x.label}: INVALID\n" + "".join(f"  {v}\n" for v in report.violations)
    _emit(args, doc, text)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_homology(args) -> int:
    x = load_input(args.input)
    h = homology(x.complex)
    doc = {"format": "ihf/1", "kind": "homology", "label": x.label, **module_record(h)}
    text = f"HF^-({x.label}) = {h.describe()}\n" + "\n".join(_module_lines(h)) + "\n"
    _emit(args, doc, text)
    return EXIT_OK


def cmd_hfi(args) -> int:
    x = load_input(args.input)
    s = correction_terms_cone(x)
    doc = result_document([result_record(x.label, s)])
    grs = s.hfi.summand_gradings()
    lines = [f"HFI^-({x.label}) = {s.hfi.describe()}"]
    lines += _module_lines(s.hfi)
    lines.append("Q-action on summands:")
    arrows = s.q_action.arrows()
    for a, b, n in arrows:
        power = "" if n == 0 else ("U" if n == 1 else f"U^{n}")
        lines.append(f"  Q {a}({format_grading(grs[a])}) -> {power}{b}")
    if not arrows:
        lines.append("  (zero)")
    lines.append(
        f"d = {format_grading(s.d)}, d_lower = {format_grading(s.d_lower)}, "
        f"d_upper = {format_grading(s.d_upper)}"
    )
    _emit(args, doc, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_dinv(args) -> int:
    xs = _inputs(args)
    if args.sum:
        xs = [_product(xs)]
    records = []
    rows = [["input", "d", "d_lower", "d_upper"]]
    for x in xs:
        s = correction_terms_cone(x)
        records.append(result_record(x.label, s, with_hfi=False))
        rows.append([x.label, format_grading(s.d), format_grading(s.d_lower),
                     format_grading(s.d_upper)])
    _emit(args, result_document(records), _table(rows))
    return EXIT_OK


def cmd_tensor(args) -> int:
    x = _product(_inputs(args))
    doc = complex_to_dict(x)
    _emit(args, doc, dumps(doc))
    return EXIT_OK


def cmd_dual(args) -> int:
    x = dual(load_input(args.input))
    doc = complex_to_dict(x)
    _emit(args, doc, dumps(doc))
    return EXIT_OK


def cmd_localequiv(args) -> int:
    a, b = load_input(args.a), load_input(args.b)
    forward = find_local_map(a, b)
    backward = find_local_map(b, a)
    doc = result_document(witnesses=[
        witness_record(forward, a.label, b.label),
        witness_record(backward, b.label, a.label),
    ])

    def line(w, s, t):
        if w is None:
            return f"  {s} -> {t}: no local map"
        return f"  {s} -> {t}: local map found (tower -> U^{w.tower_power} tower)"

    equivalent = forward is not None and backward is not None
    text = "\n".join([
        f"{a.label} vs {b.label}: {'locally equivalent' if equivalent else 'not locally equivalent'}",
        line(forward, a.label, b.label),
        line(backward, b.label, a.label),
    ]) + "\n"
    _emit(args, doc, text)
    return EXIT_OK


def cmd_preset(args) -> int:
    if args.action == "list":
        rows = [["name", "description"]]
        rows += [[n, PRESET_DESCRIPTIONS[n]] for n in preset_names()]
        doc = {"format": "ihf/1", "kind": "presets", "presets": preset_names()}
        _emit(args, doc, _table(rows))
        return EXIT_OK
    if not args.name:
        raise UsageError("preset show needs a name")
    doc = complex_to_dict(load_input(f"preset:{args.name}"))
    _emit(args, doc, dumps(doc))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of a table")
    common.add_argument("--out", metavar="FILE", help="also write the JSON document to FILE")

    p = _Parser(prog="ihf", description="Involutive Heegaard Floer invariants of algebraic models.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def one(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("input", help="file path or preset:NAME")
        sp.set_defaults(func=func)
        return sp

    def many(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("inputs", nargs="+", help="file paths or preset:NAME")
        sp.add_argument("--copies", type=int, default=1, help="use each input N times")
        sp.set_defaults(func=func)
        return sp

    one("validate", cmd_validate, "check an iota-complex")
    one("homology", cmd_homology, "HF^- of the underlying complex")
    one("hfi", cmd_hfi, "HFI^-, the Q-action and the correction terms")
    dinv = many("dinv", cmd_dinv, "correction terms d, d_lower, d_upper")
    dinv.add_argument("--sum", action="store_true", help="connected sum of all inputs")
    many("tensor", cmd_tensor, "tensor product of the inputs")
    one("dual", cmd_dual, "dual (orientation reversal)")
    le = sub.add_parser("localequiv", parents=[common], help="search for local maps both ways")
    le.add_argument("a")
    le.add_argument("b")
    le.set_defaults(func=cmd_localequiv)
    pr = sub.add_parser("preset", parents=[common], help="list or show presets")
    pr.add_argument("action", choices=["list", "show"])
    pr.add_argument("name", nargs="?")
    pr.set_defaults(func=cmd_preset)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ihf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"ihf: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"ihf: validation error: {exc}", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return EXIT_INVALID
    except ComplexError as exc:
        print(f"ihf: validation error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ConsistencyError as exc:
        print(f"ihf: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"ihf: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
