"""JSON documents for complexes and results (``"format": "ihf/1"``).

A complex document::

    {
      "format": "ihf/1",
      "generators": [{"name": "a", "grading": "-2"}, ...],
      "diff": [["c", "a", 1], ...],
      "iota": [["a", "b", 0], ...],
      "metadata": {"label": "sigma_2_3_7", "pinned_d": "0"}
    }

Arrows are ``[source, target, U-power]``. Gradings are strings holding
exact fractions (integers are accepted too). A missing ``iota`` means
the identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import MonoMatrix, format_grading, grading
from .complex import GradedComplex, GradedMap, HomologyModule
from .errors import ComplexError, HomogeneityError, ParseError, ValidationError
from .iota import IotaComplex, validate_iota
from .involutive import InvolutiveSummary
from .local import LocalMapWitness

FORMAT = "ihf/1"

__all__ = [
    "FORMAT",
    "ComplexDocument",
    "complex_to_dict",
    "dumps",
    "load_complex",
    "parse_complex",
    "parse_result",
    "result_record",
    "verify_result",
    "witness_record",
]


@dataclass
class ComplexDocument:
    complex: IotaComplex
    label: str = ""
    pinned_d: Fraction | None = None
    metadata: dict = field(default_factory=dict)


def _fraction(value, where):
    try:
        return grading(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not an exact grading: {value!r} ({exc})", where) from None


def _arrows(raw, where):
    if not isinstance(raw, list):
        raise ParseError("expected a list of [source, target, U-power]", where)
    out = []
    for i, item in enumerate(raw):
        at = f"{where}[{i}]"
        if not isinstance(item, list) or len(item) not in (2, 3):
            raise ParseError("arrow must be [source, target] or [source, target, U-power]", at)
        src, tgt = item[0], item[1]
        if not isinstance(src, str) or not isinstance(tgt, str):
            raise ParseError("arrow endpoints must be generator names", at)
        if len(item) == 3:
            n = item[2]
            if isinstance(n, bool) or not isinstance(n, int) or n < 0:
                raise ParseError(f"U-power must be a non-negative integer, got {n!r}", at)
            out.append((src, tgt, n))
        else:
            out.append((src, tgt))
    return out


def _build_matrix(gens, shift, arrows, where):
    for i, arrow in enumerate(arrows):
        for name in arrow[:2]:
            if name not in gens:
                raise ParseError(f"unknown generator {name!r}", f"{where}[{i}]")
        try:
            MonoMatrix(gens, gens, shift, [arrow])
        except HomogeneityError as exc:
            raise HomogeneityError(f"{where}[{i}]: {exc}") from None
    return MonoMatrix(gens, gens, shift, arrows)


def complex_from_dict(doc, where="$") -> ComplexDocument:
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object", where)
    fmt = doc.get("format", FORMAT)
    if fmt != FORMAT:
        raise ParseError(f"unsupported format {fmt!r}, expected {FORMAT!r}", f"{where}.format")
    raw_gens = doc.get("generators")
    if not isinstance(raw_gens, list):
        raise ParseError("missing list 'generators'", f"{where}.generators")
    gens = {}
    for i, g in enumerate(raw_gens):
        at = f"{where}.generators[{i}]"
        if isinstance(g, dict):
            name, gr = g.get("name"), g.get("grading")
        elif isinstance(g, list) and len(g) == 2:
            name, gr = g
        else:
            raise ParseError("generator must be {name, grading}", at)
        if not isinstance(name, str) or not name:
            raise ParseError("generator name must be a non-empty string", at)
        if name in gens:
            raise ParseError(f"duplicate generator {name!r}", at)
        gens[name] = _fraction(gr, f"{at}.grading")
    diff = _build_matrix(gens, 1, _arrows(doc.get("diff", []), f"{where}.diff"), f"{where}.diff")
    c = GradedComplex(gens, diff)
    if "iota" in doc:
        iota_m = _build_matrix(gens, 0, _arrows(doc["iota"], f"{where}.iota"), f"{where}.iota")
    else:
        iota_m = MonoMatrix.identity(c.gens)
    meta = doc.get("metadata") or {}
    if not isinstance(meta, dict):
        raise ParseError("metadata must be an object", f"{where}.metadata")
    label = str(meta.get("label", ""))
    pinned = meta.get("pinned_d")
    pinned = None if pinned is None else _fraction(pinned, f"{where}.metadata.pinned_d")
    x = IotaComplex(c, GradedMap(c, c, iota_m), label)
    return ComplexDocument(x, label, pinned, meta)


def _loads(text: str, source: str):
    if not text.strip():
        raise ParseError("empty document", source)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None


def parse_complex(text: str, source: str = "<input>", validate: bool = True) -> ComplexDocument:
    """Parse and (by default) validate a complex document."""
    doc = complex_from_dict(_loads(text, source))
    if validate:
        report = validate_iota(doc.complex)
        if not report.ok:
            raise ValidationError(f"{source}: invalid iota-complex", report.violations)
    return doc


def load_complex(path: str, validate: bool = True) -> ComplexDocument:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_complex(text, path, validate)


def _arrow_list(m: MonoMatrix):
    return [[s, t, n] for s, t, n in m.arrows()]


def complex_to_dict(x: IotaComplex, pinned_d=None) -> dict:
    meta = {}
    if x.label:
        meta["label"] = x.label
    if pinned_d is not None:
        meta["pinned_d"] = format_grading(pinned_d)
    out = {
        "format": FORMAT,
        "generators": [
            {"name": n, "grading": format_grading(g)} for n, g in x.gens.items()
        ],
        "diff": _arrow_list(x.complex.diff),
        "iota": _arrow_list(x.iota.matrix),
    }
    if meta:
        out["metadata"] = meta
    return out


def module_record(h: HomologyModule) -> dict:
    return {
        "towers": [format_grading(t) for t in h.free_towers],
        "torsion": [[format_grading(g), n] for g, n in h.torsion],
    }


def result_record(label: str, summary: InvolutiveSummary, with_hfi: bool = True) -> dict:
    rec = {
        "label": label,
        "d": format_grading(summary.d),
        "d_lower": format_grading(summary.d_lower),
        "d_upper": format_grading(summary.d_upper),
    }
    if with_hfi and summary.hfi is not None:
        rec["hfi"] = module_record(summary.hfi)
        rec["q_action"] = _arrow_list(summary.q_action)
    return rec


def witness_record(w: LocalMapWitness | None, source_label: str, target_label: str) -> dict:
    rec = {"source": source_label, "target": target_label, "exists": w is not None}
    if w is not None:
        rec["F"] = _arrow_list(w.F.matrix)
        rec["H"] = _arrow_list(w.H.matrix)
        rec["tower_power"] = w.tower_power
        rec["source_complex"] = complex_to_dict(w.source)
        rec["target_complex"] = complex_to_dict(w.target)
    return rec


def result_document(results=(), witnesses=()) -> dict:
    doc = {"format": FORMAT, "kind": "result"}
    if results:
        doc["results"] = list(results)
    if witnesses:
        doc["witnesses"] = list(witnesses)
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def parse_result(text: str, source: str = "<result>") -> dict:
    """Read a result document back, turning gradings into fractions."""
    doc = _loads(text, source)
    if not isinstance(doc, dict) or doc.get("format") != FORMAT or doc.get("kind") != "result":
        raise ParseError("not an ihf/1 result document", source)
    for i, rec in enumerate(doc.get("results", [])):
        at = f"$.results[{i}]"
        for key in ("d", "d_lower", "d_upper"):
            rec[key] = _fraction(rec.get(key), f"{at}.{key}")
        if "hfi" in rec:
            h = rec["hfi"]
            h["towers"] = [_fraction(t, f"{at}.hfi.towers") for t in h["towers"]]
            h["torsion"] = [(_fraction(g, f"{at}.hfi.torsion"), int(n)) for g, n in h["torsion"]]
    return doc


def witness_from_record(rec: dict, where="$") -> LocalMapWitness:
    src = complex_from_dict(rec["source_complex"], f"{where}.source_complex").complex
    tgt = complex_from_dict(rec["target_complex"], f"{where}.target_complex").complex
    f = MonoMatrix(src.gens, tgt.gens, 0, [tuple(a) for a in rec["F"]])
    h = MonoMatrix(src.gens, tgt.gens, -1, [tuple(a) for a in rec["H"]])
    return LocalMapWitness(
        src, tgt,
        GradedMap(src.complex, tgt.complex, f),
        GradedMap(src.complex, tgt.complex, h),
        int(rec["tower_power"]),
    )


def verify_result(doc: dict) -> bool:
    """Re-check the internal consistency of a parsed result document.

    Correction terms must satisfy ``d_lower <= d <= d_upper`` with all
    three congruent mod 2, and every witness must re-verify.
    """
    for rec in doc.get("results", []):
        lo, d, hi = rec["d_lower"], rec["d"], rec["d_upper"]
        if not lo <= d <= hi:
            return False
        for a in (lo, hi):
            diff = a - d
            if diff.denominator != 1 or diff.numerator % 2:
                return False
    for i, rec in enumerate(doc.get("witnesses", [])):
        if rec.get("exists"):
            try:
                w = witness_from_record(rec, f"$.witnesses[{i}]")
            except (ComplexError, KeyError, TypeError):
                return False
            if not w.verify():
                return False
    return True
