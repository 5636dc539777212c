"""JSON documents for functionals and cumulant series.

Coefficients are exact rational strings ``"p/q"`` in lowest terms; words are
integer arrays and entries are sorted by (degree, lexicographic).  Floats are
rejected on input so that a document always round-trips exactly.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .cumulants import KINDS, CumulantSeries, Functional
from .series import NcSeries, word_key

DOC_KINDS = ("state",) + KINDS


class DocumentError(ValueError):
    pass


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise DocumentError(f"coefficient {s!r} must be an exact rational string, not a float")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise DocumentError(f"coefficient {s!r} is not a rational string")
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"cannot parse {s!r} as a rational") from exc


def series_to_doc(s: NcSeries, kind: str = "state", name: str = "") -> dict:
    if kind not in DOC_KINDS:
        raise DocumentError(f"unknown document kind {kind!r}")
    entries = {(): s.const}
    entries.update(dict(s.items()))
    doc = {"kind": kind, "d": s.d, "N": s.N,
           "entries": [[list(w), format_rational(v)] for w, v in sorted(entries.items(), key=lambda e: word_key(e[0]))]}
    if name:
        doc["name"] = name
    return doc


def to_doc(obj, name: str = "") -> dict:
    if isinstance(obj, Functional):
        return series_to_doc(obj.moments, "state", name or obj.name)
    if isinstance(obj, CumulantSeries):
        return series_to_doc(obj.series, obj.kind, name)
    return series_to_doc(obj, "state", name)


def doc_to_series(doc: dict, max_n: int | None = None) -> tuple:
    """Parse a document into ``(kind, NcSeries, name)`` with full validation."""
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    try:
        d, N, entries = doc["d"], doc["N"], doc["entries"]
    except KeyError as exc:
        raise DocumentError(f"document is missing field {exc.args[0]!r}") from exc
    kind = doc.get("kind", "state")
    if kind not in DOC_KINDS:
        raise DocumentError(f"unknown document kind {kind!r}")
    if not (isinstance(d, int) and d >= 1 and isinstance(N, int) and N >= 0):
        raise DocumentError("d must be a positive integer and N a non-negative integer")
    if max_n is not None and N > max_n:
        raise DocumentError(f"truncation N={N} exceeds the cap {max_n} (CFREE_MAX_N)")
    coeffs = {}
    for entry in entries:
        if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], list)):
            raise DocumentError(f"malformed entry {entry!r}")
        w = tuple(entry[0])
        if any(not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= d for i in w):
            raise DocumentError(f"word {list(w)} is not over the letters 1..{d}")
        if len(w) > N:
            raise DocumentError(f"word {list(w)} has degree above N={N}")
        if w in coeffs:
            raise DocumentError(f"duplicate entry for word {list(w)}")
        coeffs[w] = parse_rational(entry[1])
    if () not in coeffs:
        raise DocumentError("the empty-word entry is required")
    expected = Fraction(1) if kind == "state" else Fraction(0)
    if coeffs[()] != expected:
        raise DocumentError(f"empty-word entry must be {format_rational(expected)} for kind {kind!r}")
    return kind, NcSeries(d, N, coeffs), doc.get("name", "")


def doc_to_functional(doc: dict, max_n: int | None = None) -> Functional:
    kind, s, name = doc_to_series(doc, max_n)
    if kind != "state":
        raise DocumentError(f"expected a state document, got kind {kind!r}")
    return Functional(s, name)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"


def loads(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from exc
