"""JSON file formats for tuples, cycles, coordinates and families."""

from __future__ import annotations

import json
import sys
from pathlib import Path

from .exprparse import ExpressionError, parse_unipoly
from .families import PolyMatrixTuple
from .fields import FieldError, QQ, field_from_descriptor
from .matrix import Matrix
from .spectra import MatrixTuple, ZeroCycle
from .symtensor import ChowCoords, HitchinCoords, SymTensor
from .unipoly import PolyRing


class MalformedInput(ValueError):
    """An input document does not match its format; the message names the location."""


def read_json(path) -> dict:
    text = Path(path).read_text() if str(path) != "-" else sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _get(doc, key, where):
    if not isinstance(doc, dict) or key not in doc:
        raise MalformedInput(f"{where}: missing field {key!r}")
    return doc[key]


def parse_field(doc, where="document", override=None):
    if override is not None:
        return override
    try:
        return field_from_descriptor(doc.get("field", "Q") if isinstance(doc, dict) else "Q")
    except FieldError as exc:
        raise MalformedInput(f"{where}.field: {exc}") from None


def _square_entries(raw, n, where):
    """Accept a flat row-major list of n*n entries or a list of n rows."""
    if not isinstance(raw, list):
        raise MalformedInput(f"{where}: expected a list")
    if raw and all(isinstance(r, list) for r in raw):
        if len(raw) != n or any(len(r) != n for r in raw):
            raise MalformedInput(f"{where}: expected {n} rows of {n} entries")
        return [x for r in raw for x in r]
    if len(raw) != n * n:
        raise MalformedInput(f"{where}: expected {n * n} row-major entries, got {len(raw)}")
    return raw


def _scalar(field, x, where):
    try:
        return field.parse(str(x))
    except (ValueError, ZeroDivisionError, FieldError) as exc:
        raise MalformedInput(f"{where}: bad scalar {x!r} ({exc})") from None


def tuple_from_json(doc, field=None) -> MatrixTuple:
    field = parse_field(doc, override=field)
    n = _get(doc, "n", "document")
    d = _get(doc, "d", "document")
    thetas = _get(doc, "thetas", "document")
    if not isinstance(n, int) or not isinstance(d, int) or n < 1 or d < 1:
        raise MalformedInput("document: n and d must be positive integers")
    if not isinstance(thetas, list) or len(thetas) != d:
        raise MalformedInput(f"document.thetas: expected {d} matrices")
    mats = []
    for j, raw in enumerate(thetas):
        where = f"thetas[{j}]"
        entries = _square_entries(raw, n, where)
        vals = [_scalar(field, x, f"{where}[{k}]") for k, x in enumerate(entries)]
        mats.append(Matrix.from_flat(n, n, vals, field))
    return MatrixTuple(tuple(mats), field)


def tuple_to_json(t: MatrixTuple) -> dict:
    field = t.field
    return {
        "field": field.descriptor(),
        "n": t.n,
        "d": t.d,
        "thetas": [[field.format(x) for x in m.flat()] for m in t.thetas],
    }


def cycle_from_json(doc, field=None) -> ZeroCycle:
    field = parse_field(doc, override=field)
    entries = _get(doc, "entries", "document")
    if not isinstance(entries, list) or not entries:
        raise MalformedInput("document.entries: expected a nonempty list")
    out = []
    for k, e in enumerate(entries):
        where = f"entries[{k}]"
        pt = _get(e, "point", where)
        m = _get(e, "mult", where)
        if not isinstance(pt, list) or not pt:
            raise MalformedInput(f"{where}.point: expected a nonempty list")
        if not isinstance(m, int) or m < 1:
            raise MalformedInput(f"{where}.mult: expected a positive integer")
        out.append((tuple(_scalar(field, x, f"{where}.point[{i}]") for i, x in enumerate(pt)), m))
    try:
        return ZeroCycle(tuple(out))
    except ValueError as exc:
        raise MalformedInput(f"document.entries: {exc}") from None


def cycle_to_json(a: ZeroCycle, field=QQ) -> dict:
    doc = {"field": field.descriptor(), "n": a.n, "d": a.d}
    doc.update(a.to_json(field.format))
    return doc


def coords_to_json(c, field=QQ, kind=None, signed=False) -> dict:
    kind = kind or ("chow" if isinstance(c, ChowCoords) else "hitchin")
    doc = {"kind": kind, "field": field.descriptor()}
    if signed:
        doc["signed"] = True
    doc.update(c.to_json())
    return doc


def coords_from_json(doc, field=None):
    field = parse_field(doc, override=field)
    kind = _get(doc, "kind", "document")
    if kind not in ("chow", "hitchin"):
        raise MalformedInput("document.kind: expected 'chow' or 'hitchin'")
    n = _get(doc, "n", "document")
    d = _get(doc, "d", "document")
    raw = _get(doc, "tensors", "document")
    if not isinstance(raw, list) or len(raw) != n:
        raise MalformedInput(f"document.tensors: expected {n} tensors")
    tensors = []
    for i, t in enumerate(raw, start=1):
        where = f"tensors[{i - 1}]"
        try:
            coeffs = {tuple(e): _scalar(field, c, where) for e, c in t}
            tensors.append(SymTensor(d, i, coeffs))
        except (TypeError, ValueError) as exc:
            if isinstance(exc, MalformedInput):
                raise
            raise MalformedInput(f"{where}: {exc}") from None
    cls = ChowCoords if kind == "chow" else HitchinCoords
    return cls(n, tuple(tensors)), bool(doc.get("signed", False))


def family_from_json(doc, field=None) -> PolyMatrixTuple:
    field = parse_field(doc, override=field)
    ring = PolyRing(field, doc.get("var", "s") if isinstance(doc, dict) else "s")
    n = _get(doc, "n", "document")
    d = _get(doc, "d", "document")
    thetas = _get(doc, "thetas", "document")
    if not isinstance(thetas, list) or len(thetas) != d:
        raise MalformedInput(f"document.thetas: expected {d} matrices")
    mats = []
    for j, raw in enumerate(thetas):
        entries = _square_entries(raw, n, f"thetas[{j}]")
        vals = []
        for k, x in enumerate(entries):
            try:
                vals.append(parse_unipoly(str(x), field, ring.var))
            except (ExpressionError, ValueError, ZeroDivisionError) as exc:
                raise MalformedInput(f"thetas[{j}][{k}]: {exc}") from None
        mats.append(Matrix.from_flat(n, n, vals, ring))
    return PolyMatrixTuple(tuple(mats), field)
