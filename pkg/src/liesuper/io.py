"""JSON documents for algebras and cocycle lists.

Algebra document::

    {"name": "Hodd", "field": "Q", "even": ["x"], "odd": ["y"],
     "brackets": [{"pair": ["y", "y"], "terms": [["x", "1"]]}]}

Only pairs ``i <= j`` are listed; the rest follows from graded
skew-symmetry. Basis references may be labels or indices. Coefficients are
strings ("3", "-1/2") so that nothing passes through floating point.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .algebra import LieSuperalgebra, validate
from .extensions import Cocycle, make_cocycle
from .fields import Field, FieldError

ALGEBRA_KEYS = {"name", "comment", "field", "even", "odd", "brackets"}
BRACKET_KEYS = {"pair", "terms"}
COCYCLE_FILE_KEYS = {"field", "comment", "cocycles"}
COCYCLE_KEYS = {"parity", "values"}


class DocumentError(ValueError):
    """Malformed document; carries a JSON path and, when it can be found, a line/column."""

    def __init__(self, message: str, path: str = "$", line: int | None = None, col: int | None = None):
        self.path = path
        self.line = line
        self.col = col
        where = f"line {line}, column {col}" if line is not None else "position unknown"
        super().__init__(f"{where} ({path}): {message}")


def _locate(text: str, needle: str) -> tuple[int | None, int | None]:
    pos = text.find(needle)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Reader:
    def __init__(self, text: str):
        self.text = text
        try:
            self.data = json.loads(text)
        except json.JSONDecodeError as e:
            raise DocumentError(e.msg, "$", e.lineno, e.colno) from None

    def fail(self, message: str, path: str, token: Any = None):
        line = col = None
        if token is not None:
            line, col = _locate(self.text, json.dumps(token))
        raise DocumentError(message, path, line, col)

    def obj(self, value, path: str, allowed: set[str], required: set[str]):
        if not isinstance(value, dict):
            self.fail("expected an object", path)
        for k in value:
            if k not in allowed:
                self.fail(f"unknown key {k!r}", f"{path}.{k}", k)
        for k in sorted(required):
            if k not in value:
                self.fail(f"missing key {k!r}", path)
        return value

    def labels(self, value, path: str) -> list[str]:
        if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
            self.fail("expected a list of label strings", path)
        return value


def _field(reader: _Reader, value, path: str) -> Field:
    try:
        return Field.from_json(value)
    except (FieldError, TypeError, ValueError) as e:
        reader.fail(str(e), path, path.rsplit(".", 1)[-1])


def _coefficient(reader: _Reader, field: Field, value, path: str):
    if not isinstance(value, str):
        reader.fail("coefficients must be strings", path, value)
    try:
        return field.parse(value)
    except FieldError as e:
        reader.fail(str(e), path, value)


def _index(reader: _Reader, names: list[str], value, path: str) -> int:
    if isinstance(value, str):
        if value not in names:
            reader.fail(f"unknown basis label {value!r}", path, value)
        return names.index(value)
    if isinstance(value, int) and not isinstance(value, bool):
        if not 0 <= value < len(names):
            reader.fail(f"basis index {value} out of range", path, value)
        return value
    reader.fail("basis references are labels or indices", path, value)


@dataclass(frozen=True)
class AlgebraDocument:
    field: Field
    even: tuple[str, ...]
    odd: tuple[str, ...]
    brackets: dict  # {(i, j): {k: scalar}} with i <= j
    name: str | None = None
    comment: str | None = None

    def build(self) -> LieSuperalgebra:
        """Validate; raises an AxiomViolation subclass on failure."""
        return validate(self.field, self.even, self.odd, self.brackets, name=self.name)


def parse_document(text: str) -> AlgebraDocument:
    r = _Reader(text)
    d = r.obj(r.data, "$", ALGEBRA_KEYS, {"field", "even", "odd"})
    field = _field(r, d["field"], "$.field")
    even = r.labels(d["even"], "$.even")
    odd = r.labels(d["odd"], "$.odd")
    names = even + odd
    if len(set(names)) != len(names):
        dup = next(x for x in names if names.count(x) > 1)
        r.fail(f"duplicate basis label {dup!r}", "$.even/odd", dup)
    name = d.get("name")
    comment = d.get("comment")
    for key, val in (("name", name), ("comment", comment)):
        if val is not None and not isinstance(val, str):
            r.fail(f"{key} must be a string", f"$.{key}")
    brackets: dict = {}
    raw = d.get("brackets", [])
    if not isinstance(raw, list):
        r.fail("expected a list of bracket entries", "$.brackets")
    for e, entry in enumerate(raw):
        path = f"$.brackets[{e}]"
        r.obj(entry, path, BRACKET_KEYS, BRACKET_KEYS)
        pair = entry["pair"]
        if not isinstance(pair, list) or len(pair) != 2:
            r.fail("pair must have two entries", f"{path}.pair")
        i = _index(r, names, pair[0], f"{path}.pair[0]")
        j = _index(r, names, pair[1], f"{path}.pair[1]")
        if i > j:
            r.fail(f"pair ({names[i]}, {names[j]}) must be listed with i <= j", f"{path}.pair")
        if (i, j) in brackets:
            r.fail(f"pair ({names[i]}, {names[j]}) listed twice", f"{path}.pair")
        terms = entry["terms"]
        if not isinstance(terms, list):
            r.fail("terms must be a list", f"{path}.terms")
        out = {}
        for t, term in enumerate(terms):
            tp = f"{path}.terms[{t}]"
            if not isinstance(term, list) or len(term) != 2:
                r.fail("a term is [basis, coefficient]", tp)
            k = _index(r, names, term[0], f"{tp}[0]")
            if k in out:
                r.fail(f"basis {names[k]!r} repeated in one bracket", tp)
            out[k] = _coefficient(r, field, term[1], f"{tp}[1]")
        brackets[(i, j)] = out
    return AlgebraDocument(field, tuple(even), tuple(odd), brackets, name, comment)


def parse_algebra(text: str) -> LieSuperalgebra:
    return parse_document(text).build()


def algebra_to_json(L: LieSuperalgebra, comment: str | None = None) -> dict:
    f = L.field
    names = L.names
    entries = []
    for i in range(L.n):
        for j in range(i, L.n):
            terms = [[names[k], f.format(L.constants[i, j, k])] for k in range(L.n) if L.constants[i, j, k] != 0]
            if terms:
                entries.append({"pair": [names[i], names[j]], "terms": terms})
    doc: dict = {}
    if L.name:
        doc["name"] = L.name
    if comment:
        doc["comment"] = comment
    doc["field"] = f.to_json()
    doc["even"] = list(L.even_names)
    doc["odd"] = list(L.odd_names)
    doc["brackets"] = entries
    return doc


def dumps(doc: dict, list_key: str) -> str:
    """Top-level keys one per line, entries of ``doc[list_key]`` one per line."""
    lines = []
    items = list(doc.items())
    for pos, (k, v) in enumerate(items):
        comma = "," if pos < len(items) - 1 else ""
        if k == list_key and v:
            inner = ",\n".join("    " + json.dumps(e) for e in v)
            lines.append(f"  {json.dumps(k)}: [\n{inner}\n  ]{comma}")
        else:
            lines.append(f"  {json.dumps(k)}: {json.dumps(v)}{comma}")
    return "{\n" + "\n".join(lines) + "\n}\n"


def serialize(L: LieSuperalgebra, comment: str | None = None) -> str:
    """Deterministic text with a fixed key order and one bracket entry per line."""
    return dumps(algebra_to_json(L, comment), "brackets")


# ---------------------------------------------------------------------------
# cocycle files
# ---------------------------------------------------------------------------


_PARITY = {"even": 0, "odd": 1}


def parse_cocycles(text: str, L: LieSuperalgebra) -> tuple[list[Cocycle], list[Cocycle]]:
    """Parse a cocycle file against ``L``; each form is completed by graded antisymmetry."""
    r = _Reader(text)
    d = r.obj(r.data, "$", COCYCLE_FILE_KEYS, {"cocycles"})
    if "field" in d:
        fld = _field(r, d["field"], "$.field")
        if fld != L.field:
            r.fail(f"cocycles are over {fld}, algebra over {L.field}", "$.field")
    raw = d["cocycles"]
    if not isinstance(raw, list):
        r.fail("expected a list of cocycles", "$.cocycles")
    names = list(L.names)
    out: tuple[list, list] = ([], [])
    for c, entry in enumerate(raw):
        path = f"$.cocycles[{c}]"
        r.obj(entry, path, COCYCLE_KEYS, COCYCLE_KEYS)
        if entry["parity"] not in _PARITY:
            r.fail("parity is 'even' or 'odd'", f"{path}.parity", entry["parity"])
        parity = _PARITY[entry["parity"]]
        values = {}
        if not isinstance(entry["values"], list):
            r.fail("values must be a list", f"{path}.values")
        for v, item in enumerate(entry["values"]):
            vp = f"{path}.values[{v}]"
            if not isinstance(item, list) or len(item) != 3:
                r.fail("a value is [i, j, coefficient]", vp)
            i = _index(r, names, item[0], f"{vp}[0]")
            j = _index(r, names, item[1], f"{vp}[1]")
            if (i, j) in values:
                r.fail("pair listed twice", vp)
            values[(i, j)] = _coefficient(r, L.field, item[2], f"{vp}[2]")
        out[parity].append(make_cocycle(L, parity, values))
    return out


def cocycle_to_json(b: Cocycle) -> dict:
    L = b.host
    f = L.field
    vals = []
    for i in range(L.n):
        for j in range(i, L.n):
            if b.values[i, j] != 0:
                vals.append([L.names[i], L.names[j], f.format(b.values[i, j])])
    return {"parity": "odd" if b.parity else "even", "values": vals}


def load_algebra(path: str) -> LieSuperalgebra:
    with open(path, encoding="utf-8") as fh:
        return parse_algebra(fh.read())


__all__ = [
    "AlgebraDocument",
    "DocumentError",
    "algebra_to_json",
    "cocycle_to_json",
    "load_algebra",
    "parse_algebra",
    "parse_cocycles",
    "parse_document",
    "serialize",
]
