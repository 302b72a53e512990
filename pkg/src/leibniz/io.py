"""JSON formats for algebras, ideals, pairs and crossed modules.

Scalars are strings (``"3"``, ``"-2/7"``); output uses sorted keys and a
fixed indent so that emit -> parse -> emit is byte-identical.
"""

from __future__ import annotations

import json
import re
from typing import Any, Dict, List, Optional

from .algebra import LeibnizAlgebra, NotAnIdeal, Pair
from .cover import CrossedModule
from .exactlin import QQ, Field, Matrix, SparseVec, Subspace

_SCALAR = re.compile(r"^-?\d+(/\d+)?$")


class InputError(ValueError):
    """Malformed input; ``where`` is a JSON path or ``line:col``."""

    def __init__(self, msg: str, where: str = ""):
        super().__init__(f"{where}: {msg}" if where else msg)
        self.where = where


# ---------------------------------------------------------------------------
# low level


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def read_file(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise InputError(exc.strerror or str(exc), path) from None


def field_to_json(f: Field):
    return "Q" if f.p == 0 else {"GF": f.p}


def field_from_json(obj, where: str = "field") -> Field:
    if obj == "Q":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"GF"} and isinstance(obj["GF"], int):
        try:
            return Field(obj["GF"])
        except ValueError as exc:
            raise InputError(str(exc), where) from None
    raise InputError('expected "Q" or {"GF": p}', where)


def parse_field_option(text: str) -> Field:
    """``Q``, ``GF(7)`` or ``7`` from the command line."""
    t = text.strip()
    if t.upper() == "Q":
        return QQ
    m = re.fullmatch(r"(?:GF\()?(\d+)\)?", t)
    if not m:
        raise InputError(f"unrecognised field {text!r}", "--field")
    try:
        return Field(int(m.group(1)))
    except ValueError as exc:
        raise InputError(str(exc), "--field") from None


def scalar_from_json(x, f: Field, where: str):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise InputError("coefficient must be a string like \"3\" or \"-2/7\"", where)
    s = str(x).strip()
    if not _SCALAR.match(s):
        raise InputError(f"bad coefficient {s!r}", where)
    try:
        return f(s)
    except ZeroDivisionError as exc:
        raise InputError(str(exc), where) from None


def _expect(obj, typ, where: str):
    if not isinstance(obj, typ):
        name = typ.__name__ if isinstance(typ, type) else "/".join(t.__name__ for t in typ)
        raise InputError(f"expected {name}", where)
    return obj


def _index(x, bound: int, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < bound:
        raise InputError(f"index must be an integer in [0, {bound})", where)
    return x


def _terms_to_json(v: SparseVec, f: Field) -> List[Dict[str, str]]:
    return [{"basis": k, "coeff": f.format(c)} for k, c in sorted(v.items()) if c]


def _terms_from_json(obj, bound: int, f: Field, where: str) -> SparseVec:
    out: SparseVec = {}
    for t, term in enumerate(_expect(obj, list, where)):
        w = f"{where}[{t}]"
        _expect(term, dict, w)
        k = _index(term.get("basis"), bound, f"{w}.basis")
        c = scalar_from_json(term.get("coeff"), f, f"{w}.coeff")
        out[k] = out.get(k, f.zero) + c
    return {k: c for k, c in out.items() if c}


def _rows_to_json(rows: List[List], f: Field) -> List[List[str]]:
    return [[f.format(c) for c in r] for r in rows]


def _rows_from_json(obj, ncols: int, f: Field, where: str) -> List[SparseVec]:
    rows = []
    for r, row in enumerate(_expect(obj, list, where)):
        _expect(row, list, f"{where}[{r}]")
        if len(row) != ncols:
            raise InputError(f"row has {len(row)} entries, expected {ncols}", f"{where}[{r}]")
        rows.append({j: c for j, c in enumerate(scalar_from_json(x, f, f"{where}[{r}][{j}]")
                                                  for j, x in enumerate(row)) if c})
    return rows


# ---------------------------------------------------------------------------
# algebras, ideals, pairs


def algebra_to_json(alg: LeibnizAlgebra) -> Dict[str, Any]:
    brackets = [{"left": i, "right": j, "terms": _terms_to_json(w, alg.field)}
                for (i, j), w in sorted(alg.sc.items()) if w]
    return {"field": field_to_json(alg.field), "basis": list(alg.labels), "brackets": brackets}


def algebra_from_json(obj, where: str = "algebra", field: Optional[Field] = None) -> LeibnizAlgebra:
    _expect(obj, dict, where)
    f = field if field is not None else field_from_json(obj.get("field", "Q"), f"{where}.field")
    basis = _expect(obj.get("basis"), list, f"{where}.basis")
    for b, name in enumerate(basis):
        _expect(name, str, f"{where}.basis[{b}]")
    if len(set(basis)) != len(basis):
        raise InputError("basis labels must be distinct", f"{where}.basis")
    d = len(basis)
    sc: Dict = {}
    for b, entry in enumerate(_expect(obj.get("brackets", []), list, f"{where}.brackets")):
        w = f"{where}.brackets[{b}]"
        _expect(entry, dict, w)
        i = _index(entry.get("left"), d, f"{w}.left")
        j = _index(entry.get("right"), d, f"{w}.right")
        if (i, j) in sc:
            raise InputError(f"duplicate bracket ({i},{j})", w)
        sc[(i, j)] = _terms_from_json(entry.get("terms", []), d, f, f"{w}.terms")
    return LeibnizAlgebra(f, d, sc, tuple(basis))


def ideal_to_json(s: Subspace) -> Dict[str, Any]:
    return {"span": _rows_to_json(s.dense_vectors(), s.field)}


def ideal_from_json(obj, alg: LeibnizAlgebra, where: str = "ideal") -> Subspace:
    _expect(obj, dict, where)
    rows = _rows_from_json(obj.get("span", []), alg.dim, alg.field, f"{where}.span")
    return Subspace.span(alg.field, alg.dim, rows)


def pair_to_json(pair: Pair) -> Dict[str, Any]:
    return {"algebra": algebra_to_json(pair.g), "ideal": ideal_to_json(pair.n)}


def pair_from_json(obj, field: Optional[Field] = None, where: str = "pair") -> Pair:
    _expect(obj, dict, where)
    g = algebra_from_json(obj.get("algebra"), f"{where}.algebra", field)
    n = ideal_from_json(obj.get("ideal", {"span": []}), g, f"{where}.ideal")
    try:
        return Pair(g, n)
    except NotAnIdeal as exc:
        raise InputError(str(exc), f"{where}.ideal") from None


# ---------------------------------------------------------------------------
# crossed modules


def crossed_module_to_json(cm: CrossedModule) -> Dict[str, Any]:
    f = cm.field
    left = [{"x": x, "m": i, "terms": _terms_to_json(w, f)} for (x, i), w in sorted(cm.left.items())]
    right = [{"m": i, "x": x, "terms": _terms_to_json(w, f)} for (i, x), w in sorted(cm.right.items())]
    return {"m": algebra_to_json(cm.m), "g": algebra_to_json(cm.g),
            "delta": _rows_to_json(cm.delta.dense(), f), "left_action": left, "right_action": right}


def crossed_module_from_json(obj, field: Optional[Field] = None,
                             where: str = "crossed_module") -> CrossedModule:
    _expect(obj, dict, where)
    m = algebra_from_json(obj.get("m"), f"{where}.m", field)
    g = algebra_from_json(obj.get("g"), f"{where}.g", field)
    if m.field != g.field:
        raise InputError("m and g must share a field", where)
    f = m.field
    drows = _rows_from_json(obj.get("delta", []), m.dim, f, f"{where}.delta")
    if len(drows) != g.dim:
        raise InputError(f"delta needs {g.dim} rows", f"{where}.delta")
    delta = Matrix.from_sparse_rows(f, drows, m.dim)
    tables = []
    for key in ("left_action", "right_action"):
        tab = {}
        for e, entry in enumerate(_expect(obj.get(key, []), list, f"{where}.{key}")):
            w = f"{where}.{key}[{e}]"
            _expect(entry, dict, w)
            x = _index(entry.get("x"), g.dim, f"{w}.x")
            i = _index(entry.get("m"), m.dim, f"{w}.m")
            k = (x, i) if key == "left_action" else (i, x)
            tab[k] = _terms_from_json(entry.get("terms", []), m.dim, f, f"{w}.terms")
        tables.append(tab)
    return CrossedModule(m, g, delta, tables[0], tables[1])


__all__ = [
    "InputError", "loads", "dumps", "read_file", "field_to_json", "field_from_json",
    "parse_field_option", "algebra_to_json", "algebra_from_json", "ideal_to_json",
    "ideal_from_json", "pair_to_json", "pair_from_json", "crossed_module_to_json",
    "crossed_module_from_json",
]
