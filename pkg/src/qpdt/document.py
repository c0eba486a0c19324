"""JSON input documents: quiver, potential, module catalog and parameters.

A document looks like::

    {
      "quiver": {"n": 3, "arrows": [[0, 1, 0], [0, 0, 1], [1, 0, 0]]},
      "labels": [{"name": "a", "source": 1, "target": 2}, ...],
      "potential": [{"cycle": ["a", "b", "c"], "coeff": "1"}],
      "modules": {"s1": {"dim": [1, 0, 0], "field": 2, "mats": {}}},
      "params": {"k": [1], "i": 1, "trunc": 6, "primes": [2, 3, 5], "max_dim": 4}
    }

Only ``quiver`` is required. The output of :meth:`QP.to_json` (with
``n``, ``arrows``, ``labels`` and ``potential`` at top level) is accepted too.
Arrow labels default to ``a, b, c, ...`` in row-major order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import InvariantViolation, ParseError, QPDTError
from .potential import QP, Potential, default_labels
from .quiver import Quiver
from .representations import ModuleRep

__all__ = ["Document", "parse_input", "dump_document"]

PARAM_KEYS = ("k", "i", "v", "trunc", "primes", "max_dim", "module")


@dataclass
class Document:
    """Validated contents of an input file."""

    qp: QP
    modules: dict[str, ModuleRep] = field(default_factory=dict)
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def quiver(self) -> Quiver:
        return self.qp.quiver()


def _expect(obj, typ, where: str):
    if not isinstance(obj, typ) or isinstance(obj, bool) and typ is not bool:
        name = typ.__name__ if isinstance(typ, type) else "/".join(t.__name__ for t in typ)
        raise ParseError(f"{where}: expected {name}, got {type(obj).__name__}")
    return obj


def _int_list(obj, where: str) -> list[int]:
    _expect(obj, list, where)
    return [_expect(x, int, f"{where}[{j}]") for j, x in enumerate(obj)]


def _matrix(obj, where: str) -> list[list[int]]:
    _expect(obj, list, where)
    return [_int_list(row, f"{where}[{j}]") for j, row in enumerate(obj)]


def _parse_quiver(obj: dict, where: str) -> Quiver:
    arrows = _matrix(obj.get("arrows"), f"{where}.arrows")
    n = obj.get("n", len(arrows))
    _expect(n, int, f"{where}.n")
    if n != len(arrows) or any(len(r) != n for r in arrows):
        raise ParseError(f"{where}.arrows: expected a {n}x{n} matrix")
    if any(x < 0 for r in arrows for x in r):
        raise InvariantViolation(f"{where}.arrows: negative arrow count")
    for i in range(n):
        if arrows[i][i]:
            raise InvariantViolation(f"{where}.arrows[{i}][{i}]: loop at vertex {i + 1}")
        for j in range(i + 1, n):
            if arrows[i][j] and arrows[j][i]:
                raise InvariantViolation(f"{where}.arrows: 2-cycle between vertices {i + 1} and {j + 1}")
    return Quiver(arrows)


def _parse_labels(obj, where: str) -> list[tuple[str, int, int]]:
    _expect(obj, list, where)
    out = []
    for j, item in enumerate(obj):
        w = f"{where}[{j}]"
        if isinstance(item, list):
            if len(item) != 3:
                raise ParseError(f"{w}: expected [name, source, target]")
            name, s, t = item
        else:
            _expect(item, dict, w)
            try:
                name, s, t = item["name"], item["source"], item["target"]
            except KeyError as exc:
                raise ParseError(f"{w}: missing field {exc.args[0]!r}") from None
        out.append((_expect(name, str, f"{w}.name"), _expect(s, int, f"{w}.source"),
                    _expect(t, int, f"{w}.target")))
    return out


def _parse_potential(obj, where: str) -> Potential:
    _expect(obj, list, where)
    terms: dict[tuple[str, ...], Fraction] = {}
    for j, item in enumerate(obj):
        w = f"{where}[{j}]"
        _expect(item, dict, w)
        cycle = item.get("cycle")
        _expect(cycle, list, f"{w}.cycle")
        if not cycle:
            raise InvariantViolation(f"{w}.cycle: empty cycle")
        for m, a in enumerate(cycle):
            _expect(a, str, f"{w}.cycle[{m}]")
        raw = item.get("coeff", "1")
        _expect(raw, (str, int), f"{w}.coeff")
        try:
            c = Fraction(str(raw))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{w}.coeff: {raw!r} is not a rational number") from None
        key = tuple(cycle)
        terms[key] = terms.get(key, Fraction(0)) + c
    try:
        return Potential(terms)
    except QPDTError as exc:
        raise InvariantViolation(f"{where}: {exc}") from None


def _parse_module(qp: QP, name: str, obj, where: str) -> ModuleRep:
    _expect(obj, dict, where)
    dim = _int_list(obj.get("dim"), f"{where}.dim")
    if len(dim) != qp.n:
        raise ParseError(f"{where}.dim: expected {qp.n} entries")
    q = obj.get("field", 2)
    _expect(q, int, f"{where}.field")
    mats = obj.get("mats", {})
    _expect(mats, dict, f"{where}.mats")
    known = set(qp.labels())
    parsed = {}
    for a, m in mats.items():
        if a not in known:
            raise InvariantViolation(f"{where}.mats: unknown arrow {a!r}")
        s, t = qp.endpoints(a)
        rows = _matrix(m, f"{where}.mats.{a}")
        if dim[t - 1] and dim[s - 1] and (len(rows) != dim[t - 1] or any(len(r) != dim[s - 1] for r in rows)):
            raise ParseError(f"{where}.mats.{a}: expected a {dim[t - 1]}x{dim[s - 1]} matrix")
        parsed[a] = rows
    try:
        return ModuleRep(qp, q, dim, parsed)
    except ValueError as exc:
        raise InvariantViolation(f"{where} ({name}): {exc}") from None


def _parse_params(obj, where: str) -> dict[str, Any]:
    _expect(obj, dict, where)
    out: dict[str, Any] = {}
    for key, val in obj.items():
        w = f"{where}.{key}"
        if key not in PARAM_KEYS:
            raise ParseError(f"{w}: unknown parameter")
        if key in ("k", "v", "primes"):
            out[key] = _int_list(val, w)
        elif key == "module":
            out[key] = _expect(val, str, w)
        else:
            out[key] = _expect(val, int, w)
    return out


def parse_input(text: bytes | str) -> Document:
    """Parse and validate an input document.

    Raises
    ------
    ParseError
        Malformed JSON (with line and column) or a field of the wrong shape.
    InvariantViolation
        Loops, 2-cycles, cycles that do not close up, or modules violating
        the Jacobi relations.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    _expect(doc, dict, "document")
    if "quiver" in doc:
        qobj = _expect(doc["quiver"], dict, "quiver")
        qwhere = "quiver"
    elif "arrows" in doc:
        qobj, qwhere = doc, "document"
    else:
        raise ParseError("document: missing field 'quiver'")
    q = _parse_quiver(qobj, qwhere)
    if "labels" in doc:
        labels = _parse_labels(doc["labels"], "labels")
    else:
        labels = default_labels(q)
    potential = _parse_potential(doc.get("potential", []), "potential")
    try:
        qp = QP(q.n, labels, potential)
    except QPDTError as exc:
        raise InvariantViolation(f"potential: {exc}") from None
    if qp.count_matrix() != [list(r) for r in q.arrows]:
        raise InvariantViolation("labels: arrow labels do not match the arrow counts")
    modules = {}
    mobj = doc.get("modules", {})
    _expect(mobj, dict, "modules")
    for name, m in mobj.items():
        modules[name] = _parse_module(qp, name, m, f"modules.{name}")
    params = _parse_params(doc.get("params", {}), "params")
    return Document(qp, modules, params)


def dump_document(d: Document) -> str:
    """Inverse of :func:`parse_input` (canonical key order)."""
    obj = {
        "quiver": d.quiver.to_json(),
        "labels": [{"name": a, "source": s, "target": t} for a, s, t in d.qp.arrows],
        "potential": d.qp.potential.to_json(),
    }
    if d.modules:
        obj["modules"] = {k: d.modules[k].to_json() for k in sorted(d.modules)}
    if d.params:
        obj["params"] = dict(sorted(d.params.items()))
    return json.dumps(obj, sort_keys=True)
