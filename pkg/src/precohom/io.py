"""JSON algebra files.

Layout (indices 1-based, scalars as strings "p" or "p/q")::

    {"kind": "dendriform", "dimension": 2, "basis": ["e1", "e2"],
     "products": {"prec": [[2, 1, ["0", "1"]]], "succ": [[1, 1, ["1", "0"]]]},
     "module": {"module_dimension": 2, "module_basis": ["m1", "m2"],
                "actions": {"left_prec": [[1, 2, ["0", "1"]]], ...}},
     "expected": {...}}

Omitted products and actions are zero.  A missing "module" block means the
regular bimodule.  "expected" is carried through untouched.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .algebra import (ACTIONS, KINDS, OPERATIONS, BimoduleData, ShapeMismatch, StructurePresentation,
                      WrongKind, regular_bimodule)
from .linalg import format_scalar, parse_scalar


class FileFormatError(ValueError):
    pass


@dataclass
class AlgebraFile:
    algebra: StructurePresentation
    module: BimoduleData | None = None
    expected: dict = field(default_factory=dict)
    source: str | None = None

    @property
    def coefficients(self) -> BimoduleData:
        return self.module if self.module is not None else regular_bimodule(self.algebra)


def _entries(raw, rows: int, cols: int, width: int, what: str) -> dict:
    if not isinstance(raw, list):
        raise FileFormatError(f"{what}: expected a list of [i, j, coeffs] entries")
    table: dict = {}
    for entry in raw:
        if not (isinstance(entry, list) and len(entry) == 3):
            raise FileFormatError(f"{what}: malformed entry {entry!r}")
        i, j, coeffs = entry
        if not (isinstance(i, int) and isinstance(j, int)):
            raise FileFormatError(f"{what}: indices must be integers in {entry!r}")
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise FileFormatError(f"{what}: index out of range in {entry!r}")
        if not isinstance(coeffs, list) or len(coeffs) != width:
            raise FileFormatError(f"{what}: entry ({i},{j}) needs {width} coefficients")
        key = (i - 1, j - 1)
        if key in table:
            raise FileFormatError(f"{what}: entry ({i},{j}) listed twice")
        try:
            table[key] = {k: parse_scalar(c) for k, c in enumerate(coeffs)}
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise FileFormatError(f"{what}: bad scalar in entry ({i},{j}): {exc}") from None
    return table


def parse_algebra(data: dict, source: str | None = None) -> AlgebraFile:
    if not isinstance(data, dict):
        raise FileFormatError("top level must be an object")
    kind = data.get("kind")
    if kind not in KINDS:
        raise FileFormatError(f"unknown kind {kind!r}")
    dim = data.get("dimension")
    if not isinstance(dim, int) or dim < 0:
        raise FileFormatError("dimension must be a nonnegative integer")
    names = data.get("basis", [f"e{i + 1}" for i in range(dim)])
    if not isinstance(names, list) or len(names) != dim:
        raise FileFormatError("basis length does not match dimension")
    products = data.get("products", {})
    if not isinstance(products, dict):
        raise FileFormatError("products must be an object")
    unknown = set(products) - set(OPERATIONS[kind])
    if unknown:
        raise FileFormatError(f"kind {kind} has no operations {sorted(unknown)}")
    tables = {op: _entries(products.get(op, []), dim, dim, dim, op) for op in OPERATIONS[kind]}
    try:
        algebra = StructurePresentation.build(kind, dim, tables, names)
    except (ShapeMismatch, WrongKind) as exc:
        raise FileFormatError(str(exc)) from None

    module = None
    block = data.get("module")
    if block is not None:
        if not isinstance(block, dict):
            raise FileFormatError("module must be an object")
        mdim = block.get("module_dimension")
        if not isinstance(mdim, int) or mdim < 0:
            raise FileFormatError("module_dimension must be a nonnegative integer")
        mnames = block.get("module_basis", [f"m{i + 1}" for i in range(mdim)])
        if not isinstance(mnames, list) or len(mnames) != mdim:
            raise FileFormatError("module_basis length does not match module_dimension")
        acts = block.get("actions", {})
        if not isinstance(acts, dict):
            raise FileFormatError("actions must be an object")
        unknown = set(acts) - set(ACTIONS[kind])
        if unknown:
            raise FileFormatError(f"kind {kind} has no actions {sorted(unknown)}")
        actions = {}
        for name, is_left in ACTIONS[kind].items():
            rows, cols = (dim, mdim) if is_left else (mdim, dim)
            actions[name] = _entries(acts.get(name, []), rows, cols, mdim, name)
        try:
            module = BimoduleData.build(algebra, mdim, actions, mnames)
        except (ShapeMismatch, WrongKind) as exc:
            raise FileFormatError(str(exc)) from None
    expected = data.get("expected", {})
    if not isinstance(expected, dict):
        raise FileFormatError("expected must be an object")
    return AlgebraFile(algebra, module, expected, source)


def load_algebra(path) -> AlgebraFile:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return parse_algebra(data, str(path))


def _dump_table(table: dict, width: int) -> list:
    out = []
    for (i, j), terms in sorted(table.items()):
        vec = ["0"] * width
        for k, c in terms:
            vec[k] = format_scalar(c)
        out.append([i + 1, j + 1, vec])
    return out


def dump_algebra(algebra: StructurePresentation, module: BimoduleData | None = None,
                 expected: dict | None = None) -> dict:
    data = {
        "kind": algebra.kind,
        "dimension": algebra.dim,
        "basis": list(algebra.basis_names),
        "products": {op: _dump_table(algebra.tables[op], algebra.dim) for op in algebra.ops},
    }
    if module is not None:
        data["module"] = {
            "module_dimension": module.module_dim,
            "module_basis": list(module.module_names),
            "actions": {name: _dump_table(t, module.module_dim) for name, t in module.actions.items()},
        }
    if expected:
        data["expected"] = expected
    return data


def dumps(data) -> str:
    """JSON text with one table entry per line."""
    def enc(obj, level):
        pad = "  " * level
        if isinstance(obj, dict) and obj:
            items = [f"{pad}  {json.dumps(k)}: {enc(v, level + 1)}" for k, v in obj.items()]
            return "{\n" + ",\n".join(items) + "\n" + pad + "}"
        if isinstance(obj, list) and obj and all(isinstance(x, list) for x in obj):
            items = [f"{pad}  {json.dumps(x)}" for x in obj]
            return "[\n" + ",\n".join(items) + "\n" + pad + "]"
        return json.dumps(obj)
    return enc(data, 0) + "\n"


def save_algebra(path, algebra, module=None, expected=None):
    Path(path).write_text(dumps(dump_algebra(algebra, module, expected)))
