"""Finite-dimensional algebras and bimodules given by structure constants.

Tables are stored sparsely: ``tables[op][(i, j)]`` is a tuple of ``(k, c)``
pairs meaning ``e_i op e_j = sum c e_k``.  Action tables follow the same
convention, keyed ``(algebra index, module index)`` for left actions and
``(module index, algebra index)`` for right actions.  All indices are 0-based
here; the file format and the CLI speak 1-based labels.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Mapping

KINDS = ("associative", "perm", "lie", "prelie", "dendriform")

OPERATIONS = {
    "associative": ("mul",),
    "perm": ("mul",),
    "lie": ("mul",),
    "prelie": ("mul",),
    "dendriform": ("prec", "succ"),
}

# name -> True when the action is a left action (key = (algebra, module))
ACTIONS = {
    "associative": {"left": True, "right": False},
    "perm": {"left": True, "right": False},
    "prelie": {"left": True, "right": False},
    "lie": {"left": True},
    "dendriform": {"left_prec": True, "left_succ": True,
                   "right_prec": False, "right_succ": False},
}


class ShapeMismatch(ValueError):
    pass


class WrongKind(ValueError):
    pass


class InvalidStructure(ValueError):
    """Raised when a structure required to be valid fails its axioms."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


SparseTable = Mapping[tuple, tuple]


def _clean(table: Mapping) -> dict:
    out = {}
    for key, terms in table.items():
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict[int, Fraction] = {}
        for k, c in terms:
            c = Fraction(c)
            if c:
                acc[k] = acc.get(k, 0) + c
        terms = tuple(sorted((k, c) for k, c in acc.items() if c))
        if terms:
            out[tuple(key)] = terms
    return out


def _check_table(table: Mapping, first: int, second: int, target: int, what: str):
    for (i, j), terms in table.items():
        if not (0 <= i < first and 0 <= j < second):
            raise ShapeMismatch(f"{what}: index pair ({i}, {j}) out of range")
        for k, _ in terms:
            if not 0 <= k < target:
                raise ShapeMismatch(f"{what}: output index {k} out of range")


def add_scaled(acc: dict, terms, scale=1):
    """acc += scale * terms, dropping zeros."""
    if not scale:
        return acc
    items = terms.items() if hasattr(terms, "items") else terms
    for k, c in items:
        v = acc.get(k, 0) + scale * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)
    return acc


def sub(x: Mapping, y: Mapping) -> dict:
    return add_scaled(dict(x), y, -1)


@dataclass(frozen=True, eq=False)
class StructurePresentation:
    kind: str
    dim: int
    basis_names: tuple
    tables: Mapping[str, SparseTable]
    validated: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise WrongKind(f"unknown algebra kind {self.kind!r}")
        if len(self.basis_names) != self.dim:
            raise ShapeMismatch("basis_names length must equal dim")
        ops = OPERATIONS[self.kind]
        if set(self.tables) != set(ops):
            raise ShapeMismatch(f"kind {self.kind} needs tables {ops}, got {sorted(self.tables)}")
        for op, t in self.tables.items():
            _check_table(t, self.dim, self.dim, self.dim, op)

    @classmethod
    def build(cls, kind: str, dim: int, tables: Mapping[str, Mapping], basis_names=None):
        """Build from sparse tables ``{op: {(i, j): {k: c} or [(k, c), ...]}}``."""
        names = tuple(basis_names) if basis_names is not None else tuple(f"e{i + 1}" for i in range(dim))
        full = {op: _clean(tables.get(op, {})) for op in OPERATIONS.get(kind, ())}
        extra = set(tables) - set(full)
        if extra:
            raise ShapeMismatch(f"unexpected tables {sorted(extra)} for kind {kind}")
        return cls(kind, dim, names, full)

    @classmethod
    def from_dense(cls, kind: str, tables: Mapping[str, list], basis_names=None):
        """Build from dense tables ``c[i][j][k]``."""
        dims = {len(t) for t in tables.values()}
        if len(dims) != 1:
            raise ShapeMismatch("tables disagree on dimension")
        (dim,) = dims
        sparse = {}
        for op, t in tables.items():
            entries = {}
            for i, row in enumerate(t):
                if len(row) != dim:
                    raise ShapeMismatch(f"table {op} row {i} has wrong length")
                for j, vec in enumerate(row):
                    if len(vec) != dim:
                        raise ShapeMismatch(f"table {op} entry ({i},{j}) has wrong length")
                    entries[(i, j)] = [(k, c) for k, c in enumerate(vec) if c]
            sparse[op] = entries
        return cls.build(kind, dim, sparse, basis_names)

    def dense(self, op: str = "mul") -> list:
        out = [[[Fraction(0)] * self.dim for _ in range(self.dim)] for _ in range(self.dim)]
        for (i, j), terms in self.tables[op].items():
            for k, c in terms:
                out[i][j][k] = c
        return out

    @property
    def ops(self) -> tuple:
        return OPERATIONS[self.kind]

    def mul(self, op: str, i: int, j: int) -> tuple:
        return self.tables[op].get((i, j), ())

    @cached_property
    def total_table(self) -> dict:
        """prec + succ for dendriform, the single product otherwise."""
        if self.kind != "dendriform":
            return dict(self.tables["mul"])
        out: dict = {}
        for op in ("prec", "succ"):
            for key, terms in self.tables[op].items():
                out[key] = add_scaled(dict(out.get(key, ())), terms)
        return {k: tuple(sorted(v.items())) for k, v in out.items() if v}

    @cached_property
    def bracket_table(self) -> dict:
        """Commutator table x*y - y*x of the single product."""
        t = self.tables["mul"] if "mul" in self.tables else self.total_table
        out = {}
        for i in range(self.dim):
            for j in range(self.dim):
                v = sub(dict(t.get((i, j), ())), dict(t.get((j, i), ())))
                if v:
                    out[(i, j)] = tuple(sorted(v.items()))
        return out

    def product(self, op: str, x: Mapping, y: Mapping) -> dict:
        """Product of two elements given as sparse coordinate dicts."""
        table = self.total_table if op == "total" else self.tables[op]
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                terms = table.get((i, j))
                if terms:
                    add_scaled(out, terms, a * b)
        return out

    def with_entry(self, op: str, i: int, j: int, k: int, delta=1) -> "StructurePresentation":
        """Copy with one structure constant shifted by ``delta`` (unvalidated)."""
        t = {key: dict(v) for key, v in self.tables[op].items()}
        add_scaled(t.setdefault((i, j), {}), {k: Fraction(delta)})
        tables = dict(self.tables)
        tables[op] = _clean(t)
        return StructurePresentation(self.kind, self.dim, self.basis_names, tables)

    def as_kind(self, kind: str) -> "StructurePresentation":
        """Reinterpret the same tables under another kind with the same operations."""
        if OPERATIONS[kind] != self.ops:
            raise WrongKind(f"cannot view a {self.kind} presentation as {kind}")
        return StructurePresentation(kind, self.dim, self.basis_names, self.tables)

    def mark_validated(self) -> "StructurePresentation":
        from .validate import validate_presentation
        report = validate_presentation(self)
        if report:
            raise InvalidStructure(f"{self.kind} axioms fail", report)
        return replace(self, validated=True)

    def is_zero(self) -> bool:
        return not any(self.tables.values())


@dataclass(frozen=True, eq=False)
class BimoduleData:
    over: StructurePresentation
    module_dim: int
    module_names: tuple
    actions: Mapping[str, SparseTable]
    validated: bool = False

    def __post_init__(self):
        spec = ACTIONS[self.over.kind]
        if set(self.actions) - set(spec):
            raise ShapeMismatch(f"unexpected actions {sorted(set(self.actions) - set(spec))}")
        if len(self.module_names) != self.module_dim:
            raise ShapeMismatch("module_names length must equal module_dim")
        for name, t in self.actions.items():
            if spec[name]:
                _check_table(t, self.over.dim, self.module_dim, self.module_dim, name)
            else:
                _check_table(t, self.module_dim, self.over.dim, self.module_dim, name)

    @classmethod
    def build(cls, over: StructurePresentation, module_dim: int, actions: Mapping[str, Mapping],
              module_names=None):
        names = tuple(module_names) if module_names is not None else tuple(f"m{i + 1}" for i in range(module_dim))
        full = {name: _clean(actions.get(name, {})) for name in ACTIONS[over.kind]}
        extra = set(actions) - set(full)
        if extra:
            raise ShapeMismatch(f"unexpected actions {sorted(extra)} for kind {over.kind}")
        return cls(over, module_dim, names, full)

    @property
    def kind(self) -> str:
        return self.over.kind

    def act(self, name: str, x: Mapping, m: Mapping) -> dict:
        """Apply action ``name``; for right actions pass (module element, algebra element)."""
        table = self.actions[name]
        out: dict = {}
        for i, a in x.items():
            for j, b in m.items():
                terms = table.get((i, j))
                if terms:
                    add_scaled(out, terms, a * b)
        return out

    def left(self, name: str, a: Mapping, m: Mapping) -> dict:
        return self.act(name, a, m)

    def right(self, name: str, m: Mapping, a: Mapping) -> dict:
        return self.act(name, m, a)

    def with_entry(self, name: str, i: int, j: int, k: int, delta=1) -> "BimoduleData":
        t = {key: dict(v) for key, v in self.actions[name].items()}
        add_scaled(t.setdefault((i, j), {}), {k: Fraction(delta)})
        actions = dict(self.actions)
        actions[name] = _clean(t)
        return BimoduleData(self.over, self.module_dim, self.module_names, actions)

    def mark_validated(self) -> "BimoduleData":
        from .validate import validate_bimodule
        report = validate_bimodule(self)
        if report:
            raise InvalidStructure(f"{self.kind} bimodule axioms fail", report)
        return replace(self, validated=True)


def regular_bimodule(p: StructurePresentation) -> BimoduleData:
    """The algebra acting on itself by its own products (adjoint action for Lie)."""
    if p.kind == "dendriform":
        actions = {
            "left_prec": p.tables["prec"], "left_succ": p.tables["succ"],
            "right_prec": p.tables["prec"], "right_succ": p.tables["succ"],
        }
    elif p.kind == "lie":
        actions = {"left": p.tables["mul"]}
    else:
        actions = {"left": p.tables["mul"], "right": p.tables["mul"]}
    return BimoduleData(p, p.dim, p.basis_names, dict(actions), validated=p.validated)


def zero_bimodule(p: StructurePresentation, module_dim: int) -> BimoduleData:
    return BimoduleData.build(p, module_dim, {})


def induced_total(p: StructurePresentation) -> StructurePresentation:
    """Associative total product of a dendriform algebra, or the commutator Lie algebra of a pre-Lie one."""
    if p.kind == "dendriform":
        return StructurePresentation.build("associative", p.dim, {"mul": p.total_table}, p.basis_names)
    if p.kind == "prelie":
        return StructurePresentation.build("lie", p.dim, {"mul": p.bracket_table}, p.basis_names)
    raise WrongKind(f"induced_total needs a dendriform or prelie presentation, got {p.kind}")


def basis(i: int) -> dict:
    return {i: Fraction(1)}
