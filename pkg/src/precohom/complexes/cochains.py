"""Cochain spaces with canonical coordinates, and concrete cochains on them.

Coordinates are lexicographic in the argument tuple with the module index
fastest; dendriform cochains put the component r (1-based) slowest.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from itertools import combinations, product as cartesian
from math import comb

from ..algebra import ShapeMismatch
from . import forms


def lex_position(args, base: int) -> int:
    pos = 0
    for a in args:
        pos = pos * base + a
    return pos


def sort_with_sign(args):
    """(sign, sorted tuple); sign 0 when there is a repeated entry."""
    items = list(args)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    if any(items[i] == items[i + 1] for i in range(len(items) - 1)):
        return 0, tuple(items)
    return sign, tuple(items)


class DenseSpace:
    """Hom(A^(x)n, M) with all multilinear maps."""

    def __init__(self, degree: int, algebra_dim: int, module_dim: int):
        if degree < 0:
            raise ShapeMismatch("degree must be nonnegative")
        self.degree, self.algebra_dim, self.module_dim = degree, algebra_dim, module_dim
        self.dim = algebra_dim ** degree * module_dim

    def tuples(self):
        return cartesian(range(self.algebra_dim), repeat=self.degree)

    def coordinate(self, args, k: int) -> int:
        return lex_position(args, self.algebra_dim) * self.module_dim + k

    def coord(self, t, k: int) -> int:
        return self.coordinate(t, k)

    def universal(self):
        m, base = self.module_dim, self.algebra_dim

        def f(args):
            start = lex_position(args, base) * m
            return {(k, start + k): 1 for k in range(m)}
        return f

    def restricted(self, vectors):
        """Universal cochain of the span of ``vectors`` (coordinates in this space)."""
        m, base = self.module_dim, self.algebra_dim
        cols = {}
        for t, v in enumerate(vectors):
            for idx, c in enumerate(v):
                if c:
                    cols.setdefault(idx, []).append((t, c))

        def f(args):
            start = lex_position(args, base) * m
            out = {}
            for k in range(m):
                for t, c in cols.get(start + k, ()):
                    out[(k, t)] = c
            return out
        return f

    def cochain(self, vector) -> "Cochain":
        return Cochain(self.degree, self.algebra_dim, self.module_dim, tuple(Fraction(x) for x in vector))

    def zero(self) -> "Cochain":
        return self.cochain([0] * self.dim)


class DendSpace:
    """Hom(kC_n (x) B^(x)n, N)."""

    def __init__(self, degree: int, algebra_dim: int, module_dim: int):
        if degree < 1:
            raise ShapeMismatch("dendriform cochains start in degree 1")
        self.degree, self.algebra_dim, self.module_dim = degree, algebra_dim, module_dim
        self.block = algebra_dim ** degree
        self.dim = degree * self.block * module_dim

    def tuples(self):
        for r in range(1, self.degree + 1):
            for args in cartesian(range(self.algebra_dim), repeat=self.degree):
                yield r, args

    def coordinate(self, r: int, args, k: int) -> int:
        return ((r - 1) * self.block + lex_position(args, self.algebra_dim)) * self.module_dim + k

    def coord(self, t, k: int) -> int:
        return self.coordinate(t[0], t[1], k)

    def universal(self):
        m = self.module_dim

        def f(r, args):
            start = self.coordinate(r, args, 0)
            return {(k, start + k): 1 for k in range(m)}
        return f

    def cochain(self, vector) -> "DendCochain":
        return DendCochain(self.degree, self.algebra_dim, self.module_dim, tuple(Fraction(x) for x in vector))

    def zero(self) -> "DendCochain":
        return self.cochain([0] * self.dim)


class AltSpace:
    """Alternating maps, stored on strictly increasing tuples."""

    def __init__(self, degree: int, algebra_dim: int, module_dim: int):
        self.degree, self.algebra_dim, self.module_dim = degree, algebra_dim, module_dim
        self.combos = list(combinations(range(algebra_dim), degree))
        self.index = {c: i for i, c in enumerate(self.combos)}
        self.dim = comb(algebra_dim, degree) * module_dim

    def tuples(self):
        return iter(self.combos)

    def coordinate(self, args, k: int) -> int:
        return self.index[tuple(args)] * self.module_dim + k

    def coord(self, t, k: int) -> int:
        return self.coordinate(t, k)

    def universal(self):
        m = self.module_dim

        def f(args):
            sign, key = sort_with_sign(args)
            if not sign:
                return {}
            start = self.index[key] * m
            return {(k, start + k): sign for k in range(m)}
        return f

    def restricted(self, vectors):
        m = self.module_dim
        cols = {}
        for t, v in enumerate(vectors):
            for idx, c in enumerate(v):
                if c:
                    cols.setdefault(idx, []).append((t, c))

        def f(args):
            sign, key = sort_with_sign(args)
            if not sign:
                return {}
            start = self.index[key] * m
            out = {}
            for k in range(m):
                for t, c in cols.get(start + k, ()):
                    out[(k, t)] = sign * c
            return out
        return f

    def cochain(self, vector) -> "AlternatingCochain":
        return AlternatingCochain(self.degree, self.algebra_dim, self.module_dim,
                                  tuple(Fraction(x) for x in vector))

    def zero(self) -> "AlternatingCochain":
        return self.cochain([0] * self.dim)


class _Values:
    space_cls = DenseSpace

    def __post_init__(self):
        if len(self.values) != self.space.dim:
            raise ShapeMismatch(f"expected {self.space.dim} values, got {len(self.values)}")

    @cached_property
    def space(self):
        return self.space_cls(self.degree, self.algebra_dim, self.module_dim)

    def vector(self) -> tuple:
        return self.values

    def is_zero(self) -> bool:
        return not any(self.values)

    def _combine(self, other, s):
        if type(other) is not type(self) or other.space.dim != self.space.dim or other.degree != self.degree:
            raise ShapeMismatch("cochains live in different spaces")
        return type(self)(self.degree, self.algebra_dim, self.module_dim,
                          tuple(a + s * b for a, b in zip(self.values, other.values)))

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scaled(self, c):
        c = Fraction(c)
        return type(self)(self.degree, self.algebra_dim, self.module_dim, tuple(c * v for v in self.values))

    def __eq__(self, other):
        return (type(other) is type(self) and other.degree == self.degree
                and other.algebra_dim == self.algebra_dim and other.module_dim == self.module_dim
                and other.values == self.values)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Cochain(_Values):
    degree: int
    algebra_dim: int
    module_dim: int
    values: tuple

    @classmethod
    def build(cls, degree, algebra_dim, module_dim, fn):
        """``fn(args)`` returns a module vector (dense sequence or sparse dict)."""
        sp = DenseSpace(degree, algebra_dim, module_dim)
        vals = [Fraction(0)] * sp.dim
        for args in sp.tuples():
            v = fn(args)
            items = v.items() if isinstance(v, dict) else enumerate(v)
            for k, c in items:
                vals[sp.coordinate(args, k)] = Fraction(c)
        return cls(degree, algebra_dim, module_dim, tuple(vals))

    def at(self, *args) -> tuple:
        start = lex_position(args, self.algebra_dim) * self.module_dim
        return self.values[start:start + self.module_dim]

    def form(self, args) -> dict:
        start = lex_position(args, self.algebra_dim) * self.module_dim
        return {(k, 0): c for k, c in enumerate(self.values[start:start + self.module_dim]) if c}


@dataclass(frozen=True, eq=False)
class DendCochain(_Values):
    degree: int
    algebra_dim: int
    module_dim: int
    values: tuple
    space_cls = DendSpace

    @classmethod
    def build(cls, degree, algebra_dim, module_dim, fn):
        """``fn(r, args)`` returns a module vector; r is 1-based."""
        sp = DendSpace(degree, algebra_dim, module_dim)
        vals = [Fraction(0)] * sp.dim
        for r, args in sp.tuples():
            v = fn(r, args)
            items = v.items() if isinstance(v, dict) else enumerate(v)
            for k, c in items:
                vals[sp.coordinate(r, args, k)] = Fraction(c)
        return cls(degree, algebra_dim, module_dim, tuple(vals))

    def at(self, r, *args) -> tuple:
        start = self.space.coordinate(r, args, 0)
        return self.values[start:start + self.module_dim]

    def form(self, r, args) -> dict:
        return {(k, 0): c for k, c in enumerate(self.at(r, *args)) if c}


@dataclass(frozen=True, eq=False)
class AlternatingCochain(_Values):
    degree: int
    algebra_dim: int
    module_dim: int
    values: tuple
    space_cls = AltSpace

    @classmethod
    def build(cls, degree, algebra_dim, module_dim, fn):
        """``fn(args)`` is consulted on strictly increasing tuples only."""
        sp = AltSpace(degree, algebra_dim, module_dim)
        vals = [Fraction(0)] * sp.dim
        for args in sp.tuples():
            v = fn(args)
            items = v.items() if isinstance(v, dict) else enumerate(v)
            for k, c in items:
                vals[sp.coordinate(args, k)] = Fraction(c)
        return cls(degree, algebra_dim, module_dim, tuple(vals))

    def at(self, *args) -> tuple:
        sign, key = sort_with_sign(args)
        if not sign:
            return (Fraction(0),) * self.module_dim
        start = self.space.index[key] * self.module_dim
        return tuple(sign * c for c in self.values[start:start + self.module_dim])

    def form(self, args) -> dict:
        return {(k, 0): c for k, c in enumerate(self.at(*args)) if c}


def form_fn(f):
    """Accept a cochain object or a raw form-valued callable."""
    return f.form if hasattr(f, "form") else f


def vector_of(form: dict, dim: int) -> tuple:
    return forms.to_vector(form, dim)
