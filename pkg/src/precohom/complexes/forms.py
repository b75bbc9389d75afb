"""Linear-form arithmetic used by every pointwise differential.

A *form* is a dict ``{(module_coord, param): coeff}``.  A concrete cochain
uses a single parameter 0; the universal cochain of a space gives each
coordinate its own parameter, so one pointwise evaluation of a differential
yields a whole row block of its matrix.

Arguments passed to cochains are either a basis index or a sparse vector
``{index: coeff}``; cochains are expanded multilinearly over the latter.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product as cartesian


def add(acc: dict, form: dict, scale=1) -> dict:
    if not scale:
        return acc
    for key, c in form.items():
        v = acc.get(key, 0) + scale * c
        if v:
            acc[key] = v
        else:
            del acc[key]
    return acc


def _sparse(arg):
    if isinstance(arg, int):
        return ((arg, 1),)
    return tuple(arg.items())


def left_act(table, a, form: dict) -> dict:
    """a . form, with ``table[(alg, mod)] = ((mod', c), ...)``."""
    out: dict = {}
    for i, ca in _sparse(a):
        for (k, p), c in form.items():
            terms = table.get((i, k))
            if terms:
                s = ca * c
                for k2, d in terms:
                    key = (k2, p)
                    v = out.get(key, 0) + s * d
                    if v:
                        out[key] = v
                    else:
                        del out[key]
    return out


def right_act(table, form: dict, a) -> dict:
    """form . a, with ``table[(mod, alg)] = ((mod', c), ...)``."""
    out: dict = {}
    for i, ca in _sparse(a):
        for (k, p), c in form.items():
            terms = table.get((k, i))
            if terms:
                s = ca * c
                for k2, d in terms:
                    key = (k2, p)
                    v = out.get(key, 0) + s * d
                    if v:
                        out[key] = v
                    else:
                        del out[key]
    return out


def product(table, a, b) -> dict:
    """Product of two algebra arguments as a sparse vector."""
    out: dict = {}
    for i, ca in _sparse(a):
        for j, cb in _sparse(b):
            terms = table.get((i, j))
            if terms:
                for k, c in terms:
                    v = out.get(k, 0) + ca * cb * c
                    if v:
                        out[k] = v
                    else:
                        del out[k]
    return out


def evaluate(f, slots) -> dict:
    """Multilinear evaluation of ``f`` (a function of basis-index tuples) on mixed slots."""
    if all(isinstance(s, int) for s in slots):
        return f(tuple(slots))
    out: dict = {}
    for choice in cartesian(*(_sparse(s) for s in slots)):
        coeff = 1
        for _, c in choice:
            coeff *= c
        if coeff:
            add(out, f(tuple(i for i, _ in choice)), coeff)
    return out


def constant(vector) -> dict:
    """Form of a concrete module vector (dense sequence or sparse dict)."""
    items = vector.items() if isinstance(vector, dict) else enumerate(vector)
    return {(k, 0): Fraction(c) for k, c in items if c}


def to_vector(form: dict, dim: int) -> tuple:
    """Collapse a concrete (single-parameter) form to a dense module vector."""
    v = [Fraction(0)] * dim
    for (k, _), c in form.items():
        v[k] += c
    return tuple(v)


def sparse_vector(form: dict) -> dict:
    out: dict = {}
    for (k, _), c in form.items():
        v = out.get(k, 0) + c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out
