"""Pre-Lie (right-symmetric) differential, and the equal-argument ansatz subspace."""
from __future__ import annotations

from itertools import product as cartesian

from ..algebra import BimoduleData, ShapeMismatch, StructurePresentation, WrongKind
from ..linalg import SubspaceBasis
from . import forms
from .cochains import Cochain, DenseSpace, form_fn


def _tables(alg: StructurePresentation, mod: BimoduleData):
    if alg.kind != "prelie":
        raise WrongKind(f"pre-Lie complex needs a prelie presentation, got {alg.kind}")
    return alg.tables["mul"], alg.bracket_table, mod.actions["left"], mod.actions["right"]


def _omit(seq, i):
    return seq[:i] + seq[i + 1:]


def prelie_at(f, mul, bracket, left, right, args) -> dict:
    """(delta psi)(a_0, ..., a_k) for psi of degree k = len(args) - 1."""
    a0, rest = args[0], args[1:]
    k = len(rest)
    out: dict = {}
    for i in range(1, k + 1):
        s = -1 if i % 2 else 1  # (-1)^i
        ai = rest[i - 1]
        others = _omit(rest, i - 1)
        forms.add(out, forms.left_act(left, a0, f((ai,) + others)), -s)
        prod = forms.product(mul, a0, ai)
        if prod:
            forms.add(out, forms.evaluate(f, (prod,) + others), s)
        forms.add(out, forms.right_act(right, f((a0,) + others), ai), -s)
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            br = forms.product(bracket, rest[i - 1], rest[j - 1])
            if not br:
                continue
            slots = list(rest)
            slots[j - 1] = br
            del slots[i - 1]
            forms.add(out, forms.evaluate(f, (a0,) + tuple(slots)), 1 if i % 2 else -1)
    return out


def delta_prelie(f: Cochain, alg: StructurePresentation, mod: BimoduleData) -> Cochain:
    if f.algebra_dim != alg.dim or f.module_dim != mod.module_dim:
        raise ShapeMismatch("cochain shape does not match algebra/module")
    if f.degree < 1:
        raise ShapeMismatch("pre-Lie cochains start in degree 1")
    mul, bracket, left, right = _tables(alg, mod)
    g = form_fn(f)
    return Cochain.build(f.degree + 1, alg.dim, mod.module_dim,
                         lambda args: forms.sparse_vector(prelie_at(g, mul, bracket, left, right, args)))


def prelie_display_at(f, mul, bracket, left, right, args) -> dict:
    """The printed degree 1-3 coboundary displays, term by term.

    These differ from the general four-sum rule in the signs of some sums; they
    are kept only to reproduce the worked example's intermediate values.
    """
    k = len(args) - 1
    L = lambda a, x: forms.left_act(left, a, x)
    R = lambda x, a: forms.right_act(right, x, a)
    P = lambda a, b: forms.product(mul, a, b)
    B = lambda a, b: forms.product(bracket, a, b)
    F = lambda *slots: forms.evaluate(f, slots)
    terms = []
    if k == 1:
        a0, a1 = args
        terms = [(-1, L(a0, F(a1))), (1, F(P(a0, a1))), (-1, R(F(a0), a1))]
    elif k == 2:
        a0, a1, a2 = args
        terms = [(-1, L(a0, F(a1, a2))), (1, L(a0, F(a2, a1))), (1, F(P(a0, a1), a2)),
                 (-1, F(P(a0, a2), a1)), (1, F(a0, B(a1, a2))), (-1, R(F(a0, a1), a2)),
                 (1, R(F(a0, a2), a1))]
    elif k == 3:
        a0, a1, a2, a3 = args
        terms = [(-1, L(a0, F(a1, a2, a3))), (1, L(a0, F(a2, a1, a3))), (-1, L(a0, F(a3, a1, a2))),
                 (1, F(P(a0, a1), a2, a3)), (-1, F(P(a0, a2), a1, a3)), (1, F(P(a0, a3), a1, a2)),
                 (1, F(a0, B(a1, a2), a3)), (-1, F(a0, B(a1, a3), a2)), (1, F(a0, B(a2, a3), a1)),
                 (-1, R(F(a0, a1, a2), a3)), (1, R(F(a0, a1, a3), a2)), (-1, R(F(a0, a2, a3), a1))]
    else:
        raise ShapeMismatch("printed displays exist for degrees 1-3 only")
    out: dict = {}
    for s, t in terms:
        forms.add(out, t, s)
    return out


def delta_prelie_display(f: Cochain, alg: StructurePresentation, mod: BimoduleData) -> Cochain:
    mul, bracket, left, right = _tables(alg, mod)
    g = form_fn(f)
    return Cochain.build(f.degree + 1, alg.dim, mod.module_dim,
                         lambda args: forms.sparse_vector(prelie_display_at(g, mul, bracket, left, right, args)))


def ansatz_subspace(degree: int, algebra_dim: int, module_dim: int) -> SubspaceBasis:
    """Cochains vanishing whenever two arguments coincide."""
    sp = DenseSpace(degree, algebra_dim, module_dim)
    vecs = []
    for args in cartesian(range(algebra_dim), repeat=degree):
        if len(set(args)) == degree:
            for k in range(module_dim):
                v = [0] * sp.dim
                v[sp.coordinate(args, k)] = 1
                vecs.append(v)
    return SubspaceBasis.span(vecs, sp.dim)
