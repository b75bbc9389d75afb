"""Chevalley-Eilenberg differential on alternating cochains."""
from __future__ import annotations

from ..algebra import BimoduleData, ShapeMismatch, StructurePresentation, WrongKind
from . import forms
from .cochains import AlternatingCochain, form_fn


def _tables(alg: StructurePresentation, mod: BimoduleData):
    if alg.kind != "lie":
        raise WrongKind(f"Chevalley-Eilenberg complex needs a lie presentation, got {alg.kind}")
    return alg.tables["mul"], mod.actions["left"]


def ce_at(f, bracket, action, args) -> dict:
    """(delta f)(x_1, ..., x_{n+1}); f is evaluated on arbitrary tuples."""
    m = len(args)
    out: dict = {}
    for i in range(m):
        for j in range(i + 1, m):
            br = forms.product(bracket, args[i], args[j])
            if br:
                rest = tuple(a for t, a in enumerate(args) if t != i and t != j)
                # (-1)^{i+j} with 1-based positions equals (-1)^{i+j} 0-based
                forms.add(out, forms.evaluate(f, (br,) + rest), -1 if (i + j) % 2 else 1)
    for i in range(m):
        rest = args[:i] + args[i + 1:]
        forms.add(out, forms.left_act(action, args[i], f(rest)), 1 if i % 2 == 0 else -1)
    return out


def delta_ce(f: AlternatingCochain, alg: StructurePresentation, mod: BimoduleData) -> AlternatingCochain:
    if f.algebra_dim != alg.dim or f.module_dim != mod.module_dim:
        raise ShapeMismatch("cochain shape does not match algebra/module")
    bracket, action = _tables(alg, mod)
    g = form_fn(f)
    return AlternatingCochain.build(f.degree + 1, alg.dim, mod.module_dim,
                                    lambda args: forms.sparse_vector(ce_at(g, bracket, action, args)))
