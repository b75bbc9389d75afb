"""Dendriform differential: the R-map form and the expanded case split."""
from __future__ import annotations

from ..algebra import BimoduleData, ShapeMismatch, StructurePresentation, WrongKind
from . import forms
from .cochains import DendCochain, form_fn
from .rmaps import r0_map, ri_map

_OPS = ("prec", "succ")


def _tables(alg: StructurePresentation, mod: BimoduleData):
    if alg.kind != "dendriform" or mod.over.kind != "dendriform":
        raise WrongKind("dendriform complex needs a dendriform algebra and module")
    t = alg.tables
    a = mod.actions
    return {
        "prec": t["prec"], "succ": t["succ"], "total": alg.total_table,
        "left": (a["left_prec"], a["left_succ"]),
        "right": (a["right_prec"], a["right_succ"]),
    }


def dendriform_at(f, T, r: int, args) -> dict:
    """(delta f)([r], args) via the R-maps; ``f(comp, args)`` returns a form.

    First term is theta_1 composed in slot 2 of the binary operation, the last
    term is theta_2 composed in slot 1, the middle terms insert pi_B into f.
    """
    n = len(args) - 1
    out: dict = {}
    lt = T["left"][r0_map(2, 2, n, r) - 1]
    for comp, c in ri_map(2, 2, n, r):
        forms.add(out, forms.left_act(lt, args[0], f(comp, args[1:])), c)
    for i in range(1, n + 1):
        comp = r0_map(n, i, 2, r)
        sign = -1 if i % 2 else 1
        g = lambda t, comp=comp: f(comp, t)
        for op, c in ri_map(n, i, 2, r):
            prod = forms.product(T[_OPS[op - 1]], args[i - 1], args[i])
            if prod:
                forms.add(out, forms.evaluate(g, args[:i - 1] + (prod,) + args[i + 1:]), sign * c)
    rt = T["right"][r0_map(2, 1, n, r) - 1]
    sign = 1 if n % 2 else -1
    for comp, c in ri_map(2, 1, n, r):
        forms.add(out, forms.right_act(rt, f(comp, args[:n]), args[n]), sign * c)
    return out


def dendriform_expanded_at(f, T, r: int, args) -> dict:
    """(delta f)([r], args) from the four closed-form cases r = 1, 2, 3..n, n+1."""
    n = len(args) - 1
    b = args
    prec, succ, total = T["prec"], T["succ"], T["total"]
    lp, ls = T["left"]
    rp, rs = T["right"]
    out: dict = {}

    def sub(comp, i, table):
        """f(comp, b_1, ..., b_i op b_{i+1}, ...) with 1-based i."""
        prod = forms.product(table, b[i - 1], b[i])
        if not prod:
            return {}
        return forms.evaluate(lambda t: f(comp, t), b[:i - 1] + (prod,) + b[i + 1:])

    def sgn(e):
        return -1 if e % 2 else 1

    if r == n + 1:
        forms.add(out, forms.left_act(ls, b[0], f(n, b[1:])))
        for i in range(1, n):
            forms.add(out, sub(n, i, total), sgn(i))
        forms.add(out, sub(n, n, succ), sgn(n))
        for i in range(1, n + 1):
            forms.add(out, forms.right_act(rs, f(i, b[:n]), b[n]), sgn(n + 1))
        return out
    if r == 1:
        for i in range(1, n + 1):
            forms.add(out, forms.left_act(lp, b[0], f(i, b[1:])))
        forms.add(out, sub(1, 1, prec), -1)
        for i in range(2, n + 1):
            forms.add(out, sub(1, i, total), sgn(i))
    else:
        # 2 <= r <= n; r = 2 has an empty leading middle sum
        forms.add(out, forms.left_act(ls, b[0], f(r - 1, b[1:])))
        for i in range(1, r - 1):
            forms.add(out, sub(r - 1, i, total), sgn(i))
        forms.add(out, sub(r - 1, r - 1, succ), sgn(r - 1))
        forms.add(out, sub(r, r, prec), sgn(r))
        for i in range(r + 1, n + 1):
            forms.add(out, sub(r, i, total), sgn(i))
    forms.add(out, forms.right_act(rp, f(r, b[:n]), b[n]), sgn(n + 1))
    return out


def _check(f, alg, mod):
    if f.algebra_dim != alg.dim or f.module_dim != mod.module_dim:
        raise ShapeMismatch("cochain shape does not match algebra/module")


def delta_dendriform(f: DendCochain, alg: StructurePresentation, mod: BimoduleData) -> DendCochain:
    _check(f, alg, mod)
    T = _tables(alg, mod)
    g = form_fn(f)
    return DendCochain.build(f.degree + 1, alg.dim, mod.module_dim,
                             lambda r, args: forms.sparse_vector(dendriform_at(g, T, r, args)))


def delta_dendriform_expanded(f: DendCochain, alg: StructurePresentation, mod: BimoduleData) -> DendCochain:
    _check(f, alg, mod)
    T = _tables(alg, mod)
    g = form_fn(f)
    return DendCochain.build(f.degree + 1, alg.dim, mod.module_dim,
                             lambda r, args: forms.sparse_vector(dendriform_expanded_at(g, T, r, args)))
