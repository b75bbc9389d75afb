"""Tensor products of a Perm algebra with a dendriform or pre-Lie algebra.

Basis pair (i, j) of A (x) B lives at index i * dim(B) + j.
"""
from __future__ import annotations

from .algebra import (BimoduleData, ShapeMismatch, StructurePresentation, WrongKind,
                      add_scaled)


def _check_perm(a: StructurePresentation):
    if a.kind != "perm":
        raise WrongKind(f"left factor must be a perm presentation, got {a.kind}")
    if not a.validated:
        a.mark_validated()


def _pair_names(left, right):
    return tuple(f"{u}(x){v}" for u in left for v in right)


def _accumulate(out, key, left_terms, right_terms, width, scale=1):
    acc = out.setdefault(key, {})
    for k, c in left_terms:
        for l, d in right_terms:
            add_scaled(acc, {k * width + l: scale * c * d})


def _finish(out):
    return {key: tuple(sorted(v.items())) for key, v in out.items() if v}


def tensor_associative(a: StructurePresentation, b: StructurePresentation) -> StructurePresentation:
    """(a1 (x) b1)(a2 (x) b2) = a1a2 (x) (b1 < b2) + a2a1 (x) (b1 > b2).

    ``b`` only needs prec/succ tables; it is not required to be dendriform-valid.
    """
    _check_perm(a)
    if set(b.tables) != {"prec", "succ"}:
        raise ShapeMismatch("right factor needs prec and succ tables")
    w = b.dim
    A = a.tables["mul"]
    out: dict = {}
    for (i1, i2), at in A.items():
        for (j1, j2), bt in b.tables["prec"].items():
            _accumulate(out, (i1 * w + j1, i2 * w + j2), at, bt, w)
        # a2a1 term: (i2, i1) here plays (a2, a1)
        for (j1, j2), bt in b.tables["succ"].items():
            _accumulate(out, (i2 * w + j1, i1 * w + j2), at, bt, w)
    return StructurePresentation("associative", a.dim * w, _pair_names(a.basis_names, b.basis_names),
                                 {"mul": _finish(out)})


def tensor_lie(a: StructurePresentation, p: StructurePresentation) -> StructurePresentation:
    """[x1 (x) b1, x2 (x) b2] = x1x2 (x) b1b2 - x2x1 (x) b2b1."""
    _check_perm(a)
    if set(p.tables) != {"mul"}:
        raise ShapeMismatch("right factor needs a single product table")
    w = p.dim
    A = a.tables["mul"]
    out: dict = {}
    for (i1, i2), at in A.items():
        for (j1, j2), bt in p.tables["mul"].items():
            _accumulate(out, (i1 * w + j1, i2 * w + j2), at, bt, w)
            _accumulate(out, (i2 * w + j2, i1 * w + j1), at, bt, w, -1)
    return StructurePresentation("lie", a.dim * w, _pair_names(a.basis_names, p.basis_names),
                                 {"mul": _finish(out)})


def _check_modules(a, m, b, n, kind):
    if m.over is not a and m.over.tables != a.tables:
        raise ShapeMismatch("perm module is not over the given perm algebra")
    if n.over is not b and n.over.tables != b.tables:
        raise ShapeMismatch(f"{kind} module is not over the given right factor")


def tensor_assoc_bimodule(a, m: BimoduleData, b, n: BimoduleData) -> BimoduleData:
    """A (x) B -bimodule M (x) N.

    (a (x) b)(m (x) n) = am (x) (b < n) + ma (x) (b > n)
    (m (x) n)(a (x) b) = ma (x) (n < b) + am (x) (n > b)
    """
    _check_modules(a, m, b, n, "dendriform")
    total = tensor_associative(a, b)
    wb, wn = b.dim, n.module_dim
    left: dict = {}
    right: dict = {}
    for (i, mm), t in m.actions["left"].items():
        for (j, nn), u in n.actions["left_prec"].items():
            _accumulate(left, (i * wb + j, mm * wn + nn), t, u, wn)
        for (nn, j), u in n.actions["right_succ"].items():
            _accumulate(right, (mm * wn + nn, i * wb + j), t, u, wn)
    for (mm, i), t in m.actions["right"].items():
        for (j, nn), u in n.actions["left_succ"].items():
            _accumulate(left, (i * wb + j, mm * wn + nn), t, u, wn)
        for (nn, j), u in n.actions["right_prec"].items():
            _accumulate(right, (mm * wn + nn, i * wb + j), t, u, wn)
    return BimoduleData(total, m.module_dim * wn, _pair_names(m.module_names, n.module_names),
                        {"left": _finish(left), "right": _finish(right)})


def tensor_lie_module(a, m: BimoduleData, p, n: BimoduleData) -> BimoduleData:
    """Lie module M (x) N over A (x) P: (a (x) b).(m (x) n) = am (x) b.n - ma (x) n.b."""
    _check_modules(a, m, p, n, "pre-Lie")
    total = tensor_lie(a, p)
    wp, wn = p.dim, n.module_dim
    left: dict = {}
    for (i, mm), t in m.actions["left"].items():
        for (j, nn), u in n.actions["left"].items():
            _accumulate(left, (i * wp + j, mm * wn + nn), t, u, wn)
    for (mm, i), t in m.actions["right"].items():
        for (nn, j), u in n.actions["right"].items():
            _accumulate(left, (i * wp + j, mm * wn + nn), t, u, wn, -1)
    return BimoduleData(total, m.module_dim * wn, _pair_names(m.module_names, n.module_names),
                        {"left": _finish(left)})
