"""Hochschild differential and the constrained Perm subcomplex."""
from __future__ import annotations

from itertools import product as cartesian

from ..algebra import BimoduleData, ShapeMismatch, StructurePresentation, WrongKind
from ..linalg import Matrix, kernel_basis
from . import forms
from .cochains import Cochain, DenseSpace, form_fn


class ConstraintViolation(ValueError):
    pass


class ClosureFailure(RuntimeError):
    pass


def _tables(alg: StructurePresentation, mod: BimoduleData):
    if "mul" not in alg.tables:
        raise WrongKind(f"Hochschild complex needs a single product, got {alg.kind}")
    if set(mod.actions) != {"left", "right"}:
        raise WrongKind("Hochschild complex needs left and right actions")
    return alg.tables["mul"], mod.actions["left"], mod.actions["right"]


def hochschild_at(f, mul, left, right, args) -> dict:
    """(delta f)(args) for f of degree len(args) - 1, as a form."""
    n = len(args) - 1
    out = forms.left_act(left, args[0], f(args[1:]))
    for i in range(n):
        prod = forms.product(mul, args[i], args[i + 1])
        if prod:
            forms.add(out, forms.evaluate(f, args[:i] + (prod,) + args[i + 2:]), -1 if i % 2 == 0 else 1)
    forms.add(out, forms.right_act(right, f(args[:n]), args[n]), -1 if n % 2 == 0 else 1)
    return out


def _check_shape(f, alg, mod):
    if f.algebra_dim != alg.dim or f.module_dim != mod.module_dim:
        raise ShapeMismatch("cochain shape does not match algebra/module")


def delta_hochschild(f: Cochain, alg: StructurePresentation, mod: BimoduleData) -> Cochain:
    _check_shape(f, alg, mod)
    mul, left, right = _tables(alg, mod)
    g = form_fn(f)
    return Cochain.build(f.degree + 1, alg.dim, mod.module_dim,
                         lambda args: forms.sparse_vector(hochschild_at(g, mul, left, right, args)))


# ---- Perm cochains -------------------------------------------------------

def perm_condition_forms(f, alg: StructurePresentation, mod: BimoduleData, n: int):
    """Yield (label, form) for every instance of the five Perm cochain conditions.

    Each form must vanish.  Condition (1) is imposed for adjacent transpositions.
    """
    mul, left, _ = _tables(alg, mod)
    d = alg.dim
    basis = range(d)

    def lf(a, args):
        return forms.left_act(left, a, forms.evaluate(f, args))

    for args in cartesian(basis, repeat=n):
        for a in basis:
            # (1) a f(..., a_{s+1}, a_s, ...) = a f(...)
            for s in range(n - 1):
                swapped = args[:s] + (args[s + 1], args[s]) + args[s + 2:]
                yield (1, a, args, s), forms.add(lf(a, swapped), lf(a, args), -1)
        for b in basis:
            # (2) f(..., b a_i, ...) = f(..., a_i b, ...), i = 2..n
            for i in range(1, n):
                ba = forms.product(mul, b, args[i])
                ab = forms.product(mul, args[i], b)
                r = forms.evaluate(f, args[:i] + (ba,) + args[i + 1:])
                forms.add(r, forms.evaluate(f, args[:i] + (ab,) + args[i + 1:]), -1)
                yield (2, b, args, i), r
            for a in basis:
                # (3) a f(a_1 b, ...) = a f(b a_1, ...)
                r = lf(a, (forms.product(mul, args[0], b),) + args[1:])
                forms.add(r, lf(a, (forms.product(mul, b, args[0]),) + args[1:]), -1)
                yield (3, a, b, args), r
                # (4) (ab) f(a_1..a_n) = (a a_j) f(..., b at j, ...)
                ab = forms.product(mul, a, b)
                for j in range(n):
                    r = forms.left_act(left, ab, forms.evaluate(f, args))
                    aaj = forms.product(mul, a, args[j])
                    forms.add(r, forms.left_act(left, aaj, forms.evaluate(f, args[:j] + (b,) + args[j + 1:])), -1)
                    yield (4, a, b, args, j), r
                # (5) a f(..., a_p b, ...) = a f(a_1 b, ...), p = 2..n
                first = lf(a, (forms.product(mul, args[0], b),) + args[1:])
                for p in range(1, n):
                    r = lf(a, args[:p] + (forms.product(mul, args[p], b),) + args[p + 1:])
                    forms.add(r, first, -1)
                    yield (5, a, b, args, p), r


def perm_constraint_matrix(alg: StructurePresentation, mod: BimoduleData, n: int) -> Matrix:
    """Rows cut out C^n_perm inside the coordinates of Hom(A^(x)n, M)."""
    if alg.kind != "perm":
        raise WrongKind(f"perm constraints need a perm presentation, got {alg.kind}")
    space = DenseSpace(n, alg.dim, mod.module_dim)
    rows = []
    seen = set()
    for _, form in perm_condition_forms(space.universal(), alg, mod, n):
        by_coord: dict = {}
        for (k, p), c in form.items():
            by_coord.setdefault(k, {})[p] = c
        for k in sorted(by_coord):
            key = tuple(sorted(by_coord[k].items()))
            if key not in seen:
                seen.add(key)
                rows.append(key)
    dense = [[0] * space.dim for _ in rows]
    for row, key in zip(dense, rows):
        for p, c in key:
            row[p] = c
    return Matrix.from_rows(dense, cols=space.dim)


def perm_subspace(alg, mod, n):
    return kernel_basis(perm_constraint_matrix(alg, mod, n))


def _violations(f, alg, mod, n):
    return [label for label, form in perm_condition_forms(f, alg, mod, n) if form]


def delta_perm(f: Cochain, alg: StructurePresentation, mod: BimoduleData) -> Cochain:
    """Hochschild rule on a constrained cochain; checks the constraints on both ends."""
    _check_shape(f, alg, mod)
    bad = _violations(form_fn(f), alg, mod, f.degree)
    if bad:
        raise ConstraintViolation(f"input violates perm condition instance {bad[0]}")
    g = delta_hochschild(f, alg, mod)
    bad = _violations(form_fn(g), alg, mod, g.degree)
    if bad:
        raise ClosureFailure(f"delta leaves C_perm: condition instance {bad[0]} fails in degree {g.degree}")
    return g
