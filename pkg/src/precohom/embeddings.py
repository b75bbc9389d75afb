"""Cochain maps from dendriform and pre-Lie cochains into the Hochschild and
Chevalley-Eilenberg complexes of the tensor product with a Perm algebra.

Tensor basis element ``u`` of A (x) B stands for ``m (x) b`` with
``m, b = divmod(u, dim B)``; module coordinates of A (x) N are laid out the
same way with the regular A-module on the left.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product as cartesian
from typing import Callable, Union

from .algebra import (BimoduleData, ShapeMismatch, StructurePresentation, WrongKind,
                      regular_bimodule)
from .cohomology import ComplexHandle, EmbeddedComplex
from .complexes import forms
from .complexes.ce import ce_at
from .complexes.cochains import (AltSpace, AlternatingCochain, Cochain, DendCochain, DendSpace,
                                 DenseSpace, form_fn)
from .complexes.dendriform import _tables as dend_tables, dendriform_at
from .complexes.hochschild import hochschild_at
from .complexes.prelie import prelie_at
from .freeperm import TruncatedFreePerm
from .linalg import Matrix, rank_of_vectors
from .tensor import tensor_assoc_bimodule, tensor_associative, tensor_lie, tensor_lie_module

MAX_PRELIE_DEGREE = 3


class UnsupportedDegree(ValueError):
    pass


class NotAlternating(ValueError):
    """Psi of this cochain would not be an alternating map."""


class InsufficientTruncation(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class EmbeddingContext:
    """A Perm factor together with a dendriform or pre-Lie factor and its module."""
    perm_factor: Union[TruncatedFreePerm, StructurePresentation]
    right_factor: StructurePresentation
    right_module: BimoduleData

    def __post_init__(self):
        if self.right_factor.kind not in ("dendriform", "prelie"):
            raise WrongKind(f"right factor must be dendriform or prelie, got {self.right_factor.kind}")
        if self.right_module.over is not self.right_factor and self.right_module.over.tables != self.right_factor.tables:
            raise ShapeMismatch("module is not over the right factor")
        if self.perm.kind != "perm":
            raise WrongKind(f"perm factor must be a perm presentation, got {self.perm.kind}")

    @classmethod
    def build(cls, perm, right: StructurePresentation, module: BimoduleData = None) -> "EmbeddingContext":
        return cls(perm, right, module if module is not None else regular_bimodule(right))

    @property
    def kind(self) -> str:
        return "dend" if self.right_factor.kind == "dendriform" else "prelie"

    @property
    def perm(self) -> StructurePresentation:
        p = self.perm_factor
        return p.presentation if isinstance(p, TruncatedFreePerm) else p

    @property
    def free(self) -> TruncatedFreePerm | None:
        return self.perm_factor if isinstance(self.perm_factor, TruncatedFreePerm) else None

    @cached_property
    def perm_module(self) -> BimoduleData:
        return regular_bimodule(self.perm)

    @cached_property
    def tensor_algebra(self) -> StructurePresentation:
        if self.kind == "dend":
            return tensor_associative(self.perm, self.right_factor)
        return tensor_lie(self.perm, self.right_factor)

    @cached_property
    def tensor_module(self) -> BimoduleData:
        build = tensor_assoc_bimodule if self.kind == "dend" else tensor_lie_module
        mod = build(self.perm, self.perm_module, self.right_factor, self.right_module)
        # reuse the cached algebra so the module and the algebra share tables
        return BimoduleData(self.tensor_algebra, mod.module_dim, mod.module_names, mod.actions)

    def total_complex(self, check: bool = True) -> ComplexHandle:
        kind = "hochschild" if self.kind == "dend" else "ce"
        return ComplexHandle(kind, self.tensor_algebra, self.tensor_module, check=check)

    def factor_complex(self) -> ComplexHandle:
        kind = "dendriform" if self.kind == "dend" else "prelie"
        return ComplexHandle(kind, self.right_factor, self.right_module)

    def generators(self) -> list:
        """Perm basis positions used for residual tuples: the degree-one monomials,
        or every basis element when the factor is not free."""
        free = self.free
        if free is None:
            return list(range(self.perm.dim))
        return [free.index(m) for m in free.monomials if m.degree == 1]

    def degrees(self) -> list | None:
        free = self.free
        return None if free is None else [m.degree for m in free.monomials]

    def split(self, u: int):
        return divmod(u, self.right_factor.dim)


def _ordered_product(mul, factors) -> dict:
    acc = {factors[0]: 1}
    for x in factors[1:]:
        acc = forms.product(mul, acc, x)
        if not acc:
            break
    return acc


def _attach(out: dict, mono: dict, value: dict, width: int, scale=1):
    """out += scale * mono (x) value, in the A (x) N coordinates."""
    for x, cx in mono.items():
        s = scale * cx
        for (k, p), c in value.items():
            key = (x * width + k, p)
            v = out.get(key, 0) + s * c
            if v:
                out[key] = v
            else:
                del out[key]
    return out


def dend_pattern(n: int, r: int) -> tuple:
    """Order of the perm factors multiplying f(r, ...): m_r m_{r-1} ... m_1 m_{r+1} ... m_n (0-based)."""
    return tuple(range(r - 1, -1, -1)) + tuple(range(r, n))


def psi_dend_form(f, ctx: EmbeddingContext, n: int) -> Callable:
    """Pointwise Psi for a dendriform form ``f(r, args)``; returns ``F(args)`` on tensor indices."""
    mul, width = ctx.perm.tables["mul"], ctx.right_module.module_dim
    patterns = [dend_pattern(n, r) for r in range(1, n + 1)]

    @lru_cache(maxsize=None)
    def mono(ms, r):
        return _ordered_product(mul, [ms[i] for i in patterns[r - 1]])

    def F(args):
        ms, bs = zip(*(ctx.split(u) for u in args)) if args else ((), ())
        out: dict = {}
        for r in range(1, n + 1):
            m = mono(ms, r)
            if m:
                _attach(out, m, f(r, tuple(bs)), width)
        return out
    return F


def prelie_terms(n: int, last_sign: int = -1) -> tuple:
    """(sign, order) pairs: Psi(f)(u_1..u_n) = sum sign * x_order (x) f(b_order)."""
    if n == 1:
        return ((1, (0,)),)
    if n == 2:
        return ((1, (0, 1)), (-1, (1, 0)))
    if n == 3:
        return ((1, (0, 1, 2)), (-1, (1, 0, 2)), (last_sign, (2, 1, 0)))
    raise UnsupportedDegree(f"Psi for pre-Lie cochains is only defined up to degree {MAX_PRELIE_DEGREE}")


# With -1 on the reversed term, Psi(f) is alternating whenever f is antisymmetric
# in its last two arguments (every coboundary is), and delta Psi = Psi delta holds.
PRELIE_LAST_SIGN = -1


def psi_prelie_form(f, ctx: EmbeddingContext, n: int, last_sign: int = None) -> Callable:
    terms = prelie_terms(n, PRELIE_LAST_SIGN if last_sign is None else last_sign)
    mul, width = ctx.perm.tables["mul"], ctx.right_module.module_dim

    @lru_cache(maxsize=None)
    def mono(ms, order):
        return _ordered_product(mul, [ms[i] for i in order])

    def F(args):
        ms, bs = zip(*(ctx.split(u) for u in args))
        out: dict = {}
        for sign, order in terms:
            m = mono(ms, order)
            if m:
                _attach(out, m, f(tuple(bs[i] for i in order)), width, sign)
        return out
    return F


@dataclass(frozen=True, eq=False)
class LazyCochain:
    """A cochain over the tensor algebra evaluated on demand."""
    degree: int
    algebra_dim: int
    module_dim: int
    fn: Callable  # tensor index tuple -> form
    alternating: bool = False

    def form(self, args) -> dict:
        return self.fn(tuple(args))

    def at(self, *args) -> tuple:
        return forms.to_vector(self.fn(tuple(args)), self.module_dim)

    def materialize(self):
        cls = AlternatingCochain if self.alternating else Cochain
        return cls.build(self.degree, self.algebra_dim, self.module_dim,
                         lambda args: forms.sparse_vector(self.fn(tuple(args))))


def _check_factor(f, ctx: EmbeddingContext, kind: str):
    if ctx.kind != kind:
        raise WrongKind(f"context holds a {ctx.kind} factor, not {kind}")
    if f.algebra_dim != ctx.right_factor.dim or f.module_dim != ctx.right_module.module_dim:
        raise ShapeMismatch("cochain shape does not match the right factor")


def psi_dend(f: DendCochain, ctx: EmbeddingContext) -> LazyCochain:
    _check_factor(f, ctx, "dend")
    F = psi_dend_form(form_fn(f), ctx, f.degree)
    return LazyCochain(f.degree, ctx.tensor_algebra.dim, ctx.tensor_module.module_dim, F)


def _antisymmetric_tail(f: Cochain) -> bool:
    d = f.algebra_dim
    for a, b, c in cartesian(range(d), repeat=3):
        if b <= c and f.at(a, b, c) != tuple(-x for x in f.at(a, c, b)):
            return False
    return True


def psi_prelie(f: Cochain, ctx: EmbeddingContext) -> LazyCochain:
    """Psi of a pre-Lie cochain of degree at most 3.

    In degree 3 the image is alternating only for f antisymmetric in its last
    two arguments, so other inputs are rejected.
    """
    _check_factor(f, ctx, "prelie")
    if f.degree == 3 and not _antisymmetric_tail(f):
        raise NotAlternating("degree-3 Psi needs f(a, b, c) = -f(a, c, b)")
    F = psi_prelie_form(form_fn(f), ctx, f.degree)
    return LazyCochain(f.degree, ctx.tensor_algebra.dim, ctx.tensor_module.module_dim, F,
                       alternating=True)


# ---- chain-map residual ------------------------------------------------------

@dataclass
class Residual:
    degree: int  # degree of the compared cochains (one more than f)
    tuples_checked: int
    nonzero: dict = field(default_factory=dict)  # tensor tuple -> sparse module vector

    def is_zero(self) -> bool:
        return not self.nonzero

    def first(self):
        return next(iter(self.nonzero.items()), None)


def _require_truncation(ctx: EmbeddingContext, n: int):
    free = ctx.free
    if free is not None and free.max_degree < n:
        raise InsufficientTruncation(
            f"perm factor truncated at degree {free.max_degree}, comparison needs {n}")


def generator_tuples(ctx: EmbeddingContext, n: int):
    width = ctx.right_factor.dim
    singles = [g * width + b for g in ctx.generators() for b in range(width)]
    return cartesian(singles, repeat=n)


def residual_forms(f, ctx: EmbeddingContext, n: int, kind: str = None):
    """Yield (tuple, delta(Psi f) - Psi(delta f)) on generator tuples for a form ``f`` of degree n."""
    kind = kind or ctx.kind
    _require_truncation(ctx, n + 1)
    B, N = ctx.right_factor, ctx.right_module
    T, M = ctx.tensor_algebra, ctx.tensor_module
    if kind == "dend":
        tab = dend_tables(B, N)
        psi_f = psi_dend_form(f, ctx, n)
        df = lru_cache(maxsize=None)(lambda r, bs: dendriform_at(f, tab, r, bs))
        psi_df = psi_dend_form(df, ctx, n + 1)
        mul, left, right = T.tables["mul"], M.actions["left"], M.actions["right"]
        lhs = lambda t: hochschild_at(psi_f, mul, left, right, t)
    elif kind == "prelie":
        if n + 1 > MAX_PRELIE_DEGREE:
            raise UnsupportedDegree(f"Psi for pre-Lie cochains is only defined up to degree {MAX_PRELIE_DEGREE}")
        mul, br = B.tables["mul"], B.bracket_table
        nl, nr = N.actions["left"], N.actions["right"]
        psi_f = psi_prelie_form(f, ctx, n)
        df = lru_cache(maxsize=None)(lambda bs: prelie_at(f, mul, br, nl, nr, bs))
        psi_df = psi_prelie_form(df, ctx, n + 1)
        tb, act = T.tables["mul"], M.actions["left"]
        lhs = lambda t: ce_at(psi_f, tb, act, t)
    else:
        raise WrongKind(f"unknown embedding kind {kind!r}")
    for t in generator_tuples(ctx, n + 1):
        yield t, forms.add(lhs(t), psi_df(t), -1)


def chain_map_residual(f, ctx: EmbeddingContext, kind: str = None) -> Residual:
    """delta_total(Psi f) - Psi(delta f) on all tuples whose perm parts are single generators."""
    kind = kind or ctx.kind
    _check_factor(f, ctx, kind)
    res = Residual(f.degree + 1, 0)
    for t, form in residual_forms(form_fn(f), ctx, f.degree, kind):
        res.tuples_checked += 1
        if form:
            res.nonzero[t] = forms.sparse_vector(form)
    return res


# ---- rank and the embedding matrix -------------------------------------------

def domain_space(ctx: EmbeddingContext, n: int):
    a, m = ctx.right_factor.dim, ctx.right_module.module_dim
    return DendSpace(n, a, m) if ctx.kind == "dend" else DenseSpace(n, a, m)


def _psi_universal(ctx: EmbeddingContext, n: int):
    u = domain_space(ctx, n).universal()
    if ctx.kind == "dend":
        return psi_dend_form(u, ctx, n)
    return psi_prelie_form(u, ctx, n)


def _bounded_tuples(ctx: EmbeddingContext, n: int, tuples):
    """Skip tuples whose perm degrees exceed the truncation (Psi vanishes there)."""
    degs = ctx.degrees()
    if degs is None:
        yield from tuples
        return
    cap = ctx.free.max_degree
    width = ctx.right_factor.dim
    for t in tuples:
        if sum(degs[u // width] for u in t) <= cap:
            yield t


def psi_rank(ctx: EmbeddingContext, kind: str = None, n: int = 1):
    """(rank, injective) of Psi on degree-n cochains."""
    if kind is not None and kind != ctx.kind:
        raise WrongKind(f"context holds a {ctx.kind} factor, not {kind}")
    if ctx.kind == "prelie" and n > MAX_PRELIE_DEGREE:
        raise UnsupportedDegree(f"Psi for pre-Lie cochains is only defined up to degree {MAX_PRELIE_DEGREE}")
    dom = domain_space(ctx, n)
    F = _psi_universal(ctx, n)
    rows = []
    all_tuples = cartesian(range(ctx.tensor_algebra.dim), repeat=n)
    for t in _bounded_tuples(ctx, n, all_tuples):
        by_coord: dict = {}
        for (k, p), c in F(t).items():
            by_coord.setdefault(k, {})[p] = c
        for row in by_coord.values():
            dense = [0] * dom.dim
            for p, c in row.items():
                dense[p] = c
            rows.append(dense)
    r = rank_of_vectors(rows, dom.dim)
    return r, r == dom.dim


def embedding_matrix(ctx: EmbeddingContext, n: int) -> Matrix:
    """Psi in degree n as a matrix from factor coordinates to total-complex coordinates.

    Pre-Lie images are read off on increasing tuples.  In degree 3 this is
    exactly Psi on the cochains antisymmetric in their last two arguments,
    which contain every coboundary.
    """
    dom = domain_space(ctx, n)
    T = ctx.tensor_algebra.dim
    W = ctx.tensor_module.module_dim
    dst = DenseSpace(n, T, W) if ctx.kind == "dend" else AltSpace(n, T, W)
    F = _psi_universal(ctx, n)
    rows = [[0] * dom.dim for _ in range(dst.dim)]
    for t in _bounded_tuples(ctx, n, dst.tuples()):
        for (k, p), c in F(t).items():
            rows[dst.coord(t, k)][p] = c
    return Matrix.from_rows(rows, cols=dom.dim)


def embedded_complex(ctx: EmbeddingContext) -> EmbeddedComplex:
    return EmbeddedComplex(ctx.factor_complex(), lambda n: embedding_matrix(ctx, n))
