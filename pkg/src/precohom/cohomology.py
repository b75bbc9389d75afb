"""Differential matrices, cohomology dimensions, coboundary tests and
long-exact-sequence bookkeeping for the five complexes."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable

from .algebra import BimoduleData, StructurePresentation, WrongKind
from .complexes import forms
from .complexes.ce import ce_at
from .complexes.cochains import (AltSpace, AlternatingCochain, Cochain, DendCochain, DendSpace,
                                 DenseSpace)
from .complexes.dendriform import _tables as dend_tables, dendriform_at
from .complexes.hochschild import ClosureFailure, ConstraintViolation, hochschild_at, perm_subspace
from .complexes.prelie import ansatz_subspace, prelie_at
from .linalg import (Matrix, SubspaceBasis, image_basis, intersect, kernel_basis, quotient_dim,
                     rank_of_vectors, solve)

COMPLEX_KINDS = ("hochschild", "perm", "dendriform", "prelie", "ce")

_ALGEBRA_KINDS = {
    "hochschild": ("associative", "perm"),
    "perm": ("perm",),
    "dendriform": ("dendriform",),
    "prelie": ("prelie",),
    "ce": ("lie",),
}


class NotACocycle(ValueError):
    pass


class NotASubcomplex(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class ComplexHandle:
    kind: str
    algebra: StructurePresentation
    module: BimoduleData
    subspace: str = "full"  # "ansatz" is allowed for the pre-Lie complex only
    check: bool = True  # validate algebra and module on construction

    def __post_init__(self):
        if self.kind not in COMPLEX_KINDS:
            raise WrongKind(f"unknown complex kind {self.kind!r}")
        if self.algebra.kind not in _ALGEBRA_KINDS[self.kind]:
            raise WrongKind(f"{self.kind} complex cannot use a {self.algebra.kind} presentation")
        if self.module.over.kind != self.algebra.kind:
            raise WrongKind("module kind does not match the algebra")
        if self.subspace not in ("full", "ansatz"):
            raise ValueError(f"unknown subspace {self.subspace!r}")
        if self.subspace == "ansatz" and self.kind != "prelie":
            raise ValueError("the equal-argument ansatz applies to the pre-Lie complex only")
        if self.check:
            if not self.algebra.validated:
                self.algebra.mark_validated()
            if not self.module.validated:
                self.module.mark_validated()

    @property
    def min_degree(self) -> int:
        return 0 if self.kind in ("hochschild", "ce") else 1

    def space(self, n: int):
        a, m = self.algebra.dim, self.module.module_dim
        if self.kind == "dendriform":
            return DendSpace(n, a, m)
        if self.kind == "ce":
            return AltSpace(n, a, m)
        return DenseSpace(n, a, m)

    @cached_property
    def _evaluator(self) -> Callable:
        alg, mod = self.algebra, self.module
        if self.kind in ("hochschild", "perm"):
            mul, left, right = alg.tables["mul"], mod.actions["left"], mod.actions["right"]
            return lambda f, t: hochschild_at(f, mul, left, right, t)
        if self.kind == "dendriform":
            T = dend_tables(alg, mod)
            return lambda f, t: dendriform_at(f, T, t[0], t[1])
        if self.kind == "prelie":
            mul, br = alg.tables["mul"], alg.bracket_table
            left, right = mod.actions["left"], mod.actions["right"]
            return lambda f, t: prelie_at(f, mul, br, left, right, t)
        br, act = alg.tables["mul"], mod.actions["left"]
        return lambda f, t: ce_at(f, br, act, t)

    def evaluate(self, f, t) -> dict:
        """(delta f) at output position ``t`` (``(r, args)`` for dendriform)."""
        return self._evaluator(f, t)

    @cached_property
    def _bases(self) -> dict:
        return {}

    def basis(self, n: int):
        """Canonical basis of the constrained cochain space, or None if unconstrained."""
        if self.kind != "perm":
            return None
        if n not in self._bases:
            self._bases[n] = perm_subspace(self.algebra, self.module, n)
        return self._bases[n]

    def cochain_dim(self, n: int) -> int:
        if n < self.min_degree:
            return 0
        b = self.basis(n)
        return b.dim if b is not None else self.space(n).dim

    def wrap(self, n: int, vector):
        """Cochain object from full-space coordinates."""
        return self.space(n).cochain(vector)


def full_differential(c: ComplexHandle, n: int, columns=None) -> Matrix:
    """Matrix of delta: C^n -> C^{n+1} in full coordinates.

    ``columns`` optionally restricts the domain to the span of the given
    full-coordinate vectors (one matrix column per vector).
    """
    src, dst = c.space(n), c.space(n + 1)
    if columns is None:
        f, ncols = src.universal(), src.dim
    else:
        f, ncols = src.restricted(columns), len(columns)
    rows = [[0] * ncols for _ in range(dst.dim)]
    for t in dst.tuples():
        form = c.evaluate(f, t)
        for (k, p), v in form.items():
            rows[dst.coord(t, k)][p] = v
    return Matrix.from_rows(rows, cols=ncols)


def differential_matrix(c: ComplexHandle, n: int) -> Matrix:
    """delta: C^n -> C^{n+1} in the canonical coordinates of each cochain space."""
    if n < c.min_degree:
        return Matrix.zeros(c.cochain_dim(n + 1), 0)
    dom = c.basis(n)
    if dom is None:
        return full_differential(c, n)
    cod = c.basis(n + 1)
    full = full_differential(c, n, columns=list(dom.vectors))
    cols = full.transpose().tolist()
    out = []
    for j, col in enumerate(cols):
        coords = cod.coordinates(col)
        if coords is None:
            raise ClosureFailure(f"delta of basis cochain {j} in degree {n} leaves C_perm")
        out.append(coords)
    return Matrix.from_rows(out, cols=cod.dim).transpose() if out else Matrix.zeros(cod.dim, 0)


@dataclass
class DegreeReport:
    degree: int
    dim_C: int
    dim_Z: int
    dim_B: int
    dim_H: int
    representatives: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"degree": self.degree, "C": self.dim_C, "Z": self.dim_Z, "B": self.dim_B, "H": self.dim_H}


@dataclass
class CohomologyReport:
    kind: str
    subspace: str
    degrees: dict

    def __getitem__(self, n) -> DegreeReport:
        return self.degrees[n]

    def lines(self) -> list:
        return [f"H^{d.degree}: dim C={d.dim_C} Z={d.dim_Z} B={d.dim_B} H={d.dim_H}"
                for d in self.degrees.values()]


def _complement_reps(z: SubspaceBasis, b: SubspaceBasis) -> list:
    reps, acc = [], [list(v) for v in b.vectors]
    have = len(acc)
    for v in z.vectors:
        if rank_of_vectors(acc + [list(v)], z.ambient_dim) > have:
            acc.append(list(v))
            have += 1
            reps.append(tuple(v))
    return reps


def cocycles(c: ComplexHandle, n: int) -> SubspaceBasis:
    return kernel_basis(differential_matrix(c, n))


def coboundaries(c: ComplexHandle, n: int) -> SubspaceBasis:
    if n - 1 < c.min_degree:
        return SubspaceBasis.span([], c.cochain_dim(n))
    return image_basis(differential_matrix(c, n - 1))


def cohomology_report(c: ComplexHandle, degrees, representatives: bool = False) -> CohomologyReport:
    out = {}
    for n in degrees:
        if n < c.min_degree:
            out[n] = DegreeReport(n, 0, 0, 0, 0)
            continue
        z, b = cocycles(c, n), coboundaries(c, n)
        dim_c = c.cochain_dim(n)
        if c.subspace == "ansatz":
            s = ansatz_subspace(n, c.algebra.dim, c.module.module_dim)
            z, b = intersect(z, s), intersect(b, s)
            dim_c = s.dim
        h = quotient_dim(z, b)
        reps = _complement_reps(z, b) if representatives else []
        out[n] = DegreeReport(n, dim_c, z.dim, b.dim, h, reps)
    return CohomologyReport(c.kind, c.subspace, out)


def _coords(c: ComplexHandle, z) -> list:
    vec = list(z.vector())
    b = c.basis(z.degree)
    if b is None:
        return vec
    coords = b.coordinates(vec)
    if coords is None:
        raise ConstraintViolation("cochain is not in the constrained space")
    return coords


def is_coboundary(c: ComplexHandle, z):
    """A cochain g with delta g = z, or None when z is not a coboundary.

    Below the first degree of the complex only z = 0 is a coboundary; the zero
    preimage is then returned as a degree-0 cochain of the underlying shape.
    """
    n = z.degree
    coords = _coords(c, z)
    d = differential_matrix(c, n)
    if any(d.apply(coords)):
        raise NotACocycle(f"delta z is nonzero in degree {n + 1}")
    if n - 1 < c.min_degree:
        if any(coords):
            return None
        return Cochain(0, c.algebra.dim, c.module.module_dim, (Fraction(0),) * c.module.module_dim)
    g = solve(differential_matrix(c, n - 1), coords)
    if g is None:
        return None
    b = c.basis(n - 1)
    if b is not None:
        full = [Fraction(0)] * c.space(n - 1).dim
        for coef, v in zip(g, b.vectors):
            for j, x in enumerate(v):
                full[j] += coef * x
        g = full
    return c.wrap(n - 1, g)


# ---- long exact sequence ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class EmbeddedComplex:
    """A complex mapped into ``total`` degreewise by ``embed(n)`` (full coordinates)."""
    source: ComplexHandle
    embed: Callable  # n -> Matrix of shape (total C^n dim, source C^n dim)


@dataclass
class LESReport:
    degrees: list
    h_sub: dict
    h_total: dict
    h_quotient: dict
    injective: dict
    ranks: dict  # (map, n) -> measured rank, map in {"i", "p", "d"}
    feasible: bool
    notes: list = field(default_factory=list)

    def lines(self) -> list:
        out = [f"degree {n}: H_sub={self.h_sub[n]} H_total={self.h_total[n]} H_Q={self.h_quotient[n]}"
               for n in self.degrees]
        out.append("feasible" if self.feasible else "infeasible: " + "; ".join(self.notes))
        return out


def _image_subspaces(sub, total, lo, hi):
    spaces, injective = {}, {}
    for n in range(lo, hi + 2):
        dim_total = total.space(n).dim
        if n < sub.source.min_degree:
            spaces[n] = SubspaceBasis.span([], dim_total)
            injective[n] = True
            continue
        m = sub.embed(n)
        spaces[n] = image_basis(m)
        injective[n] = spaces[n].dim == m.cols
    return spaces, injective


def _reduce(v, s: SubspaceBasis):
    """v minus its component along s at the pivot coordinates."""
    w = list(v)
    for p, b in zip(s.pivots, s.vectors):
        c = w[p]
        if c:
            for j, x in enumerate(b):
                if x:
                    w[j] -= c * x
    return w


def les_consistency(sub: EmbeddedComplex, total: ComplexHandle, degrees) -> LESReport:
    """Rank bookkeeping for 0 -> S -> T -> T/S -> 0 with S the image of ``sub``.

    The window always starts at the first degree of ``total`` so that the
    sequence begins with zeros.
    """
    if total.basis(0) is not None:
        raise WrongKind("the total complex must be unconstrained")
    degrees = list(degrees)
    lo, hi = total.min_degree, max(degrees)
    S, injective = _image_subspaces(sub, total, lo, hi)
    D = {n: full_differential(total, n) for n in range(lo, hi + 1)}
    for n in range(lo, hi + 1):
        for j, v in enumerate(S[n].vectors):
            if D[n].apply(v) not in S[n + 1]:
                raise NotASubcomplex(f"delta of embedded basis vector {j} leaves the image in degree {n + 1}")

    def restrict(n):
        cols = [S[n + 1].coordinates(D[n].apply(v)) for v in S[n].vectors]
        return cols

    comp = {}
    for n in range(lo, hi + 2):
        piv = set(S[n].pivots)
        comp[n] = [j for j in range(total.space(n).dim) if j not in piv]

    def project(n, v):
        w = _reduce(v, S[n])
        return [w[j] for j in comp[n]]

    h_s, h_t, h_q, ranks = {}, {}, {}, {}
    zs, bs, zt, bt, zq, bq = {}, {}, {}, {}, {}, {}
    for n in range(lo, hi + 1):
        # sub (in full coordinates of total)
        cols = restrict(n)
        dS = Matrix.from_rows(cols, cols=S[n + 1].dim).transpose() if cols else Matrix.zeros(S[n + 1].dim, 0)
        ker = kernel_basis(dS)
        zs[n] = [_combine(k, S[n].vectors, total.space(n).dim) for k in ker.vectors]
        bs[n] = [D[n - 1].apply(v) for v in S[n - 1].vectors] if n > lo else []
        h_s[n] = ker.dim - rank_of_vectors(bs[n], total.space(n).dim)
        # total
        ztn = kernel_basis(D[n])
        zt[n] = list(ztn.vectors)
        bt[n] = list(image_basis(D[n - 1]).vectors) if n > lo else []
        h_t[n] = quotient_dim(ztn, SubspaceBasis.span(bt[n], total.space(n).dim))
        # quotient
        qcols = []
        for j in comp[n]:
            e = [0] * total.space(n).dim
            e[j] = 1
            qcols.append(project(n + 1, D[n].apply(e)))
        dQ = Matrix.from_rows(qcols, cols=len(comp[n + 1])).transpose() if qcols else Matrix.zeros(len(comp[n + 1]), 0)
        kq = kernel_basis(dQ)
        zq[n] = list(kq.vectors)
        if n > lo:
            prev = []
            for j in comp[n - 1]:
                e = [0] * total.space(n - 1).dim
                e[j] = 1
                prev.append(project(n, D[n - 1].apply(e)))
            bq[n] = prev
        else:
            bq[n] = []
        h_q[n] = kq.dim - rank_of_vectors(bq[n], len(comp[n]))
        # measured ranks of i* and p*
        dim_t = total.space(n).dim
        rb = rank_of_vectors(bt[n], dim_t)
        ranks[("i", n)] = rank_of_vectors(bt[n] + zs[n], dim_t) - rb
        rbq = rank_of_vectors(bq[n], len(comp[n]))
        ranks[("p", n)] = rank_of_vectors(bq[n] + [project(n, v) for v in zt[n]], len(comp[n])) - rbq

    # exactness fixes every rank from the bottom: rho_i = v_i - rho_{i-1}
    notes, feasible, prev = [], True, 0
    seq = []
    for n in range(lo, hi + 1):
        seq += [("i", n, h_s[n]), ("p", n, h_t[n]), ("d", n, h_q[n])]
    nxt_dims = [v for _, _, v in seq[1:]] + [None]
    for (name, n, v), target in zip(seq, nxt_dims):
        rho = v - prev
        ranks.setdefault((name, n), rho)
        if rho < 0 or (target is not None and rho > target):
            feasible = False
            notes.append(f"rank of {name} in degree {n} would be {rho}")
        if name in ("i", "p") and ranks[(name, n)] != rho:
            feasible = False
            notes.append(f"measured rank of {name} in degree {n} is {ranks[(name, n)]}, exactness needs {rho}")
        if name == "d":
            ranks[(name, n)] = rho
        prev = rho
    return LESReport(degrees, {n: h_s[n] for n in degrees}, {n: h_t[n] for n in degrees},
                     {n: h_q[n] for n in degrees}, {n: injective[n] for n in degrees}, ranks,
                     feasible, notes)


def _combine(coeffs, vectors, dim):
    out = [Fraction(0)] * dim
    for c, v in zip(coeffs, vectors):
        if c:
            for j, x in enumerate(v):
                if x:
                    out[j] += c * x
    return out
