"""Axiom checkers for presentations and bimodules.

Every identity is evaluated on all basis tuples and every failing instance is
reported with its residual, so reports double as test fixtures.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian

from .algebra import BimoduleData, StructurePresentation, add_scaled, basis, sub
from .linalg import format_scalar


@dataclass(frozen=True)
class Violation:
    identity: str
    indices: tuple  # 0-based basis indices, in the order the identity names them
    residual: tuple  # sparse (k, coeff) pairs

    def describe(self, names=None) -> str:
        idx = ",".join(str(i + 1) for i in self.indices)
        res = " + ".join(f"{format_scalar(c)}*{names[k] if names else f'e{k + 1}'}"
                         for k, c in self.residual)
        return f"{self.identity} at ({idx}): residual {res}"


@dataclass
class ViolationReport:
    violations: list = field(default_factory=list)

    def __bool__(self):
        return bool(self.violations)

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, identity: str, indices: tuple, residual: dict):
        if residual:
            self.violations.append(Violation(identity, tuple(indices), tuple(sorted(residual.items()))))

    def identities(self) -> set:
        return {v.identity for v in self.violations}

    def at(self, *indices) -> list:
        return [v for v in self.violations if v.indices == tuple(indices)]

    def lines(self, names=None) -> list:
        return [v.describe(names) for v in self.violations]


def _reachable(keys, n) -> list:
    """Sorted basis triples in which some pair of positions carries a nonzero product.

    Every identity checked below vanishes identically outside this set.
    """
    out = set()
    for a, b in keys:
        for x in range(n):
            out.update(((a, b, x), (x, a, b), (a, x, b), (x, b, a), (b, x, a)))
    return sorted(out)


def _rmul(table, vec, k) -> dict:
    """vec * e_k"""
    out: dict = {}
    for i, c in vec:
        t = table.get((i, k))
        if t:
            add_scaled(out, t, c)
    return out


def _lmul(table, i, vec) -> dict:
    """e_i * vec"""
    out: dict = {}
    for k, c in vec:
        t = table.get((i, k))
        if t:
            add_scaled(out, t, c)
    return out


def validate_presentation(p: StructurePresentation) -> ViolationReport:
    """Check the defining identities of ``p.kind`` on every basis triple."""
    rep = ViolationReport()
    n = p.dim
    if p.kind == "dendriform":
        P, S, T = p.tables["prec"], p.tables["succ"], p.total_table
        for i, j, k in _reachable(set(P) | set(S), n):
            pij, sij, tij = P.get((i, j), ()), S.get((i, j), ()), T.get((i, j), ())
            pjk, sjk, tjk = P.get((j, k), ()), S.get((j, k), ()), T.get((j, k), ())
            if pij or tjk:
                rep.add("(x<y)<z = x<(y*z)", (i, j, k), sub(_rmul(P, pij, k), _lmul(P, i, tjk)))
            if sij or pjk:
                rep.add("(x>y)<z = x>(y<z)", (i, j, k), sub(_rmul(P, sij, k), _lmul(S, i, pjk)))
            if tij or sjk:
                rep.add("(x*y)>z = x>(y>z)", (i, j, k), sub(_rmul(S, tij, k), _lmul(S, i, sjk)))
        return rep

    M = p.tables["mul"]
    if p.kind == "lie":
        for i in range(n):
            for j in range(i, n):
                if i == j:
                    rep.add("[x,x] = 0", (i, i), dict(M.get((i, i), ())))
                else:
                    rep.add("[x,y] = -[y,x]", (i, j), add_scaled(dict(M.get((i, j), ())), M.get((j, i), ())))
        for i, j, k in _reachable(M, n):
            mjk, mki, mij = M.get((j, k)), M.get((k, i)), M.get((i, j))
            if not (mjk or mki or mij):
                continue
            r = _lmul(M, i, mjk or ())
            add_scaled(r, _lmul(M, j, mki or ()))
            add_scaled(r, _lmul(M, k, mij or ()))
            rep.add("Jacobi", (i, j, k), r)
        return rep

    for i, j, k in _reachable(M, n):
        mij, mjk, mik, mkj = (M.get(key, ()) for key in ((i, j), (j, k), (i, k), (k, j)))
        if p.kind in ("associative", "perm") and (mij or mjk):
            rep.add("(xy)z = x(yz)", (i, j, k), sub(_rmul(M, mij, k), _lmul(M, i, mjk)))
        if p.kind == "perm" and (mjk or mkj):
            rep.add("x(yz) = x(zy)", (i, j, k), sub(_lmul(M, i, mjk), _lmul(M, i, mkj)))
        if p.kind == "prelie" and (mij or mjk or mik or mkj):
            r = sub(_rmul(M, mij, k), _lmul(M, i, mjk))
            add_scaled(r, _rmul(M, mik, j), -1)
            add_scaled(r, _lmul(M, i, mkj))
            rep.add("(x,y,z) = (x,z,y)", (i, j, k), r)
    return rep


def validate_bimodule(b: BimoduleData) -> ViolationReport:
    """Check the module identities of ``b.kind`` on all (a, b, m) basis tuples.

    Indices in the report are (algebra, algebra, module).
    """
    rep = ViolationReport()
    p = b.over
    e = [basis(i) for i in range(p.dim)]
    ms = [basis(i) for i in range(b.module_dim)]
    kind = p.kind

    def L(name, a, m):
        return b.act(name, a, m)

    def R(name, m, a):
        return b.act(name, m, a)

    for i, j, k in cartesian(range(p.dim), range(p.dim), range(b.module_dim)):
        x, y, m = e[i], e[j], ms[k]
        idx = (i, j, k)
        if kind == "dendriform":
            pr = lambda u, v: p.product("prec", u, v)
            su = lambda u, v: p.product("succ", u, v)
            tot = lambda u, v: p.product("total", u, v)
            lt = lambda a, n: add_scaled(L("left_prec", a, n), L("left_succ", a, n))
            rt = lambda n, a: add_scaled(R("right_prec", n, a), R("right_succ", n, a))
            # m in the third slot
            rep.add("(x<y)<m = x<(y*m)", idx, sub(L("left_prec", pr(x, y), m), L("left_prec", x, lt(y, m))))
            rep.add("(x>y)<m = x>(y<m)", idx, sub(L("left_prec", su(x, y), m), L("left_succ", x, L("left_prec", y, m))))
            rep.add("(x*y)>m = x>(y>m)", idx, sub(L("left_succ", tot(x, y), m), L("left_succ", x, L("left_succ", y, m))))
            # m in the middle slot
            rep.add("(x<m)<y = x<(m*y)", idx, sub(R("right_prec", L("left_prec", x, m), y), L("left_prec", x, rt(m, y))))
            rep.add("(x>m)<y = x>(m<y)", idx, sub(R("right_prec", L("left_succ", x, m), y), L("left_succ", x, R("right_prec", m, y))))
            rep.add("(x*m)>y = x>(m>y)", idx, sub(R("right_succ", lt(x, m), y), L("left_succ", x, R("right_succ", m, y))))
            # m in the first slot
            rep.add("(m<x)<y = m<(x*y)", idx, sub(R("right_prec", R("right_prec", m, x), y), R("right_prec", m, tot(x, y))))
            rep.add("(m>x)<y = m>(x<y)", idx, sub(R("right_prec", R("right_succ", m, x), y), R("right_succ", m, pr(x, y))))
            rep.add("(m*x)>y = m>(x>y)", idx, sub(R("right_succ", rt(m, x), y), R("right_succ", m, su(x, y))))
            continue
        mul = lambda u, v: p.product("mul", u, v)
        if kind == "lie":
            r = sub(L("left", mul(x, y), m), L("left", x, L("left", y, m)))
            add_scaled(r, L("left", y, L("left", x, m)))
            rep.add("[x,y]m = x(ym) - y(xm)", idx, r)
            continue
        if kind in ("associative", "perm"):
            rep.add("(xy)m = x(ym)", idx, sub(L("left", mul(x, y), m), L("left", x, L("left", y, m))))
            rep.add("(xm)y = x(my)", idx, sub(R("right", L("left", x, m), y), L("left", x, R("right", m, y))))
            rep.add("(mx)y = m(xy)", idx, sub(R("right", R("right", m, x), y), R("right", m, mul(x, y))))
        if kind == "perm":
            rep.add("m(xy) = m(yx)", idx, sub(R("right", m, mul(x, y)), R("right", m, mul(y, x))))
            rep.add("x(my) = (xy)m", idx, sub(L("left", x, R("right", m, y)), L("left", mul(x, y), m)))
        if kind == "prelie":
            r = sub(L("left", mul(x, y), m), L("left", x, L("left", y, m)))
            add_scaled(r, R("right", L("left", x, m), y), -1)
            add_scaled(r, L("left", x, R("right", m, y)))
            rep.add("(x,y,m) = (x,m,y)", idx, r)
            r = sub(R("right", R("right", m, x), y), R("right", m, mul(x, y)))
            add_scaled(r, R("right", R("right", m, y), x), -1)
            add_scaled(r, R("right", m, mul(y, x)))
            rep.add("(m,x,y) = (m,y,x)", idx, r)
    return rep
