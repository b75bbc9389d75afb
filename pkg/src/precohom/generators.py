"""Random valid dendriform and pre-Lie (and Perm) algebras, plus single-entry mutants.

Valid samples come from a small pool of hand-checked families (associative
algebras split into one side, two-step nilpotent tables, Novikov algebras
from a derivation, the example families) closed under direct sums and random
integral changes of basis.  Every sample is validated before it is returned.
"""
from __future__ import annotations

from fractions import Fraction

from .algebra import StructurePresentation, add_scaled
from .linalg import Matrix, solve
from .rng import SplitMix64


# ---- seeds -------------------------------------------------------------------

def associative_seeds() -> list:
    """Small associative algebras as {"mul": table} with their dimension."""
    return [
        (1, {(0, 0): {0: 1}}),                                             # the field
        (1, {}),                                                           # zero product
        (2, {(0, 0): {1: 1}}),                                             # t, t^2 with t^3 = 0
        (2, {(0, 0): {0: 1}, (1, 1): {1: 1}}),                             # k x k
        (2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}),             # k[t]/t^2
        (2, {(0, 0): {0: 1}, (0, 1): {1: 1}}),                             # left unit only
        (3, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}}),  # upper triangular 2x2
        (3, {(0, 0): {1: 1}, (0, 1): {2: 1}, (1, 0): {2: 1}}),             # t, t^2, t^3 with t^4 = 0
    ]


def example_dendriform(n: int) -> StructurePresentation:
    """e_i < e_1 = e_i for i >= 2, e_1 > e_1 = e_1, other products zero."""
    prec = {(i, 0): {i: 1} for i in range(1, n)}
    return StructurePresentation.build("dendriform", n, {"prec": prec, "succ": {(0, 0): {0: 1}}})


def example_prelie() -> StructurePresentation:
    """e_1 . e_2 = e_1, other products zero."""
    return StructurePresentation.build("prelie", 2, {"mul": {(0, 1): {0: 1}}})


def _nilpotent(rng: SplitMix64, u: int, w: int) -> dict:
    """Random products U x U -> W on U (+) W (indices of W follow U)."""
    t = {}
    for i in range(u):
        for j in range(u):
            v = {u + k: c for k, c in enumerate(rng.coefficients(w)) if c}
            if v:
                t[(i, j)] = v
    return t


def _novikov(rng: SplitMix64) -> tuple:
    """a . b = D(a) b on span{t, t^2, t^3} (t^4 = 0) with D the scaled Euler derivation."""
    s = rng.below(2) + 1
    # D(t^k) = s k t^k, so t^i . t^j = s i t^(i+j)
    t = {}
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            if i + j <= 3:
                t[(i - 1, j - 1)] = {i + j - 1: s * i}
    return 3, t


def dendriform_seed(rng: SplitMix64) -> StructurePresentation:
    pick = rng.below(5)
    if pick == 0:
        return example_dendriform(2 + rng.below(2))
    if pick in (1, 2):
        d, mul = rng.choice(associative_seeds())
        zero = {}
        tables = {"prec": mul, "succ": zero} if pick == 1 else {"prec": zero, "succ": mul}
        return StructurePresentation.build("dendriform", d, tables)
    if pick == 3:
        u, w = 1 + rng.below(2), 1
        return StructurePresentation.build("dendriform", u + w,
                                           {"prec": _nilpotent(rng, u, w), "succ": _nilpotent(rng, u, w)})
    return StructurePresentation.build("dendriform", 1, {})


def prelie_seed(rng: SplitMix64) -> StructurePresentation:
    pick = rng.below(5)
    if pick == 0:
        return example_prelie()
    if pick == 1:
        d, mul = rng.choice(associative_seeds())
        return StructurePresentation.build("prelie", d, {"mul": mul})
    if pick == 2:
        u, w = 1 + rng.below(2), 1
        return StructurePresentation.build("prelie", u + w, {"mul": _nilpotent(rng, u, w)})
    if pick == 3:
        d, mul = _novikov(rng)
        return StructurePresentation.build("prelie", d, {"mul": mul})
    return StructurePresentation.build("prelie", 1, {})


def perm_seed(rng: SplitMix64) -> StructurePresentation:
    """Commutative associative seeds, which are automatically Perm."""
    commutative = [s for s in associative_seeds() if all(
        s[1].get((j, i)) == v for (i, j), v in s[1].items())]
    d, mul = rng.choice(commutative)
    return StructurePresentation.build("perm", d, {"mul": mul})


# ---- closure operations --------------------------------------------------------

def direct_sum(p: StructurePresentation, q: StructurePresentation) -> StructurePresentation:
    if p.kind != q.kind:
        raise ValueError("direct sum needs presentations of the same kind")
    shift = p.dim
    tables = {}
    for op in p.ops:
        t = {key: dict(v) for key, v in p.tables[op].items()}
        for (i, j), terms in q.tables[op].items():
            t[(i + shift, j + shift)] = {k + shift: c for k, c in terms}
        tables[op] = t
    return StructurePresentation.build(p.kind, p.dim + q.dim, tables)


def random_unimodular(rng: SplitMix64, n: int) -> list:
    """Integer matrix of determinant +-1 from a permutation and elementary row additions."""
    perm = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    g = [[Fraction(int(perm[i] == j)) for j in range(n)] for i in range(n)]
    for _ in range(n):
        if n < 2:
            break
        i, j = rng.below(n), rng.below(n)
        if i != j:
            c = 1 if rng.below(2) else -1
            g[i] = [a + c * b for a, b in zip(g[i], g[j])]
    return g


def change_basis(p: StructurePresentation, g: list) -> StructurePresentation:
    """Rewrite ``p`` in the basis f_i = sum_j g[j][i] e_j."""
    n = p.dim
    G = Matrix.from_rows(g, cols=n)
    cols = [{j: g[j][i] for j in range(n) if g[j][i]} for i in range(n)]
    tables = {}
    for op in p.ops:
        t = {}
        for i in range(n):
            for j in range(n):
                v = p.product(op, cols[i], cols[j])
                if not v:
                    continue
                rhs = [v.get(k, 0) for k in range(n)]
                coords = solve(G, rhs)
                t[(i, j)] = {k: c for k, c in enumerate(coords) if c}
        tables[op] = t
    return StructurePresentation.build(p.kind, n, tables, p.basis_names)


_SEEDS = {"dendriform": dendriform_seed, "prelie": prelie_seed, "perm": perm_seed}


def random_valid(kind: str, rng: SplitMix64, max_dim: int = 4) -> StructurePresentation:
    """A validated presentation of ``kind`` drawn from the seed pool."""
    seed = _SEEDS[kind]
    p = seed(rng)
    if rng.below(3) == 0:
        q = seed(rng)
        if p.dim + q.dim <= max_dim:
            p = direct_sum(p, q)
    if rng.below(2):
        p = change_basis(p, random_unimodular(rng, p.dim))
    return p.mark_validated()


def random_tables(kind: str, rng: SplitMix64, dim: int, density: int = 3) -> StructurePresentation:
    """Unconstrained random tables; each entry is nonzero with probability 1/density."""
    tables = {}
    for op in StructurePresentation.build(kind, dim, {}).ops:
        t = {}
        for i in range(dim):
            for j in range(dim):
                for k in range(dim):
                    if rng.below(density) == 0:
                        c = rng.coefficient()
                        if c:
                            add_scaled(t.setdefault((i, j), {}), {k: c})
        tables[op] = t
    return StructurePresentation.build(kind, dim, tables)


def mutate(p: StructurePresentation, rng: SplitMix64):
    """Add 1 to one uniformly chosen structure constant; returns (mutant, (op, i, j, k))."""
    op = rng.choice(p.ops)
    i, j, k = rng.below(p.dim), rng.below(p.dim), rng.below(p.dim)
    return p.with_entry(op, i, j, k, 1), (op, i, j, k)
