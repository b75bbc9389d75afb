"""Index bookkeeping maps on the symbol sets C_m = {[1], ..., [m]}."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class IndexOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class FormalIndexSum:
    """A formal combination of symbols [k] (1-based)."""
    terms: tuple  # ((index, coeff), ...)

    @classmethod
    def single(cls, k: int) -> "FormalIndexSum":
        return cls(((k, Fraction(1)),))

    @classmethod
    def full(cls, n: int) -> "FormalIndexSum":
        return cls(tuple((k, Fraction(1)) for k in range(1, n + 1)))

    def indices(self) -> list:
        return [k for k, _ in self.terms]

    def __iter__(self):
        return iter(self.terms)


def _check(m, i, n, r):
    if not (m >= 1 and n >= 1 and 1 <= i <= m):
        raise IndexOutOfRange(f"need 1 <= i <= m, got m={m}, i={i}")
    if not 1 <= r <= m + n - 1:
        raise IndexOutOfRange(f"r={r} outside 1..{m + n - 1}")


def r0_map(m: int, i: int, n: int, r: int) -> int:
    """R0(m, i, n): C_{m+n-1} -> C_m."""
    _check(m, i, n, r)
    if r <= i - 1:
        return r
    if r <= i + n - 1:
        return i
    return r - n + 1


def ri_map(m: int, i: int, n: int, r: int) -> FormalIndexSum:
    """R_i(m, i, n): C_{m+n-1} -> k[C_n]; outer cases give [1] + ... + [n]."""
    _check(m, i, n, r)
    if i <= r <= i + n - 1:
        return FormalIndexSum.single(r - i + 1)
    return FormalIndexSum.full(n)
