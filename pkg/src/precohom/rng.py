"""Seeded randomness shared by the CLI and the property suites.

SplitMix64 is used instead of the stdlib generator so that trial sequences
are reproducible from the documented algorithm alone: coefficients are
``next() % 5 - 2``, uniform on {-2, ..., 2}.
"""
from __future__ import annotations

from fractions import Fraction

MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int = 0):
        self.state = seed & MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next() % n

    def coefficient(self) -> Fraction:
        return Fraction(self.next() % 5 - 2)

    def coefficients(self, n: int) -> list:
        return [self.coefficient() for _ in range(n)]

    def choice(self, seq):
        return seq[self.below(len(seq))]


def random_vector(rng: SplitMix64, dim: int) -> list:
    return rng.coefficients(dim)


def random_cochain(space, rng: SplitMix64):
    """Uniform random cochain of a DenseSpace, DendSpace or AltSpace."""
    return space.cochain(rng.coefficients(space.dim))


def random_in_subspace(sub, rng: SplitMix64) -> list:
    """Random combination of the basis vectors of a SubspaceBasis, in ambient coordinates."""
    out = [Fraction(0)] * sub.ambient_dim
    for v in sub.vectors:
        c = rng.coefficient()
        if c:
            for j, x in enumerate(v):
                if x:
                    out[j] += c * x
    return out
