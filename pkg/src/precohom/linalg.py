"""Exact rational linear algebra.

Everything here works over :class:`fractions.Fraction`; Python ints are accepted
wherever a scalar is expected.  Elimination runs on integer rows (each row is
cleared of denominators first and kept primitive), which keeps the
intermediate numbers small on the sparse integer matrices produced by the
differentials.  Only the final pivot normalisation introduces fractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Scalar = Fraction


class SubspaceNotContained(ValueError):
    """A vector that was supposed to lie in a subspace does not."""


def parse_scalar(text) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (ints are accepted as well)."""
    if isinstance(text, bool):
        raise ValueError(f"not a scalar: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a scalar: {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a scalar: {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(p, q)


def format_scalar(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix of exact scalars."""

    rows: int
    cols: int
    entries: tuple  # flat, length rows * cols

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols required for a matrix with no rows")
            cols = len(rows[0])
        flat = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(Fraction(x) for x in r)
        return cls(len(rows), cols, tuple(flat))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def tolist(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def transpose(self) -> "Matrix":
        return Matrix.from_rows([[self[i, j] for i in range(self.rows)] for j in range(self.cols)],
                                self.rows)

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        nz = [(j, x) for j, x in enumerate(v) if x]
        out = []
        for i in range(self.rows):
            base = i * self.cols
            out.append(Fraction(sum(self.entries[base + j] * x for j, x in nz)))
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        ocols = [[other[i, j] for i in range(other.rows)] for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            nz = [(k, x) for k, x in enumerate(r) if x]
            out.append([sum(x * col[k] for k, x in nz) for col in ocols])
        return Matrix.from_rows(out, other.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of Q^ambient_dim given by its reduced row-echelon basis."""

    ambient_dim: int
    vectors: tuple  # tuple of tuples of Fraction, RREF, pivots increasing
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "SubspaceBasis":
        rows, piv = _rref_rows([list(v) for v in vectors], ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in rows), tuple(piv))

    @classmethod
    def full(cls, n: int) -> "SubspaceBasis":
        return cls.span(Matrix.identity(n).tolist(), n)

    def coordinates(self, v: Sequence) -> list[Fraction] | None:
        """Coordinates of ``v`` in this basis, or None if ``v`` is outside the span."""
        coords = [Fraction(v[p]) for p in self.pivots]
        rebuilt = [Fraction(0)] * self.ambient_dim
        for c, b in zip(coords, self.vectors):
            if c:
                for j, x in enumerate(b):
                    if x:
                        rebuilt[j] += c * x
        if any(Fraction(a) != b for a, b in zip(v, rebuilt)):
            return None
        return coords

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None


# --- elimination -----------------------------------------------------------

def _primitive(row: list) -> list[int]:
    """Scale a rational row to a primitive integer row (same line)."""
    dens = [x.denominator for x in row if isinstance(x, Fraction) and x.denominator != 1]
    m = lcm(*dens) if dens else 1
    ints = [int(x * m) for x in row]
    g = 0
    for x in ints:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def _rref_rows(rows: list[list], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    work = []
    for r in rows:
        if len(r) != ncols:
            raise ValueError("row length does not match column count")
        if any(r):
            work.append(_primitive(r))
    pivots: list[int] = []
    basis: list[list[int]] = []
    # pivot on the first nonzero entry in column order
    for col in range(ncols):
        k = next((i for i, r in enumerate(work) if r[col]), None)
        if k is None:
            continue
        prow = work.pop(k)
        pv = prow[col]
        nzp = [j for j in range(col, ncols) if prow[j]]
        for group in (work, basis):
            for idx, r in enumerate(group):
                e = r[col]
                if not e:
                    continue
                g = gcd(pv, e)
                a, b = pv // g, e // g
                new = [a * x for x in r]
                for j in nzp:
                    new[j] -= b * prow[j]
                group[idx] = _primitive(new) if any(new) else new
        work = [r for r in work if any(r)]
        basis.append(prow)
        pivots.append(col)
    out = []
    for r, p in zip(basis, pivots):
        pv = r[p]
        out.append([Fraction(x, pv) for x in r])
    return out, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form (zero rows kept at the bottom) and pivot columns."""
    rows, piv = _rref_rows(m.tolist(), m.cols)
    rows += [[Fraction(0)] * m.cols for _ in range(m.rows - len(rows))]
    return Matrix.from_rows(rows, m.cols), piv


def rank(m: Matrix) -> int:
    return len(_rref_rows(m.tolist(), m.cols)[1])


def rank_of_vectors(vectors: Iterable[Sequence], ambient_dim: int) -> int:
    return len(_rref_rows([list(v) for v in vectors], ambient_dim)[1])


def kernel_basis(m: Matrix) -> SubspaceBasis:
    rows, piv = _rref_rows(m.tolist(), m.cols)
    pivset = set(piv)
    free = [j for j in range(m.cols) if j not in pivset]
    vecs = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in zip(rows, piv):
            v[p] = -r[f]
        vecs.append(v)
    return SubspaceBasis.span(vecs, m.cols)


def image_basis(m: Matrix) -> SubspaceBasis:
    """Canonical basis of the column space."""
    return SubspaceBasis.span(m.transpose().tolist(), m.rows)


def quotient_dim(sup: SubspaceBasis, sub: SubspaceBasis) -> int:
    if sup.ambient_dim != sub.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")
    for v in sub.vectors:
        if v not in sup:
            raise SubspaceNotContained("subspace is not contained in the larger space")
    return sup.dim - sub.dim


def solve(m: Matrix, rhs: Sequence) -> list[Fraction] | None:
    """One exact solution of m v = rhs, or None when the system is inconsistent."""
    if len(rhs) != m.rows:
        raise ValueError("rhs length must equal the number of rows")
    aug = [m.row(i) + [Fraction(rhs[i])] for i in range(m.rows)]
    rows, piv = _rref_rows(aug, m.cols + 1)
    if piv and piv[-1] == m.cols:
        return None
    v = [Fraction(0)] * m.cols
    for r, p in zip(rows, piv):
        v[p] = r[m.cols]
    return v


def intersect(u: SubspaceBasis, w: SubspaceBasis) -> SubspaceBasis:
    """Intersection of two subspaces (Zassenhaus-free: solve x.U = y.W)."""
    n = u.ambient_dim
    if u.dim == 0 or w.dim == 0:
        return SubspaceBasis.span([], n)
    # columns: coefficients on u vectors then on w vectors
    cols = [list(v) for v in u.vectors] + [[-x for x in v] for v in w.vectors]
    system = Matrix.from_rows([[c[i] for c in cols] for i in range(n)], len(cols))
    ker = kernel_basis(system)
    vecs = []
    for k in ker.vectors:
        v = [Fraction(0)] * n
        for c, b in zip(k[:u.dim], u.vectors):
            if c:
                for j, x in enumerate(b):
                    v[j] += c * x
        vecs.append(v)
    return SubspaceBasis.span(vecs, n)
