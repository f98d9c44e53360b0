"""Bit-packed linear algebra over GF(2).

Vectors of Z_2^n are packed into Python ints: coordinate j is bit j, so the
integer i doubles as the row/column index i of the 2^n x 2^n Hadamard matrix.
Subspaces are kept in reduced row echelon form with the highest set bit of
each row as its pivot and rows sorted by descending pivot, which makes the
representation unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatch, GuardExceeded

MAX_SPAN_DIM = 30
DEFAULT_ENUM_BUDGET = 10**7


@dataclass(frozen=True)
class Gf2Vector:
    bits: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"ambient dimension must be >= 1, got {self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits {self.bits:#x} do not fit in Z_2^{self.n}")

    def __xor__(self, other: Gf2Vector) -> Gf2Vector:
        _check_same(self.n, other.n)
        return Gf2Vector(self.bits ^ other.bits, self.n)

    def __int__(self) -> int:
        return self.bits


def _check_same(n1: int, n2: int) -> None:
    if n1 != n2:
        raise DimensionMismatch(f"ambient dimensions differ: {n1} != {n2}")


def parity(x: int) -> int:
    return x.bit_count() & 1


def dot(a: Gf2Vector, b: Gf2Vector) -> int:
    """GF(2) inner product: parity of popcount(a & b)."""
    _check_same(a.n, b.n)
    return parity(a.bits & b.bits)


def _reduce_into(rows: dict[int, int], v: int) -> None:
    # rows maps pivot -> row and is kept fully reduced
    for piv in sorted(rows, reverse=True):
        if (v >> piv) & 1:
            v ^= rows[piv]
    if not v:
        return
    piv = v.bit_length() - 1
    for q, r in rows.items():
        if (r >> piv) & 1:
            rows[q] = r ^ v
    rows[piv] = v


def rref(words: Iterable[int]) -> tuple[int, ...]:
    """Canonical RREF rows (descending pivots) of the span of ``words``."""
    rows: dict[int, int] = {}
    for w in words:
        _reduce_into(rows, w)
    return tuple(rows[p] for p in sorted(rows, reverse=True))


def rank(words: Iterable[int]) -> int:
    return len(rref(words))


@dataclass(frozen=True)
class Subspace:
    """A subspace of Z_2^n stored by its canonical RREF basis.

    Equality of two instances is equality of the subspaces as sets.
    """

    n: int
    basis: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"ambient dimension must be >= 1, got {self.n}")
        if rref(self.basis) != tuple(self.basis):
            raise ValueError("basis is not in canonical RREF form; use canonicalize()")
        if self.basis and self.basis[0] >> self.n:
            raise ValueError(f"basis does not fit in Z_2^{self.n}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(r.bit_length() - 1 for r in self.basis)

    def vectors(self) -> list[Gf2Vector]:
        return [Gf2Vector(r, self.n) for r in self.basis]

    def __contains__(self, v) -> bool:
        v = int(v)
        for r in self.basis:
            if (v >> (r.bit_length() - 1)) & 1:
                v ^= r
        return v == 0

    def __repr__(self) -> str:
        rows = ", ".join(format(r, f"0{self.n}b") for r in self.basis)
        return f"Subspace(n={self.n}, [{rows}])"


def zero_subspace(n: int) -> Subspace:
    return Subspace(n, ())


def full_space(n: int) -> Subspace:
    return Subspace(n, tuple(1 << j for j in reversed(range(n))))


def canonicalize(vectors: Iterable, n: int | None = None) -> Subspace:
    """Return the canonical subspace spanned by ``vectors``.

    Accepts :class:`Gf2Vector` items, or plain ints when ``n`` is given.
    """
    words = []
    for v in vectors:
        if isinstance(v, Gf2Vector):
            if n is None:
                n = v.n
            _check_same(n, v.n)
            words.append(v.bits)
        else:
            if n is None:
                raise ValueError("n is required when passing plain ints")
            if v < 0 or v >> n:
                raise ValueError(f"{v:#x} does not fit in Z_2^{n}")
            words.append(int(v))
    if n is None:
        raise ValueError("n is required for an empty vector list")
    return _trusted(n, rref(words))


def span_elements(V: Subspace) -> list[int]:
    """All 2^dim elements of V as ints, each exactly once."""
    if V.dim > MAX_SPAN_DIM:
        raise GuardExceeded("span dimension", V.dim, MAX_SPAN_DIM)
    elems = [0]
    for r in V.basis:
        elems += [e ^ r for e in elems]
    return elems


def orthogonal_complement(V: Subspace) -> Subspace:
    n = V.n
    pivots = V.pivots
    pivot_set = set(pivots)
    out = []
    for f in range(n):
        if f in pivot_set:
            continue
        w = 1 << f
        for r, p in zip(V.basis, pivots):
            if (r >> f) & 1:
                w |= 1 << p
        out.append(w)
    return _trusted(n, rref(out))


def sum_space(U: Subspace, V: Subspace) -> Subspace:
    _check_same(U.n, V.n)
    return _trusted(U.n, rref(U.basis + V.basis))


def intersect(U: Subspace, V: Subspace) -> Subspace:
    """U ∩ V, computed as the complement of U^⊥ + V^⊥."""
    _check_same(U.n, V.n)
    return orthogonal_complement(sum_space(orthogonal_complement(U), orthogonal_complement(V)))


def colex_combinations(n: int, d: int) -> list[tuple[int, ...]]:
    return sorted(combinations(range(n), d), key=lambda c: c[::-1])


def schubert_cell(n: int, pivots: Sequence[int]) -> Iterator[Subspace]:
    """Subspaces whose RREF pivot set is ``pivots``, free entries in integer order."""
    desc = sorted(pivots, reverse=True)
    pivot_set = set(desc)
    free = [(i, c) for i, p in enumerate(desc) for c in range(p) if c not in pivot_set]
    base = [1 << p for p in desc]
    for m in range(1 << len(free)):
        rows = base[:]
        for b, (i, c) in enumerate(free):
            if (m >> b) & 1:
                rows[i] |= 1 << c
        yield _trusted(n, tuple(rows))


def _trusted(n: int, basis: tuple[int, ...]) -> Subspace:
    # caller guarantees canonical RREF; skips the validation round trip
    V = object.__new__(Subspace)
    object.__setattr__(V, "n", n)
    object.__setattr__(V, "basis", basis)
    return V


def enumerate_grassmannian(n: int, d: int, budget: int = DEFAULT_ENUM_BUDGET) -> Iterator[Subspace]:
    """Yield every d-dimensional subspace of Z_2^n exactly once.

    Schubert cells are visited in colex order of their pivot columns.
    Raises GuardExceeded before yielding anything if the Grassmannian has
    more than ``budget`` elements.
    """
    from .counting import gaussian_binomial

    if not 0 <= d <= n:
        raise ValueError(f"need 0 <= d <= n, got d={d}, n={n}")
    size = gaussian_binomial(n, d)
    if size > budget:
        raise GuardExceeded(f"|Gr({n},{d})|", size, budget)
    return _enumerate(n, d)


def _enumerate(n: int, d: int) -> Iterator[Subspace]:
    for piv in colex_combinations(n, d):
        yield from schubert_cell(n, piv)
