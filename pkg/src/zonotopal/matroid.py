"""The ordered matroid realised by a list of rational vectors.

Indices are 1-based throughout, matching the labels x_1..x_N; a basis is a
strictly increasing tuple of indices.  Loops (zero vectors) are allowed.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from zonotopal.linalg import ContractError, DimensionError, Matrix, determinant, rank, solve


class VectorList:
    """Ordered list of N vectors in Q^r; the order is part of its identity."""

    __slots__ = ("r", "vectors", "_hash")

    def __init__(self, vectors: Iterable[Sequence], r: int | None = None):
        vecs = tuple(tuple(Fraction(c) for c in v) for v in vectors)
        if r is None:
            if not vecs:
                raise DimensionError("dimension required for an empty list")
            r = len(vecs[0])
        for v in vecs:
            if len(v) != r:
                raise DimensionError(f"vector {v} does not have length {r}")
        self.r = r
        self.vectors = vecs
        self._hash = hash((r, vecs))

    @property
    def N(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def vector(self, i: int) -> tuple:
        """Vector x_i (1-based)."""
        if not 1 <= i <= len(self.vectors):
            raise IndexError(f"index {i} out of range 1..{len(self.vectors)}")
        return self.vectors[i - 1]

    def select(self, indices: Iterable[int]) -> list[tuple]:
        return [self.vectors[i - 1] for i in indices]

    def sublist(self, indices: Iterable[int]) -> "VectorList":
        """The sublist at the given positions, in list order."""
        return VectorList(self.select(sorted(indices)), self.r)

    def matrix(self, indices: Iterable[int] | None = None) -> Matrix:
        cols = self.vectors if indices is None else self.select(indices)
        return Matrix.from_columns(cols, nrows=self.r)

    def __eq__(self, other):
        return isinstance(other, VectorList) and self.r == other.r and self.vectors == other.vectors

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"VectorList(r={self.r}, {[[str(c) for c in v] for v in self.vectors]})"


def _cols(X: VectorList, S) -> list[list[Fraction]]:
    # rows of the matrix whose columns are the selected vectors, as rows of vectors
    return [list(v) for v in X.select(sorted(S))]


@lru_cache(maxsize=1 << 16)
def _rank_cached(X: VectorList, S: tuple) -> int:
    if not S or X.r == 0:
        return 0
    return rank(_cols(X, S))


def rank_of(X: VectorList, S: Iterable[int] = None) -> int:
    """Rank of the vectors at positions S (all of X when S is None)."""
    if S is None:
        S = range(1, X.N + 1)
    return _rank_cached(X, tuple(sorted(set(S))))


def closure(X: VectorList, S: Iterable[int]) -> frozenset[int]:
    S = frozenset(S)
    k = rank_of(X, S)
    return frozenset(i for i in range(1, X.N + 1) if i in S or rank_of(X, S | {i}) == k)


def is_spanning(X: VectorList) -> bool:
    return rank_of(X) == X.r


def loops(X: VectorList) -> frozenset[int]:
    return frozenset(i for i, v in enumerate(X.vectors, 1) if not any(v))


@lru_cache(maxsize=4096)
def bases(X: VectorList) -> tuple[tuple[int, ...], ...]:
    """All bases, as index tuples in lexicographic order."""
    if not is_spanning(X):
        raise ContractError("the vectors do not span the ambient space")
    return tuple(B for B in combinations(range(1, X.N + 1), X.r) if basis_det(X, B) != 0)


@lru_cache(maxsize=1 << 16)
def basis_det(X: VectorList, B: tuple) -> Fraction:
    if X.r == 0:
        return Fraction(1)
    return determinant(X.matrix(B))


def check_basis(X: VectorList, B: Sequence[int]) -> tuple[int, ...]:
    B = tuple(B)
    if (len(B) != X.r or list(B) != sorted(set(B))
            or not all(1 <= i <= X.N for i in B) or basis_det(X, B) == 0):
        raise ContractError(f"{B} is not a basis of the list")
    return B


def is_coloop(X: VectorList, i: int) -> bool:
    return rank_of(X, set(range(1, X.N + 1)) - {i}) < rank_of(X)


def is_loop(X: VectorList, i: int) -> bool:
    return not any(X.vector(i))


class Flat(NamedTuple):
    indices: frozenset
    rank: int
    corank_one: bool


@lru_cache(maxsize=1024)
def flats(X: VectorList) -> tuple[Flat, ...]:
    """All flats, by rank then by sorted index tuple."""
    total = rank_of(X)
    level = {closure(X, ())}
    found = set(level)
    for _ in range(total):
        nxt = set()
        for F in level:
            for i in range(1, X.N + 1):
                if i not in F:
                    nxt.add(closure(X, F | {i}))
        found |= nxt
        level = nxt
    out = [Flat(F, rank_of(X, F), rank_of(X, F) == total - 1) for F in found]
    out.sort(key=lambda f: (f.rank, tuple(sorted(f.indices))))
    return tuple(out)


def cocircuits(X: VectorList, Bp: Iterable[Sequence[int]] | None = None) -> list[frozenset]:
    """Inclusion-minimal sets meeting every basis of ``Bp`` (all bases by default).

    Ordered by size, then lexicographically.
    """
    Bp = bases(X) if Bp is None else [tuple(B) for B in Bp]
    if not Bp:
        raise ContractError("cocircuits of an empty set of bases")
    return [frozenset(C) for C in _minimal_hitting_sets(X.N, tuple(sorted(set(Bp))))]


@lru_cache(maxsize=4096)
def _minimal_hitting_sets(N: int, family: tuple) -> tuple:
    masks = [sum(1 << (i - 1) for i in B) for B in family]
    if any(m == 0 for m in masks):
        return ()

    def hits(c):
        return all(c & m for m in masks)

    found = []
    for size in range(1, N + 1):
        for combo in combinations(range(1, N + 1), size):
            c = sum(1 << (i - 1) for i in combo)
            if hits(c) and not any(hits(c & ~(1 << (i - 1))) for i in combo):
                found.append(combo)
    return tuple(found)


@lru_cache(maxsize=1 << 14)
def activity_sets(X: VectorList, B: tuple) -> tuple[frozenset, frozenset]:
    """Internally and externally active elements of B (max convention)."""
    B = check_basis(X, B)
    bset = set(B)
    ext = frozenset(
        x for x in range(1, X.N + 1)
        if x not in bset and rank_of(X, [b for b in B if b < x] + [x]) == rank_of(X, [b for b in B if b < x])
    )
    internal = set()
    for b in B:
        cl = closure(X, bset - {b})
        outside = [x for x in range(1, X.N + 1) if x not in cl]
        if outside and max(outside) == b:
            internal.add(b)
    return frozenset(internal), ext


def external_activity(X: VectorList, B: Sequence[int]) -> frozenset:
    return activity_sets(X, tuple(B))[1]


def internal_activity(X: VectorList, B: Sequence[int]) -> frozenset:
    return activity_sets(X, tuple(B))[0]


class TuttePolynomial:
    """Integer polynomial in x, y stored as {(i, j): coefficient of x^i y^j}."""

    def __init__(self, coeffs: dict | None = None):
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}

    def __call__(self, x, y):
        return sum(c * x ** i * y ** j for (i, j), c in self.coeffs.items())

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return TuttePolynomial(out)

    def __eq__(self, other):
        if isinstance(other, TuttePolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, dict):
            return self.coeffs == {k: v for k, v in other.items() if v}
        return NotImplemented

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: (-kv[0][0], kv[0][1]))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j), c in self.items():
            mono = "*".join(
                [f"x^{i}" if i > 1 else "x"] * (i > 0) + [f"y^{j}" if j > 1 else "y"] * (j > 0)
            )
            parts.append(mono if c == 1 and mono else (f"{c}*{mono}" if mono else str(c)))
        return " + ".join(parts)

    __repr__ = __str__


def tutte_restricted(X: VectorList, Bp: Iterable[Sequence[int]]) -> TuttePolynomial:
    """Sum of x^|I(B)| y^|E(B)| over Bp, activities taken in the full matroid."""
    coeffs: dict = {}
    for B in Bp:
        I, E = activity_sets(X, tuple(B))
        coeffs[(len(I), len(E))] = coeffs.get((len(I), len(E)), 0) + 1
    return TuttePolynomial(coeffs)


def tutte(X: VectorList) -> TuttePolynomial:
    return tutte_restricted(X, bases(X))


def zonotope_volume(X: VectorList) -> Fraction:
    return sum((abs(basis_det(X, B)) for B in bases(X)), Fraction(0))


def delete(X: VectorList, i: int) -> VectorList:
    X.vector(i)
    return VectorList(X.vectors[:i - 1] + X.vectors[i:], X.r)


def contract(X: VectorList, i: int) -> VectorList:
    """Image of X minus x_i in Q^r / x_i, in coordinates of a pivoted basis.

    The basis is (x_i, e_j1, ..., e_j(r-1)) with unit vectors added greedily in
    index order; the coordinate along x_i is dropped.
    """
    x = X.vector(i)
    if not any(x):
        raise ContractError("cannot contract a loop")
    r = X.r
    frame = [list(x)]
    for j in range(r):
        e = [Fraction(int(k == j)) for k in range(r)]
        if rank(frame + [e]) == len(frame) + 1:
            frame.append(e)
        if len(frame) == r:
            break
    M = Matrix.from_columns(frame, nrows=r)
    out = []
    for k, v in enumerate(X.vectors, 1):
        if k != i:
            out.append(solve(M, v)[1:])
    return VectorList(out, r - 1)


def _shift(B, i):
    return tuple(b - (b > i) for b in B if b != i)


def bases_deletion(Bp: Iterable[Sequence[int]], i: int) -> list[tuple[int, ...]]:
    """Bases avoiding x_i, re-indexed for the list with x_i removed."""
    return [_shift(B, i) for B in Bp if i not in B]


def bases_contraction(Bp: Iterable[Sequence[int]], i: int) -> list[tuple[int, ...]]:
    """Bases containing x_i with x_i dropped, re-indexed for the contraction."""
    return [_shift(B, i) for B in Bp if i in B]
