"""Flags of bases, the forward exchange property, placibility and the
classical families of bases that have it.

A family of bases B' is stored as a sorted tuple of BasisId tuples.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple, Sequence

from zonotopal.linalg import ContractError, solve
from zonotopal.matroid import (
    TuttePolynomial,
    VectorList,
    activity_sets,
    bases,
    check_basis,
    closure,
    delete,
    flats,
    rank_of,
    tutte_restricted,
)

POSITIVE = "+"
NEGATIVE = "-"


class FlagLevel(NamedTuple):
    positive: tuple
    negative: tuple

    @property
    def members(self) -> tuple:
        return tuple(sorted(self.positive + self.negative))


class Witness(NamedTuple):
    basis: tuple
    level: int
    element: int


class FEResult(NamedTuple):
    forward_exchange: bool
    witness: Witness | None

    def __bool__(self):
        return self.forward_exchange


def normalize_family(X: VectorList, Bp: Iterable[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Validate members of B' against X; return them sorted and deduplicated."""
    fam = sorted({check_basis(X, tuple(B)) for B in Bp})
    if not fam:
        raise ContractError("the family of bases is empty")
    return tuple(fam)


@lru_cache(maxsize=1 << 14)
def _levels(X: VectorList, B: tuple) -> tuple[int, ...]:
    # level of each element: 0 for loops, else the last nonzero coordinate
    # of x in the basis B, together with the sign of that coordinate
    M = X.matrix(B)
    out = []
    for v in X.vectors:
        if not any(v):
            out.append(0)
            continue
        lam = solve(M, v)
        k = max(j for j, c in enumerate(lam) if c != 0)
        out.append((k + 1) if lam[k] > 0 else -(k + 1))
    return tuple(out)


def flag_partition(X: VectorList, B: Sequence[int]) -> list[FlagLevel]:
    """Elements of S_i^B minus S_(i-1)^B for i = 1..r, split by orientation.

    x is positive at level i when (b_1, ..., b_(i-1), x) is oriented like
    (b_1, ..., b_i) inside span(b_1..b_i).
    """
    B = check_basis(X, B)
    levels = _levels(X, B)
    pos = [[] for _ in range(X.r)]
    neg = [[] for _ in range(X.r)]
    for idx, lv in enumerate(levels, 1):
        if lv > 0:
            pos[lv - 1].append(idx)
        elif lv < 0:
            neg[-lv - 1].append(idx)
    return [FlagLevel(tuple(p), tuple(n)) for p, n in zip(pos, neg)]


def flag_flats(X: VectorList, B: Sequence[int]) -> list[frozenset]:
    """The flag S_0^B ⊂ S_1^B ⊂ ... ⊂ S_r^B as index sets."""
    B = check_basis(X, B)
    return [closure(X, B[:i]) for i in range(X.r + 1)]


def _exchanges(X: VectorList, B: tuple):
    ext = activity_sets(X, B)[1]
    for i, level in enumerate(flag_partition(X, B), 1):
        b = B[i - 1]
        for x in level.members:
            if x == b or x in ext:
                continue
            yield i, x, tuple(sorted(set(B) - {b} | {x}))


def is_forward_exchange(X: VectorList, Bp: Iterable[Sequence[int]]) -> FEResult:
    """Exhaustive check; reports the first violation (B, i, x) in scan order."""
    fam = normalize_family(X, Bp)
    members = set(fam)
    for B in fam:
        for i, x, new in _exchanges(X, B):
            if new not in members:
                return FEResult(False, Witness(B, i, x))
    return FEResult(True, None)


def forward_exchange_closure(X: VectorList, seeds: Iterable[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Smallest family containing the seeds that has the forward exchange property."""
    fam = set(normalize_family(X, seeds))
    todo = sorted(fam)
    while todo:
        B = todo.pop()
        for _, _, new in _exchanges(X, B):
            if new not in fam:
                fam.add(new)
                todo.append(new)
    return tuple(sorted(fam))


def is_placeable(Bp: frozenset, x: int) -> bool:
    for B in Bp:
        if x in B:
            continue
        if not any(tuple(sorted(set(B) - {b} | {x})) in Bp for b in B):
            return False
    return True


def is_placible(X: VectorList, Bp: Iterable[Sequence[int]]) -> bool:
    """Recursive placibility, following the definition with an existential over x."""
    fam = frozenset(normalize_family(X, Bp))
    return _placible(fam, X.N)


@lru_cache(maxsize=1 << 16)
def _placible(fam: frozenset, N: int) -> bool:
    if len(fam) == 1:
        return True
    for x in range(1, N + 1):
        with_x = frozenset(B for B in fam if x in B)
        without = fam - with_x
        if not with_x or not without:
            continue
        if is_placeable(fam, x) and _placible(with_x, N) and _placible(without, N):
            return True
    return False


# -- classical families ------------------------------------------------------

@dataclass(frozen=True)
class Family:
    """A family of bases together with the list it lives on."""

    kind: str
    X: VectorList
    bases: tuple
    n_core: int  # length of the list A the family was built from


def _append(A: VectorList, extra: Sequence[Sequence]) -> VectorList:
    return VectorList(list(A.vectors) + [tuple(v) for v in extra], A.r)


def greedy_extension(X: VectorList, I: Sequence[int], fill: Sequence[int]) -> tuple[int, ...]:
    """Add the elements of ``fill`` to I in order unless that makes it dependent."""
    cur = list(I)
    if rank_of(X, cur) != len(cur):
        raise ContractError(f"{tuple(I)} is not independent")
    for j in fill:
        if rank_of(X, cur + [j]) == len(cur) + 1:
            cur.append(j)
    return tuple(sorted(cur))


def _check_B0(A: VectorList, B0) -> list[tuple]:
    B0 = [tuple(v) for v in B0]
    if len(B0) != A.r or rank_of(VectorList(B0, A.r)) != A.r:
        raise ContractError("B0 must be a basis of the ambient space")
    return B0


def _upper_set(A: VectorList, J) -> frozenset:
    lattice = {f.indices for f in flats(A)}
    Jset = frozenset(frozenset(F) for F in J)
    for F in Jset:
        if F not in lattice:
            raise ContractError(f"{sorted(F)} is not a flat of A")
    for F in Jset:
        for G in lattice:
            if F <= G and G not in Jset:
                raise ContractError(f"J is not an upper set: {sorted(F)} is in J but {sorted(G)} is not")
    return Jset


def semi_external_bases(A: VectorList, B0, J=None) -> Family:
    """Bases ex(I) of X = (A, B0), I independent in A with clos(I) in J.

    ``J=None`` means every flat, which gives the external bases.
    """
    B0 = _check_B0(A, B0)
    Jset = None if J is None else _upper_set(A, J)
    X = _append(A, B0)
    n = A.N
    fill = range(n + 1, n + A.r + 1)
    out = []
    for B in bases(X):
        I = [b for b in B if b <= n]
        if greedy_extension(X, I, fill) != B:
            continue
        if Jset is not None and closure(A, I) not in Jset:
            continue
        out.append(B)
    return Family("external" if J is None else "semi_external", X, tuple(out), n)


def external_bases(A: VectorList, B0) -> Family:
    return semi_external_bases(A, B0, None)


def internal_bases(A: VectorList) -> Family:
    out = tuple(B for B in bases(A) if not activity_sets(A, B)[0])
    return Family("internal", A, out, A.N)


def semi_internal_bases(A: VectorList, I0: Sequence[int]) -> Family:
    """Bases B of A such that B ∩ I0 has no internally active element.

    I0 must be independent.  The elements of I0 are expected to be the top
    elements of A in the list order; anything else only triggers a warning.
    """
    I0 = tuple(sorted(set(I0)))
    if any(not 1 <= i <= A.N for i in I0) or rank_of(A, I0) != len(I0):
        raise ContractError(f"I0={I0} is not an independent subset of A")
    if I0 and set(I0) != set(range(A.N - len(I0) + 1, A.N + 1)):
        warnings.warn(f"I0={I0} does not consist of the last elements of A", stacklevel=2)
    out = tuple(B for B in bases(A) if not (activity_sets(A, B)[0] & set(I0)))
    return Family("semi_internal", A, out, A.N)


def _check_generic(X: VectorList, positions: Sequence[int]):
    for p in positions:
        rest = delete(X, p)
        y = X.vector(p)
        for F in flats(rest):
            if F.rank < X.r and rank_of(_append(rest.sublist(F.indices), [y])) == F.rank:
                raise ContractError(f"appended vector {p - min(positions) + 1} is not generic")


def _check_kappa(A: VectorList, kappa: Mapping, default: int) -> dict:
    lattice = [f.indices for f in flats(A)]
    k = {}
    given = {frozenset(F): v for F, v in kappa.items()}
    for F in given:
        if F not in lattice:
            raise ContractError(f"{sorted(F)} is not a flat of A")
    for F in lattice:
        v = given.get(F, default)
        if not isinstance(v, int) or v < 0:
            raise ContractError("kappa values must be nonnegative integers")
        k[F] = v
    for F in lattice:
        for G in lattice:
            if F <= G and k[F] > k[G]:
                raise ContractError(f"kappa is not increasing on {sorted(F)} ⊆ {sorted(G)}")
    return k


def generalized_external_bases(A: VectorList, Y, kappa: Mapping, default: int = 0) -> Family:
    """Bases B of X = (A, Y) with B ∩ Y among the first kappa(clos(A∩B)) + |B∩Y| of Y.

    ``kappa`` maps flats of A (index sets) to nonnegative integers; flats not
    listed get ``default``.
    """
    k = _check_kappa(A, kappa, default)
    X = _append(A, Y)
    n = A.N
    if rank_of(X) != X.r:
        raise ContractError("A and Y together must span")
    _check_generic(X, range(n + 1, X.N + 1))
    out = []
    for B in bases(X):
        inA = [b for b in B if b <= n]
        inY = [b - n for b in B if b > n]
        allowed = k[closure(A, inA)] + len(inY)
        if all(j <= allowed for j in inY):
            out.append(B)
    return Family("generalized_external", X, tuple(out), n)


FAMILY_KINDS = ("external", "internal", "semi_external", "semi_internal", "generalized_external")


def standard_families(kind: str, A: VectorList, **args) -> Family:
    """Dispatch on ``kind``; keyword arguments as for the specific builders."""
    if kind == "external":
        return external_bases(A, args["B0"])
    if kind == "internal":
        return internal_bases(A)
    if kind == "semi_external":
        return semi_external_bases(A, args["B0"], args["J"])
    if kind == "semi_internal":
        return semi_internal_bases(A, args["I0"])
    if kind == "generalized_external":
        return generalized_external_bases(A, args["Y"], args.get("kappa", {}), args.get("default", 0))
    raise ContractError(f"unknown family kind {kind!r}")


# -- forward exchange matroids -----------------------------------------------

@dataclass(frozen=True)
class FEM:
    X: VectorList
    bases: tuple
    validated: bool = field(default=False)

    @classmethod
    def build(cls, X: VectorList, Bp: Iterable[Sequence[int]]) -> "FEM":
        fam = normalize_family(X, Bp)
        res = is_forward_exchange(X, fam)
        if not res:
            w = res.witness
            raise ContractError(f"not forward exchange: B={w.basis}, i={w.level}, x={w.element}")
        return cls(X, fam, True)


def fem_tutte(fem: FEM) -> TuttePolynomial:
    if not fem.validated:
        raise ContractError("Tutte polynomial of an unvalidated family")
    return tutte_restricted(fem.X, fem.bases)
