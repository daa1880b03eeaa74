"""P- and D-spaces of a list X with a family of bases B', their dual bases,
power ideals and the Hilbert series identities.

P-spaces live on the S-side (polynomials in s), D-spaces on the T-side.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from zonotopal.forward_exchange import normalize_family
from zonotopal.linalg import ContractError, Matrix, SingularMatrixError, inverse, nullspace_basis
from zonotopal.matroid import (
    VectorList,
    activity_sets,
    bases,
    basis_det,
    bases_contraction,
    bases_deletion,
    cocircuits,
    contract,
    delete,
    flats,
    is_coloop,
    is_loop,
)
from zonotopal.polynomial import (
    S_SIDE,
    T_SIDE,
    MPoly,
    apply_operator,
    canonical_graded_basis,
    format_poly,
    hilbert_vector,
    kernel_of_differential_ideal,
    linear_form,
    pair,
    parse_poly,
    product_of_forms,
    same_span,
)
from zonotopal.splines import r_polynomial


@dataclass(frozen=True)
class SpaceBasis:
    side: str
    nvars: int
    elements: tuple
    labels: tuple
    hilbert: tuple

    @classmethod
    def make(cls, side, nvars, elements, labels=()):
        elements = tuple(elements)
        return cls(side, nvars, elements, tuple(tuple(l) for l in labels), hilbert_vector(elements))

    def __len__(self):
        return len(self.elements)

    def span_equals(self, other: "SpaceBasis | Sequence[MPoly]") -> bool:
        els = other.elements if isinstance(other, SpaceBasis) else list(other)
        return same_span(list(self.elements), els)

    def to_dict(self) -> dict:
        return {
            "side": self.side,
            "nvars": self.nvars,
            "labels": [list(l) for l in self.labels],
            "polynomials": [format_poly(p) for p in self.elements],
            "hilbert": list(self.hilbert),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "SpaceBasis":
        els = tuple(parse_poly(t, d["side"], d["nvars"]) for t in d["polynomials"])
        out = cls.make(d["side"], d["nvars"], els, d.get("labels", ()))
        if list(out.hilbert) != list(d.get("hilbert", out.hilbert)):
            raise ValueError("Hilbert vector does not match the polynomials")
        return out

    @classmethod
    def from_json(cls, text: str) -> "SpaceBasis":
        return cls.from_dict(json.loads(text))


def _complement(X: VectorList, S) -> list[int]:
    S = set(S)
    return [i for i in range(1, X.N + 1) if i not in S]


def q_polynomial(X: VectorList, B: Sequence[int]) -> MPoly:
    """Q_B = product of the linear forms of X \\ (B ∪ E(B))."""
    B = tuple(B)
    E = activity_sets(X, B)[1]
    return product_of_forms(X.select(_complement(X, set(B) | E)), S_SIDE, X.r)


def p_space_basis(X: VectorList, Bp: Iterable[Sequence[int]] | None = None) -> SpaceBasis:
    fam = normalize_family(X, bases(X) if Bp is None else Bp)
    els = [q_polynomial(X, B) for B in fam]
    if len(canonical_graded_basis(els, S_SIDE, X.r)) != len(els):
        raise ContractError("Q-polynomials are linearly dependent")
    return SpaceBasis.make(S_SIDE, X.r, els, fam)


def cocircuit_generators(X: VectorList, fam) -> list[MPoly]:
    return [product_of_forms(X.select(sorted(C)), S_SIDE, X.r) for C in cocircuits(X, fam)]


def d_space_basis(X: VectorList, Bp: Iterable[Sequence[int]] | None = None,
                  max_degree: int | None = None) -> SpaceBasis:
    """Kernel of the ideal generated by p_C over all B'-cocircuits C."""
    fam = normalize_family(X, bases(X) if Bp is None else Bp)
    if X.r == 0:
        return SpaceBasis.make(T_SIDE, 0, [MPoly.constant(T_SIDE, 0)])
    if max_degree is None:
        max_degree = X.N - X.r
    els = kernel_of_differential_ideal(cocircuit_generators(X, fam), max_degree, X.r)
    return SpaceBasis.make(T_SIDE, X.r, els)


def _z_list(X: VectorList, B: tuple) -> tuple[VectorList, tuple]:
    """X \\ E(B) and B re-indexed inside it."""
    E = activity_sets(X, B)[1]
    keep = _complement(X, E)
    pos = {old: new for new, old in enumerate(keep, 1)}
    return X.sublist(keep), tuple(pos[b] for b in B)


def bcyr_element(X: VectorList, B: Sequence[int], M: int = 2) -> MPoly:
    """|det B| * R^B_{X \\ E(B)}."""
    B = tuple(B)
    Z, BZ = _z_list(X, B)
    if X.r == 0:
        return MPoly.constant(T_SIDE, 0)
    return r_polynomial(Z, BZ, M=M) * abs(basis_det(X, B))


def bcyr_basis(X: VectorList, Bp: Iterable[Sequence[int]] | None = None, M: int = 2) -> SpaceBasis:
    fam = normalize_family(X, bases(X) if Bp is None else Bp)
    return SpaceBasis.make(T_SIDE, X.r, [bcyr_element(X, B, M) for B in fam], fam)


def gram_matrix(p_basis: SpaceBasis, d_basis: SpaceBasis) -> Matrix:
    """Entries <Q_i, f_j>, with the D-side reordered to follow the P-side labels."""
    if len(p_basis) != len(d_basis):
        raise ContractError("bases of different sizes")
    if p_basis.side == d_basis.side:
        raise ContractError("Gram matrix needs one S-side and one T-side basis")
    ds = list(d_basis.elements)
    if d_basis.labels and p_basis.labels:
        if sorted(d_basis.labels) != sorted(p_basis.labels):
            raise ContractError("label sets differ")
        lookup = dict(zip(d_basis.labels, d_basis.elements))
        ds = [lookup[l] for l in p_basis.labels]
    return Matrix.from_rows([[pair(q, f) for f in ds] for q in p_basis.elements], cols=len(ds))


def dual_basis_oracle(X: VectorList, Bp: Iterable[Sequence[int]] | None = None) -> SpaceBasis:
    """The basis of D(X, B') dual to the Q-basis, by solving the Gram system."""
    P = p_space_basis(X, Bp)
    D = d_space_basis(X, P.labels)
    if len(D) != len(P):
        raise SingularMatrixError(f"dim D = {len(D)} differs from |B'| = {len(P)}")
    G = Matrix.from_rows([[pair(q, f) for f in D.elements] for q in P.elements], cols=len(D))
    C = inverse(G)
    out = []
    for i in range(len(P)):
        f = MPoly.zero(T_SIDE, X.r)
        for j, d in enumerate(D.elements):
            if C[j, i]:
                f = f + d * C[j, i]
        out.append(f)
    return SpaceBasis.make(T_SIDE, X.r, out, P.labels)


# -- power ideals ------------------------------------------------------------

@dataclass(frozen=True)
class PowerIdealEntry:
    flat: tuple
    normals: tuple  # basis of the annihilator of span(flat)
    exponent: int   # kappa + 1


@dataclass(frozen=True)
class PowerIdealSpec:
    entries: tuple
    cap: int  # kappa of a generic direction

    def generators(self, nvars: int) -> list[MPoly]:
        """All products of exponent-many normals of each entry (T-side)."""
        gens = []
        for e in self.entries:
            forms = [linear_form(n, T_SIDE) for n in e.normals]
            for combo in combinations_with_replacement(range(len(forms)), e.exponent):
                g = MPoly.constant(T_SIDE, nvars)
                for k in combo:
                    g = g * forms[k]
                gens.append(g)
        return gens


def kappa(X: VectorList, fam, flat) -> int:
    """max over B in B' of |X \\ (B ∪ E(B) ∪ flat)|."""
    flat = set(flat)
    return max(len(_complement(X, set(B) | activity_sets(X, B)[1] | flat)) for B in fam)


def power_ideal_spec(X: VectorList, Bp: Iterable[Sequence[int]] | None = None) -> PowerIdealSpec:
    """Generators of I(X, B') grouped by the flat F = X ∩ η^⊥.

    Every η with X ∩ η^⊥ = F gives p_η^(κ_F+1); their span is all products
    of κ_F+1 forms from the annihilator of span(F), so these products
    generate the ideal exactly.
    """
    fam = normalize_family(X, bases(X) if Bp is None else Bp)
    entries = []
    cap = 0
    for F in flats(X):
        if F.rank >= X.r:
            continue
        rows = [list(v) for v in X.select(sorted(F.indices))]
        normals = tuple(nullspace_basis(rows, X.r)) if rows else tuple(
            tuple(Fraction(int(i == j)) for j in range(X.r)) for i in range(X.r))
        k = kappa(X, fam, F.indices)
        if F.rank == 0:
            cap = k
        entries.append(PowerIdealEntry(tuple(sorted(F.indices)), normals, k + 1))
    return PowerIdealSpec(tuple(entries), cap)


@dataclass(frozen=True)
class PowerIdealResult:
    spec: PowerIdealSpec
    kernel: SpaceBasis
    equal: bool


def power_ideal_kernel(X: VectorList, Bp: Iterable[Sequence[int]] | None = None) -> PowerIdealResult:
    spec = power_ideal_spec(X, Bp)
    P = p_space_basis(X, Bp)
    els = kernel_of_differential_ideal(spec.generators(X.r), spec.cap, X.r)
    K = SpaceBasis.make(S_SIDE, X.r, els)
    return PowerIdealResult(spec, K, K.span_equals(P))


# -- Hilbert series identities -----------------------------------------------

def tutte_series(X: VectorList, fam) -> tuple[int, ...]:
    """Coefficients of sum over B' of q^(N - r - |E(B)|)."""
    counts: dict[int, int] = {}
    for B in fam:
        d = X.N - X.r - len(activity_sets(X, B)[1])
        counts[d] = counts.get(d, 0) + 1
    return tuple(counts.get(d, 0) for d in range(max(counts) + 1)) if counts else ()


@dataclass(frozen=True)
class HilbertCheck:
    ok: bool
    p_hilbert: tuple
    d_hilbert: tuple
    tutte: tuple


def hilbert_tutte_check(X: VectorList, Bp: Iterable[Sequence[int]] | None = None) -> HilbertCheck:
    fam = normalize_family(X, bases(X) if Bp is None else Bp)
    p = p_space_basis(X, fam).hilbert
    d = d_space_basis(X, fam).hilbert
    t = tutte_series(X, fam)
    return HilbertCheck(p == d == t, p, d, t)


def _add(a: Sequence[int], b: Sequence[int]) -> tuple:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def delcon_element(X: VectorList) -> int:
    """The minimal element that is neither a loop nor a coloop."""
    for i in range(1, X.N + 1):
        if not is_loop(X, i) and not is_coloop(X, i):
            return i
    raise ContractError("every element is a loop or a coloop")


@dataclass(frozen=True)
class DelconCheck:
    ok: bool
    element: int
    p: tuple        # Hilbert vectors of P(X), P(X\x), P(X/x)
    d: tuple        # the same for D


def delcon_dimension_check(X: VectorList, Bp: Iterable[Sequence[int]] | None = None) -> DelconCheck:
    """Hilb(X) = q Hilb(X\\x) + Hilb(X/x) for the P- and D-spaces.

    Empty families give zero spaces.
    """
    fam = normalize_family(X, bases(X) if Bp is None else Bp)
    x = delcon_element(X)
    Xd, Xc = delete(X, x), contract(X, x)
    Bd, Bc = bases_deletion(fam, x), bases_contraction(fam, x)

    def hilb(space, Y, F):
        return space(Y, F).hilbert if F else ()

    p = (hilb(p_space_basis, X, fam), hilb(p_space_basis, Xd, Bd), hilb(p_space_basis, Xc, Bc))
    d = (hilb(d_space_basis, X, fam), hilb(d_space_basis, Xd, Bd), hilb(d_space_basis, Xc, Bc))
    ok = all(h[0] == _add((0,) + tuple(h[1]) if h[1] else (), h[2]) for h in (p, d))
    return DelconCheck(ok, x, p, d)


def annihilates(generators: Sequence[MPoly], f: MPoly) -> bool:
    return all(apply_operator(g, f).is_zero() for g in generators)
