"""Exact point evaluation of truncated powers and box splines.

Both are evaluated with the vertex formula for a hyperplane arrangement
H(X, c) in general position:

    T_X(u) = 1/(N-r)! * sum over bases B with u in cone(B) of
             (θ_B·u)^(N-r) / (|det B| * prod_{x not in B} (θ_B·x - c_x))

where θ_B is the vertex cut out by the hyperplanes {v : v·b = c_b}, b in B.
The same formula restricted to the cell around the direction
τ(ε) = b_1 + ε b_2 + ... + ε^(r-1) b_r gives the polynomial R^B_Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Sequence

from zonotopal.forward_exchange import flag_partition
from zonotopal.linalg import ContractError, Matrix, dot, inverse, nullspace_basis, rank, solve
from zonotopal.matroid import VectorList, basis_det, bases, check_basis, is_spanning
from zonotopal.polynomial import T_SIDE, MPoly, linear_form

INSIDE = "inside"
BOUNDARY = "boundary"
OUTSIDE = "outside"


class BoundaryError(ContractError):
    """A point lies on the wall of a basis cone, where T_X is not defined."""


@dataclass(frozen=True)
class GenericShift:
    c: tuple
    M: int | None
    verified: bool


def _vertex(X: VectorList, B: tuple, c: Sequence) -> tuple:
    # θ with θ·b = c_b for every b in B
    return solve(X.matrix(B).transpose(), [c[b - 1] for b in B])


def verify_shift(X: VectorList, c: Sequence) -> bool:
    """General position of H(X, c): distinct vertices, each on exactly r hyperplanes."""
    c = tuple(Fraction(v) for v in c)
    if len(c) != X.N:
        raise ContractError("shift must have one entry per vector")
    seen = set()
    for B in bases(X):
        theta = _vertex(X, B, c)
        if theta in seen:
            return False
        seen.add(theta)
        bset = set(B)
        for k, x in enumerate(X.vectors, 1):
            if k not in bset and dot(theta, x) == c[k - 1]:
                return False
    return True


def choose_generic_c(X: VectorList, M: int = 2) -> GenericShift:
    """c_x = M^index, advancing M until the arrangement is in general position."""
    if not is_spanning(X):
        raise ContractError("the vectors do not span")
    while True:
        c = tuple(Fraction(M) ** i for i in range(1, X.N + 1))
        if verify_shift(X, c):
            return GenericShift(c, M, True)
        M += 1


def shift_from(X: VectorList, c: Sequence) -> GenericShift:
    """Wrap an explicit shift, refusing one that is not in general position."""
    c = tuple(Fraction(v) for v in c)
    if not verify_shift(X, c):
        raise ContractError(f"shift {c} is not in general position")
    return GenericShift(c, None, True)


def _shift(X, shift, M):
    if shift is None:
        return choose_generic_c(X, M)
    if not shift.verified or len(shift.c) != X.N:
        raise ContractError("unverified shift")
    return shift


def arrangement_vertices(X: VectorList, shift: GenericShift) -> dict[tuple, tuple]:
    if not shift.verified:
        raise ContractError("unverified shift")
    return {B: _vertex(X, B, shift.c) for B in bases(X)}


def _classify(lam) -> str:
    if any(v < 0 for v in lam):
        return OUTSIDE
    if any(v == 0 for v in lam):
        return BOUNDARY
    return INSIDE


def cone_contains(X: VectorList, B: Sequence[int], u: Sequence) -> str:
    """Position of u relative to the simplicial cone spanned by the basis B."""
    B = check_basis(X, B)
    return _classify(solve(X.matrix(B), [Fraction(v) for v in u]))


def _cone_perturbed(Binv: Matrix, u) -> str:
    # u + eps e_1 + eps^2 e_2 + ... for small eps > 0; never on a wall
    r = Binv.rows
    lam = Binv @ u
    out = []
    for k in range(r):
        coeffs = [lam[k]] + list(Binv.row(k))
        lead = next(v for v in coeffs if v != 0)
        out.append(lead)
    return INSIDE if all(v > 0 for v in out) else OUTSIDE


def _term(X: VectorList, B: tuple, theta, c) -> MPoly:
    n, r = X.N, X.r
    den = abs(basis_det(X, B))
    bset = set(B)
    for k, x in enumerate(X.vectors, 1):
        if k not in bset:
            den *= dot(theta, x) - c[k - 1]
    return linear_form(theta, T_SIDE) ** (n - r) / (den * factorial(n - r))


def _check_spline_input(X: VectorList):
    if not is_spanning(X):
        raise ContractError("the vectors do not span")
    if any(not any(v) for v in X.vectors):
        raise ContractError("truncated powers of lists with zero vectors are not functions")


def cell_polynomial(X: VectorList, u: Sequence, shift: GenericShift | None = None,
                    M: int = 2, boundary: str = "error") -> MPoly:
    """The polynomial that agrees with T_X on the open cell containing u.

    ``boundary="limit"`` replaces u by u + eps(e_1 + eps e_2 + ...) and so picks
    one neighbouring cell; the default raises on a wall.
    """
    _check_spline_input(X)
    shift = _shift(X, shift, M)
    u = [Fraction(v) for v in u]
    if len(u) != X.r:
        raise ContractError("point has wrong dimension")
    total = MPoly.zero(T_SIDE, X.r)
    for B in bases(X):
        M_B = X.matrix(B)
        pos = _classify(solve(M_B, u))
        if pos == BOUNDARY:
            if boundary != "limit":
                raise BoundaryError(f"{u} lies on the boundary of cone{B}")
            pos = _cone_perturbed(inverse(M_B), u)
        if pos == INSIDE:
            total = total + _term(X, B, _vertex(X, B, shift.c), shift.c)
    return total


def t_spline_eval(X: VectorList, u: Sequence, shift: GenericShift | None = None,
                  M: int = 2, boundary: str = "error") -> Fraction:
    """T_X(u); raises BoundaryError on a cone wall unless ``boundary="limit"``."""
    return cell_polynomial(X, u, shift, M, boundary).evaluate([Fraction(v) for v in u])


def box_spline_eval(X: VectorList, u: Sequence, shift: GenericShift | None = None,
                    M: int = 2, boundary: str = "error") -> Fraction:
    """B_X(u) as the alternating sum of T_X(u - a_S) over subsets S of X."""
    _check_spline_input(X)
    shift = _shift(X, shift, M)
    u = [Fraction(v) for v in u]
    total = Fraction(0)
    for k in range(X.N + 1):
        for S in combinations(X.vectors, k):
            pt = [ui - sum((s[j] for s in S), Fraction(0)) for j, ui in enumerate(u)]
            total += (-1) ** k * t_spline_eval(X, pt, shift, boundary=boundary)
    return total


# -- the direction τ and the polynomials R^B ----------------------------------

def tau_coefficients(flag: Sequence[Sequence], Bpp: Sequence[Sequence]) -> list[tuple]:
    """Coefficients of λ(ε) with Bpp λ(ε) = sum ε^(i-1) b_i, one tuple per component.

    ``flag`` is the ordered basis (b_1..b_r) and ``Bpp`` the candidate basis,
    both as lists of vectors.
    """
    Minv = inverse(Matrix.from_columns(Bpp, nrows=len(flag[0])))
    cols = [Minv @ b for b in flag]
    return [tuple(col[k] for col in cols) for k in range(len(flag))]


def tau_cone_test(flag: Sequence[Sequence], Bpp: Sequence[Sequence]) -> bool:
    """Whether τ(ε) lies in cone(Bpp) for all small ε > 0."""
    for coeffs in tau_coefficients(flag, Bpp):
        lead = next((v for v in coeffs if v != 0), None)
        if lead is None:
            raise AssertionError("identically zero coefficient of τ")
        if lead < 0:
            return False
    return True


def reorient(Z: VectorList, B: Sequence[int]) -> tuple[VectorList, int]:
    """Z^{B+}: negative vectors of the flag of B flipped; also the number flipped."""
    B = check_basis(Z, B)
    levels = flag_partition(Z, B)
    negative = {i for lv in levels for i in lv.negative}
    if any(not any(v) for v in Z.vectors):
        raise ContractError("R^B is not defined for lists with zero vectors")
    vecs = [tuple(-c for c in v) if i in negative else v for i, v in enumerate(Z.vectors, 1)]
    return VectorList(vecs, Z.r), len(negative)


def r_polynomial(Z: VectorList, B: Sequence[int], shift: GenericShift | None = None,
                 M: int = 2) -> MPoly:
    """R^B_Z: (-1)^|N| times the local piece of T_{Z^{B+}} around τ.

    N is the set of vectors negative with respect to the flag of B.  The
    result is homogeneous of degree |Z| - r.  ``shift`` must be generic for
    Z^{B+}; by default one is chosen from the seed M.
    """
    B = check_basis(Z, B)
    Zp, flipped = reorient(Z, B)
    shift = _shift(Zp, shift, M)
    flag = Z.select(B)
    total = MPoly.zero(T_SIDE, Z.r)
    for Bpp in bases(Zp):
        if tau_cone_test(flag, Zp.select(Bpp)):
            total = total + _term(Zp, Bpp, _vertex(Zp, Bpp, shift.c), shift.c)
    return total * (-1) ** flipped


def tau_points(Z: VectorList, B: Sequence[int], k: int) -> list[Fraction]:
    """τ(1/k) scaled by k^(r-1): the integer point sum k^(r-i) b_i."""
    r = Z.r
    flag = Z.select(B)
    return [sum((Fraction(k) ** (r - i - 1) * b[j] for i, b in enumerate(flag)), Fraction(0))
            for j in range(r)]


def _safe_scale(Z: VectorList, B: tuple) -> int:
    """A k with tau(1/k) strictly inside the cell that tau(eps) enters as eps -> 0.

    Along tau, each wall normal η gives p(ε) = sum ε^(i-1) η·b_i.  By the
    Cauchy bound its nonzero roots satisfy |ε| >= |a_m| / (|a_m| + max|a_j|),
    a_m the lowest nonzero coefficient, so any larger k avoids every crossing.
    """
    r = Z.r
    flag = Z.select(B)
    k = Fraction(2)
    for S in combinations(range(1, Z.N + 1), r - 1):
        rows = Z.select(S)
        if rank(rows) != r - 1:
            continue
        eta = nullspace_basis(rows, r)[0] if rows else None
        if eta is None:
            continue
        coeffs = [dot(eta, b) for b in flag]
        low = next((abs(a) for a in coeffs if a != 0), None)
        if low is None:
            continue
        k = max(k, (low + max(abs(a) for a in coeffs)) / low + 1)
    return int(k) + 1


def local_piece_check(Z: VectorList, B: Sequence[int], shift: GenericShift | None = None,
                      M: int = 2) -> bool:
    """Compare R^B_Z with the cell polynomial of T_{Z^{B+}} at a point on τ.

    The sample point τ(1/k) is taken past every wall crossing (see
    _safe_scale) and its cell is found by plain cone membership, so this is
    independent of the ε-test used by r_polynomial.
    """
    B = check_basis(Z, B)
    Zp, flipped = reorient(Z, B)
    shift = _shift(Zp, shift, M)
    R = r_polynomial(Z, B, shift)
    u = tau_points(Z, B, _safe_scale(Zp, B))
    piece = cell_polynomial(Zp, u, shift) * (-1) ** flipped
    return piece == R
