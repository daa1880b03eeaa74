"""Multivariate polynomials over Q, the differential pairing and inverse systems.

Polynomials live on one of two sides: the S-side ``Q[s1..sr]`` houses
P-spaces and cocircuit generators, the T-side ``Q[t1..tr]`` houses D-spaces.
The pairing lets a polynomial on one side act as a constant coefficient
differential operator on the other and keeps the constant term.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import factorial, prod
from typing import Iterable, Sequence

from zonotopal.linalg import ContractError, DimensionError, format_rational, nullspace_basis, rref

S_SIDE = "S"
T_SIDE = "T"
_LETTER = {S_SIDE: "s", T_SIDE: "t"}


def other_side(side: str) -> str:
    return T_SIDE if side == S_SIDE else S_SIDE


def _check_side(side):
    if side not in (S_SIDE, T_SIDE):
        raise ContractError(f"unknown side {side!r}")


def _order_key(alpha):
    # graded lex, variable 1 highest; sorting ascending by this key prints the leading term first
    return (-sum(alpha), tuple(-a for a in alpha))


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of the given degree, leading (grlex) first."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        alpha = [0] * nvars
        for v in combo:
            alpha[v] += 1
        out.append(tuple(alpha))
    out.sort(key=_order_key)
    return tuple(out)


def _alpha_factorial(alpha) -> int:
    return prod(factorial(a) for a in alpha)


class MPoly:
    """Polynomial with Fraction coefficients in ``nvars`` variables on one side."""

    __slots__ = ("side", "nvars", "terms", "_hash")

    def __init__(self, side: str, nvars: int, terms=None):
        _check_side(side)
        self.side = side
        self.nvars = nvars
        clean = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(alpha)
            if len(alpha) != nvars or any(a < 0 for a in alpha):
                raise DimensionError(f"bad exponent vector {alpha} for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[alpha] = clean.get(alpha, Fraction(0)) + c
        self.terms = {a: c for a, c in clean.items() if c}
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, side, nvars):
        return cls(side, nvars)

    @classmethod
    def constant(cls, side, nvars, c=1):
        return cls(side, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, side, nvars, i):
        alpha = [0] * nvars
        alpha[i] = 1
        return cls(side, nvars, {tuple(alpha): 1})

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(a) for a in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(a) for a in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "MPoly":
        return MPoly(self.side, self.nvars, {a: c for a, c in self.terms.items() if sum(a) == d})

    def coefficient(self, alpha) -> Fraction:
        return self.terms.get(tuple(alpha), Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _order_key(t[0]))

    # arithmetic

    def _compatible(self, other):
        if not isinstance(other, MPoly):
            return False
        if other.side != self.side or other.nvars != self.nvars:
            raise DimensionError("polynomials from different rings")
        return True

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.constant(self.side, self.nvars, other)
        self._compatible(other)
        terms = dict(self.terms)
        for a, c in other.terms.items():
            terms[a] = terms.get(a, Fraction(0)) + c
        return MPoly(self.side, self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.side, self.nvars, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = Fraction(other)
            return MPoly(self.side, self.nvars, {a: c * v for a, v in self.terms.items()})
        self._compatible(other)
        terms: dict = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                terms[k] = terms.get(k, Fraction(0)) + c * d
        return MPoly(self.side, self.nvars, terms)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        return self * (1 / Fraction(other))

    def __pow__(self, n: int):
        result = MPoly.constant(self.side, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.side == other.side and self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == MPoly.constant(self.side, self.nvars, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.side, self.nvars, frozenset(self.terms.items())))
        return self._hash

    # calculus

    def partial(self, i: int) -> "MPoly":
        terms = {}
        for a, c in self.terms.items():
            if a[i]:
                b = list(a)
                b[i] -= 1
                terms[tuple(b)] = c * a[i]
        return MPoly(self.side, self.nvars, terms)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise DimensionError("point has wrong dimension")
        pt = [Fraction(p) for p in point]
        return sum((c * prod(p ** e for p, e in zip(pt, a)) for a, c in self.terms.items()),
                   Fraction(0))

    def coefficient_vector(self, degree: int) -> list[Fraction]:
        return [self.coefficient(a) for a in monomials(self.nvars, degree)]

    def swapped(self) -> "MPoly":
        """Same coefficients, other side."""
        return MPoly(other_side(self.side), self.nvars, self.terms)

    # text form

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MPoly({self.side}, {format_poly(self)!r})"


def format_poly(p: MPoly) -> str:
    """Canonical text: grlex order, coefficient ``num/den``, e.g. ``1/2*t1^2 + t2``."""
    if not p.terms:
        return "0"
    letter = _LETTER[p.side]
    parts = []
    for alpha, c in p.sorted_terms():
        mono = "*".join(
            f"{letter}{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(alpha) if e
        )
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"^([st])(\d+)(?:\^(\d+))?$")


def parse_poly(text: str, side: str, nvars: int) -> MPoly:
    """Inverse of :func:`format_poly`."""
    text = text.strip()
    if text == "0":
        return MPoly.zero(side, nvars)
    letter = _LETTER[side]
    terms: dict = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or (m.group(1) is None and not first):
            raise ValueError(f"cannot parse polynomial at position {pos}: {text!r}")
        first = False
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(sign)
        alpha = [0] * nvars
        # a coefficient like 1/2 contains no +/-, so the term regex keeps it whole
        for factor in m.group(2).strip().split("*"):
            factor = factor.strip()
            fm = _FACTOR.match(factor)
            if fm:
                if fm.group(1) != letter:
                    raise ValueError(f"variable {factor!r} on the wrong side")
                i = int(fm.group(2)) - 1
                if not 0 <= i < nvars:
                    raise ValueError(f"variable index out of range in {factor!r}")
                alpha[i] += int(fm.group(3) or 1)
            else:
                coef *= Fraction(factor)
        key = tuple(alpha)
        terms[key] = terms.get(key, Fraction(0)) + coef
    return MPoly(side, nvars, terms)


# operations on vectors

def linear_form(x: Sequence, side: str = S_SIDE) -> MPoly:
    """The degree one polynomial sum x_i var_i."""
    r = len(x)
    return MPoly(side, r, {tuple(int(i == j) for j in range(r)): c for i, c in enumerate(x)})


def product_of_forms(Y: Iterable[Sequence], side: str = S_SIDE, nvars: int | None = None) -> MPoly:
    Y = list(Y)
    if nvars is None:
        if not Y:
            raise DimensionError("nvars needed for an empty product")
        nvars = len(Y[0])
    result = MPoly.constant(side, nvars)
    for y in Y:
        if len(y) != nvars:
            raise DimensionError("vector of wrong length")
        result = result * linear_form(y, side)
    return result


def derive(f: MPoly, x: Sequence) -> MPoly:
    """Directional derivative sum x_i d f / d var_i."""
    if len(x) != f.nvars:
        raise DimensionError("direction has wrong dimension")
    out = MPoly.zero(f.side, f.nvars)
    for i, xi in enumerate(x):
        if xi:
            out = out + f.partial(i) * xi
    return out


def derive_along(f: MPoly, Y: Iterable[Sequence]) -> MPoly:
    for y in Y:
        f = derive(f, y)
        if f.is_zero():
            break
    return f


def pair(p: MPoly, f: MPoly) -> Fraction:
    """Constant term of ``p(d/dvar) f``; the two arguments must be on opposite sides."""
    if p.nvars != f.nvars:
        raise DimensionError("pairing polynomials in different numbers of variables")
    if p.side == f.side:
        raise ContractError("pairing needs one S-side and one T-side polynomial")
    small, big = (p, f) if len(p.terms) <= len(f.terms) else (f, p)
    total = Fraction(0)
    for alpha, c in small.terms.items():
        d = big.terms.get(alpha)
        if d:
            total += _alpha_factorial(alpha) * c * d
    return total


def apply_operator(g: MPoly, f: MPoly) -> MPoly:
    """``g(d/dvar) f`` where g and f live on opposite sides."""
    if g.side == f.side:
        raise ContractError("operator and operand must be on opposite sides")
    terms: dict = {}
    for alpha, c in g.terms.items():
        for beta, d in f.terms.items():
            if all(b >= a for a, b in zip(alpha, beta)):
                gamma = tuple(b - a for a, b in zip(alpha, beta))
                k = _alpha_factorial(beta) // _alpha_factorial(gamma)
                terms[gamma] = terms.get(gamma, Fraction(0)) + c * d * k
    return MPoly(f.side, f.nvars, terms)


# graded spaces

def hilbert_vector(elements: Iterable[MPoly]) -> tuple[int, ...]:
    """Number of elements per degree, trailing zeros trimmed.

    For a basis of homogeneous polynomials this is the Hilbert vector of
    their span.
    """
    counts: dict[int, int] = {}
    for p in elements:
        if p.is_zero():
            raise ContractError("zero polynomial in a basis")
        if not p.is_homogeneous():
            raise ContractError(f"non-homogeneous basis element {p}")
        counts[p.degree()] = counts.get(p.degree(), 0) + 1
    if not counts:
        return ()
    return tuple(counts.get(d, 0) for d in range(max(counts) + 1))


def canonical_homogeneous_basis(polys: Sequence[MPoly], side: str, nvars: int,
                                degree: int) -> list[MPoly]:
    """Reduced echelon basis of the span of degree-d homogeneous polynomials."""
    mons = monomials(nvars, degree)
    rows = [[p.coefficient(a) for a in mons] for p in polys]
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    red, _ = rref(rows, len(mons))
    return [MPoly(side, nvars, dict(zip(mons, r))) for r in red]


def canonical_graded_basis(polys: Sequence[MPoly], side: str, nvars: int) -> list[MPoly]:
    """Canonical basis of the span of homogeneous polynomials, by ascending degree."""
    by_degree: dict[int, list[MPoly]] = {}
    for p in polys:
        if p.is_zero():
            continue
        if not p.is_homogeneous():
            raise ContractError(f"non-homogeneous polynomial {p}")
        by_degree.setdefault(p.degree(), []).append(p)
    out = []
    for d in sorted(by_degree):
        out.extend(canonical_homogeneous_basis(by_degree[d], side, nvars, d))
    return out


def same_span(a: Sequence[MPoly], b: Sequence[MPoly]) -> bool:
    """Equality of the spans of two families of homogeneous polynomials."""
    if not a and not b:
        return True
    ref = (a or b)[0]
    return (canonical_graded_basis(a, ref.side, ref.nvars)
            == canonical_graded_basis(b, ref.side, ref.nvars))


def kernel_of_differential_ideal(generators: Sequence[MPoly], max_degree: int,
                                 nvars: int | None = None) -> list[MPoly]:
    """Homogeneous basis of the inverse system of an ideal, up to ``max_degree``.

    Returns, degree by degree, the polynomials f on the opposite side with
    ``g(d) f = 0`` for every generator g, in canonical echelon form.
    """
    generators = [g for g in generators]
    if nvars is None:
        if not generators:
            raise ContractError("nvars required when there are no generators")
        nvars = generators[0].nvars
    if generators:
        side = other_side(generators[0].side)
    else:
        raise ContractError("an empty generator list has an infinite-dimensional kernel")
    for g in generators:
        if g.is_zero() or not g.is_homogeneous():
            raise ContractError(f"generator {g} is zero or not homogeneous")
        if g.side != generators[0].side or g.nvars != nvars:
            raise DimensionError("generators from different rings")
    basis: list[MPoly] = []
    for d in range(max_degree + 1):
        basis.extend(_kernel_in_degree(generators, nvars, d, side))
    return basis


def _kernel_in_degree(generators, nvars, d, side):
    mons = monomials(nvars, d)
    col = {a: j for j, a in enumerate(mons)}
    rows = []
    for g in generators:
        k = g.degree()
        if k > d:
            continue
        # coefficient of var^gamma in g(d) f, for every gamma of degree d - k
        for gamma in monomials(nvars, d - k):
            row = [Fraction(0)] * len(mons)
            gfact = _alpha_factorial(gamma)
            for alpha, c in g.terms.items():
                beta = tuple(a + b for a, b in zip(alpha, gamma))
                row[col[beta]] += c * (_alpha_factorial(beta) // gfact)
            if any(row):
                rows.append(row)
    if not rows:
        vectors = [tuple(Fraction(int(i == j)) for j in range(len(mons))) for i in range(len(mons))]
    else:
        vectors = nullspace_basis(rows, len(mons))
    polys = [MPoly(side, nvars, dict(zip(mons, v))) for v in vectors]
    return canonical_homogeneous_basis(polys, side, nvars, d)


@dataclass
class LeastSpace:
    """Least space of a point set, with the exponential truncation degree used."""

    basis: list
    truncation_degree: int
    hilbert: tuple = field(default=())


def least_space(points: Sequence[Sequence], max_degree: int) -> LeastSpace:
    """Basis of the span of least terms of the exponentials ``e^v``, v in points.

    The exponentials are truncated at ``max_degree``; if the truncation loses
    a point (a row whose retained part vanishes) the degree is raised until
    every point contributes.
    """
    pts = [tuple(Fraction(c) for c in v) for v in points]
    if not pts:
        raise ContractError("least space of an empty point set")
    if len(set(pts)) != len(pts):
        raise ContractError("points must be distinct")
    nvars = len(pts[0])
    degree = max(max_degree, 0)
    while True:
        basis = _least_terms(pts, nvars, degree)
        if len(basis) == len(pts):
            break
        degree += 1
    basis = canonical_graded_basis(basis, T_SIDE, nvars)
    return LeastSpace(basis, degree, hilbert_vector(basis))


def _least_terms(pts, nvars, degree):
    blocks = [monomials(nvars, d) for d in range(degree + 1)]
    # row of e^v: coefficient of t^alpha is v^alpha / alpha!
    rows = []
    for v in pts:
        row = []
        for mons in blocks:
            for alpha in mons:
                row.append(prod((vi ** a for vi, a in zip(v, alpha)), start=Fraction(1))
                           / _alpha_factorial(alpha))
        rows.append(row)
    out = []
    # rows hold the coefficients from the current degree block onwards
    for mons in blocks:
        if not rows:
            break
        width = len(mons)
        red, pivots = rref(rows, len(rows[0]))
        npiv = sum(1 for p in pivots if p < width)
        for k in range(npiv):
            out.append(MPoly(T_SIDE, nvars, dict(zip(mons, red[k][:width]))))
        rows = [r[width:] for r in red[npiv:]]
    return out
