import os
import random
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from zonotopal.forward_exchange import forward_exchange_closure, standard_families  # noqa: E402
from zonotopal.linalg import ContractError  # noqa: E402
from zonotopal.matroid import VectorList, bases, flats, rank_of  # noqa: E402

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def example15():
    return VectorList([(1, 0), (0, 1), (1, 1)])


def example75(a=(1, 2, 3), b=(2, -1, 5)):
    return VectorList([(1, 0, 0), (0, 1, 0), (0, 0, 1), a, b])


def example76(N):
    """e1 followed by N - 1 vectors in general position, as a generalized external family."""
    A = VectorList([(1, 0)], 2)
    Y = [(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1)][:N - 1]
    return standard_families("generalized_external", A, Y=Y, kappa={(1,): N - 2})


@pytest.fixture
def ex15():
    return example15()


@pytest.fixture
def ex75():
    return example75()


def random_vectors(rng, r, N, lo=-2, hi=2, zero_ok=False, spanning=True):
    """A random list of N integer vectors in Q^r, spanning unless told otherwise."""
    while True:
        vecs = []
        while len(vecs) < N:
            v = tuple(rng.randint(lo, hi) for _ in range(r))
            if zero_ok or any(v):
                vecs.append(v)
        X = VectorList(vecs, r)
        if not spanning or rank_of(X) == r:
            return X


def random_instance(rng, max_r=3, max_N=7):
    r = rng.randint(1, max_r)
    N = rng.randint(r, max_N)
    return random_vectors(rng, r, N)


def random_fe_family(rng, X, max_seeds=2):
    """Random seeds pruned from the full basis list, repaired by forward exchange closure."""
    B = list(bases(X))
    seeds = rng.sample(B, rng.randint(1, min(max_seeds, len(B))))
    return forward_exchange_closure(X, seeds)


def random_generic(rng, X, count, lo=-9, hi=9):
    """Vectors appended to X one at a time, each outside every proper flat of the current list."""
    out = []
    cur = X
    while len(out) < count:
        y = tuple(rng.randint(lo, hi) for _ in range(X.r))
        ok = any(y) and all(
            rank_of(VectorList(cur.select(F.indices) + [y], X.r)) > F.rank
            for F in flats(cur) if F.rank < X.r)
        if ok:
            out.append(y)
            cur = VectorList(list(cur.vectors) + [y], X.r)
    return out


def random_standard_family(rng, kind, max_r=3, max_N=5):
    """A random nonempty instance of one of the classical families."""
    while True:
        fam = _try_family(rng, kind, max_r, max_N)
        if fam is not None and fam.bases:
            return fam


def _try_family(rng, kind, max_r, max_N):
    r = rng.randint(1, max_r)
    try:
        if kind == "internal":
            return standard_families(kind, random_vectors(rng, r, rng.randint(r, max_N)))
        if kind == "semi_internal":
            A = random_vectors(rng, r, rng.randint(r, max_N))
            I0 = []
            for i in range(A.N, 0, -1):
                if rng.random() < 0.6 and rank_of(A, I0 + [i]) == len(I0) + 1:
                    I0.append(i)
                else:
                    break
            return standard_families(kind, A, I0=sorted(I0))
        A = random_vectors(rng, r, rng.randint(1, max_N - 1), spanning=False)
        if kind == "external":
            return standard_families(kind, A, B0=_unit_basis(r))
        if kind == "semi_external":
            lat = [F.indices for F in flats(A)]
            seed = rng.choice(lat)
            J = [sorted(F) for F in lat if seed <= F]
            return standard_families(kind, A, B0=_unit_basis(r), J=J)
        if kind == "generalized_external":
            lat = sorted(flats(A), key=lambda F: F.rank)
            kappa = {}
            for F in lat:
                below = max((kappa[tuple(sorted(G.indices))] for G in lat
                             if G.indices < F.indices), default=0)
                kappa[tuple(sorted(F.indices))] = below + rng.randint(0, 1)
            Y = random_generic(rng, A, max(kappa.values()) + r)
            return standard_families(kind, A, Y=Y, kappa=kappa)
    except ContractError:
        return None
    raise ValueError(kind)


def _unit_basis(r):
    return [tuple(int(i == j) for j in range(r)) for i in range(r)]


def random_totally_unimodular(rng, r, N):
    """Columns e_i - e_j of a directed graph on r + 1 nodes, node 0 collapsed to the origin."""
    def e(k):
        return tuple(int(k == j + 1) for j in range(r))

    while True:
        vecs = []
        while len(vecs) < N:
            i, j = rng.sample(range(r + 1), 2)
            vecs.append(tuple(a - b for a, b in zip(e(i), e(j))))
        X = VectorList(vecs, r)
        if rank_of(X) == r:
            return X


def fractions(seq):
    return [Fraction(v) for v in seq]
