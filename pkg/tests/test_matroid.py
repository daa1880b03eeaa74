import random
from fractions import Fraction

import pytest

from conftest import example15, example75, random_instance, random_vectors
from oracles import (
    activities,
    all_bases,
    all_flats,
    closure_set,
    minimal_hitting_sets,
    naive_det,
    rank_set,
    tutte_rank_generating,
)
from zonotopal.linalg import ContractError
from zonotopal.matroid import (
    VectorList,
    activity_sets,
    bases,
    bases_contraction,
    bases_deletion,
    basis_det,
    closure,
    cocircuits,
    contract,
    delete,
    flats,
    is_coloop,
    is_loop,
    loops,
    rank_of,
    tutte,
    tutte_restricted,
    zonotope_volume,
)


def instances(seed, count, **kw):
    rng = random.Random(seed)
    return [random_instance(rng, **kw) for _ in range(count)]


def test_example15_bases_and_tutte():
    X = example15()
    assert bases(X) == ((1, 2), (1, 3), (2, 3))
    assert tutte(X) == {(2, 0): 1, (1, 0): 1, (0, 1): 1}
    assert str(tutte(X)) == "x^2 + x + y"
    assert activity_sets(X, (1, 2)) == (frozenset(), frozenset({3}))
    assert activity_sets(X, (1, 3)) == (frozenset({3}), frozenset())
    assert activity_sets(X, (2, 3)) == (frozenset({2, 3}), frozenset())


def test_example75_tutte():
    X = example75()
    assert len(bases(X)) == 10
    assert tutte(X)(1, 1) == 10
    assert zonotope_volume(X) == sum(abs(naive_det([list(X.vector(i)) for i in B]))
                                     for B in all_bases(X.vectors, 3))


def test_vector_list_validation():
    with pytest.raises(ContractError):
        VectorList([(1, 0), (1,)])
    X = VectorList([(1, 2)], 2)
    assert X.N == 1 and X.vector(1) == (1, 2)
    with pytest.raises(IndexError):
        X.vector(2)
    with pytest.raises(ContractError):
        bases(X)


def test_bases_and_ranks_against_oracle():
    for X in instances(21, 60, max_N=6):
        assert list(bases(X)) == all_bases(X.vectors, X.r)
        for S in [(), (1,), tuple(range(1, X.N + 1))]:
            assert rank_of(X, S) == rank_set(X.vectors, S)
        for B in bases(X):
            assert basis_det(X, B) == naive_det([list(X.vector(b)) for b in B])


def test_activities_against_fundamental_circuits():
    for X in instances(22, 40, max_N=6):
        for B in bases(X):
            I, E = activity_sets(X, B)
            I2, E2 = activities(X.vectors, B)
            assert (set(I), set(E)) == (I2, E2)


def test_tutte_is_corank_nullity():
    for X in instances(23, 40, max_N=6):
        assert tutte(X) == tutte_rank_generating(X.vectors, X.r)


def test_flats_and_closure():
    for X in instances(24, 30, max_N=6):
        got = {F.indices for F in flats(X)}
        assert got == all_flats(X.vectors)
        for F in flats(X):
            assert F.rank == rank_set(X.vectors, F.indices)
            assert F.corank_one == (F.rank == X.r - 1)
        assert closure(X, {1}) == closure_set(X.vectors, {1})


def test_cocircuits_are_minimal_hitting_sets():
    rng = random.Random(25)
    for X in instances(25, 40, max_N=6):
        B = list(bases(X))
        fam = rng.sample(B, rng.randint(1, len(B)))
        assert cocircuits(X, fam) == minimal_hitting_sets(X.N, fam)


def test_cocircuits_example15():
    X = example15()
    assert cocircuits(X) == [frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 3})]
    assert cocircuits(X, [(1, 2), (1, 3)]) == [frozenset({1}), frozenset({2, 3})]


def test_loops_and_coloops():
    X = VectorList([(0, 0), (1, 0), (0, 1), (0, 2)])
    assert loops(X) == {1}
    assert is_loop(X, 1) and not is_loop(X, 2)
    assert is_coloop(X, 2) and not is_coloop(X, 3)


def test_deletion_contraction_recurrence():
    rng = random.Random(26)
    for X in instances(26, 40, max_N=6):
        i = rng.randint(1, X.N)
        if is_loop(X, i) or is_coloop(X, i):
            continue
        Xd, Xc = delete(X, i), contract(X, i)
        assert Xd.N == X.N - 1 and Xc.r == X.r - 1
        assert tutte(X) == tutte(Xd) + tutte(Xc)
        full = bases(X)
        assert sorted(bases_deletion(full, i)) == list(bases(Xd))
        assert sorted(bases_contraction(full, i)) == list(bases(Xc))


def test_contract_loop_rejected():
    with pytest.raises(ContractError):
        contract(VectorList([(0, 0), (1, 0), (0, 1)]), 1)


def test_tutte_restricted_counts():
    X = example15()
    T = tutte_restricted(X, [(1, 3), (2, 3)])
    assert T == {(2, 0): 1, (1, 0): 1}
    assert T(1, 1) == 2


def test_zero_vectors_are_loops_and_externally_active():
    X = random_vectors(random.Random(27), 2, 4)
    Y = VectorList(list(X.vectors) + [(0, 0)], 2)
    for B in bases(Y):
        assert Y.N in activity_sets(Y, B)[1]
    # a loop multiplies the Tutte polynomial by y
    assert tutte(Y) == {(i, j + 1): c for (i, j), c in tutte(X).coeffs.items()}


def test_volume_is_fraction():
    assert zonotope_volume(example15()) == Fraction(3)
