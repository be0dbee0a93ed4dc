import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from normsemi import algebra as alg
from normsemi.errors import (
    BadParams,
    InputError,
    NotAssociative,
    NotIdempotent,
    NotInverse,
    TooLarge,
)


def test_trivial_monoid():
    S = alg.validate_table(1, [[0]])
    assert S.inv.tolist() == [0] and S.idempotents == (0,) and S.identity == 0


def test_z2_is_a_group():
    S = alg.validate_table(2, [[0, 1], [1, 0]])
    assert S.inv.tolist() == [0, 1] and S.idempotents == (0,)
    assert alg.natural_order(S).matrix.tolist() == [[True, False], [False, True]]


def test_two_chain_semilattice():
    S = alg.validate_table(2, [[0, 1], [1, 1]])
    assert S.inv.tolist() == [0, 1] and S.idempotents == (0, 1)
    # y = x + e: the bottom 0 lies below the top 1
    assert alg.natural_order(S).matrix.tolist() == [[True, True], [False, True]]


def test_left_zero_band_has_many_inverses():
    T = [[x] * 5 for x in range(5)]
    assert O.associative(T) and len(O.inverses(T, 0)) == 5
    with pytest.raises(NotInverse):
        alg.validate_table(5, T)


def test_non_associative_table():
    T = [[1, 0], [0, 0]]
    assert not O.associative(T)
    with pytest.raises(NotAssociative) as exc:
        alg.validate_table(2, T)
    assert set(exc.value.witness) >= {"x", "y", "z"}


@pytest.mark.parametrize("n, table", [
    (2, [[0, 2], [1, 1]]), (2, [[0, 1]]), (0, []), (2, "ab"),
])
def test_malformed_tables(n, table):
    with pytest.raises(InputError):
        alg.validate_table(n, table)


def test_all_three_element_tables_against_oracle():
    """Every one of the 3^9 tables: accepted exactly when the oracle says inverse semigroup."""
    accepted = 0
    for flat in itertools.product(range(3), repeat=9):
        T = [list(flat[0:3]), list(flat[3:6]), list(flat[6:9])]
        expect = O.is_inverse_semigroup(T)
        try:
            S = alg.validate_table(3, T)
            got = True
        except (NotAssociative, NotInverse):
            got = False
        assert got == expect, T
        if got:
            accepted += 1
            assert S.inv.tolist() == O.inverse_table(T)
            assert list(S.idempotents) == O.idempotents(T)
            assert S.identity == O.identity(T)
            assert alg.natural_order(S).matrix.tolist() == O.natural_order(T)
            assert alg.is_clifford(S) == O.clifford(T)
    # frozen: labelled 3-element inverse semigroups.  Up to isomorphism: C3 (3 labellings),
    # the 3-chain (6), the V-shaped semilattice (3), C2 with a zero (6), C2 with an identity (6).
    assert accepted == 24


@pytest.mark.parametrize("n, size", [(0, 1), (1, 2), (2, 7), (3, 34), (4, 209)])
def test_symmetric_inverse_sizes(n, size):
    assert O.partial_bijection_count(n) == size
    if n <= 3:
        S = alg.sym_inverse(n)
        assert S.n == size
        assert not alg.is_clifford(S) or n <= 1


def test_sym_inverse_matches_oracle_on_I2():
    S = alg.sym_inverse(2)
    T = O.table_of(S)
    assert O.is_inverse_semigroup(T)
    assert S.inv.tolist() == O.inverse_table(T)
    assert alg.natural_order(S).matrix.tolist() == O.natural_order(T)
    assert not alg.is_clifford(S) and not O.clifford(T)


@pytest.mark.parametrize("S", [
    alg.trivial(), alg.cyclic(5), alg.chain(4), alg.powerset(3), alg.sym_inverse(2), alg.sym_inverse(3),
    alg.clifford(2, 2), alg.clifford(3, 1), alg.clifford_chain((4, 2, 1)), alg.brandt(2), alg.brandt(3),
    alg.grid(3, 2), alg.product(alg.cyclic(2), alg.sym_inverse(2)),
], ids=lambda S: S.name)
def test_verify_semigroup_passes_and_matches_oracle(S):
    rep = alg.verify_semigroup(S)
    assert rep.passed, rep.to_text()
    T = O.table_of(S)
    assert alg.natural_order(S).matrix.tolist() == O.natural_order(T)
    assert alg.is_clifford(S) == O.clifford(T)
    conds = alg.clifford_conditions(S)
    assert len(set(conds.values())) == 1


def test_clifford_status_of_families():
    assert alg.is_clifford(alg.cyclic(6))
    assert alg.is_clifford(alg.powerset(3))
    assert alg.is_clifford(alg.clifford(4, 2))
    assert alg.is_clifford(alg.clifford_chain((6, 3)))
    assert not alg.is_clifford(alg.sym_inverse(2))
    assert not alg.is_clifford(alg.brandt(2))


def test_group_order_is_equality():
    S = alg.cyclic(6)
    assert np.array_equal(alg.natural_order(S).matrix, np.eye(6, dtype=bool))


def test_delta():
    G, P = alg.cyclic(4), alg.powerset(2)
    assert [alg.delta(G, x) for x in range(4)] == [0, 0, 0, 0]
    assert [alg.delta(P, x) for x in range(4)] == [0, 1, 2, 3]
    B = alg.BicyclicCarrier(1)
    x = B.element((5,), (2,))
    assert alg.delta(B, x) == O.bicyclic_add(x, ((2,), (5,))) == ((5,), (5,))


def test_local_monoids():
    P = alg.powerset(3)
    assert alg.local_monoid(P, 0).n == P.n  # S_0 of a monoid is S
    top = P.n - 1
    assert alg.local_monoid(P, top).n == 1
    I2 = alg.sym_inverse(2)
    e = I2.labels.index("[1>1]")
    L = alg.local_monoid(I2, e)
    T = O.table_of(I2)
    assert list(L.embedding) == O.local_monoid_elements(T, e)
    assert sorted(I2.labels[x] for x in L.embedding) == ["[1>1]", "[]"]
    assert alg.verify_semigroup(L).passed
    with pytest.raises(NotIdempotent):
        alg.local_monoid(alg.cyclic(3), 1)


def test_product_construction():
    S = alg.generate("product", left=alg.cyclic(2), right=alg.powerset(1))
    assert S.n == 4 and alg.is_clifford(S) and S.is_monoid


def test_generate_errors():
    with pytest.raises(BadParams):
        alg.generate("nonsense")
    with pytest.raises(BadParams):
        alg.generate("cyclic")
    with pytest.raises(TooLarge):
        alg.generate("powerset", n=12)
    assert alg.generate("powerset", n=2).n == 4
    assert alg.generate("sym-inverse", n=2).n == 7
    assert isinstance(alg.generate("bicyclic", k=2), alg.BicyclicCarrier)


# ------------------------------------------------------------ bicyclic

coords = st.integers(0, 100)


def bic(k):
    vec = st.tuples(*[coords] * k)
    return st.tuples(vec, vec)


@settings(max_examples=300)
@given(bic(1), bic(1), bic(1))
def test_bicyclic_add_matches_formula(x, y, z):
    B = alg.BicyclicCarrier(1)
    assert B.add(x, y) == O.bicyclic_add(x, y)
    assert B.add(B.add(x, y), z) == B.add(x, B.add(y, z))


@settings(max_examples=300)
@given(bic(2), bic(2))
def test_bicyclic_order_closed_form(x, y):
    B = alg.BicyclicCarrier(2)
    # (a,b) <= (c,d) iff 0 <= c - a = d - b, coordinatewise
    (a, b), (c, d) = x, y
    closed = all(ci - ai == di - bi >= 0 for ai, bi, ci, di in zip(a, b, c, d))
    assert B.leq(x, y) == closed == B.leq_by_inverse(x, y)


def test_bicyclic_basics():
    B = alg.BicyclicCarrier(1)
    assert B.identity == ((0,), (0,))
    assert B.star(((2,), (7,))) == ((7,), (2,))
    assert B.embed((3,)) == ((3,), (0,)) and B.embed((-3,)) == ((0,), (3,))
    with pytest.raises(InputError):
        B.element((-1,), (0,))


@pytest.mark.parametrize("k", [1, 2])
def test_verify_bicyclic_sampled(k):
    rep = alg.verify_bicyclic(alg.BicyclicCarrier(k), samples=2000, seed=k)
    assert rep.passed and not rep.exhaustive and rep.samples == 2000


def test_bicyclic_sampler_is_seeded():
    B = alg.BicyclicCarrier(2)
    a = [B.sample(random.Random(4)) for _ in range(3)]
    b = [B.sample(random.Random(4)) for _ in range(3)]
    assert a == b
