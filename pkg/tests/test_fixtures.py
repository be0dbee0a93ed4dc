import pytest

import oracles as O
from normsemi import algebra as alg
from normsemi import fixtures as fx
from normsemi.errors import BadParams
from normsemi.norms import permutability, validate_pseudonorm


def test_fixture_names_are_unique():
    names = fx.fixture_names()
    assert len(names) == len(set(names)) == len(fx.builtin_fixtures())


def test_enough_weakly_permutable_fixtures():
    weak = [f for f in fx.builtin_fixtures() if permutability(f.S, f.v)[0]]
    assert len(weak) >= 20


@pytest.mark.parametrize("name", fx.fixture_names())
def test_every_fixture_validates(name):
    f = fx.get_fixture(name)
    assert f.v.n == f.S.n
    assert validate_pseudonorm(f.S, f.v).passed


def test_unknown_fixture():
    with pytest.raises(BadParams):
        fx.get_fixture("no-such-thing")


@pytest.mark.parametrize("S", fx.semigroup_fixtures(), ids=lambda S: S.name)
def test_semigroup_fixtures_are_inverse(S):
    if S.n <= 40:
        assert O.is_inverse_semigroup(O.table_of(S))
    assert alg.verify_semigroup(S).passed


def test_value_helpers():
    assert fx.word_length(6) == [0, 1, 2, 3, 2, 1]
    assert fx.cardinality(2) == [0, 1, 1, 2]
    S = alg.chain(3)
    assert fx.discrete(S)[S.identity] == 0 and sorted(fx.discrete(S)) == [0, 1, 1]


@pytest.mark.parametrize("family, norm, params", [
    ("cyclic", "word", {"n": 5}),
    ("powerset", "cardinality", {"n": 3}),
    ("powerset", "measure", {"n": 2}),
    ("chain", "index", {"n": 4}),
    ("grid", "l1", {"sizes": [2, 3]}),
    ("grid", "sup", {"sizes": [3, 3]}),
    ("clifford", "length+card", {"n": 2, "m": 2}),
    ("clifford-chain", "level", {"orders": [2, 2]}),
    ("sym-inverse", "defect", {"n": 2}),
    ("powerset", "zero", {"n": 2}),
    ("cyclic", "discrete", {"n": 4}),
])
def test_family_norms_are_pseudonorms(family, norm, params):
    S = alg.generate(family, **params)
    v = fx.family_norm(S, family, norm, params)
    assert validate_pseudonorm(S, v).passed


def test_family_norm_unknown():
    with pytest.raises(BadParams):
        fx.family_norm(alg.cyclic(3), "cyclic", "sup", {"n": 3})
