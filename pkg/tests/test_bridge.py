import time
from fractions import Fraction as F

import pytest

import oracles as O
from normsemi import algebra as alg
from normsemi import bridge as B
from normsemi import norms as N
from normsemi.errors import InputError, NoIdentity, NotClifford, NotSkewConvex, PreconditionViolated
from normsemi.fixtures import builtin_fixtures, get_fixture
from normsemi.metrics import d0, d1
from normsemi.ordermaps import PairMap

CLIFFORD = [f for f in builtin_fixtures() if alg.is_clifford(f.S)]
CLIFFORD_MONOID = [f for f in CLIFFORD if f.S.is_monoid]
V_TABLE = [[0, 2, 2], [2, 1, 2], [2, 2, 2]]  # two atoms meeting at a zero, no identity


def _ids(f):
    return f.name


def _d1(f):
    return d1(N.induced_p(f.S, f.v))


@pytest.mark.parametrize("f", [f for f in CLIFFORD if f.S.n <= 16], ids=_ids)
def test_skew_convexity_matches_oracle(f):
    T = O.table_of(f.S)
    for d in (d0(N.induced_p(f.S, f.v)), _d1(f)):
        rep = B.is_skew_convex(f.S, d)
        ax1, ax2 = O.skew_convex(T, O.pairs_of(d))
        assert (rep.axiom1, rep.axiom2) == (ax1, ax2) == (True, True)
        assert rep.right_subinvariant and rep.radially_convex


def test_semilattice_axiom2_is_radial_convexity():
    # on a semilattice dx = x, so axiom 2 reads d(x,z) = d(x,y) + d(y,z) along chains
    S = alg.chain(4)
    bad = PairMap.from_values([[0, 1, 2, 4], [1, 0, 1, 2], [2, 1, 0, 1], [4, 2, 1, 0]])
    rep = B.is_skew_convex(S, bad)
    T = O.table_of(S)
    L = O.natural_order(T)
    assert rep.axiom2 == O.skew_convex(T, O.pairs_of(bad))[1] == O.radially_convex(L, O.pairs_of(bad))
    assert not rep.axiom2 and rep.witnesses["axiom2"]["relation"] == "="


def test_group_axioms():
    G = alg.cyclic(4)
    d = PairMap.from_function(4, lambda x, y: min((x - y) % 4, (y - x) % 4))
    rep = B.is_skew_convex(G, d)
    assert rep.passed
    assert rep.checked["axiom2"] == 4**3  # dx = 0 for every x, so every triple is a chain


def test_skew_convexity_needs_clifford():
    with pytest.raises(NotClifford):
        B.is_skew_convex(alg.sym_inverse(2), PairMap.from_values([[0] * 7] * 7))


@pytest.mark.parametrize("f", CLIFFORD, ids=_ids)
def test_dclifford(f):
    rep = B.verify_dclifford(f.S, f.v)
    assert rep.passed, rep.to_text()


@pytest.mark.parametrize("f", CLIFFORD_MONOID, ids=_ids)
def test_roundtrip(f):
    rep = B.roundtrip_check(f.S, f.v)
    assert rep.passed, rep.to_text()
    v2 = B.norm_from_metric(f.S, _d1(f))
    T = O.table_of(f.S)
    assert O.values_of(v2) == O.values_of(f.v)
    assert O.metric_to_norm(T, O.pairs_of(_d1(f))) == O.values_of(f.v)


def test_roundtrip_named_examples():
    S = alg.chain(3)
    assert B.norm_from_metric(S, d1(N.induced_p(S, [0, 1, 2]))).values == [0, 1, 2]
    zero = B.norm_from_metric(S, d1(N.induced_p(S, [0, 0, 0])))
    assert zero.values == [0, 0, 0]
    G = alg.cyclic(5)
    word = [min(x, 5 - x) for x in range(5)]
    assert B.norm_from_metric(G, d1(N.induced_p(G, word))).values == word


def test_group_metric_gives_distance_to_zero():
    G = alg.cyclic(6)
    d = PairMap.from_function(6, lambda x, y: 2 * min((x - y) % 6, (y - x) % 6))
    v = B.norm_from_metric(G, d)
    assert v.values == [d[x, 0] for x in range(6)]
    assert N.validate_pseudonorm(G, v).passed and N.is_norm(G, v)


def test_semilattice_factor_two():
    # dx = x on a semilattice, so v(x) = d(x,0) + d(x,0)
    S = alg.chain(3)
    d = d1(N.induced_p(S, [0, 1, 2]))
    v, rep = B.bridge_metric_to_norm(S, d)
    assert v.values == [2 * d[x, 0] for x in range(3)]
    info = [a for a in rep.assertions if a.name.startswith("semilattice")][0]
    assert info.detail["holds"] is True


@pytest.mark.parametrize("f", CLIFFORD_MONOID, ids=_ids)
def test_bridge_report_and_norm_iff_metric(f):
    d = _d1(f)
    v, rep = B.bridge_metric_to_norm(f.S, d)
    assert rep.passed, rep.to_text()
    metric = all(d[x, y] != 0 for x in range(f.S.n) for y in range(f.S.n) if x != y)
    assert N.is_norm(f.S, v) == metric


def test_perturbed_metric_is_rejected():
    f = get_fixture("chain3/index")
    d = _d1(f)
    vals = d.values
    vals[0][1] = vals[1][0] = F(1)  # was 1/2; still a pseudo-metric
    bad = PairMap.from_values(vals)
    assert O.is_pseudometric(O.pairs_of(bad))
    with pytest.raises(NotSkewConvex) as info:
        B.norm_from_metric(f.S, bad)
    w = info.value.witness
    assert w["axiom"] == "axiom2"
    assert w["elements"] == {"x": "0", "y": "1", "z": "2"}
    assert (w["lhs"], w["rhs"]) == ("1/1", "3/2")


def test_non_metric_is_rejected():
    S = alg.chain(2)
    with pytest.raises(PreconditionViolated):
        B.norm_from_metric(S, PairMap.from_values([[0, 1], [2, 0]]))


def test_identity_required():
    V = alg.validate_table(3, V_TABLE)
    assert alg.is_clifford(V) and not V.is_monoid
    with pytest.raises(NoIdentity):
        B.norm_from_metric(V, PairMap.from_values([[0] * 3] * 3))
    with pytest.raises(NoIdentity):
        B.roundtrip_check(V, [1, 1, 0])
    with pytest.raises(NotClifford):
        B.norm_from_metric(alg.brandt(2), PairMap.from_values([[0] * 5] * 5))


# -------------------------------------------------------- counter family


def test_counter_family_formulas():
    # ||x|| = 1: lambda = 2 gives d2^2 = 2, d0^2 = 1; lambda = 3/2 gives d2^2 / d0^2 = 3
    S = alg.chain(3)
    for lam, r2, r0, ratio in ((F(2), 2, 1, 2), (F(3, 2), F(3, 4), F(1, 4), 3)):
        p = N.induced_p(S, [0, 1, lam])
        D0, _, D2 = N.induced_metrics(S, [0, 1, lam])
        assert D2.radicand[1, 2] == r2 and D0[1, 2] ** 2 == r0
        assert D2.radicand[1, 2] / D0[1, 2] ** 2 == ratio
        assert p[1, 2] == lam


def test_counter_family_report():
    t0 = time.perf_counter()
    rep = B.reproduce_counter_family(10**6)
    elapsed = time.perf_counter() - t0
    assert rep.passed, rep.to_text()
    assert all(a.checked == 10**6 - 1 for a in rep.assertions[:4])
    assert elapsed < 5.0
    with pytest.raises(InputError):
        B.reproduce_counter_family(1)


def test_d2_skew_is_measured_not_asserted():
    f = get_fixture("C2xP(2)/length+card")
    rep = B.verify_dclifford(f.S, f.v)
    info = [a for a in rep.assertions if a.name.startswith("d2")]
    assert info and all(a.status == "info" for a in info)
