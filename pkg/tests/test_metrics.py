import random
from fractions import Fraction as F

import numpy as np
import pytest

import oracles as O
from normsemi import algebra as alg
from normsemi import metrics as M
from normsemi import randgen as R
from normsemi.errors import (
    DiagonalMismatch,
    DiagonalNotDominated,
    NegativeSelfDistance,
    NoAdmissibleK,
    NotSubmodular,
    NotSymmetric,
)
from normsemi.exact import SqrtValue
from normsemi.ordermaps import PairMap, quasiorder_leq_p

two_chain = PairMap.from_values([[0, 1], [1, 1]])  # v(x v y), v = (0, 1)


def ppms(seed, count, n_max=7):
    rng = random.Random(seed)
    for _ in range(count):
        yield R.random_ppm(rng, rng.randint(1, n_max))


# ------------------------------------------------------------ validation


@pytest.mark.parametrize("rows, exc", [
    ([[0, 1], [2, 0]], NotSymmetric),
    ([[0, 0], [0, 3]], NotSubmodular),
    ([[-1]], NegativeSelfDistance),
    ([[-1, -1], [-1, -1]], NegativeSelfDistance),
])
def test_validate_ppm_errors(rows, exc):
    with pytest.raises(exc) as info:
        M.validate_ppm(rows)
    assert "lhs" in info.value.witness or "x" in info.value.witness


def test_diagonal_not_dominated():
    # symmetric and submodular, but w(1) = 2 > p(1, 0) = 1
    rows = [[1, 1], [1, 2]]
    assert O.symmetric(rows) and not O.is_ppm(rows)
    if O.submodular(rows):
        with pytest.raises(DiagonalNotDominated):
            M.validate_ppm(rows)
    else:
        with pytest.raises(NotSubmodular):
            M.validate_ppm(rows)


def test_random_ppms_validate_and_agree_with_oracle():
    for p in ppms(1, 300):
        assert O.is_ppm(O.pairs_of(p))
        M.validate_ppm(p)


def test_partial_metric_examples():
    d = PairMap.from_values([[0, 2, 3], [2, 0, 1], [3, 1, 0]])
    assert M.is_partial_metric(d)
    assert M.is_partial_metric(two_chain)
    const = PairMap.from_values([[3] * 3] * 3)
    M.validate_ppm(const)
    assert not M.is_partial_metric(const) and M.separation_failure(const) == (0, 1)


def test_chain_valuation_is_partial_metric_exhaustive():
    """p(x,y) = v(max(x,y)) with v strictly increasing, every chain length up to 8."""
    for n in range(1, 9):
        p = PairMap.from_function(n, lambda x, y: F(max(x, y) ** 2 + 1, 2))
        assert M.is_partial_metric(p)


# ------------------------------------------------------------ induced metrics


def test_two_chain_intrinsic_metrics():
    assert M.d1(two_chain)[0, 1] == F(1, 2)
    assert M.d0(two_chain)[0, 1] == 1
    assert M.d2(two_chain)[0, 1] == SqrtValue(1)


def test_constant_diagonal():
    p = PairMap.from_values([[2, 5, 3], [5, 2, 4], [3, 4, 2]])
    M.validate_ppm(p)
    want = [[v - 2 for v in row] for row in p.values]
    assert M.d0(p).values == want and M.d1(p).values == want


def test_d2_examples():
    p = PairMap.from_values([[1, 2], [2, 1]])
    r = M.d2(p)
    assert r.radicand[0, 1] == 3 and r[0, 1] == SqrtValue(3)
    assert r.to_dict()["sqrt"] is True
    d = PairMap.from_values([[0, 2], [2, 0]])
    assert M.d2(d)[0, 1] == 2


def test_induced_metrics_match_oracle():
    for p in ppms(2, 150):
        P = O.pairs_of(p)
        assert O.pairs_of(M.d0(p)) == O.d0(P)
        assert O.pairs_of(M.d1(p)) == O.d1(P)
        assert O.pairs_of(M.d2(p).radicand) == O.d2_squared(P)
        assert O.is_pseudometric(O.d0(P)) and O.is_pseudometric(O.d1(P))


# ------------------------------------------------------------ dist2


def test_dist2_terms_hand_example():
    # w = 0, p(x,z) = p(y,z) = 1: Gamma = 1, Theta = 0, Delta = 1, 2 <= 2 with equality
    p = PairMap.from_values([[0, 2, 1], [2, 0, 1], [1, 1, 0]])
    g, t, d = M.lemma_dist2_terms(p, 0, 1, 2)
    assert (g, t, d) == (1, 0, 1) == O.dist2_terms(O.pairs_of(p), 0, 1, 2)
    assert 2 * g + t == 2 and SqrtValue(d) == 1
    assert M.verify_lemma_dist2(p).passed


def test_dist2_diagonal_triple():
    for p in ppms(3, 40):
        for x in range(p.n):
            g, t, d = M.lemma_dist2_terms(p, x, x, x)
            assert g == 0 and t == 0 and d >= 0


def test_dist2_and_d2_triangle_against_oracle():
    for p in ppms(4, 150, n_max=6):
        P = O.pairs_of(p)
        n = p.n
        holds = all(O.dist2_holds(P, x, y, z) for x in range(n) for y in range(n) for z in range(n))
        assert holds and M.verify_lemma_dist2(p).passed
        R2 = O.d2_squared(P)
        tri = all(O.sqrt_le_sum(R2[x][y], R2[x][z], R2[z][y])
                  for x in range(n) for y in range(n) for z in range(n))
        assert tri and M.check_d2_triangle(p).passed


def test_dist2_violation_is_detected_on_a_non_ppm():
    # not submodular, so the lemma need not hold; the scanner must still find the bad triple
    p = PairMap.from_values([[0, 9], [9, 5]])
    cnt, first = M.lemma_dist2_violation(p)
    bad = [(x, y, z) for x in range(2) for y in range(2) for z in range(2)
           if not O.dist2_holds(O.pairs_of(p), x, y, z)]
    assert cnt == len(bad) and (first == bad[0] if bad else first is None)


# ------------------------------------------------------------ metric chain


def test_metric_chain_random():
    for p in ppms(5, 200):
        assert M.check_metric_chain(p).passed


def test_metric_chain_metric_case():
    d = PairMap.from_values([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    assert M.d0(d) == d and M.d1(d) == d
    assert M.d2(d).radicand.values == [[v * v for v in row] for row in d.values]
    assert M.check_metric_chain(d).passed


def test_metric_chain_on_chain_semilattices():
    for n in range(1, 9):
        v = [F(i * (i + 1), 2) for i in range(n)]
        p = PairMap.from_function(n, lambda x, y: v[max(x, y)])
        assert M.check_metric_chain(p).passed


# ------------------------------------------------------------ interlaced


def test_pseudometric_with_zero_is_interlaced():
    d = PairMap.from_values([[0, 1, 1], [1, 0, 0], [1, 0, 0]])
    sp = M.validate_interlaced(d, PairMap.from_values([[0] * 3] * 3))
    assert sp.k_min == 1  # any k works: the floor is returned
    assert M.intrinsic_dpq(sp) == d
    assert M.check_interlaced_invariants(sp).passed


def test_adjoint_q1_admits_k_two():
    for p in ppms(6, 100):
        sp = M.validate_interlaced(p, M.adjoint_q1(p))
        assert sp.k_min <= 2
        assert M.intrinsic_dpq(sp) == M.d1(p)
        assert M.check_interlaced_invariants(sp).passed
        sp0 = M.validate_interlaced(p, M.adjoint_q0(p))
        assert M.intrinsic_dpq(sp0) == M.d0(p)


def test_equal_maps_with_varying_diagonal():
    # p = q forces p modular; (w(x) + w(y)) / 2 is the simplest such map
    p = PairMap.from_values([[0, F(1, 2)], [F(1, 2), 1]])
    with pytest.raises(DiagonalMismatch) as info:
        M.validate_interlaced(p, p)
    assert isinstance(info.value, NoAdmissibleK)
    with pytest.raises(DiagonalMismatch):
        M.validate_interlaced(two_chain, PairMap.from_values([[0, 0], [0, 0]]))


def test_radial_convexity_of_d0_and_d1():
    for p in ppms(7, 100):
        rel = quasiorder_leq_p(p)
        L = rel.matrix.tolist()
        for name, d in (("d0", M.d0(p)), ("d1", M.d1(p))):
            assert O.radially_convex(L, O.pairs_of(d))
            assert M.radial_convexity_report(rel, d, name, "<=_p").passed


def test_classify_metric_space_all_true():
    d = PairMap.from_values([[0, 1, 2], [1, 0, 3], [2, 3, 0]])
    flags = M.classify_interlaced(M.validate_interlaced(d, PairMap.from_values([[0] * 3] * 3)))
    assert (flags.interlaced, flags.metric, flags.antisymmetric) == (True, True, True)


def test_classify_small_spaces_brute_force():
    """Every 2-point ppm with entries in 0..3 paired with q1: flags agree with the oracle."""
    import itertools
    for a, b, c in itertools.product(range(4), repeat=3):
        rows = [[a, b], [b, c]]
        if not O.is_ppm(rows):
            continue
        p = PairMap.from_values(rows)
        sp = M.validate_interlaced(p, M.adjoint_q1(p))
        flags = M.classify_interlaced(sp)
        q = O.pairs_of(sp.q)
        want = not (rows[0][1] == q[0][1])
        assert flags.interlaced == want == flags.metric == flags.antisymmetric


def test_quotient_merges_clones():
    base = PairMap.from_values([[1, 2, 3], [2, 2, 3], [3, 3, 3]])
    idx = [0, 1, 1, 2]  # point 2 is a clone of point 1
    p = PairMap(base.num[np.ix_(idx, idx)], base.den)
    sp = M.validate_interlaced(p, M.adjoint_q1(p))
    assert not M.classify_interlaced(sp).interlaced
    out, proj = M.quotient(sp)
    assert proj == [0, 1, 1, 2] and out.n == 3
    assert M.classify_interlaced(out).interlaced
    same, proj2 = M.quotient(out)
    assert proj2 == [0, 1, 2] and same.p == out.p


def test_quotient_of_constant_map_is_a_point():
    c = PairMap.from_values([[F(5, 2)] * 4] * 4)
    out, proj = M.quotient(M.validate_interlaced(c, c))
    assert out.n == 1 and proj == [0, 0, 0, 0]


def test_order_metric_compatibility():
    S = alg.chain(5)
    v = [0, 1, 3, 4, 9]
    p = PairMap.from_function(5, lambda x, y: v[S.add(x, y)])
    sp = M.validate_interlaced(p, M.adjoint_q1(p))
    assert M.check_order_metric_compat(sp).passed
    for p in ppms(8, 80):
        for q in (M.adjoint_q0(p), M.adjoint_q1(p)):
            assert M.check_order_metric_compat(M.validate_interlaced(p, q)).passed


def test_verify_ppm_full_suite():
    for p in ppms(9, 40, n_max=6):
        rep = M.verify_ppm(p)
        assert rep.passed, rep.to_text()
