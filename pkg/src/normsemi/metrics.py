"""Partial pseudo-metrics, interlaced spaces and their intrinsic pseudo-metrics.

Conventions: ``p`` is a PairMap, ``w`` its diagonal.  A pseudo-interlaced
space is a pair (p, q) with p and -q symmetric submodular, the same
diagonal, and some k > 0 with w(x) + k q(x, y) <= k p(x, y) + w(y).

All comparisons are exact.  Square roots never get evaluated: inequalities
involving d2 = sqrt(p^2 - w w) are squared out in integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernel
from .algebra import Relation
from .errors import (
    ConsistencyError,
    DiagonalMismatch,
    DiagonalNotDominated,
    InputError,
    NegativeSelfDistance,
    NoAdmissibleK,
    NotSubmodular,
    NotSymmetric,
)
from .exact import SqrtValue, workspace
from .ordermaps import PairMap, as_pairmap, quasiorder_leq_p, submodular_violation
from .report import Report, make_witness, show


def _els(p: PairMap, **idx) -> dict:
    return {k: p.label(v) for k, v in idx.items()}


def _fail_witness(p: PairMap, exc_type, message, lhs=None, rhs=None, **idx):
    w = {k: p.label(v) for k, v in idx.items()}
    if lhs is not None:
        w["lhs"], w["rhs"] = show(lhs), show(rhs)
    return exc_type(message, **w)


# ---------------------------------------------------------- validation


@dataclass(frozen=True, eq=False)
class PartialPseudoMetric:
    p: PairMap

    @property
    def n(self) -> int:
        return self.p.n

    @property
    def w(self) -> list[Fraction]:
        return self.p.diag


def _require_symmetric(p: PairMap, what: str = "p"):
    bad = np.argwhere(p.num != p.num.T)
    if len(bad):
        x, y = (int(v) for v in bad[0])
        raise _fail_witness(p, NotSymmetric, f"{what} is not symmetric", p[x, y], p[y, x], x=x, y=y)


def _require_submodular(p: PairMap, what: str = "p"):
    cnt, bad = submodular_violation(p)
    if bad is not None:
        x, y, z = bad
        raise _fail_witness(p, NotSubmodular, f"{what} is not submodular",
                            p[x, y] + p[z, z], p[x, z] + p[z, y], x=x, y=y, z=z)


def validate_ppm(p) -> PartialPseudoMetric:
    """Check symmetry, submodularity and 0 <= w(x) <= p(x, y)."""
    if isinstance(p, PartialPseudoMetric):
        return p
    p = as_pairmap(p)
    _require_symmetric(p)
    _require_submodular(p)
    W = p.num.diagonal()
    neg = np.flatnonzero(W < 0)
    if len(neg):
        x = int(neg[0])
        raise _fail_witness(p, NegativeSelfDistance, "negative self-distance", 0, p.w(x), x=x)
    bad = np.argwhere(W[:, None] > p.num)
    if len(bad):
        x, y = (int(v) for v in bad[0])
        raise _fail_witness(p, DiagonalNotDominated, "w(x) > p(x, y)", p.w(x), p[x, y], x=x, y=y)
    return PartialPseudoMetric(p)


def _ppm(p) -> PairMap:
    return validate_ppm(p).p


def separation_failure(p: PairMap):
    """First x != y with w(x) = p(x, y) = w(y), or None."""
    P = p.num
    W = P.diagonal()
    bad = np.argwhere((W[:, None] == P) & (P == W[None, :]) & ~np.eye(p.n, dtype=bool))
    return None if len(bad) == 0 else (int(bad[0][0]), int(bad[0][1]))


def is_partial_metric(p) -> bool:
    p = _ppm(p)
    return separation_failure(p) is None


# ------------------------------------------------------ pseudo-metrics


def triangle_violation(d: PairMap):
    (D,) = workspace(d.num)
    DT = D.T

    def mask(lo, hi):
        # d(x, y) > d(x, z) + d(z, y)
        return D[lo:hi, :, None] > D[lo:hi, None, :] + DT[None, :, :]

    return kernel.scan(d.n, d.n * d.n, mask)


def pseudometric_report(d: PairMap, name: str = "d") -> Report:
    rep = Report(f"{name} is a pseudo-metric")
    n = d.n
    D = d.num
    rep.check(f"{name} zero diagonal", not D.diagonal().any(), n, "pseudo-metric",
              _first(d, np.flatnonzero(D.diagonal()), lambda x: (d[x, x], 0), relation="="))
    bad = np.argwhere(D != D.T)
    rep.check(f"{name} symmetric", len(bad) == 0, n * n, "pseudo-metric",
              _first2(d, bad, lambda x, y: (d[x, y], d[y, x]), "="))
    bad = np.argwhere(D < 0)
    rep.check(f"{name} nonnegative", len(bad) == 0, n * n, "pseudo-metric",
              _first2(d, bad, lambda x, y: (0, d[x, y])))
    cnt, t = triangle_violation(d)
    w = None
    if t is not None:
        x, y, z = t
        w = make_witness(_els(d, x=x, y=y, z=z), d[x, y], d[x, z] + d[z, y])
    rep.check(f"{name} triangle inequality", cnt == 0, n**3, "d(x,y) <= d(x,z) + d(z,y)", w)
    return rep


def _first(p, idx, sides, relation="<="):
    if len(idx) == 0:
        return None
    x = int(idx[0])
    lhs, rhs = sides(x)
    return make_witness({"x": p.label(x)}, lhs, rhs, relation)


def _first2(p, bad, sides, relation="<="):
    if len(bad) == 0:
        return None
    x, y = (int(v) for v in bad[0])
    lhs, rhs = sides(x, y)
    return make_witness({"x": p.label(x), "y": p.label(y)}, lhs, rhs, relation)


def _assert_pseudometric(d: PairMap, name: str) -> PairMap:
    rep = pseudometric_report(d, name)
    if not rep.passed:
        a = rep.failures()[0]
        raise ConsistencyError(f"{a.name} fails", **(a.witness or {}))
    return d


# ------------------------------------------------------ interlaced spaces


@dataclass(frozen=True, eq=False)
class InterlacedSpace:
    p: PairMap
    q: PairMap
    k_min: Fraction

    @property
    def n(self) -> int:
        return self.p.n

    @property
    def w(self) -> list[Fraction]:
        return self.p.diag

    @property
    def d(self) -> PairMap:
        return self.p - self.q

    def to_dict(self) -> dict:
        return {"kind": "interlaced", "p": self.p.to_dict(), "q": self.q.to_dict()}


def validate_interlaced(p, q, k_floor=1) -> InterlacedSpace:
    """Validate (p, q) and compute the least admissible linking constant.

    k_min = max over pairs with p > q of (w(x) - w(y)) / (p(x, y) - q(x, y)),
    replaced by ``k_floor`` when that maximum is not positive.  Pairs with
    p = q must have w(x) = w(y), otherwise no k works.
    """
    p, q = as_pairmap(p), as_pairmap(q)
    if p.n != q.n:
        raise InputError("p and q have different sizes")
    k_floor = Fraction(k_floor)
    if k_floor <= 0:
        raise InputError("k_floor must be positive")
    _require_symmetric(p, "p")
    _require_submodular(p, "p")
    _require_symmetric(q, "q")
    _require_submodular(-q, "-q")
    for x in range(p.n):
        if p.w(x) != q.w(x):
            raise _fail_witness(p, DiagonalMismatch, "p(x, x) != q(x, x)", p.w(x), q.w(x), x=x)
    d = p - q
    if (d.num < 0).any():
        x, y = (int(v) for v in np.argwhere(d.num < 0)[0])
        raise ConsistencyError("q(x, y) > p(x, y) despite submodularity", x=p.label(x), y=p.label(y))
    w = p.diag
    k = None
    for x in range(p.n):
        for y in range(p.n):
            gap = w[x] - w[y]
            if d.num[x, y] == 0:
                if gap != 0:
                    raise _fail_witness(p, NoAdmissibleK, "p(x, y) = q(x, y) but w(x) != w(y)",
                                        w[x], w[y], x=x, y=y)
                continue
            r = gap / d[x, y]
            if k is None or r > k:
                k = r
    k_min = k if k is not None and k > 0 else k_floor
    return InterlacedSpace(p, q, k_min)


def intrinsic_dpq(space: InterlacedSpace) -> PairMap:
    return _assert_pseudometric(space.d, "d_pq")


def adjoint_q0(p) -> PairMap:
    p = _ppm(p)
    W = p.num.diagonal()
    return PairMap(np.minimum(W[:, None], W[None, :]), p.den, p.labels)


def adjoint_q1(p) -> PairMap:
    p = _ppm(p)
    W = p.num.diagonal().astype(object)
    return PairMap(W[:, None] + W[None, :], 2 * p.den, p.labels)


def d0(p) -> PairMap:
    p = _ppm(p)
    return _assert_pseudometric(p - adjoint_q0(p), "d0")


def d1(p) -> PairMap:
    p = _ppm(p)
    return _assert_pseudometric(p - adjoint_q1(p), "d1")


class SqrtPairMap:
    """d(x, y) = sqrt(r(x, y)) for a rational radicand matrix r >= 0."""

    def __init__(self, radicand: PairMap):
        if (radicand.num < 0).any():
            raise ConsistencyError("negative radicand")
        self.radicand = radicand

    @property
    def n(self) -> int:
        return self.radicand.n

    def __getitem__(self, xy) -> SqrtValue:
        return SqrtValue(self.radicand[xy])

    def label(self, x: int) -> str:
        return self.radicand.label(x)

    def to_dict(self) -> dict:
        d = self.radicand.to_dict()
        d["sqrt"] = True
        return d


def d2(p) -> SqrtPairMap:
    p = _ppm(p)
    P = p.num.astype(object)
    W = P.diagonal()
    r = PairMap(P * P - W[:, None] * W[None, :], p.den * p.den, p.labels)
    out = SqrtPairMap(r)
    if r.num.diagonal().any() or not np.array_equal(r.num, r.num.T):
        raise ConsistencyError("d2 is not symmetric with zero diagonal")
    return out


def d2_triangle_violation(p: PairMap):
    """(count, first (x, y, z)) with sqrt r(x,y) > sqrt r(x,z) + sqrt r(z,y)."""
    R = d2(p).radicand.num
    (R,) = workspace(R, degree=2)
    RT = R.T

    def mask(lo, hi):
        a = R[lo:hi, :, None]
        b = R[lo:hi, None, :]
        c = RT[None, :, :]
        s = a - b - c
        return (s > 0) & (s * s > 4 * b * c)

    return kernel.scan(p.n, p.n * p.n, mask)


def check_d2_triangle(p) -> Report:
    p = _ppm(p)
    rep = Report("d2 triangle inequality")
    cnt, t = d2_triangle_violation(p)
    w = None
    if t is not None:
        x, y, z = t
        D = d2(p)
        w = make_witness(_els(p, x=x, y=y, z=z), D[x, y], f"{D[x, z]} + {D[z, y]}")
    rep.check("d2 triangle inequality", cnt == 0, p.n**3, "d2(x,y) <= d2(x,z) + d2(z,y)", w)
    return rep


def lemma_dist2_terms(p: PairMap, x: int, y: int, z: int):
    """Exact (Gamma, Theta, Delta) for one triple."""
    w = p.diag
    gamma = (p[x, z] - w[z]) * (p[y, z] - w[z])
    theta = (w[z] - w[x]) * (w[y] - w[z])
    delta = (p[x, z] ** 2 - w[x] * w[z]) * (p[y, z] ** 2 - w[y] * w[z])
    return gamma, theta, delta


def lemma_dist2_violation(p: PairMap):
    (P,) = workspace(p.num, degree=4)
    W = P.diagonal()
    n = p.n

    def mask(lo, hi):
        x = np.arange(lo, hi)[:, None, None]
        y = np.arange(n)[None, :, None]
        z = np.arange(n)[None, None, :]
        pxz, pyz = P[x, z], P[y, z]
        wx, wy, wz = W[x], W[y], W[z]
        gamma = (pxz - wz) * (pyz - wz)
        theta = (wz - wx) * (wy - wz)
        delta = (pxz * pxz - wx * wz) * (pyz * pyz - wy * wz)
        lhs = 2 * gamma + theta
        return (lhs > 0) & (lhs * lhs > 4 * delta)

    return kernel.scan(n, n * n, mask)


def verify_lemma_dist2(p) -> Report:
    p = _ppm(p)
    rep = Report("lemma dist2")
    cnt, t = lemma_dist2_violation(p)
    w = None
    if t is not None:
        x, y, z = t
        g, th, de = lemma_dist2_terms(p, x, y, z)
        w = make_witness(_els(p, x=x, y=y, z=z), 2 * g + th, f"2*{SqrtValue(de)}",
                         Gamma=g, Theta=th, Delta=de)
    rep.check("2 Gamma + Theta <= 2 sqrt(Delta)", cnt == 0, p.n**3, "2 Gamma + Theta <= 2 sqrt(Delta)", w)
    return rep


def check_metric_chain(p) -> Report:
    """d0 <= 2 d1 <= 2 (d0 min d2) on every pair."""
    p = _ppm(p)
    rep = Report("metric chain")
    n = p.n
    (P,) = workspace(p.num, degree=2)
    W = P.diagonal()
    wx, wy = W[:, None], W[None, :]
    D0 = P - np.minimum(wx, wy)  # over den
    D1x2 = 2 * P - wx - wy  # 2 d1, over den
    R = P * P - wx * wy  # d2^2, over den^2
    def frac(M, x, y, den):
        return Fraction(int(M[x, y]), den)

    bad = np.argwhere(D0 > D1x2)
    rep.check("d0 <= 2 d1", len(bad) == 0, n * n, "d0 <= 2 d1",
              _first2(p, bad, lambda x, y: (frac(D0, x, y, p.den), frac(D1x2, x, y, p.den))))
    bad = np.argwhere(D1x2 > 2 * D0)
    rep.check("2 d1 <= 2 d0", len(bad) == 0, n * n, "2 d1 <= 2 (d0 min d2)",
              _first2(p, bad, lambda x, y: (frac(D1x2, x, y, p.den), 2 * frac(D0, x, y, p.den))))
    # 2 d1 <= 2 d2  <=>  D1x2 <= 2 sqrt(R)  <=>  D1x2 <= 0 or D1x2^2 <= 4 R
    bad = np.argwhere((D1x2 > 0) & (D1x2 * D1x2 > 4 * R))
    rep.check("2 d1 <= 2 d2", len(bad) == 0, n * n, "2 d1 <= 2 (d0 min d2)",
              _first2(p, bad, lambda x, y: (frac(D1x2, x, y, p.den), SqrtValue(4 * frac(R, x, y, p.den**2)))))
    return rep


# -------------------------------------------------- order and quotient


def order_pq(space: InterlacedSpace) -> Relation:
    """x <=_{p,q} y iff w(x) <= q(x, y) <= p(x, y) <= w(y)."""
    p, q = space.p, space.q
    a, b, den = p._aligned(q)
    W = a.diagonal()
    m = (W[:, None] <= b) & (b <= a) & (a <= W[None, :])
    return Relation(np.asarray(m, dtype=bool))


@dataclass(frozen=True)
class InterlacedFlags:
    interlaced: bool
    metric: bool
    antisymmetric: bool

    @property
    def agree(self) -> bool:
        return self.interlaced == self.metric == self.antisymmetric


def classify_interlaced(space: InterlacedSpace) -> InterlacedFlags:
    off = ~np.eye(space.n, dtype=bool)
    a, b, _ = space.p._aligned(space.q)
    interlaced = not ((a == b) & off).any()
    d = intrinsic_dpq(space)
    metric = not ((d.num == 0) & off).any()
    flags = InterlacedFlags(interlaced, metric, order_pq(space).antisymmetric)
    if not flags.agree:
        raise ConsistencyError("interlaced / metric / antisymmetric flags disagree",
                               interlaced=interlaced, metric=metric,
                               antisymmetric=flags.antisymmetric)
    return flags


def quotient(space: InterlacedSpace) -> tuple[InterlacedSpace, list[int]]:
    """Identify points at d_pq-distance 0.

    Returns the quotient space and the projection (point -> class index).
    Classes are numbered by their least member, which is the representative.
    """
    d = intrinsic_dpq(space)
    n = space.n
    proj = [-1] * n
    reps = []
    for x in range(n):
        if proj[x] < 0:
            cls = [y for y in range(n) if d.num[x, y] == 0]
            for y in cls:
                proj[y] = len(reps)
            reps.append(x)
    a, b, den = space.p._aligned(space.q)
    r = np.array([reps[c] for c in proj])
    for name, M in (("p", a), ("q", b)):
        bad = np.argwhere(M != M[np.ix_(r, r)])
        if len(bad):
            x, y = (int(v) for v in bad[0])
            raise ConsistencyError(f"{name} depends on the representative",
                                   x=space.p.label(x), y=space.p.label(y))
    labels = [space.p.label(x) for x in reps]
    p2 = PairMap(a[np.ix_(reps, reps)], den, labels)
    q2 = PairMap(b[np.ix_(reps, reps)], den, labels)
    out = validate_interlaced(p2, q2)
    if not classify_interlaced(out).interlaced:
        raise ConsistencyError("quotient is not interlaced")
    return out, proj


def check_order_metric_compat(space: InterlacedSpace) -> Report:
    """d_pq(x, y) <= w(y) - w(x) whenever x <=_{p,q} y."""
    rep = Report("order-metric compatibility")
    leq = order_pq(space)
    d = space.d
    w = space.w
    pairs = leq.pairs()
    bad = [(x, y) for x, y in pairs if d[x, y] > w[y] - w[x]]
    wit = None
    if bad:
        x, y = bad[0]
        wit = make_witness(_els(space.p, x=x, y=y), d[x, y], w[y] - w[x])
    rep.check("d_pq(x,y) <= w(y) - w(x) on comparable pairs", not bad, len(pairs),
              "order-metric compatibility", wit)
    return rep


# ------------------------------------------------------------ invariants


def radial_convexity_violation(rel: Relation, d: PairMap):
    """(count, first (x, y, z)) with x <= y <= z but d(x,z) != d(x,y) + d(y,z)."""
    M = rel.matrix
    (D,) = workspace(d.num)

    def mask(lo, hi):
        chain = M[lo:hi, :, None] & M[None, :, :]
        return chain & (D[lo:hi, None, :] != D[lo:hi, :, None] + D[None, :, :])

    return kernel.scan(d.n, d.n * d.n, mask)


def radial_convexity_report(rel: Relation, d: PairMap, name: str, order: str) -> Report:
    rep = Report(f"{name} radially convex")
    cnt, t = radial_convexity_violation(rel, d)
    w = None
    if t is not None:
        x, y, z = t
        w = make_witness(_els(d, x=x, y=y, z=z), d[x, z], d[x, y] + d[y, z], "=")
    rep.check(f"{name} radially convex along {order}", cnt == 0, len(rel.chains3()),
              "d(x,z) = d(x,y) + d(y,z) on chains", w)
    return rep


def check_interlaced_invariants(space: InterlacedSpace) -> Report:
    """Lemma-level consequences that must hold on every validated space."""
    rep = Report("interlaced invariants")
    p, q, w = space.p, space.q, space.w
    n = space.n
    d = intrinsic_dpq(space)
    rep.extend(pseudometric_report(d, "d_pq"))
    bad = [(x, y) for x in range(n) for y in range(n)
           if not q[x, y] <= (w[x] + w[y]) / 2 <= p[x, y]]
    rep.check("q <= (w(x)+w(y))/2 <= p", not bad, n * n, "q(x,y) <= (w(x)+w(y))/2 <= p(x,y)",
              make_witness(_els(p, x=bad[0][0], y=bad[0][1])) if bad else None)
    k = space.k_min
    bad = [(x, y) for x in range(n) for y in range(n) if abs(w[x] - w[y]) > k * d[x, y]]
    rep.check("Lipschitz bound on w", not bad, n * n, "|w(x) - w(y)| <= k d_pq(x,y)",
              make_witness(_els(p, x=bad[0][0], y=bad[0][1]), abs(w[bad[0][0]] - w[bad[0][1]]),
                           k * d[bad[0]]) if bad else None)
    bad = [(x, y) for x in range(n) for y in range(n)
           if p[x, y] == q[x, y] and not (w[x] == p[x, y] == w[y])]
    rep.check("p = q forces w(x) = p = q = w(y)", not bad, n * n, "p(x,y) = q(x,y) case",
              make_witness(_els(p, x=bad[0][0], y=bad[0][1])) if bad else None)
    hyp = all(w[x] + w[y] <= p[x, y] + q[x, y] for x in range(n) for y in range(n))
    if hyp:
        D1 = p - PairMap.from_function(n, lambda x, y: (w[x] + w[y]) / 2)
        bad = [(x, y) for x in range(n) for y in range(n) if not D1[x, y] <= d[x, y] <= 2 * D1[x, y]]
        rep.check("d1 <= d_pq <= 2 d1", not bad, n * n, "d1 <= d_pq <= 2 d1",
                  make_witness(_els(p, x=bad[0][0], y=bad[0][1])) if bad else None)
    else:
        rep.info("d1 <= d_pq <= 2 d1", "hypothesis w(x) + w(y) <= p + q fails", applicable=False)
    rep.extend(check_order_metric_compat(space))
    return rep


def verify_ppm(p) -> Report:
    """Full suite on a partial pseudo-metric: adjoints, d0/d1/d2, the chain, dist2."""
    pm = validate_ppm(p)
    p = pm.p
    rep = Report("ppm")
    rep.check("partial pseudo-metric axioms", True, p.n**3, "symmetric, submodular, 0 <= w(x) <= p(x,y)")
    rep.info("partial metric", "separation", holds=is_partial_metric(p))
    for name, q in (("q0", adjoint_q0(p)), ("q1", adjoint_q1(p))):
        space = validate_interlaced(p, q)
        rep.check(f"{name} adjoint", True, p.n**2, "adjoint map")
        if name == "q1":
            rep.check("k = 2 admissible for q1", space.k_min <= 2, p.n**2, "w(x) + 2q <= 2p + w(y)")
        rep.extend(check_interlaced_invariants(space), prefix=f"{name}: ")
    rep.extend(pseudometric_report(d0(p), "d0"))
    rep.extend(pseudometric_report(d1(p), "d1"))
    rep.extend(verify_lemma_dist2(p))
    rep.extend(check_d2_triangle(p))
    rep.extend(check_metric_chain(p))
    leq = quasiorder_leq_p(p)
    rep.extend(radial_convexity_report(leq, d0(p), "d0", "<=_p"))
    rep.extend(radial_convexity_report(leq, d1(p), "d1", "<=_p"))
    return rep


__all__ = [
    "PartialPseudoMetric", "InterlacedSpace", "InterlacedFlags", "SqrtPairMap",
    "validate_ppm", "is_partial_metric", "validate_interlaced", "intrinsic_dpq",
    "adjoint_q0", "adjoint_q1", "d0", "d1", "d2", "verify_lemma_dist2",
    "check_d2_triangle", "check_metric_chain", "order_pq", "classify_interlaced",
    "quotient", "check_order_metric_compat", "check_interlaced_invariants",
    "radial_convexity_report", "pseudometric_report", "verify_ppm",
]
