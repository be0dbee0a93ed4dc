"""Norms and metrics on Clifford semigroups.

On a Clifford semigroup a pseudo-norm gives right-subinvariant,
skew-convex pseudo-metrics d0 and d1; conversely a right-subinvariant
skew-convex pseudo-metric d on a Clifford monoid gives the pseudo-norm
v(x) = d(x, 0) + d(dx, 0).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernel
from .algebra import FiniteInverseSemigroup, is_clifford, natural_order
from .errors import (
    ConsistencyError,
    InputError,
    NoIdentity,
    NotClifford,
    NotRightSubinvariant,
    NotSkewConvex,
    PreconditionViolated,
)
from .exact import workspace
from .metrics import SqrtPairMap, d0 as _d0, d1 as _d1, d2 as _d2, pseudometric_report
from .metrics import radial_convexity_violation
from .norms import (
    Valuation,
    as_valuation,
    induced_p,
    is_norm,
    require_pseudonorm,
    subinvariance_violation,
    validate_pseudonorm,
    verify_norm_properties,
)
from .ordermaps import PairMap, as_pairmap
from .report import Report, make_witness


def _els(S, **idx) -> dict:
    return {k: S.label(int(v)) for k, v in idx.items()}


def _require_clifford(S: FiniteInverseSemigroup):
    if not is_clifford(S):
        T, inv = S.table, S.inv
        x = next(x for x in range(S.n) if T[x, inv[x]] != T[inv[x], x])
        raise NotClifford("x + x* != x* + x", x=S.label(x))


def _require_size(S, d):
    if d.n != S.n:
        raise InputError(f"metric has {d.n} points but the carrier has {S.n} elements")


@dataclass
class SkewConvexReport:
    axiom1: bool
    axiom2: bool
    right_subinvariant: bool
    radially_convex: bool
    witnesses: dict = field(default_factory=dict)
    checked: dict = field(default_factory=dict)

    @property
    def skew_convex(self) -> bool:
        return self.axiom1 and self.axiom2

    @property
    def passed(self) -> bool:
        return self.skew_convex and self.right_subinvariant and self.radially_convex

    def to_report(self, name: str = "d") -> Report:
        rep = Report(f"skew-convexity of {name}")
        anchors = {
            "axiom1": "d(x,y) >= d(dx,dy)",
            "axiom2": "d(x,z) = d(dx,dy) + d(x+y*, z+y*) when dx <= dy <= dz",
            "right_subinvariant": "d(x+y*, z+y*) <= d(x,z)",
            "radially_convex": "d(x,z) = d(x,y) + d(y,z) on <=_S chains",
        }
        for key, anchor in anchors.items():
            rep.check(f"{name} {key.replace('_', ' ')}", getattr(self, key),
                      self.checked.get(key, 0), anchor, self.witnesses.get(key))
        return rep


def _delta_chains(S):
    """M[x, y] = dx <=_S dy."""
    L = natural_order(S).matrix
    dl = S.delta_table
    return L[np.ix_(dl, dl)]


def _skew_axiom2_violation(S, D, equal):
    """First (x, y, z) with dx <= dy <= dz where ``equal`` fails."""
    M = _delta_chains(S)
    dl = S.delta_table
    A = S.sum_with_inverse()
    AT = A.T
    n = S.n

    def mask(lo, hi):
        x = np.arange(lo, hi)[:, None, None]
        y = np.arange(n)[None, :, None]
        chain = M[lo:hi, :, None] & M[None, :, :]
        lhs = D[x, np.arange(n)[None, None, :]]
        b = D[dl[x], dl[y]]
        c = D[A[lo:hi, :, None], AT[None, :, :]]
        return chain & ~equal(lhs, b, c)

    return kernel.scan(n, n * n, mask)


def is_skew_convex(S: FiniteInverseSemigroup, d) -> SkewConvexReport:
    """Both skew-convexity axioms, right-subinvariance and radial convexity, exactly."""
    _require_clifford(S)
    d = as_pairmap(d)
    _require_size(S, d)
    (D,) = workspace(d.num)
    n = S.n
    dl = S.delta_table
    A = S.sum_with_inverse()
    wit = {}
    checked = {"axiom1": n * n, "right_subinvariant": n**3}
    bad = np.argwhere(D < D[np.ix_(dl, dl)])
    if len(bad):
        x, y = bad[0]
        wit["axiom1"] = make_witness(_els(S, x=x, y=y), d[dl[x], dl[y]], d[x, y])
    cnt, t = _skew_axiom2_violation(S, D, lambda a, b, c: a == b + c)
    M = _delta_chains(S)
    checked["axiom2"] = int((M.astype(np.int64) @ M.astype(np.int64)).sum())  # chains dx <= dy <= dz
    if t is not None:
        x, y, z = t
        wit["axiom2"] = make_witness(_els(S, x=x, y=y, z=z), d[x, z],
                                     d[dl[x], dl[y]] + d[A[x, y], A[z, y]], "=")
    cnt2, t2 = subinvariance_violation(S, D)
    if t2 is not None:
        x, y, z = t2
        wit["right_subinvariant"] = make_witness(_els(S, x=x, y=y, z=z), d[A[x, y], A[z, y]], d[x, z])
    leq = natural_order(S)
    cnt3, t3 = radial_convexity_violation(leq, d)
    checked["radially_convex"] = len(leq.chains3())
    if t3 is not None:
        x, y, z = t3
        wit["radially_convex"] = make_witness(_els(S, x=x, y=y, z=z), d[x, z], d[x, y] + d[y, z], "=")
    rep = SkewConvexReport(
        axiom1="axiom1" not in wit,
        axiom2=cnt == 0,
        right_subinvariant=cnt2 == 0,
        radially_convex=cnt3 == 0,
        witnesses=wit,
        checked=checked,
    )
    if rep.skew_convex and not rep.radially_convex:
        raise ConsistencyError("skew-convex but not radially convex", **wit["radially_convex"])
    return rep


def measure_d2_skew(S: FiniteInverseSemigroup, D2: SqrtPairMap) -> dict:
    """Skew-convexity and right-subinvariance of d2, measured exactly (never asserted)."""
    (R,) = workspace(D2.radicand.num, degree=2)
    dl = S.delta_table
    axiom1 = not (R < R[np.ix_(dl, dl)]).any()

    def sqrt_sum_equal(a, b, c):
        # sqrt a = sqrt b + sqrt c  <=>  a - b - c >= 0 and (a - b - c)^2 = 4 b c
        s = a - b - c
        return (s >= 0) & (s * s == 4 * b * c)

    cnt, _ = _skew_axiom2_violation(S, R, sqrt_sum_equal)
    cnt2, _ = subinvariance_violation(S, R)
    return {"axiom1": axiom1, "axiom2": cnt == 0, "right_subinvariant": cnt2 == 0,
            "axiom2_violations": cnt, "subinvariance_violations": cnt2}


def verify_dclifford(S: FiniteInverseSemigroup, v) -> Report:
    """d0 and d1 of a pseudo-norm on a Clifford semigroup are right-subinvariant and skew-convex."""
    _require_clifford(S)
    v = require_pseudonorm(S, v)
    rep = Report("verify dclifford")
    p = induced_p(S, v)
    for name, d in (("d0", _d0(p)), ("d1", _d1(p))):
        rep.extend(is_skew_convex(S, d).to_report(name))
    m = measure_d2_skew(S, _d2(p))
    rep.info("d2 skew-convexity (measured)", "open question", **m)
    return rep


def _precondition_checks(S: FiniteInverseSemigroup, d: PairMap):
    _require_clifford(S)
    if not S.is_monoid:
        raise NoIdentity("the construction needs an identity element")
    pm = pseudometric_report(d, "d")
    if not pm.passed:
        a = pm.failures()[0]
        raise PreconditionViolated(f"d is not a pseudo-metric: {a.name}", **(a.witness or {}))
    sk = is_skew_convex(S, d)
    if not sk.right_subinvariant:
        raise NotRightSubinvariant("d is not right-subinvariant", **sk.witnesses["right_subinvariant"])
    if not sk.skew_convex:
        key = "axiom1" if not sk.axiom1 else "axiom2"
        raise NotSkewConvex(f"d violates skew-convexity ({key})", axiom=key, **sk.witnesses[key])
    return sk


def _values(S, d: PairMap) -> list[Fraction]:
    z = S.identity
    dl = S.delta_table
    return [d[x, z] + d[dl[x], z] for x in range(S.n)]


def norm_from_metric(S: FiniteInverseSemigroup, d) -> Valuation:
    """v(x) = d(x, 0) + d(dx, 0) for a right-subinvariant skew-convex d."""
    v, rep = bridge_metric_to_norm(S, d)
    if not rep.passed:
        a = rep.failures()[0]
        raise ConsistencyError(f"metric-to-norm post-condition fails: {a.name}", **(a.witness or {}))
    return v


def bridge_metric_to_norm(S: FiniteInverseSemigroup, d) -> tuple[Valuation, Report]:
    """Build v from d, then check every intermediate claim of the construction."""
    d = as_pairmap(d)
    _require_size(S, d)
    _precondition_checks(S, d)
    rep = Report("bridge metric-to-norm")
    n = S.n
    z = S.identity
    dl = S.delta_table
    rep.check("d right-subinvariant", True, n**3, "d(x+y*, z+y*) <= d(x,z)")
    rep.check("d skew-convex", True, n**3, "skew-convexity")
    vals = _values(S, d)
    v = Valuation.from_values(vals, S.labels)
    dd = d + PairMap(d.num[np.ix_(dl, dl)], d.den, d.labels)  # d'(x,y) = d(x,y) + d(dx,dy)
    D, DD = d.num.astype(object) * dd.den, dd.num.astype(object) * d.den
    bad = np.argwhere((D > DD) | (DD > 2 * D))
    rep.check("d <= d' <= 2d", not len(bad), n * n, "d <= d' <= 2d",
              make_witness(_els(S, x=bad[0][0], y=bad[0][1])) if len(bad) else None)
    sk = is_skew_convex(S, dd)
    rep.check("d' right-subinvariant", sk.right_subinvariant, n**3, "d' right-subinvariant",
              sk.witnesses.get("right_subinvariant"))
    rep.check("d' skew-convex", sk.skew_convex, n**3, "d' skew-convex",
              sk.witnesses.get("axiom1") or sk.witnesses.get("axiom2"))
    bad = [x for x in range(n) if v[x] != dd[x, z]]
    rep.check("v(x) = d'(x, 0)", not bad, n, "v = d'(., 0)",
              make_witness(_els(S, x=bad[0]), v[bad[0]], dd[bad[0], z], "=") if bad else None)
    bad = [(x, y) for x in range(n) for y in range(n) if abs(v[x] - v[y]) > dd[x, y]]
    rep.check("|v(x) - v(y)| <= d'(x,y)", not bad, n * n, "v Lipschitz for d'",
              make_witness(_els(S, x=bad[0][0], y=bad[0][1])) if bad else None)
    leq = natural_order(S)
    bad = [(x, y) for x, y in leq.pairs() if v[x] > v[y]]
    rep.check("v order-preserving", not bad, len(leq.pairs()), "v order-preserving",
              make_witness(_els(S, x=bad[0][0], y=bad[0][1]), v[bad[0][0]], v[bad[0][1]]) if bad else None)
    bad = [(x, y) for x in range(n) for y in range(n) if v[S.add(x, y)] > v[x] + v[y]]
    rep.check("v subadditive", not bad, n * n, "v(x+y) <= v(x) + v(y)",
              make_witness(_els(S, x=bad[0][0], y=bad[0][1])) if bad else None)
    rep.check("v(0) = 0", v[z] == 0, 1, "v(0) = 0")
    rep.extend(validate_pseudonorm(S, v), prefix="v: ")
    if rep.passed:
        rep.extend(verify_norm_properties(S, v), prefix="v: ")
        metric = not ((d.num == 0) & ~np.eye(n, dtype=bool)).any()
        rep.check("v is a norm iff d is a metric", is_norm(S, v) == metric, n, "separation")
    E = set(S.idempotents)
    d_at_0 = [d[x, z] for x in range(n)]
    if len(E) == n and n > 1:
        rep.info("semilattice: v = 2 d(., 0)", "factor-2 observation",
                 holds=all(v[x] == 2 * d_at_0[x] for x in range(n)),
                 v_equals_d0=all(v[x] == d_at_0[x] for x in range(n)))
    if E == {z}:
        rep.info("group: v = d(., 0)", "group specialization",
                 holds=all(v[x] == d_at_0[x] for x in range(n)))
    return v, rep


def roundtrip_check(S: FiniteInverseSemigroup, v) -> Report:
    """v -> d1 -> v' must give v' = v exactly on a Clifford monoid with v(0) = 0."""
    _require_clifford(S)
    if not S.is_monoid:
        raise NoIdentity("the roundtrip needs an identity element")
    v = require_pseudonorm(S, as_valuation(v))
    rep = Report("bridge roundtrip")
    n = S.n
    z = S.identity
    dl = S.delta_table
    D1 = _d1(induced_p(S, v))
    # independent evaluation of the two halves
    bad = [x for x in range(n) if D1[x, z] != v[x] - v[dl[x]] / 2]
    rep.check("d1(x,0) = ||x|| - ||dx||/2", not bad, n, "roundtrip oracle",
              make_witness(_els(S, x=bad[0]), D1[bad[0], z], v[bad[0]] - v[dl[bad[0]]] / 2, "=") if bad else None)
    bad = [x for x in range(n) if D1[dl[x], z] != v[dl[x]] / 2]
    rep.check("d1(dx,0) = ||dx||/2", not bad, n, "roundtrip oracle",
              make_witness(_els(S, x=bad[0]), D1[dl[bad[0]], z], v[dl[bad[0]]] / 2, "=") if bad else None)
    v2, sub = bridge_metric_to_norm(S, D1)
    rep.extend(sub, prefix="metric-to-norm: ")
    bad = [x for x in range(n) if v2[x] != v[x]]
    rep.check("v' = v", not bad, n, "roundtrip identity",
              make_witness(_els(S, x=bad[0]), v2[bad[0]], v[bad[0]], "=") if bad else None)
    return rep


def reproduce_counter_family(k_max: int, norm_x=1, library_samples=(2, 3, 10, 1000)) -> Report:
    """d2 against d0 on the pair (x, lambda x) of a scaled chain, lambda = 1 + 1/k.

    With ||x|| = a and ||lambda x|| = lambda a, everything is scaled by k so
    that the sweep over k = 2..k_max runs in int64:
        w(x) = k a,  w(lambda x) = p(x, lambda x) = (k + 1) a   (over k)
        d2^2 = (k + 1) a^2,  d0^2 = a^2,  2 d1 = a               (over k^2, k^2, k)
    A few k are also pushed through the library on the chain 0 < x < lambda x.
    """
    if k_max < 2:
        raise InputError("k_max must be >= 2")
    a = Fraction(norm_x)
    if a <= 0:
        raise InputError("||x|| must be positive")
    rep = Report(f"counter family k=2..{k_max}", samples=k_max - 1)
    an = a.numerator  # every check is homogeneous, so the denominator of a cancels
    k = np.arange(2, k_max + 1, dtype=object if k_max > 10**8 else np.int64)
    wx, wy = k * an, (k + 1) * an
    p = wy
    r2 = p * p - wx * wy  # k^2 d2^2 (in units of 1/scale_^2)
    r0 = (p - np.minimum(wx, wy)) ** 2  # k^2 d0^2
    d1x2 = 2 * p - wx - wy  # 2 k d1
    # paper's displayed values, times k^2:  lambda (lambda - 1) a^2 = (k+1) a^2 / k^2,  (lambda - 1)^2 a^2 = a^2 / k^2
    want2 = (k + 1) * an * an
    want0 = np.full_like(k, an * an)
    ok2 = r2 == want2
    ok0 = r0 == want0
    ratio = r2 >= k * r0  # d2^2 / d0^2 = k + 1 >= k
    ratio_exact = r2 == (k + 1) * r0
    chain1 = (p - np.minimum(wx, wy)) <= d1x2  # d0 <= 2 d1
    chain2 = d1x2 <= 2 * (p - np.minimum(wx, wy))  # 2 d1 <= 2 d0
    chain3 = (d1x2 <= 0) | (d1x2 * d1x2 <= 4 * r2)  # 2 d1 <= 2 d2
    cnt = len(k)

    def first_bad(mask):
        idx = np.flatnonzero(~mask)
        if not len(idx):
            return None
        kk = int(k[idx[0]])
        return make_witness({"k": str(kk)})

    rep.check("d2^2 = lambda (lambda - 1) ||x||^2", bool(ok2.all()), cnt, "counter family d2", first_bad(ok2))
    rep.check("d0^2 = (lambda - 1)^2 ||x||^2", bool(ok0.all()), cnt, "counter family d0", first_bad(ok0))
    rep.check("d2^2 / d0^2 = lambda / (lambda - 1) >= k", bool((ratio & ratio_exact).all()), cnt,
              "d2 not equivalent to d0", first_bad(ratio & ratio_exact))
    rep.check("metric chain on the family", bool((chain1 & chain2 & chain3).all()), cnt,
              "d0 <= 2 d1 <= 2 (d0 min d2)", first_bad(chain1 & chain2 & chain3))
    # library path on real chain semilattices 0 < x < lambda x
    from .algebra import chain
    from .metrics import check_metric_chain

    S = chain(3)
    lib_ok, checked = True, 0
    for kk in sorted({s for s in library_samples if 2 <= s <= k_max} | {k_max}):
        lam = Fraction(kk + 1, kk)
        v = Valuation.from_values([0, a, lam * a])
        pm = induced_p(S, v)
        D0, D2 = _d0(pm), _d2(pm)
        checked += 1
        good = (D2.radicand[1, 2] == lam * (lam - 1) * a * a
                and D0[1, 2] ** 2 == (lam - 1) ** 2 * a * a
                and D2.radicand[1, 2] >= kk * D0[1, 2] ** 2
                and check_metric_chain(pm).passed
                and validate_pseudonorm(S, v).passed)
        lib_ok = lib_ok and good
    rep.check("library evaluation on chain instances", lib_ok, checked, "counter family via induced metrics")
    return rep


__all__ = [
    "SkewConvexReport", "is_skew_convex", "measure_d2_skew", "verify_dclifford",
    "norm_from_metric", "bridge_metric_to_norm", "roundtrip_check", "reproduce_counter_family",
]
