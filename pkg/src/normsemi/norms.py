"""Pseudo-norms on inverse semigroups and the structures they induce.

A pseudo-norm is a map x -> ||x|| >= 0 such that p(x, y) = ||x + y*|| is
a partial pseudo-metric: symmetric, submodular, with ||x + x*|| <= ||x + y*||.
On a monoid we also require ||0|| = 0.
"""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import kernel
from .algebra import (
    BicyclicCarrier,
    FiniteInverseSemigroup,
    is_clifford,
    local_monoid,
    natural_order,
)
from .errors import ConsistencyError, InputError, NotIdempotent, NotPseudoNorm
from .exact import format_rational, scale, workspace
from .metrics import d0 as _d0, d1 as _d1, d2 as _d2, radial_convexity_report
from .metrics import separation_failure
from .ordermaps import PairMap, quasiorder_leq_p, submodular_violation
from .report import Report, make_witness


@dataclass(frozen=True, eq=False)
class Valuation:
    """Nonnegative exact rationals indexed by carrier elements, as num / den."""

    num: np.ndarray
    den: int = 1
    labels: tuple | None = None

    def __post_init__(self):
        num = np.asarray(self.num)
        if num.ndim != 1:
            raise InputError("a valuation is a vector")
        if (num < 0).any():
            raise InputError("valuation values must be nonnegative")
        num.setflags(write=False)
        object.__setattr__(self, "num", num)

    @classmethod
    def from_values(cls, values, labels=None) -> "Valuation":
        num, den = scale(values)
        return cls(num, den, tuple(labels) if labels is not None else None)

    @property
    def n(self) -> int:
        return len(self.num)

    def __len__(self):
        return self.n

    def __getitem__(self, x) -> Fraction:
        return Fraction(int(self.num[x]), self.den)

    @property
    def values(self) -> list[Fraction]:
        return [self[x] for x in range(self.n)]

    def __eq__(self, other):
        return isinstance(other, Valuation) and self.values == other.values

    __hash__ = None

    def to_dict(self) -> dict:
        return {"kind": "valuation", "n": self.n, "values": [format_rational(v) for v in self.values]}


def as_valuation(v) -> Valuation:
    return v if isinstance(v, Valuation) else Valuation.from_values(v)


def _check_sizes(S: FiniteInverseSemigroup, v: Valuation):
    if v.n != S.n:
        raise InputError(f"valuation has {v.n} values but the carrier has {S.n} elements")


def _pm(S, V, den) -> PairMap:
    return PairMap(V, den, S.labels)


def induced_p(S: FiniteInverseSemigroup, v) -> PairMap:
    """p(x, y) = ||x + y*||."""
    v = as_valuation(v)
    _check_sizes(S, v)
    return _pm(S, v.num[S.sum_with_inverse()], v.den)


def induced_p_star(S: FiniteInverseSemigroup, v) -> PairMap:
    """p*(x, y) = ||x* + y||; equals p(x*, y*)."""
    v = as_valuation(v)
    _check_sizes(S, v)
    ps = _pm(S, v.num[S.table[S.inv, :]], v.den)
    p = induced_p(S, v)
    if not np.array_equal(ps.num, p.num[np.ix_(S.inv, S.inv)]):
        raise ConsistencyError("p*(x, y) != p(x*, y*)")
    return ps


def _els(S, **idx) -> dict:
    return {k: S.label(int(v)) for k, v in idx.items()}


def validate_pseudonorm(S: FiniteInverseSemigroup, v) -> Report:
    """The three pseudo-norm axioms on all pairs/triples (plus ||0|| = 0 on monoids)."""
    v = as_valuation(v)
    _check_sizes(S, v)
    rep = Report("validate pseudonorm")
    n = S.n
    p = induced_p(S, v)
    P = p.num
    W = P.diagonal()
    bad = np.argwhere(P != P.T)
    w = None
    if len(bad):
        x, y = bad[0]
        w = make_witness(_els(S, x=x, y=y), p[x, y], p[y, x], "=", axiom=1)
    rep.check("axiom 1: ||x+y*|| = ||y+x*||", not len(bad), n * n, "symmetry", w)
    bad = np.argwhere(W[:, None] > P)
    w = None
    if len(bad):
        x, y = bad[0]
        w = make_witness(_els(S, x=x, y=y), p[x, x], p[x, y], axiom=2)
    rep.check("axiom 2: ||x+x*|| <= ||x+y*||", not len(bad), n * n, "small self-distances", w)
    cnt, t = submodular_violation(p)
    w = None
    if t is not None:
        x, y, z = t
        w = make_witness(_els(S, x=x, y=y, z=z), p[x, y] + p[z, z], p[x, z] + p[z, y], axiom=3)
    rep.check("axiom 3: submodularity", cnt == 0, n**3,
              "||x+y*|| + ||z+z*|| <= ||x+z*|| + ||z+y*||", w)
    if S.is_monoid:
        z = S.identity
        rep.check("||0|| = 0", v.num[z] == 0, 1, "monoid normalization",
                  None if v.num[z] == 0 else make_witness(_els(S, x=z), v[z], 0, "="))
    return rep


def require_pseudonorm(S, v) -> Valuation:
    v = as_valuation(v)
    rep = validate_pseudonorm(S, v)
    if not rep.passed:
        a = rep.failures()[0]
        raise NotPseudoNorm(f"not a pseudo-norm: {a.name}", **(a.witness or {}))
    return v


def _weak_witness(S, v):
    V = v.num
    for e in S.idempotents:
        bad = np.flatnonzero(V[S.table[e, :]] != V[S.table[:, e]])
        if len(bad):
            return e, int(bad[0])
    return None


def _cyclic_witness(S, v):
    V = v.num[S.table]
    bad = np.argwhere(V != V.T)
    return None if len(bad) == 0 else (int(bad[0][0]), int(bad[0][1]))


def permutability(S: FiniteInverseSemigroup, v) -> tuple[bool, bool]:
    """(weakly permutable, cyclically permutable)."""
    v = as_valuation(v)
    _check_sizes(S, v)
    weak = _weak_witness(S, v) is None
    cyclic = _cyclic_witness(S, v) is None
    if cyclic and not weak:
        raise ConsistencyError("cyclic permutability without weak permutability")
    if is_clifford(S) and not weak:
        raise ConsistencyError("Clifford semigroup with a non weakly permutable valuation")
    return weak, cyclic


def _filtered_idempotents(S: FiniteInverseSemigroup) -> bool:
    """Every two idempotents have a common lower bound (e = g + e, f = g + f)."""
    E = list(S.idempotents)
    T = S.table
    below = {e: {g for g in E if T[g, e] == e} for e in E}
    return all(below[e] & below[f] for e in E for f in E)


def _power(S, x, m):
    y = x
    for _ in range(m - 1):
        y = S.add(y, x)
    return y


def verify_norm_properties(S: FiniteInverseSemigroup, v) -> Report:
    """The seven listed consequences of the axioms, plus subadditivity remarks."""
    v = require_pseudonorm(S, v)
    rep = Report("norm properties")
    n = S.n
    p = induced_p(S, v)
    P = p.num
    V = v.num
    T = S.table
    inv = S.inv
    dl = S.delta_table
    leqS = natural_order(S)
    leqp = quasiorder_leq_p(p)

    def pair_check(name, bad, sides):
        w = None
        if len(bad):
            x, y = (int(c) for c in bad[0])
            lhs, rhs = sides(x, y)
            w = make_witness(_els(S, x=x, y=y), lhs, rhs)
        rep.check(name, not len(bad), n * n, name, w)

    pair_check("(1) x <=_S y => x <=_p y", np.argwhere(leqS.matrix & ~leqp.matrix), lambda x, y: ("x <=_S y", "x <=_p y"))
    pair_check("(2) x <=_p y => ||x|| <= ||y||",
               np.argwhere(leqp.matrix & (V[:, None] > V[None, :])), lambda x, y: (v[x], v[y]))
    bad = np.flatnonzero(V[inv] != V)
    rep.check("(3) ||x*|| = ||x||", not len(bad), n, "(3)",
              make_witness(_els(S, x=bad[0]), v[inv[bad[0]]], v[bad[0]], "=") if len(bad) else None)
    Vd = V[dl]
    bad = np.flatnonzero(Vd > V)
    rep.check("(4) ||dx|| <= ||x||", not len(bad), n, "(4)",
              make_witness(_els(S, x=bad[0]), v[dl[bad[0]]], v[bad[0]]) if len(bad) else None)
    pair_check("(5) ||dx|| v ||dy|| <= ||x+y*||",
               np.argwhere(np.maximum(Vd[:, None], Vd[None, :]) > P),
               lambda x, y: (max(v[dl[x]], v[dl[y]]), p[x, y]))
    pair_check("(6) ||dx|| + ||dy|| <= 2 ||x+y*||",
               np.argwhere(Vd[:, None] + Vd[None, :] > 2 * P),
               lambda x, y: (v[dl[x]] + v[dl[y]], 2 * p[x, y]))
    # t(x, y) = ||x*|| + ||y|| - ||x* + y||
    (Vw,) = workspace(V)
    t = Vw[inv][:, None] + Vw[None, :] - Vw[T[inv, :]]
    td = t[np.ix_(dl, dl)]
    pair_check("(7) t(dx, dy) <= t(x, y)", np.argwhere(td > t),
               lambda x, y: (Fraction(int(td[x, y]), v.den), Fraction(int(t[x, y]), v.den)))
    filtered = _filtered_idempotents(S)
    rep.info("E(S) filtered", "filtered idempotents", holds=filtered)
    if filtered or S.is_monoid:
        pair_check("t(x, y) >= 0", np.argwhere(t < 0), lambda x, y: (0, Fraction(int(t[x, y]), v.den)))
        pair_check("||x+y|| <= ||x|| + ||y||", np.argwhere(V[T] > V[:, None] + V[None, :]),
                   lambda x, y: (v[S.add(x, y)], v[x] + v[y]))
    homogeneous = all(m * v[x] == v[_power(S, x, m)] for x in range(n) for m in range(1, n + 2))
    if homogeneous:
        bad = [e for e in S.idempotents if V[e] != 0]
        rep.check("homogeneous => idempotents have norm 0", not bad, len(S.idempotents), "homogeneity",
                  make_witness(_els(S, x=bad[0]), v[bad[0]], 0, "=") if bad else None)
    else:
        rep.info("homogeneity", "homogeneity", homogeneous=False)
    return rep


def restricted_norm(S: FiniteInverseSemigroup, v, e: int) -> Valuation:
    """||x||_e = ||x|| - ||e|| on the local monoid S_e (labels from S_e)."""
    v = as_valuation(v)
    _check_sizes(S, v)
    if S.add(e, e) != e:
        raise NotIdempotent("not idempotent", e=S.label(e))
    Se = local_monoid(S, e)
    vals = [v[x] - v[e] for x in Se.embedding]
    neg = [x for x, val in zip(Se.embedding, vals) if val < 0]
    if neg:
        raise NotPseudoNorm("||x||_e < 0", e=S.label(e), x=S.label(neg[0]))
    return Valuation.from_values(vals, Se.labels)


def separation_witness(S: FiniteInverseSemigroup, v):
    """First (e, x) with x in S_e, x != e and ||x|| = ||e||, or None."""
    v = as_valuation(v)
    T = S.table
    for e in S.idempotents:
        local = np.flatnonzero((T[:, e] == np.arange(S.n)) & (T[e, :] == np.arange(S.n)))
        for x in local:
            if x != e and v.num[x] == v.num[e]:
                return e, int(x)
    return None


def is_norm(S: FiniteInverseSemigroup, v) -> bool:
    v = require_pseudonorm(S, v)
    return separation_witness(S, v) is None


@dataclass
class NormClassification:
    is_pseudonorm: bool
    weakly_permutable: bool
    cyclically_permutable: bool
    is_norm: bool
    d1_is_metric: bool
    p_is_partial_metric: bool
    leq_p_antisymmetric: bool
    leq_p_equals_leq_S: bool
    restricted_norms: bool = False
    witnesses: dict = field(default_factory=dict)

    LADDER = ("is_norm", "d1_is_metric", "p_is_partial_metric", "leq_p_antisymmetric", "leq_p_equals_leq_S")

    @property
    def ladder(self) -> tuple:
        return tuple(getattr(self, k) for k in self.LADDER)

    @property
    def ladder_agrees(self) -> bool:
        return len(set(self.ladder)) == 1

    def to_dict(self) -> dict:
        d = {"kind": "classification"}
        d.update({k: v for k, v in asdict(self).items() if k != "witnesses"})
        d["witnesses"] = self.witnesses
        return d


def classify(S: FiniteInverseSemigroup, v) -> NormClassification:
    """All classification flags.  Under weak permutability the five ladder
    flags must coincide; a disagreement raises ConsistencyError."""
    v = as_valuation(v)
    _check_sizes(S, v)
    wit = {}
    pseudo = validate_pseudonorm(S, v).passed
    weak_w, cyc_w = _weak_witness(S, v), _cyclic_witness(S, v)
    if weak_w:
        wit["weakly_permutable"] = _els(S, e=weak_w[0], x=weak_w[1])
    if cyc_w:
        wit["cyclically_permutable"] = _els(S, x=cyc_w[0], y=cyc_w[1])
    p = induced_p(S, v)
    sep = separation_witness(S, v)
    if sep:
        wit["is_norm"] = _els(S, e=sep[0], x=sep[1])
    W = p.num.diagonal().astype(object)
    d1m = 2 * p.num.astype(object) - W[:, None] - W[None, :]
    zero = np.argwhere((d1m == 0) & ~np.eye(S.n, dtype=bool))
    if len(zero):
        wit["d1_is_metric"] = _els(S, x=zero[0][0], y=zero[0][1])
    psep = separation_failure(p)
    if psep:
        wit["p_is_partial_metric"] = _els(S, x=psep[0], y=psep[1])
    leqp = quasiorder_leq_p(p)
    both = np.argwhere(leqp.matrix & leqp.matrix.T & ~np.eye(S.n, dtype=bool))
    if len(both):
        wit["leq_p_antisymmetric"] = _els(S, x=both[0][0], y=both[0][1])
    diff = leqp.first_difference(natural_order(S))
    if diff:
        wit["leq_p_equals_leq_S"] = _els(S, x=diff[0], y=diff[1])
    restricted = True
    if pseudo:
        for e in S.idempotents:
            Se = local_monoid(S, e)
            ve = restricted_norm(S, v, e)
            if separation_witness(Se, ve) is not None:
                restricted = False
                break
    c = NormClassification(
        is_pseudonorm=pseudo,
        weakly_permutable=weak_w is None,
        cyclically_permutable=cyc_w is None,
        is_norm=sep is None,
        d1_is_metric=not len(zero),
        p_is_partial_metric=psep is None,
        leq_p_antisymmetric=not len(both),
        leq_p_equals_leq_S=diff is None,
        restricted_norms=restricted and pseudo,
        witnesses=wit,
    )
    if pseudo and c.weakly_permutable:
        if not c.ladder_agrees or c.restricted_norms != c.is_norm:
            raise ConsistencyError("classification ladder disagrees",
                                   **{k: getattr(c, k) for k in c.LADDER})
        if c.is_norm and quasiorder_leq_p(induced_p_star(S, v)) != leqp:
            raise ConsistencyError("<=_p* differs from <=_p on a normed instance")
    return c


def induced_metrics(S: FiniteInverseSemigroup, v):
    """(d0, d1, d2) of the induced partial pseudo-metric; d2 as a SqrtPairMap."""
    v = require_pseudonorm(S, v)
    p = induced_p(S, v)
    return _d0(p), _d1(p), _d2(p)


def subinvariance_violation(S: FiniteInverseSemigroup, D: np.ndarray):
    """(count, first (x, y, z)) with D[x+y*, z+y*] > D[x, z]."""
    A = S.sum_with_inverse()  # A[x, y] = x + y*
    AT = A.T  # AT[y, z] = z + y*

    def mask(lo, hi):
        lhs = D[A[lo:hi, :, None], AT[None, :, :]]
        return lhs > D[lo:hi, None, :]

    return kernel.scan(S.n, S.n * S.n, mask)


def _subinv_report(rep, S, d, name):
    cnt, t = subinvariance_violation(S, workspace(d.num)[0])
    w = None
    if t is not None:
        x, y, z = t
        A = S.sum_with_inverse()
        w = make_witness(_els(S, x=x, y=y, z=z), d[A[x, y], A[z, y]], d[x, z])
    return rep.check(f"{name} right-subinvariant", cnt == 0, S.n**3, "d(x+y*, z+y*) <= d(x,z)", w)


def check_subinvariance_and_convexity(S: FiniteInverseSemigroup, v) -> Report:
    v = require_pseudonorm(S, v)
    rep = Report("subinvariance and convexity")
    n = S.n
    p = induced_p(S, v)
    D0, D1, D2 = _d0(p), _d1(p), _d2(p)
    leqS = natural_order(S)
    dl = S.delta_table
    for name, d in (("d0", D0), ("d1", D1)):
        _subinv_report(rep, S, d, name)
        rep.extend(radial_convexity_report(leqS, d, name, "<=_S"))
    # d2: measured, never asserted
    cnt, _ = subinvariance_violation(S, workspace(D2.radicand.num)[0])
    rep.info("d2 right-subinvariant (measured)", "open question", holds=cnt == 0, violations=cnt)
    # d0(x, e) = ||x||_e on S_e
    T = S.table
    bad = None
    checked = 0
    for e in S.idempotents:
        for x in range(n):
            if T[x, e] == x and T[e, x] == x:
                checked += 1
                if D0[x, e] != v[x] - v[e] and bad is None:
                    bad = (x, e)
    rep.check("d0(x,e) = ||x||_e", bad is None, checked, "d0(x,e) = ||x||_e",
              make_witness(_els(S, x=bad[0], e=bad[1]), D0[bad], v[bad[0]] - v[bad[1]], "=") if bad else None)
    # common lower bound => d(x, y) = d(dx, dy)
    M = leqS.matrix.astype(np.int64)
    common = (M.T @ M) > 0
    pairs = np.argwhere(common)
    for name, mat in (("d0", D0.num), ("d1", D1.num), ("d2", D2.radicand.num)):
        bad = [(int(x), int(y)) for x, y in pairs if mat[x, y] != mat[dl[x], dl[y]]]
        rep.check(f"{name}(x,y) = {name}(dx,dy) with a common lower bound", not bad, len(pairs),
                  "common lower bound", make_witness(_els(S, x=bad[0][0], y=bad[0][1])) if bad else None)
    # quantitative continuity of the norm:  ||y|| >= ||x|| + w(y) - p(x,y)  and  ||y|| <= p(y, x* + x)
    P = p.num
    V = v.num
    W = P.diagonal()
    bad = np.argwhere(V[None, :] < V[:, None] + W[None, :] - P)
    rep.check("||y|| >= ||x|| + w(y) - p(x,y)", not len(bad), n * n, "norm continuity",
              make_witness(_els(S, x=bad[0][0], y=bad[0][1])) if len(bad) else None)
    dstar = dl[S.inv]  # x* + x
    bad = np.argwhere(V[None, :] > P[:, dstar].T)
    rep.check("||y|| <= p(y, x*+x)", not len(bad), n * n, "norm continuity",
              make_witness(_els(S, x=bad[0][0], y=bad[0][1])) if len(bad) else None)
    weak, cyclic = permutability(S, v)
    # delta continuity surrogate
    Vd = V[dl]
    DD = V[T[np.ix_(dl, dl)]]  # ||dy + dx|| indexed [y, x]
    bad = np.argwhere(DD < Vd[None, :])
    rep.check("||dx|| <= ||dy + dx||", not len(bad), n * n, "delta continuity",
              make_witness(_els(S, y=bad[0][0], x=bad[0][1])) if len(bad) else None)
    A = S.sum_with_inverse()
    R = V[T[A, dl[:, None]]].T  # [y, x] -> ||x + y* + dx||
    bad = np.argwhere(DD + Vd[None, :] > P + R)
    rep.check("||dy + dx|| + ||dx|| <= ||y + x*|| + ||x + y* + dx||", not len(bad), n * n,
              "delta continuity", make_witness(_els(S, y=bad[0][0], x=bad[0][1])) if len(bad) else None)
    if weak:
        bad = np.argwhere(DD + Vd[None, :] > 2 * P)
        rep.check("||dy + dx|| <= 2 ||y + x*|| - ||dx||", not len(bad), n * n, "delta continuity",
                  make_witness(_els(S, y=bad[0][0], x=bad[0][1]),
                               v[T[dl[bad[0][0]], dl[bad[0][1]]]] if len(bad) else 0,
                               2 * p[bad[0][0], bad[0][1]] - v[dl[bad[0][1]]]) if len(bad) else None)
    if cyclic:
        inv = S.inv
        bad = np.argwhere(D1.num != D1.num[np.ix_(inv, inv)])
        rep.check("d1(x,y) = d1(x*,y*)", not len(bad), n * n, "cyclic permutability",
                  make_witness(_els(S, x=bad[0][0], y=bad[0][1])) if len(bad) else None)
        rep.extend(joint_continuity_report(S, D1))
    else:
        rep.info("joint continuity of +", "cyclic permutability", applicable=False)
    return rep


def joint_continuity_report(S: FiniteInverseSemigroup, D1: PairMap) -> Report:
    """d1(x1 + x2, y1 + y2) <= d1(x1, y1) + d1(x2, y2) on all quadruples."""
    rep = Report("joint continuity")
    n = S.n
    T = S.table
    (D,) = workspace(D1.num)

    def mask(lo, hi):
        x1 = np.arange(lo, hi)[:, None, None, None]
        y1 = np.arange(n)[None, :, None, None]
        x2 = np.arange(n)[None, None, :, None]
        y2 = np.arange(n)[None, None, None, :]
        lhs = D[T[x1, x2], T[y1, y2]]
        return lhs > D[x1, y1] + D[x2, y2]

    cnt, t = kernel.scan(n, n**3, mask)
    w = None
    if t is not None:
        a, b, c, d = t
        w = make_witness(_els(S, x1=a, y1=b, x2=c, y2=d), D1[T[a, c], T[b, d]], D1[a, b] + D1[c, d])
    rep.check("d1(x1+x2, y1+y2) <= d1(x1,y1) + d1(x2,y2)", cnt == 0, n**4, "joint continuity", w)
    return rep


# ----------------------------------------------------------- bicyclic


GROUP_NORMS = {
    "l1": lambda g: sum(abs(c) for c in g),
    "linf": lambda g: max((abs(c) for c in g), default=0),
}


@dataclass(frozen=True)
class BicyclicNorm:
    """||(a, b)|| = ||a - b||_G with an L1 or Linf length on Z^k."""

    carrier: BicyclicCarrier
    group_norm: str = "l1"

    def __post_init__(self):
        if self.group_norm not in GROUP_NORMS:
            raise InputError(f"unknown group norm {self.group_norm!r} (use l1 or linf)")

    def group(self, g) -> int:
        return GROUP_NORMS[self.group_norm](g)

    def __call__(self, x) -> int:
        a, b = x
        return self.group(tuple(ai - bi for ai, bi in zip(a, b)))


def bicyclic_pseudonorm(k: int, group_norm: str = "l1") -> BicyclicNorm:
    return BicyclicNorm(BicyclicCarrier(k), group_norm)


def verify_bicyclic_norm(norm: BicyclicNorm, samples: int = 10_000, seed: int = 0, bound: int = 100) -> Report:
    """Sampled pseudo-norm axioms, subadditivity and norm preservation of i_G."""
    B = norm.carrier
    rng = random.Random(seed)
    rep = Report(f"verify pseudonorm bicyclic k={B.k} {norm.group_norm}", exhaustive=False,
                 seed=seed, samples=samples)
    fails, counts = {}, {}

    def check(name, ok, lhs=None, rhs=None, **els):
        counts[name] = counts.get(name, 0) + 1
        if not ok and name not in fails:
            fails[name] = make_witness({k: B.label(v) if isinstance(v[0], tuple) else str(list(v))
                                        for k, v in els.items()}, lhs, rhs)

    add, star, nv = B.add, B.star, norm
    for _ in range(samples):
        x, y, z = B.sample(rng, bound), B.sample(rng, bound), B.sample(rng, bound)
        pxy, pyx = nv(add(x, star(y))), nv(add(y, star(x)))
        check("axiom 1: ||x+y*|| = ||y+x*||", pxy == pyx, pxy, pyx, x=x, y=y)
        check("axiom 2: ||x+x*|| <= ||x+y*||", nv(add(x, star(x))) <= pxy, nv(add(x, star(x))), pxy, x=x, y=y)
        lhs = pxy + nv(add(z, star(z)))
        rhs = nv(add(x, star(z))) + nv(add(z, star(y)))
        check("axiom 3: submodularity", lhs <= rhs, lhs, rhs, x=x, y=y, z=z)
        check("subadditivity", nv(add(x, y)) <= nv(x) + nv(y), nv(add(x, y)), nv(x) + nv(y), x=x, y=y)
        check("||x*|| = ||x||", nv(star(x)) == nv(x), nv(star(x)), nv(x), x=x)
        e = B.sample_idempotent(rng, bound)
        check("||(a,a)|| = 0", nv(e) == 0, nv(e), 0, e=e)
        g = tuple(rng.randint(-bound, bound) for _ in range(B.k))
        check("||i_G(g)|| = ||g||_G", nv(B.embed(g)) == norm.group(g), nv(B.embed(g)), norm.group(g), g=g)
    check("||0|| = 0", nv(B.identity) == 0, nv(B.identity), 0, x=B.identity)
    for name, cnt in counts.items():
        rep.check(name, name not in fails, cnt, name, fails.get(name))
    return rep


def bicyclic_induced_p(norm: BicyclicNorm, x, y) -> int:
    B = norm.carrier
    return norm(B.add(x, B.star(y)))


__all__ = [
    "Valuation", "NormClassification", "BicyclicNorm", "induced_p", "induced_p_star",
    "validate_pseudonorm", "require_pseudonorm", "permutability", "verify_norm_properties",
    "restricted_norm", "is_norm", "separation_witness", "classify", "induced_metrics",
    "check_subinvariance_and_convexity", "joint_continuity_report", "subinvariance_violation",
    "bicyclic_pseudonorm", "verify_bicyclic_norm", "bicyclic_induced_p",
]
