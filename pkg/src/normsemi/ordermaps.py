"""Exact pair-maps, submodularity, induced quasiorders and transforms.

A map p : X x X -> Q is *submodular* when

    p(x, y) + p(z, z) <= p(x, z) + p(z, y)      for all x, y, z,

and w_p(x) = p(x, x) is its diagonal.  Only finite maps are supported;
-inf is rejected at load time.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np

from . import kernel
from .algebra import Relation
from .errors import (
    ConsistencyError,
    InputError,
    NoUpperBound,
    PreconditionDiagNotDominated,
    PreconditionViolated,
)
from .exact import format_rational, int_array, parse_rational, scale, workspace
from .report import Report, make_witness


class PairMap:
    """An n x n matrix of exact rationals, stored as integers over one denominator."""

    __slots__ = ("num", "den", "labels")

    def __init__(self, num, den: int = 1, labels=None):
        num = np.asarray(num)
        if num.ndim != 2 or num.shape[0] != num.shape[1]:
            raise InputError(f"pair-map must be square, got shape {num.shape}")
        den = int(den)
        if den <= 0:
            raise InputError("denominator must be positive")
        flat = [int(v) for v in num.ravel().tolist()]
        g = reduce(math.gcd, flat, den)
        if g > 1:
            flat = [v // g for v in flat]
            den //= g
        self.num = int_array(flat, num.shape)
        self.num.setflags(write=False)
        self.den = den
        n = num.shape[0]
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise InputError("labels must name every point")

    @classmethod
    def from_values(cls, rows, labels=None) -> "PairMap":
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InputError("pair-map must be square")
        flat = [v for r in rows for v in r]
        num, den = scale(flat, (n, n))
        return cls(num, den, labels)

    @classmethod
    def from_function(cls, n: int, fn, labels=None) -> "PairMap":
        return cls.from_values([[fn(x, y) for y in range(n)] for x in range(n)], labels)

    @property
    def n(self) -> int:
        return self.num.shape[0]

    def __getitem__(self, xy) -> Fraction:
        x, y = xy
        return Fraction(int(self.num[x, y]), self.den)

    def w(self, x: int) -> Fraction:
        return self[x, x]

    @property
    def diag(self) -> list[Fraction]:
        return [self.w(x) for x in range(self.n)]

    @property
    def values(self) -> list[list[Fraction]]:
        return [[self[x, y] for y in range(self.n)] for x in range(self.n)]

    def label(self, x: int) -> str:
        return self.labels[x]

    def __eq__(self, other):
        return (
            isinstance(other, PairMap)
            and self.den == other.den
            and np.array_equal(self.num, other.num)
        )

    __hash__ = None

    def __repr__(self):
        return f"PairMap(n={self.n}, den={self.den})"

    def _aligned(self, other: "PairMap"):
        if other.n != self.n:
            raise InputError("pair-maps have different sizes")
        den = math.lcm(self.den, other.den)
        a = self.num.astype(object) * (den // self.den)
        b = other.num.astype(object) * (den // other.den)
        return a, b, den

    def __add__(self, other: "PairMap") -> "PairMap":
        a, b, den = self._aligned(other)
        return PairMap(a + b, den, self.labels)

    def __sub__(self, other: "PairMap") -> "PairMap":
        a, b, den = self._aligned(other)
        return PairMap(a - b, den, self.labels)

    def __neg__(self) -> "PairMap":
        return PairMap(-self.num.astype(object), self.den, self.labels)

    def scale(self, c) -> "PairMap":
        c = parse_rational(c)
        return PairMap(self.num.astype(object) * c.numerator, self.den * c.denominator, self.labels)

    def map(self, fn) -> "PairMap":
        """Apply an exact scalar function entrywise."""
        return PairMap.from_values([[fn(v) for v in row] for row in self.values], self.labels)

    def restrict(self, points) -> "PairMap":
        points = list(points)
        return PairMap(self.num[np.ix_(points, points)], self.den, [self.labels[i] for i in points])

    def transpose(self) -> "PairMap":
        return PairMap(self.num.T, self.den, self.labels)

    def to_dict(self) -> dict:
        return {
            "kind": "pairmap",
            "n": self.n,
            "values": [[format_rational(v) for v in row] for row in self.values],
        }


def as_pairmap(p) -> PairMap:
    return p if isinstance(p, PairMap) else PairMap.from_values(p)


def _vector(values, n: int) -> list[Fraction]:
    vals = [parse_rational(v) for v in values]
    if len(vals) != n:
        raise InputError(f"expected {n} values, got {len(vals)}")
    return vals


# ------------------------------------------------------------- predicates


def submodular_violation(p: PairMap):
    """(count, first (x, y, z)) of violations of submodularity."""
    (P,) = workspace(p.num)
    W = P.diagonal()
    PT = P.T

    def mask(lo, hi):
        lhs = P[lo:hi, :, None] + W[None, None, :]
        rhs = P[lo:hi, None, :] + PT[None, :, :]
        return lhs > rhs

    return kernel.scan(p.n, p.n * p.n, mask)


def is_submodular(p: PairMap) -> Report:
    p = as_pairmap(p)
    rep = Report("is_submodular")
    cnt, bad = submodular_violation(p)
    w = None
    if bad is not None:
        x, y, z = bad
        w = make_witness(
            {"x": p.label(x), "y": p.label(y), "z": p.label(z)},
            p[x, y] + p[z, z], p[x, z] + p[z, y],
        )
    rep.check("submodularity", cnt == 0, p.n**3, "p(x,y) + p(z,z) <= p(x,z) + p(z,y)", w)
    return rep


def is_symmetric(p: PairMap) -> bool:
    return bool(np.array_equal(p.num, p.num.T))


def symmetry_criterion(p: PairMap) -> bool:
    """p(x, y) + p(z, z) <= p(x, z) + p(y, z) for all x, y, z.

    For finite submodular p this holds exactly when p is symmetric; that
    equivalence is asserted.
    """
    (P,) = workspace(p.num)
    W = P.diagonal()

    def mask(lo, hi):
        lhs = P[lo:hi, :, None] + W[None, None, :]
        rhs = P[lo:hi, None, :] + P[None, :, :]
        return lhs > rhs

    cnt, _ = kernel.scan(p.n, p.n * p.n, mask)
    holds = cnt == 0
    if submodular_violation(p)[0] == 0 and holds != is_symmetric(p):
        raise ConsistencyError("symmetry criterion disagrees with symmetry")
    return holds


def quasiorder_leq_p(p: PairMap) -> Relation:
    """x <=_p y iff w(x) <= w(y) and p(x, z) <= p(y, z) for every z.

    When p is submodular the result is cross-checked against the shortcut
    w(x) v p(x, y) <= w(y).
    """
    (P,) = workspace(p.num)
    W = P.diagonal()
    n = p.n
    m = np.zeros((n, n), dtype=bool)
    for x in range(n):
        m[x] = (W[x] <= W) & (P[x][None, :] <= P).all(axis=1)
    rel = Relation(m)
    if submodular_violation(p)[0] == 0:
        short = np.maximum(W[:, None], P) <= W[None, :]
        diff = rel.first_difference(Relation(short))
        if diff is not None:
            raise ConsistencyError("<=_p disagrees with its submodular shortcut",
                                   x=p.label(diff[0]), y=p.label(diff[1]))
    return rel


def check_submodular_lemmas(p: PairMap) -> Report:
    """Basic consequences of submodularity, each checked on all pairs/triples.

    * w(x) + w(y) <= p(x, y) + p(y, x)  (and <= 2 p(x, y) when symmetric)
    * x -> w(x) and x -> p(x, z) are order-preserving for <=_p
    * <=_p is antisymmetric iff  w(x) = p(x,y) = p(y,x) = w(y)  forces x = y
    """
    rep = Report("submodular lemmas")
    n = p.n
    (P,) = workspace(p.num)
    W = P.diagonal()
    sub = rep.check("submodularity", submodular_violation(p)[0] == 0, n**3)
    if not sub:
        return rep
    bad = np.argwhere(W[:, None] + W[None, :] > P + P.T)
    rep.check("w(x) + w(y) <= p(x,y) + p(y,x)", len(bad) == 0, n * n, "diagonal bound",
              _pair_witness(p, bad, lambda x, y: (p.w(x) + p.w(y), p[x, y] + p[y, x])))
    if is_symmetric(p):
        bad = np.argwhere(W[:, None] + W[None, :] > 2 * P)
        rep.check("w(x) + w(y) <= 2 p(x,y)", len(bad) == 0, n * n, "diagonal bound",
                  _pair_witness(p, bad, lambda x, y: (p.w(x) + p.w(y), 2 * p[x, y])))
    leq = quasiorder_leq_p(p)
    rep.check("<=_p is a quasiorder", leq.reflexive and leq.transitive, n * n, "quasiorder")
    mono_w = all(W[x] <= W[y] for x, y in leq.pairs())
    mono_p = all((P[x] <= P[y]).all() for x, y in leq.pairs())
    rep.check("w and p(., z) order-preserving", mono_w and mono_p, len(leq.pairs()), "quasiorder")
    sep = np.argwhere((W[:, None] == P) & (P == P.T) & (P == W[None, :]) & ~np.eye(n, dtype=bool))
    rep.check("<=_p antisymmetric iff separation", leq.antisymmetric == (len(sep) == 0), n * n, "quasiorder")
    return rep


def _pair_witness(p, bad, sides):
    if len(bad) == 0:
        return None
    x, y = (int(v) for v in bad[0])
    lhs, rhs = sides(x, y)
    return make_witness({"x": p.label(x), "y": p.label(y)}, lhs, rhs)


def diag_dominated(p: PairMap):
    """First (x, y) with w(x) v w(y) > p(x, y), or None."""
    P = p.num
    W = P.diagonal()
    bad = np.argwhere(np.maximum(W[:, None], W[None, :]) > P)
    return None if len(bad) == 0 else (int(bad[0][0]), int(bad[0][1]))


# -------------------------------------------------------------- transforms


def transform_max(p: PairMap) -> PairMap:
    """q(x, y) = p(x, x) v p(x, y).  Keeps the diagonal and <=_p."""
    P = p.num
    return PairMap(np.maximum(P.diagonal()[:, None], P), p.den, p.labels)


def transform_shift(p: PairMap, f, side: str = "left") -> PairMap:
    """(x, y) -> f(x) + p(x, y)  (side="left")  or  p(x, y) + f(y)  (side="right")."""
    f = _vector(f, p.n)
    if side not in ("left", "right"):
        raise InputError("side must be 'left' or 'right'")
    if side == "left":
        return PairMap.from_function(p.n, lambda x, y: f[x] + p[x, y], p.labels)
    return PairMap.from_function(p.n, lambda x, y: p[x, y] + f[y], p.labels)


@dataclass(frozen=True)
class ConcavePL:
    """f(t) = min_i (slope_i * t + intercept_i) with every slope >= 0.

    A minimum of nondecreasing affine maps is concave and order-preserving,
    and keeps rational inputs rational.  ``lo``/``hi`` bound the domain
    (None = unbounded).
    """

    pieces: tuple
    lo: Fraction | None = None
    hi: Fraction | None = None

    def __post_init__(self):
        pieces = tuple((parse_rational(s), parse_rational(c)) for s, c in self.pieces)
        if not pieces:
            raise InputError("ConcavePL needs at least one affine piece")
        if any(s < 0 for s, _ in pieces):
            raise InputError("ConcavePL slopes must be nonnegative")
        object.__setattr__(self, "pieces", pieces)
        for attr in ("lo", "hi"):
            v = getattr(self, attr)
            if v is not None:
                object.__setattr__(self, attr, parse_rational(v))

    @classmethod
    def identity(cls) -> "ConcavePL":
        return cls(((1, 0),))

    @classmethod
    def cap(cls, c) -> "ConcavePL":
        return cls(((1, 0), (0, c)))

    def contains(self, t) -> bool:
        return (self.lo is None or t >= self.lo) and (self.hi is None or t <= self.hi)

    def __call__(self, t) -> Fraction:
        t = Fraction(t)
        if not self.contains(t):
            raise PreconditionViolated(f"{t} is outside the domain of f", t=format_rational(t))
        return min(s * t + c for s, c in self.pieces)


def transform_concave(p: PairMap, f: ConcavePL) -> PairMap:
    """f o p for a concave order-preserving piecewise-linear f.

    Requires w(x) v w(y) <= p(x, y) for all x, y.
    """
    bad = diag_dominated(p)
    if bad is not None:
        x, y = bad
        raise PreconditionDiagNotDominated(
            "diagonal exceeds p(x, y)", x=p.label(x), y=p.label(y),
            lhs=format_rational(max(p.w(x), p.w(y))), rhs=format_rational(p[x, y]),
        )
    return p.map(f)


def transform_kunzi(p: PairMap, b) -> PairMap:
    """(x, y) -> p(x, y) / (b + p(x, y)), for b > 0 and -b < w(x) v w(y) <= p(x, y).

    The diagonal must stay strictly above -b: at -b the map would take the
    value -inf, which finite pair-maps cannot hold.
    """
    b = parse_rational(b)
    if b <= 0:
        raise PreconditionViolated("b must be positive", b=format_rational(b))
    bad = diag_dominated(p)
    if bad is not None:
        x, y = bad
        raise PreconditionDiagNotDominated("diagonal exceeds p(x, y)", x=p.label(x), y=p.label(y))
    low = [x for x in range(p.n) if p.w(x) <= -b]
    if low:
        raise PreconditionViolated("diagonal must exceed -b", x=p.label(low[0]))
    return p.map(lambda t: t / (b + t))


def topkis_pairmap(points, alpha: int = 1, labels=None) -> PairMap:
    """(x, y) -> sum_i (x_i v y_i)^alpha on points of Q_+^k, alpha a positive integer."""
    if not isinstance(alpha, int) or alpha < 1:
        raise InputError("alpha must be a positive integer for exact evaluation")
    pts = [tuple(parse_rational(c) for c in pt) for pt in points]
    if any(c < 0 for pt in pts for c in pt):
        raise InputError("points must have nonnegative coordinates")

    def f(x, y):
        return sum(max(a, b) ** alpha for a, b in zip(pts[x], pts[y]))

    return PairMap.from_function(len(pts), f, labels)


def valuation_pairmap(leq: Relation, w, labels=None) -> tuple[PairMap, bool]:
    """p(x, y) = min{ w(z) : x <= z, y <= z } on a finite quasiordered set.

    Returns the pair-map and whether it is *stable*, i.e. recomputing the
    minimum with <=_p in place of <= gives p back.
    """
    n = leq.n
    w = _vector(w, n)
    for x, y in leq.pairs():
        if w[x] > w[y]:
            raise PreconditionViolated("w is not order-preserving", x=str(x), y=str(y))
    wnum, den = scale(w)
    p = PairMap(_upper_min(leq.matrix, wnum, labels), den, labels)
    return p, is_stable(p)


def _upper_min(m: np.ndarray, wnum: np.ndarray, labels=None) -> np.ndarray:
    n = m.shape[0]
    out = np.empty((n, n), dtype=object)
    for x in range(n):
        common = m[x][None, :] & m  # row y: upper bounds of both x and y
        for y in range(n):
            ub = np.flatnonzero(common[y])
            if len(ub) == 0:
                name = (lambda i: labels[i] if labels else str(i))
                raise NoUpperBound("no common upper bound", x=name(x), y=name(y))
            out[x, y] = int(wnum[ub].min())
    return out


def is_stable(p: PairMap) -> bool:
    leq = quasiorder_leq_p(p)
    m = leq.matrix
    W = p.num.diagonal()
    for x in range(p.n):
        common = m[x][None, :] & m
        for y in range(p.n):
            ub = np.flatnonzero(common[y])
            if len(ub) == 0 or W[ub].min() != p.num[x, y]:
                return False
    return True


# ---------------------------------------------------------- float mode


FLOAT_CONCAVE = {
    "sqrt": math.sqrt,
    "log": lambda t: math.log(t) if t > 0 else -math.inf,
    "neg_inv": lambda t: -1.0 / t if t > 0 else -math.inf,
}


def float_concave_check(p: PairMap, kind: str, tol: float = 1e-9) -> Report:
    """Submodularity of f o p for an irrational concave f, in floating point.

    Not exact: the report is marked non-exhaustive and every comparison is
    made with absolute tolerance ``tol``.  Terms equal to -inf make the
    inequality hold trivially.
    """
    if kind not in FLOAT_CONCAVE:
        raise InputError(f"unknown concave map {kind!r}")
    fn = FLOAT_CONCAVE[kind]
    rep = Report(f"float-mode submodularity of {kind} o p", exhaustive=False)
    rep.info("non-exact", mode="float", tolerance=str(tol))
    W = p.num.diagonal()
    if (W < 0).any() or diag_dominated(p) is not None:
        raise PreconditionViolated("need 0 <= w(x) v w(y) <= p(x, y)")
    F = np.array([[fn(float(v)) for v in row] for row in p.values])
    n = p.n
    bad = None
    for x in range(n):
        for y in range(n):
            for z in range(n):
                terms = (F[x, y], F[z, z], F[x, z], F[z, y])
                if any(t == -math.inf for t in terms):
                    continue
                if F[x, y] + F[z, z] > F[x, z] + F[z, y] + tol:
                    bad = (x, y, z)
                    break
            if bad:
                break
        if bad:
            break
    w = None if bad is None else make_witness({"x": p.label(bad[0]), "y": p.label(bad[1]), "z": p.label(bad[2])})
    rep.check("submodularity (float)", bad is None, n**3, "f o p submodular", w)
    return rep
