"""Finite inverse semigroups given by Cayley tables, plus the bicyclic monoid.

The operation is written ``+`` throughout (it need not be commutative) and
``x*`` denotes the unique inverse of ``x``.  Tabulated carriers are index
based: elements are ``0..n-1`` and ``labels`` are only used when printing.
Generated monoids always place their identity at index 0.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import comb, factorial

import numpy as np

from . import kernel
from .errors import (
    BadParams,
    ConsistencyError,
    IdempotentsDontCommute,
    InputError,
    NotAssociative,
    NotIdempotent,
    NotInverse,
    TooLarge,
)
from .report import Report, make_witness

MAX_ELEMENTS = 512


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Relation:
    """A binary relation on 0..n-1 as a boolean matrix; ``m[x, y]`` means x R y."""

    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", _frozen(np.asarray(self.matrix, dtype=bool)))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, x: int, y: int) -> bool:
        return bool(self.matrix[x, y])

    def __eq__(self, other):
        return isinstance(other, Relation) and np.array_equal(self.matrix, other.matrix)

    __hash__ = None

    @property
    def reflexive(self) -> bool:
        return bool(self.matrix.diagonal().all())

    @property
    def transitive(self) -> bool:
        m = self.matrix.astype(np.int64)
        return bool(not ((m @ m > 0) & ~self.matrix).any())

    @property
    def antisymmetric(self) -> bool:
        both = self.matrix & self.matrix.T
        return bool(not (both & ~np.eye(self.n, dtype=bool)).any())

    @property
    def is_partial_order(self) -> bool:
        return self.reflexive and self.transitive and self.antisymmetric

    def pairs(self):
        return [(int(x), int(y)) for x, y in np.argwhere(self.matrix)]

    def chains3(self):
        """All (x, y, z) with x R y R z."""
        m = self.matrix
        return [(x, y, int(z)) for x, y in self.pairs() for z in np.flatnonzero(m[y])]

    def first_difference(self, other: "Relation"):
        diff = np.argwhere(self.matrix != other.matrix)
        return None if len(diff) == 0 else (int(diff[0][0]), int(diff[0][1]))


@dataclass(frozen=True, eq=False)
class FiniteInverseSemigroup:
    """A validated finite inverse semigroup.  Build it with :func:`validate_table`."""

    n: int
    table: np.ndarray
    inv: np.ndarray
    idempotents: tuple
    identity: int | None
    labels: tuple
    name: str = ""
    embedding: tuple | None = field(default=None)

    def __len__(self):
        return self.n

    def add(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def star(self, x: int) -> int:
        return int(self.inv[x])

    def label(self, x: int) -> str:
        return self.labels[x]

    @property
    def is_monoid(self) -> bool:
        return self.identity is not None

    @property
    def idempotent_mask(self) -> np.ndarray:
        mask = np.zeros(self.n, dtype=bool)
        mask[list(self.idempotents)] = True
        return mask

    @property
    def delta_table(self) -> np.ndarray:
        """x -> x + x*."""
        return self.table[np.arange(self.n), self.inv]

    def sum_with_inverse(self) -> np.ndarray:
        """Matrix of x + y* (the argument of the induced pair-map)."""
        return self.table[:, self.inv]

    def to_dict(self) -> dict:
        return {
            "kind": "semigroup",
            "n": self.n,
            "table": self.table.tolist(),
            "labels": list(self.labels),
        }


def validate_table(n: int, table, labels=None, name: str = "") -> FiniteInverseSemigroup:
    """Check that ``table`` is the Cayley table of an inverse semigroup.

    Inverse-ness is tested through uniqueness of inverses; commutation of
    idempotents is re-checked anyway.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InputError(f"element count must be a positive integer, got {n!r}")
    if n > MAX_ELEMENTS:
        raise TooLarge(f"{n} elements exceeds the tabulation limit {MAX_ELEMENTS}")
    try:
        t = np.array(table, dtype=np.int64)
    except (TypeError, ValueError, OverflowError) as exc:
        raise InputError(f"table is not an integer matrix: {exc}") from None
    if t.shape != (n, n):
        raise InputError(f"table has shape {t.shape}, expected ({n}, {n})")
    if n and (t.min() < 0 or t.max() >= n):
        raise InputError("table entries must lie in 0..n-1")
    if labels is None:
        labels = [str(i) for i in range(n)]
    if len(labels) != n:
        raise InputError("labels must name every element")
    labels = tuple(str(s) for s in labels)
    ar = np.arange(n)

    def non_assoc(lo, hi):
        left = t[t[lo:hi]]                              # (x+y)+z
        right = t[ar[lo:hi, None, None], t[None, :, :]]  # x+(y+z)
        return left != right

    _, bad = kernel.scan(n, n * n, non_assoc)
    if bad is not None:
        x, y, z = bad
        raise NotAssociative(
            f"({labels[x]}+{labels[y]})+{labels[z]} != {labels[x]}+({labels[y]}+{labels[z]})",
            x=labels[x], y=labels[y], z=labels[z],
        )

    xyx = t[t, ar[:, None]] == ar[:, None]          # x+y+x == x
    yxy = t[t.T, ar[None, :]] == ar[None, :]        # y+x+y == y
    cand = xyx & yxy
    counts = cand.sum(axis=1)
    for x in range(n):
        if counts[x] != 1:
            found = [labels[i] for i in np.flatnonzero(cand[x])]
            raise NotInverse(
                f"{labels[x]} has {int(counts[x])} inverses {found}",
                x=labels[x], inverses=found,
            )
    inv = cand.argmax(axis=1)

    idem = np.flatnonzero(t[ar, ar] == ar)
    sub = t[np.ix_(idem, idem)]
    if not np.array_equal(sub, sub.T):
        i, j = np.argwhere(sub != sub.T)[0]
        e, f = int(idem[i]), int(idem[j])
        raise IdempotentsDontCommute(
            f"{labels[e]}+{labels[f]} != {labels[f]}+{labels[e]}", e=labels[e], f=labels[f]
        )

    identity = None
    for e in idem:
        if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar):
            identity = int(e)
            break

    return FiniteInverseSemigroup(
        n=int(n),
        table=_frozen(t),
        inv=_frozen(inv.astype(np.int64)),
        idempotents=tuple(int(e) for e in idem),
        identity=identity,
        labels=labels,
        name=name,
    )


def natural_order(S: FiniteInverseSemigroup) -> Relation:
    """x <=_S y iff y = x + e for some idempotent e.

    Cross-checked against the equivalent characterization y = x + y* + y.
    """
    m = np.zeros((S.n, S.n), dtype=bool)
    ar = np.arange(S.n)
    for e in S.idempotents:
        m[ar, S.table[:, e]] = True
    alt = S.table[S.table[:, S.inv], ar[None, :]] == ar[None, :]
    if not np.array_equal(m, alt):
        x, y = (int(i) for i in np.argwhere(m != alt)[0])
        raise ConsistencyError(
            "natural order characterizations disagree", x=S.label(x), y=S.label(y)
        )
    return Relation(m)


def clifford_conditions(S: FiniteInverseSemigroup) -> dict:
    """Evaluate the four equivalent Clifford conditions separately."""
    t, inv, ar = S.table, S.inv, np.arange(S.n)
    d = S.delta_table
    idem = list(S.idempotents)
    return {
        "x+x* = x*+x": bool(np.array_equal(d, t[inv, ar])),
        "idempotents central": bool(np.array_equal(t[idem, :], t[:, idem].T)),
        "x+dx = x": bool(np.array_equal(t[ar, d], ar)),
        "d(x+y) = dx+dy": bool(np.array_equal(d[t], t[d[:, None], d[None, :]])),
    }


def is_clifford(S: FiniteInverseSemigroup) -> bool:
    conds = clifford_conditions(S)
    if len(set(conds.values())) != 1:
        raise ConsistencyError("Clifford conditions disagree", **{k: str(v) for k, v in conds.items()})
    return conds["x+x* = x*+x"]


def delta(S, x):
    """x + x*; works for tabulated and bicyclic carriers alike."""
    if isinstance(S, BicyclicCarrier):
        return S.delta(x)
    return int(S.table[x, S.inv[x]])


def local_monoid(S: FiniteInverseSemigroup, e: int) -> FiniteInverseSemigroup:
    """S_e = {x : x + e = e + x = x}, an inverse monoid with identity e."""
    if S.table[e, e] != e:
        raise NotIdempotent(f"{S.label(e)} is not idempotent", e=S.label(e))
    members = [x for x in range(S.n) if S.table[x, e] == x and S.table[e, x] == x]
    pos = {x: i for i, x in enumerate(members)}
    sub = [[pos[int(S.table[x, y])] for y in members] for x in members]
    L = validate_table(len(members), sub, [S.labels[x] for x in members], name=f"{S.name}_{S.label(e)}")
    if L.identity != pos[e]:
        raise ConsistencyError("local monoid identity is not e", e=S.label(e))
    return FiniteInverseSemigroup(
        L.n, L.table, L.inv, L.idempotents, L.identity, L.labels, L.name, tuple(members)
    )


def verify_semigroup(S: FiniteInverseSemigroup) -> Report:
    """Re-verify every basic identity of inverse semigroups on all elements."""
    rep = Report(f"verify semigroup {S.name}".strip())
    n, t, inv, ar = S.n, S.table, S.inv, np.arange(S.n)
    lab = S.labels
    rep.check("associativity", True, n**3, "associativity")

    ok = np.array_equal(t[t[ar, inv], ar], ar) & np.array_equal(t[t[inv, ar], inv], inv)
    rep.check("x+x*+x = x and x*+x+x* = x*", ok, n, "inverse")

    bad = np.argwhere(inv[t] != t[inv[None, :], inv[:, None]])
    w = None
    if len(bad):
        x, y = bad[0]
        w = make_witness({"x": lab[x], "y": lab[y]})
    rep.check("(x+y)* = y*+x*", not len(bad), n * n, "inverse of a sum", w)
    rep.check("(x*)* = x", np.array_equal(inv[inv], ar), n, "involution")
    idem = np.array(S.idempotents)
    rep.check("e* = e for idempotent e", np.array_equal(inv[idem], idem), len(idem), "idempotents self-inverse")
    d = S.delta_table
    rep.check("x+x* idempotent", np.array_equal(t[d, d], d), n, "delta idempotent")
    r = t[inv, ar]
    rep.check("x*+x idempotent", np.array_equal(t[r, r], r), n, "delta idempotent")
    sub = t[np.ix_(idem, idem)]
    rep.check("idempotents commute", np.array_equal(sub, sub.T), len(idem) ** 2, "idempotents commute")

    leq = natural_order(S)  # raises if the two characterizations differ
    rep.check("order: y = x+e  <=>  y = x+y*+y", True, n * n, "natural order")
    fourth = t[d[None, :], ar[:, None]] == ar[None, :]  # [x, y]: y = y+y*+x
    diff = leq.first_difference(Relation(fourth))
    rep.check("order: y = x+e  <=>  y = y+y*+x", diff is None, n * n, "natural order",
              None if diff is None else make_witness({"x": lab[diff[0]], "y": lab[diff[1]]}))
    star_leq = Relation(leq.matrix[np.ix_(inv, inv)])
    diff = leq.first_difference(star_leq)
    rep.check("x <= y  <=>  x* <= y*", diff is None, n * n, "natural order",
              None if diff is None else make_witness({"x": lab[diff[0]], "y": lab[diff[1]]}))
    rep.check("natural order is a partial order", leq.is_partial_order, n * n, "natural order")

    m = leq.matrix
    viol = None
    count = 0
    for x, y in leq.pairs():
        count += n
        right = m[t[x], t[y]]
        left = m[t[:, x], t[:, y]]
        if not (right.all() and left.all()):
            z = int(np.flatnonzero(~(right & left))[0])
            viol = make_witness({"x": lab[x], "y": lab[y], "z": lab[z]})
            break
    rep.check("order compatible with +", viol is None, count, "natural order", viol)

    conds = clifford_conditions(S)
    rep.check("Clifford conditions agree", len(set(conds.values())) == 1, 4 * n * n, "Clifford",
              make_witness({}, **{k: str(v) for k, v in conds.items()}))
    rep.info("clifford", "Clifford", value=str(conds["x+x* = x*+x"]).lower())
    if S.identity is not None:
        rep.check("identity", np.array_equal(t[S.identity], ar) and np.array_equal(t[:, S.identity], ar), n)
    return rep


# ---------------------------------------------------------------- generators


def _sized(n: int) -> int:
    if n > MAX_ELEMENTS:
        raise TooLarge(f"family would have {n} elements (limit {MAX_ELEMENTS})")
    return n


def trivial() -> FiniteInverseSemigroup:
    return validate_table(1, [[0]], ["0"], "trivial")


def cyclic(n: int) -> FiniteInverseSemigroup:
    _sized(n)
    ar = np.arange(n)
    return validate_table(n, (ar[:, None] + ar[None, :]) % n, [str(i) for i in ar], f"C{n}")


def chain(n: int) -> FiniteInverseSemigroup:
    """The n-element chain 0 < 1 < ... as a sup-semilattice."""
    _sized(n)
    ar = np.arange(n)
    return validate_table(n, np.maximum(ar[:, None], ar[None, :]), [str(i) for i in ar], f"chain{n}")


def powerset(n: int) -> FiniteInverseSemigroup:
    """Subsets of n generators under union; element i is the bitmask i."""
    size = _sized(2**n)
    ar = np.arange(size)
    labels = ["{" + ",".join(str(b) for b in range(n) if i >> b & 1) + "}" for i in range(size)]
    return validate_table(size, ar[:, None] | ar[None, :], labels, f"P({n})")


def _partial_bijections(n: int):
    maps = []
    for k in range(n + 1):
        for dom in itertools.combinations(range(n), k):
            for img in itertools.permutations(range(n), k):
                f = [-1] * n
                for a, b in zip(dom, img):
                    f[a] = b
                maps.append(tuple(f))
    ident = tuple(range(n))
    maps.remove(ident)
    return [ident] + sorted(maps, key=lambda f: (-sum(v >= 0 for v in f), f))


def symmetric_inverse_count(n: int) -> int:
    return sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1))


def sym_inverse(n: int) -> FiniteInverseSemigroup:
    """Partial bijections of {0..n-1}; x + y applies x first, then y."""
    _sized(symmetric_inverse_count(n))
    maps = _partial_bijections(n)
    pos = {f: i for i, f in enumerate(maps)}

    def compose(f, g):
        return tuple(g[v] if v >= 0 else -1 for v in f)

    table = [[pos[compose(f, g)] for g in maps] for f in maps]
    labels = []
    for f in maps:
        parts = [f"{a}>{b}" for a, b in enumerate(f) if b >= 0]
        labels.append("[" + ",".join(parts) + "]")
    return validate_table(len(maps), table, labels, f"I{n}")


def product(S: FiniteInverseSemigroup, T: FiniteInverseSemigroup, name: str = "") -> FiniteInverseSemigroup:
    """Direct product; the pair (i, j) has index i * |T| + j."""
    _sized(S.n * T.n)
    m = T.n
    a = S.table[:, None, :, None] * m + T.table[None, :, None, :]
    table = a.reshape(S.n * m, S.n * m)
    labels = [f"({s},{u})" for s in S.labels for u in T.labels]
    return validate_table(S.n * m, table, labels, name or f"{S.name}x{T.name}")


def grid(*sizes: int) -> FiniteInverseSemigroup:
    """Product of chains: a finite grid in R_+^k under coordinatewise max."""
    if not sizes:
        raise BadParams("grid needs at least one dimension")
    out = chain(sizes[0])
    for s in sizes[1:]:
        out = product(out, chain(s))
    labels = []
    for idx in itertools.product(*[range(s) for s in sizes]):
        labels.append("(" + ",".join(map(str, idx)) + ")")
    return FiniteInverseSemigroup(out.n, out.table, out.inv, out.idempotents, out.identity,
                                  tuple(labels), "grid" + "x".join(map(str, sizes)))


def clifford(group_order: int, generators: int) -> FiniteInverseSemigroup:
    """Clifford monoid C_g x P(m): a group times a semilattice."""
    return product(cyclic(group_order), powerset(generators), f"C{group_order}xP({generators})")


def clifford_chain(orders) -> FiniteInverseSemigroup:
    """Strong semilattice of cyclic groups over a chain.

    Level a carries C_{orders[a]}; orders[b] must divide orders[a] for
    a < b and the structure maps are reduction modulo orders[b].
    """
    orders = [int(o) for o in orders]
    if not orders or any(o < 1 for o in orders):
        raise BadParams("orders must be positive")
    for a in range(len(orders) - 1):
        if orders[a] % orders[a + 1]:
            raise BadParams("each order must divide the previous one")
    elems = [(a, g) for a, o in enumerate(orders) for g in range(o)]
    _sized(len(elems))
    pos = {e: i for i, e in enumerate(elems)}
    table = []
    for a, g in elems:
        row = []
        for b, h in elems:
            c = max(a, b)
            row.append(pos[(c, (g + h) % orders[c])])
        table.append(row)
    labels = [f"{g}@{a}" for a, g in elems]
    return validate_table(len(elems), table, labels, "CL" + "-".join(map(str, orders)))


def brandt(n: int) -> FiniteInverseSemigroup:
    """Brandt semigroup B_n: matrix units (i,j) plus an absorbing zero (last)."""
    elems = [(i, j) for i in range(n) for j in range(n)]
    size = _sized(len(elems) + 1)
    z = size - 1
    table = [[z] * size for _ in range(size)]
    for a, (i, j) in enumerate(elems):
        for b, (k, l) in enumerate(elems):
            if j == k:
                table[a][b] = elems.index((i, l))
    labels = [f"e{i}{j}" for i, j in elems] + ["z"]
    return validate_table(size, table, labels, f"B{n}")


# --------------------------------------------------------- bicyclic monoid


def _vec(v, k):
    t = tuple(int(c) for c in v)
    if len(t) != k:
        raise InputError(f"expected a vector of length {k}")
    return t


@dataclass(frozen=True)
class BicyclicCarrier:
    """The bicyclic monoid over Z^k: pairs (a, b) with a, b >= 0 coordinatewise.

    (a, b) + (c, d) = (a - b + b v c, d - c + b v c), with v the
    coordinatewise max.  Elements are tuples of two k-tuples of ints.
    """

    k: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise BadParams("k must be >= 1")

    def element(self, a, b):
        a, b = _vec(a, self.k), _vec(b, self.k)
        if min(a + b) < 0:
            raise InputError("bicyclic coordinates must be nonnegative")
        return (a, b)

    @property
    def identity(self):
        z = (0,) * self.k
        return (z, z)

    def add(self, x, y):
        (a, b), (c, d) = x, y
        m = tuple(max(bi, ci) for bi, ci in zip(b, c))
        return (
            tuple(ai - bi + mi for ai, bi, mi in zip(a, b, m)),
            tuple(di - ci + mi for di, ci, mi in zip(d, c, m)),
        )

    def star(self, x):
        return (x[1], x[0])

    def delta(self, x):
        return self.add(x, self.star(x))

    def is_idempotent(self, x) -> bool:
        return x[0] == x[1]

    def leq(self, x, y) -> bool:
        """Closed form of the natural order: 0 <= c - a = d - b."""
        (a, b), (c, d) = x, y
        diff = tuple(ci - ai for ci, ai in zip(c, a))
        return diff == tuple(di - bi for di, bi in zip(d, b)) and min(diff) >= 0

    def leq_by_inverse(self, x, y) -> bool:
        return y == self.add(self.add(x, self.star(y)), y)

    def embed(self, g):
        """i_G(g) = (g v 0, (-g) v 0)."""
        g = _vec(g, self.k)
        return (tuple(max(c, 0) for c in g), tuple(max(-c, 0) for c in g))

    def sample(self, rng: random.Random, bound: int = 100):
        return (
            tuple(rng.randint(0, bound) for _ in range(self.k)),
            tuple(rng.randint(0, bound) for _ in range(self.k)),
        )

    def sample_idempotent(self, rng: random.Random, bound: int = 100):
        a = tuple(rng.randint(0, bound) for _ in range(self.k))
        return (a, a)

    def label(self, x) -> str:
        return f"({list(x[0])},{list(x[1])})"

    def to_dict(self) -> dict:
        return {"kind": "semigroup", "symbolic": "bicyclic", "k": self.k}


def verify_bicyclic(B: BicyclicCarrier, samples: int = 10_000, seed: int = 0, bound: int = 100) -> Report:
    """Sampled check of the inverse-monoid identities and of the embedding i_G."""
    rng = random.Random(seed)
    rep = Report(f"verify semigroup bicyclic k={B.k}", exhaustive=False, seed=seed, samples=samples)
    lab = B.label
    fails: dict[str, dict] = {}
    counts: dict[str, int] = {}

    def render(v):
        return lab(v) if isinstance(v[0], tuple) else str(list(v))

    def check(name, ok, **els):
        counts[name] = counts.get(name, 0) + 1
        if not ok and name not in fails:
            fails[name] = make_witness({k: render(v) for k, v in els.items()})

    zero = B.identity
    for _ in range(samples):
        x, y, z = B.sample(rng, bound), B.sample(rng, bound), B.sample(rng, bound)
        xy = B.add(x, y)
        check("closure (nonnegative coordinates)", min(xy[0] + xy[1]) >= 0, x=x, y=y)
        check("associativity", B.add(xy, z) == B.add(x, B.add(y, z)), x=x, y=y, z=z)
        xs = B.star(x)
        check("x+x*+x = x and x*+x+x* = x*",
              B.add(B.add(x, xs), x) == x and B.add(B.add(xs, x), xs) == xs, x=x)
        check("(x+y)* = y*+x*", B.star(xy) == B.add(B.star(y), xs), x=x, y=y)
        check("(x*)* = x", B.star(xs) == x, x=x)
        check("identity", B.add(zero, x) == x == B.add(x, zero), x=x)
        d = B.delta(x)
        check("delta(a,b) = (a,a)", d == (x[0], x[0]) and B.is_idempotent(d), x=x)
        check("idempotent iff a = b", (B.add(x, x) == x) == B.is_idempotent(x), x=x)
        e, f = B.sample_idempotent(rng, bound), B.sample_idempotent(rng, bound)
        check("idempotents commute", B.add(e, f) == B.add(f, e) and B.add(e, e) == e, e=e, f=f)
        check("e* = e for idempotent e", B.star(e) == e, e=e)
        # natural order: closed form against y = x + y* + y, on random and on comparable pairs
        check("order closed form matches y = x+y*+y", B.leq(x, y) == B.leq_by_inverse(x, y), x=x, y=y)
        above = B.add(x, e)
        check("x <= x+e (closed form)", B.leq(x, above) and B.leq_by_inverse(x, above), x=x, e=e)
        check("x <= y iff x* <= y*", B.leq(x, above) == B.leq(xs, B.star(above)), x=x, y=above)
        g = tuple(rng.randint(-bound, bound) for _ in range(B.k))
        h = tuple(rng.randint(-bound, bound) for _ in range(B.k))
        ig, ih = B.embed(g), B.embed(h)
        check("i_G(-x) = i_G(x)*", B.embed(tuple(-c for c in g)) == B.star(ig), x=g)
        gh = tuple(a + b for a, b in zip(g, h))
        check("i_G(x+y) <= i_G(x)+i_G(y)", B.leq(B.embed(gh), B.add(ig, ih)), x=g, y=h)
    check("i_G(0) = (0,0)", B.embed((0,) * B.k) == zero, x=(0,) * B.k)
    for name, cnt in counts.items():
        rep.check(name, name not in fails, cnt, name, fails.get(name))
    return rep


# ------------------------------------------------------------------ dispatch

FAMILIES = ("trivial", "cyclic", "chain", "powerset", "grid", "sym-inverse", "product",
            "clifford", "clifford-chain", "brandt", "bicyclic")


def generate(family: str, **params):
    """Build a canonical family member; see FAMILIES for the names."""
    def need(key):
        if key not in params or params[key] is None:
            raise BadParams(f"family {family!r} needs parameter {key!r}")
        v = params[key]
        if isinstance(v, int) and v < 0:
            raise BadParams(f"{key} must be nonnegative")
        return v

    if family == "trivial":
        return trivial()
    if family == "cyclic":
        n = need("n")
        if n < 1:
            raise BadParams("n must be >= 1")
        return cyclic(n)
    if family == "chain":
        n = need("n")
        if n < 1:
            raise BadParams("n must be >= 1")
        return chain(n)
    if family == "powerset":
        n = need("n")
        if 2**n > MAX_ELEMENTS:
            raise TooLarge(f"P({n}) has {2**n} elements (limit {MAX_ELEMENTS})")
        return powerset(n)
    if family == "grid":
        sizes = need("sizes")
        return grid(*sizes)
    if family == "sym-inverse":
        n = need("n")
        return sym_inverse(n)
    if family == "product":
        return product(need("left"), need("right"))
    if family == "clifford":
        g, m = need("n"), need("m")
        if g < 1:
            raise BadParams("group order must be >= 1")
        if g * 2**m > MAX_ELEMENTS:
            raise TooLarge(f"C{g}xP({m}) has {g * 2**m} elements")
        return clifford(g, m)
    if family == "clifford-chain":
        return clifford_chain(need("orders"))
    if family == "brandt":
        n = need("n")
        if n < 1:
            raise BadParams("n must be >= 1")
        return brandt(n)
    if family == "bicyclic":
        return BicyclicCarrier(int(params.get("k") or 1))
    raise BadParams(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
