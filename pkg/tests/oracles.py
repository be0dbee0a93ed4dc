"""Brute-force reference implementations.

Plain loops over Python lists and Fractions.  Nothing here imports the
package's computational code: the oracles only read tables and values, so
agreement with the library is evidence, not tautology.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction


def table_of(S):
    return [[int(v) for v in row] for row in S.table]


def values_of(v):
    return [Fraction(x) for x in v.values]


def pairs_of(p):
    return [[Fraction(x) for x in row] for row in p.values]


# ---------------------------------------------------------------- algebra


def associative(T):
    n = len(T)
    return all(T[T[x][y]][z] == T[x][T[y][z]] for x in range(n) for y in range(n) for z in range(n))


def inverses(T, x):
    n = len(T)
    return [y for y in range(n) if T[T[x][y]][x] == x and T[T[y][x]][y] == y]


def is_inverse_semigroup(T):
    return associative(T) and all(len(inverses(T, x)) == 1 for x in range(len(T)))


def inverse_table(T):
    return [inverses(T, x)[0] for x in range(len(T))]


def idempotents(T):
    return [x for x in range(len(T)) if T[x][x] == x]


def identity(T):
    n = len(T)
    ids = [e for e in range(n) if all(T[e][x] == x == T[x][e] for x in range(n))]
    return ids[0] if ids else None


def natural_order(T):
    """x <= y iff y = x + e for some idempotent e (the defining form)."""
    E = idempotents(T)
    n = len(T)
    return [[any(T[x][e] == y for e in E) for y in range(n)] for x in range(n)]


def clifford(T):
    inv = inverse_table(T)
    return all(T[x][inv[x]] == T[inv[x]][x] for x in range(len(T)))


def partial_bijection_count(n):
    return sum(math.comb(n, k) ** 2 * math.factorial(k) for k in range(n + 1))


def local_monoid_elements(T, e):
    return [x for x in range(len(T)) if T[x][e] == x == T[e][x]]


# ---------------------------------------------------------------- pair-maps


def submodular(P):
    n = len(P)
    return all(P[x][y] + P[z][z] <= P[x][z] + P[z][y]
               for x in range(n) for y in range(n) for z in range(n))


def submodular_triples(P):
    n = len(P)
    return [(x, y, z) for x in range(n) for y in range(n) for z in range(n)
            if P[x][y] + P[z][z] > P[x][z] + P[z][y]]


def symmetric(P):
    n = len(P)
    return all(P[x][y] == P[y][x] for x in range(n) for y in range(n))


def leq_p(P):
    """x <=_p y iff w(x) <= w(y) and p(x, z) <= p(y, z) for every z (the definition)."""
    n = len(P)
    return [[P[x][x] <= P[y][y] and all(P[x][z] <= P[y][z] for z in range(n)) for y in range(n)]
            for x in range(n)]


def is_ppm(P):
    n = len(P)
    return (symmetric(P) and submodular(P)
            and all(0 <= P[x][x] <= P[x][y] for x in range(n) for y in range(n)))


def is_pseudometric(D):
    n = len(D)
    return (all(D[x][x] == 0 for x in range(n)) and symmetric(D)
            and all(D[x][y] <= D[x][z] + D[z][y] for x in range(n) for y in range(n) for z in range(n)))


def d0(P):
    n = len(P)
    return [[P[x][y] - min(P[x][x], P[y][y]) for y in range(n)] for x in range(n)]


def d1(P):
    n = len(P)
    return [[P[x][y] - (P[x][x] + P[y][y]) / 2 for y in range(n)] for x in range(n)]


def d2_squared(P):
    n = len(P)
    return [[P[x][y] ** 2 - P[x][x] * P[y][y] for y in range(n)] for x in range(n)]


def sqrt_le_sum(a2, b2, c2):
    """sqrt(a2) <= sqrt(b2) + sqrt(c2), decided by squaring twice."""
    s = a2 - b2 - c2
    return s <= 0 or s * s <= 4 * b2 * c2


def dist2_terms(P, x, y, z):
    w = [P[i][i] for i in range(len(P))]
    gamma = (P[x][z] - w[z]) * (P[y][z] - w[z])
    theta = (w[z] - w[x]) * (w[y] - w[z])
    delta = (P[x][z] ** 2 - w[x] * w[z]) * (P[y][z] ** 2 - w[y] * w[z])
    return gamma, theta, delta


def dist2_holds(P, x, y, z):
    g, t, d = dist2_terms(P, x, y, z)
    lhs = 2 * g + t
    return lhs <= 0 or lhs * lhs <= 4 * d


# ------------------------------------------------------------------ norms


def induced_p(T, v):
    inv = inverse_table(T)
    n = len(T)
    return [[v[T[x][inv[y]]] for y in range(n)] for x in range(n)]


def pseudonorm(T, v):
    P = induced_p(T, v)
    n = len(T)
    ok = (symmetric(P) and all(P[x][x] <= P[x][y] for x in range(n) for y in range(n))
          and submodular(P))
    z = identity(T)
    return ok and (z is None or v[z] == 0)


def weakly_permutable(T, v):
    n = len(T)
    return all(v[T[e][x]] == v[T[x][e]] for e in idempotents(T) for x in range(n))


def cyclically_permutable(T, v):
    n = len(T)
    return all(v[T[x][y]] == v[T[y][x]] for x in range(n) for y in range(n))


def separated(T, v):
    """||x|| = ||e|| with x in S_e forces x = e."""
    return all(v[x] != v[e] for e in idempotents(T) for x in local_monoid_elements(T, e) if x != e)


def ladder(T, v):
    """The five ladder flags, each computed from its own definition."""
    P = induced_p(T, v)
    n = len(T)
    D1 = d1(P)
    metric = all(D1[x][y] != 0 for x in range(n) for y in range(n) if x != y)
    pm = not any(P[x][x] == P[x][y] == P[y][y] for x in range(n) for y in range(n) if x != y)
    L = leq_p(P)
    anti = not any(L[x][y] and L[y][x] for x in range(n) for y in range(n) if x != y)
    same = L == natural_order(T)
    return (separated(T, v), metric, pm, anti, same)


def right_subinvariant(T, D):
    inv = inverse_table(T)
    n = len(T)
    return all(D[T[x][inv[y]]][T[z][inv[y]]] <= D[x][z]
               for x in range(n) for y in range(n) for z in range(n))


def radially_convex(L, D):
    n = len(D)
    return all(D[x][z] == D[x][y] + D[y][z]
               for x, y, z in itertools.product(range(n), repeat=3) if L[x][y] and L[y][z])


def skew_convex(T, D):
    inv = inverse_table(T)
    n = len(T)
    dl = [T[x][inv[x]] for x in range(n)]
    L = natural_order(T)
    ax1 = all(D[x][y] >= D[dl[x]][dl[y]] for x in range(n) for y in range(n))
    ax2 = all(D[x][z] == D[dl[x]][dl[y]] + D[T[x][inv[y]]][T[z][inv[y]]]
              for x, y, z in itertools.product(range(n), repeat=3)
              if L[dl[x]][dl[y]] and L[dl[y]][dl[z]])
    return ax1, ax2


def metric_to_norm(T, D):
    inv = inverse_table(T)
    z = identity(T)
    return [D[x][z] + D[T[x][inv[x]]][z] for x in range(len(T))]


# ---------------------------------------------------------------- bicyclic


def bicyclic_add(x, y):
    (a, b), (c, d) = x, y
    m = tuple(max(p, q) for p, q in zip(b, c))
    return (tuple(ai - bi + mi for ai, bi, mi in zip(a, b, m)),
            tuple(di - ci + mi for di, ci, mi in zip(d, c, m)))
