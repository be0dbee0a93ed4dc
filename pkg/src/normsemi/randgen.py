"""Seeded random instances: partial pseudo-metrics, submodular maps, concave maps.

All generators take a ``random.Random`` and return exact objects.  Every
construction is valid by design, but callers in the test suite still run
the validators on the output.
"""
from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .ordermaps import ConcavePL, PairMap, topkis_pairmap


def _shortest_paths(W: np.ndarray) -> np.ndarray:
    """Floyd-Warshall on an integer weight matrix (zero diagonal)."""
    D = W.copy()
    for k in range(D.shape[0]):
        D = np.minimum(D, D[:, k:k + 1] + D[k:k + 1, :])
    return D


def random_pseudometric(rng: random.Random, n: int, top: int = 10, zero_rate: float = 0.1) -> np.ndarray:
    """Integer pseudo-metric: path metric of a random complete graph, some edges of length 0."""
    W = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(x + 1, n):
            W[x, y] = W[y, x] = 0 if rng.random() < zero_rate else rng.randint(1, top)
    return _shortest_paths(W)


def random_quasimetric(rng: random.Random, n: int, top: int = 10) -> np.ndarray:
    """Asymmetric path metric; zero diagonal plus the triangle inequality makes it submodular."""
    W = np.array([[0 if x == y else rng.randint(0, top) for y in range(n)] for x in range(n)],
                 dtype=np.int64)
    return _shortest_paths(W)


def weighted_ppm(rng: random.Random, n: int, top: int = 10) -> PairMap:
    """p = (d(x, y) + w(x) + w(y)) / 2 with w >= 0 and 1-Lipschitz for d.

    Lipschitz weights come from an inf-convolution w(x) = min_y w0(y) + d(x, y).
    """
    D = random_pseudometric(rng, n, top)
    w0 = np.array([rng.randint(0, 2 * top) for _ in range(n)], dtype=np.int64)
    w = (w0[None, :] + D).min(axis=1)
    return PairMap(D + w[:, None] + w[None, :], 2)


def random_subsets(rng: random.Random, n: int, m: int) -> list[int]:
    return [rng.getrandbits(m) for _ in range(n)]


def random_concave(rng: random.Random, pieces: int = 3, top: int = 6) -> ConcavePL:
    """Random min of nondecreasing affine maps with f(0) >= 0."""
    out = [(Fraction(rng.randint(0, top), rng.randint(1, 3)), Fraction(rng.randint(0, top), rng.randint(1, 3)))
           for _ in range(pieces)]
    return ConcavePL(tuple(out))


def union_ppm(rng: random.Random, n: int, m: int = 4, top: int = 5, concave: bool = True) -> PairMap:
    """p(A, B) = f(mu(A u B)) on random subsets of an m-set, mu a random positive measure."""
    mu = [Fraction(rng.randint(1, top), rng.randint(1, 2)) for _ in range(m)]
    sets = random_subsets(rng, n, m)
    f = random_concave(rng) if concave else ConcavePL.identity()

    def measure(s):
        return sum((mu[i] for i in range(m) if s >> i & 1), Fraction(0))

    return PairMap.from_function(n, lambda x, y: f(measure(sets[x] | sets[y])))


def chain_ppm(rng: random.Random, n: int, top: int = 10) -> PairMap:
    """p(x, y) = v(max(x, y)) for a random nondecreasing v >= 0 on a chain."""
    v = sorted(rng.randint(0, top) for _ in range(n))
    V = np.array(v, dtype=np.int64)
    return PairMap(np.maximum(V[:, None], V[None, :]), 1)


def lattice_pairmap(rng: random.Random, n: int, m: int = 4, top: int = 5) -> PairMap:
    """p(x, y) = v(x v y) on a random union-closed family of subsets of an m-set.

    v is a positive measure, hence strictly increasing; the family is closed
    under union so every pair has its join inside it.  Points beyond the
    closure size are drawn again from the family, so p may have repeated rows.
    """
    family = set(random_subsets(rng, max(1, n // 2), m))
    while True:
        more = {a | b for a in family for b in family} - family
        if not more:
            break
        family |= more
    elems = sorted(family)
    pts = elems + [rng.choice(elems) for _ in range(max(0, n - len(elems)))]
    rng.shuffle(pts)
    pts = pts[:n]
    mu = [rng.randint(1, top) for _ in range(m)]

    def v(s):
        return sum(mu[i] for i in range(m) if s >> i & 1)

    return PairMap.from_function(n, lambda x, y: v(pts[x] | pts[y]))


PPM_KINDS = ("weighted", "union", "chain", "lattice", "sum")


def random_ppm(rng: random.Random, n: int, kind: str | None = None) -> PairMap:
    """A random partial pseudo-metric on n points, drawn from one of PPM_KINDS."""
    kind = kind or rng.choice(PPM_KINDS)
    if kind == "weighted":
        return weighted_ppm(rng, n)
    if kind == "union":
        return union_ppm(rng, n, m=rng.randint(1, 5))
    if kind == "chain":
        return chain_ppm(rng, n)
    if kind == "lattice":
        return lattice_pairmap(rng, n, m=rng.randint(1, 5))
    if kind == "sum":
        return random_ppm(rng, n, rng.choice(PPM_KINDS[:4])) + random_ppm(rng, n, rng.choice(PPM_KINDS[:4]))
    raise ValueError(kind)


def random_vector(rng: random.Random, n: int, top: int = 10) -> list[Fraction]:
    return [Fraction(rng.randint(-top, top), rng.randint(1, 4)) for _ in range(n)]


def random_submodular(rng: random.Random, n: int) -> PairMap:
    """A random, generally asymmetric, submodular pair-map.

    Mixes quasi-metrics, lattice valuations and partial pseudo-metrics,
    then applies random left and right shifts (shifts keep submodularity).
    """
    base = rng.choice(("quasi", "ppm", "lattice"))
    if base == "quasi":
        p = PairMap(random_quasimetric(rng, n), 1)
    elif base == "lattice":
        p = lattice_pairmap(rng, n, m=rng.randint(1, 5))
    else:
        p = random_ppm(rng, n)
    f, g = random_vector(rng, n), random_vector(rng, n)
    return PairMap.from_function(n, lambda x, y: f[x] + p[x, y] + g[y])


def random_grid_points(rng: random.Random, n: int, k: int, top: int = 6) -> list[tuple]:
    return [tuple(Fraction(rng.randint(0, top), rng.randint(1, 3)) for _ in range(k)) for _ in range(n)]


def random_topkis(rng: random.Random, n: int, alpha: int) -> PairMap:
    return topkis_pairmap(random_grid_points(rng, n, rng.randint(1, 3)), alpha)
