"""Built-in (semigroup, pseudo-norm) fixtures.

Every fixture is checked against the pseudo-norm axioms by the test suite;
nothing here is trusted by construction alone.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import algebra as alg
from .errors import BadParams
from .norms import Valuation


@dataclass(frozen=True, eq=False)
class Fixture:
    name: str
    S: alg.FiniteInverseSemigroup
    v: Valuation


def _popcount(i: int) -> int:
    return bin(i).count("1")


def word_length(n: int):
    return [min(x, n - x) for x in range(n)]


def discrete(S):
    z = S.identity if S.identity is not None else -1
    return [0 if x == z else 1 for x in range(S.n)]


def cardinality(m: int):
    return [_popcount(i) for i in range(2**m)]


def weighted_measure(m: int, weights=None):
    weights = weights or [Fraction(k + 1, 2) for k in range(m)]
    return [sum(w for b, w in enumerate(weights) if i >> b & 1) for i in range(2**m)]


def capped_cardinality(m: int, cap: int):
    return [min(_popcount(i), cap) for i in range(2**m)]


def grid_l1(sizes):
    S = alg.grid(*sizes)
    return [sum(int(c) for c in lab.strip("()").split(",")) for lab in S.labels]


def grid_sup(sizes):
    S = alg.grid(*sizes)
    return [max(int(c) for c in lab.strip("()").split(",")) for lab in S.labels]


def clifford_norm(g: int, m: int, group_weight=1, set_weight=1):
    """(h, A) -> group_weight * |h| + set_weight * |A| on C_g x P(m)."""
    size = 2**m
    return [group_weight * min(i // size, g - i // size) + set_weight * _popcount(i % size)
            for i in range(g * size)]


def clifford_chain_level(orders):
    """x -> level of dx (an upper valuation on the idempotent chain, composed with delta)."""
    return [a for a, o in enumerate(orders) for _ in range(o)]


def defect(S):
    """n - rank of a partial bijection (labels like [0>1,2>0])."""
    n = max(len(lab.strip("[]").split(",")) if lab != "[]" else 0 for lab in S.labels)
    return [n - (lab.count(">")) for lab in S.labels]


def _fx(name, S, values):
    return Fixture(name, S, Valuation.from_values(values, S.labels))


@lru_cache(maxsize=1)
def builtin_fixtures() -> tuple[Fixture, ...]:
    out = []
    for n in range(2, 7):
        G = alg.cyclic(n)
        out += [
            _fx(f"C{n}/word", G, word_length(n)),
            _fx(f"C{n}/zero", G, [0] * n),
            _fx(f"C{n}/discrete", G, discrete(G)),
        ]
    out.append(_fx("C6/word-x3/2", alg.cyclic(6), [Fraction(3, 2) * x for x in word_length(6)]))
    for m in range(1, 5):
        P = alg.powerset(m)
        out += [
            _fx(f"P({m})/cardinality", P, cardinality(m)),
            _fx(f"P({m})/measure", P, weighted_measure(m)),
            _fx(f"P({m})/zero", P, [0] * P.n),
        ]
        if m >= 2:
            out.append(_fx(f"P({m})/capped", P, capped_cardinality(m, m - 1)))
    for n in (2, 3, 5, 8):
        Ch = alg.chain(n)
        out.append(_fx(f"chain{n}/index", Ch, list(range(n))))
        if n >= 3:
            out.append(_fx(f"chain{n}/plateau", Ch, [min(x, 1) for x in range(n)]))
    out.append(_fx("chain3/0-1-2", alg.chain(3), [0, 1, 2]))
    for sizes in ((3, 3), (2, 2, 2)):
        Gr = alg.grid(*sizes)
        tag = "x".join(map(str, sizes))
        out += [_fx(f"grid{tag}/l1", Gr, grid_l1(sizes)), _fx(f"grid{tag}/sup", Gr, grid_sup(sizes))]
    for g, m in ((2, 1), (2, 2), (3, 2), (4, 4), (2, 5)):
        C = alg.clifford(g, m)
        out += [
            _fx(f"C{g}xP({m})/length+card", C, clifford_norm(g, m)),
            _fx(f"C{g}xP({m})/card-of-delta", C, clifford_norm(g, m, group_weight=0)),
        ]
    out.append(_fx("C2xP(2)/zero", alg.clifford(2, 2), [0] * 8))
    for orders in ((4, 2, 1), (6, 3), (2, 2, 2)):
        CL = alg.clifford_chain(orders)
        out.append(_fx(f"{CL.name}/level", CL, clifford_chain_level(orders)))
    for n in (2, 3):
        I = alg.sym_inverse(n)
        out += [
            _fx(f"I{n}/defect", I, defect(I)),
            _fx(f"I{n}/discrete", I, discrete(I)),
            _fx(f"I{n}/zero", I, [0] * I.n),
        ]
    B = alg.brandt(2)
    out += [
        _fx("B2/zero", B, [0] * B.n),
        _fx("B2/off-diagonal", B, [0, 1, 1, 0, 1]),
        _fx("B2/weak-only", B, [0, 1, 1, 1, 1]),
        _fx("B2/uniform", B, [1, 1, 1, 1, 1]),
    ]
    return tuple(out)


def get_fixture(name: str) -> Fixture:
    for f in builtin_fixtures():
        if f.name == name:
            return f
    raise BadParams(f"unknown fixture {name!r}")


def fixture_names() -> list[str]:
    return [f.name for f in builtin_fixtures()]


def semigroup_fixtures() -> list[alg.FiniteInverseSemigroup]:
    """The carriers of the semigroup acceptance suite."""
    out = [alg.sym_inverse(2), alg.sym_inverse(3)]
    out += [alg.powerset(m) for m in range(0, 5)]
    out += [alg.cyclic(n) for n in range(2, 7)]
    out += [alg.clifford(g, m) for g, m in ((2, 1), (2, 2), (3, 2), (2, 4), (4, 3), (2, 5), (4, 4))]
    out += [alg.clifford_chain(o) for o in ((4, 2, 1), (6, 3), (2, 2, 2))]
    out += [alg.chain(5), alg.grid(3, 3), alg.brandt(2)]
    return out


# Named norms for the CLI ``generate --norm`` option.
def family_norm(S: alg.FiniteInverseSemigroup, family: str, norm: str, params: dict):
    n = S.n
    if norm == "zero":
        return [0] * n
    if norm == "discrete":
        return discrete(S)
    table = {
        ("cyclic", "word"): lambda: word_length(n),
        ("powerset", "cardinality"): lambda: cardinality(params["n"]),
        ("powerset", "measure"): lambda: weighted_measure(params["n"]),
        ("chain", "index"): lambda: list(range(n)),
        ("grid", "l1"): lambda: grid_l1(params["sizes"]),
        ("grid", "sup"): lambda: grid_sup(params["sizes"]),
        ("clifford", "length+card"): lambda: clifford_norm(params["n"], params["m"]),
        ("clifford-chain", "level"): lambda: clifford_chain_level(params["orders"]),
        ("sym-inverse", "defect"): lambda: defect(S),
    }
    key = (family, norm)
    if key not in table:
        choices = sorted({nm for fam, nm in table if fam == family} | {"zero", "discrete"})
        raise BadParams(f"norm {norm!r} not available for family {family!r}; choose from {choices}")
    return table[key]()
