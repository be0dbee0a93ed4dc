"""JSON files for every structure.

Rationals are written as canonical ``"num/den"`` strings.  On input,
integers and ``"num"`` strings are accepted too; floats, NaN and the
infinities are rejected so that nothing inexact can sneak in.
"""
from __future__ import annotations

import json
from pathlib import Path

from .algebra import BicyclicCarrier, FiniteInverseSemigroup, validate_table
from .errors import InputError
from .exact import parse_rational
from .metrics import InterlacedSpace, SqrtPairMap, validate_interlaced
from .norms import BicyclicNorm, Valuation
from .ordermaps import PairMap

KINDS = ("semigroup", "pairmap", "valuation", "interlaced", "classification", "bridge-report", "report")


def _no_float(text):
    raise InputError(f"floating-point literal {text!r} is not allowed; write rationals as \"num/den\"")


def _no_constant(text):
    raise InputError(f"{text} is not allowed in input files")


def loads(text: str) -> dict:
    try:
        data = json.loads(text, parse_float=_no_float, parse_constant=_no_constant)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError("top-level JSON value must be an object")
    return data


def load(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def _encode(obj, level: int) -> str:
    pad, inner = "  " * level, "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {_encode(v, level + 1)}"
                 for k, v in obj.items())
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            # rows of scalars stay on one line, so tables read as tables
            return "[" + ", ".join(json.dumps(v, ensure_ascii=False) for v in obj) + "]"
        return "[\n" + ",\n".join(inner + _encode(v, level + 1) for v in obj) + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False, allow_nan=False)


def dumps(obj) -> str:
    """Deterministic serialization: key order fixed by the producer, scalar rows inline."""
    if hasattr(obj, "to_dict"):
        obj = obj.to_dict()
    return _encode(obj, 0) + "\n"


def dump(obj, path=None) -> str:
    text = dumps(obj)
    if path is not None:
        Path(path).write_text(text)
    return text


def _field(d: dict, key: str, kind: str):
    if key not in d:
        raise InputError(f"{kind} file is missing {key!r}")
    return d[key]


def _expect(d: dict, kind: str):
    got = d.get("kind")
    if got != kind:
        raise InputError(f"expected a {kind!r} file, got kind {got!r}")


def _int(v, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"{what} must be an integer, got {v!r}")
    return v


# ------------------------------------------------------------- readers


def semigroup_from_dict(d: dict):
    _expect(d, "semigroup")
    if "symbolic" in d:
        if d["symbolic"] != "bicyclic":
            raise InputError(f"unknown symbolic carrier {d['symbolic']!r}")
        return BicyclicCarrier(_int(d.get("k", 1), "k"))
    table = _field(d, "table", "semigroup")
    n = _int(d.get("n", len(table)), "n")
    if not isinstance(table, list) or any(not isinstance(r, list) for r in table):
        raise InputError("table must be a list of rows")
    rows = [[_int(v, "table entry") for v in r] for r in table]
    return validate_table(n, rows, d.get("labels"), d.get("name", ""))


def _matrix(d: dict, kind: str):
    vals = _field(d, "values", kind)
    if not isinstance(vals, list) or any(not isinstance(r, list) for r in vals):
        raise InputError(f"{kind} values must be a list of rows")
    rows = [[parse_rational(v) for v in r] for r in vals]
    if "n" in d and _int(d["n"], "n") != len(rows):
        raise InputError(f"n = {d['n']} but there are {len(rows)} rows")
    return rows


def pairmap_from_dict(d: dict, labels=None):
    _expect(d, "pairmap")
    p = PairMap.from_values(_matrix(d, "pairmap"), d.get("labels", labels))
    if d.get("sqrt"):
        if (p.num < 0).any():
            raise InputError("sqrt pair-map has a negative radicand")
        return SqrtPairMap(p)
    return p


def valuation_from_dict(d: dict, labels=None):
    _expect(d, "valuation")
    if "symbolic" in d:
        if d["symbolic"] != "bicyclic":
            raise InputError(f"unknown symbolic valuation {d['symbolic']!r}")
        return BicyclicNorm(BicyclicCarrier(_int(d.get("k", 1), "k")), d.get("group_norm", "l1"))
    vals = _field(d, "values", "valuation")
    if not isinstance(vals, list):
        raise InputError("valuation values must be a list")
    vals = [parse_rational(v) for v in vals]
    if "n" in d and _int(d["n"], "n") != len(vals):
        raise InputError(f"n = {d['n']} but there are {len(vals)} values")
    return Valuation.from_values(vals, d.get("labels", labels))


def interlaced_from_dict(d: dict) -> InterlacedSpace:
    _expect(d, "interlaced")
    p = pairmap_from_dict(_field(d, "p", "interlaced"))
    q = pairmap_from_dict(_field(d, "q", "interlaced"))
    return validate_interlaced(p, q)


def bicyclic_norm_to_dict(norm: BicyclicNorm) -> dict:
    return {"kind": "valuation", "symbolic": "bicyclic", "k": norm.carrier.k, "group_norm": norm.group_norm}


def to_dict(obj) -> dict:
    if isinstance(obj, BicyclicNorm):
        return bicyclic_norm_to_dict(obj)
    if isinstance(obj, (FiniteInverseSemigroup, BicyclicCarrier, PairMap, SqrtPairMap, Valuation,
                        InterlacedSpace)) or hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


READERS = {
    "semigroup": semigroup_from_dict,
    "pairmap": pairmap_from_dict,
    "valuation": valuation_from_dict,
    "interlaced": interlaced_from_dict,
}


def read(path, kind: str, **kw):
    d = load(path)
    return READERS[kind](d, **kw)
