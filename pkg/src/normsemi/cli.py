"""Command-line front end.

Exit codes: 0 when every assertion passes, 1 when an axiom or inequality
fails (a witness is printed), 2 when the input itself is bad.
"""
from __future__ import annotations

import argparse
import io as _io
import json
import shlex
import sys
from contextlib import redirect_stdout

from . import algebra as alg
from . import bridge, kernel, metrics, norms
from . import io as nio
from .errors import AxiomError, InputError
from .fixtures import builtin_fixtures, family_norm, get_fixture
from .metrics import InterlacedSpace, validate_interlaced
from .ordermaps import PairMap
from .report import Report, make_witness, show

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

# flags that must not change the output, so they stay out of the command echo
_QUIET_FLAGS = {"--threads", "--format", "--out", "--norm-out"}


class CliError(InputError):
    pass


# ------------------------------------------------------------ arguments


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _common() -> argparse.ArgumentParser:
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--seed", type=int, default=0, help="seed for sampled checks (default 0)")
    c.add_argument("--threads", type=int, default=None, help="worker threads for triple loops")
    c.add_argument("--format", choices=("json", "text"), default="json")
    c.add_argument("--samples", type=int, default=10_000, help="sample count on symbolic carriers")
    c.add_argument("--out", help="write the main output here instead of stdout")
    return c


def _sources() -> argparse.ArgumentParser:
    s = argparse.ArgumentParser(add_help=False)
    g = s.add_argument_group("inputs")
    g.add_argument("--semigroup", metavar="FILE")
    g.add_argument("--valuation", metavar="FILE")
    g.add_argument("--pairmap", "--metric", dest="pairmap", metavar="FILE", help="p (or the metric d)")
    g.add_argument("--q", metavar="FILE", help="second pair-map of an interlaced space")
    g.add_argument("--interlaced", metavar="FILE")
    g.add_argument("--builtin", metavar="NAME", help="a built-in fixture (see `generate --list`)")
    f = s.add_argument_group("inline family (instead of --semigroup)")
    f.add_argument("--family", choices=alg.FAMILIES)
    f.add_argument("--n", type=int)
    f.add_argument("--m", type=int)
    f.add_argument("--k", type=int)
    f.add_argument("--sizes", type=_int_list)
    f.add_argument("--orders", type=_int_list)
    f.add_argument("--params", help="family parameters as a JSON object")
    f.add_argument("--norm", help="named valuation for the family (e.g. cardinality, word, l1)")
    return s


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="normsemi", description="Exact checks for normed inverse semigroups.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    common, sources = _common(), _sources()

    g = sub.add_parser("generate", parents=[common, sources], help="write a structure file")
    g.add_argument("--norm-out", metavar="FILE", help="also write the --norm valuation here")
    g.add_argument("--list", action="store_true", help="list built-in fixtures and exit")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", parents=[common, sources], help="run a verification suite")
    v.add_argument("--what", required=False,
                   choices=("semigroup", "pseudonorm", "norm", "ppm", "interlaced", "skew", "bridge"))
    v.add_argument("--replay", metavar="REPORT", help="re-run the command recorded in a report")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("induce", parents=[common, sources], help="induced pair-maps")
    i.add_argument("--variant", required=True, choices=("p", "d0", "d1", "d2", "dpq"))
    i.set_defaults(func=cmd_induce)

    b = sub.add_parser("bridge", parents=[common, sources], help="norm <-> metric on Clifford monoids")
    b.add_argument("--direction", required=True, choices=("metric-to-norm", "roundtrip"))
    b.set_defaults(func=cmd_bridge)

    c = sub.add_parser("classify", parents=[common, sources], help="classification flags of a pseudo-norm")
    c.set_defaults(func=cmd_classify)

    q = sub.add_parser("quotient", parents=[common, sources], help="quotient of an interlaced space")
    q.set_defaults(func=cmd_quotient)
    return ap


def _echo(argv: list[str]) -> list[str]:
    out, skip = [], False
    for tok in argv:
        if skip:
            skip = False
            continue
        flag = tok.split("=", 1)[0]
        if flag in _QUIET_FLAGS:
            skip = "=" not in tok
            continue
        out.append(tok)
    return out


# --------------------------------------------------------------- inputs


def _family_params(args) -> dict:
    params = {}
    if args.params:
        try:
            params = nio.loads(args.params)
        except InputError as exc:
            raise CliError(f"--params: {exc}") from None
    for key in ("n", "m", "k", "sizes", "orders"):
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    return params


def get_semigroup(args, required: bool = True):
    if args.semigroup:
        return nio.read(args.semigroup, "semigroup")
    if args.builtin:
        return get_fixture(args.builtin).S
    if args.family:
        return alg.generate(args.family, **_family_params(args))
    if required:
        raise CliError("a semigroup is needed: use --semigroup, --builtin or --family")
    return None


def get_valuation(args, S, required: bool = True):
    labels = S.labels if isinstance(S, alg.FiniteInverseSemigroup) else None
    if args.valuation:
        v = nio.read(args.valuation, "valuation", labels=labels)
    elif args.builtin:
        v = get_fixture(args.builtin).v
    elif args.norm and isinstance(S, alg.BicyclicCarrier):
        v = norms.BicyclicNorm(S, args.norm)
    elif args.norm and args.family:
        v = norms.Valuation.from_values(family_norm(S, args.family, args.norm, _family_params(args)), labels)
    elif required:
        raise CliError("a valuation is needed: use --valuation, --builtin or --family with --norm")
    else:
        return None
    if isinstance(S, alg.BicyclicCarrier) != isinstance(v, norms.BicyclicNorm):
        raise CliError("symbolic valuations go with symbolic carriers, tables with tables")
    if isinstance(v, norms.BicyclicNorm):
        if v.carrier.k != S.k:
            raise CliError(f"valuation is over Z^{v.carrier.k}, carrier over Z^{S.k}")
    elif v.n != S.n:
        raise CliError(f"valuation has {v.n} values, semigroup has {S.n} elements")
    return v


def _finite(S, what: str):
    if not isinstance(S, alg.FiniteInverseSemigroup):
        raise CliError(f"{what} needs a finite carrier")
    return S


def get_pairmap(args, S=None, required: bool = True):
    if args.pairmap:
        labels = S.labels if isinstance(S, alg.FiniteInverseSemigroup) else None
        p = nio.read(args.pairmap, "pairmap", labels=labels)
        if not isinstance(p, PairMap):
            raise CliError("a sqrt pair-map cannot be used as input here")
        if S is not None and p.n != S.n:
            raise CliError(f"pair-map has {p.n} points, semigroup has {S.n} elements")
        return p
    if required:
        raise CliError("a pair-map is needed: use --pairmap")
    return None


def get_interlaced(args) -> InterlacedSpace:
    if args.interlaced:
        return nio.read(args.interlaced, "interlaced")
    if args.pairmap and args.q:
        p = get_pairmap(args)
        q = nio.read(args.q, "pairmap")
        return validate_interlaced(p, q)
    raise CliError("an interlaced space is needed: use --interlaced or --pairmap with --q")


def _induced_or_given(args):
    """The pair-map p: given directly, or induced by a valuation."""
    if args.pairmap:
        return get_pairmap(args)
    S = _finite(get_semigroup(args), "an induced pair-map")
    return norms.induced_p(S, get_valuation(args, S))


# ------------------------------------------------------------- commands


def cmd_generate(args):
    if args.list:
        return {"kind": "fixtures", "names": [f.name for f in builtin_fixtures()]}, EXIT_OK
    if args.builtin:
        fx = get_fixture(args.builtin)
        S, v = fx.S, fx.v
    else:
        if not args.family:
            raise CliError("generate needs --family (or --builtin / --list)")
        S = get_semigroup(args)
        v = get_valuation(args, S, required=False)
    if v is not None:
        if not args.norm_out:
            raise CliError("use --norm-out to say where the valuation goes")
        nio.dump(nio.to_dict(v), args.norm_out)
    return nio.to_dict(S), EXIT_OK


def _verify_pseudonorm(S, v, args) -> Report:
    if isinstance(S, alg.BicyclicCarrier):
        return norms.verify_bicyclic_norm(v, samples=args.samples, seed=args.seed)
    rep = Report("verify pseudonorm")
    base = norms.validate_pseudonorm(S, v)
    rep.extend(base)
    if base.passed:
        rep.extend(norms.verify_norm_properties(S, v))
        weak, cyc = norms.permutability(S, v)
        rep.info("permutability", "weak / cyclic", weakly_permutable=weak, cyclically_permutable=cyc)
    return rep


def _verify_norm(S, v) -> Report:
    rep = Report("verify norm")
    base = norms.validate_pseudonorm(S, v)
    rep.extend(base)
    if not base.passed:
        return rep
    sep = norms.separation_witness(S, v)
    wit = None
    if sep is not None:
        e, x = sep
        wit = make_witness({"e": S.label(e), "x": S.label(x)}, v[x], v[e], "!=",
                           note="x lies in the local monoid of e and x != e")
    rep.check("separation: ||x|| = ||e|| with x in S_e forces x = e", sep is None,
              sum(1 for _ in S.idempotents), "separation axiom", wit)
    c = norms.classify(S, v)
    rep.info("classification", "norm ladder", **{k: getattr(c, k) for k in c.LADDER},
             weakly_permutable=c.weakly_permutable)
    return rep


def _run_verify(args) -> Report:
    what = args.what
    if what == "semigroup":
        S = get_semigroup(args)
        if isinstance(S, alg.BicyclicCarrier):
            return alg.verify_bicyclic(S, samples=args.samples, seed=args.seed)
        return alg.verify_semigroup(S)
    if what == "pseudonorm":
        S = get_semigroup(args)
        return _verify_pseudonorm(S, get_valuation(args, S), args)
    if what == "norm":
        S = _finite(get_semigroup(args), "verify norm")
        return _verify_norm(S, get_valuation(args, S))
    if what == "ppm":
        return metrics.verify_ppm(_induced_or_given(args))
    if what == "interlaced":
        space = get_interlaced(args)
        rep = metrics.check_interlaced_invariants(space)
        flags = metrics.classify_interlaced(space)
        rep.info("flags", "interlaced classification", interlaced=flags.interlaced,
                 metric=flags.metric, antisymmetric=flags.antisymmetric, k_min=space.k_min)
        return rep
    if what == "skew":
        S = _finite(get_semigroup(args), "verify skew")
        return bridge.is_skew_convex(S, get_pairmap(args, S)).to_report("d")
    if what == "bridge":
        S = _finite(get_semigroup(args), "verify bridge")
        return bridge.verify_dclifford(S, get_valuation(args, S))
    raise CliError("verify needs --what (or --replay)")


def _replay(args):
    old = nio.load(args.replay)
    argv = old.get("argv")
    if not isinstance(argv, list) or not all(isinstance(t, str) for t in argv):
        raise CliError("report has no replayable argv")
    buf = _io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    new = json.loads(buf.getvalue()) if buf.getvalue().strip().startswith("{") else {}

    def failing(rep):
        return [(a["name"], a.get("witness")) for a in rep.get("assertions", []) if a["status"] == "fail"]

    rep = Report("verify --replay")
    same = failing(new) == failing(old) and new.get("passed") == old.get("passed")
    rep.check("replay reproduces the recorded outcome", same, len(failing(old)) or 1, "witness replay",
              None if same else make_witness({"report": args.replay}, len(failing(new)), len(failing(old)), "="))
    rep.info("replayed command", "witness replay", command=shlex.join(argv), exit_code=code)
    return rep


def cmd_verify(args):
    rep = _replay(args) if args.replay else _run_verify(args)
    return rep, EXIT_OK if rep.passed else EXIT_FAIL


def cmd_induce(args):
    variant = args.variant
    if variant == "dpq":
        return metrics.intrinsic_dpq(get_interlaced(args)), EXIT_OK
    p = _induced_or_given(args)
    if variant == "p":
        return p, EXIT_OK
    fn = {"d0": metrics.d0, "d1": metrics.d1, "d2": metrics.d2}[variant]
    return fn(p), EXIT_OK


def cmd_bridge(args):
    if args.direction == "metric-to-norm":
        S = _finite(get_semigroup(args), "the bridge")
        d = get_pairmap(args, S) if args.pairmap else _default_metric(args, S)
        v, rep = bridge.bridge_metric_to_norm(S, d)
        rep.info("v", "v(x) = d(x, 0) + d(dx, 0)", **{S.label(x): show(v[x]) for x in range(S.n)})
        return rep, EXIT_OK if rep.passed else EXIT_FAIL
    if args.builtin == "all":
        rep = Report("bridge roundtrip --builtin all")
        skipped = []
        for fx in builtin_fixtures():
            if alg.is_clifford(fx.S) and fx.S.is_monoid:
                rep.extend(bridge.roundtrip_check(fx.S, fx.v), prefix=f"{fx.name}: ")
            else:
                skipped.append(fx.name)
        # the roundtrip needs a Clifford monoid; the rest are listed, not failed
        rep.info("skipped fixtures", "roundtrip needs a Clifford monoid", fixtures=", ".join(skipped))
        return rep, EXIT_OK if rep.passed else EXIT_FAIL
    S = _finite(get_semigroup(args), "the bridge")
    rep = bridge.roundtrip_check(S, get_valuation(args, S))
    return rep, EXIT_OK if rep.passed else EXIT_FAIL


def _default_metric(args, S):
    """Without --pairmap, use d1 of the given valuation."""
    return metrics.d1(norms.induced_p(S, get_valuation(args, S)))


def cmd_classify(args):
    S = _finite(get_semigroup(args), "classify")
    v = get_valuation(args, S)
    c = norms.classify(S, v)
    return c, EXIT_OK if c.is_pseudonorm else EXIT_FAIL


def cmd_quotient(args):
    space = get_interlaced(args)
    qs, proj = metrics.quotient(space)
    d = qs.to_dict()
    d["projection"] = [int(i) for i in proj]
    return d, EXIT_OK


# --------------------------------------------------------------- output


def _error_report(args, argv, exc: AxiomError) -> dict:
    w = dict(exc.witness)
    known = {"lhs", "rhs", "relation"}
    if "elements" in w:
        elements = w.pop("elements")
        extra = {k: v for k, v in w.items() if k not in known}
    else:
        elements, extra = {k: v for k, v in w.items() if k not in known}, {}
    witness = make_witness({k: show(v) for k, v in elements.items()})
    for k in ("lhs", "relation", "rhs"):
        if k in w:
            witness[k] = show(w[k])
    witness.update({k: show(v) for k, v in extra.items()})
    if "lhs" in witness and "relation" not in witness:
        witness["relation"] = "<="
    doc = (type(exc).__doc__ or "").strip()
    return {
        **_header(args),
        "command": shlex.join(_echo(argv)),
        "argv": _echo(argv),
        "passed": False,
        "exhaustive": True,
        "assertions": [{"name": exc.kind, "anchor": doc or exc.kind, "status": "fail", "checked": 0,
                        "witness": witness}],
        "error": {"kind": exc.kind, "message": str(exc), "doc": doc},
    }


def _header(args) -> dict:
    """Bridge runs are filed as bridge reports, tagged with their direction."""
    if args.cmd == "bridge":
        return {"kind": "bridge-report", "direction": args.direction}
    if args.cmd == "verify" and args.what == "bridge" and not args.replay:
        return {"kind": "bridge-report", "direction": "norm-to-metric"}
    return {"kind": "report"}


def _render(obj, args, argv) -> str:
    if isinstance(obj, Report):
        obj.command = shlex.join(_echo(argv))
        if args.format == "text":
            return obj.to_text() + "\n"
        d = obj.to_dict()
        d.pop("kind")
        d = {**_header(args), "command": d.pop("command"), "argv": _echo(argv), **d}
        return nio.dumps(d)
    d = nio.to_dict(obj) if not isinstance(obj, dict) else obj
    if args.format == "text" and d.get("kind") == "classification":
        return "\n".join(f"{k}: {v}" for k, v in d.items() if k not in ("kind", "witnesses")) + "\n"
    return nio.dumps(d)


def _render_error(d: dict, fmt: str) -> str:
    if fmt == "json":
        return nio.dumps(d)
    a = d["assertions"][0]
    w = a["witness"]
    els = ", ".join(f"{k}={v}" for k, v in w.get("elements", {}).items())
    line = f"{d['command']}: FAIL\n  [FAIL] {a['name']}: {d['error']['message']}  witness: {els}"
    if "lhs" in w:
        line += f"  {w['lhs']} {w['relation']} {w['rhs']} fails"
    return line + f"\n  ({d['error']['doc']})\n"


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads is not None:
        if args.threads < 1:
            print("error: --threads must be >= 1", file=sys.stderr)
            return EXIT_INPUT
        kernel.set_threads(args.threads)
    if args.samples < 1:
        print("error: --samples must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        obj, code = args.func(args)
        text = _render(obj, args, argv)
    except AxiomError as exc:
        text, code = _render_error(_error_report(args, argv, exc), args.format), EXIT_FAIL
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_INPUT
    # failures always reach stdout so the witness is visible
    if not args.out or code == EXIT_FAIL:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
