"""Command line front end.  Every subcommand prints one JSON document.

Exit codes: 0 verified, 1 mathematical negative, 2 bound exhausted or bad
input (parse error, invariant violation, unreadable file).
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from .errors import RittError, BoundExceeded, InvalidTuple, NotCertified, ConstraintError
from .parser import parse, to_text, ParseError
from .poly import compose_all, simplify, func_degree
from .decompose import DecompChain, family_generator
from . import monodromy as mono
from . import genus as gen
from . import ritt

OK, NEGATIVE, BOUND = 0, 1, 2


class _Exit(Exception):
    def __init__(self, code, payload):
        self.code, self.payload = code, payload


def _fail(kind, msg, code=BOUND):
    raise _Exit(code, {"verdict": "error" if code == BOUND else "negative",
                       "error": {"kind": kind, "message": msg}})


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        _fail("ingest", "%s: %s" % (path, e))


def load_expr(s, key=None):
    """An expression string, or @file.json holding a string or {"expr": ...}."""
    if s is None:
        return None
    if s.startswith("@"):
        obj = _read_json(s[1:])
        if isinstance(obj, dict):
            obj = obj.get(key) if key and key in obj else obj.get("expr")
        if not isinstance(obj, str):
            _fail("ingest", "%s holds no expression" % s[1:])
        s = obj
    return parse(s)


def load_tuple(s):
    """A tuple file, or a builtin spec such as T:4, T:4:-1, pow:3, D:2."""
    head = s.split(":")[0]
    if head in ("T", "D", "pow", "power", "chebyshev", "laurent_D") and ":" in s:
        parts = s.split(":")
        sign = int(parts[2]) if len(parts) > 2 else 1
        return mono.builtin_tuple(head, int(parts[1]), sign)
    return mono.MonodromyTuple.from_json(_read_json(s))


def load_chain(s):
    if s.startswith("[") or s.startswith("{"):
        obj = json.loads(s)
    else:
        obj = _read_json(s)
    if isinstance(obj, list):
        obj = {"factors": obj}
    return DecompChain.from_json(obj)


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            _fail("ingest", "missing --%s" % n)


def _text(x):
    return to_text(x)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, Fraction):
        return str(x)
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    try:
        return to_text(x)
    except TypeError:
        return str(x)


# -- subcommands -------------------------------------------------------------

def cmd_compose(args):
    fs = [load_expr(e) for e in args.exprs]
    H = simplify(compose_all(fs))
    return OK, {"verdict": "verified", "result": _text(H), "degree": func_degree(H)}


def cmd_decompose(args):
    _need(args, "A")
    F = load_expr(args.A, "A")
    chains = ritt.decompose_any(F, args.conductor)
    lengths = sorted({len(c) for c in chains})
    return OK, {
        "verdict": "verified",
        "input": _text(F),
        "chains": [[_text(f) for f in c.factors] for c in chains],
        "degrees": [list(c.degrees()) for c in chains],
        "lengths": lengths,
        "equal_length": len(lengths) == 1,
    }


def _quad(args):
    if args.quad:
        obj = _read_json(args.quad)
        try:
            return [parse(obj[k]) for k in ("A", "C", "B", "D")]
        except KeyError as e:
            _fail("ingest", "quadruple file lacks %s" % e)
    _need(args, "A", "B", "C", "D")
    return [load_expr(getattr(args, k), k) for k in ("A", "C", "B", "D")]


def cmd_classify(args):
    A, C, B, D = _quad(args)
    try:
        w = ritt.classify_double(A, C, B, D, args.conductor)
    except ConstraintError as e:
        _fail("invariant", str(e))
    out = {"verdict": "verified", "witness": w.to_json(), "reverified": w.verify(A, C, B, D)}
    return OK, out


def _two_tuples(args):
    if not args.tuple or len(args.tuple) != 2:
        _fail("ingest", "give exactly two --tuple arguments")
    return load_tuple(args.tuple[0]), load_tuple(args.tuple[1])


def cmd_fiber_product(args):
    f, g = _two_tuples(args)
    fp = mono.fiber_product(f, g)
    out = {"verdict": "verified"}
    out.update(fp.to_json())
    out["genus_sum_rh0"] = gen.genus_sum_rh0(f, g)
    out["irreducible"] = fp.count == 1
    return OK, out


def cmd_genus(args):
    if args.mode == "rh0":
        f, g = _two_tuples(args)
        rhs = gen.genus_sum_rh0(f, g)
        fp = mono.fiber_product(f, g)
        ok = rhs == fp.euler_sum()
        return (OK if ok else NEGATIVE), {
            "verdict": "verified" if ok else "negative",
            "rh0": rhs, "euler_sum": fp.euler_sum(),
            "genera": [c.genus for c in fp.components]}
    if args.mode == "rh2":
        _need(args, "A", "B")
        pA = gen.passport_of_poly(load_expr(args.A, "A"))
        pB = gen.passport_of_poly(load_expr(args.B, "B"))
        try:
            g, terms = gen.genus_pair_rh2(pA, pB, detail=True)
        except RittError as e:
            return NEGATIVE, {"verdict": "negative", "error": {"kind": "formula", "message": str(e)}}
        return OK, {"verdict": "verified", "genus": g,
                    "s_terms": [{"label": mono.label_str(x), "a": a, **t.to_json()} for x, a, t in terms]}
    if args.mode == "passport":
        return cmd_passport(args)
    if args.mode == "special":
        _need(args, "A")
        rep = gen.special_values(gen.passport_of_poly(load_expr(args.A, "A")))
        return (OK if rep["consistent"] else NEGATIVE), dict(verdict="verified" if rep["consistent"] else "negative", **rep)
    _fail("ingest", "unknown genus mode")


def cmd_passport(args):
    _need(args, "A")
    p = gen.passport_of_poly(load_expr(args.A, "A"))
    return OK, {"verdict": "verified", "passport": p.to_json(), "s": p.s,
                "riemann_hurwitz_ok": p.riemann_hurwitz_ok()}


def cmd_irreducible(args):
    tuples = _two_tuples(args) if args.tuple else None
    if tuples is None:
        _need(args, "A", "B")
    A = load_expr(args.A, "A") if args.A else None
    B = load_expr(args.B, "B") if args.B else None
    if tuples is not None and A is None:
        o = mono.o_count(*tuples)
        rep = {"verdict": "irreducible" if o == 1 else "reducible", "o": o, "reason": "fiber product"}
    else:
        rep = gen.irreducibility(A, B, tuples)
    code = {"irreducible": OK, "reducible": NEGATIVE}.get(rep["verdict"], BOUND)
    return code, rep


def cmd_ritt_chain(args):
    _need(args, "src", "dst")
    d1, d2 = load_chain(args.src), load_chain(args.dst)
    try:
        status, mc = ritt.weak_equivalence(d1, d2, args.depth, args.bound, args.conductor)
    except ConstraintError as e:
        _fail("invariant", str(e))
    code = {"found": OK, "disconnected": NEGATIVE}.get(status, BOUND)
    out = {"verdict": status}
    if mc is not None:
        out["moves"] = len(mc)
        out["positions"] = mc.positions
        out["chains"] = [[_text(f) for f in c.factors] for c in mc.chains]
        out["reverified"] = mc.verify()
    return code, out


def cmd_first_ritt(args):
    _need(args, "A")
    F = load_expr(args.A, "A")
    rep = ritt.first_ritt_check(F, args.depth, args.bound, args.conductor)
    good = rep["equal_length"] and rep["degree_multisets_equal"] and rep["connected"] is True
    code = OK if good else (BOUND if rep["connected"] == "bound" else NEGATIVE)
    rep["chains"] = [[_text(f) for f in c.factors] for c in rep["chains"]]
    rep["verdict"] = "verified" if good else ("bound" if code == BOUND else "negative")
    return code, rep


def _thm11_grid(case):
    from math import gcd
    if case == 1:
        for n in range(1, 5):
            for r in range(0, n):
                if gcd(n, r) == 1:
                    yield {"n": n, "r": r, "L": parse("z + 2 - 1/z")}
    elif case == 2:
        for s in ("1", "z", "z^2 - 3", "2*z^3 + z"):
            yield {"S": parse(s)}
    elif case in (3, 4):
        for n in range(1, 7):
            for m in range(1, 7):
                if gcd(n, m) == 1:
                    yield {"n": n, "m": m}
    elif case == 5:
        for n in range(1, 4):
            for m in range(1, 4):
                if gcd(n, m) == 1:
                    for l in (2, 3):
                        for j in range(1, 2 * n * l, 2):
                            yield {"n": n, "m": m, "l": l, "eps_j": j}
    else:
        yield {}


def cmd_verify_thm11(args):
    cases = [args.case] if args.case else [1, 2, 3, 4, 5, 6]
    single = {k: getattr(args, k) for k in ("n", "m", "r", "l") if getattr(args, k) is not None}
    if args.eps_j is not None:
        single["eps_j"] = args.eps_j
    for k in ("L", "S"):
        if getattr(args, k) is not None:
            single[k] = load_expr(getattr(args, k), k)
    results = []
    t0 = time.time()
    for c in cases:
        grid = [single] if (args.case and single) or c == 6 else list(_thm11_grid(c))
        for params in grid:
            try:
                A, C, B, D = family_generator(c, **params)
                ok = True
            except ConstraintError as e:
                _fail("invariant", str(e))
            except AssertionError:
                ok = False
            item = {"case": c, "params": _jsonable(params), "ok": ok}
            if ok:
                item["identity"] = "(%s) o (%s) = (%s) o (%s)" % tuple(map(_text, (A, C, B, D)))
            results.append(item)
    ok = all(r["ok"] for r in results)
    return (OK if ok else NEGATIVE), {"verdict": "verified" if ok else "negative",
                                      "checked": len(results), "seconds": round(time.time() - t0, 3),
                                      "results": results}


def cmd_mono(args):
    if not args.tuple:
        _fail("ingest", "give --tuple")
    if args.action == "validate":
        obj = _read_json(args.tuple[0]) if not ":" in args.tuple[0] else None
        t = mono.MonodromyTuple.from_json(obj, check=False) if obj else load_tuple(args.tuple[0])
        rep = mono.validate(t)
        rep["cycle_types"] = [list(c) for c in t.cycle_types()]
        if rep["ok"]:
            rep["genus"] = mono.genus_of_tuple(t)
        rep["verdict"] = "verified" if rep["ok"] else "negative"
        return (OK if rep["ok"] else NEGATIVE), rep
    if args.action == "product":
        f, g = _two_tuples(args)
        return cmd_fiber_product(args)
    if args.action == "blocks":
        t = load_tuple(args.tuple[0])
        bs = mono.block_systems(t, args.bound or mono.DEFAULT_BLOCK_BOUND)
        return OK, {"verdict": "verified",
                    "block_systems": [[[x + 1 for x in b] for b in s] for s in bs]}
    if args.action == "reduce":
        f, g = _two_tuples(args)
        f1, g1, w = mono.reduce_pair(f, g, args.bound or mono.DEFAULT_GROUP_CAP)
        return OK, {"verdict": "verified", "f": f1.to_json(), "g": g1.to_json(),
                    "equal_degrees": f1.degree == g1.degree, **w}
    _fail("ingest", "unknown mono action")


# -- parser ---------------------------------------------------------------------

def _common(p, exprs=True):
    if exprs:
        for k in ("A", "B", "C", "D"):
            p.add_argument("--" + k, help="expression or @file.json")
    p.add_argument("--tuple", action="append", help="tuple file or builtin (T:4, T:4:-1, pow:3, D:2)")
    p.add_argument("--depth", type=int, default=ritt.DEFAULT_DEPTH)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--conductor", type=int, default=1)
    p.add_argument("--json", action="store_true", help="compact single-line output")


def build_parser():
    ap = argparse.ArgumentParser(prog="rittkit", description="Decompositions of rational functions with two poles")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("compose", help="compose expressions, outermost first")
    p.add_argument("exprs", nargs="+")
    _common(p, exprs=False)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("decompose", help="all maximal decompositions of --A")
    _common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("classify", help="classify A o C = B o D")
    _common(p)
    p.add_argument("--quad", help="JSON file with keys A, C, B, D")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("fiber-product", help="components of two tuples")
    _common(p, exprs=False)
    p.set_defaults(func=cmd_fiber_product)

    p = sub.add_parser("genus", help="genus formulas and passport checks")
    p.add_argument("mode", choices=["rh0", "rh2", "passport", "special"])
    _common(p)
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("irreducible", help="is A(x) - B(y) irreducible")
    _common(p)
    p.set_defaults(func=cmd_irreducible)

    p = sub.add_parser("passport", help="passport of a rational polynomial")
    _common(p)
    p.set_defaults(func=cmd_passport)

    for name in ("ritt-chain", "ritt"):
        p = sub.add_parser(name, help="Ritt-move chain between two maximal chains")
        if name == "ritt":
            p.add_argument("what", choices=["chain"])
        p.add_argument("--from", dest="src", help="chain JSON file or inline list")
        p.add_argument("--to", dest="dst")
        _common(p, exprs=False)
        p.set_defaults(func=cmd_ritt_chain, bound=ritt.DEFAULT_CAP)

    p = sub.add_parser("first-ritt", help="lengths and move-connectivity of all chains of --A")
    _common(p)
    p.set_defaults(func=cmd_first_ritt, bound=ritt.DEFAULT_CAP)

    p = sub.add_parser("verify-thm11", help="re-verify the six families")
    p.add_argument("--case", type=int)
    for k in ("n", "m", "r", "l"):
        p.add_argument("--" + k, type=int)
    p.add_argument("--eps-j", dest="eps_j", type=int)
    p.add_argument("--L")
    p.add_argument("--S")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_thm11)

    p = sub.add_parser("mono", help="monodromy tuple tools")
    p.add_argument("action", choices=["validate", "product", "blocks", "reduce"])
    _common(p, exprs=False)
    p.set_defaults(func=cmd_mono)
    return ap


_VALUE_FLAGS = {"--A", "--B", "--C", "--D", "--L", "--S", "--from", "--to"}


def _glue_values(argv):
    """Let expression values start with '-' (``--B "-T(4)"``)."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv):
            out.append("%s=%s" % (a, argv[i + 1]))
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(_glue_values(sys.argv[1:] if argv is None else list(argv)))
    try:
        code, payload = args.func(args)
    except _Exit as e:
        code, payload = e.code, e.payload
    except ParseError as e:
        code, payload = BOUND, {"verdict": "error", "error": {"kind": "parse", "message": str(e),
                                                             "line": e.line, "column": e.column}}
    except (InvalidTuple, ConstraintError, NotCertified) as e:
        code, payload = BOUND, {"verdict": "error", "error": {"kind": "invariant", "message": str(e)}}
    except BoundExceeded as e:
        code, payload = BOUND, {"verdict": "bound", "error": {"kind": "bound", "message": str(e)}}
    except RittError as e:
        code, payload = NEGATIVE, {"verdict": "negative", "error": {"kind": "math", "message": str(e)}}
    payload = _jsonable(payload)
    if getattr(args, "json", False):
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print(json.dumps(payload, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
