"""The ellhall command-line interface.

Commands operate on one weight/floor/config at a time and print a
deterministic document (json, text, or tex).  Expensive results
(canonical elements, full tables) are cached on disk keyed by command,
arguments, config hash, and library version; cache writes are atomic.

Exit codes: 0 success, 1 invalid input, 2 configuration failed the
self-test, 3 internal invariant breach.
"""

import argparse
import hashlib
import json
import os
import sys
import tempfile
from fractions import Fraction
from math import inf

from . import __version__
from .coeff import Coefficient, SplitObstruction, NotDivisible
from .paths import (enumerate_paths, sl2_check, sl2_apply, in_cone,
                    canonical_path, slope, OutOfCone, NotConvex)
from .relations import (RelationConfig, default_config, bracket,
                        straighten, ConfigIncoherent, RecursionGuard,
                        NotMinimalTriangle)
from .algebra import (AlgebraElement, BASES, TTILDE, BETA, RHO, ONE_SS,
                      element_from_doc, mul, convert, ttilde_path,
                      one_alpha, parse_floor, floor_str, truncate,
                      UnstableWindow, SingularTransition)
from .canonical import (bar_element, canonical_element, kostka_table,
                        sl2_invariance_check, TILDE, PLAIN)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_CONFIG = 2
EXIT_INTERNAL = 3

INVALID_ERRORS = (ValueError, KeyError, OutOfCone, NotConvex,
                  json.JSONDecodeError, OSError, ZeroDivisionError)
INTERNAL_ERRORS = (SingularTransition, RecursionGuard, UnstableWindow,
                   NotMinimalTriangle, SplitObstruction, NotDivisible,
                   AssertionError)


class CliError(Exception):
    def __init__(self, message, code=EXIT_INVALID):
        super().__init__(message)
        self.code = code


# -- argument parsing -------------------------------------------------------

def _parse_weight(s):
    try:
        r, d = s.split(",")
        return (int(r), int(d))
    except Exception:
        raise CliError("--weight expects 'rank,degree', got %r" % (s,))


def _parse_path(s):
    try:
        segs = tuple(tuple(int(v) for v in seg.split(","))
                     for seg in s.replace(" ", "").split(";") if seg)
        if not segs or any(len(seg) != 2 for seg in segs):
            raise ValueError
        return canonical_path(segs)
    except NotConvex:
        raise
    except Exception:
        raise CliError("--path expects 'r,d;r,d;...', got %r" % (s,))


def _parse_gamma(s):
    try:
        a, b, c, d = (int(v) for v in s.split(","))
        return (a, b, c, d)
    except Exception:
        raise CliError("--gamma expects 'a,b,c,d', got %r" % (s,))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ellhall",
        description="Exact tables for the positive elliptic Hall algebra.")
    parser.add_argument("--version", action="version",
                        version="ellhall %s" % __version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--floor", default="-2",
                        help="slope floor, a rational like -5/2, or inf")
    common.add_argument("--config", default="default",
                        help="'default' or a path to a config json")
    common.add_argument("--format", default="text",
                        choices=("json", "text", "tex"))
    common.add_argument("--cache", default=None,
                        help="cache directory (env ELLHALL_CACHE overrides)")
    common.add_argument("--jobs", type=int, default=1,
                        help="worker processes for table rows")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("paths", parents=[common],
                       help="enumerate the convex paths of one weight")
    p.add_argument("--weight", required=True)

    p = sub.add_parser("mul", parents=[common],
                       help="product of two serialized elements")
    p.add_argument("left", help="json file holding the left factor")
    p.add_argument("right", help="json file holding the right factor")

    p = sub.add_parser("convert", parents=[common],
                       help="change of basis of a serialized element")
    p.add_argument("element", help="json file holding the element")
    p.add_argument("--basis", required=True, choices=BASES)

    p = sub.add_parser("bar", parents=[common],
                       help="bar involution of a serialized element")
    p.add_argument("element", help="json file holding the element")

    p = sub.add_parser("canonical", parents=[common],
                       help="canonical basis element of one path")
    p.add_argument("--path", required=True,
                   help="convex path as 'r,d;r,d;...'")
    p.add_argument("--basis", default=BETA, choices=BASES)

    p = sub.add_parser("kostka", parents=[common],
                       help="full transition table at one weight")
    p.add_argument("--weight", required=True)
    p.add_argument("--flavor", default=PLAIN, choices=(TILDE, PLAIN))

    p = sub.add_parser("sl2check", parents=[common],
                       help="invariance of the table under a shear")
    p.add_argument("--gamma", required=True,
                   help="integer matrix 'a,b,c,d' with ad - bc = 1")
    p.add_argument("--weight", required=True)
    p.add_argument("--flavor", default=PLAIN, choices=(TILDE, PLAIN))

    sub.add_parser("selftest", parents=[common],
                   help="validate the configuration against the oracles")
    return parser


# -- configuration ----------------------------------------------------------

def load_config(spec):
    if spec == "default":
        return default_config()
    try:
        with open(spec) as fh:
            return RelationConfig.from_doc(json.load(fh))
    except INVALID_ERRORS as e:
        raise CliError("cannot load config %r: %s" % (spec, e))


def config_selftest(cfg):
    """Cheap coherence checks run before trusting a user configuration;
    the full validation lives in the test suite."""
    failures = []
    try:
        cfg.validate_scalars()
    except ConfigIncoherent as e:
        failures.append(str(e))
    try:
        out = bracket((0, 1), (1, 0), cfg)
        if set(out) != {((1, 1),)}:
            failures.append("det-1 bracket is not ray-pure: %r"
                            % (sorted(out),))
        elif out[((1, 1),)].bar() != out[((1, 1),)]:
            failures.append("det-1 bracket value is not bar-symmetric")
    except (ConfigIncoherent, RecursionGuard) + INTERNAL_ERRORS as e:
        failures.append("det-1 bracket failed: %s" % e)
    try:
        lhs = straighten(((1, 0), (1, 1), (0, 1)), Fraction(-2), cfg)
        rhs = {}
        for w, c in straighten(((1, 1), (0, 1)), Fraction(-2), cfg).items():
            for o, co in straighten(((1, 0),) + w, Fraction(-2),
                                    cfg).items():
                cur = rhs.get(o, Coefficient()) + c * co
                if cur:
                    rhs[o] = cur
                elif o in rhs:
                    del rhs[o]
        if lhs != rhs:
            failures.append("straightening is not associative on the "
                            "probe word")
    except (ConfigIncoherent, RecursionGuard) + INTERNAL_ERRORS as e:
        failures.append("probe straightening failed: %s" % e)
    try:
        e = one_alpha((1, 1), Fraction(-1), cfg)
        if (bar_element(e) - e).is_zero() is False:
            failures.append("bar does not fix the completed class (1,1)")
    except (ConfigIncoherent, RecursionGuard) + INTERNAL_ERRORS as e:
        failures.append("bar probe failed: %s" % e)
    return failures


# -- cache ------------------------------------------------------------------

def cache_dir(args):
    env = os.environ.get("ELLHALL_CACHE")
    return env if env else args.cache


def cache_key(command, parts, cfg):
    blob = json.dumps([command, parts, cfg.content_hash, __version__],
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def cache_get(directory, key):
    if not directory:
        return None
    path = os.path.join(directory, key + ".json")
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None


def cache_put(directory, key, doc):
    if not directory:
        return
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, key + ".json")
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, sort_keys=True, separators=(",", ":"))
        os.replace(tmp, path)
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass


# -- output -----------------------------------------------------------------

def _coeff_tex(c):
    if c.is_zero():
        return "0"
    parts = []
    for (m, k), val in sorted(c.nt_form().items()):
        mono = ""
        if m:
            mono += "\\nu" if m == 1 else "\\nu^{%d}" % m
        if k:
            mono += "t" if k == 1 else "t^{%d}" % k
        if not mono:
            parts.append(str(val))
        elif val == 1:
            parts.append(mono)
        elif val == -1:
            parts.append("-" + mono)
        else:
            parts.append("%s %s" % (val, mono))
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


def _path_str(p):
    return ";".join("%d,%d" % seg for seg in p)


def emit(doc, fmt, out):
    if fmt == "json":
        json.dump(doc, out, sort_keys=True, separators=(",", ":"))
        out.write("\n")
        return
    kind = doc.get("kind")
    if kind == "paths":
        for p in doc["paths"]:
            row = _path_str([tuple(x) for x in p])
            out.write(row + "\n")
    elif kind == "element":
        e = doc["element"]
        if fmt == "tex":
            out.write("%% basis %s, weight (%d,%d), floor %s\n"
                      % (e["basis"], e["weight"][0], e["weight"][1],
                         e["floor"]))
            for rec in e["terms"]:
                c = Coefficient.from_doc(rec["coeff"])
                out.write("(%s)\\, [%s]\\\\\n"
                          % (_coeff_tex(c),
                             _path_str([tuple(x) for x in rec["path"]])))
        else:
            out.write("basis %s  weight (%d,%d)  floor %s  config %s\n"
                      % (e["basis"], e["weight"][0], e["weight"][1],
                         e["floor"], e["config"]))
            for rec in e["terms"]:
                c = Coefficient.from_doc(rec["coeff"])
                out.write("  %-30s %s\n"
                          % (_path_str([tuple(x) for x in rec["path"]]),
                             c.nt_str()))
    elif kind == "table":
        t = doc["table"]
        paths = [_path_str([tuple(x) for x in p]) for p in t["paths"]]
        if fmt == "tex":
            out.write("\\begin{array}{l|%s}\n" % ("c" * len(paths)))
            out.write(" & " + " & ".join(paths) + " \\\\\\hline\n")
            for name, row in zip(paths, t["entries"]):
                cells = [_coeff_tex(Coefficient.from_nt(
                    {(m, k): Fraction(n, d) for m, k, n, d in cell}))
                    for cell in row]
                out.write(name + " & " + " & ".join(cells) + " \\\\\n")
            out.write("\\end{array}\n")
        else:
            out.write("weight (%d,%d)  floor %s  flavor %s  config %s\n"
                      % (t["weight"][0], t["weight"][1], t["floor"],
                         t["flavor"], t["config"]))
            for name, row in zip(paths, t["entries"]):
                out.write(name + "\n")
                for qname, cell in zip(paths, row):
                    c = Coefficient.from_nt(
                        {(m, k): Fraction(n, d) for m, k, n, d in cell})
                    if not c.is_zero():
                        out.write("    %-28s %s\n" % (qname, c.nt_str()))
    elif kind == "sl2check":
        out.write("gamma %s  weight (%d,%d) -> (%d,%d)  pairs %d  %s\n"
                  % (doc["gamma"], doc["weight"][0], doc["weight"][1],
                     doc["image_weight"][0], doc["image_weight"][1],
                     doc["pairs"], "OK" if doc["ok"] else "MISMATCH"))
    elif kind == "selftest":
        out.write("config %s: %s\n" % (doc["config"],
                                       "pass" if doc["ok"] else "FAIL"))
        for f in doc["failures"]:
            out.write("  %s\n" % f)
    else:
        json.dump(doc, out, sort_keys=True, separators=(",", ":"))
        out.write("\n")


# -- commands ---------------------------------------------------------------

def _load_element(path, cfg):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except INVALID_ERRORS as e:
        raise CliError("cannot read element %r: %s" % (path, e))
    return element_from_doc(doc, cfg)


def cmd_paths(args, cfg):
    weight = _parse_weight(args.weight)
    floor = parse_floor(args.floor)
    paths = enumerate_paths(weight, floor)
    return {"kind": "paths", "weight": list(weight),
            "floor": floor_str(floor),
            "paths": [[list(x) for x in p] for p in paths]}


def cmd_mul(args, cfg):
    a = _load_element(args.left, cfg)
    b = _load_element(args.right, cfg)
    return {"kind": "element", "element": mul(a, b).to_doc()}


def cmd_convert(args, cfg):
    e = _load_element(args.element, cfg)
    return {"kind": "element", "element": convert(e, args.basis).to_doc()}


def cmd_bar(args, cfg):
    e = _load_element(args.element, cfg)
    return {"kind": "element", "element": bar_element(e).to_doc()}


def cmd_canonical(args, cfg):
    p = _parse_path(args.path)
    floor = parse_floor(args.floor)
    directory = cache_dir(args)
    key = cache_key("canonical", [_path_str(p), floor_str(floor),
                                  args.basis], cfg)
    doc = cache_get(directory, key)
    if doc is None:
        b = convert(canonical_element(p, floor, cfg), args.basis)
        doc = {"kind": "element", "element": b.to_doc()}
        cache_put(directory, key, doc)
    return doc


def _table_rows_parallel(weight, floor, flavor, cfg, jobs):
    from multiprocessing import get_context
    paths = enumerate_paths(weight, floor)
    ctx = get_context("fork" if sys.platform != "win32" else "spawn")
    argv = [(p, floor, flavor, cfg.to_doc()) for p in paths]
    with ctx.Pool(jobs) as pool:
        rows = pool.map(_table_row_worker, argv)
    entries = {}
    for p, row in zip(paths, rows):
        for q, cell in row:
            entries[(p, q)] = Coefficient.from_doc(cell)
    from .canonical import KostkaTable
    return KostkaTable(weight, floor, flavor, paths, entries, cfg)


def _table_row_worker(arg):
    p, floor, flavor, cfg_doc = arg
    cfg = RelationConfig.from_doc(cfg_doc)
    from .canonical import FLAVOR_BASIS
    row = convert(canonical_element(p, floor, cfg), FLAVOR_BASIS[flavor])
    return [(q, c.to_doc()) for q, c in sorted(row.terms.items())]


def cmd_kostka(args, cfg):
    weight = _parse_weight(args.weight)
    floor = parse_floor(args.floor)
    directory = cache_dir(args)
    key = cache_key("kostka", [list(weight), floor_str(floor),
                               args.flavor], cfg)
    doc = cache_get(directory, key)
    if doc is None:
        if args.jobs > 1:
            table = _table_rows_parallel(weight, floor, args.flavor, cfg,
                                         args.jobs)
        else:
            table = kostka_table(weight, floor, args.flavor, cfg)
        doc = {"kind": "table", "table": table.to_doc()}
        cache_put(directory, key, doc)
    return doc


def cmd_sl2check(args, cfg):
    gamma = _parse_gamma(args.gamma)
    weight = _parse_weight(args.weight)
    floor = parse_floor(args.floor)
    report = sl2_invariance_check(gamma, weight, floor, cfg,
                                  flavor=args.flavor)
    return {"kind": "sl2check",
            "gamma": ",".join(str(v) for v in report["gamma"]),
            "weight": list(report["weight"]),
            "image_weight": list(report["image_weight"]),
            "floor": floor_str(report["floor"]),
            "image_floor": floor_str(report["image_floor"]),
            "pairs": len(report["pairs"]),
            "ok": report["ok"]}


def cmd_selftest(args, cfg):
    failures = config_selftest(cfg)
    doc = {"kind": "selftest", "config": cfg.content_hash,
           "ok": not failures, "failures": failures}
    if failures:
        raise CliError("configuration failed the self-test:\n  "
                       + "\n  ".join(failures), EXIT_CONFIG)
    return doc


COMMANDS = {"paths": cmd_paths, "mul": cmd_mul, "convert": cmd_convert,
            "bar": cmd_bar, "canonical": cmd_canonical,
            "kostka": cmd_kostka, "sl2check": cmd_sl2check,
            "selftest": cmd_selftest}


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else EXIT_INVALID
    try:
        cfg = load_config(args.config)
        if args.jobs < 1:
            raise CliError("--jobs must be at least 1")
        doc = COMMANDS[args.command](args, cfg)
        emit(doc, args.format, out)
        return EXIT_OK
    except CliError as e:
        print("ellhall: %s" % e, file=sys.stderr)
        return e.code
    except ConfigIncoherent as e:
        print("ellhall: configuration rejected: %s" % e, file=sys.stderr)
        return EXIT_CONFIG
    except INTERNAL_ERRORS as e:
        print("ellhall: internal invariant breach (%s): %s"
              % (type(e).__name__, e), file=sys.stderr)
        return EXIT_INTERNAL
    except INVALID_ERRORS as e:
        print("ellhall: invalid input: %s" % e, file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
