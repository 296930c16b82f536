"""Command line interface: ``treeavoid <command> ...``.

Exit codes: 0 success, 1 usage, 2 bad input, 3 verification failure,
4 resource cap exceeded.
"""

import argparse
import json
import sys

from . import catalog
from .avoidance import ResourceCapError, build_system, stringy_system
from .nalg import NAlgebraicSpec, SpecError, expected_sizes, realize, verify_realization
from .oracle import count_avoiding
from .rewrite import faithfulness_probe, lefts
from .series import SeriesError, solve_root, specialize
from .trees import GradedAlphabet, TreeError, pattern_set, sorted_trees, to_text
from .verify import verify_entry

EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_VERIFY = 3
EXIT_CAP = 4


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


def _alphabet(path):
    return GradedAlphabet.from_json(_load_json(path))


def _patterns(path, G):
    if path is None:
        return frozenset()
    data = _load_json(path)
    try:
        items = data["patterns"]
    except (KeyError, TypeError):
        raise InputError(f"{path}: expected an object with a 'patterns' list") from None
    from .trees import check_tree, parse, from_json

    out = []
    for i, x in enumerate(items):
        try:
            t = parse(x) if isinstance(x, str) else from_json(x)
            check_tree(t, G)
        except TreeError as e:
            raise InputError(f"{path}: pattern {i + 1}: {e}") from None
        out.append(t)
    return pattern_set(out)


def _emit(out, data, fmt, text):
    if fmt == "json":
        out.write(json.dumps(data, indent=2, sort_keys=False) + "\n")
    else:
        out.write(text + ("\n" if text and not text.endswith("\n") else ""))


def cmd_catalog(args, out):
    if args.action != "list":
        raise UsageError("catalog supports only 'list'")
    for k, e in catalog.CATALOG.items():
        out.write(f"{k}\t{e.kind}\t{e.summary}\n")
    return 0


def cmd_enumerate(args, out):
    G = _alphabet(args.alphabet)
    P = _patterns(args.patterns, G)
    Q = _patterns(args.prefix_patterns, G)
    rc = count_avoiding(G, P, Q, args.max_degree)
    text = rc.as_series().to_text() + "\nby degree: " + ",".join(map(str, rc.by_degree()))
    _emit(out, rc.to_json(), args.format, text)
    return 0


def cmd_system(args, out):
    G = _alphabet(args.alphabet)
    P = _patterns(args.patterns, G)
    Q = _patterns(args.prefix_patterns, G)
    sys_ = stringy_system(G, P, Q) if args.stringy else build_system(G, P, Q)
    _emit(out, sys_.to_json(), args.format, sys_.to_text())
    return 0


def _entry_system(e):
    if e.kind == "operad":
        return build_system(e.alphabet, lefts(e.orientation))
    if e.kind == "system":
        return e.system
    return build_system(e.alphabet, e.patterns, e.prefix_patterns)


def cmd_series(args, out):
    if args.catalog:
        e = _entry(args.catalog)
        sys_ = _entry_system(e)
    else:
        if not (args.alphabet and args.patterns):
            raise UsageError("series needs --catalog or both --alphabet and --patterns")
        G = _alphabet(args.alphabet)
        sys_ = build_system(G, _patterns(args.patterns, G), _patterns(args.prefix_patterns, G))
    f = solve_root(sys_, args.max_degree)
    if args.specialize:
        seq = specialize(f, args.specialize)
        _emit(out, seq, args.format, ",".join(map(str, seq)))
    else:
        _emit(out, f.to_json(), args.format, f.to_text())
    return 0


def _entry(ident):
    try:
        return catalog.get(ident)
    except KeyError as e:
        raise InputError(str(e.args[0])) from None


def cmd_rewrite_check(args, out):
    e = _entry(args.catalog)
    if e.kind != "operad":
        raise InputError(f"{e.id} has no presentation")
    rep = faithfulness_probe(e.presentation, e.orientation, args.max_degree)
    _emit(out, rep.to_json(), args.format, rep.to_text())
    return 0 if rep.verdict == "pass" else EXIT_VERIFY


def cmd_nalg(args, out):
    spec = NAlgebraicSpec.from_json(_load_json(args.spec))
    G, P = realize(spec)
    report = verify_realization(spec, args.max_degree)
    n_letters, n_patterns = expected_sizes(spec)
    data = {
        "letters": [{"name": x.name, "arity": x.arity} for x in G],
        "patterns": [to_text(s) for s in sorted_trees(P)],
        "expected_sizes": {"letters": n_letters, "patterns": n_patterns},
        "report": report.to_json(),
    }
    text = "\n".join(
        [
            f"letters ({len(G)}): " + " ".join(f"{x.name}:{x.arity}" for x in G),
            f"patterns: {len(P)}",
            f"equation: {report.equation}",
            f"checked: {report.bound}",
            "residual: " + (json.dumps(report.residual) if report.residual else "empty"),
            "verdict: " + ("pass" if report.passed else "fail"),
        ]
    )
    _emit(out, data, args.format, text)
    return 0 if report.passed else EXIT_VERIFY


def cmd_verify(args, out):
    ids = list(catalog.CATALOG) if args.catalog == "all" else [args.catalog]
    probe = args.probe_degree if args.probe_degree is not None else min(args.max_degree, 4)
    ok = True
    results = []
    for ident in ids:
        e = _entry(ident)
        for c in verify_entry(e, args.max_degree, probe_degree=probe):
            results.append(c)
            ok &= c.passed
    if args.format == "json":
        data = [
            {"entry": c.entry, "check": c.name, "passed": c.passed, "detail": c.detail}
            for c in results
        ]
        _emit(out, data, "json", "")
    else:
        for c in results:
            out.write(c.line() + "\n")
        out.write(("all checks passed" if ok else "some checks failed") + "\n")
    return 0 if ok else EXIT_VERIFY


def build_parser():
    p = _Parser(prog="treeavoid", description="Count syntax trees avoiding patterns.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("catalog", help="list built-in entries")
    c.add_argument("action", choices=["list"])
    c.set_defaults(func=cmd_catalog)

    def fmt(x):
        x.add_argument("--format", choices=["json", "text"], default="text")

    c = sub.add_parser("enumerate", help="brute-force counts")
    c.add_argument("--alphabet", required=True)
    c.add_argument("--patterns", required=True)
    c.add_argument("--prefix-patterns")
    c.add_argument("--max-degree", type=int, required=True)
    fmt(c)
    c.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("system", help="print the equation system")
    c.add_argument("--alphabet", required=True)
    c.add_argument("--patterns", required=True)
    c.add_argument("--prefix-patterns")
    c.add_argument("--stringy", action="store_true")
    fmt(c)
    c.set_defaults(func=cmd_system)

    c = sub.add_parser("series", help="solve a system to a truncation degree")
    c.add_argument("--catalog")
    c.add_argument("--alphabet")
    c.add_argument("--patterns")
    c.add_argument("--prefix-patterns")
    c.add_argument("--max-degree", type=int, required=True)
    c.add_argument("--specialize", choices=["arity", "degree"])
    fmt(c)
    c.set_defaults(func=cmd_series)

    c = sub.add_parser("rewrite-check", help="bounded termination/confluence/faithfulness probe")
    c.add_argument("--catalog", required=True)
    c.add_argument("--max-degree", type=int, required=True)
    fmt(c)
    c.set_defaults(func=cmd_rewrite_check)

    c = sub.add_parser("nalg", help="realize an N-algebraic series")
    c.add_argument("--spec", required=True)
    c.add_argument("--max-degree", type=int, required=True)
    fmt(c)
    c.set_defaults(func=cmd_nalg)

    c = sub.add_parser("verify", help="run golden comparisons")
    c.add_argument("--catalog", default="all")
    c.add_argument("--max-degree", type=int, required=True)
    c.add_argument("--probe-degree", type=int)
    fmt(c)
    c.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("a command is required")
        for name in ("max_degree", "probe_degree"):
            v = getattr(args, name, None)
            if v is not None and v < 0:
                raise UsageError(f"--{name.replace('_', '-')} must be nonnegative")
        return args.func(args, out)
    except UsageError as e:
        err.write(f"usage error: {e}\n")
        return EXIT_USAGE
    except ResourceCapError as e:
        err.write(f"resource cap: {e}\n")
        return EXIT_CAP
    except (InputError, TreeError, SeriesError, SpecError, ValueError) as e:
        err.write(f"input error: {e}\n")
        return EXIT_INPUT


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
