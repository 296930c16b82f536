"""Golden comparisons for catalog entries."""

from dataclasses import dataclass

from .avoidance import build_system, stringy_system
from .monoid import evaluate_tree, suboperad_elements
from .oracle import count_avoiding
from .rewrite import faithfulness_probe, lefts
from .series import check_algebraic_equation, solve_root
from .trees import is_stringy, to_text


@dataclass
class Check:
    entry: str
    name: str
    passed: bool
    detail: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.entry} {self.name}" + (f": {self.detail}" if self.detail else "")


def _fmt(xs):
    return ",".join(str(x) for x in xs)


def operad_checks(e, D, probe_degree, oracle_degree):
    out = []
    rels = set(e.relations) | {(y, x) for x, y in e.relations}
    ok = all((l, r) in rels for l, r in e.rules)
    out.append(Check(e.id, "rules-from-relations", ok))
    if e.monoid is not None:
        bad = [
            f"{to_text(x)} = {to_text(y)}"
            for x, y in e.relations
            if evaluate_tree(x, e.assignment, e.monoid) != evaluate_tree(y, e.assignment, e.monoid)
        ]
        out.append(Check(e.id, "monoid-relations", not bad, "; ".join(bad)))
    sys = build_system(e.alphabet, lefts(e.orientation))
    H = solve_root(sys, D)
    dims = H.by_arity()
    want = e.dimensions[: len(dims)]
    got = dims[: len(want)]
    out.append(Check(e.id, "dimensions", got == want, f"got {_fmt(got)}, expected {_fmt(want)}"))
    if e.rows:
        bad = []
        for n, row in sorted(e.rows.items()):
            if n <= D + 1 and H.row(n) != row:
                bad.append(f"t^{n}: got {_fmt(H.row(n))}, expected {_fmt(row)}")
        checked = [n for n in e.rows if n <= D + 1]
        detail = "; ".join(bad) or f"t^1..t^{max(checked)}" if checked else ""
        out.append(Check(e.id, "rows", not bad, detail))
    if e.equation:
        r = check_algebraic_equation(H, e.equation)
        detail = "residual empty" if r.passed else f"{len(r.residual)} nonzero residual terms"
        out.append(Check(e.id, "equation", r.passed, detail))
    od = min(D, oracle_degree)
    oracle = count_avoiding(e.alphabet, lefts(e.orientation), frozenset(), od).as_series()
    Hs = solve_root(sys, od)
    out.append(Check(e.id, "oracle", oracle == Hs, f"degree <= {od}"))
    if probe_degree is not None:
        rep = faithfulness_probe(e.presentation, e.orientation, probe_degree)
        out.append(
            Check(
                e.id,
                "faithfulness-probe",
                rep.verdict == "pass",
                f"degree <= {probe_degree}, classes {_fmt(rep.class_counts.values())}",
            )
        )
        if e.monoid is not None:
            N = rep.max_arity_checked
            sizes = [len(x) for x in suboperad_elements(e.monoid, e.assignment.values(), N)]
            nfs = [rep.normal_form_counts.get(n, 0) for n in range(1, N + 1)]
            out.append(
                Check(e.id, "monoid-counts", sizes == nfs, f"suboperad {_fmt(sizes)}, normal forms {_fmt(nfs)}")
            )
    return out


def avoidance_checks(e, D, oracle_degree):
    out = []
    od = min(D, oracle_degree)
    sys = build_system(e.alphabet, e.patterns, e.prefix_patterns)
    S = solve_root(sys, od)
    O = count_avoiding(e.alphabet, e.patterns, e.prefix_patterns, od).as_series()
    out.append(Check(e.id, "oracle", S == O, f"degree <= {od}"))
    if all(is_stringy(s) for s in e.patterns | e.prefix_patterns):
        st = stringy_system(e.alphabet, e.patterns, e.prefix_patterns)
        out.append(Check(e.id, "stringy-system", st.term_map() == sys.term_map()))
    return out


def system_checks(e, D, oracle_degree):
    od = min(D, oracle_degree)
    S = solve_root(e.system, od)
    O = count_avoiding(e.alphabet, e.family(od), frozenset(), od).as_series()
    return [Check(e.id, "oracle-truncated-family", S == O, f"degree <= {od}")]


def verify_entry(e, D, probe_degree=None, oracle_degree=None):
    oracle_degree = D if oracle_degree is None else oracle_degree
    if e.kind == "operad":
        return operad_checks(e, D, probe_degree, oracle_degree)
    if e.kind == "avoidance":
        return avoidance_checks(e, D, oracle_degree)
    return system_checks(e, D, oracle_degree)
