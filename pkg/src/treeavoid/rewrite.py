"""Rewrite rules on syntax trees, normal forms and bounded probes."""

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .avoidance import build_system
from .oracle import trees_of_degree
from .series import solve_root
from .trees import (
    LEAF,
    GradedAlphabet,
    TreeError,
    arity,
    degree,
    is_factor,
    is_prefix,
    parse,
    positions,
    replace_at,
    subtree_at,
    to_text,
)


class StepBudgetExhausted(RuntimeError):
    def __init__(self, tree, steps):
        super().__init__(f"no normal form reached after {steps} steps")
        self.tree = tree
        self.steps = steps


@dataclass(frozen=True)
class RewriteRule:
    lhs: object
    rhs: object

    def __post_init__(self):
        if self.lhs == LEAF:
            raise TreeError("left member of a rule cannot be the leaf")
        if arity(self.lhs) != arity(self.rhs):
            raise TreeError(
                f"rule {to_text(self.lhs)} -> {to_text(self.rhs)} changes the arity"
            )

    def __str__(self):
        return f"{to_text(self.lhs)} -> {to_text(self.rhs)}"


@dataclass(frozen=True)
class Orientation:
    rules: Tuple[RewriteRule, ...]

    @classmethod
    def of(cls, *pairs):
        return cls(tuple(RewriteRule(_tree(l), _tree(r)) for l, r in pairs))

    def to_json(self):
        return {"rules": [{"lhs": to_text(r.lhs), "rhs": to_text(r.rhs)} for r in self.rules]}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls.of(*((d["lhs"], d["rhs"]) for d in data["rules"]))

    def without(self, index):
        return Orientation(self.rules[:index] + self.rules[index + 1:])


@dataclass(frozen=True)
class Presentation:
    alphabet: GradedAlphabet
    relations: Tuple[Tuple[object, object], ...]

    def __post_init__(self):
        for x, y in self.relations:
            if arity(x) != arity(y):
                raise TreeError(f"relation {to_text(x)} = {to_text(y)} mixes arities")

    @classmethod
    def of(cls, alphabet, *pairs):
        return cls(alphabet, tuple((_tree(x), _tree(y)) for x, y in pairs))

    def to_json(self):
        return {
            "alphabet": self.alphabet.to_json()["letters"],
            "relations": [[to_text(x), to_text(y)] for x, y in self.relations],
        }


def _tree(x):
    return parse(x) if isinstance(x, str) else x


def lefts(R: Orientation) -> frozenset:
    return frozenset(r.lhs for r in R.rules)


def match(pattern, t):
    """Subtrees of ``t`` sitting under the leaves of ``pattern``, or None."""
    out = []

    def go(p, u):
        if p == LEAF:
            out.append(u)
            return True
        if u == LEAF or p[0] != u[0]:
            return False
        return all(go(x, y) for x, y in zip(p[1:], u[1:]))

    return out if go(pattern, t) else None


def _plug(t, operands):
    it = iter(operands)

    def go(u):
        if u == LEAF:
            return next(it)
        return (u[0],) + tuple(go(c) for c in u[1:])

    return go(t)


def _apply_at(t, path, rule):
    u = subtree_at(t, path)
    ops = match(rule.lhs, u)
    if ops is None:
        return None
    return replace_at(t, path, _plug(rule.rhs, ops))


def rewrite_successors(t, R: Orientation):
    """Trees reached by one rule application, in occurrence order (no repeats)."""
    out = []
    seen = set()
    for path, _ in positions(t):
        for rule in R.rules:
            s = _apply_at(t, path, rule)
            if s is not None and s not in seen:
                seen.add(s)
                out.append(s)
    return out


def is_normal_form(t, R: Orientation) -> bool:
    for _, u in positions(t):
        for rule in R.rules:
            if is_prefix(rule.lhs, u):
                return False
    return True


def _postorder(t, path=()):
    if t != LEAF:
        for j, c in enumerate(t[1:]):
            yield from _postorder(c, path + (j,))
        yield path, t


def normalize(t, R: Orientation, step_budget=10_000):
    """Leftmost-innermost rewriting; returns ``(normal form, steps)``."""
    steps = 0
    while True:
        for path, u in _postorder(t):
            hit = None
            for rule in R.rules:
                ops = match(rule.lhs, u)
                if ops is not None:
                    hit = _plug(rule.rhs, ops)
                    break
            if hit is not None:
                break
        else:
            return t, steps
        if steps >= step_budget:
            raise StepBudgetExhausted(t, steps)
        t = replace_at(t, path, hit)
        steps += 1


def normal_forms_upto(R: Orientation, G: GradedAlphabet, d: int):
    out = []
    for n in range(d + 1):
        out.extend(t for t in trees_of_degree(G, n) if is_normal_form(t, R))
    return out


@dataclass
class OrientationAnalysis:
    max_degree: int
    terminating: bool
    confluent: bool
    normal_form_counts: Dict[int, int]
    cycle_witness: object = None
    divergence_witness: object = None


def _tarjan(nodes, succ):
    """Strongly connected components, emitted sinks first."""
    index = {}
    low = {}
    on = set()
    stack = []
    comps = []
    counter = 0
    for start in nodes:
        if start in index:
            continue
        work = [(start, iter(succ(start)))]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on.add(start)
        while work:
            v, it = work[-1]
            pushed = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on.add(w)
                    work.append((w, iter(succ(w))))
                    pushed = True
                    break
                if w in on:
                    low[v] = min(low[v], index[w])
            if pushed:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def analyze_orientation(R: Orientation, G: GradedAlphabet, d: int) -> OrientationAnalysis:
    """Exhaustive rewriting over all trees of degree <= d.

    Rewriting preserves the degree, so each degree is a finite graph.  It
    terminates when no component has a cycle, and it is confluent when each
    tree reaches exactly one normal form."""
    for rule in R.rules:
        if degree(rule.lhs) != degree(rule.rhs):
            raise TreeError(f"rule {rule} changes the degree; the probe needs finite orbits")
    terminating = True
    confluent = True
    cycle = None
    diverge = None
    nf_counts = {}
    for n in range(d + 1):
        nodes = trees_of_degree(G, n)
        succ_cache = {}

        def succ(t):
            if t not in succ_cache:
                succ_cache[t] = rewrite_successors(t, R)
            return succ_cache[t]

        reach = {}
        for comp in _tarjan(nodes, succ):
            members = set(comp)
            if len(comp) > 1 or any(t in succ(t) for t in comp):
                terminating = False
                cycle = cycle or comp[0]
            nfs = set()
            for t in comp:
                nexts = succ(t)
                if not nexts:
                    nfs.add(t)
                for s in nexts:
                    if s not in members:
                        nfs |= reach[s]
            nfs = frozenset(nfs)
            for t in comp:
                reach[t] = nfs
            if len(nfs) != 1:
                confluent = False
                diverge = diverge or comp[0]
        for t in nodes:
            if not succ(t):
                k = arity(t)
                nf_counts[k] = nf_counts.get(k, 0) + 1
    return OrientationAnalysis(d, terminating, confluent, nf_counts, cycle, diverge)


def check_termination_upto(R, G, d) -> bool:
    return analyze_orientation(R, G, d).terminating


def check_confluence_upto(R, G, d) -> bool:
    return analyze_orientation(R, G, d).confluent


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x != y:
            self.parent[y] = x

    def classes(self):
        return len({self.find(x) for x in self.parent})


def relation_neighbours(t, relations):
    """Trees reached by one rewrite using a relation in either direction."""
    for path, u in positions(t):
        for x, y in relations:
            for l, r in ((x, y), (y, x)):
                ops = match(l, u)
                if ops is not None:
                    yield replace_at(t, path, _plug(r, ops))


def joinable(x, y, relations, budget=100_000) -> bool:
    """Breadth-first search from x to y through relation rewrites."""
    if x == y:
        return True
    seen = {x}
    todo = deque([x])
    while todo and len(seen) < budget:
        t = todo.popleft()
        for s in relation_neighbours(t, relations):
            if s == y:
                return True
            if s not in seen:
                seen.add(s)
                todo.append(s)
    return False


def class_counts(pres: Presentation, d: int, max_arity: int):
    """Equivalence classes per arity, over all trees of degree <= d."""
    by_arity = {}
    for n in range(d + 1):
        for t in trees_of_degree(pres.alphabet, n):
            k = arity(t)
            if k <= max_arity:
                by_arity.setdefault(k, []).append(t)
    out = {}
    for k, trees in sorted(by_arity.items()):
        uf = _UnionFind(trees)
        for t in trees:
            for s in relation_neighbours(t, pres.relations):
                uf.union(t, s)
        out[k] = uf.classes()
    return out


@dataclass
class FaithfulnessReport:
    max_degree_checked: int
    max_arity_checked: int
    terminating: bool
    confluent: bool
    class_counts: Dict[int, int]
    normal_form_counts: Dict[int, int]
    rules_generated: bool = True
    notes: List[str] = field(default_factory=list)

    @property
    def counts_agree(self):
        return all(
            self.class_counts.get(n) == self.normal_form_counts.get(n, 0)
            for n in self.class_counts
        )

    @property
    def verdict(self):
        ok = self.terminating and self.confluent and self.counts_agree and self.rules_generated
        return "pass" if ok else "fail"

    def to_json(self):
        return {
            "checked_to_degree": self.max_degree_checked,
            "checked_to_arity": self.max_arity_checked,
            "terminating": self.terminating,
            "confluent": self.confluent,
            "class_counts": {str(k): v for k, v in sorted(self.class_counts.items())},
            "normal_form_counts": {
                str(k): v for k, v in sorted(self.normal_form_counts.items())
            },
            "verdict": self.verdict,
            "notes": self.notes,
        }

    def to_text(self):
        arities = sorted(self.class_counts)
        lines = [
            f"checked to degree {self.max_degree_checked}, arity {self.max_arity_checked}",
            f"terminating: {self.terminating}",
            f"confluent: {self.confluent}",
            "classes:      " + ",".join(str(self.class_counts[n]) for n in arities),
            "normal forms: " + ",".join(str(self.normal_form_counts.get(n, 0)) for n in arities),
        ]
        lines += self.notes
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


def faithfulness_probe(pres: Presentation, R: Orientation, d: int, check_rules=True) -> FaithfulnessReport:
    """Bounded evidence that R is a faithful orientation of the presentation.

    Class counts are taken at arities n whose trees all have degree <= d,
    that is n <= d + 1 when there is no arity-one letter."""
    G = pres.alphabet
    if G.has_unary():
        raise TreeError("faithfulness probe needs an alphabet without arity-one letters")
    notes = []
    generated = True
    if check_rules:
        for rule in R.rules:
            if not joinable(rule.lhs, rule.rhs, pres.relations):
                generated = False
                notes.append(f"rule {rule} is not generated by the relations")
    if not generated:
        raise TreeError("; ".join(notes))
    analysis = analyze_orientation(R, G, d)
    max_arity = d + 1
    classes = class_counts(pres, d, max_arity)
    nfs = {k: v for k, v in analysis.normal_form_counts.items() if k <= max_arity}
    return FaithfulnessReport(
        d, max_arity, analysis.terminating, analysis.confluent, classes, nfs, generated, notes
    )


def rew_hilbert_series(R: Orientation, G: GradedAlphabet, D: int):
    return solve_root(build_system(G, lefts(R)), D)


def factor_avoids_lefts(t, R):
    return not any(is_factor(l, t) for l in lefts(R))
