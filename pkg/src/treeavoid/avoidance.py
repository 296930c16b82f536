"""Consistent words and inclusion-exclusion systems for pattern avoidance.

A consistent word for a letter of arity k is a k-tuple of frozensets of
trees.  Systems are keyed by canonical prefix sets (frozensets); see
``canonical_prefix_set``.
"""

import os
from dataclasses import dataclass, field
from typing import Dict, Tuple

from .trees import (
    LEAF,
    GradedAlphabet,
    Letter,
    TreeError,
    canonical_key,
    corolla,
    degree,
    is_prefix,
    is_stringy,
    pattern_set,
    sorted_trees,
    to_text,
)

DEFAULT_SUBSET_CAP = 1 << 20


class ResourceCapError(RuntimeError):
    pass


def subset_cap():
    raw = os.environ.get("TREEAVOID_SUBSET_CAP")
    return int(raw) if raw else DEFAULT_SUBSET_CAP


def _name(a):
    return a.name if isinstance(a, Letter) else a


def restrict_to_root(P, a):
    name = _name(a)
    return frozenset(s for s in P if s != LEAF and s[0] == name)


def _check_word(word, Pa):
    for s in Pa:
        if len(s) - 1 != len(word):
            raise TreeError(f"pattern {to_text(s)} does not match a word of length {len(word)}")


def _blocks(word, s):
    return any(x != LEAF and x in word[i] for i, x in enumerate(s[1:]))


def is_consistent(word, Pa) -> bool:
    _check_word(word, Pa)
    return all(_blocks(word, s) for s in Pa)


def is_admissible(t, a, word) -> bool:
    name = _name(a)
    if t == LEAF or t[0] != name:
        return False
    if len(t) - 1 != len(word):
        raise TreeError("word length differs from the arity of the root")
    return all(not any(is_prefix(s, c) for s in slot) for c, slot in zip(t[1:], word))


def empty_word(k):
    return (frozenset(),) * k


def word_sum(w1, w2):
    if len(w1) != len(w2):
        raise TreeError("words of different lengths")
    return tuple(x | y for x, y in zip(w1, w2))


def is_minimal(word, Pa) -> bool:
    if not is_consistent(word, Pa):
        return False
    for j, slot in enumerate(word):
        for x in slot:
            smaller = word[:j] + (slot - {x},) + word[j + 1:]
            if is_consistent(smaller, Pa):
                return False
    return True


def minimal_consistent_words(Pa, a) -> frozenset:
    """All minimal Pa-consistent words for the letter ``a``.

    Patterns are folded in one at a time: a word that already blocks the
    next pattern is kept, otherwise it is extended in every possible slot.
    Every minimal word contains one of the candidates built this way, and
    consistency is upward closed, so filtering by single removals is exact.
    """
    k = a.arity if isinstance(a, Letter) else None
    if k is None:
        if not Pa:
            raise TreeError("arity of the letter is needed when Pa is empty")
        k = len(next(iter(Pa))) - 1
    _check_word(empty_word(k), Pa)
    words = {empty_word(k)}
    for s in sorted_trees(Pa):
        nxt = set()
        for w in words:
            if _blocks(w, s):
                nxt.add(w)
                continue
            for j, x in enumerate(s[1:]):
                if x != LEAF:
                    nxt.add(w[:j] + (w[j] | {x},) + w[j + 1:])
        words = nxt
    return frozenset(w for w in words if is_minimal(w, Pa))


def canonical_prefix_set(P, Q) -> frozenset:
    """Drop members of Q lying in P, and members with a strict prefix in Q."""
    rest = [s for s in Q if s not in P]
    return frozenset(
        s for s in rest if not any(x != s and is_prefix(x, s) for x in rest)
    )


def derivative(P, a, i) -> frozenset:
    """Trees s such that ``a o_i s`` belongs to P."""
    if not isinstance(a, Letter):
        raise TreeError("derivative needs a Letter")
    if not 1 <= i <= a.arity:
        raise TreeError(f"index {i} out of range 1..{a.arity}")
    out = set()
    for s in P:
        if s == LEAF or s[0] != a.name:
            continue
        if all(c == LEAF for j, c in enumerate(s[1:], 1) if j != i):
            out.add(s[i])
    return frozenset(out)


def truncate_patterns(P, d) -> frozenset:
    return frozenset(s for s in P if degree(s) <= d)


@dataclass(frozen=True)
class Term:
    coeff: int
    letter: str
    operands: Tuple


def key_text(key):
    if isinstance(key, str):
        return key
    return "; ".join(to_text(s) for s in sorted_trees(key))


def var_text(key):
    return "F{" + key_text(key) + "}"


def _key_order(key):
    if isinstance(key, str):
        return (0, key)
    return (1, len(key), [canonical_key(s) for s in sorted_trees(key)])


@dataclass
class EquationSystem:
    """Equations ``F{Q} = Leaf + sum of coeff * a[F{..}, ...]``."""

    alphabet: GradedAlphabet
    factor_set: frozenset
    root: object
    equations: Dict[object, Tuple[Term, ...]] = field(default_factory=dict)

    def variables(self):
        return sorted(self.equations, key=_key_order)

    def check_closed(self):
        for key, terms in self.equations.items():
            for term in terms:
                if term.letter not in self.alphabet:
                    raise TreeError(f"unknown letter {term.letter!r}")
                if len(term.operands) != self.alphabet.arity(term.letter):
                    raise TreeError(f"wrong operand count for {term.letter}")
                for op in term.operands:
                    if op not in self.equations:
                        raise TreeError(f"variable {var_text(op)} has no equation")
        if self.root not in self.equations:
            raise TreeError("root variable has no equation")

    def to_text(self):
        lines = []
        order = [self.root] + [v for v in self.variables() if v != self.root]
        for key in order:
            parts = [var_text(key), "=", "Leaf"]
            for term in self.equations[key]:
                sign = "+" if term.coeff > 0 else "-"
                c = abs(term.coeff)
                ops = ", ".join(var_text(op) for op in term.operands)
                coeff = "" if c == 1 else f"{c}·"
                parts.append(f"{sign} {coeff}{term.letter}[{ops}]")
            lines.append(" ".join(parts))
        return "\n".join(lines)

    def to_json(self):
        order = [self.root] + [v for v in self.variables() if v != self.root]
        return {
            "alphabet": self.alphabet.to_json()["letters"],
            "factor_set": [to_text(s) for s in sorted_trees(self.factor_set)],
            "root": key_text(self.root),
            "equations": [
                {
                    "variable": key_text(key),
                    "terms": [
                        {
                            "coeff": t.coeff,
                            "letter": t.letter,
                            "operands": [key_text(op) for op in t.operands],
                        }
                        for t in self.equations[key]
                    ],
                }
                for key in order
            ],
        }

    def term_map(self):
        return {
            key: {(t.letter, t.operands): t.coeff for t in terms}
            for key, terms in self.equations.items()
        }


def _sorted_terms(acc):
    items = [(k, c) for k, c in acc.items() if c]
    items.sort(key=lambda kc: (kc[0][0], [_key_order(op) for op in kc[0][1]]))
    return tuple(Term(c, letter, ops) for (letter, ops), c in items)


def _signed_unions(words, cap):
    """Map union-word -> sum of (-1)^(1+l) over nonempty subsets with that union."""
    table = {}
    for w in words:
        nxt = dict(table)
        for u, c in table.items():
            v = word_sum(u, w)
            nxt[v] = nxt.get(v, 0) - c
        nxt[w] = nxt.get(w, 0) + 1
        table = {u: c for u, c in nxt.items() if c}
        if len(table) > cap:
            raise ResourceCapError(
                f"subset sum table exceeds the cap of {cap} entries "
                "(set TREEAVOID_SUBSET_CAP to raise it)"
            )
    return table


def _validate(P, Q):
    P = pattern_set(P)
    Q = pattern_set(Q)
    return P, Q


def build_system(G: GradedAlphabet, P, Q=frozenset(), cap=None) -> EquationSystem:
    P, Q = _validate(P, Q)
    cap = subset_cap() if cap is None else cap
    root = canonical_prefix_set(P, Q)
    sys = EquationSystem(G, P, root)
    todo = [root]
    minimal_cache = {}
    while todo:
        S = todo.pop()
        if S in sys.equations:
            continue
        acc = {}
        PS = P | S
        for a in G:
            Pa = restrict_to_root(PS, a)
            ck = (a.name, Pa)
            if ck not in minimal_cache:
                minimal_cache[ck] = sorted(
                    minimal_consistent_words(Pa, a), key=_word_order
                )
            for u, c in _signed_unions(minimal_cache[ck], cap).items():
                ops = tuple(canonical_prefix_set(P, slot) for slot in u)
                k = (a.name, ops)
                acc[k] = acc.get(k, 0) + c
        terms = _sorted_terms(acc)
        sys.equations[S] = terms
        for t in terms:
            for op in t.operands:
                if op not in sys.equations:
                    todo.append(op)
    return sys


def _word_order(w):
    return [sorted(canonical_key(s) for s in slot) for slot in w]


def stringy_system(G: GradedAlphabet, P, Q=frozenset()) -> EquationSystem:
    """System for stringy patterns, using derivatives instead of subset sums."""
    P, Q = _validate(P, Q)
    for s in P | Q:
        if not is_stringy(s):
            raise TreeError(f"pattern {to_text(s)} is not stringy")
    root = canonical_prefix_set(P, Q)
    sys = EquationSystem(G, P, root)
    todo = [root]
    while todo:
        S = todo.pop()
        if S in sys.equations:
            continue
        PS = P | S
        acc = {}
        for a in G:
            if corolla(a) in PS:
                continue
            ops = tuple(
                canonical_prefix_set(P, derivative(PS, a, i))
                for i in range(1, a.arity + 1)
            )
            acc[(a.name, ops)] = acc.get((a.name, ops), 0) + 1
        terms = _sorted_terms(acc)
        sys.equations[S] = terms
        for t in terms:
            for op in t.operands:
                if op not in sys.equations:
                    todo.append(op)
    return sys


def system_from_json(data, alphabet=None) -> EquationSystem:
    """Load a system whose variables are arbitrary labels (hand-encoded)."""
    G = alphabet or GradedAlphabet(
        Letter(d["name"], d["arity"]) for d in data["alphabet"]
    )
    sys = EquationSystem(G, pattern_set(data.get("factor_set", [])), data["root"])
    for eq in data["equations"]:
        sys.equations[eq["variable"]] = tuple(
            Term(int(t["coeff"]), t["letter"], tuple(t["operands"]))
            for t in eq["terms"]
        )
    sys.check_closed()
    return sys
