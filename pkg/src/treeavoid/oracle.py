"""Brute-force counts by exhaustive tree enumeration.

Nothing here touches consistent words or equation systems: trees are
generated directly and tested with the factor and prefix predicates.
"""

from functools import lru_cache
from itertools import product
from typing import Dict, Iterator

from .series import SeriesError, TraceMonomial, TraceSeries, en
from .trees import LEAF, GradedAlphabet, canonical_key, is_factor, is_prefix, pattern_set


def compositions(total, parts):
    """Tuples of ``parts`` nonnegative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def trees_of_degree(G: GradedAlphabet, d: int):
    return _trees_of_degree(G, d)


@lru_cache(maxsize=64)
def _trees_of_degree(G, d):
    if d == 0:
        return (LEAF,)
    out = []
    for a in G:
        for split in compositions(d - 1, a.arity):
            for kids in product(*(_trees_of_degree(G, k) for k in split)):
                out.append((a.name,) + kids)
    return tuple(out)


def enumerate_trees(G: GradedAlphabet, max_degree: int) -> Iterator:
    """Every tree of degree <= max_degree exactly once, in canonical order."""
    for d in range(max_degree + 1):
        yield from sorted(trees_of_degree(G, d), key=canonical_key)


class RefinedCount:
    """Number of trees per trace monomial, up to some degree."""

    def __init__(self, alphabet: GradedAlphabet, max_degree: int, counts: Dict[TraceMonomial, int]):
        self.alphabet = alphabet
        self.max_degree = max_degree
        self.counts = dict(counts)

    def by_degree(self):
        out = [0] * (self.max_degree + 1)
        for m, c in self.counts.items():
            out[m.degree] += c
        return out

    def by_arity(self, n_max=None):
        if self.alphabet.has_unary():
            raise SeriesError("by-arity view needs no arity-one letters")
        n_max = self.max_degree + 1 if n_max is None else n_max
        out = [0] * n_max
        for m, c in self.counts.items():
            if m.arity <= n_max:
                out[m.arity - 1] += c
        return out

    def as_series(self) -> TraceSeries:
        return TraceSeries.from_terms(self.alphabet, self.max_degree, self.counts)

    def to_json(self):
        return self.as_series().to_json()

    def __eq__(self, other):
        return isinstance(other, RefinedCount) and self.counts == other.counts


def _tally(G, trees, d):
    counts = {}
    for t in trees:
        m = en(t, G)
        counts[m] = counts.get(m, 0) + 1
    return RefinedCount(G, d, counts)


def avoiding_trees_filter(G, P, Q, d):
    """Literal filter of the full enumeration."""
    P = pattern_set(P)
    Q = pattern_set(Q)
    for t in enumerate_trees(G, d):
        if any(is_factor(s, t) for s in P):
            continue
        if any(is_prefix(s, t) for s in Q):
            continue
        yield t


def _factor_free_by_degree(G, P, d):
    """Trees factor-avoiding P, grown from factor-avoiding subtrees.

    A tree avoids P as a factor iff its subtrees do and no pattern is a
    prefix of the tree itself, so only the root has to be tested."""
    layers = [[LEAF]]
    for n in range(1, d + 1):
        cur = []
        for a in G:
            roots = [s for s in P if s[0] == a.name]
            for split in compositions(n - 1, a.arity):
                for kids in product(*(layers[k] for k in split)):
                    t = (a.name,) + kids
                    if not any(is_prefix(s, t) for s in roots):
                        cur.append(t)
        layers.append(cur)
    return layers


def avoiding_trees(G, P, Q, d):
    P = pattern_set(P)
    Q = pattern_set(Q)
    for layer in _factor_free_by_degree(G, P, d):
        for t in layer:
            if not any(is_prefix(s, t) for s in Q):
                yield t


def count_avoiding(G: GradedAlphabet, P, Q=frozenset(), d=5, method="grow") -> RefinedCount:
    """Count trees of degree <= d factor-avoiding P and prefix-avoiding Q."""
    if method == "grow":
        trees = avoiding_trees(G, P, Q, d)
    elif method == "filter":
        trees = avoiding_trees_filter(G, P, Q, d)
    else:
        raise ValueError(f"unknown method {method!r}")
    return _tally(G, trees, d)
