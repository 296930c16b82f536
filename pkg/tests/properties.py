"""Property suite shared by test_properties (profile budget) and the
acceptance run (1000 examples per property)."""

from hypothesis import given, strategies as st

from strategies import AB, ABC, UABC, factor_of, monoids, pattern_sets, prefix_of, rooted_at, trees, words
from treeavoid.avoidance import is_consistent, is_minimal, minimal_consistent_words, restrict_to_root, truncate_patterns
from treeavoid.monoid import evaluate_tree, word_composition
from treeavoid.oracle import count_avoiding
from treeavoid.series import en
from treeavoid.trees import LEAF, arity, is_factor, is_prefix, partial_composition

ASSIGNMENT = {"u": (0,), "a": (0, 1), "b": (1, 0), "c": (0, 2, 1)}


@st.composite
def composable(draw, count=2):
    """t, its leaf index i, then further trees."""
    t = draw(trees(UABC, 0, 4))
    i = draw(st.integers(1, arity(t)))
    return (t, i) + tuple(draw(trees(UABC, 0, 3)) for _ in range(count))


@given(composable(2), st.data())
def free_operad_axioms(case, data):
    t, i, s, r = case
    assert partial_composition(LEAF, 1, t) == t
    assert partial_composition(t, i, LEAF) == t
    j = data.draw(st.integers(1, arity(s)), label="j")
    left = partial_composition(partial_composition(t, i, s), i + j - 1, r)
    assert left == partial_composition(t, i, partial_composition(s, j, r))
    if arity(t) > 1:
        k = data.draw(st.integers(1, arity(t) - 1), label="k")
        k, m = (k, k + 1) if data.draw(st.booleans(), label="adjacent") else (1, arity(t))
        one = partial_composition(partial_composition(t, k, s), m + arity(s) - 1, r)
        two = partial_composition(partial_composition(t, m, r), k, s)
        assert one == two


@given(monoids.flatmap(lambda M: st.tuples(st.just(M), words(M), words(M), words(M))), st.data())
def word_operad_axioms(case, data):
    M, u, v, w = case
    i = data.draw(st.integers(1, len(u)), label="i")
    j = data.draw(st.integers(1, len(v)), label="j")
    e = M.unit_word()
    assert word_composition(e, 1, u, M) == u
    assert word_composition(u, i, e, M) == u
    assert word_composition(word_composition(u, i, v, M), i + j - 1, w, M) == word_composition(u, i, word_composition(v, j, w, M), M)
    if len(u) > 1:
        k, m = sorted(data.draw(st.lists(st.integers(1, len(u)), min_size=2, max_size=2, unique=True), label="km"))
        one = word_composition(word_composition(u, k, v, M), m + len(v) - 1, w, M)
        assert one == word_composition(word_composition(u, m, w, M), k, v, M)


@given(composable(1), monoids)
def evaluation_is_a_morphism(case, M):
    t, i, s = case
    ev = lambda x: evaluate_tree(x, ASSIGNMENT, M)
    assert ev(partial_composition(t, i, s)) == word_composition(ev(t), i, ev(s), M)


@given(trees(ABC, 0, 5).flatmap(lambda t: st.tuples(st.just(t), prefix_of(t), factor_of(t))), st.data())
def poset_laws(case, data):
    t, p, f = case
    assert is_prefix(t, t) and is_factor(t, t)
    assert is_prefix(p, t) and is_factor(f, t)
    # prefix implies factor
    assert is_factor(p, t)
    pp = data.draw(prefix_of(p), label="pp")
    ff = data.draw(factor_of(f), label="ff")
    assert is_prefix(pp, t) and is_factor(ff, t)
    if is_prefix(t, p):
        assert p == t
    if is_factor(t, f):
        assert f == t
    other = data.draw(trees(ABC, 0, 5), label="other")
    if is_factor(other, t) and is_factor(t, other):
        assert other == t
    if is_prefix(other, t):
        assert is_factor(other, t)


@given(composable(1))
def en_multiplicative(case):
    t, i, s = case
    u = partial_composition(t, i, s)
    assert en(u, UABC) == en(t, UABC) * en(s, UABC)
    assert en(u, UABC).arity == arity(t) + arity(s) - 1 == arity(u)


@given(st.sampled_from(ABC.letters).flatmap(lambda x: st.tuples(st.just(x), st.lists(rooted_at(x), max_size=4))))
def emitted_words_minimal(case):
    x, pats = case
    Pa = restrict_to_root(frozenset(pats), x)
    for w in minimal_consistent_words(Pa, x):
        assert len(w) == x.arity
        assert is_consistent(w, Pa) and is_minimal(w, Pa)


@given(pattern_sets(AB, max_size=4, max_degree=4), pattern_sets(AB, max_size=2), st.integers(0, 3))
def truncation_limit(P, Q, d):
    assert count_avoiding(AB, truncate_patterns(P, d), Q, d) == count_avoiding(AB, P, Q, d)


SUITE = [
    free_operad_axioms,
    word_operad_axioms,
    evaluation_is_a_morphism,
    poset_laws,
    en_multiplicative,
    emitted_words_minimal,
    truncation_limit,
]
