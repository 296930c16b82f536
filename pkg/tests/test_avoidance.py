import itertools

import pytest
from hypothesis import given, strategies as st

from strategies import ABC, AB, pattern_sets, rooted_at, trees
from treeavoid.avoidance import (
    ResourceCapError,
    build_system,
    canonical_prefix_set,
    derivative,
    empty_word,
    is_admissible,
    is_consistent,
    is_minimal,
    minimal_consistent_words,
    restrict_to_root,
    stringy_system,
    subset_cap,
    system_from_json,
    truncate_patterns,
    word_sum,
)
from treeavoid.catalog import EXAMPLE_PATTERNS as P, example2_family, get
from treeavoid.oracle import enumerate_trees
from treeavoid.rewrite import lefts
from treeavoid.trees import (
    LEAF,
    GradedAlphabet,
    TreeError,
    avoids_factors,
    avoids_prefixes,
    corolla,
    is_prefix,
    is_stringy,
    parse,
    pattern_set,
    suffixes,
)

A, B, C = (corolla(ABC[x]) for x in "abc")
CC = parse("c(*,*,c(*,*,*))")


def W(*slots):
    return tuple(frozenset(parse(x) for x in s) for s in slots)


def test_restrict_to_root():
    assert restrict_to_root(P, ABC["a"]) == {parse("a(c(*,*,*),*)")}
    assert restrict_to_root(P, ABC["b"]) == frozenset()
    assert len(restrict_to_root(P, "c")) == 4
    assert restrict_to_root(pattern_set(["a(*,*)"]), "b") == frozenset()


def test_consistency_of_shown_word():
    S = W(["a(*,*)"], ["b(*,*)", "c(*,a(*,*),*)"], ["a(*,*)", "a(*,a(*,*))"])
    Pc = restrict_to_root(P, "c")
    assert is_consistent(S, Pc)
    assert is_consistent(S, frozenset())
    assert not is_consistent(W([], [], []), Pc)
    t = parse("c(*,a(c(*,*,*),*),b(*,c(a(*,*),*,*)))")
    assert is_admissible(t, ABC["c"], S)
    assert not avoids_factors(t, P)
    assert not avoids_factors(t, Pc)
    assert is_admissible(t, "c", empty_word(3))
    assert not is_admissible(t, "a", empty_word(2))


def test_bare_corolla_blocks_everything():
    Pa = pattern_set(["a(*,*)", "a(b(*,*),*)"])
    assert minimal_consistent_words(Pa, ABC["a"]) == frozenset()
    for w in [W([], []), W(["b(*,*)"], ["a(*,*)"])]:
        assert not is_consistent(w, Pa)


def test_consistency_arity_mismatch():
    with pytest.raises(TreeError):
        is_consistent(W([], []), restrict_to_root(P, "c"))


def test_minimal_words_of_example():
    assert minimal_consistent_words(restrict_to_root(P, "a"), ABC["a"]) == {W(["c(*,*,*)"], [])}
    assert minimal_consistent_words(restrict_to_root(P, "b"), ABC["b"]) == {W([], [])}
    assert minimal_consistent_words(restrict_to_root(P, "c"), ABC["c"]) == {
        W(["a(*,*)"], ["b(*,*)"], ["a(*,*)"]),
        W(["a(*,*)", "b(*,*)"], [], ["a(*,*)"]),
        W(["a(*,*)", "b(*,*)", "c(*,*,c(*,*,*))"], [], []),
    }


def test_minimal_words_of_empty_set():
    assert minimal_consistent_words(frozenset(), ABC["c"]) == {empty_word(3)}


def test_word_sum():
    w1 = W(["a(*,*)"], ["b(*,*)"], ["a(*,*)"])
    w2 = W(["a(*,*)", "b(*,*)"], [], ["a(*,*)"])
    assert word_sum(w1, empty_word(3)) == w1
    assert word_sum(w1, w1) == w1
    assert word_sum(w1, w2) == W(["a(*,*)", "b(*,*)"], ["b(*,*)"], ["a(*,*)"])
    with pytest.raises(TreeError):
        word_sum(w1, empty_word(2))


def test_canonical_prefix_set():
    Pp = pattern_set(["a(a(*,*),*)"])
    Q = pattern_set(["a(a(*,*),*)", "b(*,*)", "b(b(*,*),*)", "a(*,b(*,*))"])
    assert canonical_prefix_set(Pp, Q) == pattern_set(["b(*,*)", "a(*,b(*,*))"])


def test_derivative():
    G1 = GradedAlphabet.of(a=1, b=1)
    fam = example2_family(6)
    assert derivative(fam, G1["a"], 1) == pattern_set(
        "b(" * k + "a(*)" + ")" * k for k in range(5)
    )
    assert derivative(frozenset(), ABC["a"], 1) == frozenset()
    assert derivative(P, ABC["c"], 1) == {A}
    assert derivative(P, ABC["a"], 1) == {C}
    assert derivative(P, ABC["a"], 2) == frozenset()
    with pytest.raises(TreeError):
        derivative(P, ABC["a"], 3)


def test_truncate_patterns():
    assert truncate_patterns(P, 0) == frozenset()
    assert truncate_patterns(P, 2) == pattern_set(["a(c(*,*,*),*)", "c(a(*,*),*,*)"])
    assert len(truncate_patterns(P, 3)) == 4
    assert truncate_patterns(P, 4) == P


def test_example_system_cancellation():
    sys = build_system(ABC, P)
    root = sys.equations[sys.root]
    cterms = [t for t in root if t.letter == "c"]
    # three singletons and two of the three pairs survive; the union of the
    # first and third words appears once with each sign and vanishes
    assert len(cterms) == 5
    cancelled = (
        canonical_prefix_set(P, {A, B, CC}),
        canonical_prefix_set(P, {B}),
        canonical_prefix_set(P, {A}),
    )
    assert all(t.operands != cancelled for t in cterms)
    assert all(t.coeff != 0 for t in root)
    assert sorted(t.coeff for t in cterms) == [-1, -1, 1, 1, 1]


def test_empty_pattern_system():
    sys = build_system(ABC, frozenset())
    assert list(sys.equations) == [frozenset()]
    terms = sys.equations[frozenset()]
    assert [(t.coeff, t.letter) for t in terms] == [(1, "a"), (1, "b"), (1, "c")]
    assert all(op == frozenset() for t in terms for op in t.operands)


def test_example5_system():
    e = get("example5")
    sys = build_system(e.alphabet, e.patterns)
    assert len(sys.equations) == 2
    text = sys.to_text().splitlines()
    assert text[0] == (
        "F{} = Leaf + a1[F{}, F{}] + a2[F{}, F{a1(*,*); a2(*,*)}]"
        " + a2[F{a1(*,*); a2(*,*)}, F{}] - a2[F{a1(*,*); a2(*,*)}, F{a1(*,*); a2(*,*)}]"
    )
    assert text[1] == "F{a1(*,*); a2(*,*)} = Leaf"


def test_example4_stringy_system():
    e = get("example4")
    sys = stringy_system(e.alphabet, e.patterns)
    assert len(sys.equations) == 5
    assert sum(1 for terms in sys.equations.values() if not terms) == 1
    assert sys.term_map() == build_system(e.alphabet, e.patterns).term_map()


def test_stringy_corolla_excluded():
    G = GradedAlphabet.of(a=2)
    sys = stringy_system(G, pattern_set(["a(*,*)"]))
    assert sys.equations == {frozenset(): ()}


def test_dup_stringy_system():
    e = get("dup")
    sys = stringy_system(e.alphabet, lefts(e.orientation))
    assert len(sys.equations) == 3
    assert sys.term_map() == build_system(e.alphabet, lefts(e.orientation)).term_map()


def test_stringy_system_rejects_non_stringy():
    with pytest.raises(TreeError):
        stringy_system(ABC, P)


def test_leaf_pattern_rejected():
    with pytest.raises(TreeError):
        build_system(ABC, [LEAF])


def test_subset_cap(monkeypatch):
    G = AB
    # two independent choices per pattern: four minimal words for a
    pats = pattern_set(["a(a(*,*),a(*,*))", "a(b(*,*),b(*,*))"])
    assert len(minimal_consistent_words(pats, G["a"])) == 4
    with pytest.raises(ResourceCapError):
        build_system(G, pats, cap=2)
    monkeypatch.setenv("TREEAVOID_SUBSET_CAP", "3")
    assert subset_cap() == 3
    with pytest.raises(ResourceCapError):
        build_system(G, pats)


def test_system_json_and_hand_encoded():
    e = get("example2")
    assert set(e.system.equations) == {"", "Q"}
    data = build_system(ABC, P).to_json()
    assert data["root"] == ""
    assert data["equations"][0]["variable"] == ""
    with pytest.raises(TreeError):
        system_from_json(
            {
                "alphabet": [{"name": "a", "arity": 1}],
                "root": "",
                "equations": [{"variable": "", "terms": [{"coeff": 1, "letter": "a", "operands": ["X"]}]}],
            }
        )


def test_completeness_of_minimal_words():
    """A tree rooted at a prefix-avoids Pa iff some minimal word admits it."""
    for x in AB:
        pool = [t for t in enumerate_trees(AB, 3) if t != LEAF and t[0] == x.name]
        for Pa in itertools.combinations(pool[:12], 2):
            Pa = frozenset(Pa)
            Ms = minimal_consistent_words(Pa, x)
            for t in enumerate_trees(AB, 4):
                if t == LEAF or t[0] != x.name:
                    continue
                assert avoids_prefixes(t, Pa) == any(is_admissible(t, x, w) for w in Ms)


@given(st.data())
def test_consistent_words_characterized(data):
    x = data.draw(st.sampled_from(ABC.letters))
    Pa = frozenset(data.draw(st.lists(rooted_at(x), max_size=4)))
    Ms = sorted(minimal_consistent_words(Pa, x), key=repr)
    if not Ms:
        assert corolla(x) in Pa
        return
    w = data.draw(st.sampled_from(Ms))
    t = data.draw(rooted_at(x, max_degree=5))
    if is_admissible(t, x, w):
        assert not any(is_prefix(s, t) for s in Pa)


@given(st.data())
def test_minimal_words_bound(data):
    x = data.draw(st.sampled_from(ABC.letters))
    Pa = frozenset(data.draw(st.lists(rooted_at(x), max_size=4)))
    Ms = minimal_consistent_words(Pa, x)
    assert len(Ms) <= x.arity ** len(Pa)
    assert (Ms == frozenset()) == (corolla(x) in Pa)
    assert all(is_minimal(w, Pa) for w in Ms)


@given(pattern_sets(AB), pattern_sets(AB, max_size=2))
def test_system_closure(Pp, Q):
    sys = build_system(AB, Pp, Q)
    sys.check_closed()
    pool = set()
    for s in Pp | Q:
        pool |= suffixes(s)
    for key in sys.equations:
        assert key <= pool


@st.composite
def stringy_sets(draw, G=AB, max_size=4):
    ts = draw(st.lists(trees(G, 1, 4), max_size=3 * max_size))
    return frozenset([t for t in ts if is_stringy(t)][:max_size])


@given(stringy_sets(), stringy_sets(max_size=2))
def test_stringy_equals_build(Pp, Q):
    assert stringy_system(AB, Pp, Q).term_map() == build_system(AB, Pp, Q).term_map()
