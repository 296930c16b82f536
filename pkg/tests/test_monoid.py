import json

import pytest
from hypothesis import given, strategies as st

from strategies import monoids, words
from treeavoid.catalog import get
from treeavoid.monoid import (
    Monoid,
    evaluate_tree,
    parse_word,
    suboperad_elements,
    word_composition,
    word_from_json,
    word_full_composition,
    word_text,
    word_to_json,
)
from treeavoid.oracle import enumerate_trees
from treeavoid.rewrite import rewrite_successors
from treeavoid.trees import LEAF, TreeError, corolla, parse

N = Monoid.naturals()
Z3 = Monoid.cyclic(3)


def sizes(M, gens, n):
    return [len(x) for x in suboperad_elements(M, gens, n)]


def test_word_composition():
    assert word_composition((0, 1), 2, (0, 1), N) == (0, 1, 2)
    assert word_composition((0, 1), 2, (0, 1), Z3) == (0, 1, 2)
    assert word_composition((0, 1), 2, (2,), Z3) == (0, 0)
    assert word_composition((0, 2, 1), 3, N.unit_word(), N) == (0, 2, 1)
    with pytest.raises(IndexError):
        word_composition((0, 1), 3, (0,), N)


def test_full_composition_is_a_fold():
    u, ops = (0, 1, 2), [(0, 1), (0,), (1, 0, 0)]
    fold = u
    for i in range(len(u), 0, -1):
        fold = word_composition(fold, i, ops[i - 1], N)
    assert word_full_composition(u, ops, N) == fold


def test_suboperad_sizes():
    assert sizes(N, [(0, 0), (0, 1, 0)], 6) == [1, 1, 2, 4, 9, 21]
    assert sizes(Z3, [(0, 0), (0, 1)], 6) == [1, 2, 5, 13, 35, 96]
    assert sizes(N, [(0, 0), (0, 1)], 5) == [1, 2, 5, 14, 42]
    with pytest.raises(ValueError):
        suboperad_elements(N, [(1,)], 3)
    with pytest.raises(ValueError):
        suboperad_elements(N, [(0, 1)], 0)


def test_evaluate_tree():
    e = get("schr")
    assert evaluate_tree(LEAF, e.assignment, e.monoid) == (0,)
    assert evaluate_tree(corolla(e.alphabet["a10"]), e.assignment, e.monoid) == (1, 0)
    with pytest.raises(TreeError):
        evaluate_tree(parse("z(*,*)"), e.assignment, e.monoid)


def test_evaluation_constant_on_rewrites():
    for ident in ("fcat2", "schr", "motz", "da"):
        e = get(ident)
        for t in enumerate_trees(e.alphabet, 3):
            w = evaluate_tree(t, e.assignment, e.monoid)
            for s in rewrite_successors(t, e.orientation):
                assert evaluate_tree(s, e.assignment, e.monoid) == w


def test_word_formats():
    assert parse_word("0 1 0") == (0, 1, 0)
    assert word_text((0, 1, 0)) == "0 1 0"
    data = word_to_json((0, 2), Z3)
    assert data == {"monoid": {"kind": "cyclic", "order": 3}, "word": [0, 2]}
    assert word_from_json(json.dumps(data)) == (Z3, (0, 2))
    with pytest.raises(ValueError):
        parse_word("0 3", Z3)
    with pytest.raises(ValueError):
        parse_word("")
    with pytest.raises(ValueError):
        Monoid.cyclic(0)


@given(monoids, st.data())
def test_monoid_laws(M, data):
    hi = 9 if M.kind == "naturals" else M.order - 1
    x, y, z = (data.draw(st.integers(0, hi)) for _ in range(3))
    assert M.product(M.product(x, y), z) == M.product(x, M.product(y, z))
    assert M.product(M.unit, x) == x == M.product(x, M.unit)


@given(monoids, st.data())
def test_word_arity(M, data):
    u, v = data.draw(words(M)), data.draw(words(M))
    i = data.draw(st.integers(1, len(u)))
    assert len(word_composition(u, i, v, M)) == len(u) + len(v) - 1
