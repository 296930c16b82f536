"""Syntax trees over graded alphabets.

A tree is either the leaf ``LEAF`` (the string ``"*"``) or a tuple
``(name, child_1, ..., child_k)`` where ``k`` is the arity of the letter
called ``name``.  Trees are plain immutable Python values, so they hash,
compare structurally and can be shared freely.
"""

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

LEAF = "*"

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class TreeError(ValueError):
    pass


class ParseError(TreeError):
    def __init__(self, message, position, text=""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


@dataclass(frozen=True, order=True)
class Letter:
    name: str
    arity: int

    def __post_init__(self):
        if not isinstance(self.name, str) or not _NAME_RE.match(self.name):
            raise TreeError(f"invalid letter name {self.name!r}")
        if not isinstance(self.arity, int) or self.arity < 1:
            raise TreeError(f"letter {self.name!r} needs a positive arity")

    def sort_key(self):
        return (self.arity, self.name)


class GradedAlphabet:
    """A finite set of letters, ordered by (arity, name)."""

    def __init__(self, letters: Iterable[Letter]):
        letters = list(letters)
        by_name = {}
        for x in letters:
            if x.name in by_name:
                raise TreeError(f"duplicate letter {x.name!r}")
            by_name[x.name] = x
        self.letters = tuple(sorted(letters, key=Letter.sort_key))
        self._by_name = by_name

    @classmethod
    def of(cls, **arities):
        return cls(Letter(n, k) for n, k in arities.items())

    def __getitem__(self, name) -> Letter:
        try:
            return self._by_name[name]
        except KeyError:
            raise TreeError(f"unknown letter {name!r}") from None

    def __contains__(self, name):
        return name in self._by_name

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, GradedAlphabet) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        inner = ", ".join(f"{x.name}:{x.arity}" for x in self.letters)
        return f"GradedAlphabet({inner})"

    def arity(self, name):
        return self[name].arity

    def in_arity(self, k):
        return tuple(x for x in self.letters if x.arity == k)

    def has_unary(self):
        return any(x.arity == 1 for x in self.letters)

    def index(self, name):
        for i, x in enumerate(self.letters):
            if x.name == name:
                return i
        raise TreeError(f"unknown letter {name!r}")

    def to_json(self):
        return {"letters": [{"name": x.name, "arity": x.arity} for x in self.letters]}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(Letter(d["name"], d["arity"]) for d in data["letters"])
        except (KeyError, TypeError) as e:
            raise TreeError(f"malformed alphabet: {e}") from None


def _name(a):
    return a.name if isinstance(a, Letter) else a


def is_leaf(t):
    return t == LEAF


def corolla(a, arity=None):
    """The tree with one internal node labelled ``a``."""
    if isinstance(a, Letter):
        arity = a.arity
    if arity is None:
        raise TreeError("corolla needs a Letter or an explicit arity")
    return (a if isinstance(a, str) else a.name,) + (LEAF,) * arity


def node(a, *children):
    return (_name(a),) + tuple(children)


def root(t):
    """Root letter name, or None for the leaf."""
    return None if t == LEAF else t[0]


def children(t):
    return () if t == LEAF else t[1:]


@lru_cache(maxsize=None)
def arity(t) -> int:
    if t == LEAF:
        return 1
    return sum(arity(c) for c in t[1:])


@lru_cache(maxsize=None)
def degree(t) -> int:
    if t == LEAF:
        return 0
    return 1 + sum(degree(c) for c in t[1:])


@lru_cache(maxsize=None)
def height(t) -> int:
    if t == LEAF:
        return 0
    return 1 + max(height(c) for c in t[1:])


def degree_of(t, a, alphabet=None) -> int:
    """Number of internal nodes labelled ``a``."""
    name = _name(a)
    if alphabet is not None and name not in alphabet:
        raise TreeError(f"unknown letter {name!r}")
    if t == LEAF:
        return 0
    return (t[0] == name) + sum(degree_of(c, name) for c in t[1:])


def letter_counts(t, counts=None):
    if counts is None:
        counts = {}
    if t != LEAF:
        counts[t[0]] = counts.get(t[0], 0) + 1
        for c in t[1:]:
            letter_counts(c, counts)
    return counts


def check_tree(t, alphabet: GradedAlphabet):
    """Raise TreeError unless every node of ``t`` respects ``alphabet``."""
    if t == LEAF:
        return t
    if not isinstance(t, tuple) or not t:
        raise TreeError(f"not a tree: {t!r}")
    letter = alphabet[t[0]]
    if len(t) - 1 != letter.arity:
        raise TreeError(f"letter {letter.name} has arity {letter.arity}, got {len(t) - 1} children")
    for c in t[1:]:
        check_tree(c, alphabet)
    return t


def partial_composition(t, i, s):
    """Graft the root of ``s`` onto the ``i``-th leaf of ``t`` (1-based)."""
    n = arity(t)
    if not 1 <= i <= n:
        raise TreeError(f"leaf index {i} out of range 1..{n}")
    return _graft(t, i, s)


def _graft(t, i, s):
    if t == LEAF:
        return s
    out = [t[0]]
    for c in t[1:]:
        k = arity(c)
        if 0 < i <= k:
            out.append(_graft(c, i, s))
        else:
            out.append(c)
        i -= k
    return tuple(out)


def full_composition(t, operands: Sequence):
    """Graft ``operands[j]`` onto the ``j+1``-th leaf of ``t``, all at once."""
    operands = list(operands)
    if len(operands) != arity(t):
        raise TreeError(f"expected {arity(t)} operands, got {len(operands)}")
    it = iter(operands)

    def go(u):
        if u == LEAF:
            return next(it)
        return (u[0],) + tuple(go(c) for c in u[1:])

    return go(t)


@lru_cache(maxsize=1 << 20)
def is_prefix(s, t) -> bool:
    if s == LEAF:
        return True
    if t == LEAF or s[0] != t[0]:
        return False
    return all(is_prefix(x, y) for x, y in zip(s[1:], t[1:]))


def subtrees(t) -> Iterator:
    """Subtrees rooted at internal nodes, in pre-order."""
    if t != LEAF:
        yield t
        for c in t[1:]:
            yield from subtrees(c)


def positions(t, path=()):
    """Pairs ``(path, subtree)`` for every internal node, in pre-order.

    A path is the tuple of 0-based child indices leading to the node."""
    if t != LEAF:
        yield path, t
        for j, c in enumerate(t[1:]):
            yield from positions(c, path + (j,))


def subtree_at(t, path):
    for j in path:
        t = t[j + 1]
    return t


def replace_at(t, path, s):
    if not path:
        return s
    j = path[0] + 1
    return t[:j] + (replace_at(t[j], path[1:], s),) + t[j + 1:]


def is_factor(s, t) -> bool:
    if s == LEAF:
        return True
    return any(is_prefix(s, u) for u in subtrees(t))


def is_suffix(s, t) -> bool:
    if s == LEAF:
        return True
    return any(s == u for u in subtrees(t))


def avoids_factors(t, patterns) -> bool:
    return not any(is_factor(s, t) for s in patterns)


def avoids_prefixes(t, patterns) -> bool:
    return not any(is_prefix(s, t) for s in patterns)


@lru_cache(maxsize=None)
def prefixes(t) -> frozenset:
    if t == LEAF:
        return frozenset([LEAF])
    out = {LEAF}
    stack = [(t[0],)]
    for c in t[1:]:
        stack = [p + (x,) for p in stack for x in prefixes(c)]
    out.update(stack)
    return frozenset(out)


def suffixes(t) -> frozenset:
    return frozenset(subtrees(t)) | {LEAF}


def is_stringy(t) -> bool:
    return height(t) == degree(t)


@lru_cache(maxsize=None)
def to_text(t) -> str:
    if t == LEAF:
        return LEAF
    return t[0] + "(" + ",".join(to_text(c) for c in t[1:]) + ")"


def canonical_key(t):
    """Strict total order on trees: by degree, then by text."""
    return (degree(t), to_text(t))


def sorted_trees(trees):
    return sorted(trees, key=canonical_key)


def parse(text: str, alphabet: GradedAlphabet = None):
    """Parse the bracket notation ``a(b(*,*),*)``."""
    p = _Parser(text)
    p.skip()
    t = p.tree()
    p.skip()
    if p.i != len(text):
        raise ParseError("expected end of input", p.i, text)
    if alphabet is not None:
        try:
            check_tree(t, alphabet)
        except TreeError as e:
            raise ParseError(str(e), 0, text) from None
    return t


class _Parser:
    name_re = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

    def __init__(self, text):
        self.text = text
        self.i = 0

    def skip(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def expect(self, ch):
        self.skip()
        if self.i >= len(self.text) or self.text[self.i] != ch:
            raise ParseError(f"expected {ch!r}", self.i, self.text)
        self.i += 1

    def tree(self):
        self.skip()
        if self.text.startswith(LEAF, self.i):
            self.i += 1
            return LEAF
        m = self.name_re.match(self.text, self.i)
        if not m:
            raise ParseError("expected '*' or a letter name", self.i, self.text)
        self.i = m.end()
        self.expect("(")
        kids = [self.tree()]
        while True:
            self.skip()
            if self.i < len(self.text) and self.text[self.i] == ",":
                self.i += 1
                kids.append(self.tree())
            else:
                break
        self.expect(")")
        return (m.group(),) + tuple(kids)


def to_json(t):
    if t == LEAF:
        return LEAF
    return {"letter": t[0], "children": [to_json(c) for c in t[1:]]}


def from_json(data, alphabet: GradedAlphabet = None):
    def go(d):
        if d == LEAF:
            return LEAF
        if isinstance(d, str):
            return parse(d)
        try:
            return (d["letter"],) + tuple(go(c) for c in d["children"])
        except (KeyError, TypeError) as e:
            raise TreeError(f"malformed tree JSON: {e}") from None

    t = go(data)
    if alphabet is not None:
        check_tree(t, alphabet)
    return t


def pattern_set(trees) -> frozenset:
    """Validate and freeze a set of patterns; the leaf is not allowed."""
    out = frozenset(parse(x) if isinstance(x, str) and x != LEAF else x for x in trees)
    if LEAF in out:
        raise TreeError("the leaf cannot be a pattern")
    return out
