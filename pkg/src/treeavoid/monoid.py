"""Operads of words over a monoid.

Words are tuples of monoid elements.  The partial composition ``u o_i v``
replaces the i-th letter of u by v with every letter multiplied on the
left by u_i.
"""

import json
from dataclasses import dataclass

from .trees import LEAF, TreeError


@dataclass(frozen=True)
class Monoid:
    """Additive naturals, or integers modulo ``order``."""

    kind: str = "naturals"
    order: int = 0

    def __post_init__(self):
        if self.kind not in ("naturals", "cyclic"):
            raise ValueError(f"unknown monoid kind {self.kind!r}")
        if self.kind == "cyclic" and self.order < 1:
            raise ValueError("cyclic monoid needs an order >= 1")

    @classmethod
    def naturals(cls):
        return cls("naturals", 0)

    @classmethod
    def cyclic(cls, order):
        return cls("cyclic", order)

    unit = 0

    def product(self, x, y):
        s = x + y
        return s % self.order if self.kind == "cyclic" else s

    def element(self, x):
        if not isinstance(x, int) or x < 0:
            raise ValueError(f"monoid elements are nonnegative integers, got {x!r}")
        if self.kind == "cyclic" and x >= self.order:
            raise ValueError(f"{x} is not an element of Z/{self.order}")
        return x

    def word(self, letters):
        w = tuple(self.element(x) for x in letters)
        if not w:
            raise ValueError("words are non-empty")
        return w

    def unit_word(self):
        return (self.unit,)

    def to_json(self):
        if self.kind == "cyclic":
            return {"kind": "cyclic", "order": self.order}
        return {"kind": "naturals"}

    @classmethod
    def from_json(cls, data):
        if data.get("kind") == "cyclic":
            return cls.cyclic(int(data["order"]))
        if data.get("kind") in ("naturals", "additive-naturals"):
            return cls.naturals()
        raise ValueError(f"unknown monoid {data!r}")


def parse_word(text, M=Monoid.naturals()):
    try:
        return M.word(int(x) for x in text.split())
    except ValueError as e:
        raise ValueError(f"bad word {text!r}: {e}") from None


def word_text(w):
    return " ".join(str(x) for x in w)


def word_to_json(w, M):
    return {"monoid": M.to_json(), "word": list(w)}


def word_from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    M = Monoid.from_json(data["monoid"])
    return M, M.word(data["word"])


def word_composition(u, i, v, M=Monoid.naturals()):
    if not 1 <= i <= len(u):
        raise IndexError(f"position {i} out of range 1..{len(u)}")
    x = u[i - 1]
    return u[: i - 1] + tuple(M.product(x, y) for y in v) + u[i:]


def word_full_composition(u, operands, M=Monoid.naturals()):
    if len(operands) != len(u):
        raise ValueError("operand count differs from the word length")
    out = []
    for x, v in zip(u, operands):
        out.extend(M.product(x, y) for y in v)
    return tuple(out)


def suboperad_elements(M: Monoid, generators, max_arity: int):
    """Elements of the suboperad generated by ``generators``, per arity 1..N.

    Any non-unit element is ``u o_i g`` for an element u of smaller arity
    and a generator g (cut a lowest internal node of a tree evaluating to
    it), so arities are saturated in increasing order."""
    if max_arity < 1:
        raise ValueError("max_arity must be >= 1")
    gens = set()
    for g in generators:
        g = M.word(g)
        if len(g) == 1:
            if g != M.unit_word():
                raise ValueError("arity-one generators other than the unit are not supported")
            continue
        gens.add(g)
    levels = {1: {M.unit_word()}}
    for n in range(2, max_arity + 1):
        cur = set()
        for g in gens:
            m = n - len(g) + 1
            if m < 1:
                continue
            for u in levels[m]:
                for i in range(1, m + 1):
                    cur.add(word_composition(u, i, g, M))
        levels[n] = cur
    return [levels[n] for n in range(1, max_arity + 1)]


def evaluate_tree(t, assignment, M=Monoid.naturals()):
    """Image of a tree under the morphism sending each letter to its word."""
    if t == LEAF:
        return M.unit_word()
    try:
        w = assignment[t[0]]
    except KeyError:
        raise TreeError(f"no word assigned to letter {t[0]!r}") from None
    if len(w) != len(t) - 1:
        raise TreeError(f"word {word_text(w)} has length {len(w)} but {t[0]} has arity {len(t) - 1}")
    return word_full_composition(w, [evaluate_tree(c, assignment, M) for c in t[1:]], M)
