"""Built-in presentations and avoidance problems with their reference data.

Operad letters named by monoid words (00, 01, 010, ...) are prefixed with
``a`` so they fit the tree grammar: ``a00``, ``a01``, ``a010``.
Reference rows list the coefficients of the monomials of a given arity,
by decreasing exponent vector (letters ordered by arity, then name).
"""

from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Tuple

from .avoidance import EquationSystem, system_from_json
from .monoid import Monoid
from .rewrite import Orientation, Presentation
from .trees import GradedAlphabet, Letter, corolla, parse, partial_composition, pattern_set


@dataclass
class CatalogEntry:
    id: str
    summary: str
    alphabet: GradedAlphabet
    kind: str = "operad"
    relations: Tuple = ()
    rules: Tuple = ()
    dimensions: List[int] = field(default_factory=list)
    rows: Dict[int, List[int]] = field(default_factory=dict)
    equation: Optional[str] = None
    monoid: Optional[Monoid] = None
    assignment: Dict[str, Tuple[int, ...]] = field(default_factory=dict)
    patterns: frozenset = frozenset()
    prefix_patterns: frozenset = frozenset()
    system: Optional[EquationSystem] = None
    family: Optional[object] = None

    @property
    def presentation(self):
        return Presentation(self.alphabet, self.relations)

    @property
    def orientation(self):
        return Orientation.of(*self.rules)

    def factor_patterns(self):
        if self.kind == "operad":
            return frozenset(r.lhs for r in self.orientation.rules)
        return self.patterns


def _rel(G, spec):
    """``("a", 1, "b")`` is a o_1 b; nested compositions are given as text."""
    if isinstance(spec, str):
        return parse(spec, G)
    x, i, y = spec
    return partial_composition(corolla(G[x]), i, corolla(G[y]))


def _operad(id, summary, G, relations, directions, **kw):
    """``directions`` holds '>' (left to right) or '<' per relation."""
    rels = tuple((_rel(G, x), _rel(G, y)) for x, y in relations)
    rules = []
    for (x, y), d in zip(rels, directions):
        rules.append((x, y) if d == ">" else (y, x))
    return CatalogEntry(id, summary, G, "operad", rels, tuple(rules), **kw)


def fuss_catalan(m, n):
    return comb((m + 1) * n, n) // (m * n + 1)


def _fcat(m, alt=False):
    G = GradedAlphabet(Letter(f"a0{k}", 2) for k in range(m + 1))
    relations = []
    directions = []
    for k3 in range(m + 1):
        for k1 in range(k3 + 1):
            k2 = k3 - k1
            relations.append(((f"a0{k3}", 1, f"a0{k1}"), (f"a0{k1}", 2, f"a0{k2}")))
            directions.append(">")
    equation = "H = t" + "".join(f"*(q*q_a0{k}*H + 1)" for k in range(m + 1))
    rows = {}
    if m == 1:
        rows = dict(NARAYANA)
    if alt:
        # a01 o_1 a01 = a01 o_2 a00 is oriented from right to left
        directions = [">", ">", "<"]
        relations = [
            (("a00", 1, "a00"), ("a00", 2, "a00")),
            (("a01", 1, "a00"), ("a00", 2, "a01")),
            (("a01", 1, "a01"), ("a01", 2, "a00")),
        ]
        equation = "H*(1 + q*q_a00*H) = t*(1 + q*q_a00*H)^2 + q*q_a01*H^2"
        rows = {
            1: [1],
            2: [1, 1],
            3: [1, 2, 2],
            4: [1, 3, 5, 5],
            5: [1, 4, 9, 14, 14],
            6: [1, 5, 14, 28, 42, 42],
        }
    ident = "fcat1_alt" if alt else f"fcat{m}"
    summary = f"Fuss-Catalan operad FCat({m}) in words over N"
    if alt:
        summary += ", second orientation for m = 1"
    return _operad(
        ident,
        summary,
        G,
        relations,
        directions,
        dimensions=[fuss_catalan(m, n) for n in range(1, 9)],
        rows=rows,
        equation=equation,
        monoid=Monoid.naturals(),
        assignment={f"a0{k}": (0, k) for k in range(m + 1)},
    )


NARAYANA = {
    1: [1],
    2: [1, 1],
    3: [1, 3, 1],
    4: [1, 6, 6, 1],
    5: [1, 10, 20, 10, 1],
    6: [1, 15, 50, 50, 15, 1],
}

AB = GradedAlphabet.of(a=2, b=2)

EXAMPLE_ALPHABET = GradedAlphabet.of(a=2, b=2, c=3)
EXAMPLE_PATTERNS = pattern_set(
    [
        "a(c(*,*,*),*)",
        "c(a(*,*),*,*)",
        "c(b(*,*),b(*,*),*)",
        "c(b(*,*),*,a(*,*))",
        "c(c(*,*,c(*,*,*)),*,a(*,*))",
    ]
)


def _unary_chain(letters):
    t = "*"
    for x in reversed(letters):
        t = f"{x}({t})"
    return t


def example2_family(d):
    """The patterns a b^k a of degree <= d (the full family is infinite)."""
    return pattern_set(_unary_chain(["a"] + ["b"] * k + ["a"]) for k in range(max(0, d - 1)))


def _example2_system():
    data = {
        "alphabet": [{"name": "a", "arity": 1}, {"name": "b", "arity": 1}],
        "root": "",
        "equations": [
            {
                "variable": "",
                "terms": [
                    {"coeff": 1, "letter": "a", "operands": ["Q"]},
                    {"coeff": 1, "letter": "b", "operands": [""]},
                ],
            },
            {
                "variable": "Q",
                "terms": [{"coeff": 1, "letter": "b", "operands": ["Q"]}],
            },
        ],
    }
    return system_from_json(data)


def _build():
    entries = []
    entries.append(
        _operad(
            "2as",
            "2-associative operad",
            AB,
            [(("a", 1, "a"), ("a", 2, "a")), (("b", 1, "b"), ("b", 2, "b"))],
            ">>",
            dimensions=[1, 2, 6, 22, 90, 394, 1806, 8558],
            rows={
                1: [1],
                2: [1, 1],
                3: [1, 4, 1],
                4: [1, 10, 10, 1],
                5: [1, 20, 48, 20, 1],
                6: [1, 35, 161, 161, 35, 1],
            },
            equation="H*(1 - t*q*q_a - t*q*q_b) = t + q^2*q_a*q_b*t*H^2 + q^2*q_a*q_b*H^3",
        )
    )
    entries.append(
        _operad(
            "dipt",
            "dipterous operad",
            AB,
            [(("a", 1, "a"), ("a", 2, "a")), (("b", 1, "b"), ("b", 2, "a"))],
            "><",
            dimensions=[1, 2, 6, 22, 90, 394, 1806, 8558],
            rows={
                1: [1],
                2: [1, 1],
                3: [1, 3, 2],
                4: [1, 6, 10, 5],
                5: [1, 10, 30, 35, 14],
                6: [1, 15, 70, 140, 126, 42],
            },
            equation="H = t + t*q*q_a*H + q*q_b*H^2",
        )
    )
    entries.append(
        _operad(
            "dup",
            "duplicial operad",
            AB,
            [
                (("a", 1, "a"), ("a", 2, "a")),
                (("b", 1, "a"), ("a", 2, "b")),
                (("b", 1, "b"), ("b", 2, "b")),
            ],
            ">>>",
            dimensions=[1, 2, 5, 14, 42, 132, 429, 1430],
            rows=dict(NARAYANA),
            equation="H = t + t*q*q_b*H + t*q*q_a*H + t*q^2*q_a*q_b*H^2",
        )
    )
    entries.append(
        _operad(
            "nct",
            "operad of based noncrossing trees",
            AB,
            [(("b", 1, "a"), ("a", 2, "b"))],
            ">",
            dimensions=[1, 2, 7, 30, 143, 728, 3876, 21318],
            rows={
                1: [1],
                2: [1, 1],
                3: [2, 3, 2],
                4: [5, 10, 10, 5],
                5: [14, 35, 45, 35, 14],
                6: [42, 126, 196, 196, 126, 42],
            },
            equation="H = t + q*(q_a + q_b)*H^2 - q^2*q_a*q_b*H^3",
        )
    )
    for m in (1, 2, 3):
        entries.append(_fcat(m))
    entries.append(_fcat(1, alt=True))
    schr = GradedAlphabet.of(a00=2, a01=2, a10=2)
    entries.append(
        _operad(
            "schr",
            "operad of Schroeder trees in words over N",
            schr,
            [
                (("a00", 1, "a00"), ("a00", 2, "a00")),
                (("a01", 1, "a10"), ("a10", 2, "a01")),
                (("a00", 1, "a01"), ("a00", 2, "a10")),
                (("a01", 1, "a00"), ("a00", 2, "a01")),
                (("a00", 1, "a10"), ("a10", 2, "a00")),
                (("a01", 1, "a01"), ("a01", 2, "a00")),
                (("a10", 1, "a00"), ("a10", 2, "a10")),
            ],
            ">>>>>><",
            dimensions=[1, 3, 11, 45, 197, 903, 4279, 20793],
            rows={
                1: [1],
                2: [1, 1, 1],
                3: [1, 2, 3, 1, 3, 1],
                4: [1, 3, 6, 3, 12, 6, 1, 6, 6, 1],
            },
            equation=(
                "t + (t*q*(q_a00 + q_a01 + q_a10) - 1)*H"
                " + t*q^2*(q_a00*q_a10 + q_a01*q_a10)*H^2 = 0"
            ),
            monoid=Monoid.naturals(),
            assignment={"a00": (0, 0), "a01": (0, 1), "a10": (1, 0)},
        )
    )
    motz = GradedAlphabet.of(a00=2, a010=3)
    entries.append(
        _operad(
            "motz",
            "operad of Motzkin paths in words over N",
            motz,
            [
                (("a00", 1, "a00"), ("a00", 2, "a00")),
                (("a010", 1, "a00"), ("a00", 2, "a010")),
                (("a00", 1, "a010"), ("a010", 3, "a00")),
                (("a010", 1, "a010"), ("a010", 3, "a010")),
            ],
            ">>>>",
            dimensions=[1, 1, 2, 4, 9, 21, 51, 127],
            rows={
                1: [1],
                2: [1],
                3: [1, 1],
                4: [1, 3],
                5: [1, 6, 2],
                6: [1, 10, 10],
                7: [1, 15, 30, 5],
            },
            equation="H = t + t*q*q_a00*H + t*q*q_a010*H^2",
            monoid=Monoid.naturals(),
            assignment={"a00": (0, 0), "a010": (0, 1, 0)},
        )
    )
    da = GradedAlphabet.of(a00=2, a01=2)
    entries.append(
        _operad(
            "da",
            "operad of directed animals in words over Z/3",
            da,
            [
                (("a00", 1, "a00"), ("a00", 2, "a00")),
                (("a01", 1, "a00"), ("a00", 2, "a01")),
                (("a01", 1, "a01"), ("a01", 2, "a00")),
                ("a00(a01(*,a01(*,*)),*)", "a01(*,a01(*,a01(*,*)))"),
            ],
            ">><<",
            dimensions=[1, 2, 5, 13, 35, 96, 267, 750],
            rows={
                1: [1],
                2: [1, 1],
                3: [1, 2, 2],
                4: [1, 3, 5, 4],
                5: [1, 4, 9, 12, 9],
                6: [1, 5, 14, 25, 30, 21],
            },
            # the closed form with its square root, cleared of the radical
            equation=(
                "t - (1 - t*q*(2*q_a00 + q_a01))*H"
                " + q*(t*q*(q_a00^2 + q_a00*q_a01 + q_a01^2) - q_a00)*H^2 = 0"
            ),
            monoid=Monoid.cyclic(3),
            assignment={"a00": (0, 0), "a01": (0, 1)},
        )
    )
    entries.append(
        CatalogEntry(
            "example",
            "five patterns over {a, b: 2, c: 3} used to illustrate consistent words",
            EXAMPLE_ALPHABET,
            kind="avoidance",
            patterns=EXAMPLE_PATTERNS,
        )
    )
    entries.append(
        CatalogEntry(
            "example2",
            "unary words avoiding a b^k a for all k (hand-encoded finite system)",
            GradedAlphabet.of(a=1, b=1),
            kind="system",
            system=_example2_system(),
            family=example2_family,
        )
    )
    entries.append(
        CatalogEntry(
            "example4",
            "two stringy patterns over a single binary letter",
            GradedAlphabet.of(a=2),
            kind="avoidance",
            patterns=pattern_set(["a(a(a(*,*),*),*)", "a(*,a(*,a(a(*,*),*)))"]),
        )
    )
    a12 = GradedAlphabet.of(a1=2, a2=2)
    entries.append(
        CatalogEntry(
            "example5",
            "a2 with any two corollas below it, over {a1, a2: 2}",
            a12,
            kind="avoidance",
            patterns=pattern_set(
                f"a2({x}(*,*),{y}(*,*))" for x in ("a1", "a2") for y in ("a1", "a2")
            ),
        )
    )
    return {e.id: e for e in entries}


CATALOG = _build()


def get(entry_id) -> CatalogEntry:
    try:
        return CATALOG[entry_id]
    except KeyError:
        raise KeyError(f"unknown catalog entry {entry_id!r}") from None


def operad_ids():
    return [k for k, e in CATALOG.items() if e.kind == "operad"]
