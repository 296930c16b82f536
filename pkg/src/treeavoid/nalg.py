"""Realize N-algebraic series f = sum_k P_k(t) f^k by pattern avoidance."""

import json
from dataclasses import dataclass
from typing import Dict, Tuple

from .avoidance import build_system, stringy_system
from .series import check_algebraic_equation, solve_root
from .trees import GradedAlphabet, Letter, corolla, partial_composition


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class NAlgebraicSpec:
    """Polynomials P_0..P_d as coefficient lists indexed by the power of t."""

    polys: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        for P in self.polys:
            if any((not isinstance(c, int)) or c < 0 for c in P):
                raise SpecError("coefficients must be nonnegative integers")
        if self.coeff(0, 0) != 0 or self.coeff(0, 1) != 1:
            raise SpecError("need <t^0, P_0> = 0 and <t^1, P_0> = 1")
        if self.coeff(1, 0) != 0:
            raise SpecError("need <t^0, P_1> = 0")

    @classmethod
    def from_dict(cls, polys: Dict):
        d = max(int(k) for k in polys) if polys else 0
        return cls(tuple(tuple(polys.get(str(k), polys.get(k, ()))) for k in range(d + 1)))

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls.from_dict(data["polys"])
        except (KeyError, TypeError, AttributeError) as e:
            raise SpecError(f"malformed spec: {e}") from None

    def to_json(self):
        return {"polys": {str(k): list(P) for k, P in enumerate(self.polys) if P}}

    def coeff(self, k, l):
        if k >= len(self.polys):
            return 0
        P = self.polys[k]
        return P[l] if l < len(P) else 0

    def pairs(self):
        """(k, l, multiplicity) with k + l >= 2, in increasing (k, l)."""
        out = []
        for k, P in enumerate(self.polys):
            for l, c in enumerate(P):
                if c and k + l >= 2:
                    out.append((k, l, c))
        return out

    def equation(self):
        """The defining equation as text in the symbols t and H."""
        parts = []
        for k, P in enumerate(self.polys):
            for l, c in enumerate(P):
                if c:
                    parts.append(f"{c}*t^{l}*H^{k}")
        return "H = " + (" + ".join(parts) if parts else "0")


def letter_name(k, l, m):
    return f"a_{k}_{l}_{m}"


def realize(spec: NAlgebraicSpec):
    """Alphabet and stringy pattern set whose avoiding trees count f."""
    letters = []
    for k, l, c in spec.pairs():
        for m in range(1, c + 1):
            letters.append((Letter(letter_name(k, l, m), k + l), l))
    G = GradedAlphabet(x for x, _ in letters)
    P = set()
    for x, l in letters:
        for i in range(1, l + 1):
            for b in G:
                P.add(partial_composition(corolla(x), i, corolla(b)))
    return G, frozenset(P)


def expected_sizes(spec: NAlgebraicSpec):
    pairs = spec.pairs()
    n_letters = sum(c for _, _, c in pairs)
    n_patterns = n_letters * sum(c * l for _, l, c in pairs)
    return n_letters, n_patterns


def verify_realization(spec: NAlgebraicSpec, D: int, stringy=False):
    G, P = realize(spec)
    sys = stringy_system(G, P) if stringy else build_system(G, P)
    f = solve_root(sys, D)
    return check_algebraic_equation(f, spec.equation(), specialized=True)
