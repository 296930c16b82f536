"""Truncated trace series and the fixed-point solver.

A trace monomial records how many internal nodes carry each letter; the
t and q exponents of the enumeration map are recovered from it.  Series
are stored in layers by degree, each layer mapping a packed exponent
vector (mixed radix, base D+1) to an integer coefficient, so multiplying
monomials is integer addition.
"""

import json
from dataclasses import dataclass
from typing import Dict, Tuple

from .trees import GradedAlphabet, Letter, letter_counts


class SeriesError(ValueError):
    pass


@dataclass(frozen=True)
class TraceMonomial:
    """Exponents per letter, kept as sorted ``(Letter, e)`` pairs with e > 0."""

    exponents: Tuple[Tuple[Letter, int], ...] = ()

    @classmethod
    def from_map(cls, exps):
        items = [(x, e) for x, e in exps.items() if e]
        if any(e < 0 for _, e in items):
            raise SeriesError("negative exponent")
        return cls(tuple(sorted(items, key=lambda p: p[0].sort_key())))

    def as_dict(self):
        return {x.name: e for x, e in self.exponents}

    @property
    def degree(self):
        return sum(e for _, e in self.exponents)

    @property
    def arity(self):
        return 1 + sum(e * (x.arity - 1) for x, e in self.exponents)

    def __mul__(self, other):
        acc = dict(self.exponents)
        for x, e in other.exponents:
            acc[x] = acc.get(x, 0) + e
        return TraceMonomial.from_map(acc)

    def __str__(self):
        parts = [f"t^{self.arity}"]
        if self.degree:
            parts.append(f"q^{self.degree}")
        for x, e in self.exponents:
            parts.append(f"q_{x.name}" + (f"^{e}" if e > 1 else ""))
        return " ".join(parts)


def en(t, alphabet: GradedAlphabet) -> TraceMonomial:
    counts = letter_counts(t)
    return TraceMonomial.from_map({alphabet[n]: c for n, c in counts.items()})


class TraceSeries:
    """Integer series in the letters of an alphabet, truncated at degree D."""

    def __init__(self, alphabet: GradedAlphabet, D: int, layers=None):
        if D < 0:
            raise SeriesError("truncation degree must be nonnegative")
        self.alphabet = alphabet
        self.letters = alphabet.letters
        self.D = D
        self.base = D + 1
        if layers is None:
            layers = [dict() for _ in range(D + 1)]
        self.layers = [{k: c for k, c in layer.items() if c} for layer in layers[: D + 1]]
        while len(self.layers) < D + 1:
            self.layers.append({})

    # packing
    def pack(self, exps) -> int:
        key = 0
        b = 1
        for e in exps:
            key += e * b
            b *= self.base
        return key

    def unpack(self, key):
        out = []
        for _ in self.letters:
            key, e = divmod(key, self.base)
            out.append(e)
        return tuple(out)

    def unit(self, name):
        return self.base ** self.alphabet.index(name)

    @classmethod
    def leaf(cls, alphabet, D):
        s = cls(alphabet, D)
        s.layers[0][0] = 1
        return s

    @classmethod
    def from_terms(cls, alphabet, D, terms):
        """Build from ``{exponent tuple or name->exp dict: coeff}``."""
        s = cls(alphabet, D)
        for exps, c in terms.items():
            if isinstance(exps, TraceMonomial):
                exps = exps.as_dict()
            if isinstance(exps, dict):
                exps = tuple(exps.get(x.name, 0) for x in alphabet.letters)
            d = sum(exps)
            if d <= D and c:
                k = s.pack(exps)
                s.layers[d][k] = s.layers[d].get(k, 0) + c
        return cls(alphabet, D, s.layers)

    def _compatible(self, other):
        if self.D != other.D:
            raise SeriesError(f"truncation mismatch: {self.D} vs {other.D}")
        if self.alphabet != other.alphabet:
            raise SeriesError("series over different alphabets")

    def __eq__(self, other):
        return (
            isinstance(other, TraceSeries)
            and self.D == other.D
            and self.alphabet == other.alphabet
            and self.layers == other.layers
        )

    def terms(self):
        """Sorted list of ``(exponent tuple, coeff)``."""
        out = []
        for layer in self.layers:
            for k, c in layer.items():
                out.append((self.unpack(k), c))
        out.sort(key=lambda p: (sum(p[0]), tuple(-e for e in p[0])))
        return out

    def coefficient(self, exps) -> int:
        if isinstance(exps, TraceMonomial):
            exps = exps.as_dict()
        if isinstance(exps, dict):
            exps = tuple(exps.get(x.name, 0) for x in self.letters)
        d = sum(exps)
        if d > self.D:
            raise SeriesError(f"degree {d} is beyond the truncation {self.D}")
        return self.layers[d].get(self.pack(exps), 0)

    def monomial_arity(self, exps):
        return 1 + sum(e * (x.arity - 1) for e, x in zip(exps, self.letters))

    def row(self, n):
        """Coefficients of the monomials of arity n, by decreasing exponent vector.

        Only monomials present in the series appear; rows are meaningful up
        to the arity for which the truncation keeps every tree."""
        items = [(e, c) for e, c in self.terms() if self.monomial_arity(e) == n]
        items.sort(key=lambda p: tuple(-x for x in p[0]))
        return [c for _, c in items]

    def row_terms(self, n):
        items = [(e, c) for e, c in self.terms() if self.monomial_arity(e) == n]
        items.sort(key=lambda p: tuple(-x for x in p[0]))
        return items

    def by_degree(self):
        return [sum(layer.values()) for layer in self.layers]

    def by_arity(self, n_max=None):
        """Coefficients of t^1..t^n_max with q and every q_a set to 1.

        Needs an alphabet without arity-one letters.  The default bound
        D + 1 is the largest arity whose trees all have degree <= D."""
        if self.alphabet.has_unary():
            raise SeriesError("by-arity specialization needs no arity-one letters")
        n_max = self.D + 1 if n_max is None else n_max
        out = [0] * n_max
        for e, c in self.terms():
            n = self.monomial_arity(e)
            if n <= n_max:
                out[n - 1] += c
        return out

    def to_json(self):
        return {
            "truncation_degree": self.D,
            "terms": [
                {
                    "exponents": {x.name: v for x, v in zip(self.letters, e) if v},
                    "coeff": c,
                }
                for e, c in self.terms()
            ],
        }

    @classmethod
    def from_json(cls, data, alphabet):
        if isinstance(data, str):
            data = json.loads(data)
        terms = {}
        for item in data["terms"]:
            exps = item["exponents"]
            for name in exps:
                alphabet[name]
            key = tuple(exps.get(x.name, 0) for x in alphabet.letters)
            terms[key] = terms.get(key, 0) + item["coeff"]
        return cls.from_terms(alphabet, data["truncation_degree"], terms)

    def to_text(self):
        lines = []
        for e, c in self.terms():
            mono = TraceMonomial.from_map(dict(zip(self.letters, e)))
            lines.append(f"{c} {mono}")
        return "\n".join(lines)

    def __repr__(self):
        return f"TraceSeries(D={self.D}, terms={len(self.terms())})"


def add(f: TraceSeries, g: TraceSeries) -> TraceSeries:
    f._compatible(g)
    layers = []
    for a, b in zip(f.layers, g.layers):
        out = dict(a)
        for k, c in b.items():
            out[k] = out.get(k, 0) + c
        layers.append(out)
    return TraceSeries(f.alphabet, f.D, layers)


def scale(c: int, f: TraceSeries) -> TraceSeries:
    return TraceSeries(f.alphabet, f.D, [{k: c * v for k, v in L.items()} for L in f.layers])


def _mul_layers(a, b, top):
    """Product of layered series, keeping degrees <= top."""
    out = [dict() for _ in range(top + 1)]
    for i, la in enumerate(a):
        if i > top or not la:
            continue
        for j in range(0, min(top - i, len(b) - 1) + 1):
            lb = b[j]
            if not lb:
                continue
            o = out[i + j]
            for ka, ca in la.items():
                for kb, cb in lb.items():
                    k = ka + kb
                    o[k] = o.get(k, 0) + ca * cb
    return out


def multiply(f: TraceSeries, g: TraceSeries) -> TraceSeries:
    f._compatible(g)
    return TraceSeries(f.alphabet, f.D, _mul_layers(f.layers, g.layers, f.D))


def _product(factors, top):
    acc = [{0: 1}] + [dict() for _ in range(top)]
    for f in factors:
        acc = _mul_layers(acc, f, top)
    return acc


def _rhs(system, values, alphabet, base, top):
    """Evaluate every right-hand side up to degree ``top``."""
    out = {}
    units = {x.name: base ** i for i, x in enumerate(alphabet.letters)}
    cache = {}
    for key, terms in system.equations.items():
        layers = [{0: 1}] + [dict() for _ in range(top)]
        for term in terms:
            if top == 0:
                break
            ops = term.operands
            if ops not in cache:
                cache[ops] = _product([values[o] for o in ops], top - 1)
            prod = cache[ops]
            u = units[term.letter]
            for d in range(top):
                src = prod[d]
                if not src:
                    continue
                dst = layers[d + 1]
                for k, c in src.items():
                    k2 = k + u
                    dst[k2] = dst.get(k2, 0) + term.coeff * c
        out[key] = [{k: c for k, c in L.items() if c} for L in layers]
    return out


def substitute(system, values: Dict[object, TraceSeries], D: int) -> Dict[object, TraceSeries]:
    """One step of the fixed-point iteration: plug ``values`` into every equation."""
    alphabet = system.alphabet
    raw = {k: v.layers for k, v in values.items()}
    base = D + 1
    new = _rhs(system, raw, alphabet, base, D)
    return {k: TraceSeries(alphabet, D, L) for k, L in new.items()}


def solve_system(system, D: int) -> Dict[object, TraceSeries]:
    """Coefficients of degree <= D for every variable of a closed system.

    Every term raises the degree by one, so after pass d the layers of
    degree <= d are final; pass d only needs to work up to degree d."""
    system.check_closed()
    alphabet = system.alphabet
    base = D + 1
    values = {k: [{0: 1}] for k in system.equations}
    for d in range(1, D + 1):
        values = _rhs(system, values, alphabet, base, d)
    return {k: TraceSeries(alphabet, D, L) for k, L in values.items()}


def solve_root(system, D: int) -> TraceSeries:
    return solve_system(system, D)[system.root]


def specialize(f: TraceSeries, mode: str):
    if mode == "arity":
        return f.by_arity()
    if mode == "degree":
        return f.by_degree()
    raise SeriesError(f"unknown specialization mode {mode!r}")


@dataclass
class ResidualReport:
    equation: str
    bound: str
    residual: Dict[str, int]

    @property
    def passed(self):
        return not self.residual

    def to_json(self):
        return {
            "equation": self.equation,
            "checked": self.bound,
            "passed": self.passed,
            "residual": self.residual,
        }


def _equation_poly(equation, symbols):
    import sympy
    from sympy.parsing.sympy_parser import (
        convert_xor,
        parse_expr,
        standard_transformations,
    )

    tr = standard_transformations + (convert_xor,)
    sides = equation.split("=")
    if len(sides) > 2:
        raise SeriesError("equation has more than one '='")
    try:
        exprs = [parse_expr(s, local_dict=dict(symbols), transformations=tr) for s in sides]
    except Exception as e:
        raise SeriesError(f"cannot parse equation {equation!r}: {e}") from None
    expr = exprs[0] - exprs[1] if len(exprs) == 2 else exprs[0]
    expr = sympy.expand(expr)
    gens = list(symbols.values())
    extra = expr.free_symbols - set(gens)
    if extra:
        raise SeriesError(f"unknown symbols {sorted(map(str, extra))} in equation")
    poly = sympy.Poly(expr, *gens)
    out = []
    for mono, c in poly.terms():
        if not c.is_integer:
            raise SeriesError("equation coefficients must be integers")
        out.append((mono, int(c)))
    return out


def _letter_symbols(alphabet):
    import sympy

    syms = {"t": sympy.Symbol("t"), "q": sympy.Symbol("q")}
    for x in alphabet.letters:
        syms["q_" + x.name] = sympy.Symbol("q_" + x.name)
    syms["H"] = sympy.Symbol("H")
    return syms


def _full_mul(a, b, D):
    out = {}
    for (da, ta, qa, ka), ca in a.items():
        for (db, tb, qb, kb), cb in b.items():
            d = da + db
            if d > D:
                continue
            k = (d, ta + tb, qa + qb, ka + kb)
            out[k] = out.get(k, 0) + ca * cb
    return out


def check_algebraic_equation(f: TraceSeries, equation: str, specialized=False) -> ResidualReport:
    """Substitute ``f`` for H in a polynomial identity and collect what is left.

    The equation uses the symbols t, q, q_<letter> and H, e.g.
    ``H = t + t*q*q_a*H + t*q*q_b*H + t*q^2*q_a*q_b*H^2``.  Residual
    coefficients are exact up to trace degree D.  With ``specialized``
    the symbols q and q_<letter> are set to 1 and the check runs on the
    by-arity series, exact up to t^(D+1)."""
    syms = _letter_symbols(f.alphabet)
    terms = _equation_poly(equation, syms)
    D = f.D
    if specialized:
        return _check_specialized(f, equation, terms)
    L = len(f.letters)
    H = {}
    for e, c in f.terms():
        d = sum(e)
        H[(d, f.monomial_arity(e), d, f.pack(e))] = c
    powers = {0: {(0, 0, 0, 0): 1}}
    total = {}
    for mono, c in terms:
        t_e, q_e = mono[0], mono[1]
        letter_e = mono[2 : 2 + L]
        h_e = mono[2 + L]
        d0 = sum(letter_e)
        if d0 > D:
            continue
        while h_e not in powers:
            k = max(powers)
            powers[k + 1] = _full_mul(powers[k], H, D)
        base_key = (d0, t_e, q_e, f.pack(letter_e))
        for (d, tt, qq, kk), v in powers[h_e].items():
            if d + d0 > D:
                continue
            key = (d + d0, tt + t_e, qq + q_e, kk + base_key[3])
            total[key] = total.get(key, 0) + c * v
    residual = {}
    for (d, tt, qq, kk), v in sorted(total.items()):
        if v:
            exps = f.unpack(kk)
            parts = [f"t^{tt}", f"q^{qq}"] + [
                f"q_{x.name}^{e}" for x, e in zip(f.letters, exps) if e
            ]
            residual[" ".join(parts)] = v
    return ResidualReport(equation, f"trace degree <= {D}", residual)


def _check_specialized(f, equation, terms):
    N = f.D + 1
    h = [0] + f.by_arity(N)
    L = len(f.letters)

    def mul(a, b):
        out = [0] * (N + 1)
        for i, x in enumerate(a):
            if x:
                for j in range(0, N + 1 - i):
                    out[i + j] += x * b[j]
        return out

    powers = {0: [1] + [0] * N}
    total = [0] * (N + 1)
    for mono, c in terms:
        t_e, h_e = mono[0], mono[2 + L]
        while h_e not in powers:
            k = max(powers)
            powers[k + 1] = mul(powers[k], h)
        for n, v in enumerate(powers[h_e]):
            if n + t_e <= N:
                total[n + t_e] += c * v
    residual = {f"t^{n}": v for n, v in enumerate(total) if v}
    return ResidualReport(equation, f"t^n for n <= {N}, q and q_a set to 1", residual)
