"""Syntax trees, grafting and pattern occurrences."""

from treeavoid.trees import GradedAlphabet, is_factor, is_prefix, parse, partial_composition, to_text
from treeavoid.trees import arity, degree, height, prefixes

G = GradedAlphabet.of(a=2, b=2, c=3)

t = parse("a(b(*,*),c(*,*,*))", G)
s = parse("c(*,a(*,*),*)", G)
print("t =", to_text(t), " arity", arity(t), "degree", degree(t), "height", height(t))

# graft s on the third leaf of t
u = partial_composition(t, 3, s)
print("t o_3 s =", to_text(u))

# prefixes sit at the root, factors anywhere
for p in ["a(b(*,*),*)", "c(*,a(*,*),*)", "b(*,c(*,*,*))"]:
    p = parse(p, G)
    print(f"{to_text(p):18} prefix: {is_prefix(p, u)!s:5} factor: {is_factor(p, u)}")

print(len(prefixes(t)), "prefixes of t")
