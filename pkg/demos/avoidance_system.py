"""From a pattern set to an equation system, then to counts.

The system is solved as a truncated series and compared with brute force
enumeration of the avoiding trees."""

from treeavoid.avoidance import build_system
from treeavoid.catalog import EXAMPLE_ALPHABET as G, EXAMPLE_PATTERNS as P
from treeavoid.oracle import count_avoiding
from treeavoid.series import solve_root
from treeavoid.trees import to_text

print("patterns:")
for p in sorted(map(to_text, P)):
    print("  ", p)

system = build_system(G, P)
print()
print(system.to_text())

F = solve_root(system, 5)
print()
print("by degree:", F.by_degree())
print("brute force:", count_avoiding(G, P, frozenset(), 5).by_degree())

# a few refined coefficients, one monomial per line
names = [x.name for x in G]
for exps, c in list(F.terms())[:8]:
    mono = " ".join(f"q_{n}^{e}" for n, e in zip(names, exps) if e) or "1"
    print(f"  {c:3}  {mono}")
