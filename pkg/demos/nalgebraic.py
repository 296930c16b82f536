"""Realizing an N-algebraic series by a pattern-avoiding tree family."""

from treeavoid.avoidance import build_system
from treeavoid.nalg import NAlgebraicSpec, realize, verify_realization
from treeavoid.series import solve_root, specialize

spec = NAlgebraicSpec.from_json({"polys": {"0": [0, 1, 0, 1], "1": [0, 1, 1], "2": [1, 0, 0, 2]}})
print(spec.equation())

G, P = realize(spec)
print(len(G), "letters:", " ".join(f"{x.name}/{x.arity}" for x in G))
print(len(P), "patterns")

f = solve_root(build_system(G, P), 8)
print("series by degree:", specialize(f, "degree"))
print("equation holds:", verify_realization(spec, 8).passed)
