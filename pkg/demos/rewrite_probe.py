"""Bounded check that an orientation gives a basis of normal forms."""

from treeavoid.catalog import get
from treeavoid.rewrite import faithfulness_probe, normalize
from treeavoid.trees import parse, to_text

dup = get("dup")
t = parse("a(a(a(*,*),*),b(*,*))")
nf, steps = normalize(t, dup.orientation)
print(to_text(t), "->", to_text(nf), f"in {steps} steps")

print()
print(faithfulness_probe(dup.presentation, dup.orientation, 4).to_text())

# dropping a rule leaves too many normal forms
print()
print(faithfulness_probe(dup.presentation, dup.orientation.without(1), 4).to_text())
