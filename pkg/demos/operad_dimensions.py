"""Hilbert series of presented operads via their orientations."""

from treeavoid.avoidance import build_system
from treeavoid.catalog import get, operad_ids
from treeavoid.rewrite import lefts
from treeavoid.series import check_algebraic_equation, solve_root

D = 7
for ident in operad_ids():
    e = get(ident)
    H = solve_root(build_system(e.alphabet, lefts(e.orientation)), D)
    dims = H.by_arity()[:8]
    ok = check_algebraic_equation(H, e.equation).passed
    print(f"{ident:10} {','.join(map(str, dims)):45} equation {'ok' if ok else 'FAILS'}")

# finer information: the statistic rows in arity 5 for Dup
H = solve_root(build_system(get("dup").alphabet, lefts(get("dup").orientation)), D)
print()
print("dup, t^5:", H.row(5))
