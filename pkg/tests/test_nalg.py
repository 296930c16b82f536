import pytest

from treeavoid.avoidance import build_system, stringy_system
from treeavoid.nalg import (
    NAlgebraicSpec,
    SpecError,
    expected_sizes,
    letter_name,
    realize,
    verify_realization,
)
from treeavoid.series import solve_root
from treeavoid.trees import is_stringy

EXAMPLE = {"polys": {"0": [0, 1, 0, 1], "1": [0, 1, 1], "2": [1, 0, 0, 2]}}
CATALAN = {"polys": {"0": [0, 1], "2": [1]}}


def test_example_sizes():
    spec = NAlgebraicSpec.from_json(EXAMPLE)
    G, P = realize(spec)
    assert sorted(x.name for x in G) == sorted(
        [letter_name(0, 3, 1), letter_name(1, 1, 1), letter_name(1, 2, 1), letter_name(2, 0, 1), letter_name(2, 3, 1), letter_name(2, 3, 2)]
    )
    assert (len(G), len(P)) == (6, 72) == expected_sizes(spec)
    assert G["a_2_3_2"].arity == 5
    assert all(is_stringy(s) for s in P)


def test_example_realization():
    spec = NAlgebraicSpec.from_json(EXAMPLE)
    report = verify_realization(spec, 8)
    assert report.passed
    assert spec.equation() == "H = 1*t^1*H^0 + 1*t^3*H^0 + 1*t^1*H^1 + 1*t^2*H^1 + 1*t^0*H^2 + 2*t^3*H^2"
    G, P = realize(spec)
    assert stringy_system(G, P).term_map() == build_system(G, P).term_map()


def test_catalan():
    spec = NAlgebraicSpec.from_json(CATALAN)
    G, P = realize(spec)
    assert [(x.name, x.arity) for x in G] == [("a_2_0_1", 2)]
    assert P == frozenset()
    assert verify_realization(spec, 8).passed
    f = solve_root(build_system(G, P), 8)
    assert f.by_degree() == [1, 1, 2, 5, 14, 42, 132, 429, 1430]


@pytest.mark.parametrize(
    "polys",
    [
        {"0": [0, 2]},
        {"0": [1, 1]},
        {"0": [0, 1], "1": [1]},
        {"0": [0, 1], "2": [-1]},
    ],
)
def test_rejected_specs(polys):
    with pytest.raises(SpecError):
        NAlgebraicSpec.from_json({"polys": polys})


def test_malformed_spec():
    with pytest.raises(SpecError):
        NAlgebraicSpec.from_json({"poly": {}})


def test_spec_json_round_trip():
    spec = NAlgebraicSpec.from_json(EXAMPLE)
    assert NAlgebraicSpec.from_json(spec.to_json()) == spec
