"""Pattern avoidance in syntax trees and Hilbert series of operads."""

from .avoidance import (
    EquationSystem,
    ResourceCapError,
    build_system,
    canonical_prefix_set,
    derivative,
    minimal_consistent_words,
    stringy_system,
)
from .oracle import count_avoiding, enumerate_trees
from .rewrite import Orientation, Presentation, RewriteRule, analyze_orientation, faithfulness_probe, normalize
from .series import TraceSeries, check_algebraic_equation, solve_root, solve_system, specialize
from .trees import LEAF, GradedAlphabet, Letter, ParseError, TreeError, corolla, parse, partial_composition, to_text

__version__ = "0.1.0"
