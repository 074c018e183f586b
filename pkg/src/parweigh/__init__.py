"""Strategy engine for counterfeit-coin puzzles on parallel balance scales.

Find the one fake coin among N using k balance scales in parallel: build
explicit weighing strategies, verify arbitrary strategies against every
hypothesis, compute exact capacities by game-tree search, and play
adversarial sessions against a worst-case outcome oracle.
"""

from .capacity import (
    find_label_capacity,
    find_label_unlimited_capacity,
    just_find_capacity,
    known_potential_capacity,
    min_minutes,
    unlimited_supply_capacity,
    variant_capacity,
)
from .core import (
    FIND_AND_LABEL,
    HEAVY,
    JUST_FIND,
    LIGHT,
    UNLIMITED,
    Hypothesis,
    KnowledgeState,
    PuzzleConfig,
    apply_outcome,
    classify,
    feasible_outcomes,
    induced_outcome,
)
from .solve import CountState, extract_tree, max_coins, solvable, worst_outcome
from .strategy import build_general, build_known_potential, build_tree, build_unlimited
from .tree import Answer, Node, Weigh
from .verify import check_correct, check_legal, lazy_coin_search, verify_static

__all__ = [
    "FIND_AND_LABEL",
    "HEAVY",
    "JUST_FIND",
    "LIGHT",
    "UNLIMITED",
    "Answer",
    "CountState",
    "Hypothesis",
    "KnowledgeState",
    "Node",
    "PuzzleConfig",
    "Weigh",
    "apply_outcome",
    "build_general",
    "build_known_potential",
    "build_tree",
    "build_unlimited",
    "check_correct",
    "check_legal",
    "classify",
    "extract_tree",
    "feasible_outcomes",
    "find_label_capacity",
    "find_label_unlimited_capacity",
    "induced_outcome",
    "just_find_capacity",
    "known_potential_capacity",
    "lazy_coin_search",
    "max_coins",
    "min_minutes",
    "solvable",
    "unlimited_supply_capacity",
    "variant_capacity",
    "verify_static",
    "worst_outcome",
]
