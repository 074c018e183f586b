"""Model of parallel balance-scale puzzles with a single counterfeit coin.

The unit of uncertainty is a hypothesis "coin i is fake and light/heavy".
A knowledge state is the set of hypotheses still consistent with every
outcome observed so far; it induces a classification of each coin as
unknown, potentially light, potentially heavy, or real.

All types are immutable values and all operations are pure functions, so
they are safe to share and evaluate concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

LIGHT = "light"
HEAVY = "heavy"
SIGNS = (LIGHT, HEAVY)

JUST_FIND = "just-find"
FIND_AND_LABEL = "find-and-label"
PROBLEMS = (JUST_FIND, FIND_AND_LABEL)

UNLIMITED = "unlimited"

UNKNOWN = "unknown"
POTENTIALLY_LIGHT = "potentially-light"
POTENTIALLY_HEAVY = "potentially-heavy"
REAL = "real"

LEFT_LIGHTER = "<"
BALANCED = "="
LEFT_HEAVIER = ">"
OUTCOME_SYMBOLS = "<=>"


class PuzzleError(Exception):
    """Base class for puzzle domain errors."""


class ContradictoryOutcome(PuzzleError):
    """An observed outcome that no remaining hypothesis can produce."""


class IllegalWeighing(PuzzleError):
    """A weighing that violates the physical rules.

    ``code`` is a stable machine-readable reason, one of:
    ``wrong-scale-count``, ``pan-size-mismatch``, ``duplicate-coin``,
    ``bad-coin-id``.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class Hypothesis(NamedTuple):
    """One candidate world: ``coin`` is fake with the given ``sign``."""

    coin: int
    sign: str


class ScaleLoad(NamedTuple):
    """The two pans of one scale. Both pans empty means the scale is idle."""

    left: frozenset[int]
    right: frozenset[int]


# A parallel weighing is one minute's loads, one ScaleLoad per scale.
ParallelWeighing = tuple[ScaleLoad, ...]


def scale_load(left: Iterable[int], right: Iterable[int]) -> ScaleLoad:
    return ScaleLoad(frozenset(left), frozenset(right))


def weighing(loads: Iterable[tuple[Iterable[int], Iterable[int]]]) -> ParallelWeighing:
    """Build a ParallelWeighing from (left, right) id collections."""
    return tuple(scale_load(left, right) for left, right in loads)


def idle_weighing(scales: int) -> ParallelWeighing:
    return tuple(scale_load((), ()) for _ in range(scales))


@dataclass(frozen=True)
class PuzzleConfig:
    """A puzzle instance.

    ``coins`` suspect coins carry ids ``0..coins-1``. Known-real supply
    coins, when present, are appended with ids ``coins..coins+r-1`` so
    weighings reference every coin through one id space. ``supply`` is the
    count of extra real coins, or the string ``"unlimited"``.
    """

    coins: int
    scales: int
    problem: str = JUST_FIND
    supply: int | str = 0
    budget: int = 0

    def __post_init__(self) -> None:
        if self.coins < 1:
            raise ValueError("need at least one suspect coin")
        if self.scales < 1:
            raise ValueError("need at least one scale")
        if self.problem not in PROBLEMS:
            raise ValueError(f"unknown problem {self.problem!r}")
        if self.supply != UNLIMITED and (not isinstance(self.supply, int) or self.supply < 0):
            raise ValueError(f"supply must be a nonnegative count or {UNLIMITED!r}")
        if self.budget < 0:
            raise ValueError("budget must be nonnegative")

    @property
    def supply_is_unlimited(self) -> bool:
        return self.supply == UNLIMITED

    def coin_limit(self) -> int | None:
        """Exclusive upper bound on valid coin ids, or None when unlimited."""
        if self.supply_is_unlimited:
            return None
        return self.coins + int(self.supply)


def validate_weighing(w: ParallelWeighing, scales: int, coin_limit: int | None) -> None:
    """Raise IllegalWeighing unless ``w`` is physically legal.

    Checks scale count, per-scale pan-size equality, pairwise disjointness
    of every pan in the minute, and id range (``coin_limit`` exclusive;
    None disables the upper bound, for unlimited supply).
    """
    if len(w) != scales:
        raise IllegalWeighing(
            "wrong-scale-count", f"expected {scales} scales, got {len(w)}"
        )
    seen: set[int] = set()
    for index, load in enumerate(w):
        if len(load.left) != len(load.right):
            raise IllegalWeighing(
                "pan-size-mismatch",
                f"scale {index}: {len(load.left)} v {len(load.right)} coins",
            )
        for pan in (load.left, load.right):
            for coin in pan:
                if coin < 0 or (coin_limit is not None and coin >= coin_limit):
                    raise IllegalWeighing("bad-coin-id", f"coin id {coin} out of range")
                if coin in seen:
                    raise IllegalWeighing(
                        "duplicate-coin", f"coin {coin} appears on more than one pan"
                    )
                seen.add(coin)


@dataclass(frozen=True)
class KnowledgeState:
    """The hypotheses still consistent with all observed outcomes.

    ``coins`` is the suspect count N; hypotheses only ever mention suspect
    ids (supply coins are known real and never hypothesized about).
    """

    coins: int
    hypotheses: frozenset[Hypothesis]

    @classmethod
    def fresh(cls, coins: int) -> "KnowledgeState":
        """All 2N hypotheses: nothing is known about any suspect."""
        return cls(
            coins,
            frozenset(Hypothesis(c, s) for c in range(coins) for s in SIGNS),
        )

    def classification(self) -> tuple[str, ...]:
        """Per-suspect classification derived from the hypothesis set."""
        signs: list[set[str]] = [set() for _ in range(self.coins)]
        for h in self.hypotheses:
            signs[h.coin].add(h.sign)
        out = []
        for s in signs:
            if len(s) == 2:
                out.append(UNKNOWN)
            elif s == {LIGHT}:
                out.append(POTENTIALLY_LIGHT)
            elif s == {HEAVY}:
                out.append(POTENTIALLY_HEAVY)
            else:
                out.append(REAL)
        return tuple(out)

    def suspect_coins(self) -> tuple[int, ...]:
        """Sorted ids of coins that could still be the fake."""
        return tuple(sorted({h.coin for h in self.hypotheses}))


def classify(state: KnowledgeState) -> tuple[str, ...]:
    return state.classification()


def classification_counts(state: KnowledgeState) -> dict[str, int]:
    counts = {UNKNOWN: 0, POTENTIALLY_LIGHT: 0, POTENTIALLY_HEAVY: 0, REAL: 0}
    for kind in state.classification():
        counts[kind] += 1
    return counts


def induced_outcome(h: Hypothesis, w: ParallelWeighing) -> str:
    """The outcome vector the world ``h`` forces for weighing ``w``.

    Scale j reads '<' when its left pan is lighter, '>' when heavier,
    '=' when balanced. A scale not holding the fake coin balances.
    """
    symbols = []
    for load in w:
        if h.coin in load.left:
            symbols.append(LEFT_LIGHTER if h.sign == LIGHT else LEFT_HEAVIER)
        elif h.coin in load.right:
            symbols.append(LEFT_HEAVIER if h.sign == LIGHT else LEFT_LIGHTER)
        else:
            symbols.append(BALANCED)
    return "".join(symbols)


def apply_outcome(state: KnowledgeState, w: ParallelWeighing, outcome: str) -> KnowledgeState:
    """Filter the state down to hypotheses that induce ``outcome`` on ``w``."""
    survivors = frozenset(
        h for h in state.hypotheses if induced_outcome(h, w) == outcome
    )
    if not survivors:
        raise ContradictoryOutcome(
            f"outcome {outcome!r} is impossible for every remaining hypothesis"
        )
    return KnowledgeState(state.coins, survivors)


def feasible_outcomes(state: KnowledgeState, w: ParallelWeighing) -> set[str]:
    """Exactly the outcome vectors some remaining hypothesis can produce."""
    return {induced_outcome(h, w) for h in state.hypotheses}
