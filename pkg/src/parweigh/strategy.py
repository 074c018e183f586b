"""Constructive strategy builders.

Large states follow the closed-form schemes: unknown coins go on the
scales in near-capacity loads (against real coins when a supply exists,
split over both pans with a lone real as parity padding otherwise), and
known-potential coins are paired same-potential across the two pans of a
scale so each tilt isolates one fifth (one (2k+1)-th) of the suspects.

Any residual state with at most SOLVER_THRESHOLD suspects is handed to the
exact solver instead, which settles the small exceptional cases optimally.
"""

from __future__ import annotations

from . import capacity, solve
from .core import (
    FIND_AND_LABEL,
    HEAVY,
    JUST_FIND,
    LIGHT,
    POTENTIALLY_HEAVY,
    POTENTIALLY_LIGHT,
    REAL,
    UNKNOWN,
    UNLIMITED,
    Hypothesis,
    KnowledgeState,
    ParallelWeighing,
    PuzzleConfig,
    PuzzleError,
    induced_outcome,
    scale_load,
)
from .tree import Answer, Node, Weigh

SOLVER_THRESHOLD = 30


class CapacityExceeded(PuzzleError):
    """More coins than the variant can resolve in the given minutes."""


class TwoCoinException(PuzzleError):
    """Two suspect coins with no real coin can never be told apart."""


class UnresolvableState(PuzzleError):
    """A state no strategy resolves regardless of budget."""


def _classes(hyps: frozenset[Hypothesis]) -> tuple[list[int], list[int], list[int]]:
    signs: dict[int, set[str]] = {}
    for h in hyps:
        signs.setdefault(h.coin, set()).add(h.sign)
    unknown = sorted(c for c, s in signs.items() if len(s) == 2)
    light = sorted(c for c, s in signs.items() if s == {LIGHT})
    heavy = sorted(c for c, s in signs.items() if s == {HEAVY})
    return unknown, light, heavy


def _balanced_capacity(scales: int, minutes: int, problem: str) -> int:
    """Capacity of the leftover pile once real coins are plentiful."""
    if minutes == 0:
        return 1 if problem == JUST_FIND else 0
    if problem == JUST_FIND:
        return capacity.unlimited_supply_capacity(scales, minutes)
    return capacity.find_label_unlimited_capacity(scales, minutes)


def _scheme_capacity(scales: int, minutes: int, reals: int, problem: str) -> int:
    """Coins the unknown-coin scheme handles in ``minutes`` with ``reals``
    real coins on hand for parity padding."""
    if minutes == 0:
        return 1 if problem == JUST_FIND else 0
    per_scale = (2 * scales + 1) ** (minutes - 1)
    pads = min(reals, scales)
    return scales * per_scale - (scales - pads) + _balanced_capacity(
        scales, minutes - 1, problem
    )


def _solver_subtree(
    hyps: frozenset[Hypothesis],
    reals: tuple[int, ...],
    minutes: int,
    scales: int,
    problem: str,
) -> Node:
    unknown, light, heavy = _classes(hyps)
    state = solve.CountState(len(unknown), len(light), len(heavy), len(reals))
    ids = solve.ClassIds(tuple(unknown), tuple(light), tuple(heavy), reals)
    return solve.extract_tree(state, minutes, scales, problem, ids)


def _expand(
    hyps: frozenset[Hypothesis],
    reals: tuple[int, ...],
    w: ParallelWeighing,
    minutes_left: int,
    scales: int,
    problem: str,
) -> Weigh:
    """Children for one committed weighing, recursing into the builder."""
    suspects_before = {h.coin for h in hyps}
    children: dict[str, Node] = {}
    for outcome in sorted({induced_outcome(h, w) for h in hyps}):
        child = frozenset(h for h in hyps if induced_outcome(h, w) == outcome)
        freed = suspects_before - {h.coin for h in child}
        child_reals = tuple(sorted(set(reals) | freed))
        children[outcome] = _build(child, child_reals, minutes_left, scales, problem)
    return Weigh(w, children)


def _build(
    hyps: frozenset[Hypothesis],
    reals: tuple[int, ...],
    minutes: int,
    scales: int,
    problem: str,
) -> Node:
    unknown, light, heavy = _classes(hyps)
    if len(unknown) + len(light) + len(heavy) <= SOLVER_THRESHOLD:
        return _solver_subtree(hyps, reals, minutes, scales, problem)
    if unknown and (light or heavy):
        raise PuzzleError("builder states never mix unknown and sign-known suspects")
    if unknown:
        return _unknown_minute(hyps, unknown, reals, minutes, scales, problem)
    return _known_potential_minute(hyps, light, heavy, reals, minutes, scales, problem)


_VS_REALS = "vs-reals"
_SPLIT = "split"
_SPLIT_PAD = "split-pad"


def _unknown_minute(
    hyps: frozenset[Hypothesis],
    unknown: list[int],
    reals: tuple[int, ...],
    minutes: int,
    scales: int,
    problem: str,
) -> Node:
    count = len(unknown)
    pool = len(reals)
    effective = 1
    while _scheme_capacity(scales, effective, pool, problem) < count:
        effective += 1
    if effective > minutes:
        raise CapacityExceeded(
            f"{count} unknown coins need {effective} minute(s), budget is {minutes}"
        )
    per_scale = (2 * scales + 1) ** (effective - 1)
    # The balanced branch only enjoys the full leftover capacity once it
    # holds at least one real per scale for padding, so weigh enough coins
    # to guarantee the children that stock even when the pool is short.
    remaining = max(
        count - _balanced_capacity(scales, effective - 1, problem),
        scales - pool,
        1,
    )

    # Plan one load per scale, largest first. A scale either weighs q
    # unknowns against q reals, or splits q over both pans with one real
    # levelling an odd q. Reals go to padding first so no scale is starved.
    reals_left = pool
    plans: list[tuple[int, str]] = []
    for j in range(scales):
        q = min(per_scale, remaining)
        if q <= 0:
            plans.append((0, _SPLIT))
            continue
        if reals_left >= q + scales:
            mode = _VS_REALS
            reals_left -= q
        elif q % 2 == 1:
            if reals_left >= 1:
                mode = _SPLIT_PAD
                reals_left -= 1
            elif q + 1 <= per_scale:
                q += 1
                mode = _SPLIT
            else:
                q -= 1
                mode = _SPLIT
        else:
            mode = _SPLIT
        remaining -= q
        plans.append((q, mode))
    if remaining > 0:
        raise CapacityExceeded(f"cannot place {count} unknown coins in one minute")

    next_unknown = iter(unknown)
    next_real = iter(reals)
    loads = []
    for q, mode in plans:
        if q == 0:
            loads.append(scale_load((), ()))
        elif mode == _VS_REALS:
            loads.append(
                scale_load(
                    (next(next_unknown) for _ in range(q)),
                    (next(next_real) for _ in range(q)),
                )
            )
        else:
            left = [next(next_unknown) for _ in range((q + 1) // 2)]
            right = [next(next_unknown) for _ in range(q // 2)]
            if mode == _SPLIT_PAD:
                right.append(next(next_real))
            loads.append(scale_load(left, right))
    return _expand(hyps, reals, tuple(loads), effective - 1, scales, problem)


def _known_potential_minute(
    hyps: frozenset[Hypothesis],
    light: list[int],
    heavy: list[int],
    reals: tuple[int, ...],
    minutes: int,
    scales: int,
    problem: str,
) -> Node:
    count = len(light) + len(heavy)
    fanout = 2 * scales + 1
    effective = 1
    while fanout**effective < count:
        effective += 1
    if effective > minutes:
        raise CapacityExceeded(
            f"{count} known-potential coins need {effective} minute(s), "
            f"budget is {minutes}"
        )
    target = -(-count // fanout)  # ceil: worst branch after this minute
    pairs_needed = -(-(count - target) // 2)
    light_pairs = len(light) // 2
    heavy_pairs = len(heavy) // 2
    if light_pairs + heavy_pairs < pairs_needed:
        # Only reachable when count <= 2k+1 and both classes are odd; one
        # real coin stands in for the missing partner of one single.
        if not reals:
            raise UnresolvableState(
                "odd light and heavy singles cannot be paired without a real coin"
            )
        pairs_needed = light_pairs + heavy_pairs

    # Same-potential pairs, one coin per pan: a tilt isolates the lights on
    # its lighter pan plus the heavies on its heavier pan.
    next_light = iter(light)
    next_heavy = iter(heavy)
    lights_left, heavies_left = light_pairs, heavy_pairs
    loads: list[tuple[list[int], list[int]]] = []
    placed = 0
    for j in range(scales):
        take = min(target, pairs_needed - placed)
        left: list[int] = []
        right: list[int] = []
        for _ in range(take):
            source = next_light if lights_left else next_heavy
            if lights_left:
                lights_left -= 1
            else:
                heavies_left -= 1
            left.append(next(source))
            right.append(next(source))
        placed += take
        loads.append((left, right))
    leftover = count - 2 * placed
    if leftover > target:
        # Both classes odd and every pair already placed: weigh one single
        # light against a real on a free scale (or under-filled scale).
        spare = next((j for j in range(scales) if len(loads[j][0]) < target), None)
        if spare is None or not reals:
            raise UnresolvableState(
                "cannot keep the leftover pile small enough without a real coin"
            )
        loads[spare][0].append(next(next_light))
        loads[spare][1].append(reals[0])
        leftover -= 1
    assert leftover <= target
    w = tuple(scale_load(left, right) for left, right in loads)
    return _expand(hyps, reals, w, effective - 1, scales, problem)


def build_known_potential(state: KnowledgeState, scales: int, minutes: int) -> Node:
    """Strategy tree for a state where every suspect's potential is known.

    Raises UnresolvableState for the stuck first-minute shapes (for two
    scales: one light + one heavy, or a 1-and-3 split, with no real coin)
    and CapacityExceeded when the budget is short.
    """
    classification = state.classification()
    if UNKNOWN in classification:
        raise ValueError("state still contains coins of unknown potential")
    suspects = sum(1 for c in classification if c in (POTENTIALLY_LIGHT, POTENTIALLY_HEAVY))
    if suspects > (2 * scales + 1) ** minutes:
        raise CapacityExceeded(
            f"{suspects} suspects exceed the {minutes}-minute capacity "
            f"{(2 * scales + 1) ** minutes}"
        )
    reals = tuple(i for i, c in enumerate(classification) if c == REAL)
    try:
        return _build(state.hypotheses, reals, minutes, scales, JUST_FIND)
    except solve.NotSolvable as exc:
        raise UnresolvableState(str(exc)) from exc


def build_unlimited(
    coins: int, scales: int, minutes: int, problem: str = JUST_FIND
) -> Node:
    """Strategy tree when an unlimited supply of real coins is available.

    Supply coins are materialized with ids ``coins..`` — enough for the
    first minute's loads; later minutes reuse coins proven real.
    """
    if coins < 1:
        raise ValueError("need at least one suspect coin")
    limit = capacity.variant_capacity(scales, minutes, problem, UNLIMITED)
    if coins > limit:
        raise CapacityExceeded(
            f"{coins} coins exceed the {minutes}-minute capacity {limit}"
        )
    cfg = PuzzleConfig(coins, scales, problem, UNLIMITED, minutes)
    effective = capacity.min_minutes(cfg)
    assert effective is not None and effective <= minutes
    supply = scales * (2 * scales + 1) ** max(effective - 1, 0) if effective else 0
    supply = max(supply, scales)
    reals = tuple(range(coins, coins + supply))
    try:
        return _build(KnowledgeState.fresh(coins).hypotheses, reals, minutes, scales, problem)
    except solve.NotSolvable as exc:  # pragma: no cover - capacity check precedes
        raise CapacityExceeded(str(exc)) from exc


def build_general(
    coins: int, scales: int, minutes: int, problem: str = JUST_FIND
) -> Node:
    """Strategy tree with no extra real coins.

    N = 2 raises TwoCoinException (never solvable); a single coin cannot
    be labeled, so find-and-label needs N >= 3.
    """
    if coins < 1:
        raise ValueError("need at least one suspect coin")
    if coins == 2:
        raise TwoCoinException("two coins with no real coin can never be resolved")
    if coins == 1:
        if problem == FIND_AND_LABEL:
            raise UnresolvableState("a lone suspect can never face a reference coin")
        return Answer(0, None)
    limit = capacity.variant_capacity(scales, minutes, problem, 0)
    if coins > limit:
        raise CapacityExceeded(
            f"{coins} coins exceed the {minutes}-minute capacity {limit}"
        )
    try:
        return _build(KnowledgeState.fresh(coins).hypotheses, (), minutes, scales, problem)
    except solve.NotSolvable as exc:  # pragma: no cover - capacity check precedes
        raise CapacityExceeded(str(exc)) from exc


def build_tree(cfg: PuzzleConfig) -> Node:
    """Build and return a strategy tree for any supported configuration."""
    if cfg.supply_is_unlimited:
        return build_unlimited(cfg.coins, cfg.scales, cfg.budget, cfg.problem)
    if cfg.supply == 0:
        return build_general(cfg.coins, cfg.scales, cfg.budget, cfg.problem)
    reals = tuple(range(cfg.coins, cfg.coins + int(cfg.supply)))
    try:
        return _build(
            KnowledgeState.fresh(cfg.coins).hypotheses,
            reals,
            cfg.budget,
            cfg.scales,
            cfg.problem,
        )
    except solve.NotSolvable as exc:
        raise CapacityExceeded(str(exc)) from exc


def suggest_weighing(
    state: KnowledgeState,
    cfg: PuzzleConfig,
    minutes_left: int,
) -> ParallelWeighing | None:
    """A legal, helpful next weighing for an in-progress game.

    Uses the exact solver when the state is within reach (an optimal
    weighing if one exists); otherwise falls back to the pairing scheme.
    Returns None when the state is already resolved.
    """
    counts = solve.state_counts(state, cfg.supply)
    if solve.resolved(counts, cfg.problem):
        return None
    classification = state.classification()
    unknown = [i for i, c in enumerate(classification) if c == UNKNOWN]
    light = [i for i, c in enumerate(classification) if c == POTENTIALLY_LIGHT]
    heavy = [i for i, c in enumerate(classification) if c == POTENTIALLY_HEAVY]
    reals = [i for i, c in enumerate(classification) if c == REAL]
    if cfg.supply_is_unlimited:
        reals.extend(range(cfg.coins, cfg.coins + counts.suspects() + cfg.scales))
    else:
        reals.extend(range(cfg.coins, cfg.coins + int(cfg.supply)))
    within_guard = (
        counts.suspects() <= SOLVER_THRESHOLD
        and (2 * cfg.scales + 1) ** minutes_left <= solve.MAX_OUTCOME_SPACE
    )
    if within_guard and solve.solvable(counts, minutes_left, cfg.scales, cfg.problem):
        w_counts = solve.winning_weighing(counts, minutes_left, cfg.scales, cfg.problem)
        if w_counts is not None:
            return solve.concretize_weighing(w_counts, unknown, light, heavy, reals)

    # Scheme fallback: same-class pairs across the pans of each scale,
    # close to even across scales, singles set aside.
    suspects = counts.suspects()
    target = max(1, -(-suspects // (2 * cfg.scales + 1)))
    streams = [iter(unknown), iter(light), iter(heavy)]
    pair_budget = [len(unknown) // 2, len(light) // 2, len(heavy) // 2]
    loads = []
    for _ in range(cfg.scales):
        left: list[int] = []
        right: list[int] = []
        for cls in range(3):
            while len(left) < target and pair_budget[cls] > 0:
                pair_budget[cls] -= 1
                left.append(next(streams[cls]))
                right.append(next(streams[cls]))
        loads.append((left, right))
    if all(not left for left, _ in loads):
        # No pair can be formed; weigh one suspect against a real, or
        # against another suspect, or concede an idle weighing when the
        # state holds a single unweighable coin.
        remaining_suspects = unknown + light + heavy
        first = remaining_suspects[0]
        if reals:
            loads[0] = ([first], [reals[0]])
        elif len(remaining_suspects) > 1:
            loads[0] = ([first], [remaining_suspects[1]])
    return tuple(scale_load(left, right) for left, right in loads)
