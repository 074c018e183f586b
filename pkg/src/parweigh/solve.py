"""Exact minimax solver over symmetry-reduced count states.

A knowledge state collapses to a CountState (a, b, c, r): how many coins
are fully unknown, potentially light, potentially heavy, and known real.
Coins of the same class are interchangeable, so search runs on counts and
concrete trees are recovered afterwards by assigning ids class by class.

Symmetry reductions: a global light/heavy flip normalizes b <= c, real
coins beyond one pad per suspect are ballast and get capped, per-scale pan
swaps and scale reorderings are quotiented away in move generation.
Weighings are tried in lexicographically increasing canonical form and the
first witness wins, so every answer is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .core import (
    BALANCED,
    FIND_AND_LABEL,
    HEAVY,
    JUST_FIND,
    LEFT_HEAVIER,
    LEFT_LIGHTER,
    LIGHT,
    POTENTIALLY_HEAVY,
    POTENTIALLY_LIGHT,
    REAL,
    UNKNOWN,
    UNLIMITED,
    Hypothesis,
    KnowledgeState,
    ParallelWeighing,
    PuzzleError,
    classification_counts,
    feasible_outcomes,
    induced_outcome,
    scale_load,
)
from .tree import Answer, Node, Weigh

EXACT = "exact"
GREEDY = "greedy"

# Guard for exhaustive capacity scans: (2k+1)^n outcomes per strategy.
MAX_OUTCOME_SPACE = 700


class InfeasibleOutcome(PuzzleError):
    """A count transition that would leave zero live hypotheses."""


class InstanceTooLarge(PuzzleError):
    """The instance exceeds the exhaustive-search guard."""


class NotSolvable(PuzzleError):
    """No strategy exists for the requested state and budget."""


class CountState(NamedTuple):
    a: int  # both signs still possible
    b: int  # potentially light
    c: int  # potentially heavy
    r: int  # known real coins available

    def suspects(self) -> int:
        return self.a + self.b + self.c

    def hypothesis_count(self) -> int:
        return 2 * self.a + self.b + self.c


# One pan as class counts (a, b, c, r); one scale as (left, right).
PanCounts = tuple[int, int, int, int]
CountWeighing = tuple[tuple[PanCounts, PanCounts], ...]

_IDLE_SCALE: tuple[PanCounts, PanCounts] = ((0, 0, 0, 0), (0, 0, 0, 0))


def resolved(state: CountState, problem: str) -> bool:
    """Whether the state already answers the problem.

    Just-find needs a single possible fake coin: one unknown coin, or one
    sign-known suspect. Find-and-label additionally needs the sign, which
    an unknown coin never has.
    """
    s = CountState(*state)
    if problem == JUST_FIND:
        return (s.a == 1 and s.b + s.c == 0) or (s.a == 0 and s.b + s.c <= 1)
    return s.a == 0 and s.b + s.c == 1


def transition(state: CountState, w: CountWeighing, outcome: str) -> CountState:
    """Count-level successor for one observed outcome vector."""
    child = _transition_or_none(CountState(*state), w, outcome)
    if child is None:
        raise InfeasibleOutcome(f"outcome {outcome!r} leaves no live hypothesis")
    return child


def _transition_or_none(s: CountState, w: CountWeighing, outcome: str) -> CountState | None:
    if len(outcome) != len(w):
        raise ValueError("outcome length must match scale count")
    total = s.a + s.b + s.c + s.r
    tilts = [j for j, sym in enumerate(outcome) if sym != BALANCED]
    if len(tilts) > 1:
        return None  # a single fake coin cannot tilt two scales
    if not tilts:
        a0, b0, c0 = s.a, s.b, s.c
        for left, right in w:
            a0 -= left[0] + right[0]
            b0 -= left[1] + right[1]
            c0 -= left[2] + right[2]
        if 2 * a0 + b0 + c0 == 0:
            return None
        return CountState(a0, b0, c0, total - a0 - b0 - c0)
    j = tilts[0]
    left, right = w[j]
    if outcome[j] == LEFT_LIGHTER:
        # fake is light on the lighter pan or heavy on the heavier pan
        nb, nc = left[0] + left[1], right[0] + right[2]
    else:
        nb, nc = right[0] + right[1], left[0] + left[2]
    if nb + nc == 0:
        return None
    return CountState(0, nb, nc, total - nb - nc)


def _child_states(s: CountState, w: CountWeighing) -> list[tuple[str, CountState]]:
    """All feasible (outcome, successor) pairs for ``w`` from ``s``."""
    k = len(w)
    out = []
    balanced = BALANCED * k
    child = _transition_or_none(s, w, balanced)
    if child is not None:
        out.append((balanced, child))
    for j in range(k):
        for sym in (LEFT_LIGHTER, LEFT_HEAVIER):
            outcome = balanced[:j] + sym + balanced[j + 1 :]
            child = _transition_or_none(s, w, outcome)
            if child is not None:
                out.append((outcome, child))
    return out


@lru_cache(maxsize=None)
def _pan_pairs(
    a: int, b: int, c: int, r: int, branch_cap: int | None = None
) -> tuple[tuple[PanCounts, PanCounts], ...]:
    """Canonical single-scale loads: every split of suspects over two pans.

    Real coins carry no information, so they appear only as padding that
    levels the smaller pan; reals on both pans cancel and are never
    generated. Pans are ordered descending (pan swap mirrors outcomes).

    ``branch_cap`` drops loads whose tilt branch would hold more suspects
    than a child could ever resolve; the search passes (2k+1)^(m-1).
    """
    pairs = set()
    for a_l in range(a + 1):
        for a_r in range(a - a_l + 1):
            for b_l in range(b + 1):
                for b_r in range(b - b_l + 1):
                    for c_l in range(c + 1):
                        for c_r in range(c - c_l + 1):
                            s_l = a_l + b_l + c_l
                            s_r = a_r + b_r + c_r
                            if s_l + s_r == 0:
                                continue
                            if branch_cap is not None and (
                                a_l + b_l + a_r + c_r > branch_cap
                                or a_r + b_r + a_l + c_l > branch_cap
                            ):
                                continue
                            pad = abs(s_l - s_r)
                            if pad > r:
                                continue
                            left: PanCounts = (a_l, b_l, c_l, pad if s_l < s_r else 0)
                            right: PanCounts = (a_r, b_r, c_r, pad if s_r < s_l else 0)
                            if left < right:
                                left, right = right, left
                            pairs.add((left, right))
    return tuple(sorted(pairs, reverse=True))


def enumerate_weighings(
    state: CountState, scales: int, branch_cap: int | None = None
) -> list[CountWeighing]:
    """All legal weighings up to symmetry, lexicographically ascending.

    Scale loads are nonincreasing with idle scales last; the all-idle
    weighing is excluded as useless. Uninformative but legal moves (such
    as one potentially light coin against one potentially heavy coin) are
    kept: legality, not usefulness, defines the move set.
    """
    s = CountState(*state)
    loads = _pan_pairs(s.a, s.b, s.c, s.r, branch_cap)
    found: list[CountWeighing] = []
    picked: list[tuple[PanCounts, PanCounts]] = []

    def rec(start: int, left: int, a: int, b: int, c: int, r: int) -> None:
        if picked:
            found.append(tuple(picked) + (_IDLE_SCALE,) * left)
        if left == 0:
            return
        for i in range(start, len(loads)):
            lp, rp = loads[i]
            na = a - lp[0] - rp[0]
            nb = b - lp[1] - rp[1]
            nc = c - lp[2] - rp[2]
            nr = r - lp[3] - rp[3]
            if na < 0 or nb < 0 or nc < 0 or nr < 0:
                continue
            picked.append(loads[i])
            rec(i, left - 1, na, nb, nc, nr)
            picked.pop()

    rec(0, scales, s.a, s.b, s.c, s.r)
    found.sort()
    return found


def _canonical(s: CountState, cap_reals: bool) -> tuple[CountState, bool]:
    """Normalize b <= c (global sign flip) and optionally cap the reals."""
    flipped = s.b > s.c
    b, c = (s.c, s.b) if flipped else (s.b, s.c)
    r = min(s.r, s.a + b + c) if cap_reals else s.r
    return CountState(s.a, b, c, r), flipped


def _flip_weighing(w: CountWeighing) -> CountWeighing:
    """Apply the light/heavy flip to a weighing (swap the b and c columns)."""
    return tuple(
        ((l[0], l[2], l[1], l[3]), (r[0], r[2], r[1], r[3])) for l, r in w
    )


# (canonical state, minutes, scales, problem, cap) -> (solvable, winning weighing)
_memo: dict = {}


def clear_caches() -> None:
    _memo.clear()
    _pan_pairs.cache_clear()


def _search(cs: CountState, minutes: int, scales: int, problem: str, cap: bool):
    key = (cs, minutes, scales, problem, cap)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    if resolved(cs, problem):
        result = (True, None)
    elif minutes <= 0:
        result = (False, None)
    else:
        # Information bound: at most (2k+1)^m leaves. Just-find must name
        # each possibly fake coin; find-and-label each hypothesis.
        leaves = (2 * scales + 1) ** minutes
        needed = cs.suspects() if problem == JUST_FIND else cs.hypothesis_count()
        if needed > leaves:
            result = (False, None)
        else:
            result = (False, None)
            branch_cap = (2 * scales + 1) ** (minutes - 1)
            for w in enumerate_weighings(cs, scales, branch_cap):
                children = _child_states(cs, w)
                if all(
                    _search(
                        _canonical(child, cap)[0], minutes - 1, scales, problem, cap
                    )[0]
                    for _, child in children
                ):
                    result = (True, w)
                    break
    _memo[key] = result
    return result


def solvable(
    state: CountState,
    minutes: int,
    scales: int,
    problem: str = JUST_FIND,
    cap_reals: bool = True,
) -> bool:
    """Whether some strategy resolves ``state`` within ``minutes``."""
    cs, _ = _canonical(CountState(*state), cap_reals)
    return _search(cs, minutes, scales, problem, cap_reals)[0]


def winning_weighing(
    state: CountState, minutes: int, scales: int, problem: str = JUST_FIND
) -> CountWeighing | None:
    """First canonical weighing whose every outcome stays solvable, or None
    when the state is already resolved or not solvable at all."""
    s = CountState(*state)
    cs, flipped = _canonical(s, True)
    ok, w = _search(cs, minutes, scales, problem, True)
    if not ok or w is None:
        return None
    return _flip_weighing(w) if flipped else w


def max_coins(
    scales: int, minutes: int, problem: str = JUST_FIND, supply: int | str = 0
) -> int:
    """Largest N of all-unknown coins resolvable in the given minutes.

    Found by an ascending scan; solvability is checked to be gap-free above
    N = 3 over the scanned range rather than assumed (N = 1 and N = 2 are
    genuine exceptions in several variants).
    """
    if (2 * scales + 1) ** minutes > MAX_OUTCOME_SPACE:
        raise InstanceTooLarge(
            f"(2k+1)^n = {(2 * scales + 1) ** minutes} exceeds the "
            f"search guard {MAX_OUTCOME_SPACE}"
        )
    results: list[bool] = []
    best = 0
    n = 1
    while True:
        extra = n if supply == UNLIMITED else int(supply)
        ok = solvable(CountState(n, 0, 0, extra), minutes, scales, problem)
        results.append(ok)
        if ok:
            best = n
        elif n >= 4:
            break
        n += 1
    for i in range(3, best + 1):
        if not results[i - 1]:
            raise PuzzleError(
                f"solvability is not monotone: N={i} unsolvable but N={best} solvable"
            )
    return best


@dataclass(frozen=True)
class ClassIds:
    """Concrete coin ids backing each class of a CountState."""

    unknown: tuple[int, ...] = ()
    light: tuple[int, ...] = ()
    heavy: tuple[int, ...] = ()
    real: tuple[int, ...] = ()


def default_ids(state: CountState) -> ClassIds:
    """Dense 0-based ids: unknowns first, then lights, heavies, reals."""
    s = CountState(*state)
    a_end, b_end, c_end = s.a, s.a + s.b, s.a + s.b + s.c
    return ClassIds(
        unknown=tuple(range(a_end)),
        light=tuple(range(a_end, b_end)),
        heavy=tuple(range(b_end, c_end)),
        real=tuple(range(c_end, c_end + s.r)),
    )


def _hypotheses_for(ids: ClassIds) -> frozenset[Hypothesis]:
    hyps = set()
    for coin in ids.unknown:
        hyps.add(Hypothesis(coin, LIGHT))
        hyps.add(Hypothesis(coin, HEAVY))
    for coin in ids.light:
        hyps.add(Hypothesis(coin, LIGHT))
    for coin in ids.heavy:
        hyps.add(Hypothesis(coin, HEAVY))
    return frozenset(hyps)


def _classes_of(hyps: frozenset[Hypothesis]) -> tuple[list[int], list[int], list[int]]:
    signs: dict[int, set[str]] = {}
    for h in hyps:
        signs.setdefault(h.coin, set()).add(h.sign)
    unknown = sorted(coin for coin, s in signs.items() if len(s) == 2)
    light = sorted(coin for coin, s in signs.items() if s == {LIGHT})
    heavy = sorted(coin for coin, s in signs.items() if s == {HEAVY})
    return unknown, light, heavy


def concretize_weighing(
    w: CountWeighing,
    unknown: list[int],
    light: list[int],
    heavy: list[int],
    real: list[int],
) -> ParallelWeighing:
    """Fill pans with the lowest unused ids of each class, scales in order."""
    pools = {0: iter(unknown), 1: iter(light), 2: iter(heavy), 3: iter(real)}
    loads = []
    for left, right in w:
        pans = []
        for pan in (left, right):
            picked: list[int] = []
            for cls in range(4):
                picked.extend(next(pools[cls]) for _ in range(pan[cls]))
            pans.append(picked)
        loads.append(scale_load(pans[0], pans[1]))
    return tuple(loads)


def extract_tree(
    state: CountState,
    minutes: int,
    scales: int,
    problem: str = JUST_FIND,
    ids: ClassIds | None = None,
) -> Node:
    """Concrete strategy tree witnessing solvable(state, minutes).

    Classes map to ids lowest-first; each subtree uses the fewest minutes
    that still solve its state, so no branch wastes a weighing.
    """
    s = CountState(*state)
    if ids is None:
        ids = default_ids(s)
    lengths = (len(ids.unknown), len(ids.light), len(ids.heavy))
    if lengths != (s.a, s.b, s.c) or len(ids.real) < min(s.r, s.suspects()):
        raise ValueError("class id assignment does not match the count state")
    hyps = _hypotheses_for(ids)
    return _extract(hyps, tuple(sorted(ids.real)), minutes, scales, problem)


def _extract(
    hyps: frozenset[Hypothesis],
    reals: tuple[int, ...],
    minutes: int,
    scales: int,
    problem: str,
) -> Node:
    unknown, light, heavy = _classes_of(hyps)
    counts = CountState(len(unknown), len(light), len(heavy), len(reals))
    needed = None
    for m in range(minutes + 1):
        if solvable(counts, m, scales, problem):
            needed = m
            break
    if needed is None:
        raise NotSolvable(
            f"state {tuple(counts)} is not solvable in {minutes} minute(s) "
            f"on {scales} scale(s)"
        )
    if resolved(counts, problem):
        if counts.a == 1:
            return Answer(unknown[0], None)
        coin = light[0] if light else heavy[0]
        return Answer(coin, LIGHT if light else HEAVY)
    w_counts = winning_weighing(counts, needed, scales, problem)
    assert w_counts is not None
    w = concretize_weighing(w_counts, unknown, light, heavy, list(reals))
    children: dict[str, Node] = {}
    for outcome in sorted({induced_outcome(h, w) for h in hyps}):
        child_hyps = frozenset(h for h in hyps if induced_outcome(h, w) == outcome)
        survivors = {h.coin for h in child_hyps}
        freed = [coin for coin in (unknown + light + heavy) if coin not in survivors]
        child_reals = tuple(sorted(set(reals) | set(freed)))
        children[outcome] = _extract(child_hyps, child_reals, needed - 1, scales, problem)
    return Weigh(w, children)


def state_counts(state: KnowledgeState, supply: int | str = 0) -> CountState:
    """CountState view of a knowledge state plus its supply of real coins."""
    counts = classification_counts(state)
    a, b, c = counts[UNKNOWN], counts[POTENTIALLY_LIGHT], counts[POTENTIALLY_HEAVY]
    extra = a + b + c if supply == UNLIMITED else int(supply)
    return CountState(a, b, c, counts[REAL] + extra)


def worst_outcome(
    state: KnowledgeState,
    w: ParallelWeighing,
    minutes_left: int,
    problem: str = JUST_FIND,
    supply: int | str = 0,
    mode: str = EXACT,
) -> str:
    """Adversarial outcome choice for one weighing.

    Exact mode prefers any child the player can no longer solve in the
    remaining minutes, then the largest suspect count, then the smallest
    outcome string ('<' < '=' < '>'). Greedy mode skips the solvability
    probe. Always returns a feasible outcome.
    """
    if mode not in (EXACT, GREEDY):
        raise ValueError(f"unknown adversary mode {mode!r}")
    best_key = None
    best_outcome = None
    for outcome in sorted(feasible_outcomes(state, w)):
        survivors = frozenset(h for h in state.hypotheses if induced_outcome(h, w) == outcome)
        child = KnowledgeState(state.coins, survivors)
        suspects = len(child.suspect_coins())
        if mode == EXACT:
            ok = solvable(
                state_counts(child, supply), max(minutes_left - 1, 0), len(w), problem
            )
            key = (1 if ok else 0, -suspects, outcome)
        else:
            key = (-suspects, outcome)
        if best_key is None or key < best_key:
            best_key, best_outcome = key, outcome
    assert best_outcome is not None
    return best_outcome
