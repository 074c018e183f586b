"""Acceptance criteria, one test per criterion, each printing a verdict.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
Every expected value is exact; the only tolerances are the stated
wall-clock budgets.
"""

import random
import time

from parweigh import capacity, solve, strategy, verify
from parweigh.core import (
    FIND_AND_LABEL,
    JUST_FIND,
    UNLIMITED,
    KnowledgeState,
    PuzzleConfig,
    apply_outcome,
    classification_counts,
    feasible_outcomes,
    weighing,
)
from parweigh.solve import CountState
from parweigh.tree import Answer, Weigh


def report(name: str, ok: bool, detail: str = "") -> None:
    marker = "PASS" if ok else "FAIL"
    print(f"[{marker}] {name}" + (f" ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


def test_headline_capacity():
    start = time.perf_counter()
    value = capacity.just_find_capacity(2, 5)
    minutes = capacity.min_minutes(PuzzleConfig(1561, 2, JUST_FIND))
    elapsed = time.perf_counter() - start
    report(
        "headline capacity: 1561 coins, two scales, five minutes",
        value == 1561 and minutes == 5 and elapsed < 1.0,
        f"capacity={value}, minutes={minutes}, {elapsed:.3f}s",
    )


def test_strategy_witness_at_scale():
    solve.clear_caches()
    start = time.perf_counter()
    tree = strategy.build_general(1561, 2, 5)
    cfg = PuzzleConfig(1561, 2, JUST_FIND, 0, 5)
    result = verify.check_correct(tree, cfg)
    elapsed = time.perf_counter() - start
    hypotheses = 2 * cfg.coins
    report(
        "strategy witness at scale: 1561-coin tree verifies",
        result.correct and hypotheses == 3122 and elapsed < 10.0,
        f"correct={result.correct}, hypotheses={hypotheses}, {elapsed:.2f}s",
    )


def _known_potential_max(scales: int, minutes: int) -> int:
    best = 0
    n = 1
    while True:
        if solve.solvable(CountState(0, n, 0, 0), minutes, scales):
            best = n
        elif n >= 2:
            return best
        n += 1


def test_solver_versus_formula_suite():
    start = time.perf_counter()
    checks = [
        ("k=1 just-find n=1..3", [solve.max_coins(1, n) for n in (1, 2, 3)], [1, 4, 13]),
        (
            "k=1 find-and-label n=2..3",
            [solve.max_coins(1, n, FIND_AND_LABEL) for n in (2, 3)],
            [3, 12],
        ),
        ("k=2 just-find n=1..2", [solve.max_coins(2, n) for n in (1, 2)], [1, 11]),
        (
            "k=2 just-find unlimited n=1..2",
            [solve.max_coins(2, n, JUST_FIND, UNLIMITED) for n in (1, 2)],
            [3, 13],
        ),
        (
            "k=2 find-and-label n=1..2",
            [solve.max_coins(2, n, FIND_AND_LABEL) for n in (1, 2)],
            [0, 10],
        ),
        (
            "k=2 known potential n=1..2",
            [_known_potential_max(2, n) for n in (1, 2)],
            [5, 25],
        ),
        ("k=3 just-find n=1", [solve.max_coins(3, 1)], [1]),
        ("k=3 unlimited n=1", [solve.max_coins(3, 1, JUST_FIND, UNLIMITED)], [4]),
    ]
    elapsed = time.perf_counter() - start
    ok = all(got == want for _, got, want in checks) and elapsed < 120.0
    detail = "; ".join(
        f"{name}: {got}{'' if got == want else f' != {want}'}"
        for name, got, want in checks
    )
    report("solver-vs-formula oracle suite", ok, f"{detail}; {elapsed:.2f}s")


def test_two_coins_impossible():
    ok = all(
        not solve.solvable(CountState(2, 0, 0, 0), m, k)
        for k in (1, 2)
        for m in range(7)
    )
    report("impossibility: two bare coins never resolve", ok)


def test_two_extra_coins_reach_unlimited_capacity():
    got = [solve.max_coins(2, n, JUST_FIND, 2) for n in (1, 2)]
    want = [(5**n + 1) // 2 for n in (1, 2)]
    report(
        "two extra real coins equal an unlimited supply",
        got == want,
        f"{got} vs {want}",
    )


def test_small_known_potential_exceptions():
    stuck = [CountState(0, 1, 1, 0), CountState(0, 1, 3, 0)]
    freed = [CountState(0, 1, 1, 1), CountState(0, 1, 3, 1)]
    ok = all(not solve.solvable(s, 1, 2) for s in stuck) and all(
        solve.solvable(s, 1, 2) for s in freed
    )
    report("one-light/one-heavy and 1-and-3 splits need a real coin", ok)


def test_lazy_coin_lemma():
    start = time.perf_counter()
    just_find = verify.lazy_coin_search(1, 2, JUST_FIND)
    find_label = verify.lazy_coin_search(1, 2, FIND_AND_LABEL)
    elapsed = time.perf_counter() - start
    ok = just_find == (4, True) and find_label[0] == 3 and elapsed < 30.0
    report(
        "lazy-coin lemma on one scale, two minutes",
        ok,
        f"just-find={just_find}, find-and-label max={find_label[0]}, {elapsed:.2f}s",
    )


def _random_weighing(rng, coins, scales):
    ids = list(range(coins))
    rng.shuffle(ids)
    cursor = 0
    loads = []
    for _ in range(scales):
        size = rng.randint(0, max(0, (coins - cursor) // 2))
        loads.append(
            (ids[cursor : cursor + size], ids[cursor + size : cursor + 2 * size])
        )
        cursor += 2 * size
    return weighing(loads)


def _project(state, w):
    classification = state.classification()
    index = {
        "unknown": 0,
        "potentially-light": 1,
        "potentially-heavy": 2,
        "real": 3,
    }
    counts = classification_counts(state)
    s = CountState(
        counts["unknown"],
        counts["potentially-light"],
        counts["potentially-heavy"],
        counts["real"],
    )
    cw = tuple(
        (
            tuple(sum(1 for c in load.left if index[classification[c]] == i) for i in range(4)),
            tuple(sum(1 for c in load.right if index[classification[c]] == i) for i in range(4)),
        )
        for load in w
    )
    return s, cw


def test_abstraction_cross_check():
    rng = random.Random(1561)
    mismatches = 0
    checked = 0
    while checked < 1000:
        coins = rng.randint(2, 8)
        scales = rng.randint(1, 2)
        state = KnowledgeState.fresh(coins)
        for _ in range(rng.randint(0, 2)):
            w = _random_weighing(rng, coins, scales)
            state = apply_outcome(
                state, w, rng.choice(sorted(feasible_outcomes(state, w)))
            )
        w = _random_weighing(rng, coins, scales)
        s, cw = _project(state, w)
        for outcome in sorted(feasible_outcomes(state, w)):
            child = apply_outcome(state, w, outcome)
            expected, _ = _project(child, w)
            if tuple(solve.transition(s, cw, outcome)) != tuple(expected):
                mismatches += 1
            checked += 1
    report(
        "count abstraction matches concrete filtering",
        mismatches == 0 and checked >= 1000,
        f"{checked} triples, {mismatches} mismatches",
    )


def test_four_coin_dynamic_tree_from_lazy_coin_discussion():
    second = weighing([({0, 1}, {2, 3})])
    tree = Weigh(
        weighing([({0}, {1})]),
        {
            "<": Weigh(second, {"<": Answer(0, None), ">": Answer(1, None)}),
            ">": Weigh(second, {"<": Answer(1, None), ">": Answer(0, None)}),
            "=": Weigh(
                weighing([({2}, {0})]),
                {"<": Answer(2, None), ">": Answer(2, None), "=": Answer(3, None)},
            ),
        },
    )
    cfg = PuzzleConfig(4, 1, JUST_FIND, 0, 2)
    legal = verify.check_legal(tree, cfg)
    correct = verify.check_correct(tree, cfg)
    report(
        "four-coin adaptive example verifies",
        legal.legal and correct.correct,
        f"legal={legal.legal}, correct={correct.correct}",
    )
