import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parweigh.core import (
    HEAVY,
    LIGHT,
    POTENTIALLY_HEAVY,
    POTENTIALLY_LIGHT,
    REAL,
    UNKNOWN,
    ContradictoryOutcome,
    Hypothesis,
    IllegalWeighing,
    KnowledgeState,
    PuzzleConfig,
    apply_outcome,
    classify,
    feasible_outcomes,
    induced_outcome,
    validate_weighing,
    weighing,
)

W2 = weighing([({0}, {1}), ({2}, {3})])


def test_induced_outcome_light_on_left():
    assert induced_outcome(Hypothesis(0, LIGHT), W2) == "<="


def test_induced_outcome_off_scale():
    assert induced_outcome(Hypothesis(4, HEAVY), W2) == "=="


def test_induced_outcome_heavy_on_right():
    # heavy fake on the second scale's right pan tips its left pan up
    assert induced_outcome(Hypothesis(3, HEAVY), W2) == "=<"


def test_apply_outcome_filters_to_matching_hypotheses():
    s = KnowledgeState.fresh(5)
    out = apply_outcome(s, W2, "<=")
    assert out.hypotheses == frozenset({Hypothesis(0, LIGHT), Hypothesis(1, HEAVY)})
    assert classify(out) == (
        POTENTIALLY_LIGHT,
        POTENTIALLY_HEAVY,
        REAL,
        REAL,
        REAL,
    )


def test_apply_outcome_balanced_leaves_offscale_unknown():
    s = KnowledgeState.fresh(5)
    out = apply_outcome(s, W2, "==")
    assert out.hypotheses == frozenset({Hypothesis(4, LIGHT), Hypothesis(4, HEAVY)})
    assert classify(out) == (REAL, REAL, REAL, REAL, UNKNOWN)


def test_apply_outcome_rejects_double_tilt():
    with pytest.raises(ContradictoryOutcome):
        apply_outcome(KnowledgeState.fresh(5), W2, "<<")


def test_feasible_outcomes_fresh_state():
    s = KnowledgeState.fresh(5)
    assert feasible_outcomes(s, W2) == {"<=", ">=", "=<", "=>", "=="}


def test_feasible_outcomes_two_sign_known_coins():
    s = KnowledgeState(2, frozenset({Hypothesis(0, LIGHT), Hypothesis(1, LIGHT)}))
    w = weighing([({0}, {1})])
    assert feasible_outcomes(s, w) == {"<", ">"}


def test_feasible_outcomes_idle_weighing():
    s = KnowledgeState.fresh(4)
    w = weighing([(set(), set()), (set(), set())])
    assert feasible_outcomes(s, w) == {"=="}


def test_classify_fresh():
    assert classify(KnowledgeState.fresh(3)) == (UNKNOWN, UNKNOWN, UNKNOWN)


def test_classify_mixed():
    s = KnowledgeState(3, frozenset({Hypothesis(0, LIGHT), Hypothesis(1, HEAVY)}))
    assert classify(s) == (POTENTIALLY_LIGHT, POTENTIALLY_HEAVY, REAL)


def test_classify_single_unknown():
    s = KnowledgeState(3, frozenset({Hypothesis(2, LIGHT), Hypothesis(2, HEAVY)}))
    assert classify(s) == (REAL, REAL, UNKNOWN)


def test_validate_weighing_codes():
    with pytest.raises(IllegalWeighing) as e:
        validate_weighing(weighing([({0, 1}, {2})]), 1, 5)
    assert e.value.code == "pan-size-mismatch"
    with pytest.raises(IllegalWeighing) as e:
        validate_weighing(weighing([({0}, {1}), ({0}, {2})]), 2, 5)
    assert e.value.code == "duplicate-coin"
    with pytest.raises(IllegalWeighing) as e:
        validate_weighing(weighing([({0}, {9})]), 1, 5)
    assert e.value.code == "bad-coin-id"
    with pytest.raises(IllegalWeighing) as e:
        validate_weighing(weighing([({0}, {1})]), 2, 5)
    assert e.value.code == "wrong-scale-count"
    validate_weighing(weighing([({0}, {1}), (set(), set())]), 2, 5)


def test_config_validation():
    with pytest.raises(ValueError):
        PuzzleConfig(0, 1)
    with pytest.raises(ValueError):
        PuzzleConfig(3, 0)
    with pytest.raises(ValueError):
        PuzzleConfig(3, 1, problem="guess")
    with pytest.raises(ValueError):
        PuzzleConfig(3, 1, supply=-1)
    assert PuzzleConfig(3, 2, supply="unlimited").coin_limit() is None
    assert PuzzleConfig(3, 2, supply=4).coin_limit() == 7


@st.composite
def random_weighing(draw, coins, scales):
    ids = list(range(coins))
    draw_order = draw(st.permutations(ids))
    loads = []
    cursor = 0
    for _ in range(scales):
        size = draw(st.integers(0, max(0, (coins - cursor) // 2)))
        left = draw_order[cursor : cursor + size]
        right = draw_order[cursor + size : cursor + 2 * size]
        cursor += 2 * size
        loads.append((left, right))
    return weighing(loads)


@st.composite
def state_and_weighing(draw):
    coins = draw(st.integers(2, 8))
    scales = draw(st.integers(1, 3))
    w = draw(random_weighing(coins, scales))
    # narrow the fresh state by a few consistent outcomes first
    state = KnowledgeState.fresh(coins)
    for _ in range(draw(st.integers(0, 2))):
        prior = draw(random_weighing(coins, scales))
        options = sorted(feasible_outcomes(state, prior))
        state = apply_outcome(state, prior, draw(st.sampled_from(options)))
    return state, w


@settings(max_examples=200, deadline=None)
@given(state_and_weighing())
def test_partition_property(case):
    state, w = case
    sizes = [
        len(apply_outcome(state, w, o).hypotheses) for o in feasible_outcomes(state, w)
    ]
    assert sum(sizes) == len(state.hypotheses)


@settings(max_examples=200, deadline=None)
@given(state_and_weighing())
def test_monotonicity_and_single_tilt(case):
    state, w = case
    for o in feasible_outcomes(state, w):
        child = apply_outcome(state, w, o)
        assert child.hypotheses <= state.hypotheses
        assert sum(1 for sym in o if sym != "=") <= 1


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_weighed_coins_never_stay_unknown(data):
    """After any consistent weighing sequence, every coin that visited a
    pan is classified real or sign-known, and coins on balanced scales
    are real."""
    coins = data.draw(st.integers(2, 8))
    scales = data.draw(st.integers(1, 2))
    state = KnowledgeState.fresh(coins)
    ever_weighed: set[int] = set()
    must_be_real: set[int] = set()
    for _ in range(data.draw(st.integers(1, 3))):
        w = data.draw(random_weighing(coins, scales))
        options = sorted(feasible_outcomes(state, w))
        outcome = data.draw(st.sampled_from(options))
        state = apply_outcome(state, w, outcome)
        for j, load in enumerate(w):
            ever_weighed |= load.left | load.right
            if outcome[j] == "=":
                must_be_real |= load.left | load.right
    classification = classify(state)
    for coin in ever_weighed:
        assert classification[coin] != UNKNOWN
    for coin in must_be_real:
        assert classification[coin] == REAL
