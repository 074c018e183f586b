from itertools import combinations

import pytest

from parweigh import verify
from parweigh.core import (
    FIND_AND_LABEL,
    HEAVY,
    JUST_FIND,
    LIGHT,
    UNLIMITED,
    KnowledgeState,
    PuzzleConfig,
    weighing,
)
from parweigh.strategy import build_general, build_unlimited
from parweigh.tree import Answer, Weigh
from parweigh.verify import (
    StrategyDocument,
    check_correct,
    check_legal,
    lazy_coin_search,
    parse_strategy,
    serialize_strategy,
    static_to_tree,
    verify_static,
)


def four_coin_tree():
    """The adaptive 4-coin strategy where every coin may reach the scales:
    weigh 0 v 1; on a tilt weigh {0,1} v {2,3}, on balance weigh 2 v 0."""
    second_tilt = weighing([({0, 1}, {2, 3})])
    return Weigh(
        weighing([({0}, {1})]),
        {
            "<": Weigh(second_tilt, {"<": Answer(0, LIGHT), ">": Answer(1, HEAVY)}),
            ">": Weigh(second_tilt, {"<": Answer(1, LIGHT), ">": Answer(0, HEAVY)}),
            "=": Weigh(
                weighing([({2}, {0})]),
                {
                    "<": Answer(2, LIGHT),
                    ">": Answer(2, HEAVY),
                    "=": Answer(3, None),
                },
            ),
        },
    )


def test_four_coin_dynamic_example():
    cfg = PuzzleConfig(4, 1, JUST_FIND, 0, 2)
    report = check_legal(four_coin_tree(), cfg)
    assert report.legal and report.depth == 2
    report = check_correct(four_coin_tree(), cfg)
    assert report.correct
    # adaptively, no coin needs to stay off the scales
    assert report.lazy_coins == set()


def test_check_legal_pan_mismatch():
    tree = Weigh(weighing([({0, 1}, {2})]), {"<": Answer(0, None)})
    report = check_legal(tree, PuzzleConfig(3, 1, budget=1))
    assert not report.legal
    assert any("pan-size-mismatch" in e for e in report.legality_errors)


def test_check_legal_duplicate_across_scales():
    tree = Weigh(
        weighing([({0}, {1}), ({0}, {2})]), {"<=": Answer(0, None)}
    )
    report = check_legal(tree, PuzzleConfig(3, 2, budget=1))
    assert not report.legal
    assert any("duplicate-coin" in e for e in report.legality_errors)


def test_check_legal_depth_and_keys():
    tree = Weigh(weighing([({0}, {1})]), {"<>": Answer(0, None)})
    report = check_legal(tree, PuzzleConfig(2, 1, budget=0))
    assert not report.legal  # over budget and malformed key


def test_check_correct_flags_unconditional_answer():
    tree = Answer(0, None)
    report = check_correct(tree, PuzzleConfig(2, 1, budget=1))
    assert not report.correct
    assert any(h.coin == 1 for h, _, _ in report.failures)


def test_check_correct_reports_missing_child():
    tree = Weigh(weighing([({0}, {1})]), {"<": Answer(0, None)})
    report = check_correct(tree, PuzzleConfig(2, 1, budget=1))
    failures = {reason for _, _, reason in report.failures}
    assert "missing-child" in failures


def test_find_and_label_needs_labels():
    tree = build_general(12, 1, 3, FIND_AND_LABEL)
    cfg = PuzzleConfig(12, 1, FIND_AND_LABEL, 0, 3)
    assert check_correct(tree, cfg).correct
    # the same tree stripped of labels fails find-and-label

    def strip(node):
        if isinstance(node, Answer):
            return Answer(node.coin, None)
        return Weigh(node.weighing, {k: strip(v) for k, v in node.children.items()})

    assert not check_correct(strip(tree), cfg).correct


def test_verify_static_adaptive_pair():
    cfg = PuzzleConfig(4, 1, JUST_FIND, 0, 2)
    ss = (weighing([({0}, {1})]), weighing([({0}, {2})]))
    report = verify_static(ss, cfg)
    assert report.correct
    assert report.lazy_coins == {3}

    bad = (weighing([({0}, {1})]), weighing([({2}, {3})]))
    report = verify_static(bad, cfg)
    assert not report.correct

    fl_cfg = PuzzleConfig(4, 1, FIND_AND_LABEL, 0, 2)
    report = verify_static(ss, fl_cfg)
    assert not report.correct  # (3, light) and (3, heavy) share a signature


def test_static_and_unrolled_tree_agree():
    """Both verifiers reach the same verdict on every 2-minute static
    strategy over four coins on one scale."""
    coins = list(range(4))
    single_weighings = []
    for size in (1, 2):
        for left in combinations(coins, size):
            rest = [c for c in coins if c not in left]
            for right in combinations(rest, size):
                if left < right:
                    single_weighings.append(weighing([(left, right)]))
    assert len(single_weighings) == 9  # six 1v1 pairs, three 2v2 partitions
    for problem in (JUST_FIND, FIND_AND_LABEL):
        cfg = PuzzleConfig(4, 1, problem, 0, 2)
        for w1 in single_weighings:
            for w2 in single_weighings:
                ss = (w1, w2)
                static_report = verify_static(ss, cfg)
                tree_report = check_correct(static_to_tree(ss, cfg), cfg)
                assert static_report.correct == tree_report.correct, (w1, w2, problem)


def test_lazy_coin_extends_find_and_label_strategies():
    """Any correct find-and-label static on N coins stays correct for
    just-find on N+1 coins with the extra coin never weighed."""
    coins = list(range(3))
    single = []
    for size in (1,):
        for left in combinations(coins, size):
            rest = [c for c in coins if c not in left]
            for right in combinations(rest, size):
                if left < right:
                    single.append(weighing([(left, right)]))
    fl_cfg = PuzzleConfig(3, 1, FIND_AND_LABEL, 0, 2)
    jf_cfg = PuzzleConfig(4, 1, JUST_FIND, 0, 2)
    found = 0
    for w1 in single:
        for w2 in single:
            if verify_static((w1, w2), fl_cfg).correct:
                found += 1
                report = verify_static((w1, w2), jf_cfg)
                assert report.correct
                assert 3 in report.lazy_coins
    assert found > 0


def test_lazy_coin_search_reference_points():
    assert lazy_coin_search(1, 2, JUST_FIND) == (4, True)
    max_fl, _ = lazy_coin_search(1, 2, FIND_AND_LABEL)
    assert max_fl == 3
    # one weighing: three coins statically is already too many
    assert lazy_coin_search(1, 1, JUST_FIND)[0] == 1


def test_lazy_coin_search_three_minutes():
    # the classic instance: 13 coins statically, every maximal strategy
    # leaves a coin off the scales, and find-and-label fits one fewer
    assert lazy_coin_search(1, 3, JUST_FIND) == (13, True)
    assert lazy_coin_search(1, 3, FIND_AND_LABEL)[0] == 12


def test_lazy_coin_search_guard():
    with pytest.raises(verify.InstanceTooLarge):
        lazy_coin_search(2, 3, JUST_FIND)


def test_serialization_round_trip():
    corpus = [
        (PuzzleConfig(4, 1, JUST_FIND, 0, 2), four_coin_tree()),
        (PuzzleConfig(11, 2, JUST_FIND, 0, 2), build_general(11, 2, 2)),
        (
            PuzzleConfig(12, 1, FIND_AND_LABEL, 0, 3),
            build_general(12, 1, 3, FIND_AND_LABEL),
        ),
        (
            PuzzleConfig(13, 2, JUST_FIND, UNLIMITED, 2),
            build_unlimited(13, 2, 2),
        ),
    ]
    for cfg, tree in corpus:
        doc = StrategyDocument(cfg, root=tree)
        text = serialize_strategy(doc)
        parsed = parse_strategy(text)
        assert parsed.config == cfg
        assert parsed.root == tree
        # serialization is byte-stable
        assert serialize_strategy(parsed) == text


def test_static_serialization_round_trip():
    cfg = PuzzleConfig(4, 1, JUST_FIND, 0, 2)
    ss = (weighing([({0}, {1})]), weighing([({0}, {2})]))
    doc = StrategyDocument(cfg, weighings=ss)
    parsed = parse_strategy(serialize_strategy(doc))
    assert parsed.weighings == ss
    assert parsed.root is None


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_strategy('{"config": {"coins": 3, "scales": 1}}')
    with pytest.raises(ValueError):
        parse_strategy(
            '{"config": {"coins": 3, "scales": 1}, "root": {"type": "mystery"}}'
        )
