"""Exhaustive strategy validation and the strategy file format.

Correctness is checked by walking every hypothesis through the tree: the
guarantee is universal, so 2N walks settle it. Static strategies are
checked through outcome signatures instead, and a small-instance
enumerator measures what static strategies can do at all.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path

from . import capacity
from .core import (
    BALANCED,
    FIND_AND_LABEL,
    HEAVY,
    JUST_FIND,
    LEFT_HEAVIER,
    LEFT_LIGHTER,
    LIGHT,
    OUTCOME_SYMBOLS,
    SIGNS,
    UNLIMITED,
    Hypothesis,
    IllegalWeighing,
    KnowledgeState,
    ParallelWeighing,
    PuzzleConfig,
    PuzzleError,
    apply_outcome,
    feasible_outcomes,
    induced_outcome,
    validate_weighing,
    weighing,
)
from .tree import Answer, Node, Weigh, coins_on_pans, depth as tree_depth


class InstanceTooLarge(PuzzleError):
    """The static-strategy enumeration guard was exceeded."""


# A static strategy: every weighing fixed before any outcome is seen.
StaticStrategy = tuple[ParallelWeighing, ...]


@dataclass
class VerificationReport:
    legal: bool
    correct: bool
    depth: int
    failures: list[tuple[Hypothesis, str, str]] = field(default_factory=list)
    lazy_coins: set[int] = field(default_factory=set)
    legality_errors: list[str] = field(default_factory=list)

    def summary(self) -> str:
        lazy = ",".join(str(c) for c in sorted(self.lazy_coins)) or "-"
        return (
            f"legal: {self.legal}  correct: {self.correct}  depth: {self.depth}  "
            f"failures: {len(self.failures)}  lazy coins: {lazy}"
        )


def _legality_errors(node: Node, cfg: PuzzleConfig) -> list[str]:
    errors: list[str] = []
    limit = cfg.coin_limit()

    def walk(n: Node, d: int) -> None:
        if isinstance(n, Answer):
            if not 0 <= n.coin < cfg.coins:
                errors.append(f"answer names coin {n.coin}, not a suspect id")
            if n.label not in (None, LIGHT, HEAVY):
                errors.append(f"answer label {n.label!r} is not light/heavy/null")
            return
        if d + 1 > cfg.budget:
            errors.append(f"weighing at depth {d} exceeds the {cfg.budget}-minute budget")
        try:
            validate_weighing(n.weighing, cfg.scales, limit)
        except IllegalWeighing as exc:
            errors.append(f"depth {d}: {exc} [{exc.code}]")
        for key in sorted(n.children):
            if len(key) != cfg.scales or any(ch not in OUTCOME_SYMBOLS for ch in key):
                errors.append(f"depth {d}: malformed outcome key {key!r}")
            walk(n.children[key], d + 1)

    walk(node, 0)
    return errors


def _lazy_coins(used: set[int], cfg: PuzzleConfig) -> set[int]:
    return {c for c in range(cfg.coins) if c not in used}


def check_legal(t: Node, cfg: PuzzleConfig) -> VerificationReport:
    """Structural legality only: pan sizes, disjointness, id ranges,
    outcome-key shape, depth within budget."""
    errors = _legality_errors(t, cfg)
    return VerificationReport(
        legal=not errors,
        correct=False,
        depth=tree_depth(t),
        lazy_coins=_lazy_coins(coins_on_pans(t), cfg),
        legality_errors=errors,
    )


def check_correct(
    t: Node, cfg: PuzzleConfig, state: KnowledgeState | None = None
) -> VerificationReport:
    """Walk every hypothesis through the tree and demand the right answer
    at each leaf (coin, plus label for find-and-label).

    ``state`` restricts the walk to an already-narrowed hypothesis set,
    for trees built mid-game; the default is the fresh all-unknown state
    with all 2N hypotheses.
    """
    report = check_legal(t, cfg)
    hypotheses = sorted(
        (state or KnowledgeState.fresh(cfg.coins)).hypotheses
    )
    failures: list[tuple[Hypothesis, str, str]] = []
    for h in hypotheses:
        node = t
        path: list[str] = []
        while isinstance(node, Weigh):
            outcome = induced_outcome(h, node.weighing)
            path.append(outcome)
            child = node.children.get(outcome)
            if child is None:
                failures.append((h, "/".join(path), "missing-child"))
                break
            node = child
        else:
            if node.coin != h.coin:
                failures.append((h, f"answer {node.coin}", "wrong-coin"))
            elif cfg.problem == FIND_AND_LABEL and node.label != h.sign:
                failures.append((h, f"label {node.label}", "wrong-label"))
    report.failures = failures
    report.correct = report.legal and not failures
    return report


def verify_static(ss: StaticStrategy, cfg: PuzzleConfig) -> VerificationReport:
    """Verdict for a fixed weighing sequence via outcome signatures.

    Just-find needs signature-equal hypotheses to share a coin;
    find-and-label needs all signatures pairwise distinct.
    """
    errors: list[str] = []
    if len(ss) != cfg.budget:
        errors.append(f"{len(ss)} weighings for a {cfg.budget}-minute budget")
    limit = cfg.coin_limit()
    for i, w in enumerate(ss):
        try:
            validate_weighing(w, cfg.scales, limit)
        except IllegalWeighing as exc:
            errors.append(f"minute {i}: {exc} [{exc.code}]")
    failures: list[tuple[Hypothesis, str, str]] = []
    signatures: dict[tuple[str, ...], Hypothesis] = {}
    for coin in range(cfg.coins):
        for sign in SIGNS:
            h = Hypothesis(coin, sign)
            sig = tuple(induced_outcome(h, w) for w in ss)
            first = signatures.setdefault(sig, h)
            if first is h:
                continue
            if cfg.problem == FIND_AND_LABEL or first.coin != h.coin:
                failures.append((h, ",".join(sig), f"signature shared with {tuple(first)}"))
    used: set[int] = set()
    for w in ss:
        for load in w:
            used |= load.left | load.right
    return VerificationReport(
        legal=not errors,
        correct=not errors and not failures,
        depth=len(ss),
        failures=failures,
        lazy_coins=_lazy_coins(used, cfg),
        legality_errors=errors,
    )


def static_to_tree(ss: StaticStrategy, cfg: PuzzleConfig) -> Node:
    """Unroll a static strategy into an adaptive tree (feasible branches
    only). Ambiguous leaves pick the smallest surviving coin, so the tree
    verifier reaches the same verdict as verify_static."""

    def unroll(state: KnowledgeState, i: int) -> Node:
        if i == len(ss):
            coins = state.suspect_coins()
            signs = sorted({h.sign for h in state.hypotheses if h.coin == coins[0]})
            label = signs[0] if len(signs) == 1 else None
            return Answer(coins[0], label)
        children = {
            o: unroll(apply_outcome(state, ss[i], o), i + 1)
            for o in sorted(feasible_outcomes(state, ss[i]))
        }
        return Weigh(ss[i], children)

    return unroll(KnowledgeState.fresh(cfg.coins), 0)


# ---------------------------------------------------------------------------
# Static-strategy enumeration (small instances).
#
# Coins are interchangeable until a weighing separates them, so strategies
# are enumerated on cells: groups of coins with an identical pan-role
# history. This quotients away coin relabeling entirely.

_LAZY_GUARD = 81


def _compositions(total: int, parts: int, cap: int):
    """Splits of ``total`` into ``parts`` ordered parts, each at most ``cap``."""
    if parts == 1:
        if total <= cap:
            yield (total,)
        return
    for head in range(min(total, cap) + 1):
        for rest in _compositions(total - head, parts - 1, cap):
            yield (head,) + rest


@dataclass(frozen=True)
class _Cell:
    count: int
    light_sig: tuple[str, ...]
    heavy_sig: tuple[str, ...]
    ever_weighed: bool


def _minute_splits(cells: list[_Cell], scales: int, part_cap: int):
    """All ways to send cell members to pans this minute (pan sizes equal).

    ``part_cap`` bounds every split part: a group larger than the number
    of distinguishable futures can never be told apart later, so splits
    containing one cannot yield a correct strategy and are not generated.
    """
    roles = 1 + 2 * scales  # off, then (left, right) per scale
    per_cell = [list(_compositions(cell.count, roles, part_cap)) for cell in cells]
    for combo in product(*per_cell):
        for j in range(scales):
            left = sum(c[1 + 2 * j] for c in combo)
            right = sum(c[2 + 2 * j] for c in combo)
            if left != right:
                break
        else:
            yield combo


def _refine(cells: list[_Cell], combo, scales: int) -> list[_Cell]:
    out = []
    for cell, split in zip(cells, combo):
        for role, count in enumerate(split):
            if count == 0:
                continue
            if role == 0:
                light = heavy = BALANCED * scales
                weighed = cell.ever_weighed
            else:
                j, side = divmod(role - 1, 2)
                sym = LEFT_LIGHTER if side == 0 else LEFT_HEAVIER
                mirror = LEFT_HEAVIER if side == 0 else LEFT_LIGHTER
                prefix, suffix = BALANCED * j, BALANCED * (scales - j - 1)
                light = prefix + sym + suffix
                heavy = prefix + mirror + suffix
                weighed = True
            out.append(
                _Cell(
                    count,
                    cell.light_sig + (light,),
                    cell.heavy_sig + (heavy,),
                    weighed,
                )
            )
    return out


def _static_verdict(cells: list[_Cell], problem: str) -> tuple[bool, bool]:
    """(correct, has_lazy_coin) for one fully enumerated static strategy."""
    seen: dict[tuple[str, ...], int] = {}
    for idx, cell in enumerate(cells):
        if cell.count != 1:
            return False, False
        for sig in (cell.light_sig, cell.heavy_sig):
            owner = seen.get(sig)
            if owner is None:
                seen[sig] = idx
            elif problem == FIND_AND_LABEL or owner != idx:
                return False, False
    has_lazy = any(not cell.ever_weighed for cell in cells)
    return True, has_lazy


def lazy_coin_search(
    scales: int, minutes: int, problem: str = JUST_FIND
) -> tuple[int, bool]:
    """Exhaust static strategies on small instances.

    Returns the largest N some correct static strategy handles and whether
    every maximal correct static strategy leaves at least one coin off the
    scales for good.
    """
    if (2 * scales + 1) ** minutes > _LAZY_GUARD:
        raise InstanceTooLarge(
            f"(2k+1)^n = {(2 * scales + 1) ** minutes} exceeds the "
            f"enumeration guard {_LAZY_GUARD}"
        )
    ceiling = capacity.variant_capacity(scales, minutes, problem, 0)

    def strategies(cells: list[_Cell], minutes_left: int):
        if minutes_left == 0:
            yield cells
            return
        cap = (2 * scales + 1) ** (minutes_left - 1)
        for combo in _minute_splits(cells, scales, cap):
            yield from strategies(_refine(cells, combo, scales), minutes_left - 1)

    # adaptive capacity bounds static capacity, so scan downward and stop
    # at the first N some correct static strategy handles
    for n in range(ceiling, 0, -1):
        found = False
        all_lazy = True
        for cells in strategies([_Cell(n, (), (), False)], minutes):
            correct, has_lazy = _static_verdict(cells, problem)
            if correct:
                found = True
                all_lazy = all_lazy and has_lazy
        if found:
            return n, all_lazy
    return 0, True


# ---------------------------------------------------------------------------
# Strategy file format (owned here; produced by `build`, consumed by
# `verify`). JSON with a config header and either an adaptive "root" or a
# static "weighings" list.


@dataclass
class StrategyDocument:
    config: PuzzleConfig
    root: Node | None = None
    weighings: StaticStrategy | None = None


def _load_to_json(load) -> dict:
    return {"left": sorted(load.left), "right": sorted(load.right)}


def _node_to_json(node: Node) -> dict:
    if isinstance(node, Answer):
        return {"type": "answer", "coin": node.coin, "label": node.label}
    return {
        "type": "weigh",
        "scales": [_load_to_json(load) for load in node.weighing],
        "children": {key: _node_to_json(child) for key, child in sorted(node.children.items())},
    }


def _node_from_json(data: dict) -> Node:
    kind = data.get("type")
    if kind == "answer":
        label = data.get("label")
        if label is not None and label not in (LIGHT, HEAVY):
            raise ValueError(f"bad answer label {label!r}")
        return Answer(int(data["coin"]), label)
    if kind == "weigh":
        w = weighing((load["left"], load["right"]) for load in data["scales"])
        children = {key: _node_from_json(child) for key, child in data["children"].items()}
        return Weigh(w, children)
    raise ValueError(f"unknown node type {kind!r}")


def _supply_to_json(supply) -> int | str:
    if supply == UNLIMITED:
        return UNLIMITED
    return "none" if supply == 0 else int(supply)


def _supply_from_json(value) -> int | str:
    if value in (UNLIMITED,):
        return UNLIMITED
    if value in ("none", None, 0):
        return 0
    return int(value)


def config_to_json(cfg: PuzzleConfig) -> dict:
    return {
        "coins": cfg.coins,
        "scales": cfg.scales,
        "minutes": cfg.budget,
        "problem": cfg.problem,
        "supply": _supply_to_json(cfg.supply),
    }


def config_from_json(data: dict) -> PuzzleConfig:
    return PuzzleConfig(
        coins=int(data["coins"]),
        scales=int(data["scales"]),
        problem=data.get("problem", JUST_FIND),
        supply=_supply_from_json(data.get("supply", "none")),
        budget=int(data.get("minutes", 0)),
    )


def serialize_strategy(doc: StrategyDocument) -> str:
    body: dict = {"config": config_to_json(doc.config)}
    if doc.root is not None:
        body["root"] = _node_to_json(doc.root)
    if doc.weighings is not None:
        body["weighings"] = [
            [_load_to_json(load) for load in w] for w in doc.weighings
        ]
    return json.dumps(body, indent=2, sort_keys=True) + "\n"


def parse_strategy(text: str) -> StrategyDocument:
    data = json.loads(text)
    cfg = config_from_json(data["config"])
    root = _node_from_json(data["root"]) if "root" in data else None
    weighings = None
    if "weighings" in data:
        weighings = tuple(
            weighing((load["left"], load["right"]) for load in minute)
            for minute in data["weighings"]
        )
    if root is None and weighings is None:
        raise ValueError("strategy file holds neither a tree nor a static strategy")
    return StrategyDocument(cfg, root, weighings)


def save_strategy(path: str | Path, doc: StrategyDocument) -> None:
    Path(path).write_text(serialize_strategy(doc))


def load_strategy(path: str | Path) -> StrategyDocument:
    return parse_strategy(Path(path).read_text())
