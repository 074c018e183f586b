"""Command-line interface.

Subcommands: capacity, solve, build, verify, play, serve. Exit codes:
0 success, 1 negative result (incorrect strategy, unsolvable instance,
lost game), 2 usage error, 3 search guard exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import IO

from . import capacity, solve, strategy, verify
from .core import (
    FIND_AND_LABEL,
    HEAVY,
    JUST_FIND,
    LIGHT,
    UNLIMITED,
    IllegalWeighing,
    KnowledgeState,
    PuzzleConfig,
    PuzzleError,
    apply_outcome,
    classification_counts,
    validate_weighing,
    weighing,
)
from .service import GameSession, parse_supply

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


def _supply_arg(value: str) -> int | str:
    try:
        return parse_supply(value)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(
            f"supply must be 'none', 'unlimited' or a count, got {value!r}"
        )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parweigh",
        description="Counterfeit-coin strategies on parallel balance scales.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, coins=False, minutes=False):
        if coins:
            p.add_argument("--coins", type=int, required=True)
        p.add_argument("--scales", type=int, required=True)
        if minutes:
            p.add_argument("--minutes", type=int, required=True)
        p.add_argument(
            "--problem", choices=[JUST_FIND, FIND_AND_LABEL], default=JUST_FIND
        )
        p.add_argument("--supply", type=_supply_arg, default=0)

    p = sub.add_parser("capacity", help="print the exact capacity for a variant")
    common(p, minutes=True)
    p.add_argument(
        "--potential",
        choices=["known"],
        help="all suspects already have known potential",
    )

    p = sub.add_parser("solve", help="print the minimal minutes for an instance")
    common(p, coins=True)
    p.add_argument("--max-minutes", type=int, default=8)

    p = sub.add_parser("build", help="build and self-verify a strategy file")
    common(p, coins=True, minutes=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="verify a strategy file")
    p.add_argument("--strategy", required=True)
    p.add_argument(
        "--static", action="store_true", help="require a static weighing list"
    )

    p = sub.add_parser("play", help="play against the worst-case adversary")
    common(p, coins=True)
    p.add_argument("--adversary", choices=[solve.EXACT, solve.GREEDY])
    p.add_argument("--budget", type=int)

    p = sub.add_parser("serve", help="run the HTTP play service")
    p.add_argument("--port", type=int, required=True)
    p.add_argument("--bind", default="127.0.0.1")

    return parser


def _cmd_capacity(args) -> int:
    if args.potential == "known":
        print(capacity.known_potential_capacity(args.scales, args.minutes))
        return EXIT_OK
    try:
        value = capacity.variant_capacity(
            args.scales, args.minutes, args.problem, args.supply
        )
    except capacity.NeedsSolver:
        value = solve.max_coins(args.scales, args.minutes, args.problem, args.supply)
    print(value)
    return EXIT_OK


def _cmd_solve(args) -> int:
    cfg = PuzzleConfig(args.coins, args.scales, args.problem, args.supply)
    try:
        minutes = capacity.min_minutes(cfg)
    except capacity.NeedsSolver:
        minutes = None
        for m in range(args.max_minutes + 1):
            if (2 * args.scales + 1) ** m > solve.MAX_OUTCOME_SPACE:
                raise solve.InstanceTooLarge(
                    f"finite-supply search for {args.coins} coins exceeds the guard"
                )
            state = solve.CountState(args.coins, 0, 0, int(args.supply))
            if solve.solvable(state, m, args.scales, args.problem):
                minutes = m
                break
    if minutes is None:
        print("unsolvable")
        return EXIT_NEGATIVE
    print(minutes)
    return EXIT_OK


def _cmd_build(args) -> int:
    cfg = PuzzleConfig(
        args.coins, args.scales, args.problem, args.supply, args.minutes
    )
    root = strategy.build_tree(cfg)
    report = verify.check_correct(root, cfg)
    verify.save_strategy(args.out, verify.StrategyDocument(cfg, root=root))
    print(f"verified: {'true' if report.correct else 'false'}")
    return EXIT_OK if report.correct else EXIT_NEGATIVE


def _cmd_verify(args) -> int:
    doc = verify.load_strategy(args.strategy)
    if args.static and doc.weighings is None:
        print("error: file holds no static strategy", file=sys.stderr)
        return EXIT_USAGE
    if doc.weighings is not None and (args.static or doc.root is None):
        report = verify.verify_static(doc.weighings, doc.config)
    else:
        report = verify.check_correct(doc.root, doc.config)
    print(report.summary())
    for h, where, reason in report.failures[:10]:
        print(f"  {tuple(h)} at {where}: {reason}")
    return EXIT_OK if report.correct else EXIT_NEGATIVE


def _scale_label(index: int) -> str:
    return chr(ord("A") + index)


def _format_weighing(w) -> str:
    parts = []
    for j, load in enumerate(w):
        if not load.left and not load.right:
            continue
        left = " ".join(str(c) for c in sorted(load.left))
        right = " ".join(str(c) for c in sorted(load.right))
        parts.append(f"{_scale_label(j)}: {left} v {right}")
    return "; ".join(parts) if parts else "(all scales idle)"


def _parse_weigh_line(text: str, scales: int):
    """Parse 'A: 1 2 v 3 4; B: 5 v 6' into a ParallelWeighing."""
    loads: list[tuple[list[int], list[int]]] = [([], []) for _ in range(scales)]
    body = text.strip()
    if body:
        for part in body.split(";"):
            part = part.strip()
            if not part:
                continue
            if ":" not in part:
                raise ValueError(f"missing scale label in {part!r}")
            label, pans = part.split(":", 1)
            index = ord(label.strip().upper()) - ord("A")
            if not 0 <= index < scales:
                raise ValueError(f"no scale named {label.strip()!r}")
            halves = pans.lower().split(" v ")
            if len(halves) != 2:
                raise ValueError(f"expected 'ids v ids' in {part!r}")
            loads[index] = (
                [int(tok) for tok in halves[0].split()],
                [int(tok) for tok in halves[1].split()],
            )
    return weighing(loads)


def _state_lines(state: KnowledgeState) -> list[str]:
    groups: dict[str, list[int]] = {}
    for coin, kind in enumerate(state.classification()):
        groups.setdefault(kind, []).append(coin)
    return [
        f"  {kind}: {' '.join(str(c) for c in coins)}"
        for kind, coins in sorted(groups.items())
    ]


def play_loop(
    cfg: PuzzleConfig,
    adversary: str | None,
    stdin: IO[str],
    stdout: IO[str],
) -> int:
    session = GameSession.create(cfg, adversary)

    def say(text: str) -> None:
        print(text, file=stdout)

    optimal = session.optimal_minutes
    say(
        f"{cfg.coins} coins, {cfg.scales} scale(s), {cfg.problem}, "
        f"budget {cfg.budget} minute(s)"
        + (f" (optimal {optimal})" if optimal is not None else "")
    )
    say(f"adversary: {session.adversary}")
    say("commands: weigh A: 1 2 v 3 4; B: 5 v 6 | answer COIN [light|heavy] | hint | state | quit")
    while session.status == "active":
        print("> ", end="", file=stdout, flush=True)
        line = stdin.readline()
        if not line:
            say("goodbye")
            return EXIT_NEGATIVE
        line = line.strip()
        if not line:
            continue
        command, _, rest = line.partition(" ")
        command = command.lower()
        try:
            if command == "quit":
                say("goodbye")
                return EXIT_NEGATIVE
            elif command == "state":
                say(f"minute {session.minutes_used}/{cfg.budget}")
                for text in _state_lines(session.state):
                    say(text)
            elif command == "hint":
                hint = session.hint()
                if hint["weighing"] is None:
                    answer = hint["answer"]
                    label = f" {answer['label']}" if answer["label"] else ""
                    say(f"hint: answer {answer['coin']}{label}")
                else:
                    w = weighing((l["left"], l["right"]) for l in hint["weighing"])
                    say(f"hint: weigh {_format_weighing(w)}")
            elif command == "weigh":
                w = _parse_weigh_line(rest, cfg.scales)
                result = session.weigh(w)
                say(f"outcome: {result['outcome']}")
                counts = result["classification_counts"]
                say(
                    f"suspects: {result['suspects_remaining']} "
                    f"({counts['unknown']} unknown, "
                    f"{counts['potentially-light']} light, "
                    f"{counts['potentially-heavy']} heavy)"
                )
                if session.status == "lost":
                    say("out of minutes without a forced answer - you lose")
                    return EXIT_NEGATIVE
            elif command == "answer":
                tokens = rest.split()
                if not tokens:
                    raise ValueError("answer needs a coin id")
                coin = int(tokens[0])
                label = tokens[1] if len(tokens) > 1 else None
                result = session.answer(coin, label)
                if result["verdict"] == "won":
                    say(f"correct - you win in {session.minutes_used} minute(s)")
                    return EXIT_OK
                counter = result["counterexample"]
                say(
                    f"wrong - coin {counter['coin']} could still be {counter['sign']}"
                )
                return EXIT_NEGATIVE
            else:
                say(f"unknown command {command!r}")
        except (ValueError, IllegalWeighing) as exc:
            say(f"error: {exc}")
        except Exception as exc:  # ApiError from the session engine
            message = getattr(exc, "message", None)
            if message is None:
                raise
            say(f"error: {message}")
    return EXIT_NEGATIVE


def _cmd_play(args) -> int:
    budget = args.budget
    if budget is None:
        probe = PuzzleConfig(args.coins, args.scales, args.problem, args.supply)
        try:
            budget = capacity.min_minutes(probe)
        except capacity.NeedsSolver:
            budget = None
        if budget is None:
            print(
                "error: no closed-form minute count; pass --budget",
                file=sys.stderr,
            )
            return EXIT_USAGE
    cfg = PuzzleConfig(args.coins, args.scales, args.problem, args.supply, budget)
    return play_loop(cfg, args.adversary, sys.stdin, sys.stdout)


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.bind, port=args.port, log_level="info")
    return EXIT_OK


_COMMANDS = {
    "capacity": _cmd_capacity,
    "solve": _cmd_solve,
    "build": _cmd_build,
    "verify": _cmd_verify,
    "play": _cmd_play,
    "serve": _cmd_serve,
}


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (verify.InstanceTooLarge, solve.InstanceTooLarge, capacity.NeedsSolver) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except PuzzleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
