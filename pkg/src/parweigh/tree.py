"""Adaptive strategy trees.

Internal nodes carry one parallel weighing and one child per outcome
vector; leaves name the fake coin and optionally its weight direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .core import ParallelWeighing


@dataclass
class Answer:
    """Leaf: accuse ``coin``; ``label`` is "light"/"heavy" or None."""

    coin: int
    label: str | None = None


@dataclass
class Weigh:
    """Internal node: perform ``weighing``, then follow ``children[outcome]``."""

    weighing: ParallelWeighing
    children: dict[str, "Node"] = field(default_factory=dict)


Node = Weigh | Answer


def depth(node: Node) -> int:
    """Number of weighings on the longest root-to-leaf path."""
    if isinstance(node, Answer):
        return 0
    if not node.children:
        return 1
    return 1 + max(depth(child) for child in node.children.values())


def iter_nodes(node: Node) -> Iterator[Node]:
    """Every node of the tree, preorder, children in outcome order."""
    yield node
    if isinstance(node, Weigh):
        for key in sorted(node.children):
            yield from iter_nodes(node.children[key])


def coins_on_pans(node: Node) -> set[int]:
    """All coin ids that appear on any pan anywhere in the tree."""
    used: set[int] = set()
    for n in iter_nodes(node):
        if isinstance(n, Weigh):
            for load in n.weighing:
                used |= load.left | load.right
    return used
