"""Closed-form capacities and minimum-minute computations.

``k`` scales used in parallel give 2k+1 distinguishable results per minute
(either of two tilts on one of the k scales, or everything balanced), and
every capacity below is a closed form in (2k+1)^n. Exact integers
throughout; Python ints never overflow, so no range guard is needed.
"""

from __future__ import annotations

from .core import JUST_FIND, PROBLEMS, UNLIMITED, PuzzleConfig, PuzzleError


class NeedsSolver(PuzzleError):
    """No closed form exists for this variant; use the search-based solver."""


def _check_kn(k: int, n: int, min_n: int = 0) -> None:
    if k < 1:
        raise ValueError("need at least one scale")
    if n < min_n:
        raise ValueError(f"need at least {min_n} minute(s)")


def known_potential_capacity(k: int, n: int) -> int:
    """Max coins resolvable in n minutes when every suspect's potential is known.

    Each minute splits the suspects into 2k+1 groups, so the count is
    (2k+1)^n. With known potential, just-find and find-and-label coincide.
    """
    _check_kn(k, n)
    return (2 * k + 1) ** n


def unlimited_supply_capacity(k: int, n: int) -> int:
    """Max coins resolvable in n minutes with an unlimited pool of real coins.

    Closed form ((2k+1)^n + 1) / 2, cross-checked against the recursion
    u(n) = k*(2k+1)^(n-1) + u(n-1), u(1) = k+1 on every call.
    """
    _check_kn(k, n, min_n=1)
    closed = ((2 * k + 1) ** n + 1) // 2
    by_recursion = k + 1
    for i in range(2, n + 1):
        by_recursion += k * (2 * k + 1) ** (i - 1)
    assert by_recursion == closed, (k, n, by_recursion, closed)
    return closed


def find_label_unlimited_capacity(k: int, n: int) -> int:
    """Find-and-label analogue of unlimited_supply_capacity.

    Same recursion, starting point k instead of k+1; closed form
    ((2k+1)^n - 1) / 2, i.e. one less than the just-find count.
    """
    _check_kn(k, n, min_n=1)
    return ((2 * k + 1) ** n - 1) // 2


def just_find_capacity(k: int, n: int) -> int:
    """Max coins for just finding the fake with no extra real coins.

    n = 0 resolves exactly one coin (a lone suspect is self-evidently the
    fake); otherwise ((2k+1)^n + 1)/2 - k. Note the count says nothing
    about N = 2, which is unsolvable outright.
    """
    _check_kn(k, n)
    if n == 0:
        return 1
    return unlimited_supply_capacity(k, n) - k


def find_label_capacity(k: int, n: int) -> int:
    """Max coins for find-and-label with no extra real coins: one less
    than the just-find capacity."""
    _check_kn(k, n)
    if n == 0:
        return 0
    return unlimited_supply_capacity(k, n) - k - 1


def variant_capacity(
    k: int,
    n: int,
    problem: str = JUST_FIND,
    supply: int | str = 0,
    known_potential: bool = False,
) -> int:
    """Capacity for any variant that has a closed form.

    Raises NeedsSolver for a finite nonzero supply, which only the
    exhaustive solver can price.
    """
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem {problem!r}")
    if known_potential:
        return known_potential_capacity(k, n)
    if supply == UNLIMITED:
        if problem == JUST_FIND:
            return 1 if n == 0 else unlimited_supply_capacity(k, n)
        return 0 if n == 0 else find_label_unlimited_capacity(k, n)
    if supply != 0:
        raise NeedsSolver("no closed form for a finite supply of real coins")
    if problem == JUST_FIND:
        return just_find_capacity(k, n)
    return find_label_capacity(k, n)


def min_minutes(config: PuzzleConfig) -> int | None:
    """Smallest minute budget that resolves the instance, or None if no
    budget ever does.

    Unsolvable cases: N = 2 with no supply (the two suspects can never be
    told apart), and N = 1 under find-and-label with no supply (the lone
    suspect can never face a reference coin). Raises NeedsSolver for
    finite nonzero supply.
    """
    n_coins, k = config.coins, config.scales
    if not config.supply_is_unlimited:
        if config.supply != 0:
            raise NeedsSolver("minimum minutes for finite supply requires the solver")
        if n_coins == 2:
            return None
        if n_coins == 1:
            return 0 if config.problem == JUST_FIND else None
    else:
        if n_coins == 1 and config.problem == JUST_FIND:
            return 0
    minutes = 1
    while variant_capacity(k, minutes, config.problem, config.supply) < n_coins:
        minutes += 1
    return minutes
