"""Marriage instances: deferred acceptance and the size-3 fallback."""

from __future__ import annotations

from collections import deque

from .core import Instance, InstanceError, Matching, ProblemKind, Side, WinningSet
from .roommates import solve_roommates_general


def _require_marriage(instance: Instance) -> None:
    if instance.kind is not ProblemKind.MARRIAGE:
        raise InstanceError(f"expected a marriage instance, got {instance.kind.value}")


def gale_shapley(instance: Instance) -> Matching:
    """Left-proposing deferred acceptance; returns the left-optimal stable matching."""
    _require_marriage(instance)
    if not instance.is_strict:
        raise InstanceError("deferred acceptance needs strict preferences")
    lists = {a: [next(iter(t)) for t in instance.order(a).tiers] for a in instance.agents}
    left = [a for a in instance.agents if instance.sides[a] is Side.LEFT]
    next_choice = {m: 0 for m in left}
    held: dict[str, str] = {}  # right agent -> left agent
    free = deque(left)
    while free:
        m = free.popleft()
        if next_choice[m] >= len(lists[m]):
            continue
        w = lists[m][next_choice[m]]
        next_choice[m] += 1
        rival = held.get(w)
        if rival is None:
            held[w] = m
        elif instance.order(w).rank(m) < instance.order(w).rank(rival):
            held[w] = m
            free.append(rival)
        else:
            free.append(m)
    return Matching(frozenset((m, w) for w, m in held.items()))


def blocking_pairs(instance: Instance, matching: Matching) -> list[tuple[str, str]]:
    """Acceptable pairs who both strictly prefer each other to their partners."""
    pairs = []
    for m, w in instance.edges:
        om, ow = instance.order(m), instance.order(w)
        if (om.rank(w) < om.rank(matching.partner(m))
                and ow.rank(m) < ow.rank(matching.partner(w))):
            pairs.append((m, w))
    return pairs


def solve_marriage(instance: Instance) -> WinningSet:
    """A stable matching when unweighted and strict, else at most three matchings."""
    _require_marriage(instance)
    if instance.is_strict and instance.is_unweighted:
        return WinningSet((gale_shapley(instance),))
    return solve_roommates_general(instance)
