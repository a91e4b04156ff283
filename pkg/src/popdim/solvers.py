"""Dispatch an instance to the matching solver for its problem kind."""

from __future__ import annotations

from .core import Instance, ProblemKind, WinningSet
from .house import solve_house
from .marriage import solve_marriage
from .roommates import solve_roommates


def solve(instance: Instance) -> WinningSet:
    if instance.kind is ProblemKind.HOUSE:
        return solve_house(instance)[0]
    if instance.kind is ProblemKind.MARRIAGE:
        return solve_marriage(instance)
    return solve_roommates(instance)
