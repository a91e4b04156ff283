"""Small instance builders shared by the tests."""

from __future__ import annotations

from popdim.core import Instance, PreferenceOrder, ProblemKind, Side


def order(*entries):
    return PreferenceOrder.from_entries(entries)


def house(prefs: dict, items, weights=None) -> Instance:
    return Instance(ProblemKind.HOUSE, tuple(prefs), {a: order(*p) for a, p in prefs.items()},
                    weights or {}, items=tuple(items))


def roommates(prefs: dict, weights=None) -> Instance:
    return Instance(ProblemKind.ROOMMATES, tuple(prefs),
                    {a: order(*p) for a, p in prefs.items()}, weights or {})


def marriage(left: dict, right: dict, weights=None) -> Instance:
    prefs = {a: order(*p) for a, p in {**left, **right}.items()}
    sides = {a: Side.LEFT for a in left}
    sides.update({a: Side.RIGHT for a in right})
    return Instance(ProblemKind.MARRIAGE, tuple(left) + tuple(right), prefs, weights or {},
                    sides=sides)
