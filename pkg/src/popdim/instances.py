"""Named lower-bound gadgets, house-to-marriage reductions and random instances."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .core import Instance, InstanceError, PreferenceOrder, ProblemKind, Side

GADGETS = ("house_lower", "roommates_lower", "roommates_lower_doubled")


def _strict(*names: str) -> PreferenceOrder:
    return PreferenceOrder.from_entries(names)


def _three_cycle(a: str, b: str, c: str) -> dict[str, PreferenceOrder]:
    # b >_a c, c >_b a, a >_c b
    return {a: _strict(b, c), b: _strict(c, a), c: _strict(a, b)}


def gadget(name: str) -> Instance:
    """Small instances without a popular matching.

    house_lower: three agents who all rank house x above house y.
    roommates_lower: three roommates with cyclic strict preferences.
    roommates_lower_doubled: two disjoint copies of roommates_lower.
    """
    if name == "house_lower":
        prefs = {a: _strict("x", "y") for a in "abc"}
        return Instance(ProblemKind.HOUSE, ("a", "b", "c"), prefs, items=("x", "y"))
    if name == "roommates_lower":
        return Instance(ProblemKind.ROOMMATES, ("a", "b", "c"), _three_cycle("a", "b", "c"))
    if name == "roommates_lower_doubled":
        prefs = {**_three_cycle("a1", "b1", "c1"), **_three_cycle("a2", "b2", "c2")}
        return Instance(ProblemKind.ROOMMATES, ("a1", "b1", "c1", "a2", "b2", "c2"), prefs)
    raise InstanceError(f"unknown gadget {name!r}; choose from {', '.join(GADGETS)}")


def _require_plain_house(instance: Instance) -> None:
    if instance.kind is not ProblemKind.HOUSE:
        raise InstanceError(f"expected a house instance, got {instance.kind.value}")
    if not instance.is_strict:
        raise InstanceError("the reduction expects strict preferences")
    if any(w != 1 for w in instance.weights.values()):
        raise InstanceError("the reduction expects unit weights")


def house_to_weighted_marriage(instance: Instance) -> Instance:
    """Men are the agents (weight 1), women are the houses (weight 0, indifferent)."""
    _require_plain_house(instance)
    prefs = dict(instance.preferences)
    weights = {a: 1 for a in instance.agents}
    for h in instance.items:
        suitors = frozenset(instance.neighbours(h))
        prefs[h] = PreferenceOrder((suitors,) if suitors else ())
        weights[h] = 0
    sides = {a: Side.LEFT for a in instance.agents}
    sides.update({h: Side.RIGHT for h in instance.items})
    return Instance(ProblemKind.MARRIAGE, instance.agents + instance.items, prefs,
                    weights, sides=sides)


def house_to_ties_marriage(instance: Instance) -> Instance:
    """Unweighted marriage with ties, padded with dummies on both sides.

    One dummy house per agent and one dummy agent per house are added.  Agents
    keep their strict order over real houses and then accept every dummy house
    in one tie; dummy agents accept every house in one tie; every house, real
    or dummy, is indifferent among all men that accept it.
    """
    _require_plain_house(instance)
    dummy_men = tuple(f"dummy_agent_{k}" for k in range(1, len(instance.items) + 1))
    dummy_women = tuple(f"dummy_house_{k}" for k in range(1, len(instance.agents) + 1))
    clash = set(dummy_men + dummy_women) & set(instance.entities)
    if clash:
        raise InstanceError(f"dummy names collide with {sorted(clash)}")
    men = instance.agents + dummy_men
    women = instance.items + dummy_women
    prefs: dict[str, PreferenceOrder] = {}
    for a in instance.agents:
        tiers = instance.order(a).tiers
        if dummy_women:
            tiers += (frozenset(dummy_women),)
        prefs[a] = PreferenceOrder(tiers)
    for d in dummy_men:
        prefs[d] = PreferenceOrder((frozenset(women),))
    for w in women:
        suitors = frozenset(m for m in men if w in prefs[m].acceptable)
        prefs[w] = PreferenceOrder((suitors,) if suitors else ())
    sides = {m: Side.LEFT for m in men}
    sides.update({w: Side.RIGHT for w in women})
    return Instance(ProblemKind.MARRIAGE, men + women, prefs, sides=sides)


@dataclass(frozen=True)
class GeneratorConfig:
    """Random instance parameters.

    `agents` counts the agents (house, roommates) or the left side (marriage);
    `items` counts houses (house) or the right side (marriage).  With
    `weight_range` unset every weight is 1.
    """

    kind: ProblemKind
    agents: int
    items: int = 0
    ties: bool = False
    weight_range: Optional[tuple[int, int]] = None
    density: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", ProblemKind(self.kind))
        if self.agents < 0 or self.items < 0:
            raise InstanceError("counts must be non-negative")
        if self.kind is ProblemKind.ROOMMATES and self.items:
            raise InstanceError("roommates instances take no item count")
        if not 0.0 <= self.density <= 1.0:
            raise InstanceError(f"density {self.density} is outside [0, 1]")
        if self.weight_range is not None:
            lo, hi = self.weight_range
            if lo < 0 or hi < lo:
                raise InstanceError(f"bad weight range {self.weight_range}")
        if not 0 <= self.seed < 2 ** 64:
            raise InstanceError("seed must be a 64-bit unsigned integer")


def _tiers(rng: random.Random, partners: list[str], ties: bool) -> PreferenceOrder:
    rng.shuffle(partners)
    tiers: list[list[str]] = []
    for p in partners:
        if tiers and ties and rng.random() < 0.5:
            tiers[-1].append(p)
        else:
            tiers.append([p])
    return PreferenceOrder(tuple(frozenset(t) for t in tiers))


def random_instance(config: GeneratorConfig) -> Instance:
    """Seeded random instance: edges by density, then weights, then orders."""
    rng = random.Random(config.seed)
    kind = config.kind
    if kind is ProblemKind.HOUSE:
        agents = tuple(f"a{i}" for i in range(1, config.agents + 1))
        others = tuple(f"h{j}" for j in range(1, config.items + 1))
    elif kind is ProblemKind.MARRIAGE:
        agents = tuple(f"m{i}" for i in range(1, config.agents + 1))
        others = tuple(f"w{j}" for j in range(1, config.items + 1))
    else:
        agents = tuple(f"v{i}" for i in range(1, config.agents + 1))
        others = ()

    if kind is ProblemKind.ROOMMATES:
        pairs = [(u, v) for i, u in enumerate(agents) for v in agents[i + 1:]]
    else:
        pairs = [(a, h) for a in agents for h in others]
    adj: dict[str, list[str]] = {v: [] for v in agents + others}
    for u, v in pairs:
        if rng.random() < config.density:
            adj[u].append(v)
            adj[v].append(u)

    voters = agents if kind is ProblemKind.HOUSE else agents + others
    if config.weight_range is None:
        weights = {v: 1 for v in voters}
    else:
        lo, hi = config.weight_range
        weights = {v: rng.randint(lo, hi) for v in voters}
    prefs = {v: _tiers(rng, list(adj[v]), config.ties) for v in voters}

    if kind is ProblemKind.HOUSE:
        return Instance(kind, agents, prefs, weights, items=others)
    sides = {}
    if kind is ProblemKind.MARRIAGE:
        sides = {a: Side.LEFT for a in agents}
        sides.update({w: Side.RIGHT for w in others})
    return Instance(kind, voters, prefs, weights, sides=sides)
