"""Top-choice (1,2)-matchings from agents into houses.

A (1,2)-matching covers each listed agent exactly once and loads each house
at most twice.  It is top-choice when every agent sits in one of its
favourite houses of the given house set.  Feasibility is decided by
augmenting paths over house slots (two per house), using favourite edges
only.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import Instance, InstanceError, Matching, MatchingError, favorites

CAPACITY = 2


@dataclass(frozen=True)
class OneTwoMatching:
    """Agent-to-house edges; agents have degree 1, houses degree at most 2."""

    edges: frozenset[tuple[str, str]]

    def __post_init__(self) -> None:
        edges = frozenset(self.edges)
        agents = Counter(a for a, _ in edges)
        houses = Counter(h for _, h in edges)
        if any(c > 1 for c in agents.values()):
            raise MatchingError("an agent has degree above 1")
        if any(c > CAPACITY for c in houses.values()):
            raise MatchingError("a house has degree above 2")
        object.__setattr__(self, "edges", edges)

    @property
    def assignment(self) -> dict[str, str]:
        return dict(self.edges)

    def load(self) -> Counter:
        return Counter(h for _, h in self.edges)

    def full_houses(self) -> frozenset[str]:
        """Houses of degree 2."""
        return frozenset(h for h, c in self.load().items() if c == CAPACITY)

    def is_top_choice(self, instance: Instance, houses: Iterable[str]) -> bool:
        houses = frozenset(houses)
        return all(h in houses and h in favorites(instance, a, houses)
                   for a, h in self.edges)


class _SlotMatcher:
    """Incremental capacity-2 bipartite matcher restricted to favourite edges.

    Slots are scanned house by house in instance item order, slot 0 first,
    so results are deterministic.
    """

    def __init__(self, instance: Instance, houses: Iterable[str]):
        houses = set(houses)
        for h in houses:
            if h not in instance.items:
                raise InstanceError(f"unknown house {h!r}")
        self.instance = instance
        self.houses = frozenset(houses)
        self.house_order = [h for h in instance.items if h in houses]
        self.slot_owner: dict[tuple[str, int], str] = {}
        self.agent_slot: dict[str, tuple[str, int]] = {}
        self._slots: dict[str, list[tuple[str, int]]] = {}

    def slots_for(self, agent: str) -> list[tuple[str, int]]:
        if agent not in self._slots:
            best = favorites(self.instance, agent, self.houses)
            self._slots[agent] = [(h, s) for h in self.house_order if h in best
                                  for s in range(CAPACITY)]
        return self._slots[agent]

    def _augment(self, agent: str, visited: set) -> bool:
        for slot in self.slots_for(agent):
            if slot in visited:
                continue
            visited.add(slot)
            owner = self.slot_owner.get(slot)
            if owner is None or self._augment(owner, visited):
                self.slot_owner[slot] = agent
                self.agent_slot[agent] = slot
                return True
        return False

    def add(self, agent: str) -> bool:
        """Try to cover `agent` as well; the state is unchanged on failure."""
        if agent in self.agent_slot:
            raise InstanceError(f"agent {agent!r} added twice")
        return self._augment(agent, set())

    def result(self) -> OneTwoMatching:
        return OneTwoMatching(frozenset((a, h) for a, (h, _) in self.agent_slot.items()))


def _check_agents(instance: Instance, agents: Iterable[str]) -> list[str]:
    agents = list(agents)
    for a in agents:
        instance.order(a)
        if a in instance.items:
            raise InstanceError(f"{a!r} is a house, not an agent")
    if len(set(agents)) != len(agents):
        raise InstanceError("agent list contains duplicates")
    return agents


def find_top_choice_12(instance: Instance, agents: Iterable[str],
                       houses: Iterable[str]) -> Optional[OneTwoMatching]:
    """A top-choice (1,2)-matching covering `agents`, or None if none exists."""
    agents = _check_agents(instance, agents)
    matcher = _SlotMatcher(instance, houses)
    for a in agents:
        if not matcher.add(a):
            return None
    return matcher.result()


def is_feasible(instance: Instance, agents: Iterable[str], houses: Iterable[str]) -> bool:
    return find_top_choice_12(instance, agents, houses) is not None


def max_top_choice_prefix(instance: Instance, ordered_agents: Sequence[str],
                          houses: Iterable[str]) -> int:
    """Largest k such that the first k agents admit a top-choice (1,2)-matching.

    Feasibility is closed under taking subsets, so the first failing prefix
    bounds every longer one.
    """
    ordered_agents = _check_agents(instance, ordered_agents)
    matcher = _SlotMatcher(instance, houses)
    for a in ordered_agents:
        if not matcher.slots_for(a):
            raise InstanceError(f"agent {a!r} has no acceptable house in the house set")
    for k, a in enumerate(ordered_agents):
        if not matcher.add(a):
            return k
    return len(ordered_agents)


def decompose_12(instance: Instance, m: OneTwoMatching) -> tuple[Matching, Matching]:
    """Split a (1,2)-matching into two edge-disjoint matchings.

    At a degree-2 house the agent listed earlier in the instance goes to the
    first matching and the other to the second; degree-1 edges go to the
    first.
    """
    m = OneTwoMatching(m.edges)
    by_house: dict[str, list[str]] = {}
    for a, h in m.edges:
        by_house.setdefault(h, []).append(a)
    first, second = [], []
    for h, agents in by_house.items():
        agents.sort(key=instance.index)
        first.append((agents[0], h))
        if len(agents) == 2:
            second.append((agents[1], h))
    return Matching(frozenset(first)), Matching(frozenset(second))
