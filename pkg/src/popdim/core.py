"""Instances, matchings and the weighted popularity calculus.

Agents hold preference orders with ties (tiers, best first).  A matching is
compared against another matching, or against a set of matchings, by letting
every voting agent compare its best partner on each side.  Weights are exact
rationals so the popularity verdict is an exact sign test.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Union


class InstanceError(ValueError):
    """Raised when an instance, or a query against it, is malformed."""


class MatchingError(ValueError):
    """Raised when a matching is not valid for an instance."""


class ProblemKind(str, enum.Enum):
    HOUSE = "house"
    MARRIAGE = "marriage"
    ROOMMATES = "roommates"


class Side(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class Unmatched(enum.Enum):
    UNMATCHED = "unmatched"

    def __repr__(self) -> str:
        return "UNMATCHED"


#: Explicit "no partner" value; it ranks below every acceptable partner.
UNMATCHED = Unmatched.UNMATCHED


class Comparison(enum.Enum):
    FIRST_BETTER = "first_better"
    SECOND_BETTER = "second_better"
    EQUAL = "equal"


class Vote(enum.Enum):
    PREFERS_FIRST = "prefers_first"
    PREFERS_SECOND = "prefers_second"
    INDIFFERENT = "indifferent"


Partner = Union[str, Unmatched]
Edge = tuple[str, str]


def as_weight(value) -> Fraction:
    """Convert `value` to a non-negative exact rational weight."""
    if isinstance(value, float):
        raise InstanceError(f"weights must be exact, got float {value!r}")
    try:
        weight = Fraction(value)
    except (TypeError, ValueError) as exc:
        raise InstanceError(f"invalid weight {value!r}") from exc
    if weight < 0:
        raise InstanceError(f"weights must be non-negative, got {weight}")
    return weight


@dataclass(frozen=True)
class PreferenceOrder:
    """Tiers of equally-liked partners, most preferred tier first."""

    tiers: tuple[frozenset[str], ...] = ()

    def __post_init__(self) -> None:
        tiers = tuple(frozenset(t) for t in self.tiers)
        seen: set[str] = set()
        for tier in tiers:
            if not tier:
                raise InstanceError("preference tiers must be nonempty")
            if seen & tier:
                raise InstanceError(
                    f"partner(s) {sorted(seen & tier)} listed in two tiers")
            seen |= tier
        object.__setattr__(self, "tiers", tiers)

    @classmethod
    def from_entries(cls, entries: Iterable[str | Iterable[str]]) -> PreferenceOrder:
        """Build from a best-first list where a non-string entry is a tie group."""
        return cls(tuple(
            frozenset([e]) if isinstance(e, str) else frozenset(e) for e in entries))

    @cached_property
    def acceptable(self) -> frozenset[str]:
        return frozenset().union(*self.tiers)

    @cached_property
    def _rank(self) -> Mapping[str, int]:
        return {p: r for r, tier in enumerate(self.tiers) for p in tier}

    def rank(self, partner: Partner) -> int:
        """Tier index of `partner`; unmatched ranks one past the last tier."""
        if partner is UNMATCHED:
            return len(self.tiers)
        try:
            return self._rank[partner]
        except KeyError:
            raise MatchingError(f"{partner!r} is not an acceptable partner") from None

    @property
    def is_strict(self) -> bool:
        return all(len(tier) == 1 for tier in self.tiers)

    def __len__(self) -> int:
        return len(self.tiers)


@dataclass(frozen=True)
class Instance:
    """A house allocation, marriage or roommates instance.

    `agents` vote and carry weights.  In house instances `items` are the
    houses; they never vote and hold no preferences.  Marriage instances
    assign every agent a side, and every instance records one preference
    order per agent (possibly empty).
    """

    kind: ProblemKind
    agents: tuple[str, ...]
    preferences: Mapping[str, PreferenceOrder]
    weights: Mapping[str, Fraction] = field(default_factory=dict)
    items: tuple[str, ...] = ()
    sides: Mapping[str, Side] = field(default_factory=dict)

    def __post_init__(self) -> None:
        kind = ProblemKind(self.kind)
        agents = tuple(self.agents)
        items = tuple(self.items)
        weights = {a: as_weight(self.weights.get(a, 1)) for a in agents}
        prefs = {a: self.preferences.get(a, PreferenceOrder()) for a in agents}
        sides = {a: Side(s) for a, s in self.sides.items()}
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "agents", agents)
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "weights", MappingProxyType(weights))
        object.__setattr__(self, "preferences", MappingProxyType(prefs))
        object.__setattr__(self, "sides", MappingProxyType(sides))
        self._validate()

    def _validate(self) -> None:
        names = self.agents + self.items
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise InstanceError(f"duplicate identifier(s): {dupes}")
        agent_set = set(self.agents)
        for entity in set(self.preferences) - agent_set:
            raise InstanceError(f"preferences given for non-agent {entity!r}")
        for entity in set(self.weights) - agent_set:
            raise InstanceError(f"weight given for non-agent {entity!r}")
        if self.kind is not ProblemKind.HOUSE and self.items:
            raise InstanceError(f"{self.kind.value} instances have no items")
        if self.kind is ProblemKind.MARRIAGE:
            missing = [a for a in self.agents if a not in self.sides]
            if missing:
                raise InstanceError(f"marriage agents without a side: {missing}")
        extra = set(self.sides) - agent_set
        if extra:
            raise InstanceError(f"side given for unknown identifier(s): {sorted(extra)}")
        if self.sides and self.kind is not ProblemKind.MARRIAGE:
            raise InstanceError("sides are only meaningful for marriage instances")

        item_set = set(self.items)
        for agent, order in self.preferences.items():
            for target in order.acceptable:
                if target == agent:
                    raise InstanceError(f"agent {agent!r} lists itself")
                if self.kind is ProblemKind.HOUSE:
                    if target not in item_set:
                        raise InstanceError(
                            f"agent {agent!r} lists {target!r}, which is not a house")
                elif target not in agent_set:
                    raise InstanceError(f"agent {agent!r} lists unknown agent {target!r}")
                elif (self.kind is ProblemKind.MARRIAGE
                      and self.sides[target] == self.sides[agent]):
                    raise InstanceError(
                        f"agent {agent!r} lists {target!r} on the same side")
        if self.kind is not ProblemKind.HOUSE:
            for agent, order in self.preferences.items():
                for target in order.acceptable:
                    if agent not in self.preferences[target].acceptable:
                        raise InstanceError(
                            f"acceptability is not mutual: {agent!r} lists "
                            f"{target!r} but not conversely")

    # -- lookups -----------------------------------------------------------

    @cached_property
    def entities(self) -> tuple[str, ...]:
        """Every identifier: agents in order, then items."""
        return self.agents + self.items

    @cached_property
    def _index(self) -> Mapping[str, int]:
        return {v: i for i, v in enumerate(self.entities)}

    def index(self, entity: str) -> int:
        try:
            return self._index[entity]
        except KeyError:
            raise InstanceError(f"unknown identifier {entity!r}") from None

    def is_agent(self, entity: str) -> bool:
        return entity in self.preferences

    def order(self, agent: str) -> PreferenceOrder:
        try:
            return self.preferences[agent]
        except KeyError:
            raise InstanceError(f"unknown agent {agent!r}") from None

    def weight(self, agent: str) -> Fraction:
        try:
            return self.weights[agent]
        except KeyError:
            raise InstanceError(f"unknown agent {agent!r}") from None

    @cached_property
    def _neighbours(self) -> Mapping[str, frozenset[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.entities}
        for agent, order in self.preferences.items():
            for target in order.acceptable:
                adj[agent].add(target)
                adj[target].add(agent)
        return {v: frozenset(s) for v, s in adj.items()}

    def neighbours(self, entity: str) -> frozenset[str]:
        """Acceptable partners of any entity (for items: agents listing it)."""
        try:
            return self._neighbours[entity]
        except KeyError:
            raise InstanceError(f"unknown identifier {entity!r}") from None

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        """The acceptability graph, canonical edges in lexicographic order."""
        return tuple(sorted({make_edge(a, t) for a, order in self.preferences.items()
                             for t in order.acceptable}))

    @property
    def is_strict(self) -> bool:
        return all(order.is_strict for order in self.preferences.values())

    @property
    def is_unweighted(self) -> bool:
        """True when all agents carry the same weight."""
        return len(set(self.weights.values())) <= 1

    @property
    def total_weight(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def with_weights(self, weights: Mapping[str, object]) -> Instance:
        return Instance(self.kind, self.agents, self.preferences, weights,
                        self.items, self.sides)

    def validate_matching(self, matching: Matching) -> None:
        for u, v in matching.edges:
            if u not in self._neighbours or v not in self._neighbours.get(u, ()):
                raise MatchingError(f"edge ({u}, {v}) is not acceptable")


def make_edge(u: str, v: str) -> Edge:
    """Canonical unordered pair: the lexicographically smaller name first."""
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Matching:
    """A set of pairwise-disjoint unordered pairs."""

    edges: frozenset[Edge] = frozenset()

    def __post_init__(self) -> None:
        edges = frozenset(make_edge(u, v) for u, v in self.edges)
        seen: set[str] = set()
        for u, v in edges:
            if u == v:
                raise MatchingError(f"self-pair ({u}, {v})")
            for x in (u, v):
                if x in seen:
                    raise MatchingError(f"{x!r} appears in more than one edge")
                seen.add(x)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def of(cls, *pairs: Sequence[str]) -> Matching:
        return cls(frozenset(tuple(p) for p in pairs))

    @cached_property
    def _mate(self) -> Mapping[str, str]:
        mate = {}
        for u, v in self.edges:
            mate[u] = v
            mate[v] = u
        return mate

    def partner(self, entity: str) -> Partner:
        return self._mate.get(entity, UNMATCHED)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.sorted_edges())

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, pair) -> bool:
        return make_edge(*pair) in self.edges

    def __repr__(self) -> str:
        inner = ", ".join(f"{u}-{v}" for u, v in self.sorted_edges())
        return f"Matching({{{inner}}})"


@dataclass(frozen=True)
class WinningSet:
    """An ordered collection of matchings proposed as a popular winning set."""

    matchings: tuple[Matching, ...]

    def __post_init__(self) -> None:
        matchings = tuple(self.matchings)
        if not matchings:
            raise MatchingError("a winning set needs at least one matching")
        object.__setattr__(self, "matchings", matchings)

    def __iter__(self) -> Iterator[Matching]:
        return iter(self.matchings)

    def __len__(self) -> int:
        return len(self.matchings)

    def __getitem__(self, i: int) -> Matching:
        return self.matchings[i]


def winning_set(matchings: Iterable[Matching]) -> WinningSet:
    """Collect matchings, dropping empty ones but keeping at least one."""
    kept = [m for m in matchings if m.edges]
    return WinningSet(tuple(kept) or (Matching(),))


@dataclass(frozen=True)
class PopularityTally:
    weight_for: Fraction
    weight_against: Fraction
    classification: Mapping[str, Vote]


# -- preference queries -----------------------------------------------------

def compare_partners(instance: Instance, agent: str, p: Partner, q: Partner) -> Comparison:
    """How `agent` ranks partner `p` against partner `q`."""
    order = instance.order(agent)
    rp, rq = order.rank(p), order.rank(q)
    if rp < rq:
        return Comparison.FIRST_BETTER
    if rq < rp:
        return Comparison.SECOND_BETTER
    return Comparison.EQUAL


def favorites(instance: Instance, agent: str, available: Iterable[str]) -> frozenset[str]:
    """The best tier of `agent` restricted to `available`."""
    order = instance.order(agent)
    available = frozenset(available)
    for tier in order.tiers:
        best = tier & available
        if best:
            return best
    return frozenset()


MatchingLike = Union[Matching, WinningSet]


def _members(side: MatchingLike) -> tuple[Matching, ...]:
    return (side,) if isinstance(side, Matching) else side.matchings


def best_rank(instance: Instance, agent: str, side: MatchingLike) -> int:
    """Best tier `agent` reaches across the member(s) of `side`."""
    order = instance.order(agent)
    return min(order.rank(m.partner(agent)) for m in _members(side))


def phi(instance: Instance, first: MatchingLike, second: MatchingLike) -> PopularityTally:
    """Weighted head-to-head vote between `first` and `second`.

    Each agent compares its best partner in `first` with its best partner
    in `second`; a single matching is a one-member set.
    """
    for m in _members(first) + _members(second):
        instance.validate_matching(m)
    weight_for = Fraction(0)
    weight_against = Fraction(0)
    votes: dict[str, Vote] = {}
    for agent in instance.agents:
        r1 = best_rank(instance, agent, first)
        r2 = best_rank(instance, agent, second)
        if r1 < r2:
            votes[agent] = Vote.PREFERS_FIRST
            weight_for += instance.weights[agent]
        elif r2 < r1:
            votes[agent] = Vote.PREFERS_SECOND
            weight_against += instance.weights[agent]
        else:
            votes[agent] = Vote.INDIFFERENT
    return PopularityTally(weight_for, weight_against, MappingProxyType(votes))


def is_at_least_as_popular(instance: Instance, first: MatchingLike,
                           second: MatchingLike) -> bool:
    tally = phi(instance, first, second)
    return tally.weight_for >= tally.weight_against
