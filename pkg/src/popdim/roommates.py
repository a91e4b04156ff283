"""Popular winning sets for roommates (and, via the general route, marriage).

Two routes:

* unweighted strict instances: a greedy favourite-chain whose edges alternate
  between two matchings;
* anything else: copy every agent into a proposer and a house, solve the
  resulting house allocation instance, fold the copies back together and
  3-edge-color the folded edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .coloring import check_pseudoforest, color_classes, three_edge_color
from .core import (UNMATCHED, Edge, Instance, InstanceError, Matching, PreferenceOrder,
                   ProblemKind, WinningSet, best_rank, favorites, make_edge, winning_set)
from .house import HouseRunTrace, InvariantViolation, solve_house

PLUS_SUFFIX = "_plus"
MINUS_SUFFIX = "_minus"


# -- greedy chain (unweighted, strict) ---------------------------------------

@dataclass(frozen=True)
class ChainStep:
    t: int
    current: str                # v_t
    remaining: tuple[str, ...]  # V_t
    chosen: str                 # v_{t+1}
    added: bool
    target: Optional[int]       # 1 or 2 when an edge was added


@dataclass(frozen=True)
class ChainTrace:
    sequence: tuple[str, ...]
    steps: tuple[ChainStep, ...]


def solve_roommates_strict(instance: Instance) -> tuple[WinningSet, ChainTrace]:
    """Greedy chain for unweighted roommates with strict preferences.

    Starting from the first agent, each step walks to the current agent's
    favourite among the unvisited agents, adding that edge to the first
    matching on odd steps and to the second on even steps.  When the current
    agent has no unvisited neighbour, the chain jumps to the first unvisited
    agent without adding an edge.
    """
    if instance.kind is not ProblemKind.ROOMMATES:
        raise InstanceError(f"expected a roommates instance, got {instance.kind.value}")
    if not instance.is_strict:
        raise InstanceError("the greedy chain needs strict preferences")
    if not instance.is_unweighted:
        raise InstanceError("the greedy chain needs equal weights")
    if not instance.agents:
        return winning_set([]), ChainTrace((), ())
    current = instance.agents[0]
    sequence = [current]
    remaining = [a for a in instance.agents if a != current]
    m1: list[Edge] = []
    m2: list[Edge] = []
    steps = []
    t = 1
    while remaining:
        best = favorites(instance, current, remaining)
        if best:
            (nxt,) = best
            target = 1 if t % 2 == 1 else 2
            (m1 if target == 1 else m2).append((current, nxt))
        else:
            nxt, target = remaining[0], None
        steps.append(ChainStep(t, current, tuple(remaining), nxt, target is not None, target))
        remaining.remove(nxt)
        sequence.append(nxt)
        current = nxt
        t += 1
    ws = winning_set([Matching(frozenset(m1)), Matching(frozenset(m2))])
    return ws, ChainTrace(tuple(sequence), tuple(steps))


# -- auxiliary house instance -------------------------------------------------

@dataclass(frozen=True)
class AuxiliaryInstance:
    base: Instance
    house: Instance
    plus: dict[str, str]     # v -> v+
    minus: dict[str, str]    # v -> v-

    def original(self, copy: str) -> str:
        for mapping in (self.plus, self.minus):
            for v, c in mapping.items():
                if c == copy:
                    return v
        raise InstanceError(f"{copy!r} is not an auxiliary copy")


def build_auxiliary(instance: Instance) -> AuxiliaryInstance:
    """House instance whose agents are proposer copies v+ and whose houses are
    copies v-; v+ ranks the u- exactly as v ranks u, with v's weight."""
    if instance.kind not in (ProblemKind.ROOMMATES, ProblemKind.MARRIAGE):
        raise InstanceError(f"expected roommates or marriage, got {instance.kind.value}")
    plus = {v: v + PLUS_SUFFIX for v in instance.agents}
    minus = {v: v + MINUS_SUFFIX for v in instance.agents}
    prefs = {
        plus[v]: PreferenceOrder(tuple(frozenset(minus[u] for u in tier)
                                       for tier in instance.order(v).tiers))
        for v in instance.agents
    }
    house = Instance(
        ProblemKind.HOUSE,
        agents=tuple(plus[v] for v in instance.agents),
        preferences=prefs,
        weights={plus[v]: instance.weight(v) for v in instance.agents},
        items=tuple(minus[v] for v in instance.agents),
    )
    return AuxiliaryInstance(instance, house, plus, minus)


# -- general route --------------------------------------------------------------

@dataclass(frozen=True)
class GeneralRun:
    auxiliary: AuxiliaryInstance
    house_trace: HouseRunTrace
    arcs: tuple[tuple[str, str], ...]   # v -> u for each auxiliary edge (v+, u-)
    merged: tuple[Edge, ...]            # folded, de-duplicated edges
    coloring: dict[Edge, int]
    winning_set: WinningSet


def run_general(instance: Instance) -> GeneralRun:
    aux = build_auxiliary(instance)
    _, trace = solve_house(aux.house)
    arcs = []
    for a, h in sorted(trace.edges):
        v, u = aux.original(a), aux.original(h)
        if v == u:
            raise InvariantViolation(f"auxiliary edge joins {v!r} to itself")
        arcs.append((v, u))
    merged = tuple(sorted({make_edge(v, u) for v, u in arcs}))
    check_pseudoforest(merged)
    coloring = three_edge_color(merged)
    classes = [Matching(frozenset(c)) for c in color_classes(coloring)]
    return GeneralRun(aux, trace, tuple(arcs), merged, coloring, winning_set(classes))


def solve_roommates_general(instance: Instance) -> WinningSet:
    """At most three matchings for weighted roommates or marriage with ties."""
    return run_general(instance).winning_set


def solve_roommates(instance: Instance) -> WinningSet:
    """Greedy chain when unweighted and strict, general route otherwise."""
    if instance.kind is not ProblemKind.ROOMMATES:
        raise InstanceError(f"expected a roommates instance, got {instance.kind.value}")
    if instance.is_strict and instance.is_unweighted:
        return solve_roommates_strict(instance)[0]
    return solve_roommates_general(instance)


def mirror_violations(instance: Instance, ws: WinningSet, alternative: Matching) -> list[str]:
    """Agents preferring `alternative` whose partner there does not strictly
    prefer `ws`; empty for every output of the greedy chain."""
    bad = []
    for agent in instance.agents:
        mate = alternative.partner(agent)
        if mate is UNMATCHED:
            continue
        if instance.order(agent).rank(mate) < best_rank(instance, agent, ws):
            if not best_rank(instance, mate, ws) < instance.order(mate).rank(agent):
                bad.append(agent)
    return bad
