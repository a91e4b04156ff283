"""Size-2 popular winning sets for house allocation (weighted agents, ties).

Each step ranks the remaining agents by weight, takes the longest heavy
prefix that admits a top-choice (1,2)-matching into the remaining houses,
and, when that prefix stops short, prunes it so that every allocated agent
strictly prefers its house to anything left over.  The union of all step
matchings is a (1,2)-matching, which splits into the two output matchings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import Instance, InstanceError, ProblemKind, WinningSet, favorites, winning_set
from .topchoice import (OneTwoMatching, decompose_12, find_top_choice_12, is_feasible,
                        max_top_choice_prefix)


class InvariantViolation(AssertionError):
    """An internal guarantee of the algorithm failed (a bug, never bad input)."""


@dataclass(frozen=True)
class HouseStep:
    t: int
    agents: tuple[str, ...]          # I_t
    houses: tuple[str, ...]          # J_t
    dropped: tuple[str, ...]         # agents of I_t with no acceptable house in J_t
    ranked: tuple[str, ...]          # I_t minus dropped, heaviest first
    k: int
    hat: tuple[str, ...]             # heavy prefix that fits
    threshold: Optional[Fraction]    # weight of the first agent that did not fit
    pruning: tuple[tuple[str, bool], ...]  # (agent, removed) in scan order
    allocated: tuple[str, ...]       # I*_t
    matching: OneTwoMatching         # M*_t
    full_houses: tuple[str, ...]     # J*_t, degree-2 houses of M*_t
    accumulated: frozenset           # E_t


@dataclass(frozen=True)
class HouseRunTrace:
    steps: tuple[HouseStep, ...]

    @property
    def T(self) -> int:
        return len(self.steps)

    @property
    def edges(self) -> frozenset:
        return self.steps[-1].accumulated if self.steps else frozenset()

    def assignment(self) -> dict[str, str]:
        return dict(self.edges)

    def dump(self) -> str:
        """Line-oriented text dump, one block per step."""
        def ids(xs):
            return " ".join(xs)

        def pairs(es):
            return " ".join(f"{a}-{h}" for a, h in sorted(es))

        lines = []
        for s in self.steps:
            lines += [
                f"step {s.t}",
                f"  agents: {ids(s.agents)}",
                f"  houses: {ids(s.houses)}",
                f"  dropped: {ids(s.dropped)}",
                f"  ranked: {ids(s.ranked)}",
                f"  k: {s.k}",
                f"  hat: {ids(s.hat)}",
                f"  threshold: {'-' if s.threshold is None else s.threshold}",
                "  pruning: " + " ".join(
                    f"{a}={'drop' if removed else 'keep'}" for a, removed in s.pruning),
                f"  allocated: {ids(s.allocated)}",
                f"  matching: {pairs(s.matching.edges)}",
                f"  full: {ids(s.full_houses)}",
                f"  accumulated: {pairs(s.accumulated)}",
                "end",
            ]
        return "\n".join(lines) + ("\n" if lines else "")


def rank_by_weight(instance: Instance, agents) -> list[str]:
    """Heaviest first; equal weights keep instance order."""
    return sorted(agents, key=lambda a: (-instance.weight(a), instance.index(a)))


def prune_agents(instance: Instance, ordered_agents: Sequence[str], extra_agent: str,
                 houses) -> tuple[list[str], list[tuple[str, bool]]]:
    """Scan the fitted prefix from its lightest member up, dropping an agent
    whenever swapping it for `extra_agent` still leaves an infeasible set.

    Returns the surviving agents (in the given order) and the scan log.
    """
    houses = frozenset(houses)
    working = list(ordered_agents)
    if not is_feasible(instance, working, houses):
        raise InstanceError("the prefix does not admit a top-choice (1,2)-matching")
    if is_feasible(instance, working + [extra_agent], houses):
        raise InstanceError("the prefix is not maximal: the extra agent still fits")
    log = []
    for agent in reversed(ordered_agents):
        trial = [a for a in working if a != agent] + [extra_agent]
        removed = not is_feasible(instance, trial, houses)
        if removed:
            working.remove(agent)
        log.append((agent, removed))
    return working, log


def run_house(instance: Instance) -> HouseRunTrace:
    """Run the step loop and return the trace; see `solve_house`."""
    if instance.kind is not ProblemKind.HOUSE:
        raise InstanceError(f"expected a house instance, got {instance.kind.value}")
    remaining = list(instance.agents)
    houses = list(instance.items)
    accumulated: frozenset = frozenset()
    steps = []
    t = 0
    while remaining and houses:
        house_set = frozenset(houses)
        dropped = [a for a in remaining if not favorites(instance, a, house_set)]
        active = [a for a in remaining if a not in dropped]
        if not active:
            break
        t += 1
        ranked = rank_by_weight(instance, active)
        k = max_top_choice_prefix(instance, ranked, house_set)
        hat = ranked[:k]
        if k == len(ranked):
            allocated, pruning, threshold = list(ranked), [], None
        else:
            extra = ranked[k]
            threshold = instance.weight(extra)
            allocated, pruning = prune_agents(instance, hat, extra, house_set)
        matching = find_top_choice_12(instance, allocated, house_set)
        if matching is None or not allocated:
            raise InvariantViolation(f"step {t}: pruned set does not fit or is empty")
        if accumulated & matching.edges:
            raise InvariantViolation(f"step {t}: edges repeated across steps")
        accumulated = accumulated | matching.edges
        full = matching.full_houses()
        steps.append(HouseStep(
            t=t, agents=tuple(remaining), houses=tuple(houses), dropped=tuple(dropped),
            ranked=tuple(ranked), k=k, hat=tuple(hat), threshold=threshold,
            pruning=tuple(pruning), allocated=tuple(allocated), matching=matching,
            full_houses=tuple(h for h in houses if h in full), accumulated=accumulated,
        ))
        taken = set(allocated)
        remaining = [a for a in active if a not in taken]
        houses = [h for h in houses if h not in full]
    return HouseRunTrace(tuple(steps))


def check_claims(instance: Instance, trace: HouseRunTrace) -> None:
    """Assert the step invariants on a finished run.

    - on pruning steps, allocated agents strictly prefer their house to every
      acceptable house still available afterwards;
    - before the last step, twice as many agents as houses are allocated;
    - every agent of a step's fitted prefix ends up with a favourite house
      of that step's house set.
    """
    assignment = trace.assignment()
    steps = trace.steps
    for n, s in enumerate(steps):
        nxt_houses = steps[n + 1].houses if n + 1 < len(steps) else tuple(
            h for h in s.houses if h not in s.full_houses)
        if set(nxt_houses) != set(s.houses) - set(s.full_houses):
            raise InvariantViolation(f"step {s.t}: house set did not shrink by J*")
        if n + 1 < len(steps):
            expect = set(s.agents) - set(s.allocated) - set(s.dropped)
            if set(steps[n + 1].agents) != expect:
                raise InvariantViolation(f"step {s.t}: agent set did not shrink by I*")
        for a in (s.allocated if s.threshold is not None else ()):
            own = instance.order(a).rank(assignment[a])
            for h in nxt_houses:
                if h in instance.order(a).acceptable and instance.order(a).rank(h) <= own:
                    raise InvariantViolation(
                        f"step {s.t}: {a} does not strictly prefer {assignment[a]} to {h}")
        if s.t < trace.T and len(s.allocated) != 2 * len(s.full_houses):
            raise InvariantViolation(
                f"step {s.t}: |I*|={len(s.allocated)} but |J*|={len(s.full_houses)}")
        for a in s.hat:
            if assignment.get(a) not in favorites(instance, a, s.houses):
                raise InvariantViolation(
                    f"step {s.t}: {a} did not get a favourite house of J_{s.t}")
    if len(assignment) != len(trace.edges):
        raise InvariantViolation("an agent holds two houses")


def solve_house(instance: Instance) -> tuple[WinningSet, HouseRunTrace]:
    """A popular winning set of at most two matchings, with the run trace.

    Agents left with no acceptable house are removed from the step and stay
    unmatched; ties in weight are broken by instance order.
    """
    trace = run_house(instance)
    check_claims(instance, trace)
    first, second = decompose_12(instance, OneTwoMatching(trace.edges))
    return winning_set([first, second]), trace
