"""Brute-force ground truth for popularity on small instances.

Every matching of the acceptability graph is enumerated, and each agent's
tier rank under every matching is tabulated once.  Weights are scaled by the
common denominator so that vote totals are exact integers; a candidate set
is then checked against all alternatives in one vectorized pass.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (Edge, Instance, Matching, MatchingLike, PopularityTally, WinningSet,
                   is_at_least_as_popular, phi)

DEFAULT_MAX_EDGES = 16


class OracleGuardError(ValueError):
    """The instance is too large to enumerate under the current guard."""


@dataclass(frozen=True)
class VerificationReport:
    verdict: bool
    witness: Optional[Matching] = None
    tally: Optional[PopularityTally] = None   # witness against the candidate


@dataclass(frozen=True)
class DimensionResult:
    max_k: int
    dimension: Optional[int]                  # None when it exceeds max_k
    certificate: Optional[WinningSet] = None

    @property
    def exceeds_bound(self) -> bool:
        return self.dimension is None


def _guard(instance: Instance, max_edges: Optional[int]) -> None:
    if max_edges is not None and len(instance.edges) > max_edges:
        raise OracleGuardError(
            f"{len(instance.edges)} acceptable edges exceed the enumeration guard "
            f"of {max_edges}; raise the guard explicitly to proceed")


def _edge_sets(edges: tuple[Edge, ...]) -> list[tuple[Edge, ...]]:
    out: list[tuple[Edge, ...]] = []

    def grow(start: int, chosen: list[Edge], used: set[str]) -> None:
        out.append(tuple(chosen))
        for i in range(start, len(edges)):
            u, v = edges[i]
            if u in used or v in used:
                continue
            chosen.append(edges[i])
            used.update((u, v))
            grow(i + 1, chosen, used)
            used.difference_update((u, v))
            chosen.pop()

    grow(0, [], set())
    out.sort()
    return out


def enumerate_matchings(instance: Instance,
                        max_edges: Optional[int] = DEFAULT_MAX_EDGES) -> list[Matching]:
    """All matchings, the empty one included, ordered by sorted edge list."""
    _guard(instance, max_edges)
    return [Matching(frozenset(es)) for es in _edge_sets(instance.edges)]


class RankTable:
    """Tier ranks of every voting agent under every enumerated matching."""

    def __init__(self, instance: Instance, max_edges: Optional[int] = DEFAULT_MAX_EDGES):
        _guard(instance, max_edges)
        self.instance = instance
        self.edge_sets = _edge_sets(instance.edges)
        self.agents = instance.agents
        col = {a: j for j, a in enumerate(self.agents)}
        unmatched = [len(instance.order(a)) for a in self.agents]
        ranks = np.tile(np.array(unmatched, dtype=np.int64), (len(self.edge_sets), 1))
        for row, es in enumerate(self.edge_sets):
            for u, v in es:
                for x, y in ((u, v), (v, u)):
                    if x in col:
                        ranks[row, col[x]] = instance.order(x).rank(y)
        self.ranks = ranks
        denom = math.lcm(*(w.denominator for w in instance.weights.values()))
        scaled = [int(instance.weight(a) * denom) for a in self.agents]
        dtype = np.int64 if sum(scaled) < 2 ** 62 else object
        self.weights = np.array(scaled, dtype=dtype)
        self._row = {es: i for i, es in enumerate(self.edge_sets)}

    def __len__(self) -> int:
        return len(self.edge_sets)

    def matching(self, row: int) -> Matching:
        return Matching(frozenset(self.edge_sets[row]))

    def row_of(self, matching: Matching) -> int:
        return self._row[tuple(matching.sorted_edges())]

    def best_ranks(self, candidate: MatchingLike) -> np.ndarray:
        members = (candidate,) if isinstance(candidate, Matching) else candidate.matchings
        rows = []
        for m in members:
            self.instance.validate_matching(m)
            rows.append(self.row_of(m))
        return self.ranks[rows].min(axis=0)

    def first_defeater(self, best: np.ndarray) -> Optional[int]:
        """First row whose supporters outweigh the candidate's supporters."""
        against = (self.ranks < best) @ self.weights
        for_ = (self.ranks > best) @ self.weights
        hits = np.nonzero(against > for_)[0]
        return int(hits[0]) if hits.size else None


def verify_winning_set(instance: Instance, candidate: MatchingLike,
                       max_edges: Optional[int] = DEFAULT_MAX_EDGES,
                       table: Optional[RankTable] = None) -> VerificationReport:
    """Is `candidate` at least as popular as every matching of the instance?"""
    if table is None:
        table = RankTable(instance, max_edges)
    row = table.first_defeater(table.best_ranks(candidate))
    if row is None:
        return VerificationReport(True)
    witness = table.matching(row)
    return VerificationReport(False, witness, phi(instance, witness, candidate))


def is_popular(instance: Instance, matching: Matching,
               max_edges: Optional[int] = DEFAULT_MAX_EDGES) -> bool:
    """Direct pairwise test through `phi`, independent of the rank table."""
    return all(is_at_least_as_popular(instance, matching, other)
               for other in enumerate_matchings(instance, max_edges))


def popular_matchings(instance: Instance, max_edges: Optional[int] = DEFAULT_MAX_EDGES,
                      table: Optional[RankTable] = None) -> list[Matching]:
    if table is None:
        table = RankTable(instance, max_edges)
    return [table.matching(r) for r in range(len(table))
            if table.first_defeater(table.ranks[r]) is None]


def popular_dimension(instance: Instance, max_k: int = 3,
                      max_edges: Optional[int] = DEFAULT_MAX_EDGES) -> DimensionResult:
    """Smallest k <= max_k admitting a popular winning set of k matchings."""
    table = RankTable(instance, max_edges)
    rows = range(len(table))
    for k in range(1, max_k + 1):
        for combo in itertools.combinations(rows, k):
            best = table.ranks[list(combo)].min(axis=0)
            if table.first_defeater(best) is None:
                cert = WinningSet(tuple(table.matching(r) for r in combo))
                return DimensionResult(max_k, k, cert)
    return DimensionResult(max_k, None)
