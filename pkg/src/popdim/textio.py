"""Line-oriented text formats for instances, matchings and winning sets.

Instance grammar (``#`` starts a comment, identifiers are ``[A-Za-z0-9_]+``)::

    problem: house|marriage|roommates
    agent <id> [weight <int or int/int>] [side left|right]
    item <id>
    pref <id>: <entry> <entry> ...

An entry is an identifier or a parenthesized tie group ``(<id> <id> ...)``,
listed best first.  Weights default to 1.  Marriage agents need a side.

A matching is one ``match <id> <id>`` line per edge in lexicographic order;
the matchings of a winning set are separated by ``---`` lines.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .core import (Instance, InstanceError, Matching, MatchingError, PreferenceOrder,
                   ProblemKind, Side, WinningSet)
from .oracle import DimensionResult, VerificationReport

IDENT = re.compile(r"[A-Za-z0-9_]+\Z")
WEIGHT = re.compile(r"-?\d+(/\d+)?\Z")
SEPARATOR = "---"


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}" if lineno else message)
        self.lineno = lineno


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _ident(lineno: int, token: str) -> str:
    if not IDENT.match(token):
        raise ParseError(lineno, f"invalid identifier {token!r}")
    return token


def _weight(lineno: int, token: str) -> Fraction:
    if not WEIGHT.match(token):
        raise ParseError(lineno, f"invalid weight {token!r}")
    value = Fraction(token)
    if value < 0:
        raise ParseError(lineno, f"negative weight {token}")
    return value


def _entries(lineno: int, text: str) -> list[frozenset[str]]:
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    tiers: list[frozenset[str]] = []
    group: list[str] | None = None
    for tok in tokens:
        if tok == "(":
            if group is not None:
                raise ParseError(lineno, "nested tie group")
            group = []
        elif tok == ")":
            if not group:
                raise ParseError(lineno, "empty or unopened tie group")
            tiers.append(frozenset(group))
            group = None
        elif group is not None:
            group.append(_ident(lineno, tok))
        else:
            tiers.append(frozenset([_ident(lineno, tok)]))
    if group is not None:
        raise ParseError(lineno, "unclosed tie group")
    return tiers


def parse_instance(text: str) -> Instance:
    kind = None
    agents: list[str] = []
    items: list[str] = []
    weights: dict[str, Fraction] = {}
    sides: dict[str, Side] = {}
    prefs: dict[str, tuple[int, list[frozenset[str]]]] = {}
    declared: dict[str, int] = {}

    def declare(lineno: int, name: str) -> None:
        if name in declared:
            raise ParseError(lineno, f"{name!r} already declared on line {declared[name]}")
        declared[name] = lineno

    for lineno, line in _lines(text):
        head, _, rest = line.partition(" ")
        if head.startswith("problem"):
            value = line.partition(":")[2].strip()
            if not line.startswith("problem:") or kind is not None:
                raise ParseError(lineno, "expected a single 'problem: <kind>' line")
            try:
                kind = ProblemKind(value)
            except ValueError:
                raise ParseError(lineno, f"unknown problem kind {value!r}") from None
        elif head == "agent":
            tokens = rest.split()
            if not tokens:
                raise ParseError(lineno, "agent needs an identifier")
            name = _ident(lineno, tokens[0])
            declare(lineno, name)
            agents.append(name)
            opts = tokens[1:]
            if len(opts) % 2:
                raise ParseError(lineno, "agent options come in 'key value' pairs")
            for key, value in zip(opts[::2], opts[1::2]):
                if key == "weight" and name not in weights:
                    weights[name] = _weight(lineno, value)
                elif key == "side" and name not in sides:
                    if value not in ("left", "right"):
                        raise ParseError(lineno, f"side must be left or right, got {value!r}")
                    sides[name] = Side(value)
                else:
                    raise ParseError(lineno, f"unexpected agent option {key!r}")
        elif head == "item":
            tokens = rest.split()
            if len(tokens) != 1:
                raise ParseError(lineno, "item takes exactly one identifier")
            name = _ident(lineno, tokens[0])
            declare(lineno, name)
            items.append(name)
        elif head.startswith("pref"):
            body = line[len("pref"):]
            owner, colon, entries = body.partition(":")
            if not colon or not line.startswith("pref "):
                raise ParseError(lineno, "expected 'pref <id>: <entries>'")
            owner = _ident(lineno, owner.strip())
            if owner in prefs:
                raise ParseError(lineno, f"second preference list for {owner!r}")
            prefs[owner] = (lineno, _entries(lineno, entries))
        else:
            raise ParseError(lineno, f"unrecognized line {line!r}")

    if kind is None:
        raise ParseError(0, "missing 'problem:' line")
    agent_set = set(agents)
    for owner, (lineno, tiers) in prefs.items():
        if owner not in agent_set:
            raise ParseError(lineno, f"preferences for undeclared agent {owner!r}")
        for tier in tiers:
            for target in sorted(tier):
                if target not in declared:
                    raise ParseError(lineno, f"undeclared identifier {target!r}")
    try:
        orders = {}
        for owner, (lineno, tiers) in prefs.items():
            try:
                orders[owner] = PreferenceOrder(tuple(tiers))
            except InstanceError as exc:
                raise ParseError(lineno, str(exc)) from None
        return Instance(kind, tuple(agents), orders, weights, tuple(items), sides)
    except InstanceError as exc:
        raise ParseError(0, str(exc)) from None


def _format_weight(w: Fraction) -> str:
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def serialize_instance(instance: Instance) -> str:
    lines = [f"problem: {instance.kind.value}"]
    for a in instance.agents:
        parts = [f"agent {a}"]
        if instance.weight(a) != 1:
            parts.append(f"weight {_format_weight(instance.weight(a))}")
        if a in instance.sides:
            parts.append(f"side {instance.sides[a].value}")
        lines.append(" ".join(parts))
    lines += [f"item {h}" for h in instance.items]
    for a in instance.agents:
        order = instance.order(a)
        if not order.tiers:
            continue
        entries = []
        for tier in order.tiers:
            names = sorted(tier, key=instance.index)
            entries.append(names[0] if len(names) == 1 else "(" + " ".join(names) + ")")
        lines.append(f"pref {a}: " + " ".join(entries))
    return "\n".join(lines) + "\n"


def serialize_matching(matching: Matching) -> str:
    return "".join(f"match {u} {v}\n" for u, v in matching.sorted_edges())


def _parse_match_block(block: list[tuple[int, str]]) -> Matching:
    pairs = []
    for lineno, line in block:
        tokens = line.split()
        if len(tokens) != 3 or tokens[0] != "match":
            raise ParseError(lineno, "expected 'match <id> <id>'")
        pairs.append((_ident(lineno, tokens[1]), _ident(lineno, tokens[2])))
    try:
        return Matching(frozenset(pairs))
    except MatchingError as exc:
        raise ParseError(block[0][0], str(exc)) from None


def parse_matching(text: str) -> Matching:
    block = list(_lines(text))
    for lineno, line in block:
        if line == SEPARATOR:
            raise ParseError(lineno, "a single matching has no separators")
    return _parse_match_block(block) if block else Matching()


def serialize_winning_set(ws: WinningSet) -> str:
    return (SEPARATOR + "\n").join(serialize_matching(m) for m in ws)


def parse_winning_set(text: str) -> WinningSet:
    blocks: list[list[tuple[int, str]]] = [[]]
    for lineno, line in _lines(text):
        if line == SEPARATOR:
            blocks.append([])
        else:
            blocks[-1].append((lineno, line))
    return WinningSet(tuple(_parse_match_block(b) if b else Matching() for b in blocks))


def format_report(report: VerificationReport) -> str:
    """``VERIFIED``, or ``DEFEATED`` with the witness and its vote totals."""
    if report.verdict:
        return "VERIFIED\n"
    tally = report.tally
    return (f"DEFEATED witness_weight {_format_weight(tally.weight_for)} "
            f"candidate_weight {_format_weight(tally.weight_against)}\n"
            + serialize_matching(report.witness))


def format_dimension(result: DimensionResult) -> str:
    if result.exceeds_bound:
        return f">{result.max_k}\n"
    return f"{result.dimension}\n"
