from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from popdim.core import Matching, ProblemKind, WinningSet
from popdim.instances import GADGETS, GeneratorConfig, gadget, random_instance
from popdim.oracle import DimensionResult, VerificationReport, enumerate_matchings
from popdim.core import phi
from popdim.textio import (ParseError, format_dimension, format_report, parse_instance,
                           parse_matching, parse_winning_set, serialize_instance,
                           serialize_matching, serialize_winning_set)

HOUSE_LOWER = """\
# three agents, two houses
problem: house
agent a
agent b
agent c
item x
item y
pref a: x y
pref b: x y
pref c: x y
"""


def test_gadget_file():
    inst = parse_instance(HOUSE_LOWER)
    assert inst.kind is ProblemKind.HOUSE and inst.agents == ("a", "b", "c")
    assert serialize_instance(inst) == serialize_instance(gadget("house_lower"))


def test_tie_group():
    inst = parse_instance("problem: roommates\nagent a\nagent b\nagent c\n"
                          "pref a: (b c)\npref b: a\npref c: a\n")
    assert inst.order("a").tiers == (frozenset({"b", "c"}),)


def test_weights_and_sides():
    inst = parse_instance("problem: marriage\nagent m weight 3/6 side left\n"
                          "agent w side right weight 0\npref m: w\npref w: m\n")
    assert inst.weight("m") == Fraction(1, 2) and inst.weight("w") == 0
    assert "agent m weight 1/2 side left" in serialize_instance(inst)


def test_comments_and_blank_lines():
    text = "\n# hi\nproblem: house   # kind\n\nagent a\nitem x\npref a: x\n"
    assert parse_instance(text).order("a").tiers == (frozenset({"x"}),)


@pytest.mark.parametrize("text, lineno, fragment", [
    ("problem: house\nagent a\nitem x\npref a: x zz\n", 4, "'zz'"),
    ("problem: house\nagent a\nagent a\n", 3, "already declared"),
    ("problem: house\nagent a-b\n", 2, "a-b"),
    ("problem: house\nagent a weight -1\n", 2, "weight"),
    ("problem: house\nagent a weight 0.5\n", 2, "weight"),
    ("problem: house\nagent a\nitem x\npref a: (x\n", 4, ""),
    ("problem: hospital\n", 1, "hospital"),
    ("agent a\nhello\n", 2, "hello"),
    ("problem: roommates\nagent a\nagent b\npref q: a\n", 4, "'q'"),
])
def test_syntax_errors_carry_line(text, lineno, fragment):
    with pytest.raises(ParseError) as info:
        parse_instance(text)
    assert info.value.lineno == lineno
    assert f"line {lineno}:" in str(info.value) and fragment in str(info.value)


def test_semantic_errors():
    with pytest.raises(ParseError, match="mutual"):
        parse_instance("problem: roommates\nagent a\nagent b\npref a: b\n")
    with pytest.raises(ParseError, match="problem"):
        parse_instance("agent a\n")
    with pytest.raises(ParseError):
        parse_instance("problem: marriage\nagent m\nagent w\npref m: w\npref w: m\n")


def test_matching_formats():
    m = Matching.of(("c", "y"), ("a", "x"))
    assert serialize_matching(m) == "match a x\nmatch c y\n"
    assert parse_matching(serialize_matching(m)) == m
    assert parse_matching("") == Matching()
    ws = WinningSet((m, Matching.of(("b", "x"))))
    text = serialize_winning_set(ws)
    assert text == "match a x\nmatch c y\n---\nmatch b x\n"
    assert parse_winning_set(text) == ws
    assert parse_winning_set("") == WinningSet((Matching(),))
    with pytest.raises(ParseError):
        parse_matching("match a x\n---\nmatch b y\n")
    with pytest.raises(ParseError):
        parse_matching("match a x\nmatch a y\n")


def test_report_formats():
    assert format_report(VerificationReport(True)) == "VERIFIED\n"
    g = gadget("house_lower")
    cand = Matching.of(("a", "x"), ("b", "y"))
    witness = Matching.of(("b", "x"), ("c", "y"))
    text = format_report(VerificationReport(False, witness, phi(g, witness, cand)))
    assert text == "DEFEATED witness_weight 2 candidate_weight 1\nmatch b x\nmatch c y\n"
    assert format_dimension(DimensionResult(2, 2, None)) == "2\n"
    assert format_dimension(DimensionResult(1, None)) == ">1\n"


@pytest.mark.parametrize("name", GADGETS)
def test_gadget_round_trip(name):
    text = serialize_instance(gadget(name))
    assert serialize_instance(parse_instance(text)) == text


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(["house", "marriage", "roommates"]), st.integers(0, 5),
       st.integers(0, 4), st.booleans(), st.sampled_from([None, (0, 3)]),
       st.floats(0, 1), st.integers(0, 2 ** 32))
def test_round_trip(kind, n, m, ties, weights, density, seed):
    inst = random_instance(GeneratorConfig(kind, n, 0 if kind == "roommates" else m, ties,
                                           weights, density, seed))
    text = serialize_instance(inst)
    back = parse_instance(text)
    assert serialize_instance(back) == text
    assert back.preferences == inst.preferences and back.weights == inst.weights
    ms = enumerate_matchings(inst, max_edges=None)
    for match in ms[:5]:
        assert parse_matching(serialize_matching(match)) == match
    ws = WinningSet(tuple(ms[:3]))
    assert parse_winning_set(serialize_winning_set(ws)) == ws
