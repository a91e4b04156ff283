import random

import pytest

from helpers import house, roommates
from popdim.core import InstanceError, Matching, WinningSet
from popdim.house import prune_agents, rank_by_weight, solve_house
from popdim.instances import GeneratorConfig, gadget, random_instance
from popdim.oracle import verify_winning_set
from popdim.topchoice import is_feasible


class TestPrune:
    def test_gadget_keeps_both(self):
        kept, log = prune_agents(gadget("house_lower"), ["a", "b"], "c", {"x", "y"})
        assert kept == ["a", "b"]
        assert log == [("b", False), ("a", False)]

    def test_four_agent_drops_i2(self, four_agent):
        houses = {"x", "y"}
        assert not is_feasible(four_agent, ["i1", "i3", "i4"], houses)
        kept, log = prune_agents(four_agent, ["i1", "i2", "i3"], "i4", houses)
        assert kept == ["i1", "i3"]
        assert dict(log) == {"i3": False, "i2": True, "i1": False}

    def test_last_agent_retained(self):
        inst = house({"i1": ["x"], "i2": ["x"], "i3": ["x"]}, items=["x"])
        # i1 and i2 fill x; the scan starts once i3 fails to fit
        kept, _ = prune_agents(inst, ["i1", "i2"], "i3", {"x"})
        assert kept == ["i1", "i2"]
        single = house({"i1": ["x"], "i2": ["x"]}, items=["x"], weights={"i1": 2})
        ws, trace = solve_house(single)
        assert trace.steps[0].allocated == ("i1", "i2")

    def test_precondition(self):
        with pytest.raises(InstanceError):
            prune_agents(gadget("house_lower"), ["a"], "b", {"x", "y"})


class TestSolve:
    def test_gadget(self):
        g = gadget("house_lower")
        ws, trace = solve_house(g)
        assert trace.edges == {("a", "x"), ("b", "x"), ("c", "y")}
        assert ws == WinningSet((Matching.of(("a", "x"), ("c", "y")), Matching.of(("b", "x"))))
        assert verify_winning_set(g, ws).verdict
        assert trace.T == 2
        assert trace.steps[0].full_houses == ("x",) and trace.steps[0].threshold == 1

    def test_single_agent(self):
        ws, _ = solve_house(house({"a": ["x"]}, items=["x"]))
        assert ws == WinningSet((Matching.of(("a", "x")),))

    def test_four_agent(self, four_agent):
        ws, trace = solve_house(four_agent)
        assert trace.edges == {("i1", "x"), ("i3", "x"), ("i2", "y"), ("i4", "y")}
        assert ws == WinningSet((Matching.of(("i1", "x"), ("i2", "y")),
                                 Matching.of(("i3", "x"), ("i4", "y"))))
        assert verify_winning_set(four_agent, ws).verdict

    def test_agent_without_houses_stays_unmatched(self):
        inst = house({"a": ["x"], "b": ["x"], "c": ["x"], "d": []}, items=["x"])
        ws, trace = solve_house(inst)
        assert trace.steps[0].dropped == ("d",)
        assert verify_winning_set(inst, ws).verdict

    def test_wrong_kind(self):
        with pytest.raises(InstanceError):
            solve_house(roommates({"a": ["b"], "b": ["a"]}))

    def test_empty_instances(self):
        ws, trace = solve_house(house({}, items=["x"]))
        assert ws == WinningSet((Matching(),)) and trace.T == 0
        ws, trace = solve_house(house({"a": []}, items=[]))
        assert ws == WinningSet((Matching(),))

    def test_weight_order_is_stable(self):
        inst = house({"p": ["x"], "q": ["x"], "r": ["x"]}, items=["x"],
                     weights={"p": 1, "q": 2, "r": 1})
        assert rank_by_weight(inst, inst.agents) == ["q", "p", "r"]

    def test_trace_dump(self):
        text = solve_house(gadget("house_lower"))[1].dump()
        assert text.count("step ") == 2 and text.count("\nend") == 2
        assert "  pruning: b=keep a=keep" in text


def random_house(seed):
    rng = random.Random(seed)
    return random_instance(GeneratorConfig(
        "house", rng.randint(1, 6), rng.randint(1, 5), ties=rng.random() < 0.5,
        weight_range=(0, 4), density=rng.uniform(0.3, 1.0), seed=seed))


@pytest.mark.parametrize("seed", range(0, 120))
def test_trace_invariants(seed):
    inst = random_house(seed)
    ws, trace = solve_house(inst)   # claims are checked inside
    assert len(ws) <= 2
    assert trace.T <= len(inst.agents)
    prev = frozenset()
    for n, step in enumerate(trace.steps):
        assert step.allocated, "every step allocates someone"
        assert prev <= step.accumulated and not prev & step.matching.edges
        assert step.accumulated == prev | step.matching.edges
        prev = step.accumulated
        if n + 1 < trace.T:
            nxt = trace.steps[n + 1]
            assert set(nxt.agents) == set(step.agents) - set(step.allocated) - set(step.dropped)
            assert set(nxt.houses) == set(step.houses) - set(step.full_houses)
            assert len(step.allocated) == 2 * len(step.full_houses)
    agents = [a for a, _ in trace.edges]
    assert len(agents) == len(set(agents))
    assert verify_winning_set(inst, ws, max_edges=None).verdict
