import pytest

from gyrolab import oracles
from gyrolab.finite import cyclic_group
from gyrolab.search import reverify, search_counterexample
from gyrolab.topology import FiniteTopology


@pytest.mark.parametrize("order", [2, 3])
def test_question_318_small_orders(order):
    rep = search_counterexample("question-3.18", order)
    assert rep.status == "pass" and not rep.truncated
    assert rep.counterexample is None
    assert "range exhausted" in rep.statement
    # every gyrogroup here is a group, so all are set aside as gyrocommutative
    assert all(row["skipped_gyrocommutative"] == row["gyrogroups"] for row in rep.per_order.values())


def test_question_318_through_order_eight():
    rep = search_counterexample("question-3.18", 8)
    assert rep.status == "pass"
    assert rep.per_order[8]["topologies"] > 0


@pytest.mark.parametrize("strategy,order", [("preorders", 5), ("translates", 8)])
def test_question_33(strategy, order):
    rep = search_counterexample("question-3.3", order, strategy=strategy)
    assert rep.status == "pass" and rep.counterexample is None


def test_strategies_agree_on_candidates():
    a = search_counterexample("question-3.3", 5, strategy="preorders")
    b = search_counterexample("question-3.3", 5, strategy="translates")
    assert {k: v["candidates"] for k, v in a.per_order.items()} == \
           {k: v["candidates"] for k, v in b.per_order.items()}


def test_budget_truncates():
    rep = search_counterexample("question-3.18", 8, budget=5)
    assert rep.truncated and rep.status == "skipped"
    assert "partial" in rep.statement


def test_deterministic():
    a = search_counterexample("question-3.18", 8, seed=1).to_dict()
    b = search_counterexample("question-3.18", 8, seed=1).to_dict()
    assert a == b


def test_bad_arguments():
    with pytest.raises(ValueError):
        search_counterexample("question-9", 3)
    with pytest.raises(ValueError):
        search_counterexample("question-3.18", 3, budget=0)
    with pytest.raises(ValueError):
        search_counterexample("question-3.18", 3, strategy="random")


def test_reverify_uses_definitions():
    # a non-candidate must fail the independent re-checks
    tau = FiniteTopology.from_sets(2, [[], [0], [0, 1]])
    checks = reverify("question-3.18", cyclic_group(2), tau)
    assert not all(checks.values())
    assert checks["paratopological"] == oracles.paratopological_by_opens(cyclic_group(2), tau)
