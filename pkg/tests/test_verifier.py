import random

import pytest

from netctrl.controllability import InconsistentVerdict
from netctrl.destructive import QcdCatalog
from netctrl.graph import is_connected
from netctrl.verifier import (
    SUITES,
    UnknownSuite,
    VerificationRun,
    random_connected_graph,
    run_suite,
    verify_fact1,
    verify_prop1,
    verify_theorem1,
    verify_theorem2,
    verify_theorem4,
)
from netctrl import serialize
from netctrl.graph import path_graph


def test_random_graphs_are_connected_and_seeded():
    a = [random_connected_graph(6, random.Random(3)) for _ in range(2)]
    assert a[0] == a[1] and is_connected(a[0])


def test_run_bookkeeping():
    run = VerificationRun("demo")
    run.record(True, path_graph(2), (1,))
    run.record(False, path_graph(3), (2,), "why")
    run.finish(0.0)
    assert run.instance_count == 2 and run.agreements == 1 and not run.passed
    doc = serialize.load(serialize.dump(run.to_dict()), "verification")
    assert "elapsed" not in doc and doc["counterexamples"][0]["details"] == "why"
    assert run.summary() == "demo: 2 instances, 1 agree, 1 counterexamples"


def test_prop1_small_split_by_leader_count():
    run = verify_prop1(4, eigenvectors=True)
    assert run.instance_count == 558
    assert run.notes["single_leader_disagreements"] == 0
    assert run.notes["uncontrollable_without_shared_root"] == 0
    assert run.notes["eigenvector_disagreements"] == 0
    assert len(run.counterexamples) == run.notes["multi_leader_disagreements"] > 0
    assert all(len(c.subject) > 1 for c in run.counterexamples)


def test_prop1_bounds():
    with pytest.raises(ValueError):
        verify_prop1(8)


@pytest.mark.parametrize("n,count", [(3, 12), (4, 228)])
def test_theorem1_small(n, count):
    run = verify_theorem1(n)
    assert run.passed and run.instance_count == count


def test_theorem2_small():
    run = verify_theorem2(4)
    assert run.passed and run.instance_count == 152
    with pytest.raises(ValueError):
        verify_theorem2(3)


def test_fact1_exhaustive_small():
    run = verify_fact1(5)
    assert run.passed and run.notes["witnesses"] > 0
    with pytest.raises(ValueError):
        verify_fact1(3)


def test_theorem4_rejects_a_catalog_that_disagrees_with_the_oracle():
    with pytest.raises(InconsistentVerdict):
        verify_theorem4(QcdCatalog(frozenset()))


def test_suite_names():
    assert set(SUITES) == {"prop1", "t1", "t2", "fact1", "t4"}
    with pytest.raises(UnknownSuite):
        run_suite("bogus")
    runs = run_suite("t1", 3)
    assert [r.theorem for r in runs] == ["t1"]
