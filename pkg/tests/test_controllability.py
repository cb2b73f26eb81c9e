import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from netctrl import serialize
from netctrl.controllability import (
    ControllabilityReport,
    InconsistentVerdict,
    controllability_matrix,
    controllability_report,
    eigencondition_residual,
    is_controllable,
    kalman_controllable,
    leader_vanishing_eigenvectors,
    normalize_vector,
    shared_eigenvalue_test,
)
from netctrl.exactalg import DimensionMismatch, IntegerPolynomial, rational_rank
from netctrl.graph import (
    DisconnectedGraph,
    complete_graph,
    cycle_graph,
    follower_partition,
    graph_from_edges,
    path_graph,
    star_graph,
)

from conftest import graph_and_leaders


def test_kalman_examples():
    assert kalman_controllable(follower_partition(path_graph(2), [1]))
    assert not kalman_controllable(follower_partition(complete_graph(3), [1]))
    assert kalman_controllable(follower_partition(path_graph(3), [1]))
    assert rational_rank(controllability_matrix(follower_partition(complete_graph(3), [1]))) == 1


def test_controllability_matrix_p3():
    m = controllability_matrix(follower_partition(path_graph(3), [1]))
    # [R | F R] with R = [-1, 0]^T, F = [[2, -1], [-1, 1]]
    assert m == [[-1, -2], [0, 1]]


def test_shared_eigenvalue_examples():
    assert shared_eigenvalue_test(complete_graph(3), [1]) == (True, IntegerPolynomial((-3, 1)))
    assert shared_eigenvalue_test(path_graph(3), [1]) == (False, IntegerPolynomial((1,)))
    assert shared_eigenvalue_test(path_graph(3), [2]) == (True, IntegerPolynomial((-1, 1)))
    with pytest.raises(DisconnectedGraph):
        shared_eigenvalue_test(graph_from_edges(3, [(1, 2)]), [1])


def test_certificate_examples():
    (c,) = leader_vanishing_eigenvectors(complete_graph(3), [1])
    assert c.eigenvalue == 3 and c.vector == (0, 1, -1) and c.support == (2, 3)
    (c,) = leader_vanishing_eigenvectors(path_graph(3), [2])
    assert c.eigenvalue == 1 and c.vector == (1, 0, -1)
    assert leader_vanishing_eigenvectors(path_graph(3), [1]) == []


def test_irrational_certificate():
    # P5 with the centre as leader: eigenvalues (3 +- sqrt 5)/2 survive
    certs = leader_vanishing_eigenvectors(path_graph(5), [3])
    moduli = {c.modulus for c in certs}
    assert IntegerPolynomial((1, -3, 1)) in moduli
    for c in certs:
        assert c.verify(path_graph(5))
        assert not c.vector[2]


def test_residual_examples():
    k3 = complete_graph(3)
    assert eigencondition_residual(k3, 3, [0, 1, -1]) == [0, 0, 0]
    # node 1: 2*0 - (1 + 1) - 3*0 = -2; nodes 2, 3: 2*1 - (0 + 1) - 3*1 = -2
    assert eigencondition_residual(k3, 3, [0, 1, 1]) == [-2, -2, -2]
    assert eigencondition_residual(path_graph(2), 0, [1, 1]) == [0, 0]
    with pytest.raises(DimensionMismatch):
        eigencondition_residual(k3, 3, [0, 1])


def test_report_examples():
    rep = controllability_report(complete_graph(3), [1])
    assert not rep.controllable and len(rep.certificates) == 1
    rep = controllability_report(path_graph(3), [1])
    assert rep.controllable and rep.certificates == ()
    assert not controllability_report(star_graph(3), [1]).controllable


def test_multi_leader_shared_root_is_not_uncontrollable():
    # path 2-1-3, leaders {1, 2}: F = [1] shares the root 1 with L
    g = star_graph(2)
    found, common = shared_eigenvalue_test(g, [1, 2])
    assert found and common == IntegerPolynomial((-1, 1))
    rep = controllability_report(g, [1, 2])
    assert rep.controllable and rep.shared_eigenvalue_found and rep.certificates == ()


def test_report_rejects_inconsistent_fields():
    g = complete_graph(3)
    with pytest.raises(InconsistentVerdict):
        ControllabilityReport(g, (1,), True, True, IntegerPolynomial((-3, 1)), ())
    good = controllability_report(g, [1])
    with pytest.raises(InconsistentVerdict):
        ControllabilityReport(g, (1,), True, True, good.gcd_poly, good.certificates)


@given(graph_and_leaders(2, 6))
@settings(max_examples=120, deadline=None)
def test_certificates_verify_and_vanish_on_leaders(case):
    g, leaders = case
    rep = controllability_report(g, leaders)
    assert rep.controllable == is_controllable(g, leaders)
    for c in rep.certificates:
        assert c.verify(g)
        assert all(not c.vector[v - 1] for v in leaders)
        assert c.support and c.eigenvalue != 0
    if len(leaders) == 1:
        assert rep.controllable != rep.shared_eigenvalue_found
    if not rep.controllable:
        assert rep.shared_eigenvalue_found


@given(graph_and_leaders(2, 6))
@settings(max_examples=60, deadline=None)
def test_verdict_invariant_under_relabelling(case):
    g, leaders = case
    perm = list(range(1, g.n + 1))
    random.Random(str(g.rows)).shuffle(perm)
    h = g.relabel(perm)
    moved = [perm[v - 1] for v in leaders]
    assert is_controllable(g, leaders) == is_controllable(h, moved)


def test_normalize_vector():
    assert normalize_vector([Fraction(1, 2), Fraction(-3, 2), 0]) == (1, -3, 0)
    assert normalize_vector([0, -2, 4]) == (0, 1, -2)
    assert normalize_vector([0, 3, -3]) == (0, 1, -1)


@pytest.mark.parametrize("g,leaders", [
    (complete_graph(3), [1]),
    (path_graph(5), [3]),
    (cycle_graph(5), [1]),
    (path_graph(4), [1, 4]),
])
def test_report_serialization_round_trip(g, leaders):
    rep = controllability_report(g, leaders)
    text = serialize.dump(serialize.report_to_dict(rep))
    assert text.startswith("format: netctrl-report\nversion: 1\n")
    assert serialize.report_from_dict(serialize.load(text, "controllability")) == rep
    assert serialize.dump(serialize.report_to_dict(controllability_report(g, leaders))) == text


def test_serialization_rejects_foreign_documents():
    with pytest.raises(serialize.FormatError):
        serialize.load("format: other\n")
    with pytest.raises(serialize.FormatError):
        serialize.load("format: netctrl-report\nversion: 9\n")
    with pytest.raises(serialize.FormatError):
        serialize.load("format: netctrl-report\nversion: 1\nkind: design\n", "controllability")
