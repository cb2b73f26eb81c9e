from dataclasses import replace
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from netctrl.controllability import is_controllable
from netctrl.designer import (
    OPT_I,
    OPT_II,
    DesignTooSmall,
    InvalidSpec,
    QcdDesignSpec,
    build_design,
    design_sigma,
    dump_spec,
    example_spec,
    load_spec,
    random_design,
    validate_design,
)
from netctrl.exactalg import verify_eigenpair
from netctrl.graph import GraphError, laplacian


def minimal_case2():
    return QcdDesignSpec(
        n=7,
        roles={"p": 1, "q": 2, "s1": 3, "s2": 4, "t1": 5, "t2": 6},
        step1={"s1": OPT_I, "s2": OPT_II, "t1": OPT_I, "t2": OPT_II},
        partner={"s1": 6, "t1": 4},
        step3={"p": (3, 5), "q": (3, 5)},
        case2_s=True,
        omega_pq=(7,),
    )


@pytest.mark.parametrize("sigma,lam", [(2, 6), (1, 5)])
def test_example_reconstructions(sigma, lam):
    out = build_design(example_spec(sigma))
    assert out.sigma == sigma and out.eigenvalue == lam
    # proportional (factor -2) to [0, -0.5, 0, -0.5, 0.5, 0.5, 0, 0, 0]
    ref = [0, Fraction(-1, 2), 0, Fraction(-1, 2), Fraction(1, 2), Fraction(1, 2), 0, 0, 0]
    assert list(out.eta) == [-2 * x for x in ref]
    assert verify_eigenpair(laplacian(out.graph), lam, ref)


@pytest.mark.parametrize("sigma", [0, 1, 2, 3])
def test_example_sigma_range(sigma):
    assert build_design(example_spec(sigma)).eigenvalue == sigma + 4
    with pytest.raises(ValueError):
        example_spec(4)


def test_minimal_case2():
    spec = minimal_case2()
    assert validate_design(spec) == []
    out = build_design(spec)
    assert out.sigma == 0 and out.eigenvalue == 4
    assert out.graph.degree(3) == 4 and out.graph.degree(4) == 3


def test_all_opt2_case2_is_rejected():
    spec = replace(minimal_case2(), step1={k: OPT_II for k in ("s1", "s2", "t1", "t2")}, partner={})
    # Step 3 wires p and q into each pair, which an all-OptII quad forbids
    for s_node in (3, 4):
        for t_node in (5, 6):
            errs = validate_design(replace(spec, step3={"p": (s_node, t_node), "q": (s_node, t_node)}))
            assert any(" ii): " in e for e in errs)


def test_step1_violation():
    spec = replace(example_spec(2), partner={"s1": 5, "t1": 4})
    errs = validate_design(spec)
    assert any(e.startswith("Step 1 i)") for e in errs)
    with pytest.raises(InvalidSpec) as err:
        build_design(spec)
    assert err.value.violations == errs


def test_step4b_violation():
    spec = example_spec(2)
    bad = replace(spec, omega_edges=spec.omega_edges + ((2, 9),))
    errs = validate_design(bad)
    assert any(e.startswith("Step 4 b)") and "9" in e for e in errs)


def test_step3_violation():
    spec = replace(example_spec(2), step3={"p": (2, 5), "q": (4, 5)})
    assert any(e.startswith("Step 3") or e.startswith("Step 1") for e in validate_design(spec))


def test_step4a_violation():
    spec = example_spec(1)
    bad = replace(spec, omega_edges=spec.omega_edges + ((1, 9),))
    assert any(e.startswith("Step 4 a)") for e in validate_design(bad))


def test_structural_errors():
    spec = replace(minimal_case2(), n=6, omega_pq=())
    assert any(e.startswith("size") for e in validate_design(spec))
    spec = replace(minimal_case2(), roles={"p": 1, "q": 1, "s1": 3, "s2": 4, "t1": 5, "t2": 6})
    assert any(e.startswith("roles") for e in validate_design(spec))


@pytest.mark.parametrize("n,seed", [(9, 42), (7, 7), (12, 3)])
def test_random_design_is_valid_and_deterministic(n, seed):
    spec = random_design(n, seed)
    assert spec == random_design(n, seed)
    assert validate_design(spec) == []
    out = build_design(spec)
    assert out.eigenvalue == design_sigma(spec) + 4


def test_random_design_too_small():
    with pytest.raises(DesignTooSmall):
        random_design(6, 1)


def test_yaml_round_trip():
    for spec in (example_spec(2), minimal_case2(), random_design(10, 5)):
        text = dump_spec(spec)
        assert load_spec(text) == spec
        assert dump_spec(load_spec(text)) == text


def test_yaml_rejects_other_documents():
    with pytest.raises(GraphError):
        load_spec("format: netctrl-report\nversion: 1\n")


@given(st.integers(7, 12), st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_designs_carry_the_promised_eigenvector(n, seed):
    spec = random_design(n, seed)
    out = build_design(spec)
    g = out.graph
    assert verify_eigenpair(laplacian(g), out.eigenvalue, list(out.eta))
    assert {v for v in range(1, n + 1) if out.eta[v - 1]} == set(spec.quad)
    assert sum(out.eta) == 0
    quad = set(spec.quad)
    others = [v for v in range(1, n + 1) if v not in quad]
    for size in (1, 2):
        for leaders in list(combinations(others, size))[:4]:
            assert not is_controllable(g, leaders)
