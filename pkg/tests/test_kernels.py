import pytest
from hypothesis import given, settings, strategies as st

from netctrl import _pykernels, kernels
from netctrl.graph import enumerate_connected_graphs, laplacian

BACKENDS = kernels.available_backends()


def cofactor_det(m):
    if not m:
        return 1
    total = 0
    for j, a in enumerate(m[0]):
        if a:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * a * cofactor_det(minor)
    return total


def brute_connected(rows, n):
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for w in range(n):
            if (rows[v] >> w) & 1 and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def test_backend_selected():
    assert kernels.BACKEND in BACKENDS


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.backend_module("fortran")


@pytest.mark.parametrize("name", BACKENDS)
def test_charpoly_k3(name):
    mod = kernels.backend_module(name)
    assert list(mod.charpoly([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])) == [0, 9, -6, 1]


@pytest.mark.parametrize("name", BACKENDS)
def test_rank_examples(name):
    mod = kernels.backend_module(name)
    assert mod.int_rank([[1, 2], [2, 4]]) == 1
    assert mod.int_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert mod.int_rank([[0, 0], [0, 0]]) == 0
    assert mod.int_rank([[0, 1, 2], [0, 2, 4], [1, 0, 0]]) == 2


@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=4, max_size=4),
       st.integers(-5, 5))
@settings(max_examples=60, deadline=None)
def test_charpoly_matches_cofactor(m, t):
    for name in BACKENDS:
        coeffs = kernels.backend_module(name).charpoly(m)
        value = sum(c * t ** k for k, c in enumerate(coeffs))
        shifted = [[(t if i == j else 0) - m[i][j] for j in range(4)] for i in range(4)]
        assert value == cofactor_det(shifted)


@given(st.lists(st.lists(st.integers(-4, 4), min_size=5, max_size=5), min_size=1, max_size=6))
@settings(max_examples=80, deadline=None)
def test_rank_parity(m):
    import sympy

    ranks = {kernels.backend_module(name).int_rank(m) for name in BACKENDS}
    assert ranks == {sympy.Matrix(m).rank()}


def test_overflow_falls_back_to_python():
    big = [[2 ** 40, 1], [3, 2 ** 40]]
    assert kernels.int_rank(big) == 2
    assert list(kernels.charpoly(big)) == list(_pykernels.charpoly(big))
    assert kernels.charpoly(big)[0] == 2 ** 80 - 3


def test_parity_on_all_five_vertex_graphs():
    graphs = list(enumerate_connected_graphs(5))
    for name in BACKENDS:
        mod = kernels.backend_module(name)
        for g in graphs[::7]:
            lap = laplacian(g)
            assert mod.is_connected_rows(g.rows, g.n) == brute_connected(g.rows, g.n)
            assert list(mod.charpoly(lap)) == list(_pykernels.charpoly(lap))
            assert mod.int_rank(lap) == 4
            for k in (-1, 0, 3):
                assert mod.canonical_code(g.rows, g.n, k) == _pykernels.canonical_code(g.rows, g.n, k)


def test_disconnected_rows():
    for name in BACKENDS:
        mod = kernels.backend_module(name)
        assert not mod.is_connected_rows((0, 0), 2)
        assert mod.is_connected_rows((0,), 1)
