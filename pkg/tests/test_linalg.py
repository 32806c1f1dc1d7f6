from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from affstanley.errors import InconsistencyError
from affstanley.linalg import Echelon, express, rank, solve_linear


def test_unique_solution():
    eqs = [({"x": 1, "y": 1}, 3), ({"x": 1, "y": -1}, 1)]
    assert solve_linear(eqs, ["x", "y"]) == {"x": 2, "y": 1}


def test_inconsistent():
    with pytest.raises(InconsistencyError):
        solve_linear([({"x": 1}, 1), ({"x": 2}, 3)], ["x"])


def test_underdetermined():
    with pytest.raises(InconsistencyError):
        solve_linear([({"x": 1, "y": 1}, 1)], ["x", "y"])
    sol = solve_linear([({"x": 1, "y": 1}, 1)], ["x", "y"], require_unique=False)
    assert sol["x"] + sol["y"] == 1


def test_rank_and_express():
    vecs = [{0: 1, 1: 1}, {1: 1, 2: 1}, {0: 1, 2: -1}]
    assert rank(vecs) == 2
    assert express({"a": vecs[0], "b": vecs[1]}, {0: 1, 2: -1}) == {"a": 1, "b": -1}
    assert express({"a": vecs[0]}, {2: 1}) is None


matrices = st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3)


@given(matrices, st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_solution_satisfies_system(rows, x):
    """Solving A y = A x recovers x whenever A is invertible."""
    A = [[Fraction(v) for v in row] for row in rows]
    b = [sum(a * xi for a, xi in zip(row, x)) for row in A]
    eqs = [({j: row[j] for j in range(3)}, b[i]) for i, row in enumerate(A)]
    if rank([{j: v for j, v in enumerate(row) if v} for row in A]) < 3:
        with pytest.raises(InconsistencyError):
            solve_linear(eqs, [0, 1, 2])
        return
    sol = solve_linear(eqs, [0, 1, 2])
    assert [sol[j] for j in range(3)] == x


@given(st.lists(st.dictionaries(st.integers(0, 4), st.integers(-3, 3), max_size=5), max_size=6))
def test_express_roundtrip(vectors):
    ech = Echelon()
    kept = {}
    for k, v in enumerate(vectors):
        v = {a: b for a, b in v.items() if b}
        if ech.add(v, k):
            kept[k] = v
    for v in vectors:
        combo = ech.express({a: b for a, b in v.items() if b})
        assert combo is not None
        total = {}
        for label, c in combo.items():
            for a, b in kept[label].items():
                total[a] = total.get(a, 0) + c * b
        assert {a: b for a, b in total.items() if b} == {a: b for a, b in v.items() if b}
