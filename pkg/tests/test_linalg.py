from fractions import Fraction as F

from sullivan.linalg import Subspace, nullspace, rank, rref, solve, transpose


def test_rank_and_nullspace():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert rank(rows) == 2
    ns = nullspace(rows, 3)
    assert len(ns) == 1
    v = ns[0]
    for r in rows:
        assert sum(F(a) * b for a, b in zip(r, v)) == 0


def test_rref_pivots():
    reduced, pivots = rref([[0, 2, 4], [1, 1, 1]], 3)
    assert pivots == [0, 1]


def test_solve_exact_rational():
    cols = [[1, 0], [1, 3]]          # columns of [[1, 1], [0, 3]]
    x = solve(cols, [F(1), F(1)])
    assert x is not None
    assert x[0] + x[1] == 1 and 3 * x[1] == 1
    assert solve([[1, 0]], [0, 1]) is None


def test_transpose():
    assert transpose([[1, 2], [3, 4], [5, 6]]) == [[1, 3, 5], [2, 4, 6]]


def test_subspace_lattice():
    labels = ("a", "b", "c")
    U = Subspace(labels, [(1, 0, 0), (0, 1, 0)])
    W = Subspace(labels, [(0, 1, 0), (0, 0, 1)])
    assert (U & W).dim == 1
    assert (U + W).dim == 3
    assert (U & W).contains((0, 5, 0))
    assert U & W <= U
    assert U.orthogonal_complement() == Subspace(labels, [(0, 0, 1)])
    assert (U & W).complement_in(U).dim == 1


def test_subspace_equality_ignores_spanning_set():
    labels = ("a", "b")
    assert Subspace(labels, [(1, 1), (1, -1)]) == Subspace(labels, [(1, 0), (0, F(1, 2))])
