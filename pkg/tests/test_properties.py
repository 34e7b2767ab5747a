"""Property-based checks of the algebraic identities."""

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from sullivan import homotopy as hc
from sullivan.gca import Element, Generator, GradedAlgebra
from sullivan.lie import TorusAction, _random_lie, bracket
from sullivan.model import MinimalModel

ALG = GradedAlgebra([Generator("x", 1), Generator("y", 1), Generator("u", 2), Generator("v", 3)], truncation=8)
MONOS = [m for k in range(0, 7) for m in ALG.monomials(k)]

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
elements = st.dictionaries(st.sampled_from(MONOS), coeffs, max_size=4).map(lambda t: Element(ALG, t))


def homogeneous_parts(e):
    return list(e.homogeneous_parts().items())


@given(elements, elements, elements)
def test_product_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(elements, elements)
def test_graded_commutative(a, b):
    for p, ap in homogeneous_parts(a):
        for q, bq in homogeneous_parts(b):
            sign = -1 if p * q % 2 else 1
            assert ap * bq == (bq * ap).scale(sign)


@given(elements, elements, elements)
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


HEIS = MinimalModel.build("h", [("x", 1), ("y", 1), ("z", 1), ("u", 2)], {"z": "x*y", "u": "x*y*z"}, 2)
SPACE = hc.IntervalAlgebra(hc.FreeDga(HEIS))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_interval_differential_squares_to_zero_and_is_derivation(seed):
    rng = random.Random(seed)
    u = hc.random_interval_element(rng, SPACE, max_degree=3)
    w = hc.random_interval_element(rng, SPACE, max_degree=3)
    assert not SPACE.d(SPACE.d(u))
    # Leibniz on homogeneous pieces of u
    for deg in sorted(u.degrees()):
        part = _degree_part(u, deg)
        lhs = SPACE.d(part * w)
        rhs = SPACE.d(part) * w + (part * SPACE.d(w)).scale(-1 if deg % 2 else 1)
        assert lhs == rhs


def _degree_part(u, deg):
    poly = {i: b.homogeneous_parts().get(deg, b.algebra.zero()) for i, b in u.poly.items()}
    dt = {i: b.homogeneous_parts().get(deg - 1, b.algebra.zero()) for i, b in u.dt.items()}
    return hc.IntervalElement(u.space, poly, dt)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_fundamental_theorems_property(seed):
    rng = random.Random(seed)
    assert hc.check_fundamental_theorems(hc.random_interval_element(rng, SPACE, terms=6)).ok


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_lie_identities(seed, c):
    rng = random.Random(seed)
    D = TorusAction(c)
    x, y, z = (_random_lie(rng, D, 2) for _ in range(3))
    assert D(bracket(x, y)) == bracket(D(x), y) + bracket(x, D(y))
    try:
        dx, dy = x.degree, y.degree
    except ValueError:
        return
    sign = -1 if dx * dy % 2 else 1
    assert bracket(x, y) + bracket(y, x).scale(sign) == bracket(x, y).scale(0)
    assert bracket(x, bracket(y, z)) == bracket(bracket(x, y), z) + bracket(y, bracket(x, z)).scale(sign)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_dilatation_monotone_in_L(seed):
    rng = random.Random(seed)
    H = hc.random_homotopy(rng, HEIS)
    dil = hc.dilatation(H.end)
    Ls = sorted(Fraction(rng.randint(1, 40), rng.randint(1, 5)) for _ in range(5))
    results = [dil.at_most(L) for L in Ls]
    assert results == sorted(results)
