from fractions import Fraction

import pytest

from sullivan.gca import AlgebraError, Derivation, Generator, GradedAlgebra, check_d_squared, wedge, wordlength_component
from sullivan.model import MinimalModel


@pytest.fixture
def alg():
    return GradedAlgebra([Generator("x", 1), Generator("y", 1), Generator("u", 2), Generator("v", 3)])


def test_odd_generators_anticommute(alg):
    x, y = alg.gen("x"), alg.gen("y")
    assert x * y == -(y * x)
    assert x * x == alg.zero()


def test_even_generators_commute(alg):
    u, x = alg.gen("u"), alg.gen("x")
    assert u * x == x * u
    assert u * u != alg.zero()
    assert str(u ** 3) == "u^3"


def test_koszul_sign_on_longer_monomials(alg):
    x, y, v = alg.gen("x"), alg.gen("y"), alg.gen("v")
    # moving v (odd) past x*y (even total degree) costs no sign
    assert v * (x * y) == (x * y) * v
    # v*x = -x*v since both are odd
    assert v * x == -(x * v)


def test_rational_coefficients_and_degree(alg):
    e = alg.gen("u").scale(Fraction(1, 3)) + alg.gen("x") * alg.gen("y")
    assert e.degree == 2
    assert e.is_homogeneous(2)
    assert str(e) == "1/3*u + x*y"


def test_inhomogeneous_degree_raises(alg):
    e = alg.gen("u") + alg.gen("x")
    assert not e.is_homogeneous()
    with pytest.raises(AlgebraError):
        e.degree


def test_truncation_drops_high_degrees():
    a = GradedAlgebra([Generator("u", 2)], truncation=4)
    u = a.gen("u")
    assert u * u != a.zero()
    assert u * u * u == a.zero()


def test_monomials_are_a_basis(alg):
    # degree 2 monomials: x*y and u
    assert len(alg.monomials(2)) == 2
    # degree 4: u^2, x*v, y*v, x*y*u
    assert len(alg.monomials(4)) == 4


def test_wedge_matches_product(alg):
    assert wedge(alg.gen("x"), alg.gen("u")) == alg.gen("x") * alg.gen("u")


def test_derivation_leibniz_sign():
    a = GradedAlgebra([Generator("x", 1), Generator("y", 1), Generator("z", 1)])
    d = Derivation(a, {"x": a.zero(), "y": a.zero(), "z": a.gen("x") * a.gen("y")})
    x, z = a.gen("x"), a.gen("z")
    # d(zx) = dz*x - z*dx = xyx = 0, d(z*y) = x*y*y = 0; d(x*z) = -x*dz = -x*x*y = 0
    assert d(z * x) == a.zero()
    b = GradedAlgebra([Generator("u", 2), Generator("v", 3)])
    dv = Derivation(b, {"u": b.zero(), "v": b.gen("u") ** 2})
    # d(u*v) = u*dv = u^3
    assert dv(b.gen("u") * b.gen("v")) == b.gen("u") ** 3
    # d(v*u) = dv*u
    assert dv(b.gen("v") * b.gen("u")) == b.gen("u") ** 3


def test_derivation_degree_check():
    a = GradedAlgebra([Generator("x", 2), Generator("y", 3)])
    with pytest.raises(AlgebraError, match="degree mismatch"):
        Derivation(a, {"y": a.gen("x")})


def test_check_d_squared():
    a = GradedAlgebra([Generator("a", 2), Generator("b", 3), Generator("c", 4)])
    d = Derivation(a, {"a": a.zero(), "b": a.gen("a") ** 2, "c": a.gen("a") * a.gen("b")})
    bad = check_d_squared(d)
    assert set(bad) == {"c"}
    assert bad["c"] == a.gen("a") ** 3


def test_wordlength_component():
    m = MinimalModel.build("m", [("x", 2), ("z", 5), ("w", 3)], {"z": "x^3", "w": "x^2"})
    # d_1 is the quadratic part, d_2 the cubic part
    d1, d2 = wordlength_component(m.d, 1), wordlength_component(m.d, 2)
    assert d1.image("w") == m.gen("x") ** 2
    assert not d1.image("z")
    assert d2.image("z") == m.gen("x") ** 3
    assert m.differential("z").min_wordlength() == 3
