import pytest

from sullivan.lie import (LieElement, LieError, LieGenerator, TorusAction, bracket, iterated_bracket, retract,
                          scaling_weight, t_bracket, verify_jacobi_lemmas, verify_nonvanishing, verify_scaling, zeta)


def test_odd_bracket_is_anticommutator():
    D = TorusAction(2)
    a, b = D.alpha(1), D.beta(1)
    assert bracket(a, b).terms == {("a1", "b1"): 1, ("b1", "a1"): 1}
    assert bracket(a, a).terms == {("a1", "a1"): 2}


def test_even_bracket_is_commutator():
    u = {"p": LieGenerator("p", 2), "q": LieGenerator("q", 2)}
    p, q = LieElement.generator(u, "p"), LieElement.generator(u, "q")
    assert bracket(p, q).terms == {("p", "q"): 1, ("q", "p"): -1}
    assert not bracket(p, p)


def test_t_bracket():
    D = TorusAction(3)
    assert t_bracket(D, D.alpha(1)) == D.alpha(2)
    assert not t_bracket(D, D.alpha(3))
    assert t_bracket(D, bracket(D.alpha(1), D.beta(1))) == bracket(D.alpha(2), D.beta(1)) + bracket(D.alpha(1), D.beta(2))
    assert D.matrix() == [[0, 0, 0], [1, 0, 0], [0, 1, 0]]


def test_zeta_small_values():
    assert zeta(2, 1, 2) == TorusAction(2).beta(1)
    assert zeta(2, 3, 3) == TorusAction(3).beta(3)
    D1 = TorusAction(1)
    assert zeta(3, 1, 1) == bracket(D1.alpha(1), D1.beta(1))
    z = zeta(3, 2, 2)
    assert z.terms[("a2", "b2")] != 0


def test_zeta_out_of_range():
    with pytest.raises(LieError):
        zeta(1, 1, 2)
    with pytest.raises(LieError):
        zeta(3, 3, 2)


def test_scaling_weights():
    D = TorusAction(3)
    assert scaling_weight(D.alpha(2)) == 3
    for c in (1, 2, 3):
        assert scaling_weight(zeta(2, c, c)) == c + 1
        assert scaling_weight(zeta(3, c, c)) == 2 * (c + 1)
    mixed = D.alpha(1) + D.alpha(2)
    assert scaling_weight(mixed) == {("a1",): 2, ("a2",): 3}


def test_jacobi_lemmas_k4_c2():
    rep = verify_jacobi_lemmas(4, 2)
    assert rep.ok and rep.checks > 0


def test_c1_top_class_is_killed():
    D = TorusAction(1)
    assert not D(D.beta(1))
    assert verify_jacobi_lemmas(2, 1).ok


@pytest.mark.parametrize("c", [1, 2, 3])
def test_full_suite(c):
    assert verify_jacobi_lemmas(6, c).ok
    assert verify_nonvanishing(6, c).ok
    assert verify_scaling(6, c).ok


def test_retraction_is_iterated_bracket():
    # ζ_{4,2} retracts to [A, [A, B]]
    r = retract(zeta(4, 2, 2), 2)
    hat = r.universe
    A, B = LieElement.generator(hat, "A"), LieElement.generator(hat, "B")
    assert r == iterated_bracket([A, A], B)
    assert r.terms == {("A", "A", "B"): 1, ("B", "A", "A"): -1}


def test_zeta_k4_c3_nonzero():
    assert zeta(4, 3, 3)
