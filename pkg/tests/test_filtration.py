import pytest

from sullivan.filtration import (FiltrationError, adapted_model, cautious_filtration, check_delta_injective,
                                 check_dnil_step_bound, classification_label, classify, filtration_mismatches,
                                 is_coformal, naive_filtration, nilpotency_class, split_differential)
from sullivan.io import bundled_models
from sullivan.linalg import Subspace
from sullivan.model import MinimalModel
from sullivan.sampler import random_models


def heisenberg():
    return MinimalModel.build("h", [("x", 1), ("y", 1), ("z", 1)], {"z": "x*y"})


def three_step():
    return MinimalModel.build("t", [("x", 1), ("y", 1), ("z", 1), ("w", 1)], {"z": "x*y", "w": "x*z"})


def mixed():
    # x acts on u in degree 2: dv = x*u
    return MinimalModel.build("m", [("x", 1), ("u", 2), ("v", 2)], {"v": "x*u"})


def span(labels, *vecs):
    return Subspace(labels, vecs)


def test_heisenberg_cautious_table():
    t = cautious_filtration(heisenberg())
    labels = t.labels[1]
    assert labels == ("x", "y", "z")
    assert t.space(1, 1) == span(labels, (1, 0, 0), (0, 1, 0))
    assert t.space(1, 2).dim == 3
    assert nilpotency_class(heisenberg()) == 2


def test_three_step_cautious_table():
    m = three_step()
    t = cautious_filtration(m)
    labels = t.labels[1]
    assert [t.space(1, J).dim for J in (1, 2, 3)] == [2, 3, 4]
    assert labels == ("w", "x", "y", "z")
    assert t.space(1, 2) == span(labels, (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    assert nilpotency_class(m) == 3


def test_naive_differs_from_cautious_in_degree_one():
    # w has dw = x*z = -z*x, which lies in V^1 ∧ W(1) because x is in W(1);
    # the cautious stage needs z itself at stage 1, so w waits until stage 3
    m = three_step()
    naive = naive_filtration(m)
    assert naive.space(1, 2).dim == 4
    assert cautious_filtration(m).space(1, 2).dim == 3
    mism = filtration_mismatches(m)
    assert [(n, J) for n, J, _, _ in mism] == [(1, 2)]


def test_degree_two_action():
    m = mixed()
    t = cautious_filtration(m)
    assert [t.space(2, J).dim for J in (1, 2)] == [1, 2]
    assert t.space(2, 1) == span(t.labels[2], (1, 0))
    assert nilpotency_class(m) == 2
    assert not filtration_mismatches(m)


def test_naive_contains_cautious_and_agree_above_degree_one():
    for m in random_models(60, seed=11):
        caut, naive = cautious_filtration(m), naive_filtration(m)
        depth = max(caut.depth(), naive.depth())
        for n in caut.degrees:
            for J in range(1, depth + 1):
                assert caut.space(n, J) <= naive.space(n, J)
                if n >= 2:
                    assert caut.space(n, J) == naive.space(n, J), (m.name, n, J)


def test_non_nilpotent_does_not_exhaust():
    m = MinimalModel.build("bad", [("x", 1), ("u", 1)], {"u": "u*x"})
    assert not cautious_filtration(m).exhausted
    with pytest.raises(FiltrationError):
        nilpotency_class(m)


def test_adapted_basis_and_split():
    a = adapted_model(mixed())
    assert a.step("v") == 2 and a.step("u") == 1 and a.step("x") == 1
    s = split_differential(a, "v")
    assert not s.simple
    assert set(s.blocks) == {(1, 1)}
    assert s.delta == a.model.differential("v")


def test_adapted_basis_renames_straddling_generator():
    # Heisenberg in the basis x, p = y + z, z: then dp = dz = x*p - x*z, the
    # closed part of V^1 is span{x, p - z} and neither p nor z lies in a step
    m = MinimalModel.build("s", [("x", 1), ("p", 1), ("z", 1)], {"p": "x*p - x*z", "z": "x*p - x*z"})
    assert m.validation.ok
    t = cautious_filtration(m)
    labels = t.labels[1]

    def vec(**coords):
        return tuple(coords.get(lab, 0) for lab in labels)

    assert t.space(1, 1) == span(labels, vec(x=1), vec(p=1, z=-1))
    a = adapted_model(m)
    assert sorted(a.step(g.name) for g in a.model.generators) == [1, 1, 2]
    assert "x" in a.basis
    assert a.model.validation.ok
    assert check_delta_injective(m).ok and check_dnil_step_bound(m).ok


def test_delta_injective_and_dnil_bound_on_corpus():
    for m in random_models(40, seed=5):
        assert check_delta_injective(m).ok, m.name
        assert check_dnil_step_bound(m).ok, m.name


def test_classify_bundled():
    labels = {name: classification_label(classify(m)) for name, m in bundled_models().items()}
    assert labels["heisenberg"] == "2-step nilpotent, coformal"
    assert labels["three_step"] == "3-step nilpotent, coformal"
    assert labels["s2"] == "simply connected, coformal"
    assert labels["s3"] == "simply connected, coformal"
    assert labels["cubic"] == "simply connected"
    assert not is_coformal(bundled_models()["cubic"])
