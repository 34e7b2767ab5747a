import pytest

from sullivan.io import bundled_models
from sullivan.model import MinimalModel


def test_heisenberg_tower():
    m = MinimalModel.build("h", [("x", 1), ("y", 1), ("z", 1)], {"z": "x*y"})
    v = m.validate()
    assert v.ok
    assert v.tower_names() == [["x", "y"], ["x", "y", "z"]]


def test_minimality_violation_reported():
    m = MinimalModel.build("m", [("z", 1), ("x", 2)], {"z": "x"})
    v = m.validate()
    assert not v.ok
    assert v.minimality == ["z"]
    assert "word length 1 violates minimality" in v.summary()


def test_d_squared_violation_reported():
    m = MinimalModel.build("m", [("a", 2), ("b", 3), ("c", 4)], {"b": "a^2", "c": "a*b"})
    v = m.validate()
    assert set(v.d_squared) == {"c"}
    assert "d^2 != 0 on c" in v.summary()


def test_non_nilpotent_reported():
    m = MinimalModel.build("m", [("x", 1), ("u", 1)], {"u": "u*x"})
    v = m.validate()
    assert v.nilpotence == ["u"]


def test_unknown_generator_in_differential():
    from sullivan.io import ExpressionError

    with pytest.raises(ExpressionError):
        MinimalModel.build("m", [("x", 2)], {"x": "q^2"})


def test_bundled_models_valid():
    models = bundled_models()
    assert len(models) == 6
    for m in models.values():
        assert m.validation.ok, m.name


def test_restricted_and_reordered():
    m = MinimalModel.build("s2", [("x", 2), ("y", 3)], {"y": "x^2"}, 3)
    r = m.restricted(2)
    assert [g.name for g in r.generators] == ["x"]
    p = m.reordered(["y", "x"])
    assert p.validation.ok
