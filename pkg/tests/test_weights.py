from sullivan.io import bundled_models
from sullivan.model import MinimalModel
from sullivan.sampler import random_models
from sullivan.weights import applicable_bounds, check_weight_bounds, recursive_weights, weight_data, weights


def test_weights_of_bundled_models():
    models = bundled_models()
    assert weights(models["s2"]) == {"x": 2, "y": 4}
    assert weights(models["s3"]) == {"x": 3}
    assert weights(models["cubic"]) == {"x": 2, "z": 6}
    assert weights(models["heisenberg"]) == {"x": 1, "y": 1, "z": 2}
    assert weights(models["three_step"]) == {"x": 1, "y": 1, "z": 2, "w": 3}


def test_recursive_weight_depends_on_basis():
    m = MinimalModel.build("bd", [("a1", 1), ("a2", 1), ("a3", 1), ("b1", 2), ("b2", 2)],
                           {"b1": "a1*a2*a3", "b2": "a1*a2*a3"})
    assert recursive_weights(m) == {"a1": 1, "a2": 1, "a3": 1, "b1": 3, "b2": 3}
    # b1 - b2 is closed, so some basis has a weight-2 element
    data = weight_data(m)
    adapted = sorted(w for name, w in data.weight_of.items() if data.basis.degree(name) == 2)
    assert adapted == [2, 3]
    assert recursive_weights(data.basis.model) == data.weight_of


def test_weights_are_basis_independent():
    for m in random_models(30, seed=2):
        w = weights(m)
        names = [g.name for g in m.generators]
        # renaming changes the generator order, hence the working basis
        new_names = list(reversed(names))
        flipped = m.reordered(new_names)
        w2 = weights(flipped)
        assert {old: w2[new] for old, new in zip(names, new_names)} == w


def test_adapted_basis_weights_are_recursive_weights():
    for m in random_models(30, seed=4):
        data = weight_data(m)
        assert recursive_weights(data.basis.model) == data.weight_of


def test_applicable_bounds():
    names = dict(applicable_bounds(1, 2, 3, False))
    assert names == {"degree one: J": 2}
    b = dict(applicable_bounds(2, 1, 1, True))
    assert b["degree two: J + 2c"] == 3
    assert b["general: n(4c-1) - 3(2c-1) + (J-1)"] == 3
    assert b["simple: 2n - 1"] == 3
    assert b["coformal: (c+1)(n-1) + J - c"] == 2
    b = dict(applicable_bounds(4, 3, 2, False))
    assert b == {"general: n(4c-1) - 3(2c-1) + (J-1)": 4 * 7 - 9 + 2}


def test_bounds_hold_on_corpus():
    for m in random_models(60, seed=8):
        rep = check_weight_bounds(m)
        assert rep.ok, (m.name, [(b.generator, b.weight, b.limit, b.bound) for b in rep.failures])


def test_sharpest_bound_and_margin():
    rep = check_weight_bounds(bundled_models()["s2"])
    sharp = rep.sharpest()
    # s2 is coformal: (c+1)(n-1) + J - c = 4 beats 2n - 1 = 5
    assert sharp["y"].limit == 4 and sharp["y"].weight == 4 and sharp["y"].margin == 0
    assert any(b.bound.startswith("simple") and b.limit == 5 for b in rep.lines if b.generator == "y")
