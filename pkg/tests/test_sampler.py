import pytest

from sullivan.filtration import is_coformal, nilpotency_class
from sullivan.sampler import KINDS, random_model, random_models


@pytest.mark.parametrize("kind", KINDS)
def test_sampler_kinds(kind):
    for seed in range(15):
        m = random_model(seed, kind, max_degree=4, width=3)
        assert m.validation.ok
        if kind == "coformal":
            assert is_coformal(m)
        if kind == "simply_connected":
            assert all(g.degree >= 2 for g in m.generators)
        if kind == "simple":
            assert nilpotency_class(m) <= 1


def test_sampler_is_deterministic():
    a = random_models(10, seed=3)
    b = random_models(10, seed=3)
    for x, y in zip(a, b):
        assert x.name == y.name
        assert [str(x.differential(g.name)) for g in x.generators] == [str(y.differential(g.name)) for g in y.generators]


def test_sampler_rejects_unknown_kind():
    with pytest.raises(ValueError):
        random_model(0, "weird")
