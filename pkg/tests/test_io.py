from fractions import Fraction

import pytest

from sullivan.io import (BUNDLED, ExpressionError, ParseError, canonical, data_path, parse_file,
                         parse_model, print_model, resolve_maps, tokenize_terms)

S2 = """model s2 maxdeg 3
gen x deg 2
gen y deg 3
d y = x^2
"""


def test_tokenize_terms():
    assert tokenize_terms("-3/4*x^2*y + z") == [(Fraction(-3, 4), [("x", 2), ("y", 1)]), (Fraction(1), [("z", 1)])]
    assert tokenize_terms("2") == [(Fraction(2), [])]


@pytest.mark.parametrize("bad", ["x +", "x + - y", "x y", "*x", "x^", "", "x ** y", "2 3"])
def test_tokenize_errors(bad):
    with pytest.raises(ExpressionError):
        tokenize_terms(bad)


def test_s2_parses():
    m = parse_model(S2)
    assert m.validation.ok
    assert str(m.differential("y")) == "x^2"


def test_heisenberg_parses_with_class_two():
    from sullivan.filtration import nilpotency_class

    m = parse_model("model h maxdeg 1\ngen x deg 1\ngen y deg 1\ngen z deg 1\nd z = x*y\n")
    assert nilpotency_class(m) == 2


def test_minimality_error_has_line():
    with pytest.raises(ParseError) as exc:
        parse_model("model m maxdeg 2\ngen z deg 1\ngen x deg 2\n# comment\nd z = x\n")
    assert exc.value.errors == [(5, "word length 1 violates minimality in d z")]


def test_lenient_parse_leaves_minimality_to_validation():
    m = parse_model("model m maxdeg 2\ngen z deg 1\ngen x deg 2\nd z = x\n", strict=False)
    assert m.validation.minimality == ["z"]


def test_positioned_errors_collected():
    text = "model m maxdeg 3\ngen x deg 2\ngen x deg 3\ngen y deg 3\nd y = q\nd x = x^3\n"
    with pytest.raises(ParseError) as exc:
        parse_file(text)
    lines = [ln for ln, _ in exc.value.errors]
    assert lines == [3, 5, 6]
    assert "duplicate generator id" in exc.value.errors[0][1]
    assert "unknown generator" in exc.value.errors[1][1]
    assert "degree mismatch" in exc.value.errors[2][1]


def test_round_trip_bundled():
    for name in BUNDLED:
        text = data_path(name).read_text()
        once = canonical(text)
        assert canonical(once) == once
        assert print_model(parse_model(once)) == once


def test_recipe_reproducible():
    text = data_path("random_recipe.sm").read_text()
    a, b = parse_model(text), parse_model(text)
    assert [(g.name, g.degree) for g in a.generators] == [(g.name, g.degree) for g in b.generators]
    assert all(a.differential(g.name) == b.differential(g.name) for g in a.generators)


def test_morphism_and_homotopy_blocks():
    mf = parse_file(data_path("fixtures/homotopy.sm").read_text())
    morphisms, homotopies = resolve_maps(mf)
    assert morphisms["double"].check_chain_map()
    H = homotopies["shift"]
    assert H.check()
    assert str(H.end.images["z"]) == "-x + z"
    assert canonical(canonical(data_path("fixtures/homotopy.sm").read_text())) == canonical(
        data_path("fixtures/homotopy.sm").read_text())


def test_dt_order_sign():
    text = "model a maxdeg 2\ngen x deg 1\nmodel b maxdeg 1\ngen e deg 1\n" \
           "homotopy h : b -> a\nimg e = x*t\nend\n"
    mf = parse_file(text)
    from sullivan.io import parse_interval_expression
    from sullivan.homotopy import FreeDga, IntervalAlgebra

    space = IntervalAlgebra(FreeDga(mf.models["a"]))
    # dt*x = -x*dt for odd x
    assert parse_interval_expression("dt*x", space) == -parse_interval_expression("x*dt", space)
    assert str(parse_interval_expression("x*dt*t", space)) == "x*t*dt"
