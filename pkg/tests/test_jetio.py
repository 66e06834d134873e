import json
from fractions import Fraction
from importlib import resources

import jsonschema
import pytest
from hypothesis import given

from bidiff.jetio import ParseError, format_poly, from_json, parse, to_json
from bidiff.jetpoly import DiffPoly, JetVar, u_jet
from conftest import polys

SCHEMA_DIR = resources.files("bidiff").joinpath("schemas")


def schema_registry():
    from referencing import Registry, Resource

    reg = Registry()
    for name in ("diffpoly", "operator", "form", "series", "checks", "catalog"):
        doc = json.loads(SCHEMA_DIR.joinpath(f"{name}.schema.json").read_text())
        reg = reg.with_resource(doc["$id"], Resource.from_contents(doc))
    return reg


def validate(obj, name):
    schema = json.loads(SCHEMA_DIR.joinpath(f"{name}.schema.json").read_text())
    jsonschema.validate(obj, schema, registry=schema_registry())


def test_parse_example():
    p = parse("u_xx + (1/6)*u^2")
    assert p == u_jet(2) + (u_jet(0) ** 2).scale(Fraction(1, 6))
    assert format_poly(p) == "u_xx + (1/6)*u^2"


def test_syntax_error_offset():
    with pytest.raises(ParseError) as exc:
        parse("u_x +")
    assert exc.value.offset == 5


@pytest.mark.parametrize("text, offset", [("u_x + q", 6), ("u_xt", 0), ("u * * u", 4), ("(1/0)", 3), ("u )", 2)])
def test_parse_errors(text, offset):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.offset == offset


def test_unknown_symbol_message():
    with pytest.raises(ParseError, match="unknown symbol"):
        parse("q_x")


def test_latex_convention():
    assert format_poly(parse("u_x^2"), "latex") == "u_{x}^{2}"
    assert format_poly(parse("u_xx + (1/6)*u^2"), "latex") == "u_{xx} + \\frac{1}{6} u^{2}"
    assert format_poly(parse("-u_tx"), "latex") == "-u_{tx}"


def test_text_forms():
    assert format_poly(DiffPoly()) == "0"
    assert format_poly(parse("-(1/2) + x*u")) == "-(1/2) + x*u"
    assert format_poly(parse("u_txx*v")) == "u_txx*v"


def test_parenthesised_expressions_and_negative_rationals():
    assert parse("(u + u_x)^2") == parse("u^2 + 2*u*u_x + u_x^2")
    assert parse("(-3/4)*u") == parse("-(3/4)*u")


def test_coordinates_parse():
    assert parse("x*t").variables() == {JetVar.coord("x"), JetVar.coord("t")}


@given(polys(symbols=("u", "v"), max_t=2, max_x=4))
def test_roundtrip_text(p):
    assert parse(format_poly(p)) == p
    assert format_poly(parse(format_poly(p))) == format_poly(p)


@given(polys(symbols=("u", "v"), max_t=2, max_x=4))
def test_roundtrip_json(p):
    obj = to_json(p)
    validate(obj, "diffpoly")
    assert from_json(obj) == p
    assert from_json(format_poly(p, "json")) == p


def test_json_layout():
    obj = to_json(parse("(1/6)*u^2 + u_xx"))
    assert obj == {
        "terms": [
            {"coeff": "1/1", "factors": [{"sym": "u", "t": 0, "x": 2, "pow": 1}]},
            {"coeff": "1/6", "factors": [{"sym": "u", "t": 0, "x": 0, "pow": 2}]},
        ]
    }


def test_catalog_fixture_validates():
    entries = json.loads(resources.files("bidiff").joinpath("data/reference_catalog.json").read_text())
    validate(entries, "catalog")
