"""JSON serialization: round trips, located diagnostics, order overrides."""

from fractions import Fraction

import pytest

from crjets import GaussianRational, Jet, make_germ, generators, standard_alphabet
from crjets.errors import ParseError
from crjets.io import (
    canonical_dumps,
    fraction_to_text,
    germ_from_json,
    germ_to_json,
    height_from_json,
    jet_to_json,
    map_from_json,
    scalar_from_json,
    scalar_to_json,
    terms_from_json,
    text_to_fraction,
)

from germ_corpus import random_germ

import random


def test_fraction_text_round_trip():
    for f in (Fraction(0), Fraction(3), Fraction(-7, 2), Fraction(22, 7)):
        assert text_to_fraction(fraction_to_text(f)) == f
    assert text_to_fraction(5) == Fraction(5)
    assert text_to_fraction("0.25") == Fraction(1, 4)


def test_fraction_text_rejections():
    with pytest.raises(ParseError):
        text_to_fraction(0.5)  # binary floats are not exact inputs
    with pytest.raises(ParseError):
        text_to_fraction(True)
    with pytest.raises(ParseError):
        text_to_fraction("3/0")
    with pytest.raises(ParseError):
        text_to_fraction([1])


def test_scalar_round_trip():
    vals = [
        GaussianRational(1, 0),
        GaussianRational(Fraction(-2, 3), Fraction(5, 7)),
        GaussianRational(0, 1),
    ]
    for v in vals:
        assert scalar_from_json(scalar_to_json(v)) == v
    # real scalars serialize as plain strings
    assert scalar_to_json(GaussianRational(Fraction(3, 4), 0)) == "3/4"


def test_germ_round_trip():
    rng = random.Random(411)
    for _ in range(6):
        germ = random_germ(rng, nu=1, nprime=2, order=5)
        again = germ_from_json(germ_to_json(germ))
        assert again.phi == germ.phi
        assert (again.nu, again.nprime, again.order) == (1, 2, 5)


def test_germ_order_override():
    a = standard_alphabet(1, 0)
    g = generators(a, 4)
    germ = make_germ(1, 0, g["z1"] * g["zb1"] + (g["z1"] * g["zb1"]) ** 2)
    obj = germ_to_json(germ)

    low = germ_from_json(obj, order_override=3)
    assert low.order == 3
    assert low.phi == (g["z1"] * g["zb1"]).truncate(3)

    high = germ_from_json(obj, order_override=6)
    assert high.order == 6
    assert high.phi == germ.phi.with_order(6)


def test_located_diagnostics():
    base = {"nu": 1, "nprime": 0, "order": 4}

    bad_var = dict(base, phi=[{"monomial": {"q": 1}, "coefficient": "1"}])
    with pytest.raises(ParseError) as err:
        germ_from_json(bad_var)
    assert "phi term 0" in str(err.value)

    bad_exp = dict(base, phi=[
        {"monomial": {"z1": 1, "zb1": 1}, "coefficient": "1"},
        {"monomial": {"z1": -2}, "coefficient": "1"},
    ])
    with pytest.raises(ParseError) as err:
        germ_from_json(bad_exp)
    assert "phi term 1" in str(err.value)

    over = dict(base, phi=[{"monomial": {"z1": 3, "zb1": 3}, "coefficient": "1"}])
    with pytest.raises(ParseError) as err:
        germ_from_json(over)
    assert "exceeds the order" in str(err.value)

    dup = dict(base, phi=[
        {"monomial": {"z1": 1, "zb1": 1}, "coefficient": "1"},
        {"monomial": {"zb1": 1, "z1": 1}, "coefficient": "2"},
    ])
    with pytest.raises(ParseError) as err:
        germ_from_json(dup)
    assert "duplicate of term 0" in str(err.value)


def test_germ_from_json_shape_errors():
    with pytest.raises(ParseError):
        germ_from_json([1, 2])
    with pytest.raises(ParseError):
        germ_from_json({"nu": 1, "nprime": 0, "order": 0, "phi": []})
    with pytest.raises(ParseError):
        germ_from_json({"nu": 1, "nprime": 0, "order": 4, "phi": 7})


def test_map_from_json():
    a = standard_alphabet(1, 0)
    from crjets.equivalence import equivalence_alphabet

    ea = equivalence_alphabet(1)
    obj = {
        "order": 4,
        "z": [[{"monomial": {"z1": 1}, "coefficient": "2"}]],
        "w": [{"monomial": {"eta": 1}, "coefficient": "4"}],
    }
    z_maps, w_map = map_from_json(obj, ea, 1, None)
    assert z_maps[0] == Jet.variable(ea, 4, "z1") * 2
    assert w_map == Jet.variable(ea, 4, "eta") * 4

    with pytest.raises(ParseError):
        map_from_json({"order": 4, "z": [[]], "w": []}, ea, 2, None)  # wrong count


def test_height_from_json():
    obj = {"order": 6, "h": [{"monomial": {"x": 2}, "coefficient": "1/2"}]}
    h = height_from_json(obj)
    x = Jet.variable(h.alphabet, 6, "x")
    assert h == x * x * Fraction(1, 2)
    with pytest.raises(ParseError):
        height_from_json({"order": 1, "h": []})


def test_canonical_dumps_is_stable():
    payload = {"b": [3, 2], "a": {"y": "1/2", "x": "0"}}
    one = canonical_dumps(payload)
    two = canonical_dumps({"a": {"x": "0", "y": "1/2"}, "b": [3, 2]})
    assert one == two
    assert one.endswith("\n")


def test_jet_json_terms_are_graded():
    a = standard_alphabet(1, 0)
    g = generators(a, 4)
    jet = g["s"] ** 3 + g["z1"] + g["z1"] * g["zb1"]
    records = jet_to_json(jet)["terms"]
    degrees = [sum(r["monomial"].values()) for r in records]
    assert degrees == sorted(degrees)
    # and the parse inverts exactly
    back = terms_from_json(records, a, 4, "phi")
    assert back == jet
