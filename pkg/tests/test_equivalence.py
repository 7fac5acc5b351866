"""Central equivalences, multiplier extraction, split normal-form lifts."""

import dataclasses
from fractions import Fraction

import pytest

from crjets import (
    GaussianRational,
    Jet,
    compose,
    equivalence_alphabet,
    extract_multiplier,
    generators,
    jet_sqrt,
    lift_equivalence,
    make_equivalence,
    make_germ,
    model_germ,
    split_coefficients,
    standard_alphabet,
    verify_lift,
)
from crjets.errors import PreconditionError

K = 6


def quadric_core(sign=1):
    a = standard_alphabet(1, 0)
    g = generators(a, K)
    return make_germ(1, 0, g["z1"] * g["zb1"] * sign)


def scaling_map(c_z, c_eta):
    ea = equivalence_alphabet(1)
    return (
        (Jet.variable(ea, K, "z1") * c_z,),
        Jet.variable(ea, K, "eta") * c_eta,
    )


def test_identity_lifts_to_identity():
    core = quadric_core()
    z_maps, w_map = scaling_map(1, 1)
    eq = make_equivalence(core, core, z_maps, w_map)
    mult = extract_multiplier(eq)
    assert mult == Jet.constant(mult.alphabet, mult.order, 1)
    model = model_germ(core, [Fraction(1)])
    lift = lift_equivalence(eq, model, model)
    assert lift.scale == 1
    assert lift.t_maps[0] == Jet.variable(model.alphabet, K - 1, "t1")
    assert verify_lift(lift).ok


def test_quadric_scaling_lift():
    core = quadric_core()
    eq = make_equivalence(core, core, *scaling_map(2, 4))
    mult = extract_multiplier(eq)
    assert mult == Jet.constant(mult.alphabet, mult.order, 4)
    model = model_germ(core, [Fraction(1)])
    lift = lift_equivalence(eq, model, model)
    assert lift.scale == 2
    t1 = Jet.variable(model.alphabet, K - 1, "t1")
    assert lift.t_maps[0] == t1 * 2
    assert verify_lift(lift).ok


def test_multiplier_consistency_on_the_lift():
    """Sum c T^2 must reproduce (sum c t^2) times the pulled-back multiplier."""
    core = quadric_core()
    eq = make_equivalence(core, core, *scaling_map(2, 4))
    model = model_germ(core, [Fraction(1)])
    lift = lift_equivalence(eq, model, model)
    mult = extract_multiplier(eq)

    full = model.alphabet
    sub = {name: Jet.variable(full, K, name) for name in mult.alphabet.names if name != "v"}
    sub["v"] = model.phi  # evaluate the multiplier on the surface
    pulled = compose(mult.with_order(K), sub, alphabet=full, order=K)
    t1 = Jet.variable(full, K, "t1")
    lhs = lift.t_maps[0].with_order(K) ** 2
    assert lhs == t1 * t1 * pulled


def test_automorphism_changes_multiplier_but_lift_still_verifies():
    # compose the scaling with the target automorphism z -> 3z, eta -> 9 eta
    core = quadric_core()
    eq = make_equivalence(core, core, *scaling_map(6, 36))
    mult = extract_multiplier(eq)
    assert mult == Jet.constant(mult.alphabet, mult.order, 36)
    model = model_germ(core, [Fraction(1)])
    lift = lift_equivalence(eq, model, model)
    assert lift.scale == 6
    assert verify_lift(lift).ok


def test_nonconstant_multiplier():
    """g(eta) = eta + eta^2 against the quadric target forces the source
    sigma = z zb / (1 + 2s) and multiplier 1 + 2s."""
    a = standard_alphabet(1, 0)
    g = generators(a, K)
    sigma = g["z1"] * g["zb1"] * (1 + g["s"] * 2).unit_inverse()
    source = make_germ(1, 0, sigma)
    target = quadric_core()

    ea = equivalence_alphabet(1)
    eta = Jet.variable(ea, K, "eta")
    eq = make_equivalence(source, target, (Jet.variable(ea, K, "z1"),), eta + eta * eta)
    mult = extract_multiplier(eq)
    s_m = Jet.variable(mult.alphabet, mult.order, "s")
    assert mult == 1 + s_m * 2

    model_src = model_germ(source, [Fraction(1)])
    model_tgt = model_germ(target, [Fraction(1)])
    lift = lift_equivalence(eq, model_src, model_tgt)
    assert lift.scale == 1
    full = model_src.alphabet
    expected = Jet.variable(full, K - 1, "t1") * jet_sqrt(
        1 + Jet.variable(full, K - 1, "s") * 2
    )
    assert lift.t_maps[0] == expected
    assert verify_lift(lift).ok


def test_corrupted_lift_fails_verification():
    core = quadric_core()
    eq = make_equivalence(core, core, *scaling_map(2, 4))
    model = model_germ(core, [Fraction(1)])
    lift = lift_equivalence(eq, model, model)
    t1 = Jet.variable(model.alphabet, K - 1, "t1")
    s = Jet.variable(model.alphabet, K - 1, "s")
    bad = dataclasses.replace(lift, t_maps=(t1 * 2 + s * s,))
    verdict = verify_lift(bad)
    assert not verdict.ok
    assert not verdict.defining_identity


def test_non_square_multiplier_is_refused():
    core = quadric_core()
    eq = make_equivalence(core, core, *scaling_map(GaussianRational(1, 1), 2))
    model = model_germ(core, [Fraction(1)])
    with pytest.raises(PreconditionError) as err:
        lift_equivalence(eq, model, model)
    assert "square" in str(err.value)


def test_mismatched_coefficients_refused():
    core = quadric_core()
    eq = make_equivalence(core, core, *scaling_map(1, 1))
    with pytest.raises(PreconditionError):
        lift_equivalence(eq, model_germ(core, [Fraction(1)]), model_germ(core, [Fraction(2)]))


def test_indefinite_core_refused():
    core = quadric_core(sign=-1)
    eq = make_equivalence(core, core, *scaling_map(1, 1))
    model = model_germ(core, [Fraction(1)])
    with pytest.raises(PreconditionError):
        lift_equivalence(eq, model, model)


def test_make_equivalence_rejects_non_maps():
    core = quadric_core()
    with pytest.raises(PreconditionError):
        make_equivalence(core, core, *scaling_map(2, 1))  # identity fails: 4 sigma != sigma
    with pytest.raises(PreconditionError):
        make_equivalence(core, core, *scaling_map(0, 1))  # not invertible


def test_split_coefficients_round_trip():
    core = quadric_core()
    model = model_germ(core, [Fraction(3), Fraction(-1, 2)])
    assert split_coefficients(model, core) == [Fraction(3), Fraction(-1, 2)]

    a = model.alphabet
    g = generators(a, K)
    damaged = make_germ(1, 2, model.phi + g["t1"] ** 2 * g["s"])
    with pytest.raises(PreconditionError):
        split_coefficients(damaged, core)
