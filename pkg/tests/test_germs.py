"""Structure germs: frames, first integrals, Levi data, covectors."""

import random
from fractions import Fraction

import pytest

from crjets import (
    GaussianRational,
    Jet,
    characteristic_covector,
    first_integrals,
    frame,
    generators,
    is_solution,
    levi_form,
    make_germ,
    standard_alphabet,
    t_hessian,
)
from crjets.errors import PreconditionError

from germ_corpus import random_germ


def quadric(order=6):
    a = standard_alphabet(1, 0)
    g = generators(a, order)
    return make_germ(1, 0, g["z1"] * g["zb1"])


def test_make_germ_validates():
    a = standard_alphabet(1, 0)
    g = generators(a, 4)
    with pytest.raises(PreconditionError):
        make_germ(1, 0, g["s"])  # linear term
    with pytest.raises(PreconditionError):
        make_germ(1, 0, g["z1"] * g["z1"])  # not real
    with pytest.raises(PreconditionError):
        make_germ(1, 0, g["z1"] * g["zb1"] + 1)  # constant


def test_frame_annihilates_first_integrals_on_the_quadric():
    germ = quadric()
    fields = frame(germ)
    assert len(fields) == 1
    ints = first_integrals(germ)
    assert set(ints) == {"z1", "w"}
    for field in fields:
        for h in ints.values():
            assert field.apply(h).is_zero()
    assert is_solution(germ, ints["w"])
    assert not is_solution(germ, Jet.variable(germ.alphabet, germ.order, "s"))


def test_mizohata_frame():
    # nu = 0, phi = t^2: the single field is d/dt - 2it d/ds
    a = standard_alphabet(0, 1)
    g = generators(a, 5)
    germ = make_germ(0, 1, g["t1"] * g["t1"])
    fields = frame(germ)
    assert len(fields) == 1
    w = first_integrals(germ)["w"]
    assert fields[0].apply(w).is_zero()
    coeff_s = fields[0].coefficients["s"]
    assert coeff_s == g["t1"].truncate(4) * GaussianRational(0, -2)


def test_quadric_levi():
    form = levi_form(quadric())
    assert form.matrix == ((GaussianRational(1),),)
    assert (form.positive, form.negative, form.null) == (1, 0, 0)
    assert form.positive_definite


def test_indefinite_two_variable_quadric():
    a = standard_alphabet(2, 0)
    g = generators(a, 4)
    germ = make_germ(2, 0, g["z1"] * g["zb1"] - g["z2"] * g["zb2"])
    form = levi_form(germ)
    assert (form.positive, form.negative, form.null) == (1, 1, 0)
    assert form.nondegenerate and not form.definite


def test_degenerate_levi_is_reported_not_raised():
    a = standard_alphabet(1, 0)
    g = generators(a, 6)
    germ = make_germ(1, 0, (g["z1"] * g["zb1"]) ** 2)
    form = levi_form(germ)
    assert form.null == 1 and not form.nondegenerate


def test_levi_blocks_with_parameters():
    a = standard_alphabet(1, 1)
    g = generators(a, 4)
    # phi = z zb + t^2 + (z + zb) t  gives B = C^* = 1
    phi = g["z1"] * g["zb1"] + g["t1"] * g["t1"] + (g["z1"] + g["zb1"]) * g["t1"]
    germ = make_germ(1, 1, phi)
    form = levi_form(germ)
    assert form.matrix[0][0] == GaussianRational(1)
    assert form.matrix[0][1] == GaussianRational(1)
    assert form.matrix[1][0] == GaussianRational(1)
    assert form.matrix[1][1] == GaussianRational(2)


def test_t_hessian():
    a = standard_alphabet(1, 2)
    g = generators(a, 4)
    phi = g["z1"] * g["zb1"] + g["t1"] * g["t1"] + g["t1"] * g["t2"] * 3 + g["t2"] * g["t2"]
    h = t_hessian(make_germ(1, 2, phi))
    assert h == [[Fraction(2), Fraction(3)], [Fraction(3), Fraction(2)]]


def test_covector_imaginary_part_is_the_t_gradient():
    rng = random.Random(41)
    for _ in range(6):
        germ = random_germ(rng, nu=1, nprime=2, order=5)
        cov = characteristic_covector(germ)
        for name in ("dx1", "dy1", "ds"):
            assert cov.imaginary_real_basis[name].is_zero()
        for l in (1, 2):
            grad = germ.phi.derive(f"t{l}")
            assert cov.imaginary_real_basis[f"dt{l}"] == grad


def test_frame_annihilation_on_random_germs():
    rng = random.Random(99)
    for _ in range(5):
        germ = random_germ(rng, nu=1, nprime=1, order=5)
        ints = first_integrals(germ)
        for field in frame(germ):
            for h in ints.values():
                assert field.apply(h).is_zero()
