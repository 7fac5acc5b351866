"""Equivalences of core hypersurfaces and their lifts across parameters.

A central equivalence is a holomorphic-type map (z, w) -> (f(z, w),
g(z, w)), written in variables (z, eta), sending the hypersurface
Im w = sigma_1(z, zb, Re w) into Im w = sigma_2(...). Off the source
hypersurface the defining defect

    Im g(z, s + iv) - sigma_2(f, conj f, Re g)

vanishes on {v = sigma_1} and therefore divides exactly by v - sigma_1;
the quotient lambda(z, zb, s, v) is the multiplier of the equivalence.

For germs in split normal form sigma + sum_l c_l t_l^2 with matching
quadratic coefficients on both sides, the same map lifts to the
parameters by rescaling each t_l with the square root of the pulled-back
multiplier. The multiplier's value at 0 must be a perfect rational
square for the lift to stay inside exact arithmetic; otherwise the lift
is refused rather than approximated. Verification of a lifted map
recomputes everything from scratch so corrupted maps always fail.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .alphabet import Alphabet
from .errors import InvariantError, NotDivisibleError, PreconditionError
from .germs import (
    StructureGerm,
    is_solution,
    levi_form,
    make_germ,
    standard_alphabet,
)
from .jets import Jet, compose, jet_sqrt
from .linalg import rank
from .rationals import I, rational_sqrt


def equivalence_alphabet(nu: int) -> Alphabet:
    """(z_1..z_nu, eta): the holomorphic arguments of a core map."""
    return Alphabet(tuple(f"z{j}" for j in range(1, nu + 1)) + ("eta",), None)


def multiplier_alphabet(nu: int) -> Alphabet:
    """(z, zb, s, v) with real s, v: where the multiplier lives."""
    names = (
        [f"z{j}" for j in range(1, nu + 1)]
        + [f"zb{j}" for j in range(1, nu + 1)]
        + ["s", "v"]
    )
    return Alphabet(names, {f"z{j}": f"zb{j}" for j in range(1, nu + 1)})


@dataclass(frozen=True)
class CentralEquivalence:
    source: StructureGerm
    target: StructureGerm
    z_maps: tuple[Jet, ...]
    w_map: Jet

    @property
    def nu(self) -> int:
        return self.source.nu

    @property
    def order(self) -> int:
        return self.source.order


def make_equivalence(
    source: StructureGerm,
    target: StructureGerm,
    z_maps: Sequence[Jet],
    w_map: Jet,
) -> CentralEquivalence:
    """Validate map data against both cores and wrap it.

    Checks: dimensions and orders agree, components vanish at 0, the
    joint linear part is invertible, and the defining identity holds
    exactly on the source at the jet order.
    """
    if source.nprime != 0 or target.nprime != 0:
        raise PreconditionError("equivalence endpoints must be core germs")
    nu = source.nu
    if target.nu != nu:
        raise PreconditionError("source and target have different z dimensions")
    order = source.order
    if target.order != order:
        raise PreconditionError("source and target orders differ")
    if len(z_maps) != nu:
        raise PreconditionError(f"expected {nu} z components")
    hol = equivalence_alphabet(nu)
    components = list(z_maps) + [w_map]
    for jet in components:
        if jet.alphabet != hol:
            raise PreconditionError("map components must live over (z, eta)")
        if jet.order != order:
            raise PreconditionError("map components must carry the germ order")
        if not jet.constant_term().is_zero():
            raise PreconditionError("map components must vanish at the origin")
    linear = [
        [jet.coefficient({name: 1}) for name in hol.names] for jet in components
    ]
    if rank(linear) != nu + 1:
        raise PreconditionError("map is not invertible at the origin")

    central = standard_alphabet(nu, 0)
    w1 = Jet.variable(central, order, "s") + source.phi * I
    assignment: dict[str, Jet] = {
        f"z{j}": Jet.variable(central, order, f"z{j}") for j in range(1, nu + 1)
    }
    assignment["eta"] = w1
    pulled_z = [compose(jet, assignment, alphabet=central, order=order) for jet in z_maps]
    pulled_w = compose(w_map, assignment, alphabet=central, order=order)
    check: dict[str, Jet] = {}
    for j in range(1, nu + 1):
        check[f"z{j}"] = pulled_z[j - 1]
        check[f"zb{j}"] = pulled_z[j - 1].conjugate()
    check["s"] = pulled_w.real_part()
    rhs = compose(target.phi, check, alphabet=central, order=order)
    if pulled_w.imag_part() != rhs:
        raise PreconditionError(
            "map does not satisfy the defining identity at this order"
        )
    return CentralEquivalence(source, target, tuple(z_maps), w_map)


def extract_multiplier(eq: CentralEquivalence) -> Jet:
    """The exact quotient of the defining defect by v - sigma_1.

    Returned over multiplier_alphabet(nu) one order below the germs. For
    the identity map this is the constant 1; for a linear scaling
    (z, w) -> (cz, |c|^2 w) of the quadric it is the constant |c|^2.
    """
    nu = eq.nu
    order = eq.order
    big = multiplier_alphabet(nu)
    eta_value = Jet.variable(big, order, "s") + Jet.variable(big, order, "v") * I
    assignment: dict[str, Jet] = {
        f"z{j}": Jet.variable(big, order, f"z{j}") for j in range(1, nu + 1)
    }
    assignment["eta"] = eta_value
    fz = [compose(jet, assignment, alphabet=big, order=order) for jet in eq.z_maps]
    gw = compose(eq.w_map, assignment, alphabet=big, order=order)
    check: dict[str, Jet] = {}
    for j in range(1, nu + 1):
        check[f"z{j}"] = fz[j - 1]
        check[f"zb{j}"] = fz[j - 1].conjugate()
    check["s"] = gw.real_part()
    defect = gw.imag_part() - compose(eq.target.phi, check, alphabet=big, order=order)

    sigma1 = eq.source.phi.rename({}, big)
    shift: dict[str, Jet] = {
        name: Jet.variable(big, order, name) for name in big.names
    }
    shift["v"] = shift["v"] + sigma1
    shifted = compose(defect, shift, alphabet=big, order=order)
    try:
        ratio = shifted.divide_by_coordinate("v")
    except NotDivisibleError:
        raise InvariantError(
            "defect failed to vanish on the source hypersurface after the "
            "identity was already validated"
        ) from None
    unshift: dict[str, Jet] = {
        name: Jet.variable(big, order - 1, name) for name in big.names
    }
    unshift["v"] = unshift["v"] - sigma1.truncate(order - 1)
    multiplier = compose(ratio, unshift, alphabet=big, order=order - 1)
    if not multiplier.is_real():
        raise InvariantError("multiplier of real defining data must be real")
    return multiplier


def model_germ(core: StructureGerm, coeffs: Sequence[Fraction]) -> StructureGerm:
    """Split normal form: core sigma plus sum_l c_l t_l^2."""
    npr = len(coeffs)
    full = standard_alphabet(core.nu, npr)
    phi = core.phi.rename({}, full)
    for l, c in enumerate(coeffs, start=1):
        if c == 0:
            raise PreconditionError("normal-form quadratic coefficients must be nonzero")
        tvar = Jet.variable(full, core.order, f"t{l}")
        phi = phi + tvar * tvar * c
    return make_germ(core.nu, npr, phi)


def split_coefficients(model: StructureGerm, core: StructureGerm) -> list[Fraction]:
    """Read the c_l off a split normal form and certify the decomposition."""
    if model.nu != core.nu or core.nprime != 0:
        raise PreconditionError("model and core dimensions do not match")
    if model.order != core.order:
        raise PreconditionError("model and core orders differ")
    full = model.alphabet
    diff = model.phi - core.phi.rename({}, full)
    coeffs: list[Fraction] = []
    for l in range(1, model.nprime + 1):
        c = diff.coefficient({f"t{l}": 2})
        if not c.is_real() or c.is_zero():
            raise PreconditionError(f"quadratic coefficient of t{l} must be a nonzero rational")
        coeffs.append(c.real)
        tvar = Jet.variable(full, model.order, f"t{l}")
        diff = diff - tvar * tvar * c
    if not diff.is_zero():
        raise PreconditionError(
            "germ is not in split normal form over the given core"
        )
    return coeffs


@dataclass(frozen=True)
class LiftedEquivalence:
    equivalence: CentralEquivalence
    source: StructureGerm
    target: StructureGerm
    z_maps: tuple[Jet, ...]
    w_map: Jet
    t_maps: tuple[Jet, ...]
    scale: Fraction


def lift_equivalence(
    eq: CentralEquivalence,
    source_model: StructureGerm,
    target_model: StructureGerm,
) -> LiftedEquivalence:
    """Extend a core equivalence to split normal forms over it.

    Requires identical quadratic coefficients on both sides, positive
    definite core Levi forms, and a multiplier whose value at 0 is a
    perfect rational square. The t directions are rescaled by the square
    root of the pulled-back multiplier; everything else is the pullback
    of the core map.
    """
    c_src = split_coefficients(source_model, eq.source)
    c_tgt = split_coefficients(target_model, eq.target)
    if c_src != c_tgt:
        raise PreconditionError(
            "quadratic coefficients differ between source and target; "
            "no split lift exists"
        )
    if not levi_form(eq.source).positive_definite:
        raise PreconditionError("source core Levi form must be positive definite")
    if not levi_form(eq.target).positive_definite:
        raise PreconditionError("target core Levi form must be positive definite")

    multiplier = extract_multiplier(eq)
    head = multiplier.constant_term()
    if not head.is_real() or head.real <= 0:
        raise PreconditionError(f"multiplier value {head} at 0 is not positive")
    scale = rational_sqrt(head.real)
    if scale is None:
        raise PreconditionError(
            f"multiplier value {head.real} at 0 is not a perfect rational "
            "square; the lift leaves exact arithmetic"
        )

    nu = eq.nu
    order = eq.order
    full = source_model.alphabet
    w1 = Jet.variable(full, order, "s") + source_model.phi * I
    assignment: dict[str, Jet] = {
        f"z{j}": Jet.variable(full, order, f"z{j}") for j in range(1, nu + 1)
    }
    assignment["eta"] = w1
    z_maps = tuple(
        compose(jet, assignment, alphabet=full, order=order) for jet in eq.z_maps
    )
    w_map = compose(eq.w_map, assignment, alphabet=full, order=order)

    pull: dict[str, Jet] = {
        name: Jet.variable(full, order - 1, name)
        for name in multiplier.alphabet.names
        if name != "v"
    }
    pull["v"] = source_model.phi.truncate(order - 1)
    multiplier_full = compose(multiplier, pull, alphabet=full, order=order - 1)
    root = jet_sqrt(multiplier_full * (Fraction(1) / head.real))
    t_maps = []
    for l in range(1, source_model.nprime + 1):
        t_map = Jet.variable(full, order - 1, f"t{l}") * root * scale
        if not t_map.is_real():
            raise InvariantError("lifted t component of real data must be real")
        t_maps.append(t_map)
    return LiftedEquivalence(
        eq, source_model, target_model, z_maps, w_map, tuple(t_maps), scale
    )


@dataclass(frozen=True)
class LiftVerification:
    defining_identity: bool
    components_are_solutions: bool
    restricts_to_core_map: bool
    t_maps_vanish_on_center: bool

    @property
    def ok(self) -> bool:
        return (
            self.defining_identity
            and self.components_are_solutions
            and self.restricts_to_core_map
            and self.t_maps_vanish_on_center
        )


def verify_lift(lift: LiftedEquivalence) -> LiftVerification:
    """Recompute every certification of a lifted equivalence from scratch.

    Nothing is read from cached flags, so altered map data fails here.
    """
    eq = lift.equivalence
    src = lift.source
    order = src.order
    full = src.alphabet
    nu = src.nu
    coeffs = split_coefficients(lift.target, eq.target)

    check: dict[str, Jet] = {}
    for j in range(1, nu + 1):
        check[f"z{j}"] = lift.z_maps[j - 1]
        check[f"zb{j}"] = lift.z_maps[j - 1].conjugate()
    check["s"] = lift.w_map.real_part()
    total = compose(eq.target.phi, check, alphabet=full, order=order)
    for c, t_map in zip(coeffs, lift.t_maps):
        # Promotion exact: the unknown top-order part of the t component
        # has valuation >= order, and the component itself valuation 1.
        tk = t_map.with_order(order)
        total = total + tk * tk * c
    defining = lift.w_map.imag_part() == total

    solutions = all(is_solution(src, jet) for jet in lift.z_maps) and is_solution(
        src, lift.w_map
    )

    central = standard_alphabet(nu, 0)
    restrict: dict[str, Jet | int] = {
        name: Jet.variable(central, order, name) for name in central.names
    }
    for l in range(1, src.nprime + 1):
        restrict[f"t{l}"] = 0
    z_restricted = [
        compose(jet, restrict, alphabet=central, order=order) for jet in lift.z_maps
    ]
    w_restricted = compose(lift.w_map, restrict, alphabet=central, order=order)
    core_assignment: dict[str, Jet] = {
        f"z{j}": Jet.variable(central, order, f"z{j}") for j in range(1, nu + 1)
    }
    core_assignment["eta"] = Jet.variable(central, order, "s") + eq.source.phi * I
    z_core = [
        compose(jet, core_assignment, alphabet=central, order=order)
        for jet in eq.z_maps
    ]
    w_core = compose(eq.w_map, core_assignment, alphabet=central, order=order)
    restricts = z_restricted == z_core and w_restricted == w_core

    restrict_low: dict[str, Jet | int] = {
        name: Jet.variable(central, order - 1, name) for name in central.names
    }
    for l in range(1, src.nprime + 1):
        restrict_low[f"t{l}"] = 0
    vanish = all(
        compose(jet, restrict_low, alphabet=central, order=order - 1).is_zero()
        for jet in lift.t_maps
    )
    return LiftVerification(defining, solutions, restricts, vanish)
