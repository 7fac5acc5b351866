"""Central manifold extraction and Morse normalization of the t-part.

Given a germ phi(z, zb, s, t) whose t-Hessian at the origin is
invertible, the fiberwise critical point t = F(z, zb, s) of phi solves
d phi / d t = 0 and is the unique such graph through 0. Restricting phi
to the graph gives the core jet sigma(z, zb, s); moving the graph to
{t = 0} is the straightening substitution t -> t + F.

For a straightened germ the difference R = phi - phi(.,0) has only
monomials of t-degree at least two, and a parameter Morse lemma splits
it as an exact finite sum of rational multiples of squares,

    phi = phi(.,0) + sum_l c_l * G_l^2,

with G_l jets vanishing at 0 with independent linear t-parts. The c_l
are produced by the square-completion pipeline itself, not copied from
the diagonalized Hessian, so comparing their signs against the Hessian
inertia is a genuine cross-check.

Order bookkeeping: the graph F is reliable one order below the germ.
Promoting it back when substituting into phi is exact because every
t-linear coefficient of phi vanishes at 0, so unknown top-order terms
of F only touch degrees beyond the germ order. The same valuation
argument covers each promotion inside the Morse loop; comments mark
where it is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateFormError,
    InvariantError,
    NotDivisibleError,
    PreconditionError,
    SingularJacobianError,
)
from .germs import StructureGerm, make_germ, standard_alphabet, t_hessian
from .jets import Jet, compose, compose_many, jet_sqrt
from .linalg import invert_matrix, symmetric_diagonalize
from .solve import implicit_solve


@dataclass(frozen=True)
class CentralManifold:
    germ: StructureGerm
    graph: tuple[Jet, ...]
    sigma: Jet

    def central_germ(self) -> StructureGerm:
        """sigma repackaged as a germ with no t variables."""
        return make_germ(self.germ.nu, 0, self.sigma)


def central_manifold(germ: StructureGerm) -> CentralManifold:
    """Critical graph t = F(z, zb, s) and the restriction sigma = phi(., F)."""
    order = germ.order
    if germ.nprime == 0:
        return CentralManifold(germ, (), germ.phi)
    central = standard_alphabet(germ.nu, 0)
    equations = [germ.phi.derive(name) for name in germ.t_names()]
    try:
        graph = implicit_solve(equations, germ.t_names(), target=central)
    except SingularJacobianError:
        raise DegenerateFormError(
            "t-Hessian at the origin is singular; the critical graph is not isolated"
        ) from None
    for g in graph:
        if not g.is_real():
            raise InvariantError("critical graph of a real jet came out non-real")

    assignment: dict[str, Jet] = {
        name: Jet.variable(central, order, name) for name in central.names
    }
    for name, g in zip(germ.t_names(), graph):
        # Promotion is exact here: phi has no t-linear terms with constant
        # coefficient, so top-order terms of F influence phi(., F) only
        # beyond the working order.
        assignment[name] = g.with_order(order)
    sigma = compose(germ.phi, assignment, alphabet=central, order=order)
    make_germ(germ.nu, 0, sigma)  # eager validation: real, flat at 0
    return CentralManifold(germ, tuple(graph), sigma)


def straighten(germ: StructureGerm, manifold: CentralManifold | None = None) -> StructureGerm:
    """Move the critical graph to {t = 0} by the substitution t -> t + F."""
    if manifold is None:
        manifold = central_manifold(germ)
    if manifold.germ is not germ and manifold.germ != germ:
        raise PreconditionError("manifold was computed for a different germ")
    if germ.nprime == 0:
        return germ
    order = germ.order
    full = germ.alphabet
    assignment: dict[str, Jet] = {
        name: Jet.variable(full, order, name) for name in full.names
    }
    for name, g in zip(germ.t_names(), manifold.graph):
        assignment[name] = assignment[name] + g.rename({}, full).with_order(order)
    phi_new = compose(germ.phi, assignment, alphabet=full, order=order)
    return make_germ(germ.nu, germ.nprime, phi_new)


def is_straightened(germ: StructureGerm) -> bool:
    """True when no monomial of phi has total t-degree exactly one."""
    t_set = set(germ.t_names())
    names = germ.alphabet.names
    for vec, _ in germ.phi.monomials():
        tdeg = sum(e for name, e in zip(names, vec) if name in t_set)
        if tdeg == 1:
            return False
    return True


@dataclass(frozen=True)
class MorseNormalForm:
    germ: StructureGerm
    base: Jet
    quad_coeffs: tuple[Fraction, ...]
    maps: tuple[Jet, ...]
    congruence: tuple[tuple[Fraction, ...], ...]

    @property
    def signature(self) -> int:
        """Number of positive squares."""
        return sum(1 for c in self.quad_coeffs if c > 0)

    def reconstruct(self) -> Jet:
        """base + sum c_l * G_l^2 over the germ alphabet at full order."""
        order = self.germ.order
        full = self.germ.alphabet
        total = self.base.rename({}, full) if self.base.alphabet != full else self.base
        total = total.with_order(order)
        for c, g in zip(self.quad_coeffs, self.maps):
            # G is reliable one order down; squaring doubles the valuation
            # of the unknown part past the working order.
            gk = g.with_order(order)
            total = total + gk * gk * c
        return total


def morse_normalize(germ: StructureGerm) -> MorseNormalForm:
    """Split a straightened germ as phi(.,0) plus signed rational squares.

    Requires every monomial of phi to have t-degree 0 or >= 2 and the
    constant t-Hessian to be invertible. The returned maps G_l live over
    the germ alphabet one order down; reconstruct() must reproduce phi
    exactly, and this is verified before returning.
    """
    order = germ.order
    full = germ.alphabet
    npr = germ.nprime
    central = standard_alphabet(germ.nu, 0)

    if not is_straightened(germ):
        raise PreconditionError(
            "germ is not straightened: phi has a monomial of t-degree one"
        )

    base_assignment: dict[str, Jet | int] = {
        name: Jet.variable(central, order, name) for name in central.names
    }
    for name in germ.t_names():
        base_assignment[name] = 0
    base = compose(germ.phi, base_assignment, alphabet=central, order=order)

    if npr == 0:
        return MorseNormalForm(germ, base, (), (), ())

    hess = t_hessian(germ)
    congruence, diag = symmetric_diagonalize(hess)
    if any(d == 0 for d in diag):
        raise DegenerateFormError("constant t-Hessian is singular")

    remainder = germ.phi - base.rename({}, full).with_order(order)

    # Diagonalize the quadratic t-part: substitute t_l -> sum_k P[l][k] t_k.
    t_names = germ.t_names()
    ident = {name: Jet.variable(full, order, name) for name in full.names}
    lin_assignment = dict(ident)
    for l, tname in enumerate(t_names):
        acc = Jet.zero(full, order)
        for k, uname in enumerate(t_names):
            if congruence[l][k]:
                acc = acc + ident[uname] * congruence[l][k]
        lin_assignment[tname] = acc
    remainder = compose(remainder, lin_assignment, alphabet=full, order=order)

    squares: list[Jet] = []
    coeffs: list[Fraction] = []
    for l, tname in enumerate(t_names):
        slope = remainder.derive(tname)
        reduced = full.subalphabet([n for n in full.names if n != tname])
        critical = implicit_solve([slope], [tname], target=reduced)[0]
        critical_full = critical.rename({}, full).with_order(order)
        # Promotion justified: d remainder / d t_l has positive valuation,
        # so top-order terms of the critical point shift the composition
        # only past the working order.

        shift = dict(ident)
        shift[tname] = ident[tname] + critical_full
        shifted = compose(remainder, shift, alphabet=full, order=order)
        at_crit = dict(ident)
        at_crit[tname] = critical_full
        rest = compose(remainder, at_crit, alphabet=full, order=order)

        doubly = shifted - rest
        try:
            quotient = doubly.divide_by_coordinate(tname).divide_by_coordinate(tname)
        except NotDivisibleError:
            raise InvariantError(
                "square completion left terms below quadratic t-degree; "
                "the critical point was not critical"
            ) from None

        unshift = {name: Jet.variable(full, order - 2, name) for name in full.names}
        unshift[tname] = unshift[tname] - critical_full.truncate(order - 2)
        factor = compose(quotient, unshift, alphabet=full, order=order - 2)

        c0 = factor.constant_term()
        if not c0.is_real() or c0.is_zero():
            raise InvariantError(f"square coefficient {c0} is not a nonzero rational")
        c = c0.real
        root = jet_sqrt(factor * (Fraction(1) / c))
        # root has constant term one; reliable at order - 2.
        linear_factor = ident[tname].truncate(order - 1) - critical_full.truncate(order - 1)
        square = linear_factor * root.with_order(order - 1)
        # The promotion of the root is exact to this order because the
        # linear factor has positive valuation.
        squares.append(square)
        coeffs.append(c)
        remainder = rest

    if not remainder.is_zero():
        raise InvariantError(
            "Morse remainder after eliminating every t variable is nonzero"
        )

    inverse = invert_matrix(congruence)
    down = {name: Jet.variable(full, order - 1, name) for name in full.names}
    back = dict(down)
    for k, uname in enumerate(t_names):
        acc = Jet.zero(full, order - 1)
        for j, tname in enumerate(t_names):
            if inverse[k][j]:
                acc = acc + down[tname] * inverse[k][j]
        back[uname] = acc
    maps = tuple(
        compose(v, back, alphabet=full, order=order - 1) for v in squares
    )

    form = MorseNormalForm(
        germ,
        base,
        tuple(coeffs),
        maps,
        tuple(tuple(row) for row in congruence),
    )
    if form.reconstruct() != germ.phi:
        raise InvariantError("Morse reconstruction failed to reproduce phi exactly")
    return form
