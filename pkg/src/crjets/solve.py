"""Implicit function solving and series reversion over exact jets.

The workhorse is a chord iteration: the Jacobian with respect to the
unknowns is inverted once at the origin, and each sweep replaces the
current guess u by u - J0^{-1} F(x, u). Because the exact solution and
the guess agree to order m after m sweeps (the correction term has one
extra order of vanishing each time), at most ``order`` sweeps reach the
full truncation, and usually the residual hits exact zero earlier. The
final residual is recomputed and must vanish identically; anything else
is a bug, not noise, since all arithmetic is exact.
"""

from __future__ import annotations

from typing import Sequence

from .alphabet import Alphabet
from .errors import InvariantError, PreconditionError, SingularJacobianError
from .jets import Jet, compose_many
from .linalg import invert_matrix
from .rationals import GaussianRational


def implicit_solve(
    equations: Sequence[Jet],
    unknowns: Sequence[str],
    *,
    target: Alphabet | None = None,
    order: int | None = None,
) -> list[Jet]:
    """Solve F(x, u) = 0 for u(x) with u(0) = 0.

    ``equations`` are jets over one alphabet containing both the
    parameters x and the ``unknowns`` u. Each equation must vanish at the
    origin and the Jacobian dF/du at the origin must be invertible. The
    returned jets live over ``target`` (default: the parameter
    subalphabet, in source order) and have zero constant term. They
    satisfy the equations identically at the working order.
    """
    if not equations:
        raise PreconditionError("no equations")
    if len(equations) != len(unknowns):
        raise PreconditionError(
            f"{len(equations)} equations for {len(unknowns)} unknowns"
        )
    src = equations[0].alphabet
    for eq in equations:
        if eq.alphabet != src:
            raise PreconditionError("equations must share one alphabet")
    seen = set()
    for u in unknowns:
        if u not in src.index:
            raise PreconditionError(f"unknown {u!r} is not a variable of the system")
        if u in seen:
            raise PreconditionError(f"unknown {u!r} listed twice")
        seen.add(u)

    work_order = min(eq.order for eq in equations)
    if order is not None:
        if order > work_order:
            raise PreconditionError(
                f"requested order {order} exceeds the least equation order {work_order}"
            )
        work_order = order
    eqs = [eq.truncate(work_order) for eq in equations]

    for i, eq in enumerate(eqs):
        if not eq.constant_term().is_zero():
            raise PreconditionError(
                f"equation {i} does not vanish at the origin: constant {eq.constant_term()}"
            )

    params = [n for n in src.names if n not in seen]
    if target is None:
        target = src.subalphabet(params)
    else:
        for n in params:
            if n not in target.index:
                raise PreconditionError(
                    f"target alphabet lacks parameter {n!r}"
                )

    j0 = [
        [eq.coefficient({u: 1}) for u in unknowns]
        for eq in eqs
    ]
    try:
        j0_inv = invert_matrix(j0)
    except SingularJacobianError:
        raise SingularJacobianError(
            "Jacobian with respect to the unknowns is singular at the origin"
        ) from None

    assignment: dict[str, Jet] = {
        n: Jet.variable(target, work_order, n) for n in params
    }
    guesses: list[Jet] = [Jet.zero(target, work_order) for _ in unknowns]

    for _ in range(work_order + 1):
        for name, g in zip(unknowns, guesses):
            assignment[name] = g
        residuals = compose_many(eqs, assignment, alphabet=target, order=work_order)
        if all(r.is_zero() for r in residuals):
            return guesses
        for j in range(len(unknowns)):
            delta = Jet.zero(target, work_order)
            for k, r in enumerate(residuals):
                c = j0_inv[j][k]
                if not c.is_zero():
                    delta = delta + r * c
            guesses[j] = guesses[j] - delta

    raise InvariantError(
        "chord iteration failed to reach an exactly zero residual; "
        "this indicates corrupted coefficient arithmetic"
    )


def revert_series(f: Jet, variable: str | None = None) -> Jet:
    """Compositional inverse of a one-variable jet with f(0)=0, f'(0) != 0.

    The result g lives over the same alphabet and letter and satisfies
    g(f(x)) = x and f(g(x)) = x to the jet order.
    """
    alpha = f.alphabet
    if alpha.nvars != 1:
        raise PreconditionError("revert_series expects a one-variable jet")
    name = alpha.names[0]
    if variable is not None and variable != name:
        raise PreconditionError(f"jet variable is {name!r}, not {variable!r}")
    if not f.constant_term().is_zero():
        raise PreconditionError("series to revert must vanish at 0")
    if f.coefficient({name: 1}).is_zero():
        raise SingularJacobianError("series to revert has zero linear coefficient")

    out = "out_" + name
    pair = Alphabet((out, name))
    # F(out, name) = f(name) - out, unknown name, parameter out.
    lifted = f.embed(pair)
    equation = lifted - Jet.variable(pair, f.order, out)
    sol = implicit_solve([equation], [name])[0]
    return sol.rename({out: name}, alpha)
