"""Truncated multivariate formal power series (jets) over exact scalars.

A Jet stores the coefficients of a polynomial of total degree <= order in
the variables of an Alphabet, with Gaussian-rational coefficients. The
order is a reliability statement, not a degree bound: coefficients beyond
it are unknown, never assumed zero. Every operation states what it does to
the order:

  * ring operations and powers keep the common order (strict: operands
    must agree on alphabet and order, truncate explicitly first);
  * derive loses one order;
  * divide_by_coordinate loses one order;
  * compose returns the minimum of the participating orders;
  * unit_inverse and jet_sqrt keep the order.

Storage is a sparse dict from packed monomial code to coefficient; zero
coefficients are never stored. Term order for iteration and serialization
is the alphabet's graded order (ascending code), so equal jets print and
serialize identically.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from . import _kernels
from .alphabet import Alphabet
from .errors import (
    AlphabetMismatchError,
    NonUnitConstantError,
    NotDivisibleError,
    OrderMismatchError,
    PreconditionError,
)
from .rationals import ZERO, GaussianRational, as_gaussian

Scalar = int | Fraction | GaussianRational


class Jet:
    __slots__ = ("alphabet", "order", "terms")

    def __init__(self, alphabet: Alphabet, order: int, terms: Mapping[int, GaussianRational]):
        if order < 0:
            raise PreconditionError("jet order must be nonnegative")
        if order > alphabet.max_order():
            raise PreconditionError(
                f"order {order} exceeds {alphabet.max_order()}, the packing limit for this alphabet"
            )
        clean = {}
        for code, coeff in terms.items():
            if alphabet.degree(code) > order:
                raise PreconditionError(
                    f"term of degree {alphabet.degree(code)} exceeds declared order {order}"
                )
            if not coeff.is_zero():
                clean[code] = coeff
        self.alphabet = alphabet
        self.order = order
        self.terms = clean

    @classmethod
    def _raw(cls, alphabet: Alphabet, order: int, terms: dict) -> Jet:
        """Internal constructor: terms already validated and zero-free."""
        self = object.__new__(cls)
        self.alphabet = alphabet
        self.order = order
        self.terms = terms
        return self

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, alphabet: Alphabet, order: int) -> Jet:
        return cls(alphabet, order, {})

    @classmethod
    def constant(cls, alphabet: Alphabet, order: int, value: Scalar) -> Jet:
        v = as_gaussian(value)
        return cls(alphabet, order, {} if v.is_zero() else {0: v})

    @classmethod
    def variable(cls, alphabet: Alphabet, order: int, name: str) -> Jet:
        if name not in alphabet.index:
            raise PreconditionError(f"unknown variable {name!r}; alphabet has {alphabet.names}")
        if order < 1:
            raise PreconditionError("order must be at least 1 to carry a variable")
        code = alphabet.encode_dict({name: 1})
        return cls._raw(alphabet, order, {code: as_gaussian(1)})

    @classmethod
    def from_terms(
        cls,
        alphabet: Alphabet,
        order: int,
        data: Mapping[tuple[int, ...] | frozenset, Scalar] | Iterable[tuple[Mapping[str, int], Scalar]],
    ) -> Jet:
        """Build from (exponent vector | exponent dict) -> coefficient data."""
        terms: dict[int, GaussianRational] = {}
        items = data.items() if isinstance(data, Mapping) else data
        for key, value in items:
            if isinstance(key, tuple):
                code = alphabet.encode(key)
            else:
                code = alphabet.encode_dict(dict(key))
            coeff = terms.get(code, ZERO) + as_gaussian(value)
            if coeff.is_zero():
                terms.pop(code, None)
            else:
                terms[code] = coeff
        return cls(alphabet, order, terms)

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> GaussianRational:
        return self.terms.get(0, ZERO)

    def coefficient(self, exponents: Mapping[str, int] | tuple[int, ...]) -> GaussianRational:
        if isinstance(exponents, tuple):
            code = self.alphabet.encode(exponents)
        else:
            code = self.alphabet.encode_dict(dict(exponents))
        if self.alphabet.degree(code) > self.order:
            raise PreconditionError(
                f"coefficient of degree {self.alphabet.degree(code)} is beyond order {self.order}"
            )
        return self.terms.get(code, ZERO)

    def valuation(self) -> int | None:
        """Lowest total degree carrying a nonzero term; None for the zero jet."""
        if not self.terms:
            return None
        return self.alphabet.degree(min(self.terms))

    def support(self) -> set[str]:
        """Variables appearing with a positive exponent."""
        out: set[str] = set()
        decode = self.alphabet.decode
        names = self.alphabet.names
        for code in self.terms:
            for name, e in zip(names, decode(code)):
                if e:
                    out.add(name)
        return out

    def monomials(self) -> Iterator[tuple[tuple[int, ...], GaussianRational]]:
        """Terms in the canonical graded order."""
        decode = self.alphabet.decode
        for code in sorted(self.terms):
            yield decode(code), self.terms[code]

    def homogeneous_part(self, degree: int) -> Jet:
        deg = self.alphabet.degree
        return Jet._raw(
            self.alphabet,
            self.order,
            {c: v for c, v in self.terms.items() if deg(c) == degree},
        )

    def max_exponent_of(self, name: str) -> int:
        shift = self.alphabet.shifts[self.alphabet.index[name]]
        mask = self.alphabet.mask
        return max(((c >> shift) & mask for c in self.terms), default=0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Jet):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.order == other.order
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.order, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        body = self.to_text()
        return f"<Jet O({self.order}) {body}>"

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        names = self.alphabet.names
        parts = []
        for vec, coeff in self.monomials():
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(names, vec)
                if e
            ]
            mono = "*".join(factors)
            cs = str(coeff)
            if "+" in cs[1:] or "-" in cs[1:]:
                cs = f"({cs})"
            parts.append(cs if not mono else f"{cs}*{mono}")
        return " + ".join(parts)

    # ------------------------------------------------------------------
    # order management
    # ------------------------------------------------------------------

    def truncate(self, order: int) -> Jet:
        """Drop all terms of degree above ``order`` and lower the order."""
        if order > self.order:
            raise OrderMismatchError(
                f"cannot truncate order {self.order} jet up to {order}; use with_order"
            )
        if order == self.order:
            return self
        deg = self.alphabet.degree
        return Jet._raw(
            self.alphabet, order, {c: v for c, v in self.terms.items() if deg(c) <= order}
        )

    def with_order(self, order: int) -> Jet:
        """Re-declare the reliable order.

        Lowering truncates. Raising is an assertion by the caller that the
        missing coefficients cannot influence the use the result is put to
        (a valuation argument at the call site); the data is not changed.
        """
        if order <= self.order:
            return self.truncate(order)
        if order > self.alphabet.max_order():
            raise PreconditionError("requested order exceeds the packing limit")
        return Jet._raw(self.alphabet, order, dict(self.terms))

    def _check_compatible(self, other: Jet) -> None:
        if self.alphabet != other.alphabet:
            raise AlphabetMismatchError(
                f"operands over {self.alphabet.names} and {other.alphabet.names}"
            )
        if self.order != other.order:
            raise OrderMismatchError(
                f"operand orders {self.order} and {other.order} differ; truncate explicitly"
            )

    # ------------------------------------------------------------------
    # ring operations
    # ------------------------------------------------------------------

    def __add__(self, other: object) -> Jet:
        if isinstance(other, Jet):
            self._check_compatible(other)
            terms = dict(self.terms)
            for code, coeff in other.terms.items():
                s = terms.get(code, ZERO) + coeff
                if s.is_zero():
                    terms.pop(code, None)
                else:
                    terms[code] = s
            return Jet._raw(self.alphabet, self.order, terms)
        if isinstance(other, (int, Fraction, GaussianRational)):
            v = as_gaussian(other)
            if v.is_zero():
                return self
            terms = dict(self.terms)
            s = terms.get(0, ZERO) + v
            if s.is_zero():
                terms.pop(0, None)
            else:
                terms[0] = s
            return Jet._raw(self.alphabet, self.order, terms)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> Jet:
        return Jet._raw(self.alphabet, self.order, {c: -v for c, v in self.terms.items()})

    def __sub__(self, other: object) -> Jet:
        if isinstance(other, Jet):
            self._check_compatible(other)
            terms = dict(self.terms)
            for code, coeff in other.terms.items():
                s = terms.get(code, ZERO) - coeff
                if s.is_zero():
                    terms.pop(code, None)
                else:
                    terms[code] = s
            return Jet._raw(self.alphabet, self.order, terms)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self + (-as_gaussian(other))
        return NotImplemented

    def __rsub__(self, other: object) -> Jet:
        return (-self) + other

    def __mul__(self, other: object) -> Jet:
        if isinstance(other, Jet):
            self._check_compatible(other)
            terms = _kernels.mul_terms(
                self.terms,
                other.terms,
                self.alphabet.deg_shift,
                self.order,
                self.alphabet.fits64,
            )
            return Jet._raw(self.alphabet, self.order, terms)
        if isinstance(other, (int, Fraction, GaussianRational)):
            v = as_gaussian(other)
            if v.is_zero():
                return Jet._raw(self.alphabet, self.order, {})
            return Jet._raw(
                self.alphabet, self.order, {c: coeff * v for c, coeff in self.terms.items()}
            )
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Jet:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise PreconditionError("negative jet powers go through unit_inverse")
        out = Jet.constant(self.alphabet, self.order, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    # ------------------------------------------------------------------
    # calculus
    # ------------------------------------------------------------------

    def derive(self, name: str) -> Jet:
        """Formal partial derivative; the result is reliable one order lower."""
        if self.order == 0:
            raise PreconditionError("cannot derive an order-0 jet")
        alpha = self.alphabet
        if name not in alpha.index:
            raise PreconditionError(f"unknown variable {name!r}")
        shift = alpha.shifts[alpha.index[name]]
        mask = alpha.mask
        step = (1 << shift) + (1 << alpha.deg_shift)
        terms = {}
        for code, coeff in self.terms.items():
            e = (code >> shift) & mask
            if e:
                terms[code - step] = coeff * e
        return Jet._raw(alpha, self.order - 1, terms)

    def divide_by_coordinate(self, name: str) -> Jet:
        """Exact division by a variable; the result is reliable one order lower."""
        if self.order == 0:
            raise PreconditionError("cannot divide an order-0 jet by a coordinate")
        alpha = self.alphabet
        if name not in alpha.index:
            raise PreconditionError(f"unknown variable {name!r}")
        shift = alpha.shifts[alpha.index[name]]
        mask = alpha.mask
        step = (1 << shift) + (1 << alpha.deg_shift)
        terms = {}
        for code, coeff in self.terms.items():
            if not (code >> shift) & mask:
                vec = alpha.decode(code)
                mono = "*".join(
                    n if e == 1 else f"{n}^{e}"
                    for n, e in zip(alpha.names, vec)
                    if e
                ) or "1"
                raise NotDivisibleError(
                    f"monomial {mono} lacks a factor of {name!r}"
                )
            terms[code - step] = coeff
        return Jet._raw(alpha, self.order - 1, terms)

    # ------------------------------------------------------------------
    # conjugation and reality
    # ------------------------------------------------------------------

    def conjugate(self) -> Jet:
        """Coefficient conjugation combined with the alphabet involution."""
        alpha = self.alphabet
        terms = {
            alpha.conjugate_code(code): coeff.conjugate()
            for code, coeff in self.terms.items()
        }
        return Jet._raw(alpha, self.order, terms)

    def is_real(self) -> bool:
        """True when conjugation reproduces the jet exactly."""
        return self.terms == self.conjugate().terms

    def real_part(self) -> Jet:
        return (self + self.conjugate()) * Fraction(1, 2)

    def imag_part(self) -> Jet:
        return (self - self.conjugate()) * GaussianRational(0, Fraction(-1, 2))

    # ------------------------------------------------------------------
    # units
    # ------------------------------------------------------------------

    def unit_inverse(self) -> Jet:
        """Geometric-series inverse; requires a nonzero constant term."""
        c = self.constant_term()
        if c.is_zero():
            raise NonUnitConstantError("inverse of a jet with zero constant term")
        cinv = c.inverse()
        n = (self - c) * (-cinv)  # valuation >= 1
        acc = Jet.constant(self.alphabet, self.order, 1)
        power = acc
        for _ in range(self.order):
            power = power * n
            if power.is_zero():
                break
            acc = acc + power
        return acc * cinv

    # ------------------------------------------------------------------
    # variable plumbing
    # ------------------------------------------------------------------

    def rename(self, mapping: Mapping[str, str], target: Alphabet) -> Jet:
        """Re-express over ``target``, renaming variables per ``mapping``.

        Variables outside the jet's support may be omitted. If two source
        variables map to one target name their exponents add.
        """
        alpha = self.alphabet
        dest_index = []
        for name in alpha.names:
            new = mapping.get(name, name)
            dest_index.append(target.index.get(new, -1))
        terms = {}
        for code, coeff in self.terms.items():
            vec = alpha.decode(code)
            out = [0] * target.nvars
            for k, e in enumerate(vec):
                if e:
                    j = dest_index[k]
                    if j < 0:
                        raise PreconditionError(
                            f"support variable {alpha.names[k]!r} has no image in the target alphabet"
                        )
                    out[j] += e
            new_code = target.encode(out)
            if new_code in terms:
                terms[new_code] = terms[new_code] + coeff
            else:
                terms[new_code] = coeff
        return Jet(target, self.order, terms)

    def embed(self, target: Alphabet) -> Jet:
        """Identity renaming into a larger alphabet."""
        return self.rename({}, target)

    # ------------------------------------------------------------------
    # evaluation
    # ------------------------------------------------------------------

    def evaluate(self, point: Mapping[str, Scalar]) -> GaussianRational:
        """Exact value of the stored polynomial at a point."""
        vals = []
        for name in self.alphabet.names:
            vals.append(as_gaussian(point[name]) if name in point else None)
        total = ZERO
        for code, coeff in self.terms.items():
            vec = self.alphabet.decode(code)
            term = coeff
            for e, v in zip(vec, vals):
                if e:
                    if v is None:
                        raise PreconditionError("evaluation point misses a support variable")
                    term = term * v**e
            total = total + term
        return total


# ----------------------------------------------------------------------
# free functions
# ----------------------------------------------------------------------


def generators(alphabet: Alphabet, order: int) -> dict[str, Jet]:
    """One degree-1 jet per variable."""
    return {name: Jet.variable(alphabet, order, name) for name in alphabet.names}


def compose_many(
    outers: Sequence[Jet],
    assignment: Mapping[str, Jet | Scalar],
    *,
    allow_constant: Iterable[str] = (),
    alphabet: Alphabet | None = None,
    order: int | None = None,
) -> list[Jet]:
    """Substitute jets for variables in several jets sharing one assignment.

    Every variable in the support of any outer jet must be assigned a jet
    (or exact scalar) over one common target alphabet. Substituted values
    must have zero constant term unless the variable is listed in
    ``allow_constant``; a constant shift is exact polynomial recentering
    at the stored truncation. The result order is the minimum of the outer
    orders, the substituted jet orders, and ``order`` if given. Power
    tables are shared across the batch, which is what makes Newton solves
    cheap; prefer one compose_many call over many compose calls.
    """
    if not outers:
        return []
    src = outers[0].alphabet
    for o in outers:
        if o.alphabet != src:
            raise AlphabetMismatchError("outer jets must share one alphabet")

    allow = set(allow_constant)
    result_order = min(o.order for o in outers)
    if order is not None:
        result_order = min(result_order, order)

    target = alphabet
    jets_assigned: dict[str, Jet | GaussianRational] = {}
    for name, value in assignment.items():
        if name not in src.index:
            raise PreconditionError(f"assignment names unknown variable {name!r}")
        if isinstance(value, Jet):
            if target is None:
                target = value.alphabet
            elif value.alphabet != target:
                raise AlphabetMismatchError("substituted jets must share one alphabet")
            result_order = min(result_order, value.order)
            jets_assigned[name] = value
        else:
            jets_assigned[name] = as_gaussian(value)
    if target is None:
        raise PreconditionError("all-scalar assignment needs an explicit target alphabet")

    support: set[str] = set()
    for o in outers:
        support |= o.support()
    missing = support - jets_assigned.keys()
    if missing:
        raise PreconditionError(f"assignment misses support variables {sorted(missing)}")
    for name in support:
        v = jets_assigned[name]
        const = v.constant_term() if isinstance(v, Jet) else v
        if not const.is_zero() and name not in allow:
            raise PreconditionError(
                f"substitution for {name!r} has constant term {const}; "
                "recentering must be requested via allow_constant"
            )

    # Promote scalars to constant jets once and align orders.
    sub: dict[str, Jet] = {}
    for name in support:
        v = jets_assigned[name]
        if isinstance(v, Jet):
            sub[name] = v.truncate(result_order)
        else:
            sub[name] = Jet.constant(target, result_order, v)

    one = Jet.constant(target, result_order, 1)
    powers: dict[str, list[Jet]] = {}
    for name in support:
        need = max(o.max_exponent_of(name) for o in outers)
        table = [one]
        base = sub[name]
        for _ in range(need):
            table.append(table[-1] * base)
        powers[name] = table

    names = src.names
    out: list[Jet] = []
    for o in outers:
        acc = Jet.zero(target, result_order)
        for code in sorted(o.terms):
            coeff = o.terms[code]
            vec = src.decode(code)
            term: Jet | None = None
            for name, e in zip(names, vec):
                if e:
                    p = powers[name][e]
                    term = p if term is None else term * p
            if term is None:
                acc = acc + coeff
            else:
                acc = acc + term * coeff
        out.append(acc)
    return out


def compose(
    outer: Jet,
    assignment: Mapping[str, Jet | Scalar],
    *,
    allow_constant: Iterable[str] = (),
    alphabet: Alphabet | None = None,
    order: int | None = None,
) -> Jet:
    """Single-jet form of compose_many; see there for the contract."""
    return compose_many(
        [outer], assignment, allow_constant=allow_constant, alphabet=alphabet, order=order
    )[0]


def jet_sqrt(a: Jet) -> Jet:
    """Square root of a jet with constant term exactly 1 (the +1 branch).

    Callers holding a jet with constant c^2 must rescale explicitly;
    silent rescaling would hide a branch choice.
    """
    if a.constant_term() != as_gaussian(1):
        raise NonUnitConstantError(
            f"jet_sqrt needs constant term 1, got {a.constant_term()}"
        )
    y = Jet.constant(a.alphabet, a.order, 1)
    half = Fraction(1, 2)
    for k in range(1, a.order + 1):
        r = a - y * y
        if r.is_zero():
            break
        y = y + r.homogeneous_part(k) * half
    return y


def truncate_all(jets: Iterable[Jet], order: int) -> list[Jet]:
    return [j.truncate(order) for j in jets]
