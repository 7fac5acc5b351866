"""Ordered variable alphabets with an optional conjugation involution.

Monomials over an alphabet are packed into single integers: one bit field
per variable plus the total degree in the topmost field. Consequences the
rest of the package relies on:

  * monomial product is integer addition of codes;
  * ascending code order is a graded order (degree first), fixed once per
    alphabet, which makes serialization canonical;
  * alphabets with at most 9 variables use 6-bit fields so every code of a
    jet of order <= 30 fits in a signed 64-bit word (the compiled kernel's
    fast path); larger alphabets fall back to 16-bit fields.

Conjugation is a name-level involution. Variables the involution fixes are
real. An alphabet may also carry no conjugation at all (holomorphic side
computations), in which case conjugation-dependent jet operations refuse
to run rather than guess.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import PreconditionError

SMALL_VAR_BITS = 6
WIDE_VAR_BITS = 16
SMALL_LIMIT = 9  # max variables for the 64-bit packing


class Alphabet:
    __slots__ = (
        "names",
        "index",
        "nvars",
        "var_bits",
        "shifts",
        "deg_shift",
        "mask",
        "max_exponent",
        "conj_map",
        "conj_perm",
        "fits64",
        "_hash",
    )

    def __init__(
        self,
        names: Sequence[str],
        conjugation: Mapping[str, str] | None = None,
    ):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise PreconditionError(f"duplicate variable names in {names}")
        if not names:
            raise PreconditionError("alphabet needs at least one variable")
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self.nvars = len(names)
        self.var_bits = SMALL_VAR_BITS if self.nvars <= SMALL_LIMIT else WIDE_VAR_BITS
        # Variable 0 owns the most significant field below the degree field,
        # so ascending code order refines ascending total degree.
        self.shifts = tuple(
            self.var_bits * (self.nvars - 1 - i) for i in range(self.nvars)
        )
        self.deg_shift = self.var_bits * self.nvars
        self.mask = (1 << self.var_bits) - 1
        # Exponent cap leaves one bit of headroom: two in-range exponents
        # may be added (code addition) without crossing field boundaries.
        self.max_exponent = (1 << (self.var_bits - 1)) - 2
        self.fits64 = self.deg_shift + self.var_bits <= 63

        if conjugation is None:
            self.conj_map = None
            self.conj_perm = None
        else:
            full = dict(conjugation)
            # Each pair may be given in one direction only.
            for n, m in list(full.items()):
                full.setdefault(m, n)
            for n in names:
                full.setdefault(n, n)
            for n, m in full.items():
                if n not in self.index or m not in self.index:
                    raise PreconditionError(f"conjugation names unknown variable: {n} -> {m}")
                if full.get(m) != n:
                    raise PreconditionError(f"conjugation is not an involution at {n!r}")
            self.conj_map = full
            self.conj_perm = tuple(self.index[full[n]] for n in names)
        self._hash = hash((self.names, None if self.conj_map is None else tuple(sorted(self.conj_map.items()))))

    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Alphabet):
            return NotImplemented
        return self.names == other.names and self.conj_map == other.conj_map

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Alphabet({list(self.names)!r})"

    def is_real_variable(self, name: str) -> bool:
        if self.conj_map is None:
            raise PreconditionError(f"alphabet {self.names} carries no conjugation")
        return self.conj_map[name] == name

    # ------------------------------------------------------------------
    # monomial codes
    # ------------------------------------------------------------------

    def encode(self, exponents: Sequence[int]) -> int:
        """Pack an exponent vector (aligned with self.names) into a code."""
        code = 0
        deg = 0
        for e, shift in zip(exponents, self.shifts, strict=True):
            if e < 0 or e > self.max_exponent:
                raise PreconditionError(
                    f"exponent {e} outside [0, {self.max_exponent}] for this alphabet"
                )
            code += e << shift
            deg += e
        return code + (deg << self.deg_shift)

    def encode_dict(self, exponents: Mapping[str, int]) -> int:
        vec = [0] * self.nvars
        for name, e in exponents.items():
            if name not in self.index:
                raise PreconditionError(f"unknown variable {name!r}; alphabet has {self.names}")
            vec[self.index[name]] = e
        return self.encode(vec)

    def decode(self, code: int) -> tuple[int, ...]:
        return tuple((code >> s) & self.mask for s in self.shifts)

    def degree(self, code: int) -> int:
        return code >> self.deg_shift

    def exponent_of(self, code: int, name: str) -> int:
        return (code >> self.shifts[self.index[name]]) & self.mask

    def conjugate_code(self, code: int) -> int:
        if self.conj_perm is None:
            raise PreconditionError(f"alphabet {self.names} carries no conjugation")
        vec = self.decode(code)
        out = 0
        for i, j in enumerate(self.conj_perm):
            out += vec[i] << self.shifts[j]
        return out + ((code >> self.deg_shift) << self.deg_shift)

    # ------------------------------------------------------------------
    # derived alphabets
    # ------------------------------------------------------------------

    def subalphabet(self, names: Iterable[str]) -> Alphabet:
        """Restrict to a subset of variables, keeping their order.

        Conjugation survives only if it maps the subset into itself;
        otherwise the result carries no conjugation.
        """
        keep = [n for n in self.names if n in set(names)]
        if self.conj_map is not None and all(self.conj_map[n] in keep for n in keep):
            conj = {n: self.conj_map[n] for n in keep}
            return Alphabet(keep, conj)
        return Alphabet(keep, None)

    def max_order(self) -> int:
        """Largest jet order whose monomial codes stay within the fields."""
        return self.max_exponent
