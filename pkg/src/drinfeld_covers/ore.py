"""Twisted polynomials L{tau} with tau*a = a^q*tau.

These are the F_q-linear endomorphisms of the additive group over L:
tau^i acts as x -> x^(q^i).
"""

from __future__ import annotations

from drinfeld_covers.algebra.field import FiniteField
from drinfeld_covers.algebra.poly import Poly

TAU = "t"


class OrePoly:
    """Immutable element of L{tau}; ``coeffs[i]`` multiplies tau^i."""

    __slots__ = ("field", "q", "coeffs")

    def __init__(self, field: FiniteField, q: int, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.q = q
        self.coeffs = tuple(c)

    @classmethod
    def tau(cls, field: FiniteField, q: int) -> OrePoly:
        return cls(field, q, (0, 1))

    @classmethod
    def const(cls, field: FiniteField, q: int, c: int) -> OrePoly:
        return cls(field, q, (c,))

    @property
    def degree(self) -> int:
        """tau-degree; -1 for zero."""
        return len(self.coeffs) - 1

    @property
    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, OrePoly):
            return NotImplemented
        return self.field is other.field and self.q == other.q and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.field), self.q, self.coeffs))

    def __repr__(self):
        return f"OrePoly({self.format()})"

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def format(self) -> str:
        from drinfeld_covers.algebra.grammar import format_poly_coeffs

        return format_poly_coeffs(self.field, self.coeffs, TAU)

    def _check(self, other: OrePoly):
        if other.field is not self.field or other.q != self.q:
            raise ValueError(
                f"twisted polynomials over different rings: {self.field!r}/q={self.q} "
                f"vs {other.field!r}/q={other.q}"
            )

    def __add__(self, other: OrePoly) -> OrePoly:
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return OrePoly(F, self.q, out)

    def __neg__(self) -> OrePoly:
        F = self.field
        return OrePoly(F, self.q, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other: OrePoly) -> OrePoly:
        return self + (-other)

    def __mul__(self, other: OrePoly) -> OrePoly:
        # (a tau^i)(b tau^j) = a * b^(q^i) * tau^(i+j)
        self._check(other)
        F = self.field
        q = self.q
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return OrePoly(F, q)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, F.frobenius(y, i, q)))
        return OrePoly(F, q, out)

    def __pow__(self, e: int) -> OrePoly:
        result = OrePoly.const(self.field, self.q, 1)
        for _ in range(e):
            result = result * self
        return result

    def right_divmod(self, g: OrePoly) -> tuple[OrePoly, OrePoly]:
        """(Q, R) with self = Q*g + R and deg R < deg g."""
        self._check(g)
        if not g:
            raise ZeroDivisionError("division by the zero twisted polynomial")
        F, q = self.field, self.q
        r = self
        n = g.degree
        lead = g.coeffs[-1]
        quot = [0] * max(self.degree - n + 1, 0)
        while r.degree >= n:
            k = r.degree - n
            c = F.div(r.coeffs[-1], F.frobenius(lead, k, q))
            quot[k] = c
            r = r - OrePoly(F, q, (0,) * k + (c,)) * g
        return OrePoly(F, q, quot), r

    def __call__(self, x: int, field: FiniteField | None = None) -> int:
        """Evaluate the additive polynomial sum c_i x^(q^i)."""
        F = field or self.field
        acc = 0
        y = x
        for c in self.coeffs:
            if c:
                acc = F.add(acc, F.mul(c, y))
            y = F.pow(y, self.q)
        return acc

    def to_additive(self) -> Poly:
        """tau^i -> X^(q^i)."""
        if not self.coeffs:
            return Poly(self.field)
        out = [0] * (self.q**self.degree + 1)
        for i, c in enumerate(self.coeffs):
            out[self.q**i] = c
        return Poly(self.field, out)

    def embed(self, field: FiniteField) -> OrePoly:
        if not field.contains(self.field):
            raise ValueError("target field does not contain the coefficient field")
        return OrePoly(field, self.q, self.coeffs)


def parse_ore(field: FiniteField, q: int, text: str) -> OrePoly:
    """Parse ``c*t^i`` terms with coefficients in the field-element grammar."""
    from drinfeld_covers.algebra.grammar import FieldAlgebra, _Algebra, evaluate

    coeff = FieldAlgebra(field)

    class OreAlgebra(_Algebra):
        def zero(self):
            return OrePoly(field, q)

        def from_int(self, n):
            return OrePoly.const(field, q, coeff.from_int(n))

        def symbol(self, name):
            if name == TAU:
                return OrePoly.tau(field, q)
            return OrePoly.const(field, q, coeff.symbol(name))

        def add(self, a, b):
            return a + b

        def neg(self, a):
            return -a

        def mul(self, a, b):
            return a * b

    return evaluate(text, OreAlgebra())


def ore_add(f: OrePoly, g: OrePoly) -> OrePoly:
    return f + g


def ore_mul(f: OrePoly, g: OrePoly) -> OrePoly:
    return f * g


def ore_right_divmod(f: OrePoly, g: OrePoly) -> tuple[OrePoly, OrePoly]:
    return f.right_divmod(g)


def to_additive(f: OrePoly) -> Poly:
    return f.to_additive()
