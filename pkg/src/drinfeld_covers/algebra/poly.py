"""Univariate polynomials over a tower level.

The same class serves for A = F_q[T], for polynomials over extension fields
(root finding, additive polynomials) and for tower moduli.
"""

from __future__ import annotations

from collections.abc import Iterator

from drinfeld_covers.algebra.field import FiniteField

POLY_DEGREE_CAP = 8


class CapExceeded(RuntimeError):
    """An exhaustive computation would exceed its configured size cap."""


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def x(cls, field: FiniteField) -> Poly:
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: FiniteField, c: int) -> Poly:
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field: FiniteField, c: int, k: int) -> Poly:
        return cls(field, (0,) * k + (c,))

    @classmethod
    def from_int(cls, field: FiniteField, n: int) -> Poly:
        """Decode the base-|field| integer encoding (low degree digit least significant)."""
        Q = field.order
        out = []
        while n:
            n, r = divmod(n, Q)
            out.append(r)
        return cls(field, out)

    def to_int(self) -> int:
        Q = self.field.order
        n = 0
        for c in reversed(self.coeffs):
            n = n * Q + c
        return n

    # -- basic properties ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __lt__(self, other: Poly) -> bool:
        return (self.degree, self.to_int()) < (other.degree, other.to_int())

    def __repr__(self):
        return f"Poly({self.format('T')})"

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def format(self, var: str = "T") -> str:
        from drinfeld_covers.algebra.grammar import format_poly_coeffs

        return format_poly_coeffs(self.field, self.coeffs, var)

    # -- ring operations -----------------------------------------------------

    def _check(self, other: Poly):
        if other.field is not self.field:
            raise ValueError("polynomials over different fields")

    def _coerce(self, other) -> Poly:
        if isinstance(other, int):
            return Poly.const(self.field, other)
        self._check(other)
        return other

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other) -> Poly:
        return self + (-self._coerce(other))

    def __mul__(self, other) -> Poly:
        other = self._coerce(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(F, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> Poly:
        F = self.field
        return Poly(F, [F.mul(c, x) for x in self.coeffs])

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly.const(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        self._check(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return Poly(F), self
        inv_lead = F.inv(other.lead)
        b = other.coeffs
        q = [0] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c:
                c = F.mul(c, inv_lead)
                q[k - db] = c
                for t in range(db + 1):
                    if b[t]:
                        r[k - db + t] = F.sub(r[k - db + t], F.mul(c, b[t]))
        return Poly(F, q), Poly(F, r[:db])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        if not self:
            return self
        return self.scale(self.field.inv(self.lead))

    def powmod(self, e: int, modulus: Poly) -> Poly:
        result = Poly.const(self.field, 1) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def __call__(self, x: int, field: FiniteField | None = None) -> int:
        """Evaluate at x, which may lie in any level above the coefficient field."""
        F = field or self.field
        if field is not None and not field.contains(self.field):
            raise ValueError("evaluation field does not contain the coefficient field")
        if len(self.coeffs) > 64 and sum(1 for c in self.coeffs if c) * 8 < len(self.coeffs):
            acc = 0
            for k, c in enumerate(self.coeffs):
                if c:
                    acc = F.add(acc, F.mul(c, F.pow(x, k)))
            return acc
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def derivative(self) -> Poly:
        F = self.field
        return Poly(F, [F.scale_int(c, k) for k, c in enumerate(self.coeffs)][1:])

    def embed(self, field: FiniteField) -> Poly:
        if not field.contains(self.field):
            raise ValueError("target field does not contain the coefficient field")
        return Poly(field, self.coeffs)


def gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


def is_irreducible(f: Poly) -> bool:
    """Ben-Or test: no factor of degree <= deg f / 2."""
    d = f.degree
    if d < 1:
        return False
    if d == 1:
        return True
    f = f.monic()
    Q = f.field.order
    x = Poly.x(f.field)
    h = x
    for _ in range(d // 2):
        h = h.powmod(Q, f)
        if gcd(f, h - x).degree > 0:
            return False
    return True


def monic_polys(field: FiniteField, d: int) -> Iterator[Poly]:
    """All monic polynomials of degree d, in increasing base-|field| encoding."""
    Q = field.order
    for n in range(Q**d):
        yield Poly.from_int(field, n + Q**d)


def monic_irreducibles(field: FiniteField, d: int) -> Iterator[Poly]:
    for f in monic_polys(field, d):
        if is_irreducible(f):
            yield f


def smallest_irreducible(field: FiniteField, d: int) -> Poly:
    """First monic irreducible of degree d under the base-|field| encoding order."""
    if d < 1:
        raise ValueError("degree must be positive")
    return next(monic_irreducibles(field, d))


def factor_monic(f: Poly, degree_cap: int = POLY_DEGREE_CAP) -> list[tuple[Poly, int]]:
    """Factor a monic polynomial by trial division, smallest factors first."""
    if f.degree < 1 or not f.is_monic():
        raise ValueError("factor_monic needs a monic polynomial of degree >= 1")
    if f.degree > degree_cap:
        raise CapExceeded(f"degree {f.degree} exceeds factorization cap {degree_cap}")
    out = []
    rest = f
    d = 1
    while rest.degree >= 2 * d:
        for g in monic_irreducibles(f.field, d):
            e = 0
            while True:
                q, r = divmod(rest, g)
                if r:
                    break
                rest = q
                e += 1
            if e:
                out.append((g, e))
            if rest.degree < 2 * d:
                break
        d += 1
    if rest.degree >= 1:
        out.append((rest, 1))
    out.sort(key=lambda ge: (ge[0].degree, ge[0].to_int()))
    return out
