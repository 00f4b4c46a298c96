"""Finite fields as towers of simple extensions.

Elements are plain ints.  An element of a level of degree d over its parent
is the coefficient vector (c_0, ..., c_{d-1}) of a polynomial in the level
generator, encoded as c_0 + c_1*Q + ... + c_{d-1}*Q^(d-1) with Q the parent
order.  Because every coefficient is itself encoded the same way, the int of
an element is its digit vector over the prime field, and the inclusion of a
lower level into a higher one is the identity on ints.
"""

from __future__ import annotations

import math

TABLE_CAP = 1 << 16


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return _prime_factors(n) == [n]


class FiniteField:
    """One level of a finite field tower.

    Construct prime fields with :meth:`prime`; extensions are built with
    ``FiniteField(parent, modulus)`` where ``modulus`` is the coefficient
    tuple (low degree first) of a monic irreducible polynomial over
    ``parent``.  Use :func:`drinfeld_covers.algebra.tower.extend_field` rather
    than calling the constructor directly, so that equal descriptions give
    the identical object.
    """

    def __init__(self, parent: FiniteField | None, modulus):
        if parent is None:
            p = int(modulus)
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            self.p = p
            self.parent = None
            self.modulus = (p,)
            self.degree = 1
            self.order = p
            self.depth = 0
            self.absolute_degree = 1
        else:
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) < 2 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree >= 1")
            if any(not 0 <= c < parent.order for c in modulus):
                raise ValueError("modulus coefficients outside the parent field")
            self.p = parent.p
            self.parent = parent
            self.modulus = modulus
            self.degree = len(modulus) - 1
            self.order = parent.order ** self.degree
            self.depth = parent.depth + 1
            self.absolute_degree = parent.absolute_degree * self.degree
        self._exp = None
        self._log = None
        self._tables_tried = False

    @classmethod
    def prime(cls, p: int) -> FiniteField:
        return cls(None, p)

    def __repr__(self):
        return f"GF({self.order})@{self.depth}"

    @property
    def symbol(self) -> str | None:
        """Name of this level's generator in the text grammar."""
        if self.depth == 0:
            return None
        return "w" if self.depth == 1 else f"w{self.depth}"

    @property
    def generator(self) -> int:
        """The class of X modulo the defining modulus."""
        if self.parent is None:
            return 1
        if self.degree == 1:
            return self.parent.neg(self.modulus[0])
        return self.parent.order

    def levels(self) -> list[FiniteField]:
        """The tower from the prime field up to and including this level."""
        out = []
        f = self
        while f is not None:
            out.append(f)
            f = f.parent
        return out[::-1]

    def contains(self, other: FiniteField) -> bool:
        """True when ``other`` is a level of this tower (ints embed as-is)."""
        return other in self.levels()

    def subfield(self, order: int) -> FiniteField:
        for f in self.levels():
            if f.order == order:
                return f
        raise ValueError(f"no level of order {order} below {self!r}")

    def elements(self) -> range:
        return range(self.order)

    # -- digit helpers ---------------------------------------------------

    def digits(self, x: int) -> list[int]:
        """Coefficients of x over the parent level, low degree first."""
        if self.parent is None:
            return [x]
        Q = self.parent.order
        out = []
        for _ in range(self.degree):
            x, r = divmod(x, Q)
            out.append(r)
        return out

    def from_digits(self, coeffs) -> int:
        """Encode a parent-level coefficient vector, reducing it first."""
        if self.parent is None:
            return int(coeffs[0]) % self.p if len(coeffs) else 0
        coeffs = self._reduce(list(coeffs))
        Q = self.parent.order
        x = 0
        for c in reversed(coeffs):
            x = x * Q + c
        return x

    def _reduce(self, coeffs: list[int]) -> list[int]:
        P = self.parent
        d = self.degree
        mod = self.modulus
        for k in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[k]
            if c:
                for t in range(d):
                    if mod[t]:
                        coeffs[k - d + t] = P.sub(coeffs[k - d + t], P.mul(c, mod[t]))
                coeffs[k] = 0
        coeffs = coeffs[:d]
        coeffs += [0] * (d - len(coeffs))
        return coeffs

    # -- additive structure ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.parent is None:
            return (a + b) % p
        out = 0
        m = 1
        while a or b:
            a, r = divmod(a, p)
            b, s = divmod(b, p)
            out += ((r + s) % p) * m
            m *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        if self.parent is None:
            return (-a) % p
        out = 0
        m = 1
        while a:
            a, r = divmod(a, p)
            out += ((-r) % p) * m
            m *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def scale_int(self, a: int, k: int) -> int:
        """a added to itself k times."""
        k %= self.p
        out = 0
        for _ in range(k):
            out = self.add(out, a)
        return out

    # -- multiplicative structure ------------------------------------------

    def _slow_mul(self, a: int, b: int) -> int:
        if self.parent is None:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        P = self.parent
        da = self.digits(a)
        db = self.digits(b)
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] = P.add(prod[i + j], P.mul(x, y))
        return self.from_digits(prod)

    def _ensure_tables(self):
        if self._tables_tried:
            return self._exp is not None
        self._tables_tried = True
        n = self.order
        if self.parent is None or n > TABLE_CAP:
            return False
        g = self._find_primitive()
        exp = [0] * (n - 1)
        log = [0] * n
        x = 1
        for i in range(n - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        self._exp = exp
        self._log = log
        return True

    def _slow_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return result

    def _find_primitive(self) -> int:
        n1 = self.order - 1
        factors = _prime_factors(n1)
        for g in range(1, self.order):
            if all(self._slow_pow(g, n1 // r) != 1 for r in factors):
                return g
        raise ArithmeticError("no primitive element found")  # pragma: no cover

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.parent is None:
            return (a * b) % self.p
        if self._exp is not None or self._ensure_tables():
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self._slow_mul(a, b)

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 0
        e %= self.order - 1
        if self.parent is None:
            return pow(a, e, self.p)
        if self._exp is not None or self._ensure_tables():
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        return self._slow_pow(a, e)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, -1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, x: int, i: int, q: int) -> int:
        """x^(q^i)."""
        if x == 0:
            return 0
        return self.pow(x, pow(q, i, self.order - 1))

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 is not a unit")
        n = self.order - 1
        for r in _prime_factors(n):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.order - 1) // 2) == 1

    # -- text grammar --------------------------------------------------------

    def format(self, x: int) -> str:
        from drinfeld_covers.algebra.grammar import format_element

        return format_element(self, x)

    def parse(self, text: str) -> int:
        from drinfeld_covers.algebra.grammar import parse_element

        return parse_element(self, text)

    def describe(self) -> dict:
        from drinfeld_covers.algebra.grammar import format_poly_coeffs

        return {
            "p": self.p,
            "order": self.order,
            "absolute_degree": self.absolute_degree,
            "tower": [format_poly_coeffs(f.parent, f.modulus, "T") for f in self.levels()[1:]],
        }


def ilog(n: int, base: int) -> int:
    """Exact integer logarithm; raises if n is not a power of base."""
    k = round(math.log(n, base)) if n > 1 else 0
    if base**k != n:
        raise ValueError(f"{n} is not a power of {base}")
    return k
