"""Quotient rings A/(f) of A = F_q[T] with elements encoded as ints.

An element is the base-q encoding of its reduced representative (degree
< deg f).  Constants c in F_q are therefore the ints 0..q-1.
"""

from __future__ import annotations

from functools import cached_property

from drinfeld_covers.algebra.field import FiniteField
from drinfeld_covers.algebra.poly import CapExceeded, Poly, gcd

RING_TABLE_CAP = 1 << 10


class ResidueRing:
    def __init__(self, modulus: Poly):
        if modulus.degree < 1 or not modulus.is_monic():
            raise ValueError("residue ring modulus must be monic of degree >= 1")
        self.base: FiniteField = modulus.field
        self.q = self.base.order
        self.modulus = modulus
        self.size = self.q**modulus.degree
        if self.size > RING_TABLE_CAP:
            raise CapExceeded(f"ring of size {self.size} exceeds table cap {RING_TABLE_CAP}")

    def __repr__(self):
        return f"A/({self.modulus.format('T')})"

    def __eq__(self, other):
        return isinstance(other, ResidueRing) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def poly(self, x: int) -> Poly:
        return Poly.from_int(self.base, x)

    def encode(self, f: Poly) -> int:
        return (f % self.modulus).to_int()

    def elements(self) -> range:
        return range(self.size)

    def format(self, x: int) -> str:
        return self.poly(x).format("T")

    def parse(self, text: str) -> int:
        from drinfeld_covers.algebra.grammar import parse_poly

        return self.encode(parse_poly(self.base, text, "T"))

    # Tables are lists of lists indexed [a][b]; built once per ring.

    @cached_property
    def add_table(self) -> list[list[int]]:
        N = self.size
        if self.base.p == 2:
            return [[a ^ b for b in range(N)] for a in range(N)]
        polys = [self.poly(x) for x in range(N)]
        return [[(pa + pb).to_int() for pb in polys] for pa in polys]

    @cached_property
    def mul_table(self) -> list[list[int]]:
        N = self.size
        polys = [self.poly(x) for x in range(N)]
        f = self.modulus
        T = [[0] * N for _ in range(N)]
        for a in range(1, N):
            pa = polys[a]
            row = T[a]
            for b in range(a, N):
                v = ((pa * polys[b]) % f).to_int()
                row[b] = v
                T[b][a] = v
        return T

    @cached_property
    def neg_table(self) -> list[int]:
        return [(-self.poly(x)).to_int() for x in range(self.size)]

    @cached_property
    def inverse(self) -> dict[int, int]:
        """Unit -> inverse."""
        out = {}
        for a, row in enumerate(self.mul_table):
            for b, v in enumerate(row):
                if v == 1:
                    out[a] = b
                    break
        return out

    @cached_property
    def units(self) -> list[int]:
        return sorted(self.inverse)

    def is_unit(self, x: int) -> bool:
        return gcd(self.poly(x), self.modulus).degree == 0

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def reduction_table(self, other: ResidueRing) -> list[int]:
        """Reduction map self -> other; other's modulus must divide ours."""
        if other.base is not self.base or (self.modulus % other.modulus):
            raise ValueError(f"{other!r} is not a quotient of {self!r}")
        return [other.encode(self.poly(x)) for x in range(self.size)]
