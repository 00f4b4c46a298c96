"""Rank-2 Drinfeld modules over a finite A-field.

An A-field here is a finite level L containing F_q together with the image
theta of T.  The module is determined by phi_T = theta + g*tau + delta*tau^2.
Since L is finite, A -> L has a kernel (the characteristic); torsion is
only guaranteed free for ideals coprime to it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property

from drinfeld_covers.algebra.field import FiniteField, _prime_factors
from drinfeld_covers.algebra.grammar import parse_element, parse_poly
from drinfeld_covers.algebra.poly import CapExceeded, Poly, factor_monic, gcd
from drinfeld_covers.algebra.tower import (
    FIELD_SIZE_CAP,
    field_from_modulus,
    level_over,
    prime_field,
    roots_over,
)
from drinfeld_covers.ore import OrePoly


@dataclass(frozen=True)
class AFieldStructure:
    L: FiniteField
    q: int
    theta: int

    def __post_init__(self):
        self.L.subfield(self.q)
        if not 0 <= self.theta < self.L.order:
            raise ValueError("theta is not an element of L")

    @property
    def Fq(self) -> FiniteField:
        return self.L.subfield(self.q)

    @cached_property
    def characteristic(self) -> Poly:
        """Minimal polynomial of theta over F_q, the generator of ker(A -> L)."""
        L, q = self.L, self.q
        conj = [self.theta]
        while True:
            nxt = L.pow(conj[-1], q)
            if nxt == conj[0]:
                break
            conj.append(nxt)
        m = Poly.const(L, 1)
        for c in conj:
            m = m * Poly(L, (L.neg(c), 1))
        if any(c >= q for c in m.coeffs):
            raise ArithmeticError("minimal polynomial left F_q")  # pragma: no cover
        return Poly(self.Fq, m.coeffs)

    def gamma(self, f: Poly) -> int:
        """Image of f in L."""
        return f(self.theta, self.L)

    def base_change(self, E: FiniteField) -> AFieldStructure:
        if not E.contains(self.L):
            raise ValueError(f"{E!r} does not contain {self.L!r}")
        return AFieldStructure(E, self.q, self.theta)


@dataclass(frozen=True)
class DrinfeldModule2:
    base: AFieldStructure
    g: int
    delta: int

    def __post_init__(self):
        if self.delta == 0:
            raise ValueError("delta must be nonzero for a rank-2 module")
        if not (0 <= self.g < self.L.order and 0 < self.delta < self.L.order):
            raise ValueError("coefficients are not elements of L")

    @classmethod
    def over(cls, L: FiniteField, q: int, theta: int, g: int, delta: int) -> DrinfeldModule2:
        return cls(AFieldStructure(L, q, theta), g, delta)

    @property
    def L(self) -> FiniteField:
        return self.base.L

    @property
    def q(self) -> int:
        return self.base.q

    @property
    def Fq(self) -> FiniteField:
        return self.base.Fq

    @property
    def phi_T(self) -> OrePoly:
        return OrePoly(self.L, self.q, (self.base.theta, self.g, self.delta))

    def base_change(self, E: FiniteField) -> DrinfeldModule2:
        return DrinfeldModule2(self.base.base_change(E), self.g, self.delta)

    def to_record(self) -> dict:
        L = self.L
        return {
            "q": self.q,
            "tower": L.describe()["tower"],
            "theta": L.format(self.base.theta),
            "g": L.format(self.g),
            "delta": L.format(self.delta),
        }

    @classmethod
    def from_record(cls, rec: dict) -> DrinfeldModule2:
        q = int(rec["q"])
        p = _prime_factors(q)[0]
        L = prime_field(p)
        for text in rec["tower"]:
            L = field_from_modulus(L, parse_poly(L, text, "T"))
        return cls.over(
            L,
            q,
            parse_element(L, rec["theta"]),
            parse_element(L, rec["g"]),
            parse_element(L, rec["delta"]),
        )


def phi_of(phi: DrinfeldModule2, f: Poly) -> OrePoly:
    """phi_f, by Horner's rule in T inside L{tau}."""
    if f.field is not phi.Fq:
        raise ValueError("f must be a polynomial over F_q")
    L, q = phi.L, phi.q
    phiT = phi.phi_T
    acc = OrePoly(L, q)
    for c in reversed(f.coeffs):
        acc = acc * phiT + OrePoly.const(L, q, c)
    return acc


def j_invariant(phi: DrinfeldModule2) -> int:
    L = phi.L
    return L.div(L.pow(phi.g, phi.q + 1), phi.delta)


def is_morphism(
    u: OrePoly,
    phi: DrinfeldModule2,
    phi2: DrinfeldModule2,
    confirm: int = 0,
    rng: random.Random | None = None,
) -> bool:
    """phi_a u = u phi2_a for a = T, plus ``confirm`` random higher-degree a."""
    if phi.base != phi2.base:
        raise ValueError("modules over different A-fields")
    if u.field is not phi.L or u.q != phi.q:
        raise ValueError("morphism is not over the modules' field")
    if phi.phi_T * u != u * phi2.phi_T:
        return False
    if confirm:
        rng = rng or random.Random(0)
        Fq = phi.Fq
        for _ in range(confirm):
            deg = rng.randint(2, 3)
            a = Poly(Fq, [rng.randrange(Fq.order) for _ in range(deg)] + [1])
            if phi_of(phi, a) * u != u * phi_of(phi2, a):
                return False  # pragma: no cover - T generates A
    return True


def aut_group(phi: DrinfeldModule2, k: int = 2, cap: int = FIELD_SIZE_CAP) -> tuple[FiniteField, list[int]]:
    """Nonzero constants u in the degree-k extension with u phi_T = phi_T u."""
    E = level_over(phi.L, k)
    if E.order > cap:
        raise CapExceeded(f"search field of size {E.order} exceeds cap {cap}")
    psi = phi.base_change(E)
    q = phi.q
    return E, [u for u in range(1, E.order) if is_morphism(OrePoly.const(E, q, u), psi, psi)]


def are_isomorphic(
    phi: DrinfeldModule2, phi2: DrinfeldModule2, k: int = 1, cap: int = FIELD_SIZE_CAP
) -> tuple[FiniteField, int | None]:
    """First constant u (in int order) of the degree-k extension with phi u = u phi2."""
    if phi.base != phi2.base:
        raise ValueError("modules over different A-fields")
    E = level_over(phi.L, k)
    if E.order > cap:
        raise CapExceeded(f"search field of size {E.order} exceeds cap {cap}")
    a, b = phi.base_change(E), phi2.base_change(E)
    for u in range(1, E.order):
        if is_morphism(OrePoly.const(E, phi.q, u), a, b):
            return E, u
    return E, None


@dataclass(frozen=True)
class TorsionModule:
    field: FiniteField
    ideal: Poly
    points: tuple[int, ...]
    structure: tuple[Poly, ...] = dc_field(default=())
    complete: bool = True

    def to_json(self) -> dict:
        return {
            "ideal": self.ideal.format("T"),
            "field_order": self.field.order,
            "count": len(self.points),
            "points": [self.field.format(x) for x in self.points],
            "structure": [d.format("T") for d in self.structure],
            "complete": self.complete,
        }


def expected_torsion_size(phi: DrinfeldModule2, f: Poly) -> int:
    """Number of distinct roots of phi_f over an algebraic closure.

    sum_{i=v..n} c_i X^(q^i) with c_v != 0 is the q^v-th power of a separable
    additive polynomial of degree q^(n-v).
    """
    P = phi_of(phi, f)
    v = next(i for i, c in enumerate(P.coeffs) if c)
    return phi.q ** (P.degree - v)


def torsion_kernel(
    phi: DrinfeldModule2, f: Poly, k: int | None = None, cap: int = FIELD_SIZE_CAP
) -> TorsionModule:
    """Roots of phi_f in the degree-k extension of L.

    Without k, the extension degree grows from 1 until every root over the
    algebraic closure is present.
    """
    if not f or not f.is_monic():
        raise ValueError("torsion needs a nonzero monic f")
    additive = phi_of(phi, f).to_additive()
    target = expected_torsion_size(phi, f)
    if k is not None:
        E, pts = roots_over(additive, k, cap)
    else:
        k = 1
        while True:
            if level_over(phi.L, k).order > cap:
                raise CapExceeded(f"torsion of {f.format()} does not split below field size {cap}")
            E, pts = roots_over(additive, k, cap)
            if len(pts) == target:
                break
            k += 1
    structure = torsion_structure(pts, phi.base_change(E), f) if f.degree >= 1 else ()
    return TorsionModule(E, f, tuple(pts), tuple(structure), len(pts) == target)


def torsion_structure(points, phi: DrinfeldModule2, f: Poly) -> list[Poly]:
    """Invariant factors d_1 | d_2 | ... of the A-module spanned by ``points``.

    The points must be closed under addition and phi_T and killed by phi_f.
    For each prime pi | f, |ker phi_{pi^j}| = |pi|^(sum_i min(j, e_i)) pins
    down the exponents e_i of the pi-primary part.
    """
    E = phi.L
    pts = set(points)
    for x in pts:
        for y in pts:
            if E.add(x, y) not in pts:
                raise ValueError("points are not closed under addition")
    phiT = phi.phi_T
    if any(phiT(x) not in pts for x in pts):
        raise ValueError("points are not closed under phi_T")
    if len(pts) == 1:
        return []
    phif = phi_of(phi, f)
    if any(phif(x) for x in pts):
        raise ValueError("points are not killed by phi_f")
    q = phi.q
    primary: list[tuple[Poly, list[int]]] = []
    for pi, e in factor_monic(f):
        qd = q**pi.degree
        sizes = [0]
        for j in range(1, e + 1):
            op = phi_of(phi, pi**j)
            n = sum(1 for x in pts if op(x) == 0)
            s = 0
            while qd**s < n:
                s += 1
            if qd**s != n:
                raise ArithmeticError("kernel size is not a power of |A/pi|")  # pragma: no cover
            sizes.append(s)
        at_least = [sizes[j] - sizes[j - 1] for j in range(1, e + 1)]
        exps = []
        for j in range(e, 0, -1):
            count = at_least[j - 1] - (at_least[j] if j < e else 0)
            exps += [j] * count
        primary.append((pi, exps))
    width = max((len(ex) for _, ex in primary), default=0)
    factors = []
    for i in range(width):
        d = Poly.const(f.field, 1)
        for pi, ex in primary:
            if i < len(ex):
                d = d * pi ** ex[i]
        factors.append(d)
    factors.reverse()
    if q ** sum(d.degree for d in factors) != len(pts):
        raise ArithmeticError("invariant factors do not account for every point")  # pragma: no cover
    return factors


def is_coprime_to_characteristic(phi: DrinfeldModule2, f: Poly) -> bool:
    return gcd(f, phi.base.characteristic).degree == 0
