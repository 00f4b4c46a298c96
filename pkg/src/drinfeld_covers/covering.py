"""Ramification bookkeeping, the Kummer-pullback irreducibility criterion, and
the inverse system of Galois groups G(A/I) with their SL2 identifications.

Everything here is group-theoretic: a cover is represented by its Galois
group and its ramification index over 0, nothing more.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from drinfeld_covers.algebra.field import _prime_factors
from drinfeld_covers.algebra.poly import Poly
from drinfeld_covers.algebra.residue import ResidueRing
from drinfeld_covers.algebra.tower import GF
from drinfeld_covers.groups import (
    GROUP_CAP,
    GroupTable,
    build_group,
    hom_count_to_cyclic,
    hypothesis_ok,
    identify_sl2,
    reduce_matrix,
    reduction_map,
)

HYPOTHESIS_NOTE = "outside theorem hypothesis: q = p^m needs m >= 2 when p is 2 or 3"


def ramification_index(q: int) -> int:
    """q + 1 = |F_{q^2}^*| / |F_q^*|; raises if it were wild."""
    factors = _prime_factors(q)
    if len(factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    e = (q * q - 1) // (q - 1)
    if gcd(factors[0], e) != 1:
        raise ArithmeticError(f"ramification index {e} is wild for q = {q}")  # pragma: no cover
    return e


def is_tame(q: int, index: int) -> bool:
    return gcd(_prime_factors(q)[0], index) == 1


def ramification_from_automorphisms(q: int) -> dict:
    """|Aut| of the j = 0 module over |Aut| of a j != 0 module, both searched in F_{q^2}."""
    from drinfeld_covers.drinfeld import DrinfeldModule2, aut_group, j_invariant

    F = GF(q)
    special = DrinfeldModule2.over(F, q, 0, 0, 1)
    generic = DrinfeldModule2.over(F, q, 0, 1, 1)
    assert j_invariant(special) == 0 and j_invariant(generic) != 0
    n_special = len(aut_group(special, 2)[1])
    n_generic = len(aut_group(generic, 2)[1])
    return {
        "q": q,
        "aut_j_zero": n_special,
        "aut_generic": n_generic,
        "ratio": n_special // n_generic,
        "exact": n_special % n_generic == 0,
    }


@dataclass
class CoverDescriptor:
    galois_group: GroupTable
    branch_ramification_index: int
    q: int

    @property
    def tame(self) -> bool:
        return is_tame(self.q, self.branch_ramification_index)


@dataclass
class AbhyankarResult:
    group: str
    n: int
    hom_count: int
    irreducible: bool
    resulting_group: str
    resulting_order: int
    obstruction: str | None
    quadratic_obstruction: bool | None
    kernel: frozenset = field(default=frozenset(), repr=False)

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "n": self.n,
            "hom_count": self.hom_count,
            "irreducible": self.irreducible,
            "resulting_group": self.resulting_group,
            "resulting_order": self.resulting_order,
            "obstruction": self.obstruction,
            "quadratic_obstruction": self.quadratic_obstruction,
        }


def abhyankar_check(gt: GroupTable, n: int) -> AbhyankarResult:
    """Pullback along a Z/n Kummer cover stays irreducible iff Hom(G, Z/n) is trivial.

    When it does not, the group of a component is the common kernel of all
    homs G -> Z/n.
    """
    rep = hom_count_to_cyclic(gt, n)
    if rep.count == 1:
        return AbhyankarResult(gt.name, n, 1, True, gt.name, len(gt), None, None, frozenset(gt.elements))
    label, _ = gt._quotient
    kernel = frozenset(g for g in gt.elements if all(h[label[g]] == 0 for h in rep.homs))
    index = len(gt) // len(kernel)
    quadratic = rep.factor_through_det_mod_squares
    if quadratic and index == 2:
        obstruction = "Z/2"
        name = f"ker({gt.name} -> Z/2)"
    else:
        obstruction = f"abelian quotient of order {index}"
        name = f"common kernel in {gt.name}"
    return AbhyankarResult(gt.name, n, rep.count, False, name, len(kernel), obstruction, quadratic, kernel)


@dataclass
class LevelReport:
    modulus: str
    group_kind: str
    order: int
    surjective_to_previous: bool | None
    hom_count: int
    irreducible_after_pullback: bool
    final_group_name: str
    final_group_order: int
    hypothesis_ok: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass
class TowerReport:
    q: int
    ideal: str
    levels: list[LevelReport]
    inverse_system_consistent: bool | None
    notes: list[str] = field(default_factory=list)

    @property
    def hypothesis_ok(self) -> bool:
        return hypothesis_ok(self.q)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "ideal": self.ideal,
            "levels": [lv.to_json() for lv in self.levels],
            "inverse_system_consistent": self.inverse_system_consistent,
            "hypothesis_ok": self.hypothesis_ok,
            "notes": self.notes,
        }


def _level(gt: GroupTable, surjective: bool | None, cap: int) -> LevelReport:
    q = gt.q
    check = abhyankar_check(gt, q + 1)
    ident = identify_sl2(gt, cap=cap)
    if q % 2 == 0:
        final_order = len(gt)
    else:
        final_order = ident["orders"][0]
    name = ident["identified_as"] if ident["verdict"] else "unidentified"
    return LevelReport(
        modulus=gt.ring.modulus.format("T"),
        group_kind=gt.kind,
        order=len(gt),
        surjective_to_previous=surjective,
        hom_count=check.hom_count,
        irreducible_after_pullback=check.irreducible,
        final_group_name=name,
        final_group_order=final_order,
        hypothesis_ok=hypothesis_ok(q),
    )


def inverse_system_consistent(tables: list[GroupTable]) -> bool:
    """Reducing level n -> n-1 -> n-2 agrees with reducing n -> n-2 directly."""
    for n in range(2, len(tables)):
        top, mid, low = tables[n], tables[n - 1], tables[n - 2]
        t_tm = top.ring.reduction_table(mid.ring)
        t_ml = mid.ring.reduction_table(low.ring)
        t_tl = top.ring.reduction_table(low.ring)
        for g in top.elements:
            if reduce_matrix(t_ml, low, reduce_matrix(t_tm, mid, g)) != reduce_matrix(t_tl, low, g):
                return False
    return True


def tower_report(
    q: int,
    prime: Poly | None = None,
    levels: int | None = None,
    ideal: Poly | None = None,
    cap: int = GROUP_CAP,
) -> TowerReport:
    """Galois groups of the level-I covers after the Kummer pullback.

    Either a prime with a number of levels (I = prime^n, n = 1..levels) or a
    single arbitrary monic ideal generator.
    """
    notes = [] if hypothesis_ok(q) else [HYPOTHESIS_NOTE]
    if ideal is not None:
        if ideal.field.order != q:
            raise ValueError("ideal generator is not over F_q")
        gt = build_group(ResidueRing(ideal), "G", cap=cap)
        return TowerReport(q, ideal.format("T"), [_level(gt, None, cap)], None, notes)
    if prime is None or levels is None or levels < 1:
        raise ValueError("give either an ideal or a prime with levels >= 1")
    if prime.field.order != q:
        raise ValueError("prime is not over F_q")
    tables: list[GroupTable] = []
    out = []
    for n in range(1, levels + 1):
        gt = build_group(ResidueRing(prime**n), "G", cap=cap)
        surj = reduction_map(gt, tables[-1]).surjective if tables else None
        tables.append(gt)
        out.append(_level(gt, surj, cap))
    consistent = inverse_system_consistent(tables) if levels >= 3 else None
    return TowerReport(q, prime.format("T"), out, consistent, notes)
