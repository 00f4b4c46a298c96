"""Exhaustively enumerated 2x2 matrix groups over A/(f).

Kinds:

* ``GL2``       invertible matrices
* ``G1``        matrices with determinant in F_q^*
* ``G``         G1 modulo the F_q^* scalars, stored as canonical representatives
* ``SL2``       determinant 1
* ``SL2modPM1`` SL2 modulo {+-1}, stored as canonical representatives

A matrix is a tuple (a, b, c, d) of ring ints, row major.  The canonical
representative of a scalar orbit is its smallest member under tuple order,
which is the order of the row-major concatenation of base-q encodings.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd as igcd

from drinfeld_covers.algebra.field import _prime_factors
from drinfeld_covers.algebra.poly import CapExceeded, Poly, factor_monic
from drinfeld_covers.algebra.residue import ResidueRing

KINDS = ("GL2", "G1", "G", "SL2", "SL2modPM1")
GROUP_CAP = 200_000

Mat = tuple[int, int, int, int]


def gl2_order(ring: ResidueRing) -> int:
    """|GL_2(A/f)| by the product formula; used only for cap checks."""
    n = 1
    for pi, e in factor_monic(ring.modulus, degree_cap=64):
        Q = ring.q**pi.degree
        n *= (Q * Q - 1) * (Q * Q - Q) * Q ** (4 * (e - 1))
    return n


def check_cap(ring: ResidueRing, cap: int = GROUP_CAP):
    n = gl2_order(ring)
    if n > cap:
        raise CapExceeded(f"|GL2({ring!r})| = {n} exceeds the enumeration cap {cap}")


def _det_targets(ring: ResidueRing, kind: str) -> list[int]:
    if kind == "GL2":
        return ring.units
    if kind in ("G1", "G"):
        return list(range(1, ring.q))
    if kind in ("SL2", "SL2modPM1"):
        return [1]
    raise ValueError(f"unknown group kind {kind!r}; expected one of {KINDS}")


def enumerate_matrices(ring: ResidueRing, dets) -> list[Mat]:
    """All (a, b, c, d) with ad - bc in ``dets``, sorted."""
    N = ring.size
    M = ring.mul_table
    A = ring.add_table
    pre = [[[] for _ in range(N)] for _ in range(N)]
    for a in range(N):
        row = M[a]
        pa = pre[a]
        for d in range(N):
            pa[row[d]].append(d)
    dets = sorted(dets)
    out = []
    for a in range(N):
        pa = pre[a]
        for b in range(N):
            Mb = M[b]
            for c in range(N):
                bc = Mb[c]
                for delta in dets:
                    ds = pa[A[delta][bc]]
                    if ds:
                        out.extend((a, b, c, d) for d in ds)
    out.sort()
    return out


class GroupTable:
    """A finite matrix group over a residue ring with every element listed."""

    def __init__(self, ring: ResidueRing, kind: str, elements: list[Mat]):
        self.ring = ring
        self.kind = kind
        self.q = ring.q
        self._M = ring.mul_table
        self._A = ring.add_table
        self._neg = ring.neg_table
        if kind == "G":
            self._scalars = tuple(range(2, ring.q))
        elif kind == "SL2modPM1":
            m1 = ring.neg_table[1]
            self._scalars = (m1,) if m1 != 1 else ()
        else:
            self._scalars = ()
        self.elements = elements
        self.index = {g: i for i, g in enumerate(elements)}
        self.identity: Mat = self.canonical((1, 0, 0, 1))
        self.generators: list[Mat] = []

    def __repr__(self):
        return f"{self.kind}({self.ring!r}) of order {len(self)}"

    @property
    def name(self) -> str:
        return f"{self.kind}(A/({self.ring.modulus.format('T')}))"

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self.index

    @property
    def order(self) -> int:
        return len(self.elements)

    def matmul(self, x: Mat, y: Mat) -> Mat:
        M, A = self._M, self._A
        a, b, c, d = x
        e, f, g, h = y
        Ma, Mb, Mc, Md = M[a], M[b], M[c], M[d]
        return (A[Ma[e]][Mb[g]], A[Ma[f]][Mb[h]], A[Mc[e]][Md[g]], A[Mc[f]][Md[h]])

    def canonical(self, m: Mat) -> Mat:
        best = m
        M = self._M
        for z in self._scalars:
            Mz = M[z]
            cand = (Mz[m[0]], Mz[m[1]], Mz[m[2]], Mz[m[3]])
            if cand < best:
                best = cand
        return best

    def mul(self, x: Mat, y: Mat) -> Mat:
        m = self.matmul(x, y)
        return self.canonical(m) if self._scalars else m

    def det(self, m: Mat) -> int:
        M = self._M
        a, b, c, d = m
        return self._A[M[a][d]][self._neg[M[b][c]]]

    def inv(self, m: Mat) -> Mat:
        a, b, c, d = m
        u = self.ring.inverse[self.det(m)]
        Mu = self._M[u]
        neg = self._neg
        return self.canonical((Mu[d], Mu[neg[b]], Mu[neg[c]], Mu[a]))

    def power(self, m: Mat, k: int) -> Mat:
        out = self.identity
        for _ in range(k):
            out = self.mul(out, m)
        return out

    def format(self, m: Mat) -> str:
        from drinfeld_covers.algebra.grammar import format_matrix

        return format_matrix(self.ring, m)

    # -- subgroup generation -------------------------------------------------

    def extend_closure(self, reached: set, gens: list, new_gen: Mat) -> None:
        """Grow ``reached`` (closed under ``gens``) to be closed under gens + [new_gen].

        Raises if a product leaves the element set.
        """
        gens.append(new_gen)
        mul = self.mul
        index = self.index
        queue = [(x, False) for x in reached]
        i = 0
        while i < len(queue):
            x, is_new = queue[i]
            i += 1
            for s in gens if is_new else (new_gen,):
                y = mul(x, s)
                if y not in reached:
                    if y not in index:
                        raise ArithmeticError(f"closure violation: {y} is not in {self.name}")
                    reached.add(y)
                    queue.append((y, True))

    def closure(self, gens) -> set:
        reached = {self.identity}
        acc: list = []
        for g in gens:
            self.extend_closure(reached, acc, g)
        return reached

    def certify(self) -> None:
        """Find generators greedily and prove the element set is the group they generate.

        Success shows closure, identity and inverses for the whole set.
        """
        if self.identity not in self.index:
            raise ArithmeticError("identity missing")
        reached = {self.identity}
        gens: list = []
        for g in self.elements:
            if g not in reached:
                self.extend_closure(reached, gens, g)
                if len(reached) == len(self.elements):
                    break
        if len(reached) != len(self.elements):
            raise ArithmeticError("generated subgroup differs from the element set")  # pragma: no cover
        self.generators = gens

    # -- abelianization ------------------------------------------------------

    @cached_property
    def commutator_subgroup(self) -> frozenset:
        """Normal closure of the commutators of the generators."""
        S = self.generators
        inv = {s: self.inv(s) for s in S}
        mul = self.mul
        reached = {self.identity}
        dgens: list = []
        pending = []
        for s, t in itertools.combinations(S, 2):
            pending.append(mul(mul(inv[s], inv[t]), mul(s, t)))
        while pending:
            c = pending.pop()
            if c in reached:
                continue
            self.extend_closure(reached, dgens, c)
            for d in list(dgens):
                for s in S:
                    conj = mul(mul(inv[s], d), s)
                    if conj not in reached:
                        pending.append(conj)
        return frozenset(reached)

    @cached_property
    def _quotient(self):
        """Cosets of the commutator subgroup: (label per element, representatives)."""
        D = self.commutator_subgroup
        label = {}
        reps = []
        for g in self.elements:
            if g in label:
                continue
            k = len(reps)
            reps.append(g)
            for d in D:
                label[self.mul(g, d)] = k
        return label, reps


def build_group(ring: ResidueRing, kind: str, cap: int = GROUP_CAP, certify: bool = True) -> GroupTable:
    """Enumerate a group of the given kind over ``ring`` and verify the group axioms."""
    if kind not in KINDS:
        raise ValueError(f"unknown group kind {kind!r}; expected one of {KINDS}")
    check_cap(ring, cap)
    mats = enumerate_matrices(ring, _det_targets(ring, kind))
    gt = GroupTable(ring, kind, [])
    if kind in ("G", "SL2modPM1"):
        reps = [m for m in mats if gt.canonical(m) == m]
        orbit = ring.q - 1 if kind == "G" else len(gt._scalars) + 1
        if len(reps) * orbit != len(mats):
            raise ArithmeticError("scalar action is not free; canonicalization failed")
        mats = reps
    gt = GroupTable(ring, kind, mats)
    if certify:
        gt.certify()
    return gt


# -- reduction maps ------------------------------------------------------------


@dataclass
class ReductionReport:
    src: str
    dst: str
    method: str
    src_order: int
    dst_order: int
    surjective: bool
    fiber_sizes: list[int]
    kernel_order: int
    kernel: list = field(default_factory=list, repr=False)
    image: dict = field(default_factory=dict, repr=False)

    def to_json(self) -> dict:
        return {
            "src": self.src,
            "dst": self.dst,
            "method": self.method,
            "src_order": self.src_order,
            "dst_order": self.dst_order,
            "surjective": self.surjective,
            "fiber_sizes": self.fiber_sizes,
            "kernel_order": self.kernel_order,
        }


def _check_compatible(src_ring: ResidueRing, dst: GroupTable, kind: str):
    if kind != dst.kind:
        raise ValueError(f"incompatible kinds {kind} and {dst.kind}")
    if src_ring.base is not dst.ring.base or src_ring.modulus % dst.ring.modulus:
        raise ValueError(f"{dst.ring!r} is not a quotient of {src_ring!r}")


def reduce_matrix(table: list[int], dst: GroupTable, g: Mat) -> Mat:
    return dst.canonical((table[g[0]], table[g[1]], table[g[2]], table[g[3]]))


def reduction_map(src: GroupTable, dst: GroupTable) -> ReductionReport:
    """Entrywise reduction src -> dst, with surjectivity, fibers and kernel."""
    _check_compatible(src.ring, dst, src.kind)
    table = src.ring.reduction_table(dst.ring)
    image = {}
    for g in src.elements:
        h = reduce_matrix(table, dst, g)
        if h not in dst.index:
            raise ArithmeticError(f"{g} reduces outside {dst.name}")
        image[g] = h
    fibers = Counter(image.values())
    kernel = [g for g, h in image.items() if h == dst.identity]
    return ReductionReport(
        src=src.name,
        dst=dst.name,
        method="enumeration",
        src_order=len(src),
        dst_order=len(dst),
        surjective=len(fibers) == len(dst),
        fiber_sizes=sorted(set(fibers.values())),
        kernel_order=len(kernel),
        kernel=kernel,
        image=image,
    )


def surjectivity_by_lifting(src_ring: ResidueRing, dst: GroupTable) -> ReductionReport:
    """Prove src -> dst surjective by exhibiting a preimage of every target element.

    The source group is never enumerated.  Its kernel is enumerated as the
    matrices I + M with M = 0 mod the target modulus; every fiber is a coset of
    it, so its order is the common fiber size.
    """
    kind = dst.kind
    _check_compatible(src_ring, dst, kind)
    table = src_ring.reduction_table(dst.ring)
    src = GroupTable(src_ring, kind, [])
    allowed = set(_det_targets(src_ring, kind))
    M, A, inverse = src_ring.mul_table, src_ring.add_table, src_ring.inverse
    for g in dst.elements:
        a, b, c, d = g
        det = src.det(g)
        if kind != "GL2":
            u = src_ring.mul(dst.det(g), inverse[det])
            b, d = M[b][u], M[d][u]
        lift = src.canonical((a, b, c, d))
        if src.det(lift) not in allowed or reduce_matrix(table, dst, lift) != g:
            return ReductionReport(src.name, dst.name, "lifting", 0, len(dst), False, [], 0)
    ideal = [x for x in src_ring.elements() if table[x] == 0]
    kernel_order = 0
    for m in itertools.product(ideal, repeat=4):
        k = (A[1][m[0]], m[1], m[2], A[1][m[3]])
        if src.det(k) in allowed:
            kernel_order += 1
    return ReductionReport(
        src=src.name,
        dst=dst.name,
        method="lifting",
        src_order=len(dst) * kernel_order,
        dst_order=len(dst),
        surjective=True,
        fiber_sizes=[kernel_order],
        kernel_order=kernel_order,
    )


# -- abelianization and homomorphisms to cyclic groups -------------------------


def abelian_invariants(elements, mul, identity) -> list[int]:
    """Invariant factors d_1 | d_2 | ... of a finite abelian group given by its multiplication.

    For each prime r, the sizes of {x : x^(r^k) = 1} fix the r-primary part.
    """
    elements = list(elements)
    n = len(elements)

    def power(x, k):
        out = identity
        for _ in range(k):
            out = mul(out, x)
        return out

    by_prime = {}
    for r in _prime_factors(n):
        total = 0
        while n % r ** (total + 1) == 0:
            total += 1
        sizes = [0]
        k = 1
        while sizes[-1] < total:
            cnt = sum(1 for x in elements if power(x, r**k) == identity)
            sizes.append(_exact_log(cnt, r))
            k += 1
        at_least = [sizes[j] - sizes[j - 1] for j in range(1, len(sizes))]
        exps = []
        for j in range(len(at_least), 0, -1):
            cnt = at_least[j - 1] - (at_least[j] if j < len(at_least) else 0)
            exps += [j] * cnt
        by_prime[r] = exps
    width = max((len(e) for e in by_prime.values()), default=0)
    out = []
    for i in range(width):
        d = 1
        for r, exps in by_prime.items():
            if i < len(exps):
                d *= r ** exps[i]
        out.append(d)
    return sorted(out)


def _exact_log(n: int, r: int) -> int:
    k = 0
    while n > 1:
        if n % r:
            raise ArithmeticError(f"{n} is not a power of {r}")  # pragma: no cover
        n //= r
        k += 1
    return k


def abelianization(gt: GroupTable) -> list[int]:
    label, reps = gt._quotient
    mul = lambda i, j: label[gt.mul(reps[i], reps[j])]  # noqa: E731
    return abelian_invariants(range(len(reps)), mul, label[gt.identity])


@dataclass
class HomReport:
    n: int
    count: int
    kernel_orders: list[int]
    factor_through_det_mod_squares: bool | None
    homs: list = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "count": self.count,
            "nontrivial_kernel_orders": self.kernel_orders,
            "all_factor_through_det_mod_squares": self.factor_through_det_mod_squares,
        }


def _quotient_homs(gt: GroupTable, n: int) -> list[tuple[int, ...]]:
    """All homs G^ab -> Z/n as value tuples indexed by coset label."""
    label, reps = gt._quotient
    m = len(reps)
    e = label[gt.identity]
    table = [[label[gt.mul(reps[i], reps[j])] for j in range(m)] for i in range(m)]
    reached = {e}
    qgens = []
    for x in range(m):
        if x not in reached:
            qgens.append(x)
            frontier = list(reached)
            while frontier:
                y = frontier.pop()
                for s in qgens:
                    z = table[y][s]
                    if z not in reached:
                        reached.add(z)
                        frontier.append(z)
    homs = []
    for images in itertools.product(range(n), repeat=len(qgens)):
        val = [None] * m
        val[e] = 0
        queue = [e]
        ok = True
        while queue and ok:
            y = queue.pop()
            for s, img in zip(qgens, images):
                z = table[y][s]
                v = (val[y] + img) % n
                if val[z] is None:
                    val[z] = v
                    queue.append(z)
                elif val[z] != v:
                    ok = False
                    break
        if ok:
            homs.append(tuple(val))
    return homs


def hom_count_to_cyclic(gt: GroupTable, n: int) -> HomReport:
    """Count homomorphisms G -> Z/n through the abelianization."""
    if n < 1:
        raise ValueError("n must be positive")
    invariants = abelianization(gt)
    expected = 1
    for d in invariants:
        expected *= igcd(d, n)
    homs = _quotient_homs(gt, n)
    if len(homs) != expected:
        raise ArithmeticError(f"hom count {len(homs)} disagrees with invariants {invariants}")  # pragma: no cover
    label, _ = gt._quotient
    sizes = Counter(label.values())
    nontrivial = [h for h in homs if any(h)]
    kernel_orders = [sum(sizes[i] for i, v in enumerate(h) if v == 0) for h in nontrivial]
    through = None
    if gt.kind == "G" and gt.q % 2 == 1:
        through = True
        for h in nontrivial:
            if n % 2 or any(h[label[g]] != (n // 2) * det_mod_squares(gt, g) for g in gt.elements):
                through = False
                break
    return HomReport(n, len(homs), kernel_orders, through, homs)


def hom_value(gt: GroupTable, hom: tuple[int, ...], g: Mat) -> int:
    label, _ = gt._quotient
    return hom[label[g]]


# -- determinant modulo squares and identification with SL2 --------------------


def det_mod_squares(gt: GroupTable, g: Mat) -> int:
    """Class of det(g) in F_q^*/F_q^*2 = Z/2 (0 for squares)."""
    if gt.q % 2 == 0:
        raise ValueError("q is even: squaring is bijective on F_q^*, so F_q^*/F_q^*2 is trivial")
    if gt.kind not in ("G", "G1"):
        raise ValueError("det_mod_squares is defined on G and G1")
    return 0 if gt.ring.base.is_square(gt.det(g)) else 1


def hypothesis_ok(q: int) -> bool:
    """q = p^m with m >= 2 when p is 2 or 3."""
    return q not in (2, 3)


def identify_sl2(gt: GroupTable, sl2: GroupTable | None = None, cap: int = GROUP_CAP) -> dict:
    """Compare G (even q) or ker(G -> Z/2) (odd q) with the image of SL2."""
    if gt.kind != "G":
        raise ValueError("identify_sl2 expects a group of kind G")
    sl2 = sl2 or build_group(gt.ring, "SL2", cap=cap, certify=False)
    image = {gt.canonical(m) for m in sl2.elements}
    if gt.q % 2 == 0:
        target = set(gt.elements)
        name = "SL2"
        expected_image = len(sl2)
    else:
        target = {g for g in gt.elements if det_mod_squares(gt, g) == 0}
        name = "SL2/{±1}"
        expected_image = len(sl2) // 2
    verdict = image == target and len(image) == expected_image
    return {
        "group": gt.name,
        "identified_as": name,
        "verdict": verdict,
        "orders": [len(target), len(image)],
        "sl2_order": len(sl2),
        "hypothesis_ok": hypothesis_ok(gt.q),
    }


def prime_power_ring(prime: Poly, n: int) -> ResidueRing:
    return ResidueRing(prime**n)
