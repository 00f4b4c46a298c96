"""Canonical construction of tower levels.

Every level is built through :func:`field_from_modulus`, which memoizes on
(parent, modulus).  Two calls with the same inputs therefore return the very
same :class:`FiniteField`, and identity is field equality throughout the
package.
"""

from __future__ import annotations

import threading

from drinfeld_covers.algebra.field import FiniteField, _prime_factors
from drinfeld_covers.algebra.poly import CapExceeded, Poly, is_irreducible, smallest_irreducible

FIELD_SIZE_CAP = 1 << 16

_lock = threading.Lock()
_primes: dict[int, FiniteField] = {}
_levels: dict[tuple[int, tuple[int, ...]], FiniteField] = {}
_extensions: dict[tuple[int, int], FiniteField] = {}


def prime_field(p: int) -> FiniteField:
    with _lock:
        if p not in _primes:
            _primes[p] = FiniteField.prime(p)
        return _primes[p]


def field_from_modulus(parent: FiniteField, modulus, check: bool = True) -> FiniteField:
    """The level parent[X]/(modulus); ``modulus`` is a Poly or coefficient tuple."""
    coeffs = tuple(modulus.coeffs) if isinstance(modulus, Poly) else tuple(modulus)
    key = (id(parent), coeffs)
    with _lock:
        hit = _levels.get(key)
    if hit is not None:
        return hit
    if check:
        f = Poly(parent, coeffs)
        if not f.is_monic() or not is_irreducible(f):
            raise ValueError(f"{f.format('T')} is not monic irreducible over {parent!r}")
    with _lock:
        return _levels.setdefault(key, FiniteField(parent, coeffs))


def extend_field(L: FiniteField, k: int) -> FiniteField:
    """Degree-k extension of L by the smallest monic irreducible of degree k."""
    if k < 1:
        raise ValueError("extension degree must be positive")
    key = (id(L), k)
    with _lock:
        hit = _extensions.get(key)
    if hit is not None:
        return hit
    f = smallest_irreducible(L, k)
    E = field_from_modulus(L, f, check=False)
    with _lock:
        return _extensions.setdefault(key, E)


def GF(q: int) -> FiniteField:
    """F_q as F_p extended once by degree m (q = p^m)."""
    factors = _prime_factors(q)
    if len(factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = factors[0]
    m = 0
    n = q
    while n > 1:
        n //= p
        m += 1
    F = prime_field(p)
    return F if m == 1 else extend_field(F, m)


def level_over(L: FiniteField, k: int) -> FiniteField:
    """The degree-k extension used for searches; k = 1 is L itself."""
    return L if k == 1 else extend_field(L, k)


def field_from_tower(p: int, moduli) -> FiniteField:
    """Rebuild a level from its list of moduli (each over the previous level)."""
    F = prime_field(p)
    for mod in moduli:
        F = field_from_modulus(F, mod)
    return F


def frobenius(field: FiniteField, x: int, i: int, q: int) -> int:
    """x^(q^i) in ``field``."""
    return field.frobenius(x, i, q)


def roots_over(g: Poly, k: int = 1, cap: int = FIELD_SIZE_CAP) -> tuple[FiniteField, list[int]]:
    """All roots of g in the degree-k extension of its coefficient field.

    Returns the search field together with the roots in increasing order.
    """
    if not g:
        raise ValueError("the zero polynomial has every element as a root")
    E = level_over(g.field, k)
    if E.order > cap:
        raise CapExceeded(f"field of size {E.order} exceeds the root-search cap {cap}")
    return E, [x for x in E.elements() if g(x, E) == 0]
