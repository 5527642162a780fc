"""Buchberger's algorithm and ideal operations over F_p[t, x, y].

The inner loops work on plain ``{monomial: coefficient}`` dicts; the public
surface takes and returns MultiPoly and Ideal values.
"""

from __future__ import annotations

import heapq
from itertools import combinations
from typing import Iterable, Sequence

from ..exceptions import ContextMismatchError, FrobeniusExponentError, PreconditionError
from ..utils import logger, verbose_debug
from .field import UniPoly, gcd_all, prime_power_exponent
from .multipoly import (
    COEFFICIENT_VAR,
    Monomial,
    MonomialOrder,
    MultiPoly,
    PolyRing,
    default_order,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    monomial_quotient,
)

Terms = dict[Monomial, int]


def _neg_key(order: MonomialOrder, m: Monomial) -> tuple[int, ...]:
    return tuple(-k for k in order.key(m))


def _sub_scaled(target: Terms, g: Terms, shift: Monomial, c: int, p: int, heap, order) -> None:
    """target -= c * shift * g, pushing new monomials onto ``heap``."""
    for gm, gc in g.items():
        m = monomial_mul(gm, shift)
        old = target.get(m)
        v = ((old or 0) - c * gc) % p
        if v:
            target[m] = v
            if old is None and heap is not None:
                heapq.heappush(heap, (_neg_key(order, m), m))
        elif old is not None:
            del target[m]


def _reduce(f: Terms, basis: Sequence[tuple[Monomial, Terms]], order: MonomialOrder, p: int) -> Terms:
    """Full normal form of ``f`` against monic polynomials with given leading monomials."""
    work = dict(f)
    heap = [(_neg_key(order, m), m) for m in work]
    heapq.heapify(heap)
    remainder: Terms = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = work.get(m)
        if c is None:
            continue
        for lm, g in basis:
            if monomial_divides(lm, m):
                _sub_scaled(work, g, monomial_quotient(m, lm), c, p, heap, order)
                break
        else:
            remainder[m] = c
            del work[m]
    return remainder


def _make_monic(f: Terms, order: MonomialOrder, p: int) -> tuple[Monomial, Terms]:
    lm = max(f, key=order.key)
    inv = pow(f[lm], -1, p)
    return lm, {m: c * inv % p for m, c in f.items()}


def _s_polynomial(a: tuple[Monomial, Terms], b: tuple[Monomial, Terms], p: int) -> Terms:
    (lm_a, fa), (lm_b, fb) = a, b
    lcm = monomial_lcm(lm_a, lm_b)
    out: Terms = {}
    _sub_scaled(out, fa, monomial_quotient(lcm, lm_a), p - 1, p, None, None)
    _sub_scaled(out, fb, monomial_quotient(lcm, lm_b), 1, p, None, None)
    return out


def _buchberger_terms(polys: Iterable[Terms], order: MonomialOrder, p: int) -> list[tuple[Monomial, Terms]]:
    basis: list[tuple[Monomial, Terms]] = []
    pairs: list = []
    pending: set[tuple[int, int]] = set()
    considered = 0
    skipped = 0

    def add(f: Terms) -> None:
        lm, g = _make_monic(f, order, p)
        j = len(basis)
        basis.append((lm, g))
        for i in range(j):
            lcm = monomial_lcm(basis[i][0], lm)
            heapq.heappush(pairs, (sum(lcm), order.key(lcm), i, j))
            pending.add((i, j))

    for f in polys:
        h = _reduce(f, basis, order, p)
        if h:
            add(h)

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        pending.discard((i, j))
        considered += 1
        lm_i, lm_j = basis[i][0], basis[j][0]
        lcm = monomial_lcm(lm_i, lm_j)
        # coprime leading monomials
        if lcm == monomial_mul(lm_i, lm_j):
            skipped += 1
            continue
        # chain criterion
        if any(
            k != i
            and k != j
            and monomial_divides(basis[k][0], lcm)
            and (min(i, k), max(i, k)) not in pending
            and (min(j, k), max(j, k)) not in pending
            for k in range(len(basis))
        ):
            skipped += 1
            continue
        h = _reduce(_s_polynomial(basis[i], basis[j], p), basis, order, p)
        if h:
            add(h)

    logger.debug(
        f"buchberger[{order}]: {len(basis)} polynomials, {considered} pairs, {skipped} skipped by criteria"
    )
    return _reduced(basis, order, p)


def _reduced(basis: list[tuple[Monomial, Terms]], order: MonomialOrder, p: int) -> list[tuple[Monomial, Terms]]:
    minimal: list[tuple[Monomial, Terms]] = []
    for idx, (lm, g) in enumerate(basis):
        redundant = False
        for jdx, (other, _) in enumerate(basis):
            if jdx == idx or not monomial_divides(other, lm):
                continue
            if other != lm or jdx < idx:
                redundant = True
                break
        if not redundant:
            minimal.append((lm, g))
    result = []
    for idx, (lm, g) in enumerate(minimal):
        others = [b for jdx, b in enumerate(minimal) if jdx != idx]
        tail = dict(g)
        del tail[lm]
        reduced = _reduce(tail, others, order, p)
        reduced[lm] = 1
        result.append((lm, reduced))
    result.sort(key=lambda item: order.key(item[0]), reverse=True)
    return result


def buchberger(gens: Sequence[MultiPoly], order: MonomialOrder | None = None) -> list[MultiPoly]:
    """Reduced, monic Gröbner basis sorted by descending leading monomial."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ContextMismatchError(f"generators from {g.ring} and {ring}")
    order = order or default_order(ring)
    basis = _buchberger_terms((g.terms for g in gens), order, ring.p)
    return [MultiPoly._trusted(ring, g) for _, g in basis]


def normal_form(f: MultiPoly, basis: Sequence[MultiPoly], order: MonomialOrder | None = None) -> MultiPoly:
    """Remainder of ``f`` under full multivariate division by ``basis``."""
    order = order or default_order(f.ring)
    prepared = []
    for b in basis:
        if b.ring != f.ring:
            raise ContextMismatchError(f"divisor from {b.ring} used with {f.ring}")
        if not b:
            raise PreconditionError("cannot divide by the zero polynomial")
        prepared.append(_make_monic(b.terms, order, f.p))
    return MultiPoly._trusted(f.ring, _reduce(f.terms, prepared, order, f.p))


def is_groebner_basis(basis: Sequence[MultiPoly], order: MonomialOrder | None = None) -> bool:
    """Every S-polynomial of ``basis`` reduces to zero."""
    basis = [b for b in basis if b]
    if not basis:
        return True
    order = order or default_order(basis[0].ring)
    p = basis[0].p
    prepared = [_make_monic(b.terms, order, p) for b in basis]
    for a, b in combinations(prepared, 2):
        if _reduce(_s_polynomial(a, b, p), prepared, order, p):
            return False
    return True


class Ideal:
    """A finitely generated ideal with reduced Gröbner bases cached per order.

    Populating the cache is idempotent; two threads racing on it compute the
    same basis.
    """

    __slots__ = ("ring", "gens", "_bases")

    def __init__(self, ring: PolyRing, gens: Iterable[MultiPoly] = ()):
        gens = tuple(g for g in gens if g)
        for g in gens:
            if g.ring != ring:
                raise ContextMismatchError(f"generator {g} lives in {g.ring}, not {ring}")
        self.ring = ring
        self.gens = gens
        self._bases: dict[MonomialOrder, tuple[MultiPoly, ...]] = {}

    @classmethod
    def parse(cls, ring: PolyRing, texts: list[str] | str) -> Ideal:
        from .parser import parse_generators

        return cls(ring, parse_generators(texts, ring))

    @classmethod
    def unit(cls, ring: PolyRing) -> Ideal:
        return cls(ring, [ring.one()])

    def groebner(self, order: MonomialOrder | None = None) -> tuple[MultiPoly, ...]:
        order = order or default_order(self.ring)
        basis = self._bases.get(order)
        if basis is None:
            basis = tuple(buchberger(self.gens, order))
            self._bases[order] = basis
            verbose_debug(f"basis of {self}: {[str(b) for b in basis]}")
        return basis

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        basis = self.groebner()
        return len(basis) == 1 and basis[0].is_constant()

    def reduce(self, f: MultiPoly, order: MonomialOrder | None = None) -> MultiPoly:
        return normal_form(f, self.groebner(order), order)

    def contains(self, f: MultiPoly, order: MonomialOrder | None = None) -> bool:
        if f.ring != self.ring:
            raise ContextMismatchError(f"{f} lives in {f.ring}, not {self.ring}")
        return not self.reduce(f, order)

    __contains__ = contains

    def contains_ideal(self, other: Ideal) -> bool:
        return all(self.contains(g) for g in other.gens)

    def __add__(self, other: Ideal) -> Ideal:
        if other.ring != self.ring:
            raise ContextMismatchError(f"{other.ring} ideal added to {self.ring} ideal")
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other: Ideal) -> Ideal:
        if other.ring != self.ring:
            raise ContextMismatchError(f"{other.ring} ideal times {self.ring} ideal")
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    def __hash__(self) -> int:
        return hash((self.ring, self.groebner()))

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.gens) + ")" if self.gens else "(0)"

    def __repr__(self) -> str:
        return f"Ideal{self} in {self.ring}"


def member(f: MultiPoly, ideal: Ideal, order: MonomialOrder | None = None) -> bool:
    return ideal.contains(f, order)


def ideal_equal(a: Ideal, b: Ideal) -> bool:
    """Identity of reduced Gröbner bases under the default order."""
    if a.ring != b.ring:
        raise ContextMismatchError(f"comparing ideals of {a.ring} and {b.ring}")
    return a.groebner() == b.groebner()


def eliminate(ideal: Ideal, drop: Iterable[str]) -> Ideal:
    """Generators of the ideal intersected with the subring free of ``drop``."""
    ring = ideal.ring
    drop = tuple(drop)
    idx = [ring.index(v) for v in drop]
    order = MonomialOrder.block(ring, drop)
    kept = [g for g in ideal.groebner(order) if not any(m[i] for m in g.terms for i in idx)]
    logger.debug(f"eliminated {', '.join(drop)}: {len(kept)} generators remain")
    return Ideal(ring, kept)


def intersect(a: Ideal, b: Ideal) -> Ideal:
    """a ∩ b by eliminating a tag variable w from w*a + (1-w)*b."""
    if a.ring != b.ring:
        raise ContextMismatchError(f"intersecting ideals of {a.ring} and {b.ring}")
    ring = a.ring
    if a.is_zero() or b.is_zero():
        return Ideal(ring)
    tag = ring.fresh_name()
    big = ring.extend(tag)
    w = big.gen(tag)
    gens = [w * ring.lift(f, big) for f in a.gens]
    gens += [(1 - w) * ring.lift(g, big) for g in b.gens]
    eliminated = eliminate(Ideal(big, gens), [tag])
    return Ideal(ring, [ring.restrict(g) for g in eliminated.gens])


def colon_element(ideal: Ideal, f: MultiPoly) -> Ideal:
    """(I : f) = (I ∩ (f)) / f."""
    if not f:
        raise PreconditionError("colon by the zero polynomial")
    ring = ideal.ring
    if f.is_constant():
        return Ideal(ring, ideal.gens)
    meet = intersect(ideal, Ideal(ring, [f]))
    return Ideal(ring, [g.exact_divide(f) for g in meet.gens])


def colon_ideal(ideal: Ideal, other: Ideal) -> Ideal:
    """(I : J) as the intersection of (I : g) over the generators g of J."""
    if other.is_zero():
        raise PreconditionError("colon by the zero ideal")
    result = None
    for g in other.gens:
        part = colon_element(ideal, g)
        result = part if result is None else intersect(result, part)
        if result.is_unit():
            break
    return result


def saturate(ideal: Ideal, other: Ideal) -> Ideal:
    """(I : J^∞), the stable value of repeated colons."""
    current = ideal
    rounds = 0
    while True:
        nxt = colon_ideal(current, other)
        rounds += 1
        if ideal_equal(nxt, current):
            logger.debug(f"saturation stabilised after {rounds} colon steps")
            return Ideal(current.ring, current.groebner())
        current = nxt


def validate_frobenius_power(q: object, p: int) -> int:
    e = prime_power_exponent(q, p) if isinstance(q, int) else None
    if not e:
        raise FrobeniusExponentError(q, p)
    return e


def bracket_power(ideal: Ideal, q: int) -> Ideal:
    """I^[q] generated by q-th powers of the generators; q must be p^e, e >= 1."""
    validate_frobenius_power(q, ideal.ring.p)
    return Ideal(ideal.ring, [g.frobenius(q) for g in ideal.gens])


def contract_to_t(ideal: Ideal) -> UniPoly:
    """Monic generator of I ∩ F_p[t]; the zero polynomial when the contraction is (0)."""
    ring = ideal.ring
    if not ring.has_coefficient_var:
        raise PreconditionError(f"{ring} has no coefficient variable {COEFFICIENT_VAR!r}")
    contracted = eliminate(ideal, ring.module_variables)
    return gcd_all([g.to_unipoly() for g in contracted.gens], ring.p)
