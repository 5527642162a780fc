"""
Brute-force oracles and seeded generators shared by the test modules.

These are deliberately naive: they only ever run on inputs small enough for
exhaustive search, and they share no code with the engine they check.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from charp.algebra.field import UniPoly
from charp.algebra.multipoly import Monomial, MultiPoly, PolyRing


def monomials_of_degree(nvars: int, degree: int) -> Iterator[Monomial]:
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            yield (first,) + rest


def in_span(target: dict[Monomial, int], columns: list[dict[Monomial, int]], p: int) -> bool:
    """Whether ``target`` is an F_p-combination of ``columns`` (sparse Gaussian elimination)."""
    pivots: list[tuple[Monomial, dict[Monomial, int]]] = []

    def reduce(vector: dict[Monomial, int]) -> dict[Monomial, int]:
        v = dict(vector)
        for m, b in pivots:
            c = v.get(m)
            if c:
                for bm, bc in b.items():
                    value = (v.get(bm, 0) - c * bc) % p
                    if value:
                        v[bm] = value
                    else:
                        v.pop(bm, None)
        return v

    for column in columns:
        v = reduce(column)
        if v:
            m = max(v)
            inv = pow(v[m], -1, p)
            pivots.append((m, {k: c * inv % p for k, c in v.items()}))
    return not reduce(target)


def member_by_linear_algebra(f: MultiPoly, gens: list[MultiPoly]) -> bool:
    """Membership of a homogeneous f in an ideal with homogeneous generators.

    In the graded ring a homogeneous f of degree d lies in the ideal iff it is
    a linear combination of m*g with deg(m) = d - deg(g).
    """
    if not f:
        return True
    ring = f.ring
    d = f.total_degree()
    columns = []
    for g in gens:
        k = d - g.total_degree()
        if k < 0:
            continue
        for m in monomials_of_degree(ring.nvars, k):
            columns.append(g.mul_term(m).terms)
    return in_span(f.terms, columns, ring.p)


def monic_polys_of_degree(degree: int, p: int) -> Iterator[UniPoly]:
    for lower in itertools.product(range(p), repeat=degree):
        yield UniPoly(lower + (1,), p)


def is_irreducible_by_trial_division(f: UniPoly) -> bool:
    if f.degree < 1:
        return False
    for d in range(1, f.degree // 2 + 1):
        for g in monic_polys_of_degree(d, f.p):
            if g.divides(f):
                return False
    return True


def random_unipoly(rng: random.Random, p: int, max_degree: int) -> UniPoly:
    degree = rng.randint(0, max_degree)
    return UniPoly(tuple(rng.randrange(p) for _ in range(degree)) + (rng.randrange(1, p),), p)


def random_homogeneous(rng: random.Random, ring: PolyRing, degree: int, max_terms: int = 4) -> MultiPoly:
    monos = list(monomials_of_degree(ring.nvars, degree))
    count = rng.randint(1, min(max_terms, len(monos)))
    terms = {m: rng.randrange(1, ring.p) for m in rng.sample(monos, count)}
    return MultiPoly(ring, terms)


def random_poly(rng: random.Random, ring: PolyRing, max_degree: int, max_terms: int = 5) -> MultiPoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        degree = rng.randint(0, max_degree)
        monos = list(monomials_of_degree(ring.nvars, degree))
        terms[rng.choice(monos)] = rng.randrange(1, ring.p)
    return MultiPoly(ring, terms)
