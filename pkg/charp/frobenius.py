"""Frobenius powers of M_F = R_F/(x, y)R_F over A = F_p[t], their torsion and
associated primes, and the tight-closure computation for split hypersurfaces.

F^e(M_F) = F_p[t, x, y]/(x^q, y^q, F) with q = p^e.  The flagship hypersurface
is F = xy(x - y)(x - ty).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra.field import UniPoly, is_irreducible, tau, uni_factor, validate_characteristic
from .algebra.groebner import (
    Ideal,
    colon_element,
    colon_ideal,
    contract_to_t,
    ideal_equal,
    intersect,
    validate_frobenius_power,
)
from .algebra.multipoly import COEFFICIENT_VAR, MultiPoly, PolyRing, linear_substitute, poly_product
from .algebra.parser import parse_poly
from .algebra.snf import (
    ElementaryDivisors,
    graded_mult_blocks,
    mult_matrix,
    smith_normal_form,
)
from .exceptions import (
    ContextMismatchError,
    DegenerateCaseError,
    PreconditionError,
    ReducibleCandidateError,
    SplitFormError,
)
from .types import Lemma10Report, ProbeRecord, Remark13Report, Theorem12Report
from .utils import logger

FLAGSHIP_F = "x*y*(x-y)*(x-t*y)"
FLAGSHIP_SPLIT = ("x", "y", "x-y", "x-t*y")


def _xy(ring: PolyRing) -> tuple[MultiPoly, MultiPoly]:
    names = ring.module_variables
    if len(names) != 2 or not ring.has_coefficient_var:
        raise PreconditionError(f"expected a ring over t with two module variables, got {ring}")
    return ring.gen(names[0]), ring.gen(names[1])


def frobenius_q(p: int, e: int) -> int:
    validate_characteristic(p)
    if not isinstance(e, int) or e < 1:
        raise PreconditionError(f"e must be a positive integer, got {e!r}")
    return p**e


@dataclass(frozen=True)
class LinearForm:
    """a(t)*x + b(t)*y."""

    a: UniPoly
    b: UniPoly

    @classmethod
    def from_poly(cls, poly: MultiPoly) -> LinearForm:
        xv, yv = poly.ring.module_variables
        try:
            coeffs = poly.coefficient_map([xv, yv])
        except PreconditionError as e:
            raise SplitFormError(str(e)) from None
        if not coeffs or any(a + b != 1 for a, b in coeffs):
            raise SplitFormError(f"{poly} is not a linear form in {xv}, {yv}")
        zero = UniPoly.zero(poly.p)
        return cls(coeffs.get((1, 0), zero), coeffs.get((0, 1), zero))

    def to_poly(self, ring: PolyRing) -> MultiPoly:
        x, y = _xy(ring)
        return ring.from_unipoly(self.a) * x + ring.from_unipoly(self.b) * y

    def is_proportional(self, other: LinearForm) -> bool:
        return (self.a * other.b - self.b * other.a).is_zero()

    def is_constant(self) -> bool:
        return self.a.degree <= 0 and self.b.degree <= 0


@dataclass(frozen=True)
class Hypersurface:
    """F in F_p[t, x, y], optionally with its split form prod (a_k x + b_k y)^(r_k)."""

    F: MultiPoly
    split: tuple[tuple[LinearForm, int], ...] | None = None
    source: str = ""

    def __post_init__(self):
        if not self.F:
            raise PreconditionError("the hypersurface equation must be nonzero")
        if not self.source:
            object.__setattr__(self, "source", str(self.F))
        if self.split is None:
            return
        ring = self.ring
        forms = [form for form, _ in self.split]
        for i, a in enumerate(forms):
            for b in forms[i + 1 :]:
                if a.is_proportional(b):
                    raise SplitFormError(f"proportional linear factors {a.to_poly(ring)} and {b.to_poly(ring)}")
        product = poly_product((form.to_poly(ring) ** r for form, r in self.split), ring)
        if product != self.F:
            raise SplitFormError(f"split form multiplies to {product}, not {self.F}")

    @property
    def ring(self) -> PolyRing:
        return self.F.ring

    @classmethod
    def parse(cls, ring: PolyRing, expr: str, split: Sequence[str] | str | None = None) -> Hypersurface:
        F = parse_poly(expr, ring)
        if split is None and is_flagship(F):
            split = FLAGSHIP_SPLIT
        forms = None
        if split is not None:
            if isinstance(split, str):
                split = [s for s in split.split(",") if s.strip()]
            forms = tuple(_parse_split_factor(ring, s) for s in split)
        return cls(F, forms, expr)

    def linear_factor_polys(self) -> list[MultiPoly]:
        if self.split is None:
            raise SplitFormError(f"{self.source} has no split form")
        return [form.to_poly(self.ring) for form, _ in self.split]


def _parse_split_factor(ring: PolyRing, text: str) -> tuple[LinearForm, int]:
    body, _, power = text.strip().rpartition("^")
    # a trailing ^r raises the whole form to the r-th power
    if body and power.strip().isdigit():
        form_text, r = body, int(power)
    else:
        form_text, r = text, 1
    if r < 1:
        raise SplitFormError(f"bad multiplicity in {text!r}")
    return LinearForm.from_poly(parse_poly(form_text, ring)), r


def _is_flagship_ring(ring: PolyRing) -> bool:
    return ring.has_coefficient_var and ring.module_variables == ("x", "y")


def is_flagship(F: MultiPoly) -> bool:
    """True when F is xy(x - y)(x - ty) in a ring over t, x, y, however it was written."""
    return _is_flagship_ring(F.ring) and F == parse_poly(FLAGSHIP_F, F.ring)


def flagship_hypersurface(ring: PolyRing) -> Hypersurface:
    return Hypersurface.parse(ring, FLAGSHIP_F, FLAGSHIP_SPLIT)


def gamma(ring: PolyRing, q: int) -> MultiPoly:
    """x^(q-2) + x^(q-3) y + ... + y^(q-2)."""
    x, y = _xy(ring)
    result = ring.zero()
    for i in range(q - 1):
        result = result + x**i * y ** (q - 2 - i)
    return result


def theorem12_g(ring: PolyRing, q: int) -> MultiPoly:
    """G = xy(x - y) y^(q-2)."""
    x, y = _xy(ring)
    return x * y * (x - y) * y ** (q - 2)


def maximal_power(ring: PolyRing, q: int) -> Ideal:
    """(x, y)^q."""
    x, y = _xy(ring)
    return Ideal(ring, [x**i * y ** (q - i) for i in range(q + 1)])


@dataclass(frozen=True)
class FrobeniusIdeal:
    p: int
    e: int
    q: int
    ideal: Ideal
    hypersurface: Hypersurface


def frobenius_ideal(F: Hypersurface, p: int, e: int) -> FrobeniusIdeal:
    """I_q = (x^q, y^q) + (F), the defining ideal of F^e(M_F)."""
    q = frobenius_q(p, e)
    ring = F.ring
    if ring.p != p:
        raise ContextMismatchError(f"hypersurface over {ring} used with p={p}")
    x, y = _xy(ring)
    ideal = Ideal(ring, [x.frobenius(q), y.frobenius(q), F.F])
    return FrobeniusIdeal(p, e, q, ideal, F)


def frobenius_matrix(matrix: Sequence[Sequence[MultiPoly]], q: int) -> list[list[MultiPoly]]:
    """Entrywise q-th powers: the presentation matrix of F^e(M) from one of M."""
    entries = [entry for row in matrix for entry in row]
    if entries:
        validate_frobenius_power(q, entries[0].p)
    return [[entry.frobenius(q) for entry in row] for row in matrix]


def witness_colon(p: int, e: int) -> UniPoly:
    """Monic generator of ((x^q, y^q, F) : G) ∩ F_p[t] for the flagship F."""
    q = frobenius_q(p, e)
    if q < 3:
        raise DegenerateCaseError(q)
    ring = PolyRing(p)
    fi = frobenius_ideal(flagship_hypersurface(ring), p, e)
    return contract_to_t(colon_element(fi.ideal, theorem12_g(ring, q)))


def torsion_elementary_divisors(F: Hypersurface, p: int, e: int) -> ElementaryDivisors:
    """Invariant factors of F^e(M_F) = coker(F : A^(q^2) -> A^(q^2)) as an A-module."""
    q = frobenius_q(p, e)
    if F.ring.p != p:
        raise ContextMismatchError(f"hypersurface over {F.ring} used with p={p}")
    if F.F.is_homogeneous_in(F.ring.module_variables):
        blocks, uncovered = graded_mult_blocks(F.F, q)
        result = ElementaryDivisors.direct_sum(
            [smith_normal_form(block) for block in blocks], p, extra_free=uncovered
        )
    else:
        result = smith_normal_form(mult_matrix(F.F, q))
    logger.debug(f"torsion of F^{e}(M_F) for F={F.source}, p={p}: {len(result.torsion)} nonunit divisors")
    return result


@dataclass(frozen=True)
class AssProbeResult:
    prime: UniPoly
    associated: bool
    witness: MultiPoly | None = None

    def to_record(self) -> ProbeRecord:
        return ProbeRecord(
            prime=str(self.prime),
            associated=self.associated,
            witness=str(self.witness) if self.witness is not None else None,
        )


def is_associated_maximal(ideal: Ideal, pi: UniPoly) -> AssProbeResult:
    """Decide whether P = (pi, x, y) is an associated prime of R/I.

    P is maximal, so P is associated iff (I : P) != I: for h in (I : P) \\ I the
    proper ideal (I : h) contains P and therefore equals it.
    """
    if not is_irreducible(pi):
        raise ReducibleCandidateError(pi)
    ring = ideal.ring
    x, y = _xy(ring)
    pi = pi.monic()
    prime = Ideal(ring, [ring.from_unipoly(pi), x, y])
    colon = colon_ideal(ideal, prime)
    if ideal_equal(colon, ideal):
        return AssProbeResult(pi, False)
    for g in colon.groebner():
        h = ideal.reduce(g)
        if h:
            return AssProbeResult(pi, True, h)
    # unreachable: colon strictly contains the ideal
    raise AssertionError("colon differs from the ideal but has no witness")


def maximal_ass_primes(F: Hypersurface, p: int, e: int) -> list[AssProbeResult]:
    """Probe every irreducible factor of the torsion annihilator against I_q."""
    divisors = torsion_elementary_divisors(F, p, e)
    annihilator = divisors.largest()
    if annihilator.is_unit():
        return []
    fi = frobenius_ideal(F, p, e)
    probes = [is_associated_maximal(fi.ideal, pi) for pi in uni_factor(annihilator).irreducibles()]
    logger.debug(
        f"p={p} e={e} F={F.source}: {sum(r.associated for r in probes)}/{len(probes)} maximal primes associated"
    )
    return probes


def tight_closure_zero_split(F: Hypersurface, p: int, e: int) -> Ideal:
    """J = ∩_k ((l_k) + (x^q, y^q)); its image in R/I_q is the tight closure of 0."""
    if F.split is None:
        raise SplitFormError(f"{F.source} has no split form")
    q = frobenius_q(p, e)
    ring = F.ring
    x, y = _xy(ring)
    powers = [x.frobenius(q), y.frobenius(q)]
    result = None
    for form in F.linear_factor_polys():
        part = Ideal(ring, [form] + powers)
        result = part if result is None else intersect(result, part)
    return result


def ge_check(F: Hypersurface, p: int, e: int) -> bool:
    """J + I_q equals (x, y)^q + I_q."""
    fi = frobenius_ideal(F, p, e)
    closure = tight_closure_zero_split(F, p, e)
    return ideal_equal(closure + fi.ideal, maximal_power(F.ring, fi.q) + fi.ideal)


def lemma11_check(p: int, e: int) -> bool:
    """((x^(q-1), y^(q-1)) : (x - y)) equals (y^(q-1), gamma)."""
    q = frobenius_q(p, e)
    ring = PolyRing(p)
    x, y = _xy(ring)
    base = Ideal(ring, [x ** (q - 1), y ** (q - 1)])
    expected = Ideal(ring, [y ** (q - 1), gamma(ring, q)])
    return ideal_equal(colon_element(base, x - y), expected)


def theorem12_check(p: int, e: int) -> Theorem12Report:
    q = frobenius_q(p, e)
    if q < 3:
        raise DegenerateCaseError(q)
    ring = PolyRing(p)
    fi = frobenius_ideal(flagship_hypersurface(ring), p, e)
    G = theorem12_g(ring, q)
    tq = tau(p, e)
    contraction = contract_to_t(colon_element(fi.ideal, G))
    return Theorem12Report(
        p=p,
        e=e,
        q=q,
        member_tau_g=fi.ideal.contains(ring.from_unipoly(tq) * G),
        not_member_g=not fi.ideal.contains(G),
        contraction_equals_tau=contraction == tq.monic(),
        contraction=str(contraction),
    )


def lemma9_check(ideal: Ideal, alpha: UniPoly) -> bool:
    """alpha in F_p[t] is a nonzerodivisor modulo an ideal generated in F_p[x, y]."""
    if alpha.is_zero():
        raise PreconditionError("alpha must be nonzero")
    ring = ideal.ring
    for g in ideal.gens:
        if g.involves(COEFFICIENT_VAR):
            raise PreconditionError(f"generator {g} involves {COEFFICIENT_VAR}")
    return ideal_equal(colon_element(ideal, ring.from_unipoly(alpha)), ideal)


def tau_divides_torsion(F: Hypersurface, p: int, e: int) -> bool:
    return tau(p, e).divides(torsion_elementary_divisors(F, p, e).largest())


def _inverse_2x2(a: int, b: int, c: int, d: int, p: int) -> tuple[int, int, int, int]:
    det = (a * d - b * c) % p
    inv = pow(det, -1, p)
    return d * inv % p, -b * inv % p, -c * inv % p, a * inv % p


def lemma10_check(F: Hypersurface, p: int, e: int) -> Lemma10Report:
    """Normalise a hypersurface with at most three constant linear factors.

    A linear change of variables sends the factors to x, y and x - y; the
    torsion of F^e(M_F) is checked on both sides of the substitution.
    """
    if F.split is None:
        raise SplitFormError(f"{F.source} has no split form")
    if len(F.split) > 3:
        raise PreconditionError(f"{len(F.split)} distinct linear factors; at most three are supported")
    if not all(form.is_constant() for form, _ in F.split):
        raise PreconditionError("linear factors must have coefficients in the prime field")
    q = frobenius_q(p, e)
    ring = F.ring
    x, y = _xy(ring)
    xv, yv = ring.module_variables

    def const(u: UniPoly) -> int:
        return u.coeffs[0] if u.coeffs else 0

    forms = [(const(form.a), const(form.b)) for form, _ in F.split]
    if len(forms) == 1:
        a1, _ = forms[0]
        forms.append((0, 1) if a1 else (1, 0))
    (a1, b1), (a2, b2) = forms[0], forms[1]
    s00, s01, s10, s11 = _inverse_2x2(a1, b1, a2, b2, p)
    mapping = {xv: x.scale(s00) + y.scale(s01), yv: x.scale(s10) + y.scale(s11)}
    if len(F.split) == 3:
        a3, b3 = forms[2]
        c = (a3 * s00 + b3 * s10) % p
        d = (a3 * s01 + b3 * s11) % p
        lam, mu = pow(c, -1, p), (-pow(d, -1, p)) % p
        mapping = {
            xv: x.scale(s00 * lam) + y.scale(s01 * mu),
            yv: x.scale(s10 * lam) + y.scale(s11 * mu),
        }
    transformed = linear_substitute(F.F, mapping)
    targets = [x, y, x - y]
    normal = poly_product((targets[k] ** r for k, (_, r) in enumerate(F.split)), ring)
    _, lead_t = transformed.leading_term()
    _, lead_n = normal.leading_term()
    unit = (lead_t / lead_n).value
    substitution_ok = transformed == normal.scale(unit)
    before = torsion_elementary_divisors(F, p, e)
    after = torsion_elementary_divisors(Hypersurface(transformed), p, e)
    return Lemma10Report(
        p=p,
        e=e,
        q=q,
        factors=[str(poly) for poly in F.linear_factor_polys()],
        substitution={name: str(image) for name, image in mapping.items()},
        normal_form=str(normal),
        unit=unit,
        substitution_ok=substitution_ok,
        torsion_free_before=before.is_torsion_free(),
        torsion_free_after=after.is_torsion_free(),
    )


def remark13_check(F: Hypersurface, p: int, e: int) -> Remark13Report:
    """ge_check plus the probe of every associated maximal prime against (x,y)^q + (F)."""
    q = frobenius_q(p, e)
    ge = ge_check(F, p, e)
    probes = maximal_ass_primes(F, p, e)
    tame_ideal = maximal_power(F.ring, q) + Ideal(F.ring, [F.F])
    tame = [is_associated_maximal(tame_ideal, r.prime) for r in probes if r.associated]
    return Remark13Report(
        p=p,
        e=e,
        q=q,
        ge_check=ge,
        probes=[r.to_record() for r in probes],
        tame_probes=[r.to_record() for r in tame],
    )
