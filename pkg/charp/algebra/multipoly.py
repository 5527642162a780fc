"""Polynomials in F_p[t, x, y] (or any short variable list) over a prime field.

A polynomial is a mapping from exponent tuples to residues in [1, p).  The
variable named ``t`` plays the role of the coefficient ring A = F_p[t]; every
other variable is a module variable.  Contractions to A are eliminations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from ..exceptions import (
    ContextMismatchError,
    FieldDivisionError,
    LinearSubstitutionError,
    PreconditionError,
    ZeroPolynomialError,
)
from .field import FieldElem, UniPoly, validate_characteristic

Monomial = tuple[int, ...]

COEFFICIENT_VAR = "t"
DEFAULT_VARIABLES = ("t", "x", "y")


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_quotient(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class PolyRing:
    """The context of a computation: characteristic plus ordered variable names.

    Rings compare by value, so two independently built ``PolyRing(3)`` objects
    are interchangeable.
    """

    p: int
    variables: tuple[str, ...] = DEFAULT_VARIABLES

    def __post_init__(self):
        validate_characteristic(self.p)
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables) or not self.variables:
            raise PreconditionError(f"bad variable list {self.variables!r}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def has_coefficient_var(self) -> bool:
        return COEFFICIENT_VAR in self.variables

    @property
    def module_variables(self) -> tuple[str, ...]:
        return tuple(v for v in self.variables if v != COEFFICIENT_VAR)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise PreconditionError(f"{name!r} is not a variable of {self}") from None

    def unit_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def zero(self) -> MultiPoly:
        return MultiPoly(self, {})

    def one(self) -> MultiPoly:
        return self.constant(1)

    def constant(self, c: int) -> MultiPoly:
        return MultiPoly(self, {self.unit_monomial(): c})

    def gen(self, name: str) -> MultiPoly:
        exps = [0] * self.nvars
        exps[self.index(name)] = 1
        return MultiPoly(self, {tuple(exps): 1})

    def gens(self) -> tuple[MultiPoly, ...]:
        return tuple(self.gen(v) for v in self.variables)

    def monomial(self, exps: Monomial, coeff: int = 1) -> MultiPoly:
        return MultiPoly(self, {tuple(exps): coeff})

    def from_unipoly(self, u: UniPoly, var: str = COEFFICIENT_VAR) -> MultiPoly:
        if u.p != self.p:
            raise ContextMismatchError(f"F_{u.p}[t] polynomial used in {self}")
        i = self.index(var)
        terms = {}
        for k, c in enumerate(u.coeffs):
            if c:
                exps = [0] * self.nvars
                exps[i] = k
                terms[tuple(exps)] = c
        return MultiPoly(self, terms)

    def parse(self, text: str) -> MultiPoly:
        from .parser import parse_poly

        return parse_poly(text, self)

    def extend(self, name: str) -> PolyRing:
        """A ring with one more variable appended at the end."""
        if name in self.variables:
            raise PreconditionError(f"{name!r} already in {self}")
        return PolyRing(self.p, self.variables + (name,))

    def fresh_name(self, stem: str = "w") -> str:
        name, k = stem, 0
        while name in self.variables:
            k += 1
            name = f"{stem}{k}"
        return name

    def lift(self, f: MultiPoly, bigger: PolyRing) -> MultiPoly:
        """Embed a polynomial into a ring whose variables extend ours."""
        if bigger.variables[: self.nvars] != self.variables or bigger.p != self.p:
            raise ContextMismatchError(f"{bigger} does not extend {self}")
        pad = (0,) * (bigger.nvars - self.nvars)
        return MultiPoly(bigger, {m + pad: c for m, c in f.terms.items()})

    def restrict(self, f: MultiPoly) -> MultiPoly:
        """Inverse of lift for polynomials free of the appended variables."""
        n = self.nvars
        terms = {}
        for m, c in f.terms.items():
            if any(m[n:]):
                raise PreconditionError(f"{f} involves variables outside {self}")
            terms[m[:n]] = c
        return MultiPoly(self, terms)

    def __str__(self) -> str:
        return f"F_{self.p}[{', '.join(self.variables)}]"


@dataclass(frozen=True)
class MonomialOrder:
    """A term order given by kind and variable precedence.

    ``precedence`` lists variable indices from most to least significant.
    For block orders ``front`` is the number of leading precedence entries
    that form the eliminated block; both blocks use the ``inner`` order.
    Keys are flat integer tuples so they can be compared and negated cheaply.
    """

    kind: str
    precedence: tuple[int, ...]
    front: int = 0
    inner: str = "grevlex"

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise PreconditionError(f"unknown monomial order {self.kind!r}")
        if self.inner not in ("lex", "grevlex"):
            raise PreconditionError(f"unknown block inner order {self.inner!r}")

    @staticmethod
    def default_precedence(ring: PolyRing) -> tuple[int, ...]:
        mods = [i for i, v in enumerate(ring.variables) if v != COEFFICIENT_VAR]
        coef = [i for i, v in enumerate(ring.variables) if v == COEFFICIENT_VAR]
        return tuple(mods + coef)

    @classmethod
    def grevlex(cls, ring: PolyRing) -> MonomialOrder:
        return cls("grevlex", cls.default_precedence(ring))

    @classmethod
    def lex(cls, ring: PolyRing) -> MonomialOrder:
        return cls("lex", cls.default_precedence(ring))

    @classmethod
    def block(
        cls, ring: PolyRing, front: Iterable[str], inner: str = "grevlex"
    ) -> MonomialOrder:
        front_idx = [ring.index(v) for v in front]
        rest = [i for i in cls.default_precedence(ring) if i not in front_idx]
        front_sorted = [i for i in cls.default_precedence(ring) if i in front_idx]
        return cls("block", tuple(front_sorted + rest), len(front_sorted), inner)

    @classmethod
    def from_name(cls, name: str, ring: PolyRing) -> MonomialOrder:
        """Orders by CLI name; ``block`` eliminates the module variables."""
        if name == "grevlex":
            return cls.grevlex(ring)
        if name == "lex":
            return cls.lex(ring)
        if name == "block":
            return cls.block(ring, ring.module_variables)
        raise PreconditionError(f"unknown monomial order {name!r}")

    @staticmethod
    def _part_key(kind: str, exps: Monomial, idx: Sequence[int]) -> tuple[int, ...]:
        if kind == "lex":
            return tuple(exps[i] for i in idx)
        return (sum(exps[i] for i in idx),) + tuple(-exps[i] for i in reversed(idx))

    def key(self, exps: Monomial) -> tuple[int, ...]:
        return _order_key(self, exps)

    def _compute_key(self, exps: Monomial) -> tuple[int, ...]:
        if self.kind == "block":
            front = self.precedence[: self.front]
            rest = self.precedence[self.front :]
            k = self._part_key(self.inner, exps, front) + self._part_key(
                self.inner, exps, rest
            )
        else:
            return self._part_key(self.kind, exps, self.precedence)
        return k

    def __str__(self) -> str:
        if self.kind == "block":
            return f"block({self.front}|{self.inner})"
        return self.kind


ORDER_KEY_CACHE_SIZE = 1 << 16


@lru_cache(maxsize=ORDER_KEY_CACHE_SIZE)
def _order_key(order: MonomialOrder, exps: Monomial) -> tuple[int, ...]:
    return order._compute_key(exps)


class MultiPoly:
    """An immutable polynomial bound to a PolyRing."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, int]):
        p = ring.p
        clean = {}
        for m, c in terms.items():
            c %= p
            if c:
                clean[m] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _trusted(cls, ring: PolyRing, terms: dict[Monomial, int]) -> MultiPoly:
        """Wrap a dict already reduced mod p with no zero entries."""
        obj = cls.__new__(cls)
        object.__setattr__(obj, "ring", ring)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    def __reduce__(self):
        return (MultiPoly, (self.ring, self.terms))

    # inspection

    @property
    def p(self) -> int:
        return self.ring.p

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def involves(self, name: str) -> bool:
        return self.degree_in(name) > 0

    def is_homogeneous_in(self, names: Iterable[str]) -> bool:
        idx = [self.ring.index(v) for v in names]
        degrees = {sum(m[i] for i in idx) for m in self.terms}
        return len(degrees) <= 1

    def sorted_terms(self, order: MonomialOrder | None = None) -> list[tuple[Monomial, int]]:
        order = order or self._default_order
        return sorted(self.terms.items(), key=lambda item: order.key(item[0]), reverse=True)

    def leading_term(self, order: MonomialOrder | None = None) -> tuple[Monomial, FieldElem]:
        if not self.terms:
            raise ZeroPolynomialError("the zero polynomial has no leading term")
        order = order or self._default_order
        m = max(self.terms, key=order.key)
        return m, FieldElem(self.terms[m], self.p)

    def leading_monomial(self, order: MonomialOrder | None = None) -> Monomial:
        return self.leading_term(order)[0]

    def monic(self, order: MonomialOrder | None = None) -> MultiPoly:
        if not self.terms:
            return self
        _, lc = self.leading_term(order)
        return self.scale(pow(lc.value, -1, self.p))

    @property
    def _default_order(self) -> MonomialOrder:
        return _default_order(self.ring)

    # arithmetic

    def _check(self, other: MultiPoly) -> None:
        if other.ring != self.ring:
            raise ContextMismatchError(f"{other.ring} operand used with {self.ring}")

    def _lift(self, other: MultiPoly | int) -> MultiPoly:
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other: MultiPoly | int) -> MultiPoly:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return MultiPoly._trusted(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        p = self.p
        return MultiPoly._trusted(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other: MultiPoly | int) -> MultiPoly:
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: int) -> MultiPoly:
        return (-self) + other

    def scale(self, c: int) -> MultiPoly:
        c %= self.p
        if not c:
            return self.ring.zero()
        p = self.p
        return MultiPoly._trusted(self.ring, {m: v * c % p for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c: int = 1) -> MultiPoly:
        p = self.p
        c %= p
        if not c:
            return self.ring.zero()
        return MultiPoly._trusted(
            self.ring, {monomial_mul(m, mono): v * c % p for m, v in self.terms.items()}
        )

    def __mul__(self, other: MultiPoly | int) -> MultiPoly:
        if isinstance(other, int):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.p
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_mul(m1, m2)
                out[m] = (out.get(m, 0) + c1 * c2) % p
        return MultiPoly._trusted(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> MultiPoly:
        if exponent < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def frobenius(self, q: int) -> MultiPoly:
        """f**q computed termwise; valid when q is a power of p."""
        return MultiPoly._trusted(
            self.ring, {tuple(e * q for e in m): pow(c, q, self.p) for m, c in self.terms.items()}
        )

    def divmod(
        self, divisor: MultiPoly, order: MonomialOrder | None = None
    ) -> tuple[MultiPoly, MultiPoly]:
        """Division by a single polynomial: self = quotient*divisor + remainder."""
        self._check(divisor)
        if not divisor.terms:
            raise FieldDivisionError("division by the zero polynomial")
        order = order or self._default_order
        lm, lc = divisor.leading_term(order)
        inv = pow(lc.value, -1, self.p)
        p = self.p
        rest = dict(self.terms)
        quot: dict[Monomial, int] = {}
        rem: dict[Monomial, int] = {}
        while rest:
            m = max(rest, key=order.key)
            c = rest[m]
            if monomial_divides(lm, m):
                u = monomial_quotient(m, lm)
                k = c * inv % p
                quot[u] = (quot.get(u, 0) + k) % p
                for dm, dc in divisor.terms.items():
                    mm = monomial_mul(dm, u)
                    v = (rest.get(mm, 0) - k * dc) % p
                    if v:
                        rest[mm] = v
                    else:
                        rest.pop(mm, None)
            else:
                rem[m] = c
                del rest[m]
        return MultiPoly(self.ring, quot), MultiPoly._trusted(self.ring, rem)

    def exact_divide(self, divisor: MultiPoly) -> MultiPoly:
        quotient, remainder = self.divmod(divisor)
        if remainder:
            raise PreconditionError(f"{divisor} does not divide {self}")
        return quotient

    # conversion

    def to_unipoly(self, var: str = COEFFICIENT_VAR) -> UniPoly:
        i = self.ring.index(var)
        coeffs: dict[int, int] = {}
        for m, c in self.terms.items():
            if any(e for j, e in enumerate(m) if j != i):
                raise PreconditionError(f"{self} is not a polynomial in {var} alone")
            coeffs[m[i]] = c
        top = max(coeffs, default=-1)
        return UniPoly(tuple(coeffs.get(k, 0) for k in range(top + 1)), self.p)

    def coefficient_map(self, names: Sequence[str]) -> dict[Monomial, UniPoly]:
        """Group terms by their exponents in ``names``; coefficients become UniPolys in t.

        Variables outside ``names`` other than t must not occur.
        """
        idx = [self.ring.index(v) for v in names]
        ti = self.ring.index(COEFFICIENT_VAR) if self.ring.has_coefficient_var else None
        others = [j for j in range(self.ring.nvars) if j not in idx and j != ti]
        grouped: dict[Monomial, dict[int, int]] = {}
        for m, c in self.terms.items():
            if any(m[j] for j in others):
                raise PreconditionError(f"{self} involves variables outside {names}")
            key = tuple(m[i] for i in idx)
            grouped.setdefault(key, {})[m[ti] if ti is not None else 0] = c
        out = {}
        for key, coeffs in grouped.items():
            top = max(coeffs)
            out[key] = UniPoly(tuple(coeffs.get(k, 0) for k in range(top + 1)), self.p)
        return out

    # comparison and printing

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == self.ring.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.ring, frozenset(self.terms.items()))))
        return self._hash

    def to_string(self, order: MonomialOrder | None = None) -> str:
        if not self.terms:
            return "0"
        names = self.ring.variables
        parts = []
        for m, c in self.sorted_terms(order):
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"MultiPoly({self}, {self.ring})"

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self.terms.items())


@lru_cache(maxsize=64)
def _default_order(ring: PolyRing) -> MonomialOrder:
    return MonomialOrder.grevlex(ring)


def default_order(ring: PolyRing) -> MonomialOrder:
    """Grevlex with the module variables ahead of t (x > y > t for the default ring)."""
    return _default_order(ring)


def linear_substitute(f: MultiPoly, mapping: Mapping[str, MultiPoly]) -> MultiPoly:
    """Replace module variables by linear forms with F_p[t] coefficients.

    t is fixed.  Every image must be a sum of terms each linear in the module
    variables (so a*x + b*y with a, b in F_p[t]).
    """
    ring = f.ring
    module_idx = [ring.index(v) for v in ring.module_variables]
    images: list[MultiPoly | None] = [None] * ring.nvars
    for name, image in mapping.items():
        if name == COEFFICIENT_VAR or name not in ring.variables:
            raise LinearSubstitutionError(f"cannot substitute for {name!r}")
        if image.ring != ring:
            raise ContextMismatchError(f"image of {name} lives in {image.ring}")
        for m in image.terms:
            if sum(m[i] for i in module_idx) != 1:
                raise LinearSubstitutionError(
                    f"image of {name} is not linear in {', '.join(ring.module_variables)}: {image}"
                )
        images[ring.index(name)] = image

    powers: dict[tuple[int, int], MultiPoly] = {}

    def power_of(i: int, e: int) -> MultiPoly:
        key = (i, e)
        if key not in powers:
            powers[key] = images[i] ** e
        return powers[key]

    result = ring.zero()
    for m, c in f.terms.items():
        fixed = tuple(e if images[i] is None else 0 for i, e in enumerate(m))
        term = ring.monomial(fixed, c)
        for i, e in enumerate(m):
            if e and images[i] is not None:
                term = term * power_of(i, e)
        result = result + term
    return result


def poly_product(polys: Iterable[MultiPoly], ring: PolyRing) -> MultiPoly:
    result = ring.one()
    for poly in polys:
        result = result * poly
    return result

