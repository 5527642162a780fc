"""Exact arithmetic in F_p and in the coefficient ring A = F_p[t].

UniPoly values are immutable coefficient tuples in ascending degree; all
gcds, quotients of monic inputs and factors are monic.  Factorisation runs
squarefree decomposition, distinct-degree decomposition and Cantor-Zassenhaus
equal-degree splitting (trace splitting when p = 2).
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from ..exceptions import (
    FieldDivisionError,
    InvalidCharacteristicError,
    PreconditionError,
    ZeroPolynomialError,
)
from ..utils import get_factor_seed, logger

MAX_CHARACTERISTIC = 2**31


@lru_cache(maxsize=256)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def validate_characteristic(p: object) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or p >= MAX_CHARACTERISTIC:
        raise InvalidCharacteristicError(p)
    if not is_prime(p):
        raise InvalidCharacteristicError(p)
    return p


def prime_power_exponent(q: int, p: int) -> int | None:
    """Return e >= 1 with q == p**e, or None."""
    if not isinstance(q, int) or q < p:
        return None
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return e if q == 1 else None


@dataclass(frozen=True)
class FieldElem:
    """An element of F_p; ``value`` is kept in [0, p)."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other: FieldElem | int) -> int:
        if isinstance(other, FieldElem):
            if other.p != self.p:
                raise InvalidCharacteristicError(other.p)
            return other.value
        return other % self.p

    def __add__(self, other: FieldElem | int) -> FieldElem:
        return FieldElem(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other: FieldElem | int) -> FieldElem:
        return FieldElem(self.value - self._coerce(other), self.p)

    def __rsub__(self, other: int) -> FieldElem:
        return FieldElem(self._coerce(other) - self.value, self.p)

    def __mul__(self, other: FieldElem | int) -> FieldElem:
        return FieldElem(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self) -> FieldElem:
        return FieldElem(-self.value, self.p)

    def __truediv__(self, other: FieldElem | int) -> FieldElem:
        return self * field_inverse(FieldElem(self._coerce(other), self.p))

    def __pow__(self, exponent: int) -> FieldElem:
        if exponent < 0:
            return field_inverse(self) ** (-exponent)
        return FieldElem(pow(self.value, exponent, self.p), self.p)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class PrimeField:
    """The field context F_p; p is validated once here."""

    p: int

    def __post_init__(self):
        validate_characteristic(self.p)

    def __call__(self, value: int) -> FieldElem:
        return FieldElem(value, self.p)

    def elements(self) -> Iterator[FieldElem]:
        for value in range(self.p):
            yield FieldElem(value, self.p)


def field_inverse(a: FieldElem) -> FieldElem:
    if a.value == 0:
        raise FieldDivisionError(f"0 has no inverse in F_{a.p}")
    return FieldElem(pow(a.value, -1, a.p), a.p)


def _strip(coeffs: list[int]) -> tuple[int, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class UniPoly:
    """A polynomial in F_p[t]; ``coeffs[i]`` is the coefficient of t^i.

    The zero polynomial is the empty tuple and has degree -1.
    """

    coeffs: tuple[int, ...]
    p: int

    def __post_init__(self):
        p = self.p
        object.__setattr__(self, "coeffs", _strip([c % p for c in self.coeffs]))

    # construction

    @classmethod
    def zero(cls, p: int) -> UniPoly:
        return cls((), p)

    @classmethod
    def one(cls, p: int) -> UniPoly:
        return cls((1,), p)

    @classmethod
    def constant(cls, c: int, p: int) -> UniPoly:
        return cls((c,), p)

    @classmethod
    def t(cls, p: int) -> UniPoly:
        return cls((0, 1), p)

    @classmethod
    def monomial(cls, degree: int, p: int, coeff: int = 1) -> UniPoly:
        return cls((0,) * degree + (coeff,), p)

    # inspection

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomialError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __call__(self, value: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * value + c) % self.p
        return acc

    # arithmetic

    def _check(self, other: UniPoly) -> None:
        if other.p != self.p:
            raise InvalidCharacteristicError(other.p)

    def _lift(self, other: UniPoly | int) -> UniPoly:
        if isinstance(other, UniPoly):
            self._check(other)
            return other
        return UniPoly((other,), self.p)

    def __add__(self, other: UniPoly | int) -> UniPoly:
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(tuple(out), self.p)

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly(tuple(-c for c in self.coeffs), self.p)

    def __sub__(self, other: UniPoly | int) -> UniPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other: int) -> UniPoly:
        return self._lift(other) - self

    def __mul__(self, other: UniPoly | int) -> UniPoly:
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly.zero(self.p)
        p = self.p
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UniPoly(tuple(c % p for c in out), p)

    __rmul__ = __mul__

    def __divmod__(self, other: UniPoly | int) -> tuple[UniPoly, UniPoly]:
        other = self._lift(other)
        if other.is_zero():
            raise FieldDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) <= dq:
            return UniPoly.zero(p), self
        inv = pow(other.coeffs[-1], -1, p)
        divisor = other.coeffs
        quot = [0] * (len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] % p
            if c:
                c = c * inv % p
                quot[k - dq] = c
                base = k - dq
                for i, b in enumerate(divisor):
                    rem[base + i] = (rem[base + i] - c * b) % p
        return UniPoly(tuple(quot), p), UniPoly(tuple(rem[:dq]), p)

    def __floordiv__(self, other: UniPoly | int) -> UniPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: UniPoly | int) -> UniPoly:
        return divmod(self, other)[1]

    def __pow__(self, exponent: int) -> UniPoly:
        if exponent < 0:
            raise ValueError("negative exponent")
        result = UniPoly.one(self.p)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def divides(self, other: UniPoly) -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def monic(self) -> UniPoly:
        if self.is_zero():
            return self
        inv = pow(self.coeffs[-1], -1, self.p)
        return UniPoly(tuple(c * inv for c in self.coeffs), self.p)

    def derivative(self) -> UniPoly:
        return UniPoly(tuple(i * c for i, c in enumerate(self.coeffs))[1:], self.p)

    def pth_root(self) -> UniPoly:
        """Inverse Frobenius of a polynomial whose derivative vanishes."""
        p = self.p
        if any(c for i, c in enumerate(self.coeffs) if i % p):
            raise PreconditionError(f"{self} is not a p-th power")
        return UniPoly(self.coeffs[::p], p)

    def powmod(self, exponent: int, modulus: UniPoly) -> UniPoly:
        result = UniPoly.one(self.p) % modulus
        base = self % modulus
        while exponent:
            if exponent & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            exponent >>= 1
        return result

    # printing

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
                continue
            power = "t" if i == 1 else f"t^{i}"
            parts.append(power if c == 1 else f"{c}*{power}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"UniPoly({self}, p={self.p})"


def uni_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd; uni_gcd(0, 0) is 0."""
    f._check(g)
    while g:
        f, g = g, f % g
    return f.monic()


def tau(p: int, e: int) -> UniPoly:
    """1 + t + ... + t^(q-2) over F_p with q = p^e."""
    validate_characteristic(p)
    if not isinstance(e, int) or e < 1:
        raise PreconditionError(f"e must be a positive integer, got {e!r}")
    q = p**e
    return UniPoly((1,) * (q - 1), p)


@dataclass(frozen=True)
class FactorList:
    unit: FieldElem
    factors: tuple[tuple[UniPoly, int], ...] = field(default_factory=tuple)

    def expand(self) -> UniPoly:
        result = UniPoly.constant(self.unit.value, self.unit.p)
        for poly, multiplicity in self.factors:
            result = result * poly**multiplicity
        return result

    def irreducibles(self) -> list[UniPoly]:
        return [poly for poly, _ in self.factors]

    def __len__(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        parts = []
        for poly, multiplicity in self.factors:
            text = f"({poly})" if poly.degree > 0 else str(poly)
            parts.append(text if multiplicity == 1 else f"{text}^{multiplicity}")
        if self.unit.value != 1 or not parts:
            parts.insert(0, str(self.unit))
        return "".join(parts) if len(parts) > 1 else parts[0]


def _squarefree_decomposition(f: UniPoly) -> list[tuple[UniPoly, int]]:
    p = f.p
    result = []
    c = uni_gcd(f, f.derivative())
    w = f // c
    i = 1
    while not w.is_one():
        y = uni_gcd(w, c)
        fac = w // y
        if not fac.is_one():
            result.append((fac, i))
        w = y
        c = c // y
        i += 1
    if not c.is_one():
        for g, m in _squarefree_decomposition(c.pth_root()):
            result.append((g, m * p))
    return result


def _distinct_degree(f: UniPoly) -> list[tuple[UniPoly, int]]:
    p = f.p
    t = UniPoly.t(p)
    result = []
    rest = f
    h = t % rest
    i = 1
    while rest.degree >= 2 * i:
        h = h.powmod(p, rest)
        g = uni_gcd(rest, h - t)
        if not g.is_one():
            result.append((g, i))
            rest = rest // g
            h = h % rest
        i += 1
    if rest.degree > 0:
        result.append((rest, rest.degree))
    return result


def _split_candidate(a: UniPoly, f: UniPoly, d: int) -> UniPoly:
    p = f.p
    if p == 2:
        b = a % f
        acc = b
        for _ in range(d - 1):
            b = (b * b) % f
            acc = acc + b
        return acc
    return a.powmod((p**d - 1) // 2, f) - 1


def _equal_degree(f: UniPoly, d: int, rng: random.Random) -> list[UniPoly]:
    n = f.degree
    if n == d:
        return [f]
    p = f.p
    wanted = n // d
    factors = [f]
    while len(factors) < wanted:
        a = UniPoly(tuple(rng.randrange(p) for _ in range(n)), p)
        if a.degree < 1:
            continue
        g = _split_candidate(a, f, d)
        refined = []
        for u in factors:
            if u.degree > d:
                h = uni_gcd(u, g % u)
                if 0 < h.degree < u.degree:
                    refined.extend((h, u // h))
                    continue
            refined.append(u)
        factors = refined
    return factors


def uni_factor(f: UniPoly, seed: int | None = None) -> FactorList:
    """Complete factorisation of a nonzero polynomial over F_p."""
    if f.is_zero():
        raise ZeroPolynomialError("cannot factor the zero polynomial")
    p = f.p
    unit = FieldElem(f.lead, p)
    g = f.monic()
    if g.degree == 0:
        return FactorList(unit, ())
    rng = random.Random(get_factor_seed() if seed is None else seed)
    multiplicities: dict[UniPoly, int] = defaultdict(int)
    for part, m in _squarefree_decomposition(g):
        for block, d in _distinct_degree(part):
            for irreducible in _equal_degree(block, d, rng):
                multiplicities[irreducible] += m
    factors = tuple(
        sorted(multiplicities.items(), key=lambda item: (item[0].degree, item[0].coeffs[::-1]))
    )
    logger.debug(f"factored degree {f.degree} polynomial over F_{p} into {len(factors)} irreducibles")
    return FactorList(unit, factors)


def is_irreducible(f: UniPoly) -> bool:
    if f.degree < 1:
        return False
    factors = uni_factor(f).factors
    return len(factors) == 1 and factors[0][1] == 1


def uni_product(polys: Iterable[UniPoly], p: int) -> UniPoly:
    result = UniPoly.one(p)
    for poly in polys:
        result = result * poly
    return result


def uni_lcm(f: UniPoly, g: UniPoly) -> UniPoly:
    if f.is_zero() or g.is_zero():
        return UniPoly.zero(f.p)
    return (f * g // uni_gcd(f, g)).monic()


def gcd_all(polys: Sequence[UniPoly], p: int) -> UniPoly:
    result = UniPoly.zero(p)
    for poly in polys:
        result = uni_gcd(result, poly)
    return result
