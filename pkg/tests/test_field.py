import random

import pytest

from charp.algebra.field import (
    FieldElem,
    PrimeField,
    UniPoly,
    field_inverse,
    is_irreducible,
    prime_power_exponent,
    tau,
    uni_factor,
    uni_gcd,
    uni_lcm,
)
from charp.exceptions import (
    FieldDivisionError,
    InvalidCharacteristicError,
    PreconditionError,
    ZeroPolynomialError,
)

from .oracles import is_irreducible_by_trial_division, random_unipoly


def U(p, *coeffs):
    return UniPoly(tuple(coeffs), p)


@pytest.mark.parametrize("p,a,expected", [(7, 1, 1), (7, 3, 5), (2, 1, 1)])
def test_field_inverse(p, a, expected):
    assert field_inverse(FieldElem(a, p)) == FieldElem(expected, p)


def test_field_inverse_of_zero():
    with pytest.raises(FieldDivisionError):
        field_inverse(FieldElem(0, 5))
    with pytest.raises(ZeroDivisionError):
        FieldElem(1, 5) / 0


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_field_axioms_exhaustive(p):
    F = PrimeField(p)
    elems = list(F.elements())
    zero, one = F(0), F(1)
    for a in elems:
        assert a + zero == a and a * one == a
        assert a + (-a) == zero
        if a:
            assert a * field_inverse(a) == one
        for b in elems:
            assert a + b == b + a and a * b == b * a
            for c in elems:
                assert (a + b) + c == a + (b + c)
                assert (a * b) * c == a * (b * c)
                assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("p", [0, 1, 4, 9, -3, 2**31 + 11])
def test_invalid_characteristic(p):
    with pytest.raises(InvalidCharacteristicError):
        PrimeField(p)


def test_prime_power_exponent():
    assert prime_power_exponent(8, 2) == 3
    assert prime_power_exponent(9, 3) == 2
    assert prime_power_exponent(6, 3) is None
    assert prime_power_exponent(1, 3) is None


def test_unipoly_canonical_form():
    assert U(3, 1, 2, 0, 0) == U(3, 1, 2)
    assert U(3, 3, 6).is_zero()
    assert U(5).degree == -1
    assert str(U(5, 1, 2, 0, 1)) == "t^3 + 2*t + 1"
    assert str(U(5)) == "0"


def test_unipoly_division():
    rng = random.Random(7)
    for _ in range(100):
        p = rng.choice([2, 3, 5])
        f = random_unipoly(rng, p, 8)
        g = random_unipoly(rng, p, 4)
        quo, rem = divmod(f, g)
        assert quo * g + rem == f
        assert rem.degree < g.degree
    with pytest.raises(FieldDivisionError):
        divmod(U(3, 1, 1), U(3))


def test_degree_is_additive():
    rng = random.Random(11)
    for _ in range(50):
        p = rng.choice([2, 3, 5])
        f, g = random_unipoly(rng, p, 6), random_unipoly(rng, p, 6)
        assert (f * g).degree == f.degree + g.degree


def test_uni_gcd_examples():
    assert uni_gcd(U(5, -1, 0, 1), U(5, -1, 1)) == U(5, -1, 1)
    assert uni_gcd(U(2, 1, 0, 1), U(2, 1, 1)) == U(2, 1, 1)
    f = U(3, 1, 2, 2)
    assert uni_gcd(f, U(3)) == f.monic()
    assert uni_gcd(U(3), U(3)).is_zero()


def test_uni_gcd_scales_with_common_factor():
    rng = random.Random(3)
    for _ in range(100):
        p = rng.choice([2, 3, 5])
        f, g, h = (random_unipoly(rng, p, 8) for _ in range(3))
        assert uni_gcd(f * h, g * h) == (h.monic() * uni_gcd(f, g)).monic()


def test_uni_lcm():
    f, g = U(5, -1, 0, 1), U(5, -1, 1)
    assert uni_lcm(f, g) == f.monic()
    assert uni_lcm(f, U(5)).is_zero()


@pytest.mark.parametrize(
    "p,e,expected",
    [(2, 1, (1,)), (3, 1, (1, 1)), (2, 2, (1, 1, 1)), (5, 1, (1, 1, 1, 1))],
)
def test_tau(p, e, expected):
    assert tau(p, e) == UniPoly(expected, p)


@pytest.mark.parametrize("p,e", [(2, 1), (2, 3), (3, 2), (5, 1), (7, 1)])
def test_tau_at_one(p, e):
    q = p**e
    assert tau(p, e)(1) == (q - 1) % p == p - 1


def test_tau_rejects_bad_exponent():
    with pytest.raises(PreconditionError):
        tau(3, 0)
    with pytest.raises(InvalidCharacteristicError):
        tau(6, 1)


def test_uni_factor_examples():
    t2t1 = tau(2, 2)
    result = uni_factor(t2t1)
    assert result.factors == ((t2t1, 1),)
    assert is_irreducible(t2t1)

    result = uni_factor(U(5, 1, 0, 1))
    assert result.factors == ((U(5, 2, 1), 1), (U(5, 3, 1), 1))

    result = uni_factor(tau(2, 3))
    assert result.factors == ((U(2, 1, 1, 0, 1), 1), (U(2, 1, 0, 1, 1), 1))
    assert str(result) == "(t^3 + t + 1)(t^3 + t^2 + 1)"


def test_uni_factor_multiplicities_and_unit():
    p = 3
    f = U(p, 1, 1) ** 3 * U(p, 1, 0, 1) * 2
    result = uni_factor(f)
    assert result.unit == FieldElem(2, p)
    assert result.expand() == f
    assert dict(result.factors) == {U(p, 1, 1): 3, U(p, 1, 0, 1): 1}


def test_uni_factor_of_p_th_power():
    f = U(2, 1, 1, 1) ** 4
    assert uni_factor(f).factors == ((U(2, 1, 1, 1), 4),)


def test_uni_factor_zero():
    with pytest.raises(ZeroPolynomialError):
        uni_factor(U(3))


def test_uni_factor_constant():
    result = uni_factor(U(5, 3))
    assert result.factors == ()
    assert result.expand() == U(5, 3)


def test_uni_factor_random_remultiplication():
    rng = random.Random(2024)
    for _ in range(200):
        p = rng.choice([2, 3, 5])
        f = random_unipoly(rng, p, 8)
        result = uni_factor(f)
        assert result.expand() == f
        for poly, multiplicity in result.factors:
            assert multiplicity >= 1
            assert poly.is_monic()
            assert is_irreducible_by_trial_division(poly)


def test_uni_factor_independent_of_seed():
    f = tau(2, 4)
    assert uni_factor(f, seed=1) == uni_factor(f, seed=99)


def test_uni_factor_against_sympy():
    sympy = pytest.importorskip("sympy")
    t = sympy.Symbol("t")
    rng = random.Random(5)
    for _ in range(30):
        p = rng.choice([2, 3, 5])
        f = random_unipoly(rng, p, 8)
        if f.degree < 1:
            continue
        poly = sympy.Poly(list(reversed(f.coeffs)), t, modulus=p)
        _, theirs = poly.factor_list()
        expected = {
            UniPoly(tuple(int(c) for c in reversed(g.all_coeffs())), p).monic(): m for g, m in theirs
        }
        assert dict(uni_factor(f).factors) == expected
