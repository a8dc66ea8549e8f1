from fractions import Fraction

import pytest

from prismring.fields import GF, QQ, Field, NonInvertibleError


def test_primality_enforced():
    for bad in (1, 4, 6, 9, 100):
        with pytest.raises(ValueError):
            Field(bad)
    GF(2)
    GF(101)


def test_inverse_law_exhaustive_small_primes():
    primes = [p for p in range(2, 102) if all(p % d for d in range(2, p))]
    for p in primes:
        F = GF(p)
        for a in range(1, p):
            assert F.mul(a, F.inv(a)) == 1


def test_coerce_rational_into_prime_field():
    assert GF(7).coerce(Fraction(1, 5)) == 3
    with pytest.raises(NonInvertibleError):
        GF(5).coerce(Fraction(1, 5))


def test_rational_ops_are_fractions():
    assert QQ.coerce(3) == Fraction(3)
    assert QQ.div(Fraction(1), Fraction(3)) == Fraction(1, 3)
    assert QQ.is_zero(Fraction(0))
