import cmath
import random
from fractions import Fraction

import pytest
import sympy

from fknichols.cyclotomic import (
    BadModularSpecError,
    ConductorMismatchError,
    CyclotomicNumber,
    ModularSpec,
    RootOfUnity,
    cyclotomic_polynomial,
    embed,
    find_modular_spec,
    rank,
    root_mul,
)


def test_cyclotomic_polynomial_base_cases():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)


@pytest.mark.parametrize("n", list(range(1, 25)))
def test_cyclotomic_polynomial_against_sympy(n):
    x = sympy.symbols("x")
    expected = tuple(
        int(c) for c in sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    )
    assert cyclotomic_polynomial(n) == expected


def test_phi12_by_independent_division():
    # divide x^12 - 1 by Phi_1 Phi_2 Phi_3 Phi_4 Phi_6 with a local oracle
    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    def divide(num, den):
        num = list(num)
        out = [0] * (len(num) - len(den) + 1)
        for k in range(len(out) - 1, -1, -1):
            c = num[len(den) - 1 + k] // den[-1]
            out[k] = c
            for j, d in enumerate(den):
                num[j + k] -= c * d
        assert not any(num[: len(den) - 1])
        return out

    denom = [1]
    for d in (1, 2, 3, 4, 6):
        denom = mul(denom, list(cyclotomic_polynomial(d)))
    numerator = [-1] + [0] * 11 + [1]
    assert tuple(divide(numerator, denom)) == cyclotomic_polynomial(12)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_root_mul_examples():
    assert root_mul(RootOfUnity(4, 1), RootOfUnity(4, 3)) == RootOfUnity(4, 0)
    out = root_mul(RootOfUnity(2, 1), RootOfUnity(3, 1))
    assert (out.order, out.exponent) == (6, 5)
    # numeric verification: (-1) * zeta_3 = zeta_6^5
    expected = cmath.exp(2j * cmath.pi * 5 / 6)
    assert abs(out.to_complex() - expected) < 1e-12
    sq = root_mul(RootOfUnity(6, 2), RootOfUnity(6, 2))
    assert (sq.order, sq.exponent) == (6, 4)


def test_root_of_unity_invariants(rng):
    for _ in range(200):
        n1, n2 = rng.randrange(1, 13), rng.randrange(1, 13)
        a = RootOfUnity(n1, rng.randrange(2 * n1))
        b = RootOfUnity(n2, rng.randrange(2 * n2))
        assert 0 <= a.exponent < a.order
        prod = root_mul(a, b)
        # order of the product divides lcm of the orders
        from math import lcm

        assert lcm(a.order, b.order) % prod.multiplicative_order() == 0
        assert abs(prod.to_complex() - a.to_complex() * b.to_complex()) < 1e-9
        assert (a * a.inverse()).is_one


def test_embed_examples():
    minus_one = embed(RootOfUnity(2, 1), 4)
    assert minus_one == CyclotomicNumber(4, (-1, 0))
    zeta = embed(RootOfUnity(4, 1), 4)
    assert zeta == CyclotomicNumber(4, (0, 1))
    z3 = embed(RootOfUnity(3, 1), 3)
    assert z3 * z3 == CyclotomicNumber(3, (-1, -1))  # zeta^2 = -1 - zeta


def test_embed_conductor_mismatch():
    with pytest.raises(ConductorMismatchError):
        embed(RootOfUnity(3, 1), 4)


def test_embed_multiplicative(rng):
    for _ in range(100):
        conductor = rng.choice([4, 6, 8, 12, 24])
        d1 = rng.choice([d for d in range(1, conductor + 1) if conductor % d == 0])
        d2 = rng.choice([d for d in range(1, conductor + 1) if conductor % d == 0])
        a = RootOfUnity(d1, rng.randrange(d1))
        b = RootOfUnity(d2, rng.randrange(d2))
        assert embed(root_mul(a, b), conductor) == embed(a, conductor) * embed(
            b, conductor
        )


def _random_cyc(conductor, rand):
    from fknichols._numtheory import euler_phi

    return CyclotomicNumber(
        conductor,
        [Fraction(rand.randrange(-5, 6), rand.randrange(1, 5)) for _ in range(euler_phi(conductor))],
    )


@pytest.mark.parametrize("conductor", [1, 2, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24])
def test_field_axioms(conductor):
    rand = random.Random(conductor)
    for _ in range(12):
        a, b, c = (_random_cyc(conductor, rand) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        if not a.is_zero:
            assert a * a.inverse() == CyclotomicNumber.one(conductor)


@pytest.mark.parametrize("n", list(range(1, 25)))
def test_cyclotomic_polynomial_vanishes_at_zeta(n):
    zeta = CyclotomicNumber.zeta_power(n, 1)
    total = CyclotomicNumber.zero(n)
    power = CyclotomicNumber.one(n)
    for c in cyclotomic_polynomial(n):
        total = total + power * c
        power = power * zeta
    assert total.is_zero


def test_rank_trivial_cases():
    zero = [[CyclotomicNumber.zero(4) for _ in range(3)] for _ in range(2)]
    assert rank(zero) == 0
    eye = [
        [CyclotomicNumber.from_rational(5, 1 if i == j else 0) for j in range(5)]
        for i in range(5)
    ]
    assert rank(eye) == 5
    assert rank(eye, mode="modular") == 5


def test_rank_degree2_symmetrizer_of_c2():
    # 1 + q with q = -1: the 1x1 matrix [0]; dim B(C_2) = 1 + 1 + 0
    entry = CyclotomicNumber.one(2) + embed(RootOfUnity(2, 1), 2)
    assert entry.is_zero
    assert rank([[entry]]) == 0


def test_rank_modular_matches_exact(rng):
    for trial in range(50):
        conductor = rng.choice([4, 5, 6, 7, 8, 12])
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 5)
        mat = [[_random_cyc(conductor, rng) for _ in range(cols)] for _ in range(rows)]
        exact = rank(mat)
        agreeing = 0
        for index in range(3):
            spec = find_modular_spec(conductor, index=index)
            try:
                modular = rank(mat, mode="modular", spec=spec)
            except BadModularSpecError:
                continue
            assert modular <= exact
            if modular == exact:
                agreeing += 1
        assert agreeing >= 1


def test_modular_spec_validation():
    with pytest.raises(BadModularSpecError):
        ModularSpec(10, 4, 2)  # 10 not prime
    with pytest.raises(BadModularSpecError):
        ModularSpec(7, 4, 2)  # 7 != 1 mod 4
    spec = find_modular_spec(8)
    assert (spec.prime - 1) % 8 == 0
    assert pow(spec.zeta_image, 8, spec.prime) == 1
    assert pow(spec.zeta_image, 4, spec.prime) != 1


def test_rank_rejects_mixed_conductors():
    with pytest.raises(ConductorMismatchError):
        rank([[CyclotomicNumber.one(4), CyclotomicNumber.one(8)]])


def test_rank_rejects_mismatched_spec():
    mat = [[CyclotomicNumber.one(4)]]
    with pytest.raises(BadModularSpecError):
        rank(mat, mode="modular", spec=find_modular_spec(6))
