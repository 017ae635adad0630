import itertools
import random

import pytest

from idealspin.arith import legendre
from idealspin.errors import EvenModulus, NotCoprime
from idealspin.ideals import (
    elements_coprime,
    make_ideal,
    prime_power_ideal,
    split_prime,
)
from idealspin.symbols import (
    bracket_symbol,
    build_mu2_table,
    complete_sum_check,
    completed_symbol,
    dirichlet_char,
    mu_and_mu2,
    mu_infty,
    prime_symbol,
    residue_symbol,
)


def odd_sample(ctx, rng, bound=8):
    while True:
        e = ctx.element(tuple(rng.randint(-bound, bound) for _ in range(ctx.degree)))
        n = e.norm()
        if n % 2:
            return e


def test_legendre_example(shanks1):
    pr = split_prime(shanks1, 13)[0]
    assert residue_symbol(shanks1, shanks1.alpha, pr) == legendre(7, 13) == -1


def test_symbol_zero_in_prime(shanks1):
    pr = split_prime(shanks1, 13)[0]
    assert residue_symbol(shanks1, shanks1.element((13, 0, 0)), pr) == 0
    assert residue_symbol(shanks1, shanks1.element((-7, 1, 0)), pr) == 0  # alpha-7


def test_unit_square_invariance(shanks1):
    rng = random.Random(21)
    pr = split_prime(shanks1, 29)[1]
    for _ in range(30):
        e = shanks1.element(tuple(rng.randint(-9, 9) for _ in range(3)))
        u = shanks1.unit_generators[rng.randint(1, 2)]
        assert residue_symbol(shanks1, e * u * u, pr) == residue_symbol(shanks1, e, pr)


def test_multiplicativity(shanks1):
    rng = random.Random(22)
    p13 = split_prime(shanks1, 13)
    q = prime_power_ideal(p13[0]) * prime_power_ideal(p13[2])
    r = prime_power_ideal(split_prime(shanks1, 29)[0])
    for _ in range(500):
        a = shanks1.element(tuple(rng.randint(-9, 9) for _ in range(3)))
        b = shanks1.element(tuple(rng.randint(-9, 9) for _ in range(3)))
        assert residue_symbol(shanks1, a * b, q) == residue_symbol(
            shanks1, a, q
        ) * residue_symbol(shanks1, b, q)
        assert residue_symbol(shanks1, a, q * r) == residue_symbol(
            shanks1, a, q
        ) * residue_symbol(shanks1, a, r)


def test_euler_criterion_brute_force(shanks1):
    # inert primes p <= 50: the symbol against enumerating all squares
    for p in (2, 3, 5, 17, 23, 31, 37, 47):
        prs = split_prime(shanks1, p)
        if len(prs) != 1 or prs[0].f != 3 or p == 2:
            continue
        pr = prs[0]
        squares = set()
        for c in itertools.product(range(p), repeat=3):
            squares.add(tuple(x % p for x in shanks1.mul_coords(c, c)))
        rng = random.Random(p)
        for _ in range(12):
            c = tuple(rng.randint(0, p - 1) for _ in range(3))
            e = shanks1.element(c)
            expect = 0 if all(x == 0 for x in c) else (1 if c in squares else -1)
            assert prime_symbol(shanks1, e, pr) == expect


def test_mu_infty(shanks1):
    a = shanks1.alpha
    assert mu_infty(shanks1, shanks1.one, a) == 1
    assert mu_infty(shanks1, shanks1.coerce(-1), shanks1.coerce(-1)) == -1
    assert mu_infty(shanks1, a, a) == 1  # two shared-negative places


def test_mu2_well_defined(shanks1):
    rng = random.Random(23)
    pairs = []
    while len(pairs) < 300:
        a = odd_sample(shanks1, rng)
        b = odd_sample(shanks1, rng)
        if elements_coprime(shanks1, a, b):
            pairs.append((a, b))
    table = build_mu2_table(shanks1, pairs)  # raises on any inconsistency
    assert table


def test_mu2_one_one_cell(shanks1):
    rng = random.Random(24)
    one = shanks1.one
    for _ in range(40):
        a = one + 8 * shanks1.element(tuple(rng.randint(-3, 3) for _ in range(3)))
        b = one + 8 * shanks1.element(tuple(rng.randint(-3, 3) for _ in range(3)))
        if not elements_coprime(shanks1, a, b):
            continue
        _, m2 = mu_and_mu2(shanks1, a, b)
        assert m2 == 1


def test_mu_totally_positive_case(shanks1):
    # both entries totally positive: mu_infty = 1 so mu = mu_2
    from idealspin.units import make_totally_positive

    rng = random.Random(25)
    for _ in range(20):
        a = make_totally_positive(shanks1, odd_sample(shanks1, rng))
        b = make_totally_positive(shanks1, odd_sample(shanks1, rng))
        if not elements_coprime(shanks1, a, b):
            continue
        mu, m2 = mu_and_mu2(shanks1, a, b)
        assert mu == m2


def test_mu2_requires_coprime(shanks1):
    a = shanks1.element((3, 0, 0))
    with pytest.raises(NotCoprime):
        mu_and_mu2(shanks1, a, a * shanks1.element((1, 1, 0)))


def test_completed_symbol_tp_case(shanks1):
    from idealspin.units import make_totally_positive

    rng = random.Random(26)
    for _ in range(20):
        a = make_totally_positive(shanks1, odd_sample(shanks1, rng))
        b = odd_sample(shanks1, rng)
        assert completed_symbol(shanks1, a, b) == residue_symbol(shanks1, a, b)


def test_completed_symbol_periodicity_sample(shanks1):
    rng = random.Random(27)
    for a_coords in [(0, 2, 0), (1, 1, 0), (2, 0, 0), (3, -1, 1)]:
        a = shanks1.element(a_coords)
        for _ in range(15):
            b = odd_sample(shanks1, rng, bound=5)
            rho = shanks1.element(tuple(rng.randint(-2, 2) for _ in range(3)))
            b2 = b + a * rho * 8
            assert completed_symbol(shanks1, a, b) == completed_symbol(shanks1, a, b2)


def test_bracket_periodicity_sample(shanks1):
    # alpha odd with 1 + alpha odd (residue class mod 2 not 0 or 1)
    rng = random.Random(28)
    a = shanks1.alpha  # norm 1, odd; 1+alpha has norm -1, odd
    assert (shanks1.one + a).norm() % 2 != 0
    done = 0
    while done < 15:
        b = odd_sample(shanks1, rng, bound=5)
        rho = shanks1.element(tuple(rng.randint(-2, 2) for _ in range(3)))
        b2 = b + a * rho * 2
        if not (elements_coprime(shanks1, a, b) and elements_coprime(shanks1, a, b2)):
            continue
        assert bracket_symbol(shanks1, a, b) == bracket_symbol(shanks1, a, b2)
        done += 1


def test_dirichlet_char(shanks1):
    pr = split_prime(shanks1, 13)[0]
    chi = dirichlet_char(shanks1, pr)
    assert chi.modulus == 13
    assert all(chi(l) == legendre(l, 13) for l in range(13))
    assert not chi.is_principal()
    rng = random.Random(29)
    for _ in range(100):
        l = rng.randint(-1000, 1000)
        assert chi(l + 13) == chi(l)


def test_dirichlet_char_inert(shanks1):
    pr = split_prime(shanks1, 3)[0]  # norm 27
    chi = dirichlet_char(shanks1, pr)
    assert chi.modulus == 27
    # cross-check against the residue symbol of the constant
    for l in range(1, 27):
        expect = residue_symbol(shanks1, shanks1.coerce(l), pr) if l % 3 else 0
        assert chi(l) == expect
    assert not chi.is_principal()


def test_complete_sums(shanks1):
    pr = split_prime(shanks1, 13)[0]
    s, hyp = complete_sum_check(shanks1, prime_power_ideal(pr), "full")
    assert hyp and s == 0
    s, hyp = complete_sum_check(shanks1, prime_power_ideal(pr), "conjugate")
    assert hyp and s == 0
    s, hyp = complete_sum_check(shanks1, make_ideal([(pr, 2)]), "full")
    assert not hyp  # square ideal: hypothesis violated, sum may be nonzero
    assert s != 0


def test_even_modulus_rejected(shanks1):
    p2 = split_prime(shanks1, 2)[0]
    with pytest.raises(EvenModulus):
        residue_symbol(shanks1, shanks1.alpha, p2)
    # but elements inside the even prime give 0 without a parity decision
    assert residue_symbol(shanks1, shanks1.coerce(2), p2) == 0
