import random
from fractions import Fraction

import pytest

from idealspin.errors import EvenDiscriminant, NormMinusOneUnitAbsent, PrecisionExhausted
from idealspin.fields import (
    apply_automorphism,
    construct_field,
    find_root_in_field,
    poly_discriminant,
)
from idealspin.roots import MAX_BITS, RootIsolator, interval_eval, interval_mul


def test_shanks_construction(shanks1):
    assert shanks1.poly == (-1, -2, 1, 1)
    assert shanks1.disc_field == 49  # (m^2 - 3m + 9)^2 at m = 1
    assert shanks1.maximal_order_verified
    assert shanks1.degree == 3


def test_shanks_disc_identity():
    for m in range(-6, 7):
        delta = m * m - 3 * m + 9
        assert poly_discriminant((-1, m - 3, m, 1)) == delta * delta


def test_norm_trace_examples(shanks1):
    a = shanks1.alpha
    assert a.norm() == 1
    assert a.trace() == -1
    assert (a + 1).norm() == -1


def test_sign_vectors(shanks1):
    assert shanks1.sign_vector(shanks1.one) == (1, 1, 1)
    assert shanks1.sign_vector(shanks1.coerce(-1)) == (-1, -1, -1)
    sv = shanks1.sign_vector(shanks1.alpha)
    assert sv.count(1) == 1 and sv.count(-1) == 2


def test_automorphism_composition(shanks1):
    a = shanks1.alpha
    assert apply_automorphism(a, 0) == a
    assert apply_automorphism(apply_automorphism(a, 1), 2) == a
    for j in range(3):
        for k in range(3):
            lhs = apply_automorphism(apply_automorphism(a, j), k)
            assert lhs == apply_automorphism(a, (j + k) % 3)


def test_sigma_alpha_is_root(shanks1):
    # f(sigma(alpha)) = 0 exactly in the quotient ring
    y = shanks1.alpha.galois(1)
    val = shanks1.coerce(shanks1.poly[0])
    ypow = shanks1.one
    for c in shanks1.poly[1:]:
        ypow = ypow * y
        val = val + ypow * c
    assert val.is_zero()
    # sigma(alpha) = -1/(1+alpha)
    assert (y * (shanks1.alpha + 1) + 1).is_zero()


def test_exact_ring_axioms(shanks1):
    rng = random.Random(1)
    for _ in range(1000):
        a = shanks1.element(tuple(rng.randint(-9, 9) for _ in range(3)))
        b = shanks1.element(tuple(rng.randint(-9, 9) for _ in range(3)))
        c = shanks1.element(tuple(rng.randint(-9, 9) for _ in range(3)))
        assert (a * b) * c == a * (b * c)
        assert (a * b).norm() == a.norm() * b.norm()
        assert (a + b).trace() == a.trace() + b.trace()


def test_automorphism_invariance(shanks1):
    rng = random.Random(2)
    for _ in range(50):
        e = shanks1.element(tuple(rng.randint(-9, 9) for _ in range(3)))
        for k in range(3):
            assert e.galois(k).norm() == e.norm()
            assert e.galois(k).trace() == e.trace()


def test_embedding_encloses_norm(shanks1):
    rng = random.Random(3)
    for _ in range(25):
        e = shanks1.element(tuple(rng.randint(-9, 9) for _ in range(3)))
        if e.is_zero():
            continue
        ivs = shanks1.interval_embeddings(e, 128)
        lo, hi = (Fraction(1), Fraction(1))
        for iv in ivs:
            lo, hi = interval_mul((lo, hi), iv)
        n = e.norm()
        assert lo <= n <= hi


def test_embedding_order_decreasing(shanks1):
    ivs = shanks1.embedding_intervals(64)
    vals = [float(l + h) / 2 for l, h in ivs]
    assert vals == sorted(vals, reverse=True)


def test_root_enclosures_disjoint_with_sign_change(shanks1):
    ivs = shanks1.embedding_intervals(64)
    for (lo1, hi1), (lo2, hi2) in zip(ivs, ivs[1:]):
        assert hi2 < lo1  # decreasing order, disjoint
    poly = [Fraction(c) for c in shanks1.poly]

    def ev(x):
        acc = Fraction(0)
        for c in reversed(poly):
            acc = acc * x + c
        return acc

    for lo, hi in ivs:
        assert ev(lo) * ev(hi) < 0


def test_quadratic_units():
    q5 = construct_field("real_quadratic", 5)
    eps = q5.unit_generators[1]
    assert eps.coords == (0, 1)  # (1 + sqrt5)/2
    assert eps.norm() == -1
    q13 = construct_field("real_quadratic", 13)
    assert q13.unit_generators[1].norm() == -1


def test_quadratic_rejections():
    with pytest.raises(EvenDiscriminant):
        construct_field("real_quadratic", 3)
    with pytest.raises(NormMinusOneUnitAbsent):
        construct_field("real_quadratic", 21)
    with pytest.raises(ValueError):
        construct_field("real_quadratic", 12)  # not squarefree


def test_lehmer_construction():
    ctx = construct_field("lehmer_quintic", -1)
    assert ctx.degree == 5
    beta = ctx.alpha
    assert beta.norm() == -1
    sv = ctx.sign_vector(beta)
    assert 1 in sv and -1 in sv
    for u in ctx.unit_generators:
        assert abs(u.norm()) == 1
    # the Galois orbit of beta is 5 distinct roots
    imgs = {beta.galois(k).coords for k in range(5)}
    assert len(imgs) == 5


def test_unit_generator_norms(shanks1):
    for u in shanks1.unit_generators:
        assert abs(u.norm()) == 1


def test_precision_cap():
    iso = RootIsolator((-1, -2, 1, 1))
    with pytest.raises(PrecisionExhausted):
        iso.refine(MAX_BITS + 1)


def test_find_root_in_field(shanks1):
    # the 2-division cubic of the conductor-784 curve splits here
    root = find_root_in_field(shanks1, (-29, -16, 1, 1))
    assert root is not None
    val = root * root * root + root * root + root * (-16) + (-29)
    assert val.is_zero()
    # and an unrelated cubic does not
    assert find_root_in_field(shanks1, (-2, 0, 0, 1)) is None


def test_element_inverse(shanks1):
    rng = random.Random(4)
    for _ in range(20):
        e = shanks1.element(tuple(rng.randint(-5, 5) for _ in range(3)))
        if e.is_zero():
            continue
        assert (e * e.inverse()) == shanks1.one
