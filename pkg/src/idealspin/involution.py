"""Spins for the involution of a real quadratic field, the closed-form
half-trace evaluation, and the §-level statistics.

Here the fixed field is Q, so the closed form is a classical Jacobi symbol
of the half-trace beta against the field discriminant d.  That symbol is
computed by the rational Jacobi routine, fully independent of the field
residue-symbol machinery, which is what makes the agreement check a genuine
dual pipeline.
"""

from dataclasses import dataclass
from math import gcd

from .arith import jacobi, legendre, sieve_primes
from .errors import HypothesisViolated
from .fields import FieldElement
from .ideals import (
    PrimeIdealData,
    elements_coprime,
    eval_coords_mod_p,
    galois_prime,
    prime_power_ideal,
    split_prime,
)
from .spin import canonical_ideal_generator
from .units import FundamentalDomain, unit_square_image


@dataclass(frozen=True)
class QuadSpinRecord:
    p: int
    prime: PrimeIdealData
    pi: FieldElement          # totally positive generator, = 1 mod 8
    beta: int                 # half trace, a rational integer
    spin_direct: int
    spin_formula: int

    @property
    def agree(self) -> bool:
        return self.spin_direct == self.spin_formula


def _require_quadratic(ctx):
    if ctx.degree != 2:
        raise ValueError("involution spins need a real quadratic field")


def qualifying_generator(ctx, dom: FundamentalDomain, prime: PrimeIdealData):
    """A totally positive generator = 1 mod 8, found by walking the cyclic
    image of the squared fundamental unit in (O/8)^x; None if the orbit
    misses the class."""
    _require_quadratic(ctx)
    return _qualifying_generator_of_ideal(ctx, dom, prime_power_ideal(prime))


def spin_involution_direct(ctx, dom: FundamentalDomain, ideal) -> int:
    """(pi / a^sigma) with the field's own symbol machinery, for an odd
    principal ideal with a qualifying generator."""
    from .ideals import IdealFactorization, apply_galois_ideal
    from .symbols import residue_symbol

    _require_quadratic(ctx)
    if isinstance(ideal, PrimeIdealData):
        if ideal.e > 1 or ideal.f > 1 or ideal.p == 2:
            return 0  # conjugate shares the prime (or even): symbol vanishes
        pi = qualifying_generator(ctx, dom, ideal)
        if pi is None:
            raise HypothesisViolated("no totally positive generator = 1 mod 8")
        conj = galois_prime(ctx, ideal, 1)
        return legendre(eval_coords_mod_p(pi.coords, conj.r, ideal.p), ideal.p)
    if not isinstance(ideal, IdealFactorization):
        raise TypeError("need a prime or an ideal factorization")
    if not ideal.coprime_to(apply_galois_ideal(ctx, ideal, 1)):
        return 0
    pi = _qualifying_generator_of_ideal(ctx, dom, ideal)
    if pi is None:
        raise HypothesisViolated("no totally positive generator = 1 mod 8")
    return residue_symbol(ctx, pi, apply_galois_ideal(ctx, ideal, 1))


def _qualifying_generator_of_ideal(ctx, dom, ideal):
    g = canonical_ideal_generator(ctx, dom, ideal)
    eps2 = ctx.unit_generators[1] ** 2
    target = ctx.coords_mod(ctx.one, 8)
    cur = ctx.coords_mod(g, 8)
    step = ctx.coords_mod(eps2, 8)
    pi = g
    seen = set()
    while cur not in seen:
        if cur == target:
            return pi
        seen.add(cur)
        cur = tuple(c % 8 for c in ctx.mul_coords(cur, step))
        pi = pi * eps2
    return None


def spin_involution_formula(ctx, pi: FieldElement) -> int:
    """Closed form: the rational Jacobi symbol (beta / d) of the half-trace.

    Hypotheses: pi totally positive, = 1 mod 8, coprime to its conjugate."""
    _require_quadratic(ctx)
    d = ctx.disc_field
    if ctx.coords_mod(pi, 8) != ctx.coords_mod(ctx.one, 8):
        raise HypothesisViolated("generator must be = 1 mod 8")
    if not ctx.is_totally_positive(pi):
        raise HypothesisViolated("generator must be totally positive")
    if not elements_coprime(ctx, pi, pi.galois(1)):
        raise HypothesisViolated("generator shares a factor with its conjugate")
    t = pi.trace()
    if t % 2:
        raise ArithmeticError("half-trace is not integral")  # pragma: no cover
    beta = t // 2
    return jacobi(beta % d, d)


def half_trace_invariants(ctx, pi: FieldElement) -> dict:
    """Exact checks around beta and gamma: beta = 1 mod 4, gamma = 0 mod 4,
    N(pi) = beta^2 - gamma^2."""
    beta = pi.trace() // 2
    gamma = pi - ctx.coerce(beta)            # (pi - sigma pi)/2 as an element
    gamma2 = (gamma * gamma).coords          # rational integer: coords (g2, 0)
    ok = {
        "beta_1_mod_4": beta % 4 == 1,
        "gamma_0_mod_4": all(int(c) % 4 == 0 for c in gamma.coords),
        "norm_split": pi.norm() == beta * beta - int(gamma2[0]),
    }
    ok["all"] = all(ok.values())
    return ok


def lemma_10_3_check(ctx, x: int, prime: PrimeIdealData) -> bool:
    """(x/P)_K = (x/p)_Q for odd split P over p, rational x coprime to p."""
    _require_quadratic(ctx)
    if prime.p == 2 or prime.e > 1 or prime.f > 1:
        raise ValueError("need an odd split degree-one prime")
    if x % prime.p == 0:
        raise ValueError("x must be coprime to p")
    lhs = legendre(eval_coords_mod_p((x, 0), prime.r, prime.p), prime.p)
    rhs = legendre(x, prime.p)
    return lhs == rhs


def eq_10_11_sum(ctx) -> int:
    """Exact full residue sum of Jacobi(trace, d) over the classes of O/dO
    coprime to the ramified prime; the change-of-variable argument makes it
    vanish."""
    _require_quadratic(ctx)
    d = ctx.disc_field
    total = 0
    for x in range(d):
        for y in range(d):
            if ctx.norm_coords((x, y)) % d == 0:
                continue
            total += jacobi((ctx.trace_coords((x, y))) % d, d)
    return total


def quad_spin_records(ctx, dom: FundamentalDomain, X: int):
    """QuadSpinRecords for qualifying primes of norm <= X: odd, split,
    admitting a totally positive generator = 1 mod 8.  One record per prime
    ideal; conjugate primes carry identical values."""
    _require_quadratic(ctx)
    d = ctx.disc_field
    for p in sieve_primes(X):
        if p == 2 or d % p == 0:
            continue
        if legendre(d % p, p) != 1:
            continue
        for prime in split_prime(ctx, p):
            pi = qualifying_generator(ctx, dom, prime)
            if pi is None:
                continue
            conj = galois_prime(ctx, prime, 1)
            direct = legendre(eval_coords_mod_p(pi.coords, conj.r, p), p)
            formula = spin_involution_formula(ctx, pi)
            yield QuadSpinRecord(p, prime, pi, pi.trace() // 2, direct, formula)


def involution_spin_sum(ctx, dom: FundamentalDomain, X: int) -> dict:
    """Sum and count of involution spins over qualifying primes of norm <= X,
    plus the exact vanishing of the full residue sum."""
    total = 0
    count = 0
    disagreements = 0
    for rec in quad_spin_records(ctx, dom, X):
        total += rec.spin_direct
        count += 1
        if not rec.agree:
            disagreements += 1
    return {
        "sum": total,
        "count": count,
        "disagreements": disagreements,
        "complete_sum": eq_10_11_sum(ctx),
    }
