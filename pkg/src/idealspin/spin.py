"""The spin of odd principal ideals: canonical totally positive generators,
per-prime spin records, congruence-filtered prime streams, and the
structural relations (conjugation, twisted multiplicativity).

The canonical generator of an ideal is fixed once: totally positive,
trace-minimal in the closed fundamental domain, lexicographic tie-break.
Congruence filters never move the generator; they search the finite image
of unit squares modulo the filter modulus.
"""

from dataclasses import dataclass
from math import lcm

from .arith import legendre, sieve_primes
from .errors import EvenIdeal, GeneratorNotFound, NotCoprime
from .fields import FieldElement
from .ideals import (
    IdealFactorization,
    PrimeIdealData,
    apply_galois_ideal,
    eval_coords_mod_p,
    find_generator,
    galois_prime,
    prime_power_ideal,
    split_prime,
)
from .symbols import mu_and_mu2, residue_symbol
from .units import FundamentalDomain, canonical_generator, unit_square_image


@dataclass(frozen=True)
class SpinRecord:
    prime: PrimeIdealData
    generator: FieldElement
    spins: tuple[int, ...]          # index k-1 holds spin(sigma^k)
    gen_mod8: tuple[int, ...]
    gen_mod_M: tuple[int, ...] | None = None


def canonical_ideal_generator(ctx, dom: FundamentalDomain, ideal) -> FieldElement:
    if isinstance(ideal, PrimeIdealData):
        ideal = prime_power_ideal(ideal)
    g = find_generator(ctx, ideal)
    return canonical_generator(dom, g)


def spin(ctx, dom: FundamentalDomain, ideal, k: int) -> int:
    """spin(sigma^k, a) = (alpha / a^{an sigma^k}) for an odd principal ideal."""
    if isinstance(ideal, PrimeIdealData):
        ideal = prime_power_ideal(ideal)
    if not ideal.is_odd():
        raise EvenIdeal("spin is defined for odd ideals")
    if not 1 <= k <= ctx.degree - 1:
        raise ValueError("automorphism power out of range")
    g = canonical_ideal_generator(ctx, dom, ideal)
    return residue_symbol(ctx, g, apply_galois_ideal(ctx, ideal, k))


# ---------------------------------------------------------------------------
# inverse of a residue modulo a rational modulus


def invert_mod(ctx, coords, modulus: int) -> tuple[int, ...]:
    """Inverse of an element in O/(modulus), via the adjugate of its
    multiplication matrix; requires gcd(N(element), modulus) = 1."""
    n = ctx.degree
    # multiplication matrix M[i][j] = (g * alpha^j)_i mod modulus
    cols = []
    basis = [tuple(1 if t == j else 0 for t in range(n)) for j in range(n)]
    for b in basis:
        cols.append([int(c) % modulus for c in ctx.mul_coords(coords, b)])
    M = [[cols[j][i] % modulus for j in range(n)] for i in range(n)]
    det, adj = _det_adjugate(M)
    dinv = pow(det % modulus, -1, modulus)
    # inverse coords = adj * e0 * det^{-1}
    return tuple(adj[i][0] * dinv % modulus for i in range(n))


def _det_adjugate(M):
    n = len(M)
    if n == 1:
        return M[0][0], [[1]]
    if n == 2:
        det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
        return det, [[M[1][1], -M[0][1]], [-M[1][0], M[0][0]]]

    def minor(i, j):
        sub = [[M[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
        return _det_plain(sub)

    cof = [[(-1) ** (i + j) * minor(i, j) for j in range(n)] for i in range(n)]
    det = sum(M[0][j] * cof[0][j] for j in range(n))
    adj = [[cof[j][i] for j in range(n)] for i in range(n)]
    return det, adj


def _det_plain(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    tot = 0
    for j in range(n):
        sub = [row[:j] + row[j + 1 :] for row in M[1:]]
        tot += (-1) ** j * M[0][j] * _det_plain(sub)
    return tot


# ---------------------------------------------------------------------------
# spin records and streams


def spin_record(ctx, dom: FundamentalDomain, prime: PrimeIdealData,
                mod_M: int | None = None) -> SpinRecord:
    """Canonical generator and all n-1 spin values for one prime ideal.
    Even primes carry zero spins (the symbol has no +-1 value there)."""
    n = ctx.degree
    p = prime.p
    if prime.f == n:
        g = canonical_generator(dom, ctx.coerce(p))
    else:
        g = canonical_ideal_generator(ctx, dom, prime)
    if p == 2:
        spins = (0,) * (n - 1)
    elif prime.f > 1 or prime.e > 1:
        # sigma fixes the prime; the generator sits in it, so every spin is 0
        spins = (0,) * (n - 1)
    else:
        vals = []
        for k in range(1, n):
            tgt = galois_prime(ctx, prime, k)
            vals.append(legendre(eval_coords_mod_p(g.coords, tgt.r, p), p))
        spins = tuple(vals)
    return SpinRecord(
        prime,
        g,
        spins,
        ctx.coords_mod(g, 8),
        ctx.coords_mod(g, mod_M) if mod_M else None,
    )


class CongruenceFilter:
    """Tests whether some unit-square multiple of a generator lies in fixed
    residue classes: one joint search over the image of unit squares modulo
    the lcm of all filter moduli."""

    def __init__(self, ctx, conditions: list[tuple[int, tuple[int, ...]]]):
        self.ctx = ctx
        self.conditions = conditions
        self.joint = lcm(*(m for m, _ in conditions)) if conditions else 1
        image = unit_square_image(ctx, self.joint) if conditions else frozenset()
        self.image_keys = {
            tuple(tuple(c % m for c in s) for m, _ in conditions) for s in image
        }

    def admits(self, g: FieldElement) -> bool:
        if not self.conditions:
            return True
        key = []
        for m, target in self.conditions:
            ginv = invert_mod(self.ctx, g.coords, m)
            key.append(tuple(c % m for c in self.ctx.mul_coords(target, ginv)))
        return tuple(key) in self.image_keys


def spin_prime_stream(ctx, dom: FundamentalDomain, X: int,
                      degree_one_only: bool = False,
                      mod8_class: tuple[int, ...] | None = None,
                      mod_M: tuple[int, tuple[int, ...]] | None = None,
                      skip_even: bool = False):
    """SpinRecords for prime ideals of norm <= X, ascending by
    (norm, p, position).  Yields ('record', SpinRecord) and, for primes whose
    generator search failed, ('generator_not_found', PrimeIdealData); the
    caller decides how to account for those."""
    conditions = []
    if mod8_class is not None:
        conditions.append((8, tuple(mod8_class)))
    if mod_M is not None:
        M, mu = mod_M
        conditions.append((M, tuple(mu)))
    filt = CongruenceFilter(ctx, conditions)
    for p in sieve_primes(X):
        for prime in split_prime(ctx, p):
            if prime.norm > X:
                continue
            if degree_one_only and prime.f != 1:
                continue
            if skip_even and p == 2:
                continue
            try:
                rec = spin_record(ctx, dom, prime,
                                  mod_M=mod_M[0] if mod_M else None)
            except GeneratorNotFound:
                yield ("generator_not_found", prime)
                continue
            if conditions and p == 2:
                continue  # even primes cannot satisfy odd congruence filters
            if not filt.admits(rec.generator):
                continue
            yield ("record", rec)


def collect_spin_records(ctx, dom, X, **kw):
    """Materialize the stream: (records_sorted, failures)."""
    recs, fails = [], []
    for kind, item in spin_prime_stream(ctx, dom, X, **kw):
        if kind == "record":
            recs.append(item)
        else:
            fails.append(item)
    recs.sort(key=lambda r: r.prime.sort_key)
    return recs, fails


_PAR_STATE: dict = {}


def _par_init(payload):
    _PAR_STATE["payload"] = payload


def _par_block(block):
    ctx, dom, kw = _PAR_STATE["payload"]
    lo, hi = block
    recs, fails = [], []
    for p in sieve_primes(hi):
        if p < lo:
            continue
        for prime in split_prime(ctx, p):
            if not lo <= prime.norm <= hi:
                continue
            try:
                recs.append(spin_record(ctx, dom, prime, **kw))
            except GeneratorNotFound:
                fails.append(prime)
    return recs, fails


def parallel_spin_records(ctx, dom, X: int, workers: int = 1,
                          block_size: int = 100_000, **kw):
    """Unfiltered SpinRecords for all primes of norm <= X, block-parallel
    over norm ranges with an ascending deterministic merge; the output is
    identical for every worker count."""
    blocks = []
    lo = 1
    while lo <= X:
        hi = min(X, lo + block_size - 1)
        blocks.append((lo, hi))
        lo = hi + 1
    payload = (ctx, dom, kw)
    if workers <= 1 or len(blocks) <= 1:
        _par_init(payload)
        chunks = [_par_block(b) for b in blocks]
    else:
        import multiprocessing as mp

        mctx = mp.get_context("fork")
        with mctx.Pool(processes=workers, initializer=_par_init,
                       initargs=(payload,)) as pool:
            chunks = pool.map(_par_block, blocks)
    recs = [r for rs, _ in chunks for r in rs]
    fails = [f for _, fs in chunks for f in fs]
    if workers > 1:
        # rebind generators to the parent context (workers returned copies)
        recs = [
            SpinRecord(r.prime, FieldElement(ctx, r.generator.coords),
                       r.spins, r.gen_mod8, r.gen_mod_M)
            for r in recs
        ]
    recs.sort(key=lambda r: r.prime.sort_key)
    fails.sort(key=lambda f: f.sort_key)
    return recs, fails


# ---------------------------------------------------------------------------
# structural relations


def twisted_multiplicativity_check(ctx, dom: FundamentalDomain,
                                   A: IdealFactorization,
                                   B: IdealFactorization) -> bool:
    """Exact h=1 factorization rule:
    spin(AB) = mu(beta^-, alpha) (alpha / B' B^-) spin(A) spin(B)."""
    n = ctx.degree
    if not (A.is_odd() and B.is_odd()):
        raise EvenIdeal("twisted multiplicativity needs odd ideals")
    for k in range(n):
        if not A.coprime_to(apply_galois_ideal(ctx, B, k)):
            raise NotCoprime("ideals must be coprime to all conjugates of each other")
    alpha = canonical_ideal_generator(ctx, dom, A)
    beta = canonical_ideal_generator(ctx, dom, B)
    lhs = spin(ctx, dom, A * B, 1)
    beta_minus = beta.galois(n - 1)
    mu, _ = mu_and_mu2(ctx, beta_minus, alpha)
    cross = residue_symbol(
        ctx, alpha,
        apply_galois_ideal(ctx, B, 1) * apply_galois_ideal(ctx, B, n - 1),
    )
    rhs = mu * cross * spin(ctx, dom, A, 1) * spin(ctx, dom, B, 1)
    return lhs == rhs


def conjugation_relation_check(ctx, dom: FundamentalDomain,
                               prime: PrimeIdealData) -> bool:
    """spin(sigma) = spin(sigma^{-1}) mu_2(g, g^sigma); with g = 1 mod 4 the
    dyadic factor is +1 and the two spins agree."""
    n = ctx.degree
    rec = spin_record(ctx, dom, prime)
    first, last = rec.spins[0], rec.spins[n - 2]
    if prime.f > 1 or prime.e > 1 or prime.p == 2:
        return first == 0 and last == 0
    g = rec.generator
    _, m2 = mu_and_mu2(ctx, g, g.galois(1))
    ok = first == last * m2
    if all(c % 4 == (1 if i == 0 else 0) for i, c in enumerate(g.coords)):
        ok = ok and (first == last)
    return ok
