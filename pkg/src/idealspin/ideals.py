"""Prime splitting, ideal factorizations, principal generators, and the
arithmetic functions Lambda / mu / tau on ideals.

Ideals are always handled in factored form; an integral-basis (HNF)
representation exists only internally, to drive the generator search and
residue enumeration.  Splitting data is only meaningful where the power
basis is the maximal order, which the supported experiments enforce.
"""

import weakref
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .arith import factorint, poly_roots_modp, sieve_primes
from .errors import GeneratorNotFound
from .lattice import gram, hnf, hnf_contains, hnf_det, lattice_product, lll_reduce, short_vectors
from .logcomb import LogCombination


@dataclass(frozen=True)
class PrimeIdealData:
    """One prime ideal: (p, alpha - r) when f = 1, or the inert (p)."""

    p: int
    f: int
    e: int
    r: int | None
    position: int

    @property
    def norm(self) -> int:
        return self.p**self.f

    @property
    def sort_key(self):
        return (self.norm, self.p, self.position)

    def __repr__(self):
        if self.f == 1 and self.e == 1:
            return f"P({self.p},r={self.r})"
        if self.e > 1:
            return f"P({self.p},ram,e={self.e},r={self.r})"
        return f"P({self.p},inert,f={self.f})"


@dataclass(frozen=True)
class IdealFactorization:
    factors: tuple[tuple[PrimeIdealData, int], ...]

    @property
    def norm(self) -> int:
        n = 1
        for pr, k in self.factors:
            n *= pr.norm**k
        return n

    def is_unit_ideal(self) -> bool:
        return not self.factors

    def is_odd(self) -> bool:
        return all(pr.p != 2 for pr, _ in self.factors)

    def is_squarefree(self) -> bool:
        return all(k == 1 for _, k in self.factors)

    def __mul__(self, other: "IdealFactorization") -> "IdealFactorization":
        acc: dict[PrimeIdealData, int] = {}
        for pr, k in self.factors:
            acc[pr] = acc.get(pr, 0) + k
        for pr, k in other.factors:
            acc[pr] = acc.get(pr, 0) + k
        return make_ideal(acc.items())

    def coprime_to(self, other: "IdealFactorization") -> bool:
        mine = {pr for pr, _ in self.factors}
        return all(pr not in mine for pr, _ in other.factors)

    def __repr__(self):
        if not self.factors:
            return "(1)"
        return "*".join(
            f"{pr!r}" + (f"^{k}" if k > 1 else "") for pr, k in self.factors
        )


def make_ideal(items) -> IdealFactorization:
    factors = tuple(
        sorted(((pr, k) for pr, k in items if k > 0), key=lambda t: (t[0].p, t[0].position))
    )
    return IdealFactorization(factors)


UNIT_IDEAL = IdealFactorization(())


def prime_power_ideal(prime: PrimeIdealData, k: int = 1) -> IdealFactorization:
    return make_ideal([(prime, k)])


# ---------------------------------------------------------------------------

_split_caches: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def split_prime(ctx, p: int) -> list[PrimeIdealData]:
    """Factor p in the field: split / inert / totally ramified.

    Valid at primes not dividing the index of the power-basis order; with
    maximal_order_verified this means every prime.
    """
    cache = _split_caches.setdefault(ctx, {})
    got = cache.get(p)
    if got is not None:
        return got
    n = ctx.degree
    roots = poly_roots_modp(list(ctx.poly), p)
    if len(roots) == n:
        out = [PrimeIdealData(p, 1, 1, r, i) for i, r in enumerate(sorted(roots))]
    elif not roots:
        out = [PrimeIdealData(p, n, 1, None, 0)]
    elif len(roots) == 1 and ctx.disc_field % p == 0:
        out = [PrimeIdealData(p, 1, n, roots[0], 0)]
    elif ctx.degree == 2 and len(roots) == 1:
        out = [PrimeIdealData(p, 1, 2, roots[0], 0)]
    else:
        raise ValueError(
            f"unexpected factorization pattern of p={p}; index divisor?"
        )
    cache[p] = out
    return out


def galois_prime(ctx, prime: PrimeIdealData, k: int) -> PrimeIdealData:
    """sigma^k applied to a prime ideal."""
    k %= ctx.degree
    if k == 0 or prime.f > 1 or prime.e > 1:
        return prime
    p = prime.p
    sk = ctx.automorphisms[k][1]  # coords of sigma^k(alpha)
    # sigma(P_t) = P_r with s_k(t) = r mod p: find t with s_k(t) = prime.r
    for cand in split_prime(ctx, p):
        if eval_coords_mod_p(sk, cand.r, p) == prime.r % p:
            return cand
    raise ArithmeticError("Galois action did not permute the roots")  # pragma: no cover


def eval_coords_mod_p(coords, r: int, p: int) -> int:
    """Evaluate a coordinate vector (rational entries allowed) at alpha = r
    modulo p."""
    acc = 0
    for c in reversed(coords):
        if isinstance(c, Fraction):
            den = c.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            c = c.numerator * pow(den, -1, p)
        acc = (acc * r + c) % p
    return acc


def residue_of(ctx, element, prime: PrimeIdealData) -> int:
    """Residue of an element at a degree-one prime, as an integer mod p."""
    if prime.f != 1:
        raise ValueError("residue_of requires a degree-one prime")
    return eval_coords_mod_p(element.coords, prime.r, prime.p)


def enumerate_prime_ideals(ctx, X: int, degree_one_only: bool = False):
    """All prime ideals of norm <= X, ascending by (norm, p, position)."""
    if X < 2:
        return []
    out = []
    for p in sieve_primes(X):
        for pr in split_prime(ctx, p):
            if pr.norm <= X and (not degree_one_only or pr.f == 1):
                out.append(pr)
    out.sort(key=lambda pr: pr.sort_key)
    return out


_ideal_caches: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def enumerate_ideals(ctx, X: int) -> list[IdealFactorization]:
    """All integral ideals of norm <= X, ascending by norm (then by the
    factorization key, so the order is total and deterministic)."""
    cache = _ideal_caches.setdefault(ctx, {})
    best = cache.get("X", 0)
    if X <= best:
        return [I for I in cache["ideals"] if I.norm <= X]
    primes = enumerate_prime_ideals(ctx, X)
    ideals: list[IdealFactorization] = [UNIT_IDEAL]
    for pr in primes:
        nrm = pr.norm
        extra = []
        for I in ideals:
            acc = I.norm * nrm
            k = 1
            while acc <= X:
                extra.append(I * prime_power_ideal(pr, k))
                k += 1
                acc *= nrm
        ideals.extend(extra)
    ideals.sort(key=_ideal_sort_key)
    cache["X"] = X
    cache["ideals"] = ideals
    return ideals


def _ideal_sort_key(I: IdealFactorization):
    return (I.norm, tuple((pr.p, pr.position, k) for pr, k in I.factors))


# ---------------------------------------------------------------------------
# HNF lattices of ideals and generators


def prime_lattice_rows(ctx, prime: PrimeIdealData):
    n = ctx.degree
    p = prime.p
    if prime.f == n:
        return [[p if i == j else 0 for j in range(n)] for i in range(n)]
    r = prime.r
    rows = [[p] + [0] * (n - 1)]
    for i in range(1, n):
        row = [0] * n
        row[i] = 1
        row[0] = -pow(r, i, p) % p
        rows.append(row)
    return rows


def ideal_lattice(ctx, ideal: IdealFactorization):
    """Upper-triangular HNF basis of the ideal as a Z-lattice in the power
    basis coordinates."""
    n = ctx.degree
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for pr, k in ideal.factors:
        plat = prime_lattice_rows(ctx, pr)
        for _ in range(k):
            rows = lattice_product(ctx, rows, plat)
    if hnf_det(rows) != ideal.norm:
        raise ArithmeticError("ideal lattice determinant != ideal norm")  # pragma: no cover
    return rows


def element_in_ideal(ctx, element, ideal: IdealFactorization) -> bool:
    if not element.is_integral():
        return False
    return hnf_contains(ideal_lattice(ctx, ideal), [int(c) for c in element.coords])


def element_in_prime(ctx, element, prime: PrimeIdealData) -> bool:
    p = prime.p
    if prime.f == 1:
        return eval_coords_mod_p(element.coords, prime.r, p) == 0
    return all(int(c) % p == 0 for c in element.coords)


def find_generator(ctx, ideal: IdealFactorization, kappa_start: int = 4, kappa_max: int = 64):
    """A generator of a principal ideal, by LLL plus bounded short-vector
    enumeration under the trace form.  Deterministic: the lexicographically
    first qualifying short vector is returned.

    Raises GeneratorNotFound when the search bound is exhausted (non
    principal ideal, or bound too small)."""
    n = ctx.degree
    target = ideal.norm
    if ideal.is_unit_ideal():
        return ctx.one
    rows = ideal_lattice(ctx, ideal)
    red = lll_reduce(ctx, rows)
    # Minkowski-flavored bound: Q(g) ~ n * norm^(2/n) for a balanced generator
    base = n * _iroot_ceil(target**2, n)
    kappa = kappa_start
    while kappa <= kappa_max:
        for vec in short_vectors(ctx, red, kappa * base):
            if abs(ctx.norm_coords(vec)) == target:
                return ctx.element(vec)
        kappa *= 2
    raise GeneratorNotFound(f"no generator of {ideal!r} within bound {kappa_max}")


def _iroot_ceil(v: int, n: int) -> int:
    """Smallest integer >= v^(1/n)."""
    if v <= 1:
        return v
    r = int(round(v ** (1.0 / n)))
    while r**n < v:
        r += 1
    while (r - 1) ** n >= v:
        r -= 1
    return r


def factor_element(ctx, element) -> IdealFactorization:
    """Factor the principal ideal generated by a nonzero integral element."""
    if element.is_zero():
        raise ValueError("cannot factor the zero ideal")
    if not element.is_integral():
        raise ValueError("factor_element requires an integral element")
    nrm = abs(element.norm())
    acc: dict[PrimeIdealData, int] = {}
    for p, vp in factorint(nrm).items():
        primes = split_prime(ctx, p)
        found = 0
        for pr in primes:
            if not element_in_prime(ctx, element, pr):
                continue
            # valuation via membership in increasing prime powers
            k = 1
            lat = prime_lattice_rows(ctx, pr)
            cur = lat
            coords = [int(c) for c in element.coords]
            while True:
                cur = lattice_product(ctx, cur, lat)
                if k * pr.f >= vp or not hnf_contains(cur, coords):
                    break
                k += 1
            acc[pr] = k
            found += k * pr.f
        if found != vp:
            raise ArithmeticError(
                f"valuations above {p} do not account for the norm"
            )  # pragma: no cover
    return make_ideal(acc.items())


def elements_coprime(ctx, a, b) -> bool:
    """Do the principal ideals (a), (b) share no prime factor?"""
    g = gcd(abs(a.norm()), abs(b.norm()))
    if g == 1:
        return True
    for p in factorint(g):
        for pr in split_prime(ctx, p):
            if element_in_prime(ctx, a, pr) and element_in_prime(ctx, b, pr):
                return False
    return True


def apply_galois_ideal(ctx, ideal: IdealFactorization, k: int) -> IdealFactorization:
    return make_ideal((galois_prime(ctx, pr, k), e) for pr, e in ideal.factors)


# ---------------------------------------------------------------------------
# arithmetic functions


def mangoldt(ideal: IdealFactorization) -> LogCombination:
    """Von Mangoldt: f*log p for a prime power P^l, zero otherwise, carried
    as an exact formal combination of {log p}."""
    if len(ideal.factors) != 1:
        return LogCombination()
    pr, _ = ideal.factors[0]
    return LogCombination({pr.p: pr.f})


def moebius(ideal: IdealFactorization) -> int:
    if not ideal.is_squarefree():
        return 0
    return -1 if len(ideal.factors) % 2 else 1


def tau(ideal: IdealFactorization) -> int:
    t = 1
    for _, k in ideal.factors:
        t *= k + 1
    return t


def log_norm(ideal: IdealFactorization) -> LogCombination:
    acc: dict[int, int] = {}
    for pr, k in ideal.factors:
        acc[pr.p] = acc.get(pr.p, 0) + pr.f * k
    return LogCombination(acc)
