"""Rational-integer utilities: sieves, primality, factoring, Jacobi symbols,
and dense polynomial arithmetic over F_p.

Everything here is exact and deterministic (Pollard rho uses a fixed
increment schedule, not randomness).
"""

from math import gcd, isqrt

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (valid far beyond 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sieve_primes(limit: int) -> list[int]:
    """All rational primes <= limit, ascending."""
    if limit < 2:
        return []
    mark = bytearray([1]) * (limit + 1)
    mark[0] = mark[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if mark[p]:
            mark[p * p :: p] = bytearray(len(mark[p * p :: p]))
    return [i for i in range(2, limit + 1) if mark[i]]


def _pollard_rho(n: int) -> int:
    # Brent's cycle variant with deterministic c schedule.
    if n % 2 == 0:
        return 2
    for c in range(1, 1000):
        x = y = 2
        d = 1
        f = lambda v: (v * v + c) % n
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho failed on {n}")


def factorint(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {p: exponent}; factorint(1) == {}."""
    n = abs(n)
    if n <= 1:
        return {}
    out: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return dict(sorted(out.items()))


def squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(n).values())


def squarefull(n: int) -> bool:
    """Every prime factor appears at least squared (1 is squarefull)."""
    return all(e >= 2 for e in factorint(n).values())


def jacobi(a: int, n: int) -> int:
    """Classical Jacobi symbol (a/n) for odd n > 0."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi requires positive odd n")
    a %= n
    t = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def legendre(a: int, p: int) -> int:
    """Legendre symbol via Euler's criterion; p an odd prime."""
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


# ---------------------------------------------------------------------------
# Dense polynomials over F_p, coefficient lists low-degree-first.

def poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    """a*b reduced mod (f, p); f monic with leading coefficient 1 mod p."""
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return poly_modred(prod, f, p)


def poly_modred(a: list[int], f: list[int], p: int) -> list[int]:
    n = len(f) - 1
    a = [c % p for c in a]
    for d in range(len(a) - 1, n - 1, -1):
        c = a[d]
        if c:
            a[d] = 0
            for k in range(n):
                a[d - n + k] = (a[d - n + k] - c * f[k]) % p
    return poly_trim(a[: max(len(a), 1)])


def poly_powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = poly_modred(list(a), f, p)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f, p)
        base = poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def poly_gcd_modp(a: list[int], b: list[int], p: int) -> list[int]:
    """Monic gcd over F_p."""
    a = poly_trim([c % p for c in a])
    b = poly_trim([c % p for c in b])
    while b:
        a, b = b, _poly_rem(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        if c:
            off = len(a) - len(b)
            for i, bi in enumerate(b):
                a[off + i] = (a[off + i] - c * bi) % p
        a.pop()
        poly_trim(a)
    return a


def poly_roots_modp(f: list[int], p: int) -> list[int]:
    """All roots of f in F_p, ascending, with deterministic splitting."""
    f = poly_trim([c % p for c in f])
    if not f:
        raise ValueError("zero polynomial")
    if p < 60 or len(f) - 1 >= p:
        return [r for r in range(p) if _poly_eval_modp(f, r, p) == 0]
    # restrict to the product of linear factors: gcd(x^p - x, f)
    xp = poly_powmod([0, 1], p, f, p)
    xp_minus_x = list(xp) + [0] * (2 - len(xp))
    xp_minus_x[1] = (xp_minus_x[1] - 1) % p
    g = poly_gcd_modp(xp_minus_x, f, p)
    roots: list[int] = []
    _split_linear(g, p, roots)
    roots.sort()
    return roots


def _poly_eval_modp(f: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _split_linear(g: list[int], p: int, out: list[int]) -> None:
    # g is a squarefree product of distinct linear factors mod p.
    deg = len(g) - 1
    if deg <= 0:
        return
    if deg == 1:
        # monic x + c -> root -c; normalize first
        inv = pow(g[1], -1, p)
        out.append(-g[0] * inv % p)
        return
    if g[0] == 0:
        out.append(0)
        _split_linear(poly_trim([c for c in g[1:]]), p, out)
        return
    # deterministic shifts: gcd((x+c)^((p-1)/2) - 1, g) splits eventually
    for c in range(p):
        h = poly_powmod([c, 1], (p - 1) // 2, g, p)
        h = list(h) + [0] * (1 - len(h))
        h[0] = (h[0] - 1) % p
        d = poly_gcd_modp(h, g, p)
        if 0 < len(d) - 1 < deg:
            _split_linear(d, p, out)
            _split_linear(_poly_quot(g, d, p), p, out)
            return
    raise ArithmeticError("root splitting failed")


def _poly_quot(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b) and poly_trim(a):
        c = a[-1] * inv % p
        off = len(a) - len(b)
        q[off] = c
        for i, bi in enumerate(b):
            a[off + i] = (a[off + i] - c * bi) % p
        a.pop()
        poly_trim(a)
    return poly_trim(q)
