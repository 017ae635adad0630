"""Unit-group sign combinatorics and the fundamental domain of the totally
positive unit action.

The domain used everywhere is the trace-minimal cell: a totally positive x
lies inside iff T(u*x) > T(x) for every nontrivial totally positive unit u,
and finitely many units (the small units, all embeddings below the cutoff C)
suffice to decide this.  All comparisons are exact integer comparisons of
trace bilinear forms.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import log

from .errors import NotTotallyPositive, SearchBoundExceeded, SignSystemSingular
from .fields import FieldElement
from .lattice import hnf_det
from .roots import interval_eval, interval_mul


# ---------------------------------------------------------------------------
# sign-space linear algebra over F2


def _solve_f2(rows: list[tuple[int, ...]], target: tuple[int, ...]):
    """Solve x^T * rows = target over F2; returns x or None."""
    m, n = len(rows), len(target)
    aug = [list(rows[i]) + [1 if j == i else 0 for j in range(m)] for i in range(m)]
    # eliminate to row echelon over F2, tracking combinations
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if aug[i][c] & 1), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        for i in range(m):
            if i != r and aug[i][c] & 1:
                aug[i] = [(a + b) & 1 for a, b in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
    x = [0] * m
    t = list(target)
    for row, col in pivots:
        if t[col] & 1:
            for j in range(n):
                t[j] = (t[j] + aug[row][j]) & 1
            for j in range(m):
                x[j] = (x[j] + aug[row][n + j]) & 1
    if any(t):
        return None
    return tuple(x)


def sign_to_f2(signs: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(1 if s < 0 else 0 for s in signs)


@dataclass(frozen=True)
class UnitGroupData:
    generators: tuple
    sign_matrix: tuple
    mod8_square_image: frozenset


def unit_group_data(ctx) -> UnitGroupData:
    gens = ctx.unit_generators
    signs = tuple(sign_to_f2(ctx.sign_vector(u)) for u in gens)
    return UnitGroupData(gens, signs, unit_square_image(ctx, 8))


def unit_square_image(ctx, modulus: int) -> frozenset:
    """The subgroup of (O/modulus)^x generated by the squares of the unit
    generators, as a set of coordinate tuples mod modulus."""
    gens = []
    for u in ctx.unit_generators:
        g2 = u * u
        gens.append(ctx.coords_mod(g2, modulus))
    seen = {ctx.coords_mod(ctx.one, modulus)}
    frontier = list(seen)
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = tuple(c % modulus for c in ctx.mul_coords(cur, g))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return frozenset(seen)


def make_totally_positive(ctx, e: FieldElement) -> FieldElement:
    """Multiply by a unit (solved in sign space over F2) so that every real
    embedding becomes positive.  Returns e unchanged if already totally
    positive."""
    if e.is_zero():
        raise ValueError("make_totally_positive of zero")
    target = sign_to_f2(ctx.sign_vector(e))
    if not any(target):
        return e
    rows = [sign_to_f2(ctx.sign_vector(u)) for u in ctx.unit_generators]
    x = _solve_f2(rows, target)
    if x is None:
        raise SignSystemSingular("unit sign vectors do not span the sign space")
    out = e
    for xi, u in zip(x, ctx.unit_generators):
        if xi:
            out = out * u
    return out


def verify_unit_plus_square(ctx) -> dict:
    """Check the hypotheses making every totally positive unit a square:
    a mixed-sign generator plus a surjective sign map on <-1, generators>."""
    n = ctx.degree
    mixed = False
    rows = []
    for u in ctx.unit_generators:
        sv = ctx.sign_vector(u)
        rows.append(sign_to_f2(sv))
        if 1 in sv and -1 in sv:
            mixed = True
    # rank over F2
    mat = [list(r) for r in rows]
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, len(mat)) if mat[i][c] & 1), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][c] & 1:
                mat[i] = [(a + b) & 1 for a, b in zip(mat[i], mat[rank])]
        rank += 1
    two_primitive = n in (3, 5)  # 2 is a primitive root mod 3 and mod 5
    report = {
        "degree_odd_prime_with_2_primitive_root": two_primitive,
        "mixed_sign_generator": mixed,
        "sign_map_surjective": rank == n,
    }
    report["passed"] = all(report.values())
    return report


# ---------------------------------------------------------------------------
# contracting unit and the domain


def _positive_generators(ctx):
    """Unit generators made totally positive-free: drop -1, keep the rest."""
    out = []
    for u in ctx.unit_generators:
        if u == ctx.coerce(-1):
            continue
        out.append(u)
    return out


def _abs_log_embeddings(ctx, e, bits=96):
    """log |e^(k)| as floats (search guidance only)."""
    ivs = ctx.interval_embeddings(e, bits)
    vals = []
    for lo, hi in ivs:
        mid = abs(float(lo + hi)) / 2
        if mid == 0:
            raise ArithmeticError("embedding enclosure straddles zero")
        vals.append(log(mid))
    return vals


def _solve_real(mat, rhs):
    n = len(rhs)
    a = [list(row) + [rhs[i]] for i, row in enumerate(mat)]
    for c in range(n):
        piv = max(range(c, n), key=lambda r: abs(a[r][c]))
        if abs(a[piv][c]) < 1e-14:
            raise ArithmeticError("singular log-embedding matrix")
        a[c], a[piv] = a[piv], a[c]
        d = a[c][c]
        a[c] = [x / d for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[r][n] for r in range(n)]


def _count_small_embeddings(ctx, u) -> int:
    """Number of embeddings with u <= 1/2, decided exactly."""
    one_minus = ctx.coerce(1) - u * 2
    return sum(1 for s in ctx.sign_vector(one_minus) if s > 0)


def find_contracting_unit(ctx, max_scale: int = 40) -> FieldElement:
    """A totally positive unit (a square) with all but one embedding <= 1/2,
    chosen with the smallest peak embedding the search can see (small peaks
    shrink every domain constant downstream).

    Candidate exponent vectors come from scalings of the real solution of
    the log-embedding system plus a small surrounding box; every candidate
    is verified with exact sign tests."""
    gens = _positive_generators(ctx)
    r = ctx.degree - 1
    if len(gens) < r:
        raise SearchBoundExceeded("not enough multiplicative generators")
    gens = gens[:r]
    logs = [_abs_log_embeddings(ctx, g) for g in gens]
    mat = [[logs[i][k] for i in range(r)] for k in range(r)]
    base = _solve_real(mat, [-1.0] * r)

    candidates: list[tuple[int, ...]] = []
    seen = set()
    for t in range(1, max_scale + 1):
        center = [t * x for x in base]
        offsets = range(-1, 2) if r <= 3 else (0,)
        from itertools import product as iproduct

        for off in iproduct(offsets, repeat=r):
            exps = tuple(round(c) + o for c, o in zip(center, off))
            if exps not in seen and any(exps):
                seen.add(exps)
                candidates.append(exps)

    best = None
    best_peak = None
    for exps in candidates:
        # float screen: all small logs <= log(1/2), then exact verification
        lv = [2 * sum(a * logs[i][k] for i, a in enumerate(exps)) for k in range(ctx.degree)]
        if sum(1 for v in lv if v <= -0.6932) < ctx.degree - 1:
            continue
        peak = max(lv)
        if best_peak is not None and peak >= best_peak - 1e-9:
            continue
        v = ctx.one
        for g, a in zip(gens, exps):
            v = v * (g**a if a >= 0 else g.inverse() ** (-a))
        u = v * v  # square of a unit: totally positive by construction
        if u == ctx.one:
            continue
        if _count_small_embeddings(ctx, u) == ctx.degree - 1:
            best, best_peak = u, peak
    if best is None:
        raise SearchBoundExceeded("no contracting unit within the scale budget")
    return best


@dataclass
class FundamentalDomain:
    ctx: object
    contracting_unit: FieldElement
    C: Fraction
    small_units: tuple
    trace_rows: tuple      # per small unit: integer vector w with T(u x) = w . x
    identity_row: tuple    # T(x) = identity_row . x
    conjugate_bound: Fraction  # certified upper bound on the contracting
                               # conjugates' largest embedding (used for boxes)
    moves: tuple = ()          # small units and their inverses, for descent
    move_rows: tuple = ()
    _census: dict = field(default_factory=dict, repr=False)


def _trace_row(ctx, u) -> tuple:
    n = ctx.degree
    T = ctx.trace_form
    uc = u.coords
    return tuple(sum(int(uc[j]) * T[j][i] for j in range(n)) for i in range(n))


def build_domain(ctx) -> FundamentalDomain:
    """Compute the cutoff C from the contracting unit's conjugate matrix and
    enumerate the complete finite set of small units."""
    n = ctx.degree
    u0 = find_contracting_unit(ctx)
    conjs = [u0.galois(k) for k in range(n)]
    bits = 96
    # locate the unique big embedding of each conjugate
    big_pos = {}
    for cu in conjs:
        signs = ctx.sign_vector(cu - 1)
        pos = [k for k, s in enumerate(signs) if s > 0]
        if len(pos) != 1:
            raise ArithmeticError("contracting conjugate without unique big embedding")
        big_pos[pos[0]] = cu
    if len(big_pos) != n:
        raise ArithmeticError("conjugates do not cover all embeddings")
    # certified upper bound for C = 1 + max (c_kk - 1)/(1 - c_kl)
    best = Fraction(0)
    diag_hi = Fraction(0)
    for k in range(n):
        ivs = ctx.interval_embeddings(big_pos[k], bits)
        ckk_hi = ivs[k][1]
        diag_hi = max(diag_hi, ckk_hi)
        for l in range(n):
            if l == k:
                continue
            ckl_hi = ivs[l][1]
            if ckl_hi >= 1:
                raise ArithmeticError("off-diagonal conjugate entry not < 1")
            best = max(best, (ckk_hi - 1) / (1 - ckl_hi))
    C = 1 + best
    small = _enumerate_small_units(ctx, C)
    rows = tuple(_trace_row(ctx, u) for u in small)
    ident = tuple(ctx._power_sums[:n])
    moves = tuple(small) + tuple(u.inverse() for u in small)
    move_rows = tuple(_trace_row(ctx, u) for u in moves)
    return FundamentalDomain(ctx, u0, C, tuple(small), rows, ident, diag_hi,
                             moves, move_rows)


def _enumerate_small_units(ctx, C: Fraction, enlarge: int = 0):
    """All totally positive units u != 1 with every embedding < C; the
    exponent box comes from the log-embedding lattice, candidates are
    verified exactly."""
    n = ctx.degree
    r = n - 1
    gens = _positive_generators(ctx)[:r]
    logs = [_abs_log_embeddings(ctx, g) for g in gens]
    logC = log(float(C))
    # |sum_i 2 m_i log g_i^(k)| <= r*logC on every embedding k; invert the
    # first r coordinates to bound the box (floats + slack; the enlargement
    # test in the suite guards completeness)
    mat = [[2 * logs[i][k] for i in range(r)] for k in range(r)]
    inv = _mat_inv_float(mat)
    bounds = []
    for i in range(r):
        bi = sum(abs(inv[i][k]) for k in range(r)) * (r * logC)
        bounds.append(int(bi * 1.5) + 2 + enlarge)
    out = []

    def rec(i, acc):
        if i == len(gens):
            u = acc * acc
            if u == ctx.one:
                return
            diff = ctx.coerce(C) - u
            if all(s > 0 for s in ctx.sign_vector(diff)):
                out.append(u)
            return
        g = gens[i]
        for m in range(-bounds[i], bounds[i] + 1):
            rec(i + 1, acc * (g**m if m >= 0 else g.inverse() ** (-m)))

    rec(0, ctx.one)
    uniq = {}
    for u in out:
        uniq[u.coords] = u
    return sorted(uniq.values(), key=lambda u: u.coords)


def _mat_inv_float(mat):
    n = len(mat)
    a = [list(row) + [1.0 if j == i else 0.0 for j in range(n)] for i, row in enumerate(mat)]
    for c in range(n):
        piv = max(range(c, n), key=lambda rr: abs(a[rr][c]))
        a[c], a[piv] = a[piv], a[c]
        d = a[c][c]
        a[c] = [x / d for x in a[c]]
        for rr in range(n):
            if rr != c and a[rr][c]:
                f = a[rr][c]
                a[rr] = [x - f * y for x, y in zip(a[rr], a[c])]
    return [row[n:] for row in a]


# ---------------------------------------------------------------------------
# membership, reduction, counting


def _dot(row, coords):
    return sum(r * int(c) for r, c in zip(row, coords))


def domain_contains(dom: FundamentalDomain, e: FieldElement) -> str:
    """Classify a totally positive element: 'inside' / 'boundary' /
    'outside' of the trace-minimal cell, by exact trace comparisons."""
    ctx = dom.ctx
    if not ctx.is_totally_positive(e):
        raise NotTotallyPositive("domain membership needs a totally positive element")
    t = _dot(dom.identity_row, e.coords)
    onb = False
    for row in dom.trace_rows:
        v = _dot(row, e.coords)
        if v < t:
            return "outside"
        if v == t:
            onb = True
    return "boundary" if onb else "inside"


def reduce_to_domain(dom: FundamentalDomain, e: FieldElement) -> FieldElement:
    """The canonical representative of e under the totally positive unit
    action: minimal trace, then lexicographically smallest coordinates among
    equal-trace boundary mates."""
    ctx = dom.ctx
    if e.is_zero():
        raise NotTotallyPositive("cannot reduce zero")
    if not ctx.is_totally_positive(e):
        raise NotTotallyPositive("reduce_to_domain needs a totally positive element")
    moves, move_rows = dom.moves, dom.move_rows
    cur = e
    t = _dot(dom.identity_row, cur.coords)
    improved = True
    while improved:
        improved = False
        for u, row in zip(moves, move_rows):
            v = _dot(row, cur.coords)
            if v < t:
                cur = u * cur
                t = v
                improved = True
                break
    # equal-trace component on the boundary: pick the lex-smallest mate
    component = {cur.coords: cur}
    frontier = [cur]
    while frontier:
        x = frontier.pop()
        for u, row in zip(moves, move_rows):
            if _dot(row, x.coords) == t:
                y = u * x
                if y.coords not in component:
                    component[y.coords] = y
                    frontier.append(y)
    best = min(component)
    return component[best]


def canonical_generator(dom: FundamentalDomain, g: FieldElement) -> FieldElement:
    """Totally positive, trace-minimal, lex-tie-broken associate of g."""
    return reduce_to_domain(dom, make_totally_positive(dom.ctx, g))


def _embedding_upper_bound(dom, X: int) -> Fraction:
    """Certified bound: a closed-domain element of norm <= X satisfies
    e^(k)^n <= X (2U)^(n-1), with U the contracting conjugates' peak."""
    n = dom.ctx.degree
    twoU = 2 * dom.conjugate_bound
    target = X * twoU ** (n - 1)
    guess = Fraction(int(float(target) ** (1.0 / n) * 1.01) + 1)
    while guess**n < target:
        guess = guess * Fraction(105, 100)
    return guess


def domain_elements(dom: FundamentalDomain, X: int) -> list[tuple[int, ...]]:
    """Coordinates of every nonzero integral element of the closed domain
    with norm <= X.  Cached per domain."""
    if X in dom._census:
        return dom._census[X]
    ctx = dom.ctx
    n = ctx.degree
    Ymax = _embedding_upper_bound(dom, X)
    ivs = ctx.embedding_intervals(96)
    mids = [float(lo + hi) / 2 for lo, hi in ivs]
    # coordinate box: a = V^{-1} y with 0 < y_k <= Ymax
    V = [[mids[k] ** i for i in range(n)] for k in range(n)]
    Vinv = _mat_inv_float(V)
    Yf = float(Ymax)
    bounds = [int(sum(abs(Vinv[i][k]) for k in range(n)) * Yf * 1.05) + 2 for i in range(n)]
    rows_delta = [tuple(w - t for w, t in zip(row, dom.identity_row)) for row in dom.trace_rows]
    out: list[tuple[int, ...]] = []
    coords = [0] * n

    def exact_ceil_div(num, den):
        return -((-num) // den)  # den > 0

    def is_tp(c):
        # cheap certified check first, exact fallback on the boundary zone
        enc = [interval_eval([Fraction(x) for x in c], iv) for iv in ivs]
        if all(lo > 0 for lo, _ in enc):
            return True
        if any(hi < 0 for _, hi in enc):
            return False
        return not ctx.element(tuple(c)).is_zero() and ctx.is_totally_positive(
            ctx.element(tuple(c))
        )

    logX = float(X) * 1.0001 + 1.0

    def scan_a0():
        # float prefilter: at the first totally positive a0 the norm is
        # minimal over the ray; skip the pair when even that exceeds X
        tails = [sum(coords[j] * mids[k] ** j for j in range(1, n)) for k in range(n)]
        est = max(-t for t in tails)
        a0f = int(est) + 1
        prod = 1.0
        for t in tails:
            prod *= max(a0f + t, 0.25)
        if prod > 4.0 * logX:
            return
        # exact lower bounds: every closed-domain inequality has a positive
        # a0 coefficient T(u) - n, so each yields a0 >= ceil(-s / c0)
        lo = int(est) - 2
        for dr in rows_delta:
            s = sum(dr[j] * coords[j] for j in range(1, n))
            b = exact_ceil_div(-s, dr[0])
            if b > lo:
                lo = b
        a0 = lo
        for _ in range(8):
            coords[0] = a0
            if any(coords) and is_tp(coords):
                break
            a0 += 1
        else:
            return
        # norm is monotone in a0 on the totally positive ray
        coords[0] = a0
        if ctx.norm_coords(tuple(coords)) > X:
            return
        step = 1
        while True:
            coords[0] = a0 + step
            if ctx.norm_coords(tuple(coords)) > X:
                break
            step *= 2
        lo2, hi2 = a0, a0 + step
        while hi2 - lo2 > 1:
            mid = (lo2 + hi2) // 2
            coords[0] = mid
            if ctx.norm_coords(tuple(coords)) <= X:
                lo2 = mid
            else:
                hi2 = mid
        for v in range(a0, lo2 + 1):
            coords[0] = v
            out.append(tuple(coords))
        coords[0] = 0

    def rec(i):
        if i == 0:
            scan_a0()
            return
        for v in range(-bounds[i], bounds[i] + 1):
            coords[i] = v
            rec(i - 1)
        coords[i] = 0

    rec(n - 1)
    out.sort()
    dom._census[X] = out
    return out


def _iroot_upper(v: int, n: int) -> Fraction:
    r = Fraction(int(v ** (1.0 / n) * 1.001) + 1)
    return r


def domain_class_counts(dom: FundamentalDomain, X: int, ideal) -> dict:
    """Histogram of the closed-domain elements of norm <= X over the residue
    classes mod the ideal.  One pass per (X, ideal); cached."""
    from .ideals import ideal_lattice

    key = (X, ideal.factors)
    cache = dom._census.setdefault("classes", {})
    if key in cache:
        return cache[key]
    ctx = dom.ctx
    H = ideal_lattice(ctx, ideal)
    hist: dict = {}
    for coords in domain_elements(dom, X):
        r = _residue_canonical(H, list(coords))
        hist[r] = hist.get(r, 0) + 1
    cache[key] = hist
    return hist


def count_in_domain(dom: FundamentalDomain, X: int, ideal, nu) -> int:
    """Exact count of integral elements in the closed domain, norm <= X,
    congruent to nu mod the ideal."""
    from .ideals import ideal_lattice

    ctx = dom.ctx
    H = ideal_lattice(ctx, ideal)
    target = _residue_canonical(H, [int(c) for c in ctx.coerce(nu).coords])
    return domain_class_counts(dom, X, ideal).get(target, 0)


def _residue_canonical(H, v) -> tuple:
    w = list(v)
    n = len(H)
    for i in range(n):
        q = w[i] // H[i][i]
        if q:
            for j in range(i, n):
                w[j] -= q * H[i][j]
    return tuple(w)
