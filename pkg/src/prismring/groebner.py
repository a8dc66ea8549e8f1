"""Buchberger engine: reduced Groebner bases over QQ and GF(p).

Pair handling is fully deterministic: normal selection (smallest lcm in the
active order, ties by pair index) with Gebauer-Moeller elimination, which
implements Buchberger's product and chain criteria. Resource caps bound the
number of processed S-pairs and coefficient operations; exceeding one raises
:class:`GroebnerResourceError`, never a wrong answer.

Exponent vectors are packed into single integers (16-bit digits, degree
first for grevlex) so that monomial comparison is integer comparison and
divisibility is one masked subtraction.

Over GF(p) the algorithm runs directly. Over QQ a direct run is attempted
first under a coefficient-growth guard; systems whose intermediates swell
(the final reduced basis is typically tiny even when intermediates explode)
switch to a modular pipeline: reduced bases are computed modulo a
deterministic stream of 30-bit primes, the majority leading-term shape is
kept, coefficients are combined by CRT and lifted by rational
reconstruction, and the candidate is certified exactly over QQ: every
input generator must reduce to zero modulo the candidate, and the
candidate must be closed under S-polynomial reduction. Those checks prove
the candidate is the reduced basis of an ideal containing the input ideal;
agreement of the leading-term shape across several independent primes pins
it to the input ideal itself, the same assurance model as standard modular
Groebner engines.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, inf, isqrt

from .fields import Field
from .poly import (
    GREVLEX,
    LEX,
    Polynomial,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    order_key,
)

DEFAULT_PAIR_BUDGET = 10**6
DEFAULT_TERM_BUDGET = 10**8

_DIGIT_BITS = 16
_DIGIT = 1 << _DIGIT_BITS
_MAXE = (1 << (_DIGIT_BITS - 1)) - 1


class GroebnerResourceError(RuntimeError):
    """Raised when a basis computation exceeds its S-pair or term-op budget."""


class _Swell(Exception):
    """Internal: direct rational run abandoned due to coefficient growth."""


class _Budget:
    __slots__ = ("pair_limit", "op_limit", "pairs", "ops")

    def __init__(self, pair_limit, op_limit):
        self.pair_limit = pair_limit
        self.op_limit = op_limit
        self.pairs = 0
        self.ops = 0

    def charge_pair(self):
        self.pairs += 1
        if self.pairs > self.pair_limit:
            raise GroebnerResourceError(f"S-pair budget exceeded ({self.pair_limit})")

    def charge_ops(self, n):
        self.ops += n
        if self.ops > self.op_limit:
            raise GroebnerResourceError(
                f"term-operation budget exceeded ({self.op_limit})"
            )


class _PackCtx:
    """Packed-monomial context for a fixed variable count and order.

    grevlex layout (big-endian digits): [total degree][M-e_{n-1}]...[M-e_0]
    with M = 2^15-1, so integer comparison realizes grevlex. lex layout:
    [e_0]...[e_{n-1}]. In both, ``divides`` reduces to checking that no
    16-bit digit of a single subtraction has its high bit set.
    """

    __slots__ = ("n", "order", "corr", "himask", "_shifts")

    def __init__(self, n, order):
        self.n = n
        self.order = order
        self._shifts = [_DIGIT_BITS * i for i in range(n)]
        if order == GREVLEX:
            corr = 0
            for i in range(n):
                corr |= _MAXE << (_DIGIT_BITS * i)
            self.corr = corr
            digits = n + 1
        elif order == LEX:
            self.corr = 0
            digits = n
        else:
            raise ValueError(f"unknown monomial order {order!r}")
        hi = 0
        for i in range(digits):
            hi |= (1 << (_DIGIT_BITS - 1)) << (_DIGIT_BITS * i)
        self.himask = hi

    def pack(self, exp):
        if self.order == GREVLEX:
            deg = 0
            k = 0
            for i, e in enumerate(exp):
                if e > _MAXE:
                    raise ValueError("exponent too large to pack")
                deg += e
                k |= (_MAXE - e) << self._shifts[i]
            if deg > _MAXE:
                raise ValueError("total degree too large to pack")
            return (deg << (_DIGIT_BITS * self.n)) | k
        k = 0
        last = self.n - 1
        for i, e in enumerate(exp):
            if e > _MAXE:
                raise ValueError("exponent too large to pack")
            k |= e << self._shifts[last - i]
        return k

    def unpack(self, key):
        n = self.n
        if self.order == GREVLEX:
            return tuple(
                _MAXE - ((key >> self._shifts[i]) & (_DIGIT - 1)) for i in range(n)
            )
        last = n - 1
        return tuple((key >> self._shifts[last - i]) & (_DIGIT - 1) for i in range(n))

    def mul(self, a, b):
        return a + b - self.corr

    def div(self, a, b):
        """Packed form of monomial a/b (caller must know b | a)."""
        return a - b + self.corr

    def divides(self, a, b):
        """True when monomial a divides monomial b."""
        return not ((b - a + self.corr) & self.himask)

    def deg(self, key):
        if self.order == GREVLEX:
            return key >> (_DIGIT_BITS * self.n)
        return sum(self.unpack(key))

    def lcm(self, a, b):
        ea = self.unpack(a)
        eb = self.unpack(b)
        return self.pack(tuple(max(x, y) for x, y in zip(ea, eb)))


class _Elt:
    __slots__ = ("lm", "lc", "terms")

    def __init__(self, lm, lc, terms):
        self.lm = lm
        self.lc = lc
        self.terms = terms  # list of (packed_monomial, coeff)


# ---------------------------------------------------------------- reducers


def _content_strip(d):
    g = 0
    for c in d.values():
        g = gcd(g, c)
        if g == 1:
            return d
    if g > 1:
        for e in d:
            d[e] //= g
    return d


def _reduce_gf(r, basis, budget, pmod, ctx, full=False):
    finished = set()
    while r:
        if full:
            live = [e for e in r if e not in finished]
            if not live:
                break
            lt = max(live)
        else:
            lt = max(r)
        red = None
        for b in basis:
            if b is not None and ctx.divides(b.lm, lt):
                red = b
                break
        if red is None:
            if not full:
                break
            finished.add(lt)
            continue
        mult = r[lt]  # reducers are monic
        delta = lt - red.lm + ctx.corr
        corr = ctx.corr
        for e, cg in red.terms:
            ee = e + delta - corr
            v = (r.get(ee, 0) - mult * cg) % pmod
            if v:
                r[ee] = v
            else:
                r.pop(ee, None)
        budget.charge_ops(len(red.terms))
    return r


_STRIP_EVERY = 8


def _reduce_zz(r, basis, budget, ctx, full=False, swell_bits=None):
    finished = set()
    steps = 0
    while r:
        if full:
            live = [e for e in r if e not in finished]
            if not live:
                break
            lt = max(live)
        else:
            lt = max(r)
        red = None
        for b in basis:
            if b is not None and ctx.divides(b.lm, lt):
                red = b
                break
        if red is None:
            if not full:
                break
            finished.add(lt)
            continue
        c = r[lt]
        g = gcd(red.lc, c)
        mult_r = red.lc // g
        mult_g = c // g
        if mult_r != 1:
            for e in r:
                r[e] *= mult_r
            budget.charge_ops(len(r))
        delta = lt - red.lm + ctx.corr
        corr = ctx.corr
        for e, cg in red.terms:
            ee = e + delta - corr
            v = r.get(ee, 0) - mult_g * cg
            if v:
                r[ee] = v
            else:
                r.pop(ee, None)
        budget.charge_ops(len(red.terms))
        steps += 1
        if steps % _STRIP_EVERY == 0 and r:
            _content_strip(r)
            if swell_bits is not None and any(
                abs(c).bit_length() > swell_bits for c in r.values()
            ):
                raise _Swell
    if r:
        _content_strip(r)
        lt = max(r)
        if r[lt] < 0:
            for e in r:
                r[e] = -r[e]
    return r


def _reduce_qq(r, basis, budget, ctx, full=False):
    finished = set()
    while r:
        if full:
            live = [e for e in r if e not in finished]
            if not live:
                break
            lt = max(live)
        else:
            lt = max(r)
        red = None
        for b in basis:
            if b is not None and ctx.divides(b.lm, lt):
                red = b
                break
        if red is None:
            if not full:
                break
            finished.add(lt)
            continue
        mult = r[lt] / red.lc
        delta = lt - red.lm + ctx.corr
        corr = ctx.corr
        for e, cg in red.terms:
            ee = e + delta - corr
            v = r.get(ee, 0) - mult * cg
            if v:
                r[ee] = v
            else:
                r.pop(ee, None)
        budget.charge_ops(len(red.terms))
    return r


def _spoly_gf(f, g, ctx, pmod):
    big = ctx.lcm(f.lm, g.lm)
    df = big - f.lm + ctx.corr
    dg = big - g.lm + ctx.corr
    corr = ctx.corr
    s = {}
    for e, cc in f.terms:
        s[e + df - corr] = cc
    for e, cc in g.terms:
        ee = e + dg - corr
        v = (s.get(ee, 0) - cc) % pmod
        if v:
            s[ee] = v
        else:
            s.pop(ee, None)
    return s


def _spoly_zz(f, g, ctx):
    big = ctx.lcm(f.lm, g.lm)
    c = f.lc * g.lc // gcd(f.lc, g.lc)
    mf = c // f.lc
    mg = c // g.lc
    df = big - f.lm + ctx.corr
    dg = big - g.lm + ctx.corr
    corr = ctx.corr
    s = {}
    for e, cc in f.terms:
        s[e + df - corr] = mf * cc
    for e, cc in g.terms:
        ee = e + dg - corr
        v = s.get(ee, 0) - mg * cc
        if v:
            s[ee] = v
        else:
            s.pop(ee, None)
    return s


def _spoly_qq(f, g, ctx):
    big = ctx.lcm(f.lm, g.lm)
    df = big - f.lm + ctx.corr
    dg = big - g.lm + ctx.corr
    corr = ctx.corr
    inv_f = 1 / f.lc
    inv_g = 1 / g.lc
    s = {}
    for e, cc in f.terms:
        s[e + df - corr] = cc * inv_f
    for e, cc in g.terms:
        ee = e + dg - corr
        v = s.get(ee, 0) - cc * inv_g
        if v:
            s[ee] = v
        else:
            s.pop(ee, None)
    return s


# ------------------------------------------------------------- core driver


def _gm_update(pairs, lms, new_index, ctx):
    """Gebauer-Moeller pair-set update for arrival of basis element new_index."""
    lmf = lms[new_index]
    kept = set()
    for (i, j) in pairs:
        lij = ctx.lcm(lms[i], lms[j])
        if (
            not ctx.divides(lmf, lij)
            or lij == ctx.lcm(lms[i], lmf)
            or lij == ctx.lcm(lms[j], lmf)
        ):
            kept.add((i, j))
    groups = {}
    for i in range(new_index):
        groups.setdefault(ctx.lcm(lms[i], lmf), []).append(i)
    minimal = []
    for big in sorted(groups):
        if all(not ctx.divides(other, big) for other in minimal):
            minimal.append(big)
    for big in minimal:
        members = groups[big]
        coprime = any(ctx.lcm(lms[i], lmf) == ctx.mul(lms[i], lmf) for i in members)
        if not coprime:
            kept.add((min(members), new_index))
    return kept


def _make_elt(d):
    lm = max(d)
    terms = sorted(d.items(), reverse=True)
    return _Elt(lm, d[lm], terms)


def _core(seeds, ctx, budget, mode, pmod=None, swell_bits=None, freeze=False):
    """Run Buchberger on engine dicts; returns (final_dicts, trivial_flag).

    ``mode`` selects coefficient arithmetic: "gf", "zz", or "qq". With
    ``freeze`` set, any surviving S-pair that does not reduce to zero raises
    ValueError instead of growing the basis (used to certify candidates).
    """
    engine = []
    lms = []
    pairs = set()

    def add(d):
        nonlocal pairs
        elt = _make_elt(d)
        engine.append(elt)
        lms.append(elt.lm)
        pairs = _gm_update(pairs, lms, len(engine) - 1, ctx)

    for d in seeds:
        if ctx.deg(max(d)) == 0:
            return None, True
        add(d)
    if not engine:
        return [], False

    while pairs:
        pick = min(pairs, key=lambda p: (ctx.lcm(lms[p[0]], lms[p[1]]), p))
        pairs.discard(pick)
        budget.charge_pair()
        i, j = pick
        if mode == "gf":
            s = _spoly_gf(engine[i], engine[j], ctx, pmod)
            r = _reduce_gf(s, engine, budget, pmod, ctx)
        elif mode == "zz":
            s = _spoly_zz(engine[i], engine[j], ctx)
            r = _reduce_zz(s, engine, budget, ctx, swell_bits=swell_bits)
        else:
            s = _spoly_qq(engine[i], engine[j], ctx)
            r = _reduce_qq(s, engine, budget, ctx)
        if not r:
            continue
        if freeze:
            raise ValueError("candidate basis is not closed under S-polynomials")
        if ctx.deg(max(r)) == 0:
            return None, True
        if mode == "gf":
            lt = max(r)
            inv = pow(r[lt], -1, pmod)
            r = {e: (c * inv) % pmod for e, c in r.items()}
        add(r)

    if freeze:
        return [dict(e.terms) for e in engine], False

    # minimalize
    order_idx = sorted(range(len(engine)), key=lambda i: lms[i])
    minimal = []
    for i in order_idx:
        if not any(ctx.divides(lms[j], lms[i]) for j in minimal):
            minimal.append(i)
    kept = [engine[i] for i in minimal]

    # interreduce tails
    out = []
    for pos in range(len(kept)):
        others = [kept[q] for q in range(len(kept)) if q != pos]
        d = dict(kept[pos].terms)
        if mode == "gf":
            d = _reduce_gf(d, others, budget, pmod, ctx, full=True)
        elif mode == "zz":
            d = _reduce_zz(d, others, budget, ctx, full=True, swell_bits=swell_bits)
        else:
            d = _reduce_qq(d, others, budget, ctx, full=True)
        out.append(d)
    out.sort(key=max)
    return out, False


# ----------------------------------------------------- modular QQ pipeline


def _miller_rabin(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):  # deterministic below 3.2e9
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_stream():
    n = (1 << 30) - 1
    while n > 1 << 29:
        if _miller_rabin(n):
            yield n
        n -= 2


def _ratrec(c, m):
    """Rational reconstruction of c mod m (Wang bounds); None on failure."""
    bound = isqrt(m // 2)
    r0, r1 = m, c % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0:
        return None
    n, d = r1, s1
    if d < 0:
        n, d = -n, -d
    if d > bound or gcd(n, d) != 1 or gcd(d, m) != 1:
        return None
    return Fraction(n, d)


def _crt_pair(r1, m1, r2, m2):
    d = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * d, m1 * m2


def _int_dicts_from_frac(terms):
    den = 1
    for c in terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    d = {e: int(c * den) for e, c in terms.items()}
    _content_strip(d)
    return d


def _modular_qq(system, order, budget, stats):
    """Reduced GB over QQ via multi-modular runs with exact certification."""
    vars = system[0].vars
    ctx = _PackCtx(len(vars), order)

    gens_frac = []
    for p in system:
        gens_frac.append({ctx.pack(e): Fraction(c) for e, c in p.terms.items()})
    gens_int = [_int_dicts_from_frac(d) for d in gens_frac]

    runs = []  # (prime, shape, {lm: {mono: residue}})
    stream = _prime_stream()
    max_primes = 256
    min_agree = 3
    batch = 4
    used = 0
    while used < max_primes:
        for _ in range(min(batch, max_primes - used)):
            p = next(stream)
            used += 1
            bad = False
            seeds = []
            for d in gens_int:
                lt = max(d)
                if d[lt] % p == 0:
                    bad = True  # leading coefficient vanished; skip prime
                    break
                dd = {e: c % p for e, c in d.items() if c % p}
                inv = pow(dd[lt], -1, p)
                seeds.append({e: (c * inv) % p for e, c in dd.items()})
            if bad:
                continue
            seeds.sort(key=lambda d: (max(d), len(d), sorted(d.items())))
            out, trivial = _core(seeds, ctx, budget, "gf", pmod=p)
            if trivial:
                zero = ctx.pack((0,) * len(vars))
                runs.append((p, (zero,), {zero: {zero: 1}}))
            else:
                shape = tuple(sorted(max(d) for d in out))
                runs.append((p, shape, {max(d): d for d in out}))
        batch = 2

        shapes = {}
        for _, shape, _d in runs:
            shapes[shape] = shapes.get(shape, 0) + 1
        best_shape = max(shapes, key=lambda s: (shapes[s], s))
        good = [r for r in runs if r[1] == best_shape]
        if len(good) < min_agree:
            continue

        # CRT residues over the union of supports, then lift to rationals
        candidate = []
        ok = True
        for lm in best_shape:
            support = set()
            for _, _, elems in good:
                support |= set(elems[lm])
            rec = {}
            for mono in support:
                res, mod = 0, 1
                for p, _, elems in good:
                    res, mod = _crt_pair(res, mod, elems[lm].get(mono, 0), p)
                val = _ratrec(res, mod)
                if val is None:
                    ok = False
                    break
                if val:
                    rec[mono] = val
            if not ok:
                break
            candidate.append(rec)
        if not ok:
            continue

        if _certify_qq(candidate, gens_frac, ctx, budget):
            stats["primes"] = [p for p, _, _ in good]
            candidate.sort(key=max)
            return [
                {ctx.unpack(e): c for e, c in d.items()} for d in candidate
            ]
    raise GroebnerResourceError("modular reconstruction did not converge")


def _certify_qq(candidate, gens_frac, ctx, budget):
    """Exact certificate: candidate is a GB and contains the generators.

    Success proves the candidate is the reduced basis of an ideal that
    contains the input ideal; the leading-term shape was already matched
    against several independent mod-p reduced bases of the input.
    """
    elts = [_make_elt(d) for d in candidate]
    for d in gens_frac:
        r = _reduce_qq(dict(d), elts, budget, ctx, full=True)
        if r:
            return False
    try:
        seeds = [dict(d) for d in candidate]
        _core(seeds, ctx, budget, "qq", freeze=True)
    except ValueError:
        return False
    return True


# ------------------------------------------------------------- public API


class GroebnerBasis:
    """Reduced Groebner basis with its defining order, field, and variables.

    ``polys`` are monic, pairwise head-irreducible, sorted ascending by
    leading monomial. The generating system is retained for self checks.
    """

    def __init__(self, polys, vars, field, order, generators=None, stats=None):
        self.polys = list(polys)
        self.vars = tuple(vars)
        self.field = field
        self.order = order
        self.generators = list(generators or [])
        self.stats = stats or {}

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    @property
    def is_trivial(self) -> bool:
        return (
            len(self.polys) == 1
            and self.polys[0].is_constant()
            and not self.polys[0].is_zero()
        )

    def leading_monomials(self):
        return [p.leading_monomial(self.order) for p in self.polys]

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.polys, self.order)

    def staircase(self, limit=1_000_000):
        """Standard monomials (not divisible by any leading monomial).

        Returns a sorted list of exponent tuples, or ``None`` when the
        staircase is unbounded.
        """
        n = len(self.vars)
        lms = self.leading_monomials()
        if any(sum(lm) == 0 for lm in lms):
            return []
        if not lms:
            return None if n else [()]
        for i in range(n):
            if not any(
                lm[i] > 0 and all(lm[j] == 0 for j in range(n) if j != i)
                for lm in lms
            ):
                return None
        key = order_key(self.order)
        seen = {(0,) * n}
        frontier = [(0,) * n]
        while frontier:
            nxt = []
            for m in frontier:
                for i in range(n):
                    cand = m[:i] + (m[i] + 1,) + m[i + 1:]
                    if cand in seen:
                        continue
                    if any(monomial_divides(lm, cand) for lm in lms):
                        continue
                    seen.add(cand)
                    nxt.append(cand)
                    if len(seen) > limit:
                        raise GroebnerResourceError("staircase enumeration limit hit")
            frontier = nxt
        return sorted(seen, key=key)

    def quotient_dimension(self):
        """Number of standard monomials, or ``math.inf`` when unbounded."""
        stairs = self.staircase()
        if stairs is None:
            return inf
        return len(stairs)

    def self_check(self):
        """Assert the defining GB postconditions; raises AssertionError.

        Checks: every generator has normal form 0; every S-polynomial of
        basis pairs has normal form 0; the basis is monic and inter-reduced.
        """
        for g in self.generators:
            assert self.normal_form(g).is_zero(), f"generator does not reduce to 0: {g}"
        for i in range(len(self.polys)):
            for j in range(i):
                s = spolynomial(self.polys[i], self.polys[j], self.order)
                assert self.normal_form(s).is_zero(), f"S-pair ({i},{j}) not zero"
        key = order_key(self.order)
        lms = self.leading_monomials()
        for idx, p in enumerate(self.polys):
            assert p.leading_coefficient(self.order) == self.field.one(), "not monic"
            for e in p.terms:
                for jdx, lm in enumerate(lms):
                    if jdx != idx and monomial_divides(lm, e):
                        raise AssertionError("basis is not inter-reduced")
        assert [key(lm) for lm in lms] == sorted(key(lm) for lm in lms)


def spolynomial(f: Polynomial, g: Polynomial, order=GREVLEX) -> Polynomial:
    """S-polynomial over the coefficient field (monic normalization)."""
    lmf = f.leading_monomial(order)
    lmg = g.leading_monomial(order)
    big = monomial_lcm(lmf, lmg)
    field = f.field
    tf = {monomial_div(big, lmf): field.inv(f.leading_coefficient(order))}
    tg = {monomial_div(big, lmg): field.inv(g.leading_coefficient(order))}
    mf = Polynomial(f.vars, tf, field, order)
    mg = Polynomial(g.vars, tg, field, order)
    return mf * f - mg * g


def normal_form(f: Polynomial, basis, order=GREVLEX) -> Polynomial:
    """Full remainder of f under multivariate division by ``basis``.

    The remainder contains no term divisible by any basis leading monomial
    and differs from f by an element of the generated ideal. Reducers are
    chosen first-match in list order, so the result is deterministic.
    """
    basis = [b for b in basis if not b.is_zero()]
    if f.is_zero() or not basis:
        return f
    ctx = _PackCtx(len(f.vars), order)
    budget = _Budget(10**9, 10**12)
    field = f.field
    elts = []
    for b in basis:
        d = {ctx.pack(e): c for e, c in b.terms.items()}
        elts.append(_make_elt(d))
    r = {ctx.pack(e): c for e, c in f.terms.items()}
    if field.is_rational:
        r = _reduce_qq(r, elts, budget, ctx, full=True)
    else:
        p = field.p
        monic = []
        for elt in elts:
            inv = pow(elt.lc, -1, p)
            d = {e: (c * inv) % p for e, c in elt.terms}
            monic.append(_make_elt(d))
        r = _reduce_gf(r, monic, budget, p, ctx, full=True)
    return Polynomial(f.vars, {ctx.unpack(e): c for e, c in r.items()}, field, order)


def buchberger(
    system,
    order: str = GREVLEX,
    field: Field | None = None,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> GroebnerBasis:
    """Compute the reduced Groebner basis of ``system``.

    The reduced basis is the unique one for (ideal, order), so the result
    does not depend on generator order. A nonzero constant discovered at
    any point short-circuits to the trivial basis {1}.
    """
    system = list(system)
    if not system:
        raise ValueError("empty system has no variable context; pass generators")
    vars = system[0].vars
    field = field or system[0].field
    for p in system:
        if p.vars != vars or p.field != field:
            raise ValueError("system mixes rings")
    budget = _Budget(pair_budget, term_budget)
    stats = {}
    nonzero = [p for p in system if not p.is_zero()]
    if not nonzero:
        return GroebnerBasis([], vars, field, order, system, stats)

    ctx = _PackCtx(len(vars), order)

    def finish(dicts):
        polys = [Polynomial(vars, d, field, order) for d in dicts]
        stats.update({"spairs": budget.pairs, "term_ops": budget.ops})
        return GroebnerBasis(polys, vars, field, order, system, stats)

    def trivial():
        stats.update({"spairs": budget.pairs, "term_ops": budget.ops})
        one = Polynomial.constant(vars, 1, field, order)
        return GroebnerBasis([one], vars, field, order, system, stats)

    if field.is_rational:
        # direct run with a swell guard; fall back to the modular pipeline
        try:
            seeds = []
            for p in nonzero:
                d = _int_dicts_from_frac({ctx.pack(e): c for e, c in p.terms.items()})
                seeds.append(d)
            seeds.sort(key=lambda d: (max(d), len(d), sorted(d.items())))
            sub_budget = _Budget(
                min(budget.pair_limit, 20_000), min(budget.op_limit, 2_000_000)
            )
            out, is_triv = _core(seeds, ctx, sub_budget, "zz", swell_bits=4096)
            budget.pairs += sub_budget.pairs
            budget.ops += sub_budget.ops
            stats["mode"] = "direct"
            if is_triv:
                return trivial()
            dicts = []
            for d in out:
                lc = d[max(d)]
                dicts.append({ctx.unpack(e): Fraction(c, lc) for e, c in d.items()})
            return finish(dicts)
        except (_Swell, GroebnerResourceError):
            stats["mode"] = "modular"
        dicts = _modular_qq(nonzero, order, budget, stats)
        if len(dicts) == 1 and all(sum(e) == 0 for e in dicts[0]):
            return trivial()
        return finish(dicts)

    # prime field: direct computation
    pmod = field.p
    seeds = []
    for p in nonzero:
        d = {ctx.pack(e): c % pmod for e, c in p.terms.items()}
        d = {e: c for e, c in d.items() if c}
        if not d:
            continue
        lt = max(d)
        inv = pow(d[lt], -1, pmod)
        seeds.append({e: (c * inv) % pmod for e, c in d.items()})
    if not seeds:
        return GroebnerBasis([], vars, field, order, system, stats)
    seeds.sort(key=lambda d: (max(d), len(d), sorted(d.items())))
    out, is_triv = _core(seeds, ctx, budget, "gf", pmod=pmod)
    if is_triv:
        return trivial()
    dicts = []
    for d in out:
        lt = max(d)
        inv = pow(d[lt], -1, pmod)
        dicts.append({ctx.unpack(e): (c * inv) % pmod for e, c in d.items()})
    return finish(dicts)


def ideal_is_trivial(gb: GroebnerBasis) -> bool:
    """True iff the reduced basis is {1} (empty systems give the zero ideal)."""
    return gb.is_trivial


def _monic_set(polys, order):
    out = set()
    for p in polys:
        if not p.is_zero():
            out.add(frozenset(p.monic(order).terms.items()))
    return out


def ideal_equal(sys_a, sys_b, order: str = GREVLEX, field: Field | None = None) -> bool:
    """True iff the two systems generate the same ideal.

    Both systems must share one variable tuple (align names beforehand).
    Generator lists that coincide up to scaling and order are accepted
    without basis computations; otherwise each side is reduced modulo the
    other side's basis.
    """
    sys_a = list(sys_a)
    sys_b = list(sys_b)
    if not sys_a and not sys_b:
        return True
    allv = {p.vars for p in sys_a + sys_b}
    if len(allv) != 1:
        raise ValueError("variable sets differ; align names first")
    if not sys_a or not sys_b:
        other = sys_a or sys_b
        return all(p.is_zero() for p in other)
    if _monic_set(sys_a, order) == _monic_set(sys_b, order):
        return True
    gb_b = buchberger(sys_b, order, field)
    if any(not gb_b.normal_form(p).is_zero() for p in sys_a):
        return False
    gb_a = buchberger(sys_a, order, field)
    return all(gb_a.normal_form(p).is_zero() for p in sys_b)


def specialize(field: Field, polys):
    """Map a rational-coefficient system into GF(p).

    Raises :class:`~prismring.fields.NonInvertibleError` when p divides a
    coefficient denominator.
    """
    out = []
    for p in polys:
        out.append(
            Polynomial(
                p.vars, {e: field.coerce(c) for e, c in p.terms.items()}, field, p.order
            )
        )
    return out
