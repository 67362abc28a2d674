"""Dense univariate polynomial toolkit over the rationals.

Polynomials are plain coefficient lists indexed by degree (``c[i]`` is
the coefficient of ``x^i``), with no trailing zeros; the zero polynomial
is ``[]``.  Entries may be ``int`` or ``Fraction``; arithmetic never
leaves exact rationals.

The factorization routine is a big-prime Zassenhaus: reduce the
primitive squarefree part modulo one prime exceeding twice the
Landau-Mignotte bound, factor there (distinct-degree plus
Cantor-Zassenhaus equal-degree splitting), and recombine subsets of the
modular factors by exact trial division over the integers.  This is
exact for the degrees this package cares about (well past the
contractual degree 10).
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .arith import gcd_list, lcm_list, modinv, next_prime

Poly = list  # coefficient list, index = degree


# ---------------------------------------------------------------------------
# basic arithmetic
# ---------------------------------------------------------------------------

def strip(c: Poly) -> Poly:
    while c and c[-1] == 0:
        c.pop()
    return c


def degree(c: Poly) -> int:
    """Degree, with ``degree([]) == -1``."""
    return len(c) - 1


def add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    out = [0] * n
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] += v
    return strip(out)


def neg(a: Poly) -> Poly:
    return [-v for v in a]


def sub(a: Poly, b: Poly) -> Poly:
    return add(a, neg(b))


def mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u == 0:
            continue
        for j, v in enumerate(b):
            out[i + j] += u * v
    return strip(out)


def scale(a: Poly, c) -> Poly:
    if c == 0:
        return []
    return [v * c for v in a]


def divmod_poly(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Quotient and remainder over the rationals."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(v) for v in a]
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = Fraction(1, 1) / Fraction(b[-1])
    db = len(b) - 1
    while len(r) - 1 >= db and strip(r):
        k = len(r) - 1 - db
        coef = r[-1] * inv
        q[k] = coef
        for i, v in enumerate(b):
            r[k + i] -= coef * v
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return strip(q), strip(r)


def div_exact(a: Poly, b: Poly) -> Poly:
    q, r = divmod_poly(a, b)
    if r:
        raise ValueError("division is not exact")
    return q


def monic(a: Poly) -> Poly:
    if not a:
        return []
    inv = Fraction(1, 1) / Fraction(a[-1])
    return [Fraction(v) * inv for v in a]


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the rationals (``[]`` if both zero)."""
    a, b = list(a), list(b)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def derivative(a: Poly) -> Poly:
    return strip([i * v for i, v in enumerate(a)][1:])


def evaluate(a: Poly, x):
    out = 0
    for v in reversed(a):
        out = out * x + v
    return out


def content(a: Poly) -> Fraction:
    """Positive rational ``c`` such that ``a / c`` is primitive integer."""
    if not a:
        return Fraction(0)
    fr = [Fraction(v) for v in a]
    den = lcm_list(v.denominator for v in fr)
    num = gcd_list(v.numerator * (den // v.denominator) for v in fr)
    return Fraction(num, den)


def primitive(a: Poly) -> tuple[Fraction, Poly]:
    """Split ``a`` as ``unit * p`` with ``p`` primitive integer, positive leading coefficient."""
    if not a:
        return Fraction(0), []
    c = content(a)
    p = [int(Fraction(v) / c) for v in a]
    if p[-1] < 0:
        p = [-v for v in p]
        c = -c
    return c, p


# ---------------------------------------------------------------------------
# squarefree decomposition (Yun)
# ---------------------------------------------------------------------------

def squarefree_part(a: Poly) -> Poly:
    return div_exact(a, gcd(a, derivative(a))) if degree(a) >= 1 else monic(a)


def squarefree_decomposition(a: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: pairwise-coprime monic ``g_i`` with ``a = lc * prod g_i^i``."""
    if degree(a) < 1:
        return []
    a = monic(a)
    d = derivative(a)
    g = gcd(a, d)
    w = div_exact(a, g)
    z = sub(div_exact(d, g), derivative(w))
    out: list[tuple[Poly, int]] = []
    i = 1
    while degree(w) >= 1:
        h = gcd(w, z)
        if degree(h) >= 1:
            out.append((h, i))
        w = div_exact(w, h)
        z = sub(div_exact(z, h), derivative(w))
        i += 1
    return out


# ---------------------------------------------------------------------------
# arithmetic modulo a prime
# ---------------------------------------------------------------------------

def _gf_strip(c, p):
    c = [v % p for v in c]
    while c and c[-1] == 0:
        c.pop()
    return c


def _gf_divmod(a, b, p):
    b = list(b)
    r = list(a)
    inv = modinv(b[-1], p)
    db = len(b) - 1
    q = [0] * max(0, len(r) - db)
    while len(r) - 1 >= db and r:
        coef = r[-1] * inv % p
        q[len(r) - 1 - db] = coef
        for i, v in enumerate(b):
            r[len(r) - 1 - db + i] = (r[len(r) - 1 - db + i] - coef * v) % p
        while r and r[-1] == 0:
            r.pop()
    return q, r


def _gf_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] = (out[i + j] + u * v) % p
    return out


def _gf_mulmod(a, b, f, p):
    out = _gf_mul(a, b, p)
    return _gf_divmod(out, f, p)[1] if out else []


def _gf_powmod(a, e, f, p):
    result = [1]
    base = _gf_divmod(a, f, p)[1] if len(a) >= len(f) else list(a)
    while e:
        if e & 1:
            result = _gf_mulmod(result, base, f, p)
        base = _gf_mulmod(base, base, f, p)
        e >>= 1
    return result


def _gf_gcd(a, b, p):
    a, b = _gf_strip(a, p), _gf_strip(b, p)
    while b:
        a, b = b, _gf_divmod(a, b, p)[1]
    if a:
        inv = modinv(a[-1], p)
        a = [v * inv % p for v in a]
    return a


def _gf_factor_squarefree(f, p, rng: random.Random):
    """Irreducible monic factors of a squarefree monic ``f`` modulo odd prime ``p``."""
    n = degree(f)
    if n <= 1:
        return [list(f)]
    factors = []
    # distinct-degree stage
    h = [0, 1]
    stack = []
    rem = list(f)
    d = 0
    while degree(rem) > 0:
        d += 1
        if 2 * d > degree(rem):
            stack.append((rem, degree(rem)))
            break
        h = _gf_powmod(h, p, rem, p)
        g = _gf_gcd(sub(h, [0, 1]), rem, p)
        if degree(g) > 0:
            stack.append((g, d))
            rem = _gf_divmod(rem, g, p)[0]
            h = _gf_divmod(h, rem, p)[1]
    # equal-degree (Cantor-Zassenhaus) stage
    for prod, d in stack:
        todo = [prod]
        while todo:
            g = todo.pop()
            if degree(g) == d:
                factors.append(g)
                continue
            while True:
                r = [rng.randrange(p) for _ in range(degree(g))] + [1]
                s = _gf_powmod(r, (p**d - 1) // 2, g, p)
                s = _gf_strip(sub(s, [1]), p)
                w = _gf_gcd(s, g, p) if s else []
                if w and 0 < degree(w) < degree(g):
                    todo.append(w)
                    todo.append(_gf_divmod(g, w, p)[0])
                    break
    return factors


# ---------------------------------------------------------------------------
# factorization over the rationals
# ---------------------------------------------------------------------------

def _mignotte_bound(f: Poly) -> int:
    n = degree(f)
    norm = math.isqrt(sum(int(v) * int(v) for v in f)) + 1
    return 2**n * norm * (n + 1)


def _balanced(v: int, p: int) -> int:
    v %= p
    return v - p if 2 * v > p else v


def factor_primitive(f: list[int]) -> list[tuple[list[int], int]]:
    """Factor a primitive integer polynomial with positive leading coefficient.

    Returns ``(factor, multiplicity)`` pairs; each factor is primitive
    integer with positive leading coefficient, and the product of all
    ``factor^multiplicity`` equals the input.
    """
    out: list[tuple[list[int], int]] = []
    if degree(f) < 1:
        return out
    # monomial part
    shift = 0
    while f[0] == 0:
        f = f[1:]
        shift += 1
    if shift:
        out.append(([0, 1], shift))
    if degree(f) < 1:
        return sorted(out, key=_factor_sort_key)
    for g, mult in squarefree_decomposition(f):
        _, gz = primitive(g)
        for irr in _factor_squarefree_int(gz):
            out.append((irr, mult))
    return sorted(out, key=_factor_sort_key)


def _factor_sort_key(pair):
    g, mult = pair
    return (degree(g), tuple(g), mult)


def _factor_squarefree_int(f: list[int]) -> list[list[int]]:
    """Irreducible integer factors of a squarefree primitive ``f`` (lc > 0)."""
    n = degree(f)
    if n <= 1:
        return [f]
    lc = f[-1]
    # deterministic seed so repeated runs pick the same splitting sequence
    rng = random.Random(hash(tuple(f)) & 0xFFFFFFFF)
    bound = 2 * abs(lc) * _mignotte_bound(f)
    p = next_prime(max(bound, 101))
    while True:
        if lc % p != 0:
            fp = _gf_strip(f, p)
            dfp = _gf_strip(derivative(f), p)
            if degree(_gf_gcd(fp, dfp, p)) == 0:
                break
        p = next_prime(p)
    inv = modinv(lc, p)
    fbar = [v * inv % p for v in fp]
    modular = _gf_factor_squarefree(fbar, p, rng)
    modular.sort(key=lambda g: (degree(g), tuple(g)))

    result: list[list[int]] = []
    remaining = list(f)
    while len(modular) > 1:
        found = False
        for size in range(1, len(modular) // 2 + 1):
            for subset in _subsets(len(modular), size):
                cand = [remaining[-1] % p]
                for i in subset:
                    cand = _gf_mul(cand, modular[i], p)
                cand = strip([_balanced(v, p) for v in cand])
                if not cand:
                    continue
                _, cand = primitive(cand)
                q = _int_div_exact(remaining, cand)
                if q is None:
                    continue
                result.append(cand)
                remaining = q
                modular = [g for i, g in enumerate(modular) if i not in subset]
                found = True
                break
            if found:
                break
        if not found:
            break
    if degree(remaining) >= 1:
        _, rem = primitive(remaining)
        result.append(rem)
    return result


def _subsets(n: int, k: int):
    import itertools

    return itertools.combinations(range(n), k)


def _int_div_exact(a: list[int], b: list[int]) -> list[int] | None:
    """Exact division in Z[x]; returns None if ``b`` does not divide ``a``."""
    if not b:
        return None
    r = list(a)
    db = degree(b)
    dq = degree(r) - db
    if dq < 0:
        return None
    q = [0] * (dq + 1)
    for k in range(dq, -1, -1):
        cur = r[k + db] if k + db < len(r) else 0
        if cur == 0:
            continue
        if cur % b[-1] != 0:
            return None
        c = cur // b[-1]
        q[k] = c
        for i, v in enumerate(b):
            r[k + i] -= c * v
    if any(v != 0 for v in r):
        return None
    return q


# ---------------------------------------------------------------------------
# partial fractions
# ---------------------------------------------------------------------------

def partial_fractions_engine(p: Poly, q: Poly):
    """Exact partial-fraction data for ``p / q``.

    Returns ``(poly_part, terms)`` where each term is
    ``(factor, power, numerator)`` with ``factor`` irreducible primitive
    integer, ``degree(numerator) < degree(factor)`` and

        p/q = poly_part + sum(numerator / factor**power).
    """
    if not q:
        raise ZeroDivisionError("zero denominator")
    poly_part, r = divmod_poly(p, q)
    if not r:
        return poly_part, []
    unit, qz = primitive(q)
    factors = factor_primitive(qz)
    r = scale(r, Fraction(1) / unit)
    terms: list[tuple[list[int], int, Poly]] = []
    extra = _split(r, factors, terms)
    poly_part = add(poly_part, extra)
    terms.sort(key=lambda t: (degree(t[0]), tuple(t[0]), -t[1]))
    return strip(poly_part), terms


def _split(r: Poly, factors, terms) -> Poly:
    if not factors:
        # r / 1 is polynomial
        return r
    if len(factors) == 1:
        u, e = factors[0]
        ue = [1]
        for _ in range(e):
            ue = mul(ue, u)
        s, r = divmod_poly(r, ue)
        # base-u digit expansion of the proper remainder
        digits = []
        for _ in range(e):
            r, d = divmod_poly(r, u)
            digits.append(d)
        for j, d in enumerate(digits):
            if d:
                terms.append((u, e - j, d))
        return s
    half = len(factors) // 2
    fa, fb = factors[:half], factors[half:]
    va, vb = [1], [1]
    for u, e in fa:
        for _ in range(e):
            va = mul(va, u)
    for u, e in fb:
        for _ in range(e):
            vb = mul(vb, u)
    a, b = _bezout(va, vb)
    # 1 = a*va + b*vb  =>  r/(va*vb) = r*b/va + r*a/vb
    qa, ra = divmod_poly(mul(r, b), va)
    qb, rb = divmod_poly(mul(r, a), vb)
    return add(add(_split(ra, fa, terms), _split(rb, fb, terms)), add(qa, qb))


def _bezout(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Polynomials ``(u, v)`` with ``u*a + v*b = 1`` for coprime inputs."""
    r0, r1 = list(a), list(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if degree(r0) != 0:
        raise ValueError("inputs are not coprime")
    inv = Fraction(1) / Fraction(r0[0])
    return scale(s0, inv), scale(t0, inv)


def pf_recombine(poly_part: Poly, terms) -> tuple[Poly, Poly]:
    """Recombine partial fractions into a single ``(num, den)`` pair."""
    num, den = list(poly_part), [1]
    for u, power, n in terms:
        upow = [1]
        for _ in range(power):
            upow = mul(upow, u)
        num = add(mul(num, upow), mul(n, den))
        den = mul(den, upow)
    return num, den
