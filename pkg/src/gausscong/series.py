"""Truncated Laurent expansions of rational functions at polytope vertices.

The expansion at a vertex ``v`` of the denominator's Newton polytope is
computed by a graded fixed-point recursion: choosing a grading form that
is strictly positive on the shifted denominator support, the defining
identity ``series * (Q / x^v) = P / x^v`` determines every coefficient
from coefficients of strictly smaller grade.  The recursion runs over
the exact support region (sums of shifted-support points, translated by
the numerator support), so every stored coefficient is exact; the bound
only limits which coefficients are known.

Queries beyond the bound raise :class:`OutOfTruncation` instead of
returning 0, so congruence checks can never silently read unknown
coefficients.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .algebra import RationalFunction
from .arith import is_prime
from .polytope import GradingForm, NotAVertex, grading_form

_MAX_BOX_CELLS = 50_000_000


class OutOfTruncation(LookupError):
    """A coefficient beyond the computed truncation was requested."""


class TruncationLimit(RuntimeError):
    """The requested truncation region is too large to enumerate."""


class TruncatedLaurentSeries:
    """Exact coefficients of a vertex expansion up to a graded bound."""

    __slots__ = ("nvars", "vertex", "grading", "bound", "coeffs", "cone_generators")

    def __init__(self, nvars, vertex, grading, bound, coeffs, cone_generators):
        self.nvars = nvars
        self.vertex = tuple(vertex)
        self.grading = grading
        self.bound = bound
        self.coeffs = coeffs
        self.cone_generators = tuple(cone_generators)

    @property
    def safe_bound(self) -> int:
        """Largest grade at which coefficients are known exactly."""
        return self.bound

    def __getitem__(self, exponent) -> Fraction:
        exponent = tuple(exponent)
        if self.grading(exponent) > self.bound:
            raise OutOfTruncation(
                f"coefficient at {exponent} has grade {self.grading(exponent)} "
                f"beyond the truncation bound {self.bound}"
            )
        return self.coeffs.get(exponent, Fraction(0))

    def support(self):
        """Exponents with nonzero coefficient, in graded order."""
        return sorted(self.coeffs, key=lambda e: (self.grading(e), tuple(-x for x in e)))

    def items(self):
        return [(e, self.coeffs[e]) for e in self.support()]

    def constant_term(self) -> Fraction:
        return self.coeffs.get((0,) * self.nvars, Fraction(0))

    def dump(self) -> str:
        """One line per nonzero coefficient: ``k1 k2 ... kn : num/den``."""
        lines = []
        for e, c in self.items():
            lines.append(f"{' '.join(str(k) for k in e)} : {c.numerator}/{c.denominator}")
        return "\n".join(lines)

    def __repr__(self):
        return (
            f"TruncatedLaurentSeries(nvars={self.nvars}, vertex={self.vertex}, "
            f"bound={self.bound}, terms={len(self.coeffs)})"
        )


def _validate_grading(alpha: GradingForm, shifted_support) -> None:
    for k in shifted_support:
        if any(k) and alpha(k) <= 0:
            raise ValueError(
                f"grading form {alpha.weights} is not strictly positive at {k}"
            )


def _enumerate_region(sources, generators, alpha, bound):
    """Lattice points ``s + sum(generators)`` with grade at most ``bound``.

    The result is exactly the set that can support the expansion, in
    increasing grade.
    """
    heap = []
    seen = set()
    for s in sources:
        a = alpha(s)
        if a <= bound and s not in seen:
            seen.add(s)
            heapq.heappush(heap, (a, s))
    gens = [(alpha(g), g) for g in generators]
    region = []
    while heap:
        a, p = heapq.heappop(heap)
        region.append(p)
        for ga, g in gens:
            if a + ga <= bound:
                q = tuple(x + y for x, y in zip(p, g))
                if q not in seen:
                    seen.add(q)
                    heapq.heappush(heap, (a + ga, q))
    region.sort(key=lambda e: (alpha(e), e))
    return region


def expand_at_vertex(
    F: RationalFunction,
    v,
    bound: int,
    grading: GradingForm | None = None,
) -> TruncatedLaurentSeries:
    """Laurent expansion of ``F`` at a vertex ``v`` of its denominator polytope.

    ``grading`` defaults to a computed integer form that is strictly
    positive on the shifted denominator support (its existence is what
    makes ``v`` a vertex; :class:`NotAVertex` is raised otherwise).
    """
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    v = tuple(v)
    n = F.nvars
    Q, P = F.den, F.num
    if grading is None:
        alpha = grading_form(Q, v)
    else:
        alpha = grading
        if Q[v] == 0:
            raise NotAVertex(f"{v} is not in the denominator support")
        _validate_grading(alpha, [tuple(a - b for a, b in zip(k, v)) for k in Q.support()])
    Qs = Q.shift(tuple(-x for x in v))
    Ps = P.shift(tuple(-x for x in v))
    origin = (0,) * n
    q0 = Qs[origin]
    generators = tuple(e for e in Qs.support() if e != origin)

    if P.is_zero():
        return TruncatedLaurentSeries(n, v, alpha, bound, {}, generators)

    sources = tuple(Ps.support())
    region = _enumerate_region(sources, generators, alpha, bound)
    if not region:
        return TruncatedLaurentSeries(n, v, alpha, bound, {}, generators)

    rlo = [min(p[i] for p in region) for i in range(n)]
    rhi = [max(p[i] for p in region) for i in range(n)]
    # pad the box so every lookup point - generator stays inside it
    lo = list(rlo)
    hi = list(rhi)
    for g in generators:
        for i in range(n):
            if g[i] > 0:
                lo[i] = min(lo[i], rlo[i] - g[i])
            elif g[i] < 0:
                hi[i] = max(hi[i], rhi[i] - g[i])
    dims = [h - l + 1 for l, h in zip(lo, hi)]
    size = 1
    for d in dims:
        size *= d
    if size > _MAX_BOX_CELLS:
        raise TruncationLimit(
            f"expansion region requires {size} cells; lower the bound"
        )
    strides = [1] * n
    for i in range(1, n):
        strides[i] = strides[i - 1] * dims[i - 1]

    def pack(point):
        return sum((point[i] - lo[i]) * strides[i] for i in range(n))

    keys = [pack(p) for p in region]
    # sources beyond the bound are outside the box, where pack() is no
    # longer injective; they cannot contribute within the truncation
    p_entries = {
        pack(e): _as_exact(c)
        for e, c in Ps.coefficient_dict().items()
        if alpha(e) <= bound
    }
    shifts = [sum(g[i] * strides[i] for i in range(n)) for g in generators]
    q_coeffs = [_as_exact(Qs[g]) for g in generators]
    vals = kernels.expand_packed(
        keys, p_entries, shifts, q_coeffs, q0.denominator, q0.numerator, size
    )
    coeffs = {
        point: Fraction(val)
        for point, val in zip(region, vals)
        if val
    }
    return TruncatedLaurentSeries(n, v, alpha, bound, coeffs, generators)


def _as_exact(c: Fraction):
    return c.numerator if c.denominator == 1 else c


def defining_identity_holds(series: TruncatedLaurentSeries, F: RationalFunction) -> bool:
    """Exact check that ``series * Q == P`` on all grades up to the bound."""
    v = series.vertex
    alpha = series.grading
    Qs = F.den.shift(tuple(-x for x in v)).coefficient_dict()
    Ps = F.num.shift(tuple(-x for x in v)).coefficient_dict()
    conv: dict[tuple, Fraction] = {}
    for e, c in series.coeffs.items():
        for j, q in Qs.items():
            t = tuple(a + b for a, b in zip(e, j))
            if alpha(t) <= series.bound:
                s = conv.get(t, 0) + c * q
                if s:
                    conv[t] = s
                else:
                    del conv[t]
    for e, c in Ps.items():
        if alpha(e) <= series.bound:
            if conv.pop(e, Fraction(0)) != c:
                return False
    return not conv


def apply_up(s: TruncatedLaurentSeries, p: int) -> TruncatedLaurentSeries:
    """Coefficient extraction along multiples of ``p``: result[k] = s[p*k]."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    coeffs = {}
    for e, c in s.coeffs.items():
        if all(x % p == 0 for x in e):
            coeffs[tuple(x // p for x in e)] = c
    return TruncatedLaurentSeries(
        s.nvars, s.vertex, s.grading, s.bound // p, coeffs, s.cone_generators
    )


@dataclass(frozen=True)
class ProductFactorization:
    """Exponents of an infinite-product form ``prod (1 - a_k x^k)``.

    ``entries`` lists the nonzero ``(k, a_k)``; all other exponents up to
    the bound are zero.  Re-expanding the product reproduces the source
    series on every grade up to the bound.
    """

    nvars: int
    grading: GradingForm
    bound: int
    entries: tuple

    def reexpand(self) -> dict:
        """Truncated expansion of the product, as an exponent->value map."""
        alpha = self.grading
        h = {(0,) * self.nvars: Fraction(1)}
        for k, a in self.entries:
            out = dict(h)
            for e, c in h.items():
                t = tuple(x + y for x, y in zip(e, k))
                if alpha(t) <= self.bound:
                    s = out.get(t, 0) - c * a
                    if s:
                        out[t] = s
                    else:
                        del out[t]
            h = out
        return h


def product_factorization(s: TruncatedLaurentSeries) -> ProductFactorization:
    """Inductive-by-grade factorization of a cone-supported series.

    Requires constant term exactly 1.  At each grade ``r`` the factor
    exponent ``a_k`` is read off the partial quotient, which is then
    divided out before moving to the next grade.
    """
    origin = (0,) * s.nvars
    if s.coeffs.get(origin, Fraction(0)) != 1:
        raise ValueError("product factorization requires constant term 1")
    alpha = s.grading
    for e in s.coeffs:
        if e != origin and alpha(e) <= 0:
            raise ValueError("series support is not in a positively graded cone")
    g = dict(s.coeffs)
    entries = []
    for level in range(1, s.bound + 1):
        level_keys = sorted(e for e in g if e != origin and alpha(e) == level and g[e])
        for k in level_keys:
            # the partial quotient is 1 + g_k x^k + ...; matching it against
            # the factor (1 - a_k x^k) fixes a_k = -g_k
            a = -g[k]
            entries.append((k, a))
            # divide by (1 - a x^k): multiply by sum_m a^m x^(m k)
            new: dict[tuple, Fraction] = {}
            for e, c in g.items():
                t = e
                power = Fraction(1)
                while alpha(t) <= s.bound:
                    val = new.get(t, 0) + c * power
                    if val:
                        new[t] = val
                    else:
                        del new[t]
                    t = tuple(x + y for x, y in zip(t, k))
                    power *= a
            g = new
    return ProductFactorization(s.nvars, alpha, s.bound, tuple(entries))
