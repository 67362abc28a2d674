"""Verification of Gauss congruences on truncated vertex expansions.

For a prime ``p``, strength ``s`` and depth ``r_max``, the engine checks

    nu_p( f[m * p^r] - f[m * p^(r-1)] ) >= s * r

for every base vector ``m`` in the expansion cone and every
``r <= r_max`` that the truncation permits.  Verdicts are per-prime and
empirical; certified classifications live in :mod:`gausscong.theory`,
and every report carries ``certified: False`` to keep that distinction
honest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .algebra import RationalFunction
from .arith import frac_valuation, is_prime, prime_factors
from .polytope import GradingForm, NotAVertex
from .series import TruncatedLaurentSeries, expand_at_vertex

DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13)

HOLDS = "holds"
FAILS = "fails"
EXCLUDED = "excluded"
INSUFFICIENT = "insufficient-truncation"


@dataclass(frozen=True)
class GaussCheckConfig:
    """Parameters of a congruence check.

    ``strength`` is the supercongruence exponent: 1 for ordinary Gauss
    congruences, 3 for the strongest known family of supercongruences.
    ``m_budget`` caps the grade of tested base vectors; None picks
    ``bound // min(primes)^2`` so depth-2 checks stay in range.
    """

    primes: tuple = DEFAULT_PRIMES
    r_max: int = 2
    strength: int = 1
    m_budget: int | None = None

    def __post_init__(self):
        ps = tuple(self.primes)
        if len(set(ps)) != len(ps):
            raise ValueError("primes must be distinct")
        for p in ps:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        if self.strength < 1 or self.r_max < 1:
            raise ValueError("strength and r_max must be positive")
        object.__setattr__(self, "primes", ps)


@dataclass(frozen=True)
class PrimeCheck:
    prime: int
    verdict: str
    checked: int = 0
    witness: dict | None = None
    reason: str | None = None

    def to_json_dict(self, strength: int, r_max: int) -> dict:
        out = {
            "prime": self.prime,
            "strength": strength,
            "r_max": r_max,
            "verdict": self.verdict,
            "witness": self.witness,
            "checked_count": self.checked,
        }
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass(frozen=True)
class GaussReport:
    """Per-prime verdicts for one expansion.

    A ``holds`` verdict means every congruence the truncation permits
    was checked and held, with at least one nontrivial pair among them.
    """

    vertex: tuple
    bound: int
    strength: int
    r_max: int
    entries: tuple
    certified: bool = field(default=False)

    def entry(self, p: int) -> PrimeCheck:
        for e in self.entries:
            if e.prime == p:
                return e
        raise KeyError(f"prime {p} was not part of this check")

    def verdict(self, p: int) -> str:
        return self.entry(p).verdict

    def all_hold(self) -> bool:
        """True when every non-excluded prime held (and none failed)."""
        relevant = [e for e in self.entries if e.verdict != EXCLUDED]
        return bool(relevant) and all(e.verdict == HOLDS for e in relevant)

    def failures(self) -> list[PrimeCheck]:
        return [e for e in self.entries if e.verdict == FAILS]

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "vertex": list(self.vertex),
            "bound": self.bound,
            "certified": self.certified,
            "reports": [e.to_json_dict(self.strength, self.r_max) for e in self.entries],
        }


def p_adic_valuation(a, p: int):
    """Largest r with ``a / p^r`` p-adically integral; ``math.inf`` at 0."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return frac_valuation(Fraction(a), p)


def excluded_primes(F: RationalFunction, v) -> frozenset:
    """Primes at which expansion coefficients may fail to be p-adically integral.

    Exactly the primes dividing the vertex coefficient of the
    denominator or the content of the numerator.
    """
    v = tuple(v)
    qv = F.den[v]
    if qv == 0:
        raise NotAVertex(f"{v} does not carry a denominator coefficient")
    out = set(prime_factors(qv.numerator))
    if not F.num.is_zero():
        out |= prime_factors(F.num.content().numerator)
    return frozenset(out)


def effective_m_budget(cfg: GaussCheckConfig, bound: int) -> int:
    """Default base-vector grade cap: deep enough for depth-2 checks at the
    smallest prime, falling back to depth 1 when that leaves nothing."""
    if cfg.m_budget is not None:
        return cfg.m_budget
    pmin = min(cfg.primes)
    budget = bound // (pmin ** min(2, cfg.r_max))
    return budget if budget >= 1 else bound // pmin


def _base_vectors(series: TruncatedLaurentSeries, p: int, r: int, m_budget: int):
    """Base vectors m with a nonzero coefficient at m*p^r or m*p^(r-1)."""
    alpha = series.grading
    pr = p**r
    prev = p ** (r - 1)
    origin = (0,) * series.nvars
    out = set()
    for w in series.coeffs:
        for step in (pr, prev):
            if all(c % step == 0 for c in w):
                m = tuple(c // step for c in w)
                if m != origin and alpha(m) <= m_budget:
                    out.add(m)
    return sorted(out, key=lambda m: (alpha(m), m))


def check_gauss(
    F: RationalFunction,
    v,
    cfg: GaussCheckConfig | None = None,
    bound: int = 60,
    grading: GradingForm | None = None,
    series: TruncatedLaurentSeries | None = None,
) -> GaussReport:
    """Check Gauss congruences of the expansion of ``F`` at vertex ``v``.

    A precomputed ``series`` may be supplied to share one expansion
    across several configurations (its vertex and bound take precedence).
    """
    cfg = cfg or GaussCheckConfig()
    if series is None:
        series = expand_at_vertex(F, v, bound, grading)
    v = series.vertex
    bound = series.bound
    alpha = series.grading
    excl = excluded_primes(F, v)
    m_budget = effective_m_budget(cfg, bound)
    qv = F.den[v]
    entries = []
    for p in sorted(cfg.primes):
        if p in excl:
            entries.append(PrimeCheck(p, EXCLUDED, reason="divides vertex coefficient or numerator content"))
            continue
        entry = _check_prime(series, p, cfg.r_max, cfg.strength, m_budget, qv)
        entries.append(entry)
    return GaussReport(
        vertex=v,
        bound=bound,
        strength=cfg.strength,
        r_max=cfg.r_max,
        entries=tuple(entries),
    )


def _check_prime(series, p, r_max, strength, m_budget, qv) -> PrimeCheck:
    alpha = series.grading
    if qv.numerator not in (1, -1):
        for e, c in series.coeffs.items():
            if c.denominator % p == 0:
                return PrimeCheck(
                    p,
                    FAILS,
                    witness={"m": list(e), "r": 0,
                             "valuation_found": frac_valuation(c, p),
                             "valuation_required": 0},
                    reason="nonintegral-coefficient",
                )
    checked = 0
    for r in range(1, r_max + 1):
        pr = p**r
        for m in _base_vectors(series, p, r, m_budget):
            am = alpha(m)
            if am * pr > series.bound:
                continue
            a = series[tuple(c * pr for c in m)]
            b = series[tuple(c * (pr // p) for c in m)]
            if a == 0 and b == 0:
                continue
            checked += 1
            need = strength * r
            val = frac_valuation(a - b, p)
            if val < need:
                return PrimeCheck(
                    p,
                    FAILS,
                    checked=checked,
                    witness={
                        "m": list(m),
                        "r": r,
                        "valuation_found": val if val != math.inf else None,
                        "valuation_required": need,
                    },
                )
    if checked == 0:
        return PrimeCheck(p, INSUFFICIENT, reason="no checkable congruence pair within the truncation")
    return PrimeCheck(p, HOLDS, checked=checked)


def check_integer_power_congruence(a: int, p: int, r_max: int, m_max: int) -> bool:
    """Oracle for the engine: do the classical power congruences hold?

    Tests ``a^(m p^r) == a^(m p^(r-1))  (mod p^r)`` for all
    ``1 <= m <= m_max`` and ``1 <= r <= r_max``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    for m in range(1, m_max + 1):
        for r in range(1, r_max + 1):
            hi = a ** (m * p**r)
            lo = a ** (m * p ** (r - 1))
            if (hi - lo) % p**r != 0:
                return False
    return True


# ---------------------------------------------------------------------------
# univariate brute force
# ---------------------------------------------------------------------------

def brute_force_univariate_gauss(
    F: RationalFunction,
    primes,
    nmax: int = 150,
    exceptional_bound: int = 7,
):
    """Empirical Gauss-property verdict for a univariate function by raw scanning.

    Computes the Taylor coefficients of ``F`` at 0 modulo prime powers and
    checks the full Gauss congruences at every prime in ``primes`` that
    neither divides the reduced denominator's constant term nor is at
    most ``exceptional_bound``.  Small primes are set aside because a
    function with the Gauss property may fail at finitely many primes
    (those dividing the denominators of its certifying decomposition),
    and at desk scale these are tiny; any failure at a larger prime is
    evidence against the property.

    Returns ``(holds, witnesses)`` where witnesses maps failing primes to
    ``(m, r, valuation)``.
    """
    if F.nvars != 1:
        raise ValueError("univariate input required")
    p_list = _dense_int_coeffs(F.num)
    q_list = _dense_int_coeffs(F.den)
    if not q_list or q_list[0] == 0:
        raise ValueError("denominator must not vanish at 0")
    q0 = q_list[0]
    witnesses = {}
    for p in sorted(primes):
        if not is_prime(p) or p <= exceptional_bound or q0 % p == 0:
            continue
        r_max = 0
        while p ** (r_max + 1) <= nmax:
            r_max += 1
        if r_max == 0:
            continue
        w = kernels.univariate_gauss_witness(p_list, q_list, nmax, p, r_max, 1)
        if w is not None:
            witnesses[p] = w
    return (not witnesses, witnesses)


def _dense_int_coeffs(poly) -> list[int]:
    out = poly.univariate_coeffs()
    return [int(c) for c in out]
