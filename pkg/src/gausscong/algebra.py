"""Exact sparse Laurent polynomials and rational functions.

A :class:`LaurentPolynomial` is a finite map from integer exponent
vectors (plain tuples) to nonzero rationals.  A
:class:`RationalFunction` is a normalized quotient of two of them: both
sides cleared to integer coefficients whose contents are coprime, the
sign fixed by the lexicographically smallest denominator exponent, and,
in one variable, the polynomial gcd and any shared monomial cancelled.

All values are immutable after construction and safe to share.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import unipoly
from .arith import gcd_list, lcm_list

MAX_VARS = 8

ExponentVector = tuple  # tuple[int, ...], length = number of variables


class VariableCountMismatch(ValueError):
    pass


class ZeroDenominator(ZeroDivisionError):
    pass


def graded_lex_key(exponent: ExponentVector):
    # total degree first, then earlier variables rank higher (x1 before x2)
    return (sum(exponent), tuple(-e for e in exponent))


class LaurentPolynomial:
    """Sparse Laurent polynomial with exact rational coefficients."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms=None):
        if not 1 <= nvars <= MAX_VARS:
            raise ValueError(f"number of variables must be in 1..{MAX_VARS}, got {nvars}")
        self.nvars = nvars
        clean: dict[tuple, Fraction] = {}
        if terms:
            for exp, coeff in (terms.items() if isinstance(terms, dict) else terms):
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise VariableCountMismatch(
                        f"exponent {exp} has length {len(exp)}, expected {nvars}"
                    )
                if any(not isinstance(e, int) for e in exp):
                    raise TypeError(f"non-integer exponent {exp}")
                coeff = Fraction(coeff)
                if coeff:
                    acc = clean.get(exp)
                    coeff = coeff if acc is None else acc + coeff
                    if coeff:
                        clean[exp] = coeff
                    else:
                        del clean[exp]
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPolynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value) -> "LaurentPolynomial":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def monomial(cls, nvars: int, exponent, coeff=1) -> "LaurentPolynomial":
        return cls(nvars, {tuple(exponent): Fraction(coeff)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "LaurentPolynomial":
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def from_univariate(cls, coeffs) -> "LaurentPolynomial":
        return cls(1, {(i,): Fraction(c) for i, c in enumerate(coeffs) if c})

    # -- inspection --------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def support(self) -> list[tuple]:
        return sorted(self._terms, key=graded_lex_key)

    def items(self):
        """Terms in graded-lexicographic order."""
        return [(e, self._terms[e]) for e in self.support()]

    def __getitem__(self, exponent) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def coefficient_dict(self) -> dict:
        return dict(self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def total_degree_range(self) -> tuple[int, int]:
        degs = [sum(e) for e in self._terms]
        return (min(degs), max(degs))

    def exponent_range(self, var: int) -> tuple[int, int]:
        exps = [e[var] for e in self._terms]
        return (min(exps), max(exps))

    def is_polynomial(self) -> bool:
        return all(min(e) >= 0 for e in self._terms) if self._terms else True

    def content(self) -> Fraction:
        """Positive rational c with ``self / c`` primitive integer (0 for 0)."""
        if not self._terms:
            return Fraction(0)
        vals = list(self._terms.values())
        den = lcm_list(v.denominator for v in vals)
        num = gcd_list(v.numerator * (den // v.denominator) for v in vals)
        return Fraction(num, den)

    # -- arithmetic --------------------------------------------------------

    def _check_compatible(self, other: "LaurentPolynomial"):
        if self.nvars != other.nvars:
            raise VariableCountMismatch(
                f"operands have {self.nvars} and {other.nvars} variables"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPolynomial.constant(self.nvars, other)
        self._check_compatible(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return LaurentPolynomial(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPolynomial.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return LaurentPolynomial.zero(self.nvars)
            return LaurentPolynomial(
                self.nvars, {e: c * other for e, c in self._terms.items()}
            )
        self._check_compatible(other)
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[tuple, Fraction] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = LaurentPolynomial.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPolynomial.constant(self.nvars, other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def shift(self, by) -> "LaurentPolynomial":
        """Multiply by the monomial ``x^by`` (``by`` may be negative)."""
        by = tuple(by)
        return LaurentPolynomial(
            self.nvars,
            {tuple(e + d for e, d in zip(exp, by)): c for exp, c in self._terms.items()},
        )

    def derivative(self, var: int) -> "LaurentPolynomial":
        out = {}
        for e, c in self._terms.items():
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                out[tuple(ne)] = c * e[var]
        return LaurentPolynomial(self.nvars, out)

    def euler(self, var: int) -> "LaurentPolynomial":
        """Euler operator x_i * d/dx_i."""
        return LaurentPolynomial(
            self.nvars, {e: c * e[var] for e, c in self._terms.items() if e[var]}
        )

    def remap_exponents(self, mapping) -> "LaurentPolynomial":
        """Apply ``mapping: exponent -> exponent`` to every term (must be injective)."""
        out = {}
        for e, c in self._terms.items():
            ne = tuple(mapping(e))
            if ne in out:
                raise ValueError("exponent remap is not injective on the support")
            out[ne] = c
        nvars = len(next(iter(out))) if out else self.nvars
        return LaurentPolynomial(nvars, out)

    # -- univariate bridge ---------------------------------------------------

    def univariate_coeffs(self) -> list[Fraction]:
        """Dense coefficient list; requires one variable and no negative exponents."""
        if self.nvars != 1:
            raise VariableCountMismatch("not univariate")
        if not self._terms:
            return []
        lo, hi = self.exponent_range(0)
        if lo < 0:
            raise ValueError("negative exponents present")
        out = [Fraction(0)] * (hi + 1)
        for (e,), c in self._terms.items():
            out[e] = c
        return out

    # -- rendering -----------------------------------------------------------

    def __repr__(self):
        return f"LaurentPolynomial({self.nvars}, {self.to_string()!r})"

    def to_string(self) -> str:
        """Canonical text form: graded-lex terms, ``num/den`` coefficients, x1..xn."""
        if not self._terms:
            return "0"
        parts = []
        for e in self.support():
            c = self._terms[e]
            factors = []
            for i, k in enumerate(e):
                if k == 0:
                    continue
                name = f"x{i + 1}"
                factors.append(name if k == 1 else f"{name}^{k}")
            mag = abs(c)
            body = "*".join(factors)
            if not factors:
                body = _frac_str(mag)
            elif mag != 1:
                body = f"{_frac_str(mag)}*{body}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def _frac_str(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def multiply(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    """Exact product of two Laurent polynomials."""
    return a * b


def _lex_min_exponent(p: LaurentPolynomial) -> tuple:
    return min(p._terms)


class RationalFunction:
    """Normalized quotient of Laurent polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPolynomial, den: LaurentPolynomial):
        if num.nvars != den.nvars:
            raise VariableCountMismatch(
                f"numerator has {num.nvars} variables, denominator {den.nvars}"
            )
        if den.is_zero():
            raise ZeroDenominator("denominator is the zero polynomial")
        num, den = _normalize_pair(num, den)
        self.num = num
        self.den = den

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def from_polynomial(cls, p: LaurentPolynomial) -> "RationalFunction":
        return cls(p, LaurentPolynomial.constant(p.nvars, 1))

    @classmethod
    def constant(cls, nvars: int, value) -> "RationalFunction":
        return cls.from_polynomial(LaurentPolynomial.constant(nvars, value))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.constant(self.nvars, other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.constant(self.nvars, other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.constant(self.nvars, other)
        if other.is_zero():
            raise ZeroDenominator("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int):
        if n < 0:
            if self.is_zero():
                raise ZeroDenominator("negative power of zero")
            return RationalFunction(self.den, self.num) ** (-n)
        return RationalFunction(self.num**n, self.den**n)

    def derivative(self, var: int) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative(var) * self.den - self.num * self.den.derivative(var),
            self.den * self.den,
        )

    def evaluate_constant(self) -> Fraction:
        """Value at the origin for a function with constant-invertible denominator."""
        d = self.den.constant_term()
        if d == 0:
            raise ZeroDenominator("denominator vanishes at the origin")
        return self.num.constant_term() / d

    def __repr__(self):
        return f"RationalFunction(({self.num.to_string()}) / ({self.den.to_string()}))"

    def to_string(self) -> str:
        return f"({self.num.to_string()}) / ({self.den.to_string()})"


def _normalize_pair(num: LaurentPolynomial, den: LaurentPolynomial):
    nvars = num.nvars
    if num.is_zero():
        return num, LaurentPolynomial.constant(nvars, 1)
    if len(den) == 1:
        # a monomial denominator folds into the numerator
        (v, c), = den.coefficient_dict().items()
        num = num.shift(tuple(-x for x in v))
        den = LaurentPolynomial.constant(nvars, c)
    if nvars == 1:
        num, den = _cancel_univariate(num, den)
        if num.is_zero():
            return num, LaurentPolynomial.constant(nvars, 1)
    else:
        # cancel any common monomial with nonnegative exponents
        shift = tuple(
            -max(0, min(num.exponent_range(i)[0], den.exponent_range(i)[0]))
            for i in range(nvars)
        )
        if any(shift):
            num = num.shift(shift)
            den = den.shift(shift)
    cn, cd = num.content(), den.content()
    g = Fraction(
        math.gcd(cn.numerator, cd.numerator),
        math.lcm(cn.denominator, cd.denominator),
    )
    num = num * (1 / g)
    den = den * (1 / g)
    if den[_lex_min_exponent(den)] < 0:
        num, den = -num, -den
    return num, den


def _cancel_univariate(num: LaurentPolynomial, den: LaurentPolynomial):
    lo = min(num.exponent_range(0)[0], den.exponent_range(0)[0])
    num = num.shift((-lo,))
    den = den.shift((-lo,))
    a = num.univariate_coeffs()
    b = den.univariate_coeffs()
    g = unipoly.gcd(a, b)
    if unipoly.degree(g) >= 1:
        a = unipoly.div_exact(a, g)
        b = unipoly.div_exact(b, g)
    # defensive: pull any remaining shared monomial x^d out of both sides
    d = 0
    while d < len(a) and d < len(b) and a[d] == 0 and b[d] == 0:
        d += 1
    if d:
        a, b = a[d:], b[d:]
    return (
        LaurentPolynomial.from_univariate(a),
        LaurentPolynomial.from_univariate(b),
    )


def normalize(P: LaurentPolynomial, Q: LaurentPolynomial) -> RationalFunction:
    """Normalized rational function P/Q (see :class:`RationalFunction`)."""
    return RationalFunction(P, Q)


@dataclass(frozen=True)
class UnivariateFactorization:
    """Complete factorization over the rationals.

    ``unit * prod(factor^multiplicity)`` reproduces the input exactly;
    factors are primitive integer polynomials with positive leading
    coefficient, irreducible over the rationals, pairwise non-associate,
    sorted by (degree, coefficients).
    """

    unit: Fraction
    factors: tuple  # of (LaurentPolynomial, int)

    def expand(self) -> LaurentPolynomial:
        out = LaurentPolynomial.constant(1, self.unit)
        for f, m in self.factors:
            out = out * f**m
        return out


def factor_univariate(u: LaurentPolynomial) -> UnivariateFactorization:
    """Factor a univariate polynomial into irreducibles over the rationals."""
    if u.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    coeffs = u.univariate_coeffs()
    unit, prim = unipoly.primitive(coeffs)
    pairs = unipoly.factor_primitive(prim)
    return UnivariateFactorization(
        unit=unit,
        factors=tuple(
            (LaurentPolynomial.from_univariate(f), m) for f, m in pairs
        ),
    )


@dataclass(frozen=True)
class PartialFractions:
    """Exact partial-fraction decomposition of p/q.

    ``polynomial_part + sum(numerator / factor^power)`` reproduces the
    input; factors are irreducible, numerators have degree strictly
    below their factor.
    """

    polynomial_part: LaurentPolynomial
    terms: tuple  # of (factor, power, numerator) LaurentPolynomial/int/LaurentPolynomial

    def recombine(self) -> RationalFunction:
        out = RationalFunction.from_polynomial(self.polynomial_part)
        for factor, power, numer in self.terms:
            out = out + RationalFunction(numer, factor**power)
        return out


def partial_fractions(p: LaurentPolynomial, q: LaurentPolynomial) -> PartialFractions:
    """Partial-fraction decomposition of ``p/q`` over the irreducible factors of q."""
    if q.is_zero():
        raise ZeroDenominator("zero denominator")
    poly_part, terms = unipoly.partial_fractions_engine(
        p.univariate_coeffs(), q.univariate_coeffs()
    )
    return PartialFractions(
        polynomial_part=LaurentPolynomial.from_univariate(poly_part),
        terms=tuple(
            (
                LaurentPolynomial.from_univariate(u),
                power,
                LaurentPolynomial.from_univariate(n),
            )
            for u, power, n in terms
        ),
    )
