"""Constructive and decision procedures for the Gauss property.

Constructions (log-derivative determinants, substitutions, face
restriction) are exact symbolic operations on rational functions.
Decisions (the univariate classification, the linear and mostly-linear
denominator classifications, the planar degree-2 classification) return
certified verdicts backed by exact factorization and linear algebra,
with no congruence sampling involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import exactlp, unipoly
from .algebra import (
    LaurentPolynomial,
    RationalFunction,
    ZeroDenominator,
    factor_univariate,
)
from .polytope import Face, is_face_of, newton_polytope, polytope_contains

NEWTON_FAILS = "newton-containment-fails"
NON_SIMPLE_POLE = "non-simple-pole"
RESIDUE_NOT_LOG = "residue-not-log-derivative"
IRRATIONAL_RESIDUE = "irrational-residue-mismatch"


# ---------------------------------------------------------------------------
# determinants of logarithmic derivatives
# ---------------------------------------------------------------------------

def _poly_det(matrix) -> LaurentPolynomial:
    """Cofactor-expansion determinant of a matrix of Laurent polynomials."""
    m = len(matrix)
    if m == 0:
        raise ValueError("empty matrix")
    nvars = matrix[0][0].nvars
    if m == 1:
        return matrix[0][0]
    det = LaurentPolynomial.zero(nvars)
    for i in range(m):
        minor = [row[1:] for k, row in enumerate(matrix) if k != i]
        term = matrix[i][0] * _poly_det(minor)
        det = det + term if i % 2 == 0 else det - term
    return det


def theta_det(fs, var_indices) -> RationalFunction:
    """Exact determinant ``det( theta_i f_j / f_j )`` over the given variables.

    ``theta_i`` is the Euler operator ``x_i d/dx_i``.  Column ``j`` has the
    common denominator ``num_j * den_j``, so the determinant reduces to a
    single polynomial determinant over a product denominator.
    """
    m = len(fs)
    if m != len(var_indices):
        raise ValueError("need as many variables as functions")
    if m == 0:
        raise ValueError("empty function list")
    nvars = fs[0].nvars
    for f in fs:
        if f.is_zero():
            raise ZeroDenominator("logarithmic derivative of the zero function")
        if f.nvars != nvars:
            raise ValueError("mixed variable counts")
    matrix = []
    for i in var_indices:
        row = []
        for f in fs:
            # numerator of theta_i(f)/f over the denominator num*den
            row.append(f.num.euler(i) * f.den - f.num * f.den.euler(i))
        matrix.append(row)
    det = _poly_det(matrix)
    den = LaurentPolynomial.constant(nvars, 1)
    for f in fs:
        den = den * (f.num * f.den)
    return RationalFunction(det, den)


def log_det_construct(fs, n: int) -> RationalFunction:
    """The function ``(x_1...x_m / (f_1...f_m)) det(d f_j / d x_i)``.

    Equals ``det(theta_i f_j / f_j)`` as a rational function; ``m <= n``
    functions in ``n`` variables.
    """
    m = len(fs)
    if m == 0:
        raise ValueError("need at least one function")
    if m > n:
        raise ValueError(f"{m} functions in only {n} variables")
    for f in fs:
        if f.nvars != n:
            raise ValueError("function has wrong variable count")
    return theta_det(fs, list(range(m)))


def qdet_construct(Q: LaurentPolynomial, k, fs, x_block, det_vars=None) -> RationalFunction:
    """The product ``(q_k x^k / Q) * det(theta_i f_j / f_j)``.

    ``Q`` must be linear in each variable of ``x_block``; ``q_k`` is the
    coefficient of the x-block monomial ``x^k`` (a polynomial in the
    remaining variables).  The determinant runs over ``det_vars``
    (default: the first ``len(fs)`` variables outside the block), and
    the ``fs`` must not involve the block variables.
    """
    n = Q.nvars
    x_block = tuple(x_block)
    k = tuple(k)
    if len(k) != n:
        raise ValueError("exponent vector has wrong length")
    for e in Q.support():
        for i in x_block:
            if e[i] not in (0, 1):
                raise ValueError(f"denominator is not linear in variable {i}")
    for i in range(n):
        if i not in x_block and k[i] != 0:
            raise ValueError("exponent vector must be supported on the block")
    qk_terms = {}
    for e, c in Q.coefficient_dict().items():
        if all(e[i] == k[i] for i in x_block):
            reduced = tuple(0 if i in x_block else e[i] for i in range(n))
            qk_terms[reduced] = c
    qk = LaurentPolynomial(n, qk_terms)
    base = RationalFunction(qk.shift(k), Q)
    if not fs:
        return base
    rest = [i for i in range(n) if i not in x_block]
    if det_vars is None:
        det_vars = rest[: len(fs)]
    det_vars = list(det_vars)
    if len(det_vars) != len(fs):
        raise ValueError("need as many determinant variables as functions")
    for f in fs:
        for e in list(f.num.support()) + list(f.den.support()):
            if any(e[i] for i in x_block):
                raise ValueError("determinant functions must avoid the block variables")
    return base * theta_det(fs, det_vars)


# ---------------------------------------------------------------------------
# face restriction and substitutions
# ---------------------------------------------------------------------------

def restrict_face(F: RationalFunction, face: Face) -> RationalFunction:
    """Keep only the monomials of numerator and denominator lying on a face
    of the denominator's Newton polytope."""
    NQ = newton_polytope(F.den)
    if not is_face_of(face, NQ):
        raise ValueError("not a face of the denominator's Newton polytope")
    h, d = face.supporting_form, face.offset

    def restrict(poly: LaurentPolynomial) -> LaurentPolynomial:
        return LaurentPolynomial(
            poly.nvars,
            {
                e: c
                for e, c in poly.coefficient_dict().items()
                if sum(a * b for a, b in zip(h, e)) == d
            },
        )

    return RationalFunction(restrict(F.num), restrict(F.den))


@dataclass(frozen=True)
class ToroidalMap:
    """Monomial substitution ``x = y^A`` with full-column-rank rational A."""

    rows: tuple  # m rows of n Fractions: image exponent = A . k

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("ragged matrix")
        if exactlp.matrix_rank([list(r) for r in rows]) != n:
            raise ValueError("columns are not linearly independent")

    @property
    def source_dim(self) -> int:
        return len(self.rows[0])

    @property
    def target_dim(self) -> int:
        return len(self.rows)

    def apply_exponent(self, e) -> tuple:
        out = []
        for row in self.rows:
            v = sum(a * b for a, b in zip(row, e))
            if v.denominator != 1:
                raise ValueError(f"image exponent of {tuple(e)} is not integral")
            out.append(int(v))
        return tuple(out)


def toroidal_substitute(f, A: ToroidalMap):
    """Apply the monomial change of variables ``x = y^A`` (exponent remap)."""
    if isinstance(f, RationalFunction):
        return RationalFunction(
            _toroidal_poly(f.num, A), _toroidal_poly(f.den, A)
        )
    return _toroidal_poly(f, A)


def _toroidal_poly(p: LaurentPolynomial, A: ToroidalMap) -> LaurentPolynomial:
    if p.nvars != A.source_dim:
        raise ValueError("matrix shape does not match the variable count")
    if p.is_zero():
        return LaurentPolynomial.zero(A.target_dim)
    return LaurentPolynomial(
        A.target_dim,
        {A.apply_exponent(e): c for e, c in p.coefficient_dict().items()},
    )


def _embed_univariate(p: LaurentPolynomial, nvars: int, var: int) -> LaurentPolynomial:
    """View a univariate Laurent polynomial as an n-variable one in variable ``var``."""
    out = {}
    for (e,), c in p.coefficient_dict().items():
        vec = [0] * nvars
        vec[var] = e
        out[tuple(vec)] = c
    return LaurentPolynomial(nvars, out)


def _compose(poly: LaurentPolynomial, nums, dens, lo, hi) -> LaurentPolynomial:
    """Numerator of ``poly(g_1, ..., g_n)`` after clearing ``prod a_i^lo_i b_i^-hi_i``.

    ``nums[i] / dens[i]`` is substituted for variable ``i``; ``lo``/``hi``
    bound the exponents of variable ``i`` across every polynomial sharing
    this clearing, so all powers below are nonnegative.
    """
    n = poly.nvars
    cache: dict[tuple, LaurentPolynomial] = {}

    def power(base_index: int, which: str, exp: int) -> LaurentPolynomial:
        key = (base_index, which, exp)
        if key not in cache:
            base = nums[base_index] if which == "a" else dens[base_index]
            cache[key] = base**exp
        return cache[key]

    total = LaurentPolynomial.zero(n)
    for e, c in poly.coefficient_dict().items():
        term = LaurentPolynomial.constant(n, c)
        for i in range(n):
            term = term * power(i, "a", e[i] - lo[i])
            term = term * power(i, "b", hi[i] - e[i])
        total = total + term
    return total


def _substitute_into(F: RationalFunction, gs) -> RationalFunction:
    """Exact composition ``F(g_1, ..., g_n)`` for rational-function arguments."""
    n = F.nvars
    nums = [g.num for g in gs]
    dens = [g.den for g in gs]
    lo, hi = [], []
    for i in range(n):
        exps = [e[i] for e in F.num.support()] + [e[i] for e in F.den.support()]
        lo.append(min(exps))
        hi.append(max(exps))
    num = _compose(F.num, nums, dens, lo, hi)
    den = _compose(F.den, nums, dens, lo, hi)
    if den.is_zero():
        raise ZeroDenominator("denominator vanishes identically under the substitution")
    return RationalFunction(num, den)


def substitute_univariate(f: RationalFunction, gs) -> RationalFunction:
    """``prod_j (x_j g_j'(x_j) / g_j(x_j)) * f(g_1(x_1), ..., g_n(x_n))``.

    Each ``g_j`` is a univariate rational function, substituted for the
    j-th variable of ``f``.
    """
    n = f.nvars
    if len(gs) != n:
        raise ValueError("need one substitution per variable")
    factors = []
    embedded = []
    for j, g in enumerate(gs):
        if g.nvars != 1:
            raise ValueError("substitutions must be univariate")
        if g.is_zero():
            raise ZeroDenominator("cannot substitute the zero function")
        a, b = g.num, g.den
        # x g'/g = (theta(a) b - a theta(b)) / (a b)
        fac_num = a.euler(0) * b - a * b.euler(0)
        fac_den = a * b
        factors.append(
            RationalFunction(
                _embed_univariate(fac_num, n, j), _embed_univariate(fac_den, n, j)
            )
        )
        embedded.append(
            RationalFunction(
                _embed_univariate(a, n, j), _embed_univariate(b, n, j)
            )
        )
    out = _substitute_into(f, embedded)
    for fac in factors:
        out = out * fac
    return out


def substitute_multivariate(f: RationalFunction, gs) -> RationalFunction:
    """``(x_1...x_n / (g_1...g_n)) det(d g_j / d x_i) * f(g_1, ..., g_n)``.

    The ``g_j`` are rational functions of all ``n`` variables; a zero
    Jacobian determinant simply yields the zero function.
    """
    n = f.nvars
    if len(gs) != n:
        raise ValueError("need one substitution per variable")
    for g in gs:
        if g.nvars != n:
            raise ValueError("substitutions must share the ambient variables")
        if g.is_zero():
            raise ZeroDenominator("cannot substitute the zero function")
    matrix = []
    for i in range(n):
        row = []
        for g in gs:
            row.append(g.num.derivative(i) * g.den - g.num * g.den.derivative(i))
        matrix.append(row)
    det = _poly_det(matrix)
    if det.is_zero():
        return RationalFunction.constant(n, 0)
    monomial = LaurentPolynomial.monomial(n, (1,) * n)
    den = LaurentPolynomial.constant(n, 1)
    for g in gs:
        den = den * (g.num * g.den)
    prefactor = RationalFunction(monomial * det, den)
    return prefactor * _substitute_into(f, gs)


# ---------------------------------------------------------------------------
# the univariate classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MintonDecomposition:
    """Certificate ``f = constant + sum c_j x u_j'/u_j`` with irreducible
    ``u_j`` normalized to ``u_j(0) = 1``."""

    constant: Fraction
    terms: tuple  # of (Fraction, LaurentPolynomial)

    def recombine(self) -> RationalFunction:
        out = RationalFunction.constant(1, self.constant)
        for c, u in self.terms:
            num = u.euler(0)  # x u'
            out = out + RationalFunction(num * c, u)
        return out

    def to_json_dict(self) -> dict:
        return {
            "constant": _frac_json(self.constant),
            "terms": [
                {"c": _frac_json(c), "u": u.to_string()} for c, u in self.terms
            ],
        }


def _frac_json(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


@dataclass(frozen=True)
class MintonVerdict:
    has_gauss: bool
    decomposition: MintonDecomposition | None = None
    reason: str | None = None

    def to_json_dict(self) -> dict:
        out = {"schema": 1, "certified": True, "has_gauss_property": self.has_gauss}
        if self.decomposition is not None:
            out["decomposition"] = self.decomposition.to_json_dict()
        if self.reason:
            out["reason"] = self.reason
        return out


def minton_decide(f: RationalFunction) -> MintonVerdict:
    """Complete decision procedure for the univariate Gauss property.

    A univariate rational function has the Gauss property exactly when it
    is its value at 0 plus a rational combination of logarithmic
    derivatives ``x u'/u`` of irreducible polynomials with ``u(0) = 1``.
    The procedure checks Newton containment, rejects multiple poles,
    and solves for the combination exactly over the irreducible factors
    of the denominator.
    """
    if f.nvars != 1:
        raise ValueError("univariate input required")
    if f.is_zero():
        raise ValueError("the zero function is excluded")
    P, Q = f.num, f.den
    lo_p, hi_p = P.exponent_range(0)
    lo_q, hi_q = Q.exponent_range(0)
    if lo_p < lo_q or hi_p > hi_q:
        return MintonVerdict(False, reason=NEWTON_FAILS)
    # Newton containment forces the denominator to reach the lowest
    # exponent; normalization already removed any shared monomial, so Q
    # is a polynomial with nonzero constant term.
    q_dense = [int(c) for c in Q.univariate_coeffs()]
    p_dense = P.univariate_coeffs()
    f0 = Fraction(p_dense[0] if p_dense else 0, q_dense[0])
    p1 = unipoly.sub(p_dense, unipoly.scale(q_dense, f0))
    if not p1:
        return MintonVerdict(True, MintonDecomposition(f0, ()))
    factorization = factor_univariate(Q)
    for u, mult in factorization.factors:
        if mult > 1:
            return MintonVerdict(False, reason=NON_SIMPLE_POLE)
    poly_part, pf_terms = unipoly.partial_fractions_engine(p1, q_dense)
    terms = []
    csum = Fraction(0)
    for u, power, numer in pf_terms:
        if power > 1:
            return MintonVerdict(False, reason=NON_SIMPLE_POLE)
        d = unipoly.degree(u)
        w = unipoly.sub(unipoly.scale(u, d), unipoly.mul([0, 1], unipoly.derivative(u)))
        c = _proportionality(numer, w)
        if c is None:
            reason = IRRATIONAL_RESIDUE if d >= 2 else RESIDUE_NOT_LOG
            return MintonVerdict(False, reason=reason)
        c = -c
        csum += c * d
        u_normalized = LaurentPolynomial.from_univariate(
            [Fraction(v, u[0]) for v in u]
        )
        terms.append((c, u_normalized))
    expected_const = [csum] if csum else []
    if unipoly.strip(list(poly_part)) != expected_const:
        return MintonVerdict(False, reason=RESIDUE_NOT_LOG)
    return MintonVerdict(True, MintonDecomposition(f0, tuple(terms)))


def _proportionality(num, w):
    """Rational c with num == c * w (None if the vectors are not parallel)."""
    pivot = next(i for i, v in enumerate(w) if v != 0)
    c = Fraction(num[pivot]) / Fraction(w[pivot]) if pivot < len(num) else Fraction(0)
    target = unipoly.scale(list(w), c)
    return c if unipoly.strip(list(num)) == unipoly.strip(target) else None


# ---------------------------------------------------------------------------
# linear and mostly-linear classifications
# ---------------------------------------------------------------------------

def classify_linear(P: LaurentPolynomial, Q: LaurentPolynomial) -> bool:
    """Gauss property of ``P/Q`` for a denominator linear in each variable.

    For such denominators the property holds exactly when the Newton
    polytope of the numerator is contained in that of the denominator.
    """
    if Q.is_zero():
        raise ZeroDenominator("zero denominator")
    for e in Q.support():
        if any(x not in (0, 1) for x in e):
            raise ValueError("denominator is not linear in every variable")
    if P.is_zero():
        return True
    return polytope_contains(newton_polytope(P), newton_polytope(Q))


@dataclass(frozen=True)
class MostlyLinearVerdict:
    """Per-block-exponent verdicts for a denominator linear in a block."""

    per_k: dict
    overall: bool

    def to_json_dict(self) -> dict:
        out = {}
        for k, v in sorted(self.per_k.items()):
            key = ",".join(str(i) for i in k)
            out[key] = v if isinstance(v, str) else v.to_json_dict()
        return {"schema": 1, "certified": True, "overall": self.overall, "per_k": out}


def classify_mostly_linear(
    P: LaurentPolynomial,
    Q: LaurentPolynomial,
    z_var: int | None = None,
) -> MostlyLinearVerdict:
    """Gauss property of ``P/Q`` when ``Q`` is linear outside one variable.

    ``z_var`` is the distinguished variable (inferred when omitted: the
    unique variable in which ``Q`` is nonlinear, or the last one).  The
    function has the Gauss property exactly when, for every block
    exponent ``k``, a nonzero ``p_k`` comes with a nonzero ``q_k`` and
    every quotient ``p_k / q_k`` passes the univariate decision.
    """
    if Q.is_zero():
        raise ZeroDenominator("zero denominator")
    n = Q.nvars
    if z_var is None:
        nonlinear = [
            i
            for i in range(n)
            if any(e[i] not in (0, 1) for e in Q.support())
        ]
        if len(nonlinear) > 1:
            raise ValueError("denominator is nonlinear in more than one variable")
        z_var = nonlinear[0] if nonlinear else n - 1
    block = tuple(i for i in range(n) if i != z_var)
    for e in Q.support():
        if any(e[i] not in (0, 1) for i in block):
            raise ValueError("denominator is not linear in the block variables")

    def collect(poly: LaurentPolynomial) -> dict:
        out: dict[tuple, dict] = {}
        for e, c in poly.coefficient_dict().items():
            k = tuple(e[i] for i in block)
            out.setdefault(k, {})[(e[z_var],)] = c
        return out

    pk = collect(P)
    qk = collect(Q)
    per_k = {}
    overall = True
    for k in sorted(set(pk) | set(qk)):
        p_poly = LaurentPolynomial(1, pk.get(k, {}))
        q_poly = LaurentPolynomial(1, qk.get(k, {}))
        if q_poly.is_zero():
            if p_poly.is_zero():
                per_k[k] = "vacuous"
            else:
                per_k[k] = "q_zero_p_nonzero"
                overall = False
        elif p_poly.is_zero():
            per_k[k] = "vacuous"
        else:
            verdict = minton_decide(RationalFunction(p_poly, q_poly))
            per_k[k] = verdict
            overall = overall and verdict.has_gauss
    return MostlyLinearVerdict(per_k, overall)


# ---------------------------------------------------------------------------
# planar degree-2 classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Degree2Classification:
    """Result of the planar total-degree-2 classification.

    ``status == "classified"`` carries the dimension of the space of
    admissible numerators, an explicit basis, the set of extra monomial
    generators, and the membership verdict for the query numerator.
    ``status == "reduced"`` reports the toroidal substitution that maps
    the problem to a case handled by the linear classifications.
    """

    status: str
    dim_VQ: int | None = None
    basis: tuple = ()
    edge_monomials: tuple = ()
    contains: bool | None = None
    toroidal_map: ToroidalMap | None = None
    reduced_pair: tuple | None = None


def _is_rational_square(v: Fraction) -> bool:
    if v <= 0:
        return False
    a, b = v.numerator, v.denominator
    return isqrt(a) ** 2 == a and isqrt(b) ** 2 == b


def classify_degree2(P: LaurentPolynomial, Q: LaurentPolynomial) -> Degree2Classification:
    """Classify numerators with the Gauss property over a planar quadric.

    Requires two variables and total degree exactly 2.  In the triangle
    normal form (corner coefficients at (0,0), (2,0), (0,2) all nonzero)
    the admissible numerators form a space of dimension ``3 + |M|``,
    where ``M`` collects the edge monomials whose restricted quadratic
    has two distinct rational roots; other shapes are reported as
    reduced via an explicit toroidal substitution.
    """
    if Q.nvars != 2 or P.nvars != 2:
        raise ValueError("two variables required")
    if Q.is_zero():
        raise ZeroDenominator("zero denominator")
    if not Q.is_polynomial() or Q.total_degree_range()[1] != 2:
        raise ValueError("denominator must be a polynomial of total degree 2")
    a = Q[(0, 0)]
    b = Q[(1, 0)]
    c = Q[(0, 1)]
    d = Q[(2, 0)]
    e = Q[(1, 1)]
    f2 = Q[(0, 2)]
    if d == 0 or f2 == 0:
        # linear in x or in y: already a mostly-linear case
        return Degree2Classification(
            status="reduced",
            toroidal_map=ToroidalMap(((1, 0), (0, 1))),
            reduced_pair=(P, Q),
        )
    if a == 0:
        # origin is not a vertex: u = 1/x, v = y/x turns Q/x^2 into a
        # polynomial linear in u
        amap = ToroidalMap(((-1, -1), (0, 1)))
        return Degree2Classification(
            status="reduced",
            toroidal_map=amap,
            reduced_pair=(
                toroidal_substitute(P.shift((-2, 0)), amap),
                toroidal_substitute(Q.shift((-2, 0)), amap),
            ),
        )
    edge_data = {
        (1, 0): (a, b, d),
        (0, 1): (a, c, f2),
        (1, 1): (d, e, f2),
    }
    M = []
    for mono, (p0, p1, p2) in edge_data.items():
        disc = p1 * p1 - 4 * p0 * p2
        if _is_rational_square(disc):
            M.append(mono)
    basis = [Q, Q.euler(0), Q.euler(1)]
    for mono in M:
        basis.append(LaurentPolynomial.monomial(2, mono))
    monomials = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    rows = [[Fraction(v[mi]) for v in basis] for mi in monomials]
    member: bool | None = None
    if P.is_zero():
        member = True
    elif P.is_polynomial() and P.total_degree_range()[1] <= 2:
        target = [Fraction(P[mi]) for mi in monomials]
        member = exactlp.solve_linear(rows, target) is not None
    else:
        member = False
    return Degree2Classification(
        status="classified",
        dim_VQ=3 + len(M),
        basis=tuple(basis),
        edge_monomials=tuple(sorted(M)),
        contains=member,
    )
