"""Constructions and certified decision procedures."""

import random
from fractions import Fraction

import pytest

from gausscong.algebra import LaurentPolynomial, RationalFunction, ZeroDenominator
from gausscong.cli import parse_laurent, parse_rational
from gausscong.gauss import (
    FAILS,
    HOLDS,
    GaussCheckConfig,
    brute_force_univariate_gauss,
    check_gauss,
    excluded_primes,
)
from gausscong.polytope import faces, newton_polytope
from gausscong.series import expand_at_vertex
from gausscong.theory import (
    IRRATIONAL_RESIDUE,
    NEWTON_FAILS,
    NON_SIMPLE_POLE,
    Face,
    ToroidalMap,
    classify_degree2,
    classify_linear,
    classify_mostly_linear,
    log_det_construct,
    minton_decide,
    qdet_construct,
    restrict_face,
    substitute_multivariate,
    substitute_univariate,
    theta_det,
    toroidal_substitute,
)

R = parse_rational
L = parse_laurent


# -- log-derivative determinants ---------------------------------------------

def test_logdet_single_variable_monomial():
    assert log_det_construct([R("x")], 1) == R("1")


def test_logdet_gessel_generator():
    u = R("x*(1-3*x+3*x^2)", "(1-3*x)^3")
    assert log_det_construct([u], 1) == R("1", "(1-3*x)*(1-3*x+3*x^2)")


def test_logdet_planar_pair():
    # f1 = x + a y + g, f2 = eps + (x + a y + g)(x + b y + d) gives (b - a) x y / f2
    f1 = R("x+2*y+1")
    Q = R("1+(x+2*y+1)*(x+3*y+1)")
    assert log_det_construct([f1, Q], 2) == R("x*y", "1+(x+2*y+1)*(x+3*y+1)")


def test_logdet_errors():
    with pytest.raises(ValueError):
        log_det_construct([R("x", nvars=1), R("x", nvars=1)], 1)
    with pytest.raises(ZeroDenominator):
        log_det_construct([R("0")], 1)


def test_logdet_logarithmic_in_each_argument():
    rng = random.Random(3)
    for _ in range(8):
        def rand_poly():
            terms = {}
            for _ in range(rng.randint(1, 3)):
                terms[(rng.randint(0, 2), rng.randint(0, 2))] = rng.randint(-4, 4)
            p = LaurentPolynomial(2, terms)
            return p if not p.is_zero() else LaurentPolynomial.constant(2, 1)

        g, h, f2 = (RationalFunction.from_polynomial(rand_poly()) for _ in range(3))
        lhs = log_det_construct([g * h, f2], 2)
        rhs = log_det_construct([g, f2], 2) + log_det_construct([h, f2], 2)
        assert lhs == rhs


def test_theta_det_toroidal_scaling():
    # invertible monomial substitution scales the determinant by det(A)
    rng = random.Random(17)
    A = ToroidalMap(((1, 1), (0, 1)))  # det = 1
    B = ToroidalMap(((2, 1), (1, 1)))  # det = 1
    C = ToroidalMap(((1, 2), (1, 0)))  # det = -2
    for amap, det in ((A, 1), (B, 1), (C, -2)):
        for _ in range(4):
            fs = []
            for _ in range(2):
                terms = {(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-3, 3)
                         for _ in range(rng.randint(1, 3))}
                p = LaurentPolynomial(2, terms)
                fs.append(RationalFunction.from_polynomial(
                    p if not p.is_zero() else LaurentPolynomial.constant(2, 1)))
            lhs = theta_det([toroidal_substitute(f, amap) for f in fs], [0, 1])
            rhs = toroidal_substitute(theta_det(fs, [0, 1]), amap) * det
            assert lhs == rhs


# -- q-det construction --------------------------------------------------------

def test_qdet_geometric_row():
    # Q = 1 - f(y) x with f = 1 + 2y; block = {x}; k = 0 picks 1/Q
    Q = L("1-(1+2*y)*x")
    got = qdet_construct(Q, (0, 0), [], x_block=(0,))
    assert got == R("1", "1-(1+2*y)*x")


def test_qdet_lucas_xy():
    Q = L("1-x-x^2-y")
    f = R("x^2", "1-x-x^2", nvars=2)
    got = qdet_construct(Q, (0, 0), [f], x_block=(1,))
    assert got == R("2-x", "1-x-x^2-y")


def test_qdet_empty_determinant():
    Q = L("1-x-y-x*y")
    got = qdet_construct(Q, (1, 0), [], x_block=(0, 1))
    assert got == R("-x", "1-x-y-x*y") or got == R("x", "-(1-x-y-x*y)")


def test_qdet_rejects_nonlinear_block():
    with pytest.raises(ValueError):
        qdet_construct(L("1-x^2-y"), (0, 0), [], x_block=(0,))


# -- face restriction ----------------------------------------------------------

def test_restrict_full_face():
    F = R("1+x", "1-x-y-x*y")
    full = next(f for f in faces(newton_polytope(F.den)) if f.dim == 2)
    assert restrict_face(F, full) == F


def test_restrict_delannoy_edge():
    F = R("1", "1-x-y-x*y")
    edge = next(
        f
        for f in faces(newton_polytope(F.den))
        if f.dim == 1 and set(f.members) == {(0, 0), (1, 0)}
    )
    assert restrict_face(F, edge) == R("1", "1-x", nvars=2)


def test_restrict_block_face_gives_coefficient_quotient():
    # the face of a block exponent recovers p_k / q_k
    F = R("2-x", "1-x-x^2-y")
    NP = newton_polytope(F.den)
    face = next(
        f for f in faces(NP) if f.dim == 1 and all(m[1] == 0 for m in f.members)
    )
    assert restrict_face(F, face) == R("2-x", "1-x-x^2", nvars=2)


def test_restrict_rejects_foreign_face():
    F = R("1", "1-x-y")
    fake = Face((1, 0), 5, ((5, 0),), 0)
    with pytest.raises(ValueError):
        restrict_face(F, fake)


# -- toroidal substitutions ------------------------------------------------------

def test_toroidal_identity():
    F = R("2-x", "1-x-x^2")
    assert toroidal_substitute(F, ToroidalMap(((1,),))) == F


def test_toroidal_lucas_diagonal():
    F = R("2-x", "1-x-x^2")
    A = ToroidalMap(((1,), (1,)))
    assert toroidal_substitute(F, A) == R("2-x*y", "1-x*y-x^2*y^2")


def test_toroidal_half_integer_lattice():
    A = ToroidalMap(
        ((Fraction(3, 2), Fraction(1, 2)),
         (Fraction(1, 2), Fraction(1, 2)),
         (Fraction(1, 2), Fraction(3, 2)))
    )
    p = L("1+x^2+y^2+3*x*y")
    assert toroidal_substitute(p, A) == L(
        "1+x1^3*x2*x3+x1*x2*x3^3+3*x1^2*x2*x3^2", nvars=3
    )
    with pytest.raises(ValueError):
        toroidal_substitute(L("1+x"), ToroidalMap(((Fraction(1, 2),),)))


def test_toroidal_rank_validation():
    with pytest.raises(ValueError):
        ToroidalMap(((1, 1), (1, 1)))


def test_toroidal_coefficient_transport():
    F = R("2-x", "1-x-x^2")
    A = ToroidalMap(((1,), (1,)))
    G = toroidal_substitute(F, A)
    sf = expand_at_vertex(F, (0,), 12)
    sg = expand_at_vertex(G, (0, 0), 24)
    for (k,), c in sf.coeffs.items():
        assert sg[(k, k)] == c
    for e in sg.support():
        assert e[0] == e[1]  # off the image lattice everything vanishes


def test_toroidal_gauss_verdict_agreement():
    F = R("2-x", "1-x-x^2")
    G = R("2-x*y", "1-x*y-x^2*y^2")
    cfg = GaussCheckConfig(primes=(2, 3, 5, 7))
    rf = check_gauss(F, (0,), cfg, bound=49)
    rg = check_gauss(G, (0, 0), cfg, bound=60)
    for p in (2, 3, 5, 7):
        assert rf.verdict(p) == rg.verdict(p) == HOLDS


# -- substitutions ----------------------------------------------------------------

def test_substitute_univariate_identity():
    f = R("1+x*y", "1-x-y")
    gs = [R("x"), R("x")]
    assert substitute_univariate(f, gs) == f


def test_substitute_univariate_square():
    got = substitute_univariate(R("1", "1-x"), [R("x^2")])
    assert got == R("2", "1-x^2")


def test_substitute_univariate_moebius():
    got = substitute_univariate(R("1", "1-x"), [R("x", "1+x")])
    assert got == R("1")


def test_substitute_multivariate_trivial_jacobian():
    f = R("1", "1-x-y")
    gs = [R("x", nvars=2), R("y", nvars=2)]
    assert substitute_multivariate(f, gs) == f


def test_substitute_multivariate_triangular():
    one = R("1", nvars=2)
    got = substitute_multivariate(one, [R("x*y", nvars=2), R("y", nvars=2)])
    assert got == one


def test_substitute_consistency_n1():
    f = R("1", "1-2*x")
    g = R("x+x^2")
    assert substitute_univariate(f, [g]) == substitute_multivariate(f, [g])


def test_substitute_rejects_zero():
    with pytest.raises(ZeroDenominator):
        substitute_univariate(R("1", "1-x"), [R("0")])


def test_substitute_rejects_vanishing_denominator():
    # substituting the constant 1 into 1/(1-z) kills the denominator
    with pytest.raises(ZeroDenominator):
        substitute_univariate(R("1", "1-x"), [R("1")])


# -- the univariate decision -------------------------------------------------------

def test_minton_positive_two_rational_poles():
    v = minton_decide(R("1+2*x-x^2", "1-x^2"))
    assert v.has_gauss
    assert v.decomposition.constant == 1
    terms = {u.to_string(): c for c, u in v.decomposition.terms}
    assert terms == {"1 - x1": Fraction(-1), "1 + x1": Fraction(1)}
    assert v.decomposition.recombine() == R("1+2*x-x^2", "1-x^2")


def test_minton_lucas():
    v = minton_decide(R("2-x", "1-x-x^2"))
    assert v.has_gauss
    assert v.decomposition.constant == 2
    assert [(c, u.to_string()) for c, u in v.decomposition.terms] == [
        (Fraction(-1), "1 - x1 - x1^2")
    ]


def test_minton_newton_failure():
    v = minton_decide(R("x-2", "x+x^2"))
    assert not v.has_gauss and v.reason == NEWTON_FAILS


def test_minton_double_pole():
    v = minton_decide(R("1", "(1-x)^2"))
    assert not v.has_gauss and v.reason == NON_SIMPLE_POLE
    # coefficient oracle: coefficients are k+1; p = 5 fails plainly
    s = expand_at_vertex(R("1", "(1-x)^2"), (0,), 30)
    assert all(s[(k,)] == k + 1 for k in range(20))
    rep = check_gauss(R("1", "(1-x)^2"), (0,), GaussCheckConfig(primes=(5,)), bound=30)
    assert rep.verdict(5) == FAILS


def test_minton_irrational_residues():
    v = minton_decide(R("1", "1-x-x^2"))
    assert not v.has_gauss and v.reason == IRRATIONAL_RESIDUE


def test_minton_rejects_zero():
    with pytest.raises(ValueError):
        minton_decide(R("0", "1-x"))


def test_minton_constant_and_polynomial_inputs():
    v = minton_decide(R("7"))
    assert v.has_gauss and v.decomposition.terms == ()
    v2 = minton_decide(R("x"))
    assert not v2.has_gauss and v2.reason == NEWTON_FAILS


def test_minton_matches_brute_force_sample():
    rng = random.Random(424242)
    primes = range(2, 51)
    agree = 0
    for _ in range(400):
        q = [rng.choice([c for c in range(-3, 4) if c])] + [
            rng.randint(-3, 3) for _ in range(4)
        ]
        p = [rng.randint(-3, 3) for _ in range(5)]
        if not any(p):
            continue
        F = RationalFunction(
            LaurentPolynomial.from_univariate(p), LaurentPolynomial.from_univariate(q)
        )
        if F.den.exponent_range(0)[0] != 0 or F.den[(0,)] == 0:
            continue
        verdict = minton_decide(F)
        empirical, _ = brute_force_univariate_gauss(F, primes, nmax=200)
        assert verdict.has_gauss == empirical
        if verdict.has_gauss:
            assert verdict.decomposition.recombine() == F
        agree += 1
    assert agree > 300


# -- linear and mostly-linear classifications ----------------------------------------

def test_classify_linear_examples():
    apery_q = L("(1-x1-x2)*(1-x3-x4)-x1*x2*x3*x4")
    assert classify_linear(L("1", nvars=4), apery_q)
    delannoy_q = L("1-x-y-x*y")
    assert classify_linear(L("x*y", nvars=2), delannoy_q)
    assert not classify_linear(L("x^2", nvars=2), delannoy_q)


def test_classify_linear_rejects_nonmultilinear():
    with pytest.raises(ValueError):
        classify_linear(L("1", nvars=1), L("1-x^2"))


def test_classify_linear_matches_empirical():
    rng = random.Random(8)
    cfg = GaussCheckConfig(primes=(2, 3, 5, 7, 11, 13))
    for _ in range(12):
        qterms = {(0, 0): 1}
        for e in ((1, 0), (0, 1), (1, 1)):
            c = rng.randint(-3, 3)
            if c:
                qterms[e] = c
        Q = LaurentPolynomial(2, qterms)
        pterms = {
            (rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-2, 2)
            for _ in range(rng.randint(1, 3))
        }
        P = LaurentPolynomial(2, pterms)
        if P.is_zero():
            continue
        F = RationalFunction(P, Q)
        verdict = classify_linear(P, Q)
        rep = check_gauss(F, (0, 0), cfg, bound=50)
        # a true verdict promises congruences away from finitely many
        # exceptional primes; at this scale those divide a coefficient of Q
        exceptional = excluded_primes(F, (0, 0)) | {
            p for p in cfg.primes for c in Q.coefficient_dict().values()
            if c.numerator % p == 0
        }
        if verdict:
            assert all(e.prime in exceptional for e in rep.failures())
        else:
            assert any(
                e.verdict == FAILS for e in rep.entries if e.prime not in exceptional
            )


def test_classify_mostly_linear_gessel():
    F = R("1", "(1-3*x)*(1-y-3*x+3*x^2)")
    v = classify_mostly_linear(F.num, F.den)
    assert v.overall
    inner = v.per_k[(0,)]
    assert inner.has_gauss
    terms = {u.to_string(): c for c, u in inner.decomposition.terms}
    assert terms == {"1 - 3*x1": Fraction(-3), "1 - 3*x1 + 3*x1^2": Fraction(1)}


def test_classify_mostly_linear_lucas_xy():
    F = R("2-x", "1-x-x^2-y")
    assert classify_mostly_linear(F.num, F.den).overall


def test_classify_mostly_linear_block_mismatch():
    # numerator carries a block monomial that the denominator misses
    v = classify_mostly_linear(L("y", nvars=2), L("1-x^2", nvars=2), z_var=0)
    assert not v.overall
    assert v.per_k[(1,)] == "q_zero_p_nonzero"


def test_classify_mostly_linear_even_denominator():
    v = classify_mostly_linear(L("1", nvars=2), L("1-x^2-y"), z_var=0)
    assert v.overall
    # certificate coefficients are -1/2, so 2 is an exceptional prime;
    # all odd primes must hold empirically
    F = R("1", "1-x^2-y")
    rep = check_gauss(F, (0, 0), GaussCheckConfig(primes=(3, 5, 7)), bound=40)
    assert rep.all_hold()


def test_classify_mostly_linear_rejects_two_nonlinear():
    with pytest.raises(ValueError):
        classify_mostly_linear(L("1", nvars=2), L("1-x^2-y^2"))


# -- planar degree-2 classification ---------------------------------------------------

def test_degree2_all_edges_rational():
    Q = L("1+3*x+3*y+2*x^2+5*x*y+2*y^2")
    r = classify_degree2(L("1", nvars=2), Q)
    assert r.status == "classified"
    assert r.dim_VQ == 6 and len(r.edge_monomials) == 3


def test_degree2_no_rational_edges():
    Q = L("1+x^2+y^2+3*x*y")
    r = classify_degree2(L("x", nvars=2), Q)
    assert r.dim_VQ == 3 and r.edge_monomials == ()
    assert r.contains is False
    rq = classify_degree2(Q, Q)
    assert rq.contains is True


def test_degree2_membership_matches_basis():
    Q = L("1+3*x+3*y+2*x^2+5*x*y+2*y^2")
    r = classify_degree2(Q.euler(0), Q)
    assert r.contains is True


def test_degree2_reduced_when_origin_missing():
    Q = L("x+y+x^2+x*y+y^2")
    r = classify_degree2(L("x", nvars=2), Q)
    assert r.status == "reduced"
    # the reported substitution makes the problem linear in the first variable
    P2, Q2 = r.reduced_pair
    assert all(e[0] in (0, 1) for e in Q2.support())


def test_degree2_multilinear_goes_to_reduction():
    r = classify_degree2(L("1", nvars=2), L("1-x-y-x*y"))
    assert r.status == "reduced"


def test_degree2_rejects_wrong_degree():
    with pytest.raises(ValueError):
        classify_degree2(L("1", nvars=2), L("1-x-y"))
    with pytest.raises(ValueError):
        classify_degree2(L("1", nvars=2), L("1-x^3-y"))
