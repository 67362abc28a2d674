"""The congruence engine: valuations, exclusions, verdicts."""

import math

import pytest

from gausscong.cli import parse_rational
from gausscong.gauss import (
    EXCLUDED,
    FAILS,
    HOLDS,
    INSUFFICIENT,
    GaussCheckConfig,
    brute_force_univariate_gauss,
    check_gauss,
    check_integer_power_congruence,
    excluded_primes,
    p_adic_valuation,
)
from gausscong.polytope import GradingForm
from gausscong.series import expand_at_vertex
from gausscong.theory import restrict_face
from gausscong.polytope import faces, newton_polytope


def test_valuation_examples():
    assert p_adic_valuation(50, 5) == 2
    assert p_adic_valuation(__import__("fractions").Fraction(2, 9), 3) == -2
    assert p_adic_valuation(0, 7) == math.inf


def test_valuation_requires_prime():
    with pytest.raises(ValueError):
        p_adic_valuation(10, 6)


def test_excluded_primes_apery():
    F = parse_rational("1", "(1-x1-x2)*(1-x3-x4)-x1*x2*x3*x4")
    assert excluded_primes(F, (0, 0, 0, 0)) == frozenset()


def test_excluded_primes_vertex_coefficient():
    assert excluded_primes(parse_rational("1", "3-x"), (0,)) == {3}
    assert excluded_primes(parse_rational("1", "6-x-y"), (0, 0)) == {2, 3}


def test_excluded_primes_numerator_content():
    assert excluded_primes(parse_rational("2+2*x", "1-x-y+x*y-y^2"), (0, 0)) == {2}


def test_check_delannoy_holds():
    F = parse_rational("1", "1-x-y-x*y")
    rep = check_gauss(F, (0, 0), GaussCheckConfig(primes=(2, 3, 5)), bound=40)
    assert rep.all_hold()
    assert not rep.certified
    for e in rep.entries:
        assert e.verdict == HOLDS and e.checked > 0


def test_check_classical_powers():
    # coefficients of 1/(1-2x) are 2^n; nu_3(2^9 - 2^3) = nu_3(504) = 2
    F = parse_rational("1", "1-2*x")
    rep = check_gauss(F, (0,), GaussCheckConfig(primes=(3,), r_max=2), bound=40)
    assert rep.entry(3).verdict == HOLDS
    assert p_adic_valuation(512 - 8, 3) == 2


def test_check_failure_witness():
    F = parse_rational("x-2", "x+x^2")
    for p in (5, 7, 11):
        rep = check_gauss(F, (2,), GaussCheckConfig(primes=(p,), r_max=1), bound=40)
        e = rep.entry(p)
        assert e.verdict == FAILS
        assert e.witness["r"] == 1
        assert e.witness["valuation_found"] < e.witness["valuation_required"]


def test_check_excluded_verdict():
    F = parse_rational("1", "3-x")
    rep = check_gauss(F, (0,), GaussCheckConfig(primes=(3, 5)), bound=20)
    assert rep.entry(3).verdict == EXCLUDED
    assert rep.entry(5).verdict == HOLDS


def test_check_insufficient_truncation():
    F = parse_rational("1", "1-x")
    rep = check_gauss(F, (0,), GaussCheckConfig(primes=(13,), r_max=1), bound=5)
    assert rep.entry(13).verdict == INSUFFICIENT
    assert not rep.all_hold()


def test_strength_monotonicity():
    F = parse_rational("1", "(1-x1-x2)*(1-x3-x4)-x1*x2*x3*x4")
    s = expand_at_vertex(F, (0, 0, 0, 0), 15, GradingForm((1, 1, 1, 1)))
    for strength in (3, 2, 1):
        cfg = GaussCheckConfig(primes=(5,), r_max=1, strength=strength, m_budget=3)
        rep = check_gauss(F, (0, 0, 0, 0), cfg, series=s)
        assert rep.entry(5).verdict == HOLDS


def test_report_json_schema():
    F = parse_rational("1", "1-x-y-x*y")
    rep = check_gauss(F, (0, 0), GaussCheckConfig(primes=(2,)), bound=20)
    d = rep.to_json_dict()
    assert d["schema"] == 1 and d["certified"] is False
    assert d["reports"][0]["prime"] == 2
    assert set(d["reports"][0]) >= {"prime", "strength", "r_max", "verdict", "witness", "checked_count"}


def test_face_consistency_transport():
    # verdict data for a face restriction matches coefficient selection
    F = parse_rational("1", "1-x-y-x*y")
    NP = newton_polytope(F.den)
    edge = next(
        f for f in faces(NP) if f.dim == 1 and set(f.members) == {(0, 0), (1, 0)}
    )
    G = restrict_face(F, edge)
    ambient = expand_at_vertex(F, (0, 0), 20)
    restricted = expand_at_vertex(G, (0, 0), 20)
    h, d = edge.supporting_form, edge.offset
    selected = {
        e: c
        for e, c in ambient.coeffs.items()
        if sum(a * b for a, b in zip(h, e)) == d
    }
    assert selected == dict(restricted.coeffs)


def test_vertex_independence_delannoy():
    # congruence verdicts agree across vertices of the same denominator
    F = parse_rational("1", "1-x-y-x*y")
    cfg = GaussCheckConfig(primes=(2, 3, 5), r_max=2)
    reports = [check_gauss(F, v, cfg, bound=40) for v in ((0, 0), (1, 1))]
    for p in (2, 3, 5):
        assert len({r.verdict(p) for r in reports}) == 1
        assert reports[0].verdict(p) == HOLDS


def test_integer_power_congruence_examples():
    assert check_integer_power_congruence(2, 3, 2, 1)
    assert check_integer_power_congruence(0, 5, 3, 3)
    assert check_integer_power_congruence(1, 5, 3, 3)
    assert check_integer_power_congruence(10, 5, 1, 1)


def test_brute_force_univariate():
    ok, _ = brute_force_univariate_gauss(
        parse_rational("2-x", "1-x-x^2"), primes=range(2, 38)
    )
    assert ok
    bad, witnesses = brute_force_univariate_gauss(
        parse_rational("1", "1-x-x^2"), primes=range(2, 38)
    )
    assert not bad and witnesses
    # exceptional small primes are set aside: 1/(1-x^2) fails only at 2
    ok2, _ = brute_force_univariate_gauss(
        parse_rational("1", "1-x^2"), primes=range(2, 38)
    )
    assert ok2
