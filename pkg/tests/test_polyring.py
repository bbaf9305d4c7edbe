"""Polynomial layer: order, division, S-pairs, graded dimensions, text I/O.

The monomial order is cross-checked against sympy's graded reverse
lexicographic key on dense exponent vectors (an independent implementation).
"""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinlaw import polyring as pr
from spinlaw import weightlattice as wl

W = wl.parse_weight

X0 = pr.variable(0)
X1 = pr.variable(1)
X2 = pr.variable(2)


# ------------------------------------------------------------- monomials


def test_monomial_basics():
    m = pr.monomial([4, 0, 4])
    assert m == ((0, 1), (4, 2))
    assert pr.monomial_degree(m) == 3
    assert pr.monomial_mul(m, pr.monomial([0])) == ((0, 2), (4, 2))
    assert pr.monomial_divides(pr.monomial([4]), m)
    assert not pr.monomial_divides(pr.monomial([4, 4, 4]), m)
    assert pr.monomial_div(m, pr.monomial([0, 4])) == ((4, 1),)
    assert pr.monomial_lcm(pr.monomial([0, 0]), m) == ((0, 2), (4, 2))
    with pytest.raises(ValueError):
        pr.monomial_div(pr.monomial([0]), pr.monomial([2]))


KEYS = [0, 2, 4, 6, 7, 9, 13, 21]


def sparse_to_dense(m, keys):
    d = dict(m)
    return tuple(d.get(k, 0) for k in keys)


from sympy.polys.orderings import grevlex as _sympy_grevlex


def sympy_grevlex_cmp(a, b, keys):
    """Independent order oracle: sympy's grevlex key on dense vectors.

    sympy lists exponents with the largest generator first, so the dense
    vectors are built over `keys` in descending order.
    """
    desc = sorted(keys, reverse=True)
    ka = _sympy_grevlex(sparse_to_dense(a, desc))
    kb = _sympy_grevlex(sparse_to_dense(b, desc))
    return (ka > kb) - (ka < kb)


@settings(max_examples=300, deadline=None)
@given(
    st.lists(st.sampled_from(KEYS), max_size=6),
    st.lists(st.sampled_from(KEYS), max_size=6),
)
def test_cmp_matches_sympy_grevlex(la, lb):
    a, b = pr.monomial(la), pr.monomial(lb)
    assert pr.cmp_monomials(a, b) == sympy_grevlex_cmp(a, b, KEYS)


def test_cmp_reference_examples():
    # on equal degree the monomial missing the bottom variable is larger
    x, y = pr.monomial([0]), pr.monomial([2])
    assert pr.cmp_monomials(pr.monomial([0, 2]), pr.monomial([2, 2])) == -1
    assert pr.cmp_monomials(x, y) == -1
    assert pr.cmp_monomials(pr.monomial([0, 0]), y) == 1  # degree wins
    assert pr.cmp_monomials(x, x) == 0


# ------------------------------------------------- tips on typed quadrics


GAMMA5_TEXT = (
    "l{(0)^0} * l{(5)^0} + l{(14)^0} * l{(23)^0}"
    " - l{(13)^0} * l{(24)^0} + l{(12)^0} * l{(34)^0}"
)
GAMMA2STAR_TEXT = (
    "-l{(1)^0} * l{(12)^0} + l{(3)^0} * l{(23)^0}"
    " - l{(4)^0} * l{(24)^0} + l{(5)^0} * l{(25)^0}"
)


def test_tip_of_reference_quadrics_is_the_incomparable_pair():
    g5 = pr.parse_poly(GAMMA5_TEXT)
    assert pr.tip(g5) == pr.monomial_from_weights([W("(14)"), W("(23)")])
    assert pr.lc(g5) == 1
    g2s = pr.parse_poly(GAMMA2STAR_TEXT)
    assert pr.tip(g2s) == pr.monomial_from_weights([W("(25)"), W("(5)")])
    assert pr.lc(g2s) == 1


# ------------------------------------------------------------- arithmetic


def polys(keys=KEYS[:4]):
    monos = st.lists(st.sampled_from(keys), max_size=3).map(pr.monomial)
    coeffs = st.fractions(
        min_value=-4, max_value=4, max_denominator=3
    ).filter(lambda c: c != 0)
    return st.dictionaries(monos, coeffs, max_size=5).map(pr.Poly)


@settings(max_examples=200)
@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert (f + g) - g == f
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert 2 * f == f + f
    assert f + (-f) == pr.Poly.zero()


def test_exactness():
    f = Fraction(1, 3) * X0
    assert (3 * f)[pr.monomial([0])] == 1


# --------------------------------------------------------------- S-pairs


def test_s_polynomial_small_example():
    f = X2 * X2 - X0 * X0  # tip x2^2 (fewer at the bottom variable wins)
    g = X0 * X2  # tip x0*x2
    s = pr.s_polynomial(f, g)
    # T = x0 x2^2:  lc(f) * x2 * g - lc(g) * x0 * f = x0^3
    assert s == X0 * X0 * X0


@settings(max_examples=150)
@given(polys(), polys())
def test_s_polynomial_cancels_lcm(f, g):
    if f.is_zero() or g.is_zero():
        return
    big = pr.monomial_lcm(pr.tip(f), pr.tip(g))
    s = pr.s_polynomial(f, g)
    for m in s.coeffs:
        assert pr.cmp_monomials(m, big) == -1


# --------------------------------------------------------------- reduce


def test_reduce_example_with_tracking():
    g1 = X2 * X2 - X0 * X0  # tip x2^2
    g2 = X0 * X2
    f = X0 * X2 * X2
    r, q = pr.reduce(f, [g1, g2], track=True)
    assert r == X0 * X0 * X0
    rebuilt = q[0] * g1 + q[1] * g2 + r
    assert rebuilt == f


@settings(max_examples=150)
@given(polys())
def test_reduce_leaves_no_divisible_monomial(f):
    basis = [X0 * X0 - X2 * X2, X0 * X2]
    r, q = pr.reduce(f, basis, track=True)
    tips = [pr.tip(g) for g in basis]
    for m in r.coeffs:
        assert not any(pr.monomial_divides(t, m) for t in tips)
    assert q[0] * basis[0] + q[1] * basis[1] + r == f


# ------------------------------------------------------ buchberger_check


def test_buchberger_check_skips_coprime_tips():
    assert pr.buchberger_check([X0 * X0, X2 * X2]) == {}


def test_buchberger_check_flags_nonconfluent_pair():
    out = pr.buchberger_check([X2 * X2 - X0 * X0, X0 * X2])
    assert set(out) == {(0, 1)}
    assert out[(0, 1)] == X0 * X0 * X0  # not zero: basis is not complete


def test_buchberger_check_confluent_pair():
    out = pr.buchberger_check([X0 * X1, X1 * X2])
    assert set(out) == {(0, 1)}
    assert out[(0, 1)].is_zero()


# ------------------------------------------------- graded quotient dims


def test_graded_quotient_dim_hand_oracles():
    xy = X0 * X1
    assert [pr.graded_quotient_dim([xy], [0, 1], k) for k in range(5)] == [
        1, 2, 2, 2, 2,
    ]
    sq = [X0 * X0, X0 * X1, X1 * X1]
    assert [pr.graded_quotient_dim(sq, [0, 1], k) for k in range(4)] == [1, 2, 0, 0]
    # full polynomial ring when there are no relations
    assert pr.graded_quotient_dim([], [0, 1, 2], 3) == 10


def test_graded_quotient_dim_rejects_bad_input():
    with pytest.raises(ValueError):
        pr.graded_quotient_dim([X0 + X0 * X1], [0, 1], 2)
    with pytest.raises(ValueError):
        pr.graded_quotient_dim([X0 * X2], [0, 1], 2)


# ------------------------------------------------------------ text I/O


def test_format_reference_strings():
    assert pr.format_poly(pr.Poly.zero()) == "0"
    f = 3 * pr.lam(W("(0)")) * pr.lam(W("(0)")) - pr.lam(W("(1)@2"))
    assert pr.format_poly(f) == "3 * l{(0)^0}^2 - l{(1)^2}"
    # canonical emission orders terms with the leading monomial first
    g = pr.parse_poly(GAMMA5_TEXT)
    assert pr.format_poly(g) == (
        "l{(14)^0} * l{(23)^0} - l{(13)^0} * l{(24)^0}"
        " + l{(12)^0} * l{(34)^0} + l{(0)^0} * l{(5)^0}"
    )
    assert pr.parse_poly(pr.format_poly(g)) == g


def test_parse_accepts_weight_variants():
    assert pr.parse_poly("l{(12)@0}") == pr.parse_poly("l{(12)^0}")
    assert pr.parse_poly("l{(12)}") == pr.lam(W("(12)"))
    assert pr.parse_poly("1/2 * l{(5)^-1}") == Fraction(1, 2) * pr.lam(("(5)", -1))


@pytest.mark.parametrize("bad", ["", "l{(6)^0}", "x + y", "2 ** l{(12)^0}", "- "])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        pr.parse_poly(bad)


@settings(max_examples=200)
@given(polys(keys=[0, 2, 16, 17, 21]))
def test_format_parse_roundtrip(f):
    assert pr.parse_poly(pr.format_poly(f)) == f
