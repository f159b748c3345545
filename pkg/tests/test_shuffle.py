from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from agtcheck import MultiPartition, make_params
from agtcheck.localization import model
from agtcheck.scalars import ExactField
from agtcheck.shuffle import (NotRegularError, ShufflePoly, box_roots, check_associativity,
                              check_homomorphism, check_matrix_elements, check_shuffle_iso,
                              check_tau, check_wilson, composition_entry, covers, gamma_coeff,
                              monomial, shuffle_monomial, shuffle_operator, shuffle_product,
                              shuffle_ring, tau_automorphism, theta, unit, varpi, varpi_entry)
from agtcheck.partitions import enumerate_multipartitions
from support import assert_all_pass

EMPTY1 = MultiPartition([()])


def test_theta0_squared(ctx1):
    ring = shuffle_ring(ctx1)
    x, y, (z1, z2) = ring.x, ring.y, ring.z[:2]
    expected = 2 * (x * y - (x + y) ** 2) + 2 * (z1 - z2) ** 2
    assert (theta(ctx1, 0) * theta(ctx1, 0)).poly == expected


def test_theta0_squared_json(ctx1):
    doc = shuffle_monomial(ctx1, (0, 0)).to_json()
    assert doc == {"n": 2, "terms": [
        {"m": [0, 0], "coeff": "-2*x^2 - 2*x*y - 2*y^2"},
        {"m": [1, 1], "coeff": "-4"},
        {"m": [2, 0], "coeff": "2"}]}


@pytest.mark.parametrize("l", range(4))
def test_unit(ctx1, l):
    assert theta(ctx1, l) * unit(ctx1) == theta(ctx1, l)
    assert unit(ctx1) * theta(ctx1, l) == theta(ctx1, l)


def _kernel(field, w):
    x, y = field.gens[:2]
    return (x + y + w) * (x - w) * (y - w) / w


@pytest.mark.parametrize("a,b", [(0, 0), (0, 1), (1, 0), (1, 2), (2, 2)])
def test_two_variable_product_against_direct_sum(ctx1, a, b):
    field = ExactField(0, names=("x", "y", "z1", "z2"))
    x, y, z1, z2 = field.gens
    direct = _kernel(field, z1 - z2) * z1 ** a * z2 ** b + _kernel(field, z2 - z1) * z2 ** a * z1 ** b
    assert direct.is_polynomial()
    got = shuffle_product(theta(ctx1, a), theta(ctx1, b))
    ring = got.ring
    values = [Fraction(3, 7), Fraction(-5, 11), Fraction(2, 3), Fraction(13, 5)]
    point = make_params(1, "point", (values[0], values[1], 0))
    pring = shuffle_ring(point)
    pval = pring.evaluate(shuffle_product(theta(point, a), theta(point, b)).poly, values[2:])
    assert direct.evaluate(values) == pval
    assert got.is_symmetric() and ring is shuffle_ring(ctx1)


def test_associativity_instance(ctx1):
    t0 = theta(ctx1, 0)
    assert (t0 * t0) * t0 == t0 * (t0 * t0)


@settings(max_examples=15)
@given(st.lists(st.integers(min_value=0, max_value=2), min_size=3, max_size=3))
def test_associativity_random(ls):
    ctx = make_params(2)
    a, b, c = (theta(ctx, l) for l in ls)
    left = (a * b) * c
    assert left == a * (b * c)
    assert left.is_symmetric()


def test_weight_two_elements_are_symmetric_and_noncommutative(ctx1):
    p, q = theta(ctx1, 0), theta(ctx1, 1)
    assert (p * q).is_symmetric()
    assert p * q != q * p


def test_symmetry_is_enforced(ctx1):
    ring = shuffle_ring(ctx1)
    with pytest.raises(ValueError):
        ShufflePoly(ring, 2, ring.z[0])
    with pytest.raises(ValueError):
        theta(ctx1, -1)


def test_too_many_variables(ctx1):
    with pytest.raises(ValueError):
        shuffle_monomial(ctx1, [0] * 7)


# -- twisted symmetrization ------------------------------------------------------------

def _g(x, y, w):
    return (w + x) * (w + y) / (w * (w + x + y))


@pytest.mark.parametrize("l", range(4))
def test_varpi_one_variable(pt1, l):
    rat = varpi(pt1, monomial(pt1, (l,)), 1)
    assert rat.evaluate([Fraction(5, 3)]) == Fraction(5, 3) ** l


def test_varpi_two_variables(pt1):
    x, y = pt1.x, pt1.y
    rat = varpi(pt1, monomial(pt1, ()), 2)
    for z1, z2 in [(Fraction(1, 3), Fraction(7, 2)), (Fraction(-2), Fraction(5, 9))]:
        w = z1 - z2
        assert rat.evaluate([z1, z2]) == _g(x, y, w) + _g(x, y, -w)


def test_varpi_regular_at_row_of_two(ctx1):
    lam = MultiPartition([(2,)])
    roots = box_roots(ctx1, EMPTY1, lam)
    rat = varpi(ctx1, monomial(ctx1, ()), 2)
    assert rat.is_regular_at(roots)
    x, y = ctx1.x, ctx1.y
    assert rat.evaluate(roots) == 2 * (x + y) / (2 * x + y)


def test_varpi_pole_is_reported(ctx1):
    rat = varpi(ctx1, monomial(ctx1, ()), 2)
    bad = [ctx1.zero, ctx1.x + ctx1.y]
    assert not rat.is_regular_at(bad)
    with pytest.raises(NotRegularError):
        rat.evaluate(bad)


# -- the class a_{mu,lambda} -----------------------------------------------------------

def test_gamma_single_box(ctx1):
    assert gamma_coeff(ctx1, EMPTY1, MultiPartition([(1,)])) == 1 / (ctx1.x * ctx1.y)


def test_gamma_rejects_bad_pairs(ctx1):
    with pytest.raises(ValueError):
        gamma_coeff(ctx1, EMPTY1, EMPTY1)
    with pytest.raises(ValueError):
        gamma_coeff(ctx1, MultiPartition([(2,)]), MultiPartition([(1, 1)]))


def test_gamma_is_nonzero(ctx2):
    for k in range(3):
        for mu in enumerate_multipartitions(2, k):
            for n in (1, 2):
                for lam in covers(mu, n):
                    assert gamma_coeff(ctx2, mu, lam) != 0


@pytest.mark.parametrize("l", range(4))
def test_single_raising_entries(ctx2, l):
    f = model(ctx2).f(1, l)
    for k in range(3):
        for mu in enumerate_multipartitions(2, k):
            col = f.column(mu)
            for lam in covers(mu, 1):
                (root,) = box_roots(ctx2, mu, lam)
                assert col.get(lam, 0) == root ** l * gamma_coeff(ctx2, mu, lam)


@pytest.mark.parametrize("ls", [(0, 0), (1, 0), (0, 1), (2, 1), (0, 0, 0)])
def test_composition_entries(ctx1, ls):
    for k in range(3):
        for mu in enumerate_multipartitions(1, k):
            for lam in covers(mu, len(ls)):
                assert composition_entry(ctx1, ls, mu, lam) == varpi_entry(ctx1, ls, mu, lam)


def test_matrix_elements_rank_one(ctx1):
    assert_all_pass(check_matrix_elements(ctx1, 2, 2))


def test_shuffle_operator_generators(ctx1):
    m = model(ctx1)
    op = shuffle_operator(ctx1, theta(ctx1, 1))
    for mu in enumerate_multipartitions(1, 2):
        assert op.column(mu) == m.f(1, 1).column(mu)


def test_products_become_reversed_compositions(ctx1):
    m = model(ctx1)
    op = shuffle_operator(ctx1, shuffle_monomial(ctx1, (0, 1)))
    composed = m.f(1, 1) @ m.f(1, 0)
    for k in range(3):
        for mu in enumerate_multipartitions(1, k):
            assert op.column(mu) == {lam: c for lam, c in composed.column(mu).items() if c}


def test_homomorphism_rank_one(ctx1):
    assert_all_pass(check_homomorphism(ctx1, 3, 1))


# -- tau and Wilson lines --------------------------------------------------------------

def test_tau_examples(ctx1):
    ring = shuffle_ring(ctx1)
    u, v = ring.u, ring.v
    assert tau_automorphism(u, theta(ctx1, 1)) == theta(ctx1, 1) + theta(ctx1, 0).scaled(u)
    t2 = theta(ctx1, 2)
    assert tau_automorphism(u, tau_automorphism(v, t2)) == tau_automorphism(u + v, t2)
    assert tau_automorphism(ctx1.x, theta(ctx1, 1)) == theta(ctx1, 1) + theta(ctx1, 0).scaled(ctx1.x)


def test_tau_is_multiplicative(ctx1):
    ring = shuffle_ring(ctx1)
    P = shuffle_monomial(ctx1, (1, 0))
    Q = theta(ctx1, 2)
    assert tau_automorphism(ring.u, P * Q) == tau_automorphism(ring.u, P) * tau_automorphism(ring.u, Q)


def test_suites_rank_one(ctx1):
    assert_all_pass(check_associativity(ctx1, 2))
    assert_all_pass(check_tau(ctx1, 3))
    assert_all_pass(check_wilson(ctx1, 3, 2))


def test_full_suite_point_mode(pt1):
    assert_all_pass(check_shuffle_iso(pt1, 3, 3, 2))


def test_point_mode_rank_two():
    ctx = make_params(2, "point")
    assert_all_pass(check_matrix_elements(ctx, 3, 2, 1))


def test_wrong_orientation_is_caught(ctx1):
    m = model(ctx1)
    op = shuffle_operator(ctx1, shuffle_monomial(ctx1, (0, 1)))
    forward = m.f(1, 0) @ m.f(1, 1)
    mu = MultiPartition([(1,)])
    assert op.column(mu) != {lam: c for lam, c in forward.column(mu).items() if c}


def test_permutation_invariance_of_varpi(ctx1):
    ring = shuffle_ring(ctx1)
    rat = varpi(ctx1, monomial(ctx1, (2, 1, 0)), 3)
    for images in permutations(range(3)):
        assert ring.permute(rat.num, images) * rat.den == rat.num * ring.permute(rat.den, images)
