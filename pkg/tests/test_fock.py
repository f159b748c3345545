import pytest

from agtcheck import MultiPartition, make_params
from agtcheck.fock import (FieldExpr, FockVector, agt_compare, agt_json, boson_action,
                           central_charge_Q, central_charge_k, contravariant_form, current,
                           fock_relations, fock_space, two_boson_D02, freefield_identity_checks,
                           freefield_rep, heisenberg_fock, highest_weight, highest_weight_checks,
                           highest_weight_value, leading_symbol, miura, rho_current,
                           top_order_part, total_current, transport_check, vacuum,
                           virasoro_check, w_mode, whittaker)
from agtcheck.linalg import LinearOperator, commutator, first_difference, scalar_operator, vec_axpy
from agtcheck.partitions import enumerate_multipartitions
from agtcheck.shc import compare_operators
from support import assert_all_pass


def same(ctx, a, b, n_max):
    for n in range(n_max + 1):
        diff = first_difference(a, b, enumerate_multipartitions(ctx.r, n))
        assert diff is None, (n, diff)


# -- bosons --------------------------------------------------------------------------

def test_boson_examples(ctx2):
    vac = vacuum(ctx2)
    up = boson_action(ctx2, 1, -1, vac)
    assert up.grade == 1
    assert dict(boson_action(ctx2, 1, 1, up)) == {k: c / ctx2.kappa for k, c in vac.items()}
    assert dict(boson_action(ctx2, 1, 0, vac)) == {k: -ctx2.eps[0] / ctx2.kappa for k in vac}
    assert dict(boson_action(ctx2, 2, 3, vac)) == {}


def test_highest_weight_shift(ctx2):
    b1, b2 = highest_weight(ctx2)
    assert b2 - b1 == (ctx2.eps[0] - ctx2.eps[1] + ctx2.xi) / ctx2.kappa


def test_fock_vector_grade_check(ctx1):
    with pytest.raises(ValueError):
        FockVector(2, {MultiPartition([(1,)]): 1})


def test_heisenberg_exact(ctx2):
    assert_all_pass(heisenberg_fock(ctx2, 4, 3))


def test_heisenberg_point(pt3):
    assert_all_pass(heisenberg_fock(pt3, 3, 2))


def test_bad_colour(ctx2):
    with pytest.raises(ValueError):
        fock_space(ctx2).mode(3, 1)


# -- Miura currents -------------------------------------------------------------------

def test_low_currents(ctx2):
    assert miura(ctx2, 1) == total_current(ctx2)
    assert miura(ctx2, 0) == FieldExpr({(): ctx2.one}, "b")
    with pytest.raises(ValueError):
        miura(ctx2, 3)


def test_W2_rank_two(ctx2):
    k, r = ctx2.kappa, 2
    Q = -ctx2.xi / k
    squares = current(ctx2, 1) * current(ctx2, 1) + current(ctx2, 2) * current(ctx2, 2)
    J = total_current(ctx2)
    expected = squares.scale(k / 2) - (J * J).scale(k / (2 * r)) + rho_current(ctx2, 1).scale(k * Q)
    assert miura(ctx2, 2) == expected


@pytest.mark.parametrize("d", [2, 3])
def test_leading_symbol(ctx3, d):
    assert top_order_part(miura(ctx3, d)) == leading_symbol(ctx3, d)


def test_leading_symbol_rank_two(ctx2):
    assert top_order_part(miura(ctx2, 2)) == leading_symbol(ctx2, 2)


def test_field_basis_mismatch(ctx2):
    with pytest.raises(ValueError):
        current(ctx2, 1, 0, "h") + current(ctx2, 1, 0, "b")


# -- modes and the Virasoro algebra --------------------------------------------------------

def test_highest_weight_laws(ctx2):
    assert_all_pass(highest_weight_checks(ctx2, 3))


def test_highest_weight_laws_point(pt3):
    assert_all_pass(highest_weight_checks(pt3, 3))


def test_central_charges(ctx2, ctx3):
    k, xi = ctx2.kappa, ctx2.xi
    assert central_charge_Q(ctx2) == 1 - 6 * xi ** 2 / k
    assert central_charge_k(ctx2) == central_charge_Q(ctx2)
    assert central_charge_k(ctx3) == central_charge_Q(ctx3)


def test_virasoro_l2_on_vacuum(ctx2):
    vac = vacuum(ctx2)
    lhs = commutator(w_mode(ctx2, 2, 2), w_mode(ctx2, 2, -2)).apply(vac)
    w20 = highest_weight_value(ctx2, 2)
    expected = {k: (4 * w20 + central_charge_k(ctx2) / 2) * c for k, c in vac.items()}
    assert lhs == expected


def test_virasoro_l1(ctx2):
    same(ctx2, commutator(w_mode(ctx2, 2, 1), w_mode(ctx2, 2, -1)),
         w_mode(ctx2, 2, 0).scaled(ctx2.scalar(2)), 2)


def test_virasoro_suite(ctx2):
    assert_all_pass(virasoro_check(ctx2, 2, 3))


def test_virasoro_suite_rank_three_point(pt3):
    assert_all_pass(virasoro_check(pt3, 2, 2))


# -- free-field representation ----------------------------------------------------------------

def test_D02_kills_vacuum(ctx2):
    assert freefield_rep(ctx2).D(0, 2).apply(vacuum(ctx2)) == {}


def test_two_boson_D02_matches_coproduct(ctx2):
    same(ctx2, two_boson_D02(ctx2), freefield_rep(ctx2).D(0, 2), 3)
    with pytest.raises(ValueError):
        two_boson_D02(make_params(1))


def test_coproduct_relations(ctx2):
    assert_all_pass(fock_relations(ctx2, 3, 2))


def test_freefield_identities(ctx2):
    assert_all_pass(freefield_identity_checks(ctx2, 2, 3))


def test_H0_rank_one(ctx1):
    chart = ctx1.chart_x1()
    space = fock_space(chart)
    k = chart.kappa
    (b0,) = highest_weight(chart)

    def col(mp):
        out = {}
        start = {mp: chart.one}
        for l in sorted(set(mp[0])):
            vec_axpy(out, k, space.apply_word([(1, -l), (1, l)], start))
        vec_axpy(out, k * b0 * b0 / 2, start)
        return out

    expected = LinearOperator(col, 0, "H0")
    assert_all_pass(compare_operators(chart, "H0", freefield_rep(chart).H(0), expected, 4))


# -- contravariant form, Whittaker vector and AGT ------------------------------------------------

def test_form_grade_zero(ctx2):
    assert contravariant_form(ctx2, 0).matrix == [[1]]


def test_form_grade_one_rank_one(ctx1):
    key = MultiPartition([(1,)])
    assert contravariant_form(ctx1, 1).entry(key, key) == -1 / ctx1.kappa


def test_form_rank_two_is_consistent_and_symmetric(ctx2):
    for n in range(3):
        assert contravariant_form(ctx2, n).is_symmetric()


def test_whittaker_rank_one(ctx1):
    G1 = whittaker(ctx1, 1)
    assert dict(G1) == {MultiPartition([(1,)]): ctx1.kappa / ctx1.x}


def test_whittaker_rank_two_grade_one(ctx2):
    G1 = whittaker(ctx2, 1)
    vac = vacuum(ctx2)
    assert w_mode(ctx2, 2, 1).apply(G1) == {k: c / (ctx2.x * ctx2.y) for k, c in vac.items()}
    assert w_mode(ctx2, 1, 1).apply(G1) == {}
    assert len(G1) == 2


def test_agt_grade_zero(ctx2):
    report = agt_compare(ctx2, 0)
    assert report["sigma"] == 1
    assert report["grades"] == [{"n": 0, "ratio": 1, "match": True}]


def test_agt_rank_one(ctx1):
    report = agt_compare(ctx1, 3)
    assert report["sigma"] == ctx1.y ** 2 / ctx1.x ** 2
    assert all(g["match"] for g in report["grades"])
    assert agt_json(ctx1, 1)["sigma"] == "y^2/(x^2)"


def test_agt_rank_two_low_grades(ctx2):
    report = agt_compare(ctx2, 2)
    assert report["sigma"] == 1
    assert all(g["match"] for g in report["grades"])


def test_transport_rank_one(ctx1):
    assert_all_pass(transport_check(ctx1, 3))
    with pytest.raises(ValueError):
        transport_check(make_params(2), 1)


def test_scalar_operator_helper(ctx1):
    op = scalar_operator(ctx1.kappa)
    key = MultiPartition([(1,)])
    assert op.column(key) == {key: ctx1.kappa}
