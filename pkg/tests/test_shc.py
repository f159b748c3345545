import pytest

from agtcheck import MultiPartition, make_params
from agtcheck.linalg import commutator, first_difference, scalar_operator
from agtcheck.partitions import enumerate_multipartitions
from agtcheck.scalars import ExactField
from agtcheck.shc import (E_expected, SHRepresentation, check_adjoint, heisenberg_checks,
                          interpolation_sum_closed_form, interpolation_sum, op_D_general, op_bH, representation,
                          verify_relations, whittaker_localization)
from support import assert_all_pass

EMPTY1 = MultiPartition([()])
ONE1 = MultiPartition([(1,)])


def same(ctx, a, b, n_max):
    for n in range(n_max + 1):
        diff = first_difference(a, b, enumerate_multipartitions(ctx.r, n))
        assert diff is None, (n, diff)


def test_relation_suite_rank_one(ctx1):
    assert_all_pass(verify_relations(ctx1, 3, 3))


def test_relation_suite_rank_two(ctx2):
    assert_all_pass(verify_relations(ctx2, 3, 2))


def test_relation_suite_rank_three_point(pt3):
    assert_all_pass(verify_relations(pt3, 2, 2))


def test_fault_is_detected_and_localized(ctx1):
    fault = (EMPTY1, ONE1)
    reports = verify_relations(ctx1, 2, 1, fault=fault)
    bad = [rep for rep in reports if not rep.passed]
    assert bad
    assert all(rep.witness for rep in bad)
    e_fail = [rep for rep in bad if rep.relation.startswith("[D(-1,0),D(1,0)]")]
    assert e_fail
    assert e_fail[0].witness["source"] in ("[()]", "[(1)]")


def test_report_json(ctx1):
    rep = verify_relations(ctx1, 1, 0)[0]
    doc = rep.to_json()
    assert set(doc) >= {"relation", "r", "grade", "status", "regime"}
    assert doc["status"] == "pass"


def test_D00_rejected(ctx1):
    with pytest.raises(ValueError):
        op_D_general(ctx1, 0, 0)
    with pytest.raises(ValueError):
        op_D_general(ctx1, 1, -1)


@pytest.mark.parametrize("l", [-2, -1, 1, 2])
def test_degree_operator_grades(ctx2, l):
    lhs = commutator(op_D_general(ctx2, 0, 1), op_D_general(ctx2, l, 0))
    same(ctx2, lhs, op_D_general(ctx2, l, 0).scaled(ctx2.scalar(l)), 3 - max(l, 0))


def test_recursions(ctx1):
    D = lambda l, d: op_D_general(ctx1, l, d)
    same(ctx1, D(2, 0), commutator(D(1, 1), D(1, 0)), 2)
    same(ctx1, commutator(D(2, 0), D(1, 0)), scalar_operator(ctx1.zero), 1)
    same(ctx1, D(1, 2), commutator(D(0, 3), D(1, 0)), 2)


def test_E_low_orders(ctx2):
    c, xi, k = ctx2.c, ctx2.xi, ctx2.kappa
    E0, E1, E2 = E_expected(ctx2, 2, 3)
    D01 = op_D_general(ctx2, 0, 1)
    e2_scalar = c(2) + c(1) * (1 - c(0)) * xi + c(0) * (c(0) - 1) * (c(0) - 2) * xi ** 2 / 6
    for n in range(4):
        for lam in enumerate_multipartitions(2, n):
            assert E0.column(lam) == {lam: c(0)}
            assert E1.column(lam) == {lam: -c(1) + c(0) * (c(0) - 1) * xi / 2}
            d01 = D01.column(lam).get(lam, 0)
            assert E2.column(lam)[lam] - 2 * k * d01 == e2_scalar
    with pytest.raises(ValueError):
        E_expected(ctx2, 3, 3)


def test_boson_on_vacuum(ctx1):
    b_minus1, _ = op_bH(ctx1, -1)
    assert b_minus1.column(EMPTY1) == {ONE1: 1 / ctx1.y}


def test_boson_commutator_general_x(ctx2):
    b1, _ = op_bH(ctx2, 1)
    bm1, _ = op_bH(ctx2, -1)
    rhs = scalar_operator(-ctx2.c(0) / (ctx2.x * ctx2.y))
    same(ctx2, commutator(b1, bm1), rhs, 2)


def test_boson_commutator_chart(ctx1):
    chart = ctx1.chart_x1()
    rep = representation(chart)
    same(chart, commutator(rep.b(1), rep.b(-1)), scalar_operator(chart.c(0) / chart.kappa), 2)
    same(chart, commutator(rep.H(-1), rep.b(2)), rep.b(1).scaled(chart.scalar(-2)), 1)


def test_heisenberg_suite(ctx2):
    assert_all_pass(heisenberg_checks(ctx2.chart_x1(), 3, 2))


def test_adjoint_rank_two_grade_one(ctx2):
    rep = representation(ctx2)
    reports = check_adjoint(ctx2, rep, 1, 0, 2)
    assert_all_pass(reports)
    x, y = ctx2.x, ctx2.y
    lam = MultiPartition([(1,), ()])
    empty = MultiPartition([(), ()])
    up = rep.D(1, 0).column(empty)[lam] * rep.fp.eu(lam)
    down = rep.D(-1, 0).column(lam)[empty] * rep.fp.eu(empty)
    assert up == -x * y * down


@pytest.mark.parametrize("r", [1, 2])
def test_whittaker_exact(r):
    assert_all_pass(whittaker_localization(make_params(r), 3))


def test_whittaker_point_rank_three(pt3):
    assert_all_pass(whittaker_localization(pt3, 3))


def test_custom_model_is_independent(ctx1):
    rep = SHRepresentation(ctx1)
    assert rep.D(1, 0).column(EMPTY1) == representation(ctx1).D(1, 0).column(EMPTY1)


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_interpolation_sum_closed_form(r, m):
    n = m + r
    names = [f"z{i}" for i in range(1, n + 1)] + [f"y{k}" for k in range(1, m + 1)]
    field = ExactField(0, names=names)
    for d in range(r + 1):
        assert interpolation_sum(field, m, r, d) == interpolation_sum_closed_form(field, m, r, d)
    with pytest.raises(ValueError):
        interpolation_sum_closed_form(field, m, r, r + 1)
