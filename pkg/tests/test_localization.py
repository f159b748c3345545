from math import factorial

import pytest

from agtcheck import make_params
from agtcheck.characters import (Character, InvalidCharacterError, W_char, chi_char, euler,
                                 q_char, t_char, v_char)
from agtcheck.localization import (FpVector, eu_fixed_point, gaiotto, nekrasov, nekrasov_json,
                                   normal_character, normal_character_taut, op_f, op_h, pairing,
                                   taut_character, tangent_character)
from agtcheck.partitions import MultiPartition, enumerate_multipartitions

EMPTY1 = MultiPartition([()])
ONE1 = MultiPartition([(1,)])
TWO1 = MultiPartition([(2,)])


def mono(r, q=0, t=0, chi=None):
    return Character.monomial(r, q, t, chi)


# -- characters ---------------------------------------------------------------

def test_character_algebra():
    r = 2
    q, t = q_char(r), t_char(r)
    assert (q + t) * (q - t) == q * q - t * t
    assert (q * t).dual() * q * t == Character.one(r)
    assert v_char(r) == (q * t).dual()
    assert W_char(r) == chi_char(r, 1, -1) + chi_char(r, 2, -1)
    assert (q - q) == Character.zero(r)
    assert (q + t).rank() == 2 and (q - t).rank() == 0


def test_tangent_examples():
    assert tangent_character(None, ONE1) == mono(1, q=-1) + mono(1, t=-1)
    assert tangent_character(None, TWO1) == (mono(1, q=-2) + mono(1, q=1, t=-1)
                                             + mono(1, q=-1) + mono(1, t=-1))
    lam = MultiPartition([(1,), ()])
    expected = (mono(2, q=-1) + mono(2, t=-1)
                + mono(2, q=-1, t=-1, chi=(1, -1)) + mono(2, chi=(-1, 1)))
    assert tangent_character(None, lam) == expected


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("n", range(5))
def test_tangent_rank_and_taut_form(r, n):
    one = Character.one(r)
    qi, ti = mono(r, q=-1), mono(r, t=-1)
    W, v = W_char(r), v_char(r)
    for lam in enumerate_multipartitions(r, n):
        T = tangent_character(None, lam)
        assert T.rank() == 2 * r * n
        tau = taut_character(None, lam)
        assert T == -((one - qi) * (one - ti) * tau * tau.dual()) + tau * W.dual() + v * tau.dual() * W


def test_taut_example():
    assert taut_character(None, MultiPartition([(1,), ()])) == mono(2, chi=(-1, 0))


def test_normal_examples():
    assert normal_character(None, EMPTY1, ONE1) == Character.zero(1)
    assert normal_character(None, ONE1, TWO1) == mono(1, q=-2) + mono(1, t=-1)
    with pytest.raises(ValueError):
        normal_character(None, ONE1, ONE1)
    with pytest.raises(ValueError):
        normal_character(None, MultiPartition([(1, 1)]), MultiPartition([(3,)]))


@pytest.mark.parametrize("r,n_max", [(1, 4), (2, 4), (3, 3)])
def test_normal_forms_agree(r, n_max):
    for n in range(n_max):
        for mu in enumerate_multipartitions(r, n):
            for _, _, lam in mu.add_boxes():
                N = normal_character(None, mu, lam)
                assert N == normal_character_taut(None, mu, lam)


# -- Euler classes ------------------------------------------------------------

def test_euler_examples(ctx1):
    x, y = ctx1.x, ctx1.y
    assert euler(ctx1, q_char(1) + t_char(1)) == x * y
    assert euler(ctx1, -(q_char(1) + t_char(1))) == 1 / (x * y)
    assert eu_fixed_point(ctx1, TWO1) == (-2 * x) * (x - y) * x * y
    with pytest.raises(InvalidCharacterError):
        euler(ctx1, Character.one(1) + q_char(1))


def test_euler_by_arm_leg(ctx1):
    x, y = ctx1.x, ctx1.y
    for n in range(5):
        for lam in enumerate_multipartitions(1, n):
            p = lam[0]
            val = ctx1.one
            for s in p.boxes():
                a, l = p.arm(s), p.leg(s)
                val = val * (l * y - (a + 1) * x) * (-(l + 1) * y + a * x)
            assert eu_fixed_point(ctx1, lam) == val


# -- pairing, Gaiotto state, Nekrasov series -------------------------------------

def test_pairing_examples(ctx1):
    assert pairing(ctx1, FpVector(0, {EMPTY1: 1}), FpVector(0, {EMPTY1: 1})) == 1
    assert pairing(ctx1, FpVector(1, {ONE1: 1}), FpVector(1, {ONE1: 1})) == ctx1.x * ctx1.y
    with pytest.raises(ValueError):
        pairing(ctx1, FpVector(1, {ONE1: 1}), FpVector(2, {TWO1: 1}))
    with pytest.raises(ValueError):
        FpVector(1, {TWO1: 1})


def test_gaiotto_grade_zero(ctx2):
    G0 = gaiotto(ctx2, 0)
    assert dict(G0) == {MultiPartition([(), ()]): 1}
    assert G0.to_json(ctx2) == {"grade": 0, "terms": [{"mp": "[(),()]", "coeff": "1"}]}


def test_nekrasov_rank_one(ctx1):
    x, y = ctx1.x, ctx1.y
    Z = nekrasov(ctx1, 4)
    assert Z.var == "q"
    for n in range(5):
        assert Z[n] == 1 / (factorial(n) * (x * y) ** n)


def test_nekrasov_json(ctx1):
    assert nekrasov_json(ctx1, 2) == {"q^0": "1", "q^1": "1/(x*y)", "q^2": "1/(2*x^2*y^2)"}


def test_nekrasov_rank_two_one_instanton(ctx2):
    x, y, e1, e2 = ctx2.field.gens
    assert nekrasov(ctx2, 1)[1] == 2 / (x * y * ((x + y) ** 2 - (e1 - e2) ** 2))


def test_nekrasov_is_gaiotto_norm(ctx2):
    Z = nekrasov(ctx2, 3)
    for n in range(4):
        G = gaiotto(ctx2, n)
        assert pairing(ctx2, G, G) == Z[n]


# -- raising, lowering and diagonal operators ------------------------------------

def test_f_examples(ctx1):
    x, y = ctx1.x, ctx1.y
    assert op_f(ctx1, 1, 0).column(EMPTY1) == {ONE1: 1 / (x * y)}
    assert op_f(ctx1, -1, 2).column(EMPTY1) == {}
    hilb = ctx1.with_e_zero()
    assert op_f(hilb, 0, 1).column(TWO1) == {TWO1: hilb.x}


def test_h_examples(ctx1, ctx2):
    assert op_h(ctx1, 1, 0).column(EMPTY1) == {ONE1: 1}
    assert op_h(ctx1, -1, 0).column(ONE1) == {EMPTY1: 1}
    for n in range(4):
        for lam in enumerate_multipartitions(2, n):
            assert op_h(ctx2, 0, 1).column(lam) == ({lam: ctx2.scalar(n)} if n else {})


def test_f_rejects_bad_kind(ctx1):
    with pytest.raises(ValueError):
        op_f(ctx1, 2, 0)
    with pytest.raises(ValueError):
        op_h(ctx1, 0, 0)


def test_point_mode_matches_exact():
    exact = make_params(2)
    pt = make_params(2, "point")
    for lam in enumerate_multipartitions(2, 3):
        assert exact.to_point(eu_fixed_point(exact, lam), pt.point) == eu_fixed_point(pt, lam)
