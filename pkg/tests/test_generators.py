from fractions import Fraction

import pytest

from tshuf.arith import C_ONE, CoeffPoly, Q1, Q2, Q3, ZLaurent
from tshuf.generators import (
    SlopePoint,
    _ladder_exponents,
    f_to_h_sign,
    gamma,
    gen_H,
    gen_Hbar,
    gen_Hbar_prime,
    gen_P,
    gen_P_alt,
    gen_Pbar,
    gen_Sprime,
    pnd_kernel,
    series_convert,
    z_lambda,
)
from tshuf.membership import Partition, is_in_S
from tshuf.shuffle import ScaledElem, ShuffleElem, f_n, shuffle_mul

from oracle import POINTS2, Q1 as OQ1, Q2 as OQ2, eval_z, sym_kernel_value


def test_slope_point():
    p = SlopePoint(2, 0)
    assert (p.t, p.a, p.slope) == (2, 1, Fraction(0))
    p = SlopePoint(4, -6)
    assert (p.t, p.a, p.slope) == (2, 2, Fraction(-3, 2))
    with pytest.raises(ValueError):
        SlopePoint(0, 1)


def test_ladder_exponents():
    assert _ladder_exponents(3, 2) == [0, 1, 1]
    assert _ladder_exponents(1, 5) == [5]
    assert _ladder_exponents(2, -3) == [-2, -1]
    assert sum(_ladder_exponents(5, -7)) == -7


def test_p_arity_one():
    assert gen_P((1, 5)) == ShuffleElem([ZLaurent.mono(1, (5,))])
    pb = gen_Pbar((1, 2))
    assert pb.den.is_one
    assert pb.elem == ShuffleElem([ZLaurent.mono(1, (2,), Q2 - C_ONE)])


def test_gamma_at_arity_one():
    num, den = gamma(SlopePoint(1, 3))
    # gamma_{1,d} = q2 - 1 after cancellation
    assert num == (Q2 - C_ONE) * den


def test_p20_kernel_shape():
    k = pnd_kernel(SlopePoint(2, 0))
    want_num = ZLaurent.one(2) + ZLaurent.mono(2, (-1, 1), Q2.unit_inverse())
    assert k.num == want_num
    assert len(k.den) == 1


def test_p20_against_oracle():
    P20 = gen_P((2, 0)).single_component()
    def body(zs):
        return (1 + zs[1] / (OQ2 * zs[0])) / (1 - zs[1] / (zs[0] * OQ2))
    assert eval_z(P20, POINTS2) == sym_kernel_value(body, POINTS2)


def test_triple_formula_sample():
    for nd in [(2, 0), (2, 1), (3, 1), (2, -2)]:
        base = ScaledElem.wrap(gen_P(nd))
        assert gen_P_alt(nd, "q1") == base
        assert gen_P_alt(nd, "q3") == base
    for nd in [(1, 0), (1, 3)]:
        assert gen_P_alt(nd, "q1") == ScaledElem.wrap(gen_P(nd))


def test_h_arity_one_and_exp_consistency():
    assert gen_H((1, 4)) == ShuffleElem([ZLaurent.mono(1, (4,))])
    P10 = gen_P((1, 0))
    comb = ScaledElem(gen_P((2, 0)) + shuffle_mul(P10, P10), CoeffPoly.from_int(2))
    assert comb == ScaledElem.wrap(gen_H((2, 0)))


def test_hbar_flavors_agree():
    for nd in [(1, 0), (2, 0), (2, 1), (1, -2), (3, 0)]:
        assert gen_Hbar(nd, "end1") == gen_Hbar(nd, "end2")


def test_hbar_arity_one():
    for d in (-1, 0, 2):
        assert gen_Hbar((1, d)) == ShuffleElem(
            [ZLaurent.mono(1, (d,), Q2 - C_ONE)]
        )


def test_hbar_membership():
    assert is_in_S(gen_Hbar((3, 1))).member


def test_hbar_prime_values():
    for d in (0, 3):
        want = ShuffleElem(
            [ZLaurent.mono(1, (d,), (Q1 - C_ONE) * (Q2 - C_ONE))]
        )
        assert gen_Hbar_prime((1, d)) == want


def test_hbar_prime_is_plethysm_of_h():
    # h'_2 from p'_t = p_t (q1^t - 1): h'_2 = (p'_1^2 + p'_2)/2 transported
    p1 = ScaledElem.wrap(gen_Pbar((1, 0))).scale(Q1 - C_ONE)
    p2 = ScaledElem.wrap(gen_Pbar((2, 0))).scale(Q1 * Q1 - C_ONE)
    comb = (p1 * p1 + p2).scale_div(2)
    assert comb == ScaledElem.wrap(gen_Hbar_prime((2, 0)))


def test_sprime_normalization_and_errors():
    assert gen_Sprime((3, 1), ()) == gen_Hbar_prime((3, 1))
    assert gen_Sprime((2, 0), (0,)) == gen_Hbar_prime((2, 0))
    with pytest.raises(ValueError):
        gen_Sprime((2, 0), ())
    with pytest.raises(ValueError):
        gen_Sprime((2, 0), (2,))


def test_ribbon_rule_t2():
    lhs = shuffle_mul(gen_Sprime((1, 0), ()), gen_Sprime((1, 0), ()))
    assert lhs == gen_Sprime((2, 0), (0,)) + gen_Sprime((2, 0), (1,))


def test_ribbon_rule_t3():
    # S'_{(eps)} * S'_{(eps')} = S'_{(eps 0 eps')} + S'_{(eps 1 eps')} at
    # total arity 3, slope 0
    one = gen_Sprime((1, 0), ())
    for eps in ((0,), (1,)):
        lhs = shuffle_mul(gen_Sprime((2, 0), eps), one)
        rhs = gen_Sprime((3, 0), eps + (0,)) + gen_Sprime((3, 0), eps + (1,))
        assert lhs == rhs


def test_closing_identity():
    den = (Q1 - C_ONE) * (Q1 * Q1 - C_ONE)
    num = gen_Sprime((2, 0), (0,)).scale(Q1) + gen_Sprime((2, 0), (1,))
    assert ScaledElem(num, den) == ScaledElem.wrap(gen_Hbar((2, 0)))


def test_homogeneity():
    for nd in [(2, 1), (3, -2), (2, 0)]:
        assert gen_P(nd).homogeneous == nd
        assert gen_H(nd).homogeneous == nd
        assert gen_Hbar(nd).homogeneous == nd


def test_z_lambda():
    assert z_lambda(Partition((1,))) == 1
    assert z_lambda(Partition((1, 1))) == 2
    assert z_lambda(Partition((2, 1, 1))) == 4
    assert z_lambda(Partition((3, 3, 2))) == 3 * 3 * 2 * 2


def test_series_convert():
    recs = series_convert(1, 0, 2, "PtoH")
    assert all(r["verified"] for r in recs)
    recs = series_convert(1, 1, 2, "PtoH", barred=True)
    assert all(r["verified"] for r in recs)
    recs = series_convert(1, 0, 2, "HtoP", barred=True)
    assert all(r["verified"] for r in recs)
    with pytest.raises(ValueError):
        series_convert(2, 0, 2, "PtoH")


def test_f_to_h_signs():
    assert [f_to_h_sign(n) for n in (1, 2, 3)] == [-1, 1, -1]


def test_same_slope_commutation():
    for a, b in [((1, 0), (2, 0)), ((1, 1), (2, 2))]:
        assert shuffle_mul(gen_P(a), gen_P(b)) == shuffle_mul(gen_P(b), gen_P(a))
