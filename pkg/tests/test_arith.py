import random

import pytest

from tshuf.arith import (
    C_ONE,
    CoeffPoly,
    Q1,
    Q2,
    RatExpr,
    ZLaurent,
    exact_div,
    geom_expand,
    monomial_symmetric,
    unit_quotient,
)
from tshuf.errors import (
    ArityMismatch,
    NotDivisible,
    NotPolynomial,
    RegionViolation,
)

from oracle import POINTS3, eval_z


def q2mono(b, c=1):
    return CoeffPoly.mono(0, b, c)


def ratio(n, i, j, coeff=C_ONE):
    e = [0] * n
    e[i] += 1
    e[j] -= 1
    return ZLaurent.mono(n, e, coeff)


def test_difference_of_squares():
    a = CoeffPoly({(0, 0): 1, (0, 1): -1})
    b = CoeffPoly({(0, 0): 1, (0, 1): 1})
    assert a * b == CoeffPoly({(0, 0): 1, (0, 2): -1})


def test_additive_identity():
    z1 = ZLaurent.var(2, 0)
    assert z1 + ZLaurent.zero(2) == z1
    assert z1 + 0 == z1


def test_cross_factor_expansion():
    f1 = ZLaurent.one(2) - ratio(2, 0, 1, Q2)
    f2 = ZLaurent.one(2) - ratio(2, 1, 0, Q2)
    expect = ZLaurent(
        2,
        {
            (0, 0): CoeffPoly({(0, 0): 1, (0, 2): 1}),
            (1, -1): CoeffPoly({(0, 1): -1}),
            (-1, 1): CoeffPoly({(0, 1): -1}),
        },
    )
    assert f1 * f2 == expect


def test_arity_mismatch_raises():
    with pytest.raises(ArityMismatch):
        ZLaurent.one(2) + ZLaurent.one(3)


def test_scalar_broadcast():
    s = ZLaurent.scalar(0, Q2)
    assert s * ZLaurent.var(3, 1) == ZLaurent.var(3, 1).scale(Q2)


def test_exact_div_examples():
    one_minus_q2 = ZLaurent.scalar(0, C_ONE - Q2)
    sq = one_minus_q2 * one_minus_q2
    assert exact_div(sq, one_minus_q2) == one_minus_q2
    p = ZLaurent.scalar(0, CoeffPoly({(0, 0): 1, (0, 2): -1}))
    q = ZLaurent.scalar(0, CoeffPoly({(0, 0): 1, (0, 1): 1}))
    assert exact_div(p, q) == one_minus_q2
    bad = ZLaurent.scalar(0, C_ONE - Q1 * Q2)
    with pytest.raises(NotDivisible):
        exact_div(bad, one_minus_q2)


def test_exact_div_strips_unit_monomials():
    p = ZLaurent.mono(1, (5,))
    q = ZLaurent.mono(1, (2,), Q1)
    assert exact_div(p, q) == ZLaurent.mono(1, (3,), Q1.unit_inverse())


def test_exact_div_roundtrip_random():
    rng = random.Random(99)
    for _ in range(120):
        n = rng.randint(0, 4)
        def rand_poly(maxterms):
            terms = {}
            for _ in range(rng.randint(1, maxterms)):
                e = tuple(rng.randint(-3, 3) for _ in range(n))
                terms[e] = CoeffPoly.mono(
                    rng.randint(-2, 2), rng.randint(-2, 2), rng.randint(-4, 4)
                )
            return ZLaurent(n, terms)
        p, q = rand_poly(8), rand_poly(4)
        if q.is_zero:
            continue
        assert exact_div(p * q, q) == p


def test_substitute_examples():
    factor = ZLaurent(1, {(0,): C_ONE, (1,): -Q2})  # 1 - x*q2
    assert factor.substitute({0: (Q2.unit_inverse(), (0,))}, 1).is_zero
    zd = ZLaurent.mono(1, (3,))
    assert zd.substitute({0: (C_ONE, (-1,))}, 1) == ZLaurent.mono(1, (-3,))


def test_substitute_is_ring_homomorphism():
    rng = random.Random(5)
    n = 3
    assign = {
        0: (Q2, (1, 0)),
        1: (C_ONE, (0, 1)),
        2: (Q1.unit_inverse(), (1, 1)),
    }
    def rand_poly():
        terms = {}
        for _ in range(rng.randint(1, 6)):
            e = tuple(rng.randint(-2, 2) for _ in range(n))
            terms[e] = CoeffPoly.mono(rng.randint(-1, 1), rng.randint(-1, 1),
                                      rng.randint(-3, 3))
        return ZLaurent(n, terms)
    for _ in range(30):
        a, b = rand_poly(), rand_poly()
        assert (a * b).substitute(assign, 2) == a.substitute(assign, 2) * b.substitute(assign, 2)
        assert (a + b).substitute(assign, 2) == a.substitute(assign, 2) + b.substitute(assign, 2)


def test_to_polynomial_examples():
    n2 = ZLaurent.one(2) - ratio(2, 0, 1, Q2 * Q2)
    d2 = ZLaurent.one(2) - ratio(2, 0, 1, Q2)
    with pytest.raises(NotPolynomial):
        RatExpr(n2, [d2]).to_polynomial()
    num = (ZLaurent.one(2) - ratio(2, 0, 1)) * (ZLaurent.one(2) + ratio(2, 0, 1))
    assert RatExpr(num, [ZLaurent.one(2) - ratio(2, 0, 1)]).to_polynomial() == (
        ZLaurent.one(2) + ratio(2, 0, 1)
    )
    a = ZLaurent.scalar(0, CoeffPoly({(2, 0): 1, (0, 0): -1}))
    b = ZLaurent.scalar(0, CoeffPoly({(1, 0): 1, (0, 0): -1}))
    assert RatExpr(a, [b]).to_polynomial() == ZLaurent.scalar(
        0, CoeffPoly({(1, 0): 1, (0, 0): 1})
    )


def test_to_polynomial_order_independent():
    f1 = ZLaurent.one(2) - ratio(2, 1, 0)
    f2 = ZLaurent.one(2) - ratio(2, 1, 0, Q2)
    f3 = ZLaurent.scalar(2, C_ONE - Q2)
    num = f1 * f2 * f3 * monomial_symmetric((1, -1), 2)
    vals = [
        RatExpr(num, order).to_polynomial()
        for order in ([f1, f2, f3], [f3, f2, f1], [f2, f3, f1])
    ]
    assert vals[0] == vals[1] == vals[2]


def test_geom_expand():
    f = ZLaurent.one(2) - ratio(2, 1, 0, Q2)  # 1 - q2 z2/z1
    g = geom_expand(f, 2)
    assert g == ZLaurent(
        2, {(0, 0): C_ONE, (-1, 1): Q2, (-2, 2): Q2 * Q2}
    )
    with pytest.raises(RegionViolation):
        geom_expand(ZLaurent.one(2) - ratio(2, 0, 1, Q1 * Q2), 2)
    assert geom_expand(f, 0) == ZLaurent.one(2)


def test_geom_expand_inverts_up_to_order():
    f = ZLaurent.one(2) - ratio(2, 1, 0, Q2)
    for order in (1, 3):
        prod = geom_expand(f, order) * f
        low = {
            e: c for e, c in prod.terms.items() if abs(e[1]) <= order
        }
        assert low == {(0, 0): C_ONE}


def test_unit_quotient():
    a = monomial_symmetric((2, 1), 2)
    b = a.mul_mono((3, -1), Q1 * Q2)
    u = unit_quotient(b, a)
    assert u == ZLaurent.mono(2, (3, -1), Q1 * Q2)
    assert unit_quotient(a + ZLaurent.one(2), a) is None


def test_oracle_agreement_on_products():
    rng = random.Random(13)
    for _ in range(20):
        terms = {}
        for _ in range(4):
            e = tuple(rng.randint(-2, 2) for _ in range(3))
            terms[e] = CoeffPoly.mono(rng.randint(-1, 1), rng.randint(-1, 1),
                                      rng.randint(-3, 3))
        a = ZLaurent(3, terms)
        b = monomial_symmetric((1, 0, -1), 3)
        assert eval_z(a * b, POINTS3) == eval_z(a, POINTS3) * eval_z(b, POINTS3)
