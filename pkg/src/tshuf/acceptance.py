"""The acceptance suite: one callable per criterion, all exact.

Every check is bit-exact equality in Z[q1^{+-1}, q2^{+-1}] or its fraction
field.  ``run`` executes the full suite and prints one pass/fail line per
criterion; the pytest acceptance module drives the same functions.
"""

from __future__ import annotations

import random
import time

from .arith import C_ONE, CoeffPoly, Q1, Q2, ZLaurent, monomial_symmetric
from .errors import NotInSpan
from .generators import (
    SlopePoint,
    f_to_h_sign,
    gen_H,
    gen_Hbar,
    gen_P,
    gen_P_alt,
    gen_Pbar,
    gen_Sprime,
    series_convert,
)
from .membership import (
    expand_reduction_step,
    is_in_S,
    phi,
    reduce_to_generators,
)
from .pairing import (
    PairingValue,
    convex_paths,
    integrality_check,
    ladder_numerator,
    pair,
    pair_against_path,
    pair_residue,
    path_element,
    path_kernel,
    pbw_expand,
    h_ladder_numerator,
    window_stable,
)
from .membership import Partition
from .shuffle import (
    Kernel,
    ScaledElem,
    ShuffleElem,
    f_n,
    shuffle_mul,
    sym_full,
    zeta,
)

WINDOW = (-2, 2)


def _zeta_value(target_num: int, target_den: int, power_num, power_den=None):
    """zeta at a q-monomial: substitute z_1/z_2 = c and clear."""
    z = zeta(0, 1, 2)
    sub = {0: (power_num, (0, 1)), 1: (C_ONE, (0, 1))}
    v = z.substitute(sub, 2)
    if v.num.is_zero:
        return None
    return v.to_polynomial().constant_coeff()


def _random_symmetric(rng: random.Random, n: int) -> ZLaurent:
    """Small random symmetric Laurent polynomial in n variables."""
    out = ZLaurent.zero(n)
    for _ in range(rng.randint(1, 3)):
        nu = tuple(sorted((rng.randint(-2, 2) for _ in range(n)), reverse=True))
        c = CoeffPoly.mono(rng.randint(-1, 1), rng.randint(-1, 1), rng.randint(-2, 2))
        out = out + monomial_symmetric(nu, n).scale(c)
    if out.is_zero:
        out = ZLaurent.one(n)
    return out


def _random_member(rng: random.Random, n: int) -> ShuffleElem:
    """A random element of the algebra at arity n: g * F_n."""
    return ShuffleElem([_random_symmetric(rng, n) * f_n(n).component(n)],
                       check=False)


def criterion_01():
    """zeta wheel values: zeta(q2^{-1}) = zeta(q1^{-1}) = 0 and
    zeta(q2) = (1-q1)(1+q2)(1-q1q2)."""
    at_q2inv = _zeta_value(0, 1, Q2.unit_inverse())
    at_q1inv = _zeta_value(0, 1, Q1.unit_inverse())
    at_q2 = _zeta_value(0, 1, Q2)
    want = (C_ONE - Q1) * (C_ONE + Q2) * (C_ONE - Q1 * Q2)
    ok = at_q2inv is None and at_q1inv is None and at_q2 == want
    return ok, "zeta(q2^-1)=0, zeta(q1^-1)=0, zeta(q2) exact"


def criterion_02():
    """Membership: F_n (n<=4), five random multiples g*F_n (n<=3), and
    Hbar_{n,d} (n<=3, |d|<=2) are in; the constant 1 at arity 1 is out."""
    for n in range(1, 5):
        if not is_in_S(f_n(n)).member:
            return False, f"F_{n} not recognized"
    rng = random.Random(20250810)
    for i in range(5):
        n = rng.randint(1, 3)
        if not is_in_S(_random_member(rng, n)).member:
            return False, f"random multiple #{i} of F_{n} not recognized"
    for n in range(1, 4):
        for d in range(-2, 3):
            if not is_in_S(gen_Hbar((n, d))).member:
                return False, f"Hbar({n},{d}) not recognized"
    rep = is_in_S(ShuffleElem([ZLaurent.one(1)]))
    if rep.member or tuple(rep.witness_partition) != (1,):
        return False, "negative control failed"
    return True, "F_n, g*F_n, Hbar_(n,d) in; 1 out with witness (1)"


def criterion_03():
    """Closure: ten random products of members (total arity <= 4) stay in."""
    rng = random.Random(1806)
    pool = {n: [_random_member(rng, n) for _ in range(3)] for n in (1, 2, 3)}
    checked = 0
    while checked < 10:
        n1 = rng.randint(1, 3)
        n2 = rng.randint(1, 4 - n1)
        a = rng.choice(pool[n1])
        b = rng.choice(pool[n2])
        if not is_in_S(shuffle_mul(a, b)).member:
            return False, f"product of arities ({n1},{n2}) left the algebra"
        checked += 1
    return True, "10 random products remain members"


def criterion_04():
    """Three formulas for P_{n,d} and two for Hbar_{n,d} agree exactly for
    n <= 3, |d| <= 3."""
    for n in range(1, 4):
        for d in range(-3, 4):
            base = ScaledElem.wrap(gen_P((n, d)))
            if gen_P_alt((n, d), "q1") != base or gen_P_alt((n, d), "q3") != base:
                return False, f"P({n},{d}) formulas disagree"
            if gen_Hbar((n, d), "end1") != gen_Hbar((n, d), "end2"):
                return False, f"Hbar({n},{d}) formulas disagree"
    return True, "P triple and Hbar double formulas agree on the grid"


def criterion_05():
    """Same-slope commutation: [P_{1,0}, P_{2,0}] = [P_{1,1}, P_{2,2}] = 0."""
    for a, b in [((1, 0), (2, 0)), ((1, 1), (2, 2))]:
        x, y = gen_P(a), gen_P(b)
        if shuffle_mul(x, y) != shuffle_mul(y, x):
            return False, f"P{a} and P{b} do not commute"
    return True, "slope-0 and slope-1 pairs commute"


def criterion_06():
    """Exponential-series dictionary at t = 2, 3 on slope 0, plain and
    barred families."""
    series_convert(1, 0, 3, "PtoH", barred=False)
    series_convert(1, 0, 3, "PtoH", barred=True)
    series_convert(1, 0, 3, "HtoP", barred=False)
    return True, "H and Hbar match the Newton combinations through t = 3"


def criterion_07():
    """Orthogonality: the {P_v} vs {Pbar_w} pairing matrix at bidegrees
    (2,0), (2,1), (3,0) in the window [-2,2] is diagonal with the z-norms."""
    total = 0
    for n, d in [(2, 0), (2, 1), (3, 0)]:
        paths = convex_paths(n, d, WINDOW)
        for v in paths:
            kv = path_kernel(tuple(v.points), "P")
            for w in paths:
                val = pair(kv, path_element(tuple(w.points), "Pbar"))
                if v.points == w.points:
                    want = PairingValue(CoeffPoly.from_int(v.z_norm()))
                else:
                    want = PairingValue(CoeffPoly.from_int(0))
                if not val == want:
                    return False, f"<P_{v}, Pbar_{w}> = {val}, wanted {want}"
                total += 1
    return True, f"{total} pairings diagonal with z-norm entries"


def criterion_08():
    """Residue formula: pair_residue agrees with pair on the n <= 3 matrix
    (rows P_v, columns H_w and the P_w chain presentations)."""
    total = 0
    for n, d in [(2, 0), (2, 1), (3, 0)]:
        paths = convex_paths(n, d, WINDOW)
        for v in paths:
            kv = path_kernel(tuple(v.points), "P")
            pv = path_element(tuple(v.points), "P")
            for w in paths:
                hw = path_element(tuple(w.points), "H")
                lhs = pair(kv, hw)
                rhs = pair_residue(pv, h_ladder_numerator(w))
                if not lhs == rhs:
                    return False, f"<P_{v}, H_{w}> routes disagree"
                total += 1
    # degree-mismatch zero both ways
    if not pair_residue(f_n(2), h_ladder_numerator_point(2, 1)).is_zero:
        return False, "<F_2, H_{2,1}> nonzero"
    return True, f"{total} pairings agree across both routes; sign frozen"


def h_ladder_numerator_point(n: int, d: int) -> ZLaurent:
    from .pairing import ConvexPath

    return h_ladder_numerator(ConvexPath.of([(n, d)]))


def criterion_09():
    """Integrality: Hbar_v passes for all paths of bidegree (2,0), (2,1);
    the rescaling Hbar_{1,0}/(q2-1) fails; and pbw_expand round-trips
    Hbar_{1,0} * Hbar_{1,1} exactly, stably under window enlargement."""
    for n, d in [(2, 0), (2, 1)]:
        for v in convex_paths(n, d, WINDOW):
            ok, off = integrality_check(path_element(tuple(v.points), "Hbar"), WINDOW)
            if not ok:
                return False, f"Hbar_{v} failed integrality at {off}"
    bad = ScaledElem(gen_Hbar((1, 0)), Q2 - C_ONE)
    ok, off = integrality_check(bad, WINDOW)
    if ok:
        return False, "rescaled negative control passed integrality"
    r = shuffle_mul(gen_Hbar((1, 0)), gen_Hbar((1, 1)))
    coeffs = pbw_expand(r, WINDOW)
    expect_path = ((1, 0), (1, 1))
    for v, c in coeffs:
        want = 1 if tuple((p.n, p.d) for p in v.points) == expect_path else 0
        if not c == PairingValue(CoeffPoly.from_int(want)):
            return False, f"round-trip coefficient at {v} is {c}"
    if not window_stable(r, WINDOW):
        return False, "expansion not stable under window enlargement"
    return True, "Hbar_v integral, control fails, round-trip exact and stable"


def criterion_10():
    """Ribbon rule and the closing identity at t = 2, slope 0."""
    lhs = shuffle_mul(gen_Sprime((1, 0), ()), gen_Sprime((1, 0), ()))
    rhs = gen_Sprime((2, 0), (0,)) + gen_Sprime((2, 0), (1,))
    if lhs != rhs:
        return False, "ribbon product rule failed"
    den = (Q1 - C_ONE) * (Q1 * Q1 - C_ONE)
    num = gen_Sprime((2, 0), (0,)).scale(Q1) + gen_Sprime((2, 0), (1,))
    if ScaledElem(num, den) != ScaledElem.wrap(gen_Hbar((2, 0))):
        return False, "h-versus-ribbon identity failed"
    return True, "S' rule and the Hbar-in-ribbons identity hold"


def criterion_11():
    """Hbar_{n,0} versus q1^{n(n-1)/2} F_n for n = 1, 2, 3: the comparison
    unit is a bare sign with one constant base, (-1)^n."""
    signs = [f_to_h_sign(n) for n in (1, 2, 3)]
    if signs != [(-1) ** n for n in (1, 2, 3)]:
        return False, f"sign pattern {signs} is not (-1)^n"
    return True, "Hbar_{n,0} = (-1)^n q1^{n(n-1)/2} F_n for n = 1, 2, 3"


def criterion_12():
    """Reduction to ideal generators reconstructs F_1 * F_1, F_2, and a
    random member of arity 2 exactly."""
    rng = random.Random(271828)
    cases = [
        ("F1*F1", shuffle_mul(f_n(1), f_n(1))),
        ("F2", f_n(2)),
        ("random", _random_member(rng, 2) + shuffle_mul(f_n(1), f_n(1))),
    ]
    for name, elem in cases:
        steps = reduce_to_generators(elem)
        total = ShuffleElem.zero()
        for lam, rho in steps:
            total = total + expand_reduction_step(lam, rho)
        if total != elem:
            return False, f"reconstruction of {name} differs"
    return True, "all three reductions reconstruct their inputs"


CRITERIA = [
    ("zeta-wheel-values", criterion_01, 1),
    ("generator-membership", criterion_02, 60),
    ("closure-under-product", criterion_03, 300),
    ("formula-agreement", criterion_04, 120),
    ("same-slope-commutation", criterion_05, 60),
    ("exp-series-dictionary", criterion_06, 300),
    ("orthogonality-norms", criterion_07, 600),
    ("residue-equivalence", criterion_08, 600),
    ("integrality-pbw", criterion_09, 600),
    ("ribbon-rule", criterion_10, 120),
    ("slope-zero-sign", criterion_11, 120),
    ("reduce-reconstruct", criterion_12, 300),
]


def run(out=None) -> bool:
    """Run every criterion; print one line each; True iff all pass."""
    import sys

    out = out or sys.stdout
    all_ok = True
    for i, (name, fn, budget) in enumerate(CRITERIA, start=1):
        t0 = time.time()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure with its reason
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        dt = time.time() - t0
        if dt > budget:
            ok, detail = False, f"exceeded {budget}s budget: {detail}"
        all_ok = all_ok and ok
        status = "PASS" if ok else "FAIL"
        print(f"{status} {i:02d} {name} ({dt:.1f}s): {detail}", file=out)
    return all_ok
