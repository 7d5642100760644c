"""The symmetric pairing, convex paths, orthogonality, and PBW expansion.

For R presented by a kernel (R = Sym[r * prod zeta]) and a polynomial R',
the pairing is the ordered constant term

    <R, R'> = (q2-1)^{-n} * CT_{|z_1| >> ... >> |z_n|}
              [ r(z) R'(1/z) / prod_{i<j} zeta(z_j/z_i) ]

where every denominator factor is expanded as a geometric series valid in
the declared magnitude ordering.  All factors that reach the expander are
variable ratios, so a strictly decreasing weight on the variables makes
every series monomial strictly weight-negative; the series order needed to
reach exponent zero is then bounded by the numerator's maximal weight, and
the constant term is computed exactly (no truncation instability is
possible; a verification mode re-runs with the bound raised by one).

The same pairing evaluated through iterated residues at the q2-string poles
(summed over compositions) must agree after a one-time global sign
calibration; both routes are implemented and cross-checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import config
from .arith import (
    C_ONE,
    C_ZERO,
    CoeffPoly,
    Q1,
    Q2,
    ZLaurent,
    binomial_parts,
    exact_div,
)
from .errors import (
    ArityMismatch,
    CalibrationFailure,
    NotDivisible,
    NotInSpan,
    RegionViolation,
    TruncationUnstable,
)
from .generators import (
    SlopePoint,
    gamma,
    gen_H,
    gen_Hbar,
    gen_P,
    gen_Pbar,
    h_kernel,
    hbar_kernel,
    pnd_kernel,
    z_lambda,
)
from .membership import Partition
from .shuffle import Kernel, ScaledElem, ShuffleElem, kernel_shuffle, shuffle_mul


def _coeff_div(a: CoeffPoly, b: CoeffPoly) -> CoeffPoly:
    return exact_div(ZLaurent.scalar(0, a), ZLaurent.scalar(0, b)).as_coeff()


class PairingValue:
    """Element of the fraction field, kept as a structured num/den pair."""

    __slots__ = ("num", "den")

    def __init__(self, num: CoeffPoly, den: CoeffPoly = C_ONE):
        if isinstance(num, int):
            num = CoeffPoly.from_int(num)
        if isinstance(den, int):
            den = CoeffPoly.from_int(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    def normalize(self) -> "PairingValue":
        if self.num.is_zero:
            return PairingValue(C_ZERO, C_ONE)
        try:
            return PairingValue(_coeff_div(self.num, self.den), C_ONE)
        except NotDivisible:
            pass
        # canonical scaling: shift the denominator's least monomial to 1
        (a, b), c = min(self.den.terms.items())
        u = CoeffPoly.mono(-a, -b, -1 if c < 0 else 1)
        return PairingValue(self.num * u, self.den * u)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_integral(self) -> bool:
        if self.num.is_zero:
            return True
        try:
            _coeff_div(self.num, self.den)
            return True
        except NotDivisible:
            return False

    def as_coeff(self) -> CoeffPoly:
        if self.num.is_zero:
            return C_ZERO
        return _coeff_div(self.num, self.den)

    def __add__(self, other):
        other = _pv(other)
        if self.den == other.den:
            return PairingValue(self.num + other.num, self.den)
        return PairingValue(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return PairingValue(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_pv(other))

    def __mul__(self, other):
        other = _pv(other)
        return PairingValue(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = _pv(other)
        if other.num.is_zero:
            raise ZeroDivisionError("division by zero pairing value")
        return PairingValue(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        other = _pv(other)
        return self.num * other.den == other.num * self.den

    def __repr__(self):
        v = self.normalize()
        if v.den.is_one:
            return f"PairingValue({v.num!r})"
        return f"PairingValue(({v.num!r}) / ({v.den!r}))"

    def to_doc(self):
        v = self.normalize()
        return {"num": v.num.to_doc(), "den": v.den.to_doc()}

    @staticmethod
    def from_doc(doc) -> "PairingValue":
        return PairingValue(
            CoeffPoly.from_doc(doc["num"]), CoeffPoly.from_doc(doc["den"])
        )


def _pv(x) -> PairingValue:
    if isinstance(x, PairingValue):
        return x
    if isinstance(x, (int, CoeffPoly)):
        return PairingValue(x)
    raise TypeError(f"cannot coerce {type(x)} to PairingValue")


PV_ZERO = PairingValue(C_ZERO)
PV_ONE = PairingValue(C_ONE)


def ordered_constant_term(
    num: ZLaurent, dens, weights, scalar_dens=None, verify: bool = False
) -> CoeffPoly:
    """Coefficient of z^0 in num / prod(dens), every factor expanded as a
    geometric series in the region encoded by ``weights`` (strictly larger
    weight = strictly larger magnitude).

    Factors must be ratio binomials c*(1 - m); scalar factors may be passed
    out through ``scalar_dens`` (a list collecting CoeffPoly divisors).
    ``verify`` re-runs every series one order beyond the weight bound and
    raises :class:`TruncationUnstable` on disagreement.
    """
    n = num.arity

    def wdot(e):
        return sum(w * x for w, x in zip(weights, e))

    factors = []
    for f in dens:
        if all(not any(e) for e in f.terms):
            # the factor collapsed to a scalar; divide it out at the end
            if scalar_dens is None:
                raise RegionViolation("scalar factor reached the series expander")
            scalar_dens.append(f.constant_coeff())
            continue
        parts = binomial_parts(f)
        if parts is None:
            raise RegionViolation("denominator factor is not c*(1 - monomial)")
        c, e, mc = parts
        nz = sorted(x for x in e if x)
        if nz != [-1, 1]:
            raise RegionViolation("denominator monomial is not a variable ratio")
        if not c.is_one:
            num = num.scale(c.unit_inverse())
        wf = wdot(e)
        if wf == 0:
            raise RegionViolation("ratio weight vanished; weights must be distinct")
        if wf > 0:
            # flip to the small orientation: c(1-m) = -c*m*(1 - 1/m)
            num = num.mul_mono(tuple(-x for x in e), -mc.unit_inverse())
            e = tuple(-x for x in e)
            mc = mc.unit_inverse()
            wf = -wf
        factors.append((e, mc, wf))

    floor = config.trunc_bound() or 0
    extra = 1 if verify else 0

    def run(extra_order: int) -> CoeffPoly:
        terms = {e: c for e, c in num.terms.items() if wdot(e) >= 0}
        for e_f, mc, wf in factors:
            new: dict = {}
            for e0, c0 in terms.items():
                smax = wdot(e0) // (-wf)
                order = max(smax, floor) + extra_order
                e_acc, c_acc = e0, c0
                for s in range(order + 1):
                    if s:
                        e_acc = tuple(x + y for x, y in zip(e_acc, e_f))
                        c_acc = c_acc * mc
                        if wdot(e_acc) < 0:
                            break
                    prev = new.get(e_acc)
                    tot = c_acc if prev is None else prev + c_acc
                    if tot.terms:
                        new[e_acc] = tot
                    else:
                        new.pop(e_acc, None)
            terms = new
        return terms.get((0,) * n, C_ZERO)

    ct = run(0)
    if verify and run(1) != ct:
        raise TruncationUnstable("constant term changed when the bound was raised")
    return ct


@lru_cache(maxsize=None)
def _inv_zeta_factors(n: int):
    """Numerator factors (1 - z_j/z_i) and denominator factors of
    1/prod_{i<j} zeta(z_j/z_i), for the region |z_1| >> ... >> |z_n|."""
    num = ZLaurent.one(n)
    dens = []
    for i in range(n):
        for j in range(i + 1, n):
            e = [0] * n
            e[j] += 1
            e[i] -= 1
            ratio = tuple(e)
            back = tuple(-x for x in e)
            num = num * (ZLaurent.one(n) - ZLaurent.mono(n, ratio))
            dens.append(ZLaurent.one(n) - ZLaurent.mono(n, ratio, Q1))
            dens.append(ZLaurent.one(n) - ZLaurent.mono(n, ratio, Q2))
            dens.append(ZLaurent.one(n) - ZLaurent.mono(n, back, Q1 * Q2))
    return num, tuple(dens)


def _second_arg(Rp, n: int):
    if isinstance(Rp, ScaledElem):
        return Rp.elem.component(n), Rp.den
    if isinstance(Rp, ShuffleElem):
        return Rp.component(n), C_ONE
    if isinstance(Rp, ZLaurent):
        if Rp.arity != n:
            raise ArityMismatch("second pairing argument has wrong arity")
        return Rp, C_ONE
    raise TypeError("second pairing argument must be an algebra element")


def _chain_factor(n: int, i: int) -> ZLaurent:
    """(1 - z_{i+1} / (z_i q2)), 0-based i."""
    e = [0] * n
    e[i + 1] += 1
    e[i] -= 1
    return ZLaurent.one(n) - ZLaurent.mono(n, e, Q2.unit_inverse())


def ladder_numerator(kern: Kernel) -> ZLaurent | None:
    """Numerator of the full-q2-chain presentation of the kernel's element,
    or None when the kernel's denominators do not lie on the chain.

    A kernel whose denominator factors form a sub-multiset of the chain
    (1 - z_{i+1}/(z_i q2)), i = 1..n-1, presents the same element as
    num * (missing chain factors) over the full chain.
    """
    n = kern.arity
    chain = [_chain_factor(n, i) for i in range(n - 1)]
    remaining = list(range(n - 1))
    for f in kern.den:
        hit = next((i for i in remaining if chain[i] == f), None)
        if hit is None:
            return None
        remaining.remove(hit)
    num = kern.num
    for i in remaining:
        num = num * chain[i]
    return num


def pair(kR: Kernel, Rp, verify: bool = False) -> PairingValue:
    """<R, R'> for R presented by the kernel kR and R' a polynomial element
    of the same arity (a scalar denominator on R' is carried through).

    The region constant term is the definition when the kernel body is a
    Laurent polynomial (no denominator factors).  A kernel presented over
    (part of) the q2-chain is evaluated through the residue form of the
    pairing with the two arguments exchanged, which agrees by symmetry.
    """
    n = kR.arity
    comp, rp_den = _second_arg(Rp, n)
    if comp.is_zero:
        return PV_ZERO
    if kR.den:
        p = ladder_numerator(kR)
        if p is None:
            raise RegionViolation(
                "kernel denominators must be empty or lie on the q2 chain"
            )
        val = _pair_residue_with_sign(comp, p, _calibrate_residue_sign())
        den = rp_den
        for c in kR.scalar_den:
            den = den * c
        return (val / PairingValue(den)).normalize()
    inv_num, inv_dens = _inv_zeta_factors(n)
    num = kR.num * comp.invert_vars() * inv_num
    weights = tuple(n - i for i in range(n))
    ct = ordered_constant_term(num, list(inv_dens), weights, verify=verify)
    den = ((Q2 - C_ONE) ** n) * rp_den
    for c in kR.scalar_den:
        den = den * c
    return PairingValue(ct, den).normalize()


def compositions(n: int):
    """Ordered tuples of positive integers summing to n."""
    if n == 0:
        return [()]
    out = []
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            out.append((first,) + rest)
    return out


_residue_sign: int | None = None


def _residue_once(num, dens, var, unit_coeff, target_exps, target_coeff):
    """One simple-pole residue at z_var = target (a monomial in the other
    variables): exactly one denominator factor must vanish there."""
    n = num.arity
    assign = {
        i: (C_ONE, tuple(1 if j == i else 0 for j in range(n))) for i in range(n)
    }
    assign[var] = (target_coeff, target_exps)
    vanishing = []
    kept = []
    for f in dens:
        if f.substitute(assign, n).is_zero:
            vanishing.append(f)
        else:
            kept.append(f)
    if len(vanishing) != 1:
        raise RegionViolation(
            f"expected a simple pole, found {len(vanishing)} vanishing factors"
        )
    parts = binomial_parts(vanishing[0])
    limit = -1 if parts[1][var] > 0 else 1
    num = num.substitute(assign, n)
    kept = [f.substitute(assign, n) for f in kept]
    return num, kept, unit_coeff * CoeffPoly.from_int(limit)


def _residue_term(R_comp: ZLaurent, p: ZLaurent, comp, sign: int) -> PairingValue:
    """One composition's contribution to the residue form of the pairing."""
    n = R_comp.arity
    inv_num = ZLaurent.one(n)
    dens = []
    for i in range(n - 1):
        e = [0] * n
        e[i] += 1
        e[i + 1] -= 1
        dens.append(ZLaurent.one(n) - ZLaurent.mono(n, e, Q2.unit_inverse()))
    for i in range(n):
        for j in range(i + 1, n):
            e = [0] * n
            e[i] += 1
            e[j] -= 1
            ratio = tuple(e)
            back = tuple(-x for x in e)
            inv_num = inv_num * (ZLaurent.one(n) - ZLaurent.mono(n, ratio))
            dens.append(ZLaurent.one(n) - ZLaurent.mono(n, ratio, Q1))
            dens.append(ZLaurent.one(n) - ZLaurent.mono(n, ratio, Q2))
            dens.append(ZLaurent.one(n) - ZLaurent.mono(n, back, Q1 * Q2))

    num = R_comp * p.invert_vars() * inv_num
    unit = C_ONE
    nres = 0
    offset = 0
    survivors = []
    for m in comp:
        last = offset + m - 1
        survivors.append(last)
        for j in range(m - 2, -1, -1):
            e_last = tuple(1 if i == last else 0 for i in range(n))
            num, dens, unit = _residue_once(
                num, dens, offset + j, unit, e_last, CoeffPoly.mono(0, m - 1 - j)
            )
            nres += 1
        offset += m

    # relabel surviving variables to x_1..x_k
    k = len(comp)
    assign = {i: (C_ONE, (0,) * k) for i in range(n)}
    for xi, zi in enumerate(survivors):
        assign[zi] = (C_ONE, tuple(1 if j == xi else 0 for j in range(k)))
    num = num.substitute(assign, k)
    dens = [f.substitute(assign, k) for f in dens]

    scalars: list[CoeffPoly] = []
    weights = tuple(range(1, k + 1))
    ct = ordered_constant_term(num, dens, weights, scalar_dens=scalars)
    den = (Q2 - C_ONE) ** n
    for c in scalars:
        den = den * c
    total_sign = sign**nres if nres else 1
    return PairingValue(ct * unit * CoeffPoly.from_int(total_sign), den)


def _poly_and_den(R):
    if isinstance(R, ScaledElem):
        return R.elem.single_component(), R.den
    if isinstance(R, ShuffleElem):
        return R.single_component(), C_ONE
    if isinstance(R, ZLaurent):
        return R, C_ONE
    raise TypeError("expected an algebra element")


def _pair_residue_with_sign(R, p: ZLaurent, sign: int) -> PairingValue:
    comp, rden = _poly_and_den(R)
    n = comp.arity
    if p.arity != n:
        raise ArityMismatch("ladder numerator arity mismatch")
    total = PV_ZERO
    for c in compositions(n):
        total = total + _residue_term(comp, p, c, sign)
    return (total / PairingValue(rden)).normalize()


def _calibrate_residue_sign() -> int:
    """Fix the contour-orientation sign by matching the region constant-term
    route on an n <= 2 suite of polynomial-body kernels, then freeze it."""
    global _residue_sign
    if _residue_sign is not None:
        return _residue_sign
    p10 = SlopePoint(1, 0)
    p11 = SlopePoint(1, 1)
    k_1010 = kernel_shuffle(pnd_kernel(p10), pnd_kernel(p10))
    k_1011 = kernel_shuffle(pnd_kernel(p10), pnd_kernel(p11))
    e_1010 = shuffle_mul(gen_P(p10), gen_P(p10))
    e_1011 = shuffle_mul(gen_P(p10), gen_P(p11))
    suite = [
        # (polynomial left argument, chain numerator of right, CT reference)
        (gen_P(p10), _h_ladder_numerator((p10,)), pair(pnd_kernel(p10), gen_H(p10))),
        (e_1010, _h_ladder_numerator((SlopePoint(2, 0),)), pair(k_1010, gen_H(SlopePoint(2, 0)))),
        (e_1011, _h_ladder_numerator((SlopePoint(2, 1),)), pair(k_1011, gen_H(SlopePoint(2, 1)))),
        (e_1010, ladder_numerator(pnd_kernel(SlopePoint(2, 0))), pair(k_1010, gen_P(SlopePoint(2, 0)))),
    ]
    for sign in (1, -1):
        if all(_pair_residue_with_sign(R, p, sign) == want for R, p, want in suite):
            _residue_sign = sign
            return sign
    raise CalibrationFailure("no global sign matches the constant-term pairing")


def residue_sign() -> int:
    return _calibrate_residue_sign()


def pair_residue(R, p: ZLaurent) -> PairingValue:
    """<R, R'> through iterated residues at the q2-string poles, where R is a
    polynomial element and R' is presented by the ladder-kernel numerator p
    (denominator = the full consecutive q2-ladder chain)."""
    return _pair_residue_with_sign(R, p, _calibrate_residue_sign())


@dataclass(frozen=True)
class ConvexPath:
    """Multiset of lattice points with weakly increasing slopes, canonical up
    to reordering same-slope points (sorted by slope, then n, then d)."""

    points: tuple

    @staticmethod
    def of(points) -> "ConvexPath":
        pts = tuple(
            sorted(
                (SlopePoint.of(p) for p in points),
                key=lambda p: (p.slope, p.n, p.d),
            )
        )
        return ConvexPath(pts)

    def __post_init__(self):
        for a, b in zip(self.points, self.points[1:]):
            if a.slope > b.slope:
                raise ValueError("slopes must be weakly increasing")

    @property
    def bidegree(self):
        return (sum(p.n for p in self.points), sum(p.d for p in self.points))

    def sort_key(self):
        return tuple((p.slope, p.n, p.d) for p in self.points)

    def slope_partitions(self):
        """For each slope mu, the partition of multiples t with (n,d) = t*(base)."""
        groups: dict[Fraction, list[int]] = {}
        for p in self.points:
            groups.setdefault(p.slope, []).append(p.t)
        return {mu: Partition(sorted(ts, reverse=True)) for mu, ts in groups.items()}

    def z_norm(self) -> int:
        out = 1
        for lam in self.slope_partitions().values():
            out *= z_lambda(lam)
        return out

    def to_doc(self):
        return [[p.n, p.d] for p in self.points]

    def __repr__(self):
        return "ConvexPath(" + ", ".join(f"({p.n},{p.d})" for p in self.points) + ")"


def convex_paths(n: int, d: int, window) -> list[ConvexPath]:
    """All canonical convex paths of bidegree (n, d) with every slope inside
    the closed window [lo, hi], in lexicographic order."""
    lo, hi = (Fraction(w) for w in window)
    if lo > hi:
        raise ValueError("empty slope window")
    candidates = []
    for m in range(1, n + 1):
        emin = math.ceil(lo * m)
        emax = math.floor(hi * m)
        for e in range(emin, emax + 1):
            candidates.append(SlopePoint(m, e))
    candidates.sort(key=lambda p: (p.slope, p.n, p.d))

    out = []

    def rec(idx, n_rem, d_rem, acc):
        if n_rem == 0:
            if d_rem == 0:
                out.append(ConvexPath(tuple(acc)))
            return
        for i in range(idx, len(candidates)):
            p = candidates[i]
            if p.n > n_rem:
                continue
            rest_n = n_rem - p.n
            rest_d = d_rem - p.d
            # remaining slopes lie in [p.slope, hi]
            if rest_n == 0:
                if rest_d == 0:
                    out.append(ConvexPath(tuple(acc + [p])))
                continue
            if rest_d < math.ceil(p.slope * rest_n) or rest_d > math.floor(hi * rest_n):
                continue
            acc.append(p)
            rec(i, rest_n, rest_d, acc)
            acc.pop()

    rec(0, n, d, [])
    out.sort(key=ConvexPath.sort_key)
    return out


@lru_cache(maxsize=None)
def path_element(points, family: str):
    """Shuffle product of the family generators along the canonical order."""
    path = ConvexPath.of(points)
    gens = {
        "P": lambda p: ScaledElem.wrap(gen_P(p)),
        "Pbar": gen_Pbar,
        "H": lambda p: ScaledElem.wrap(gen_H(p)),
        "Hbar": lambda p: ScaledElem.wrap(gen_Hbar(p)),
    }[family]
    out = ScaledElem(ShuffleElem.one())
    for p in path.points:
        out = out * gens(p)
    return out.normalize()


@lru_cache(maxsize=None)
def path_kernel(points, family: str) -> Kernel:
    """Composed kernel presentation of the family product along the path."""
    path = ConvexPath.of(points)
    kernels = {
        "P": pnd_kernel,
        "Pbar": _pbar_kernel,
        "H": h_kernel,
        "Hbar": hbar_kernel,
    }[family]
    kern = None
    for p in path.points:
        k = kernels(p)
        kern = k if kern is None else kernel_shuffle(kern, k)
    if kern is None:
        raise ValueError("empty path has no kernel")
    return kern


def _pbar_kernel(p: SlopePoint) -> Kernel:
    num, den = gamma(p)
    return pnd_kernel(p).scaled(num, (den,))


@lru_cache(maxsize=None)
def _h_ladder_numerator(points) -> ZLaurent:
    """Numerator p of the ladder presentation of H_v: the composed kernel
    numerator times the boundary ladder factors that complete the full
    consecutive chain."""
    kern = path_kernel(points, "H")
    n = kern.arity
    num = kern.num
    path = ConvexPath.of(points)
    boundaries = []
    s = 0
    for p in path.points[:-1]:
        s += p.n
        boundaries.append(s - 1)
    for b in boundaries:
        e = [0] * n
        e[b + 1] += 1
        e[b] -= 1
        num = num * (ZLaurent.one(n) - ZLaurent.mono(n, e, Q2.unit_inverse()))
    return num


def h_ladder_numerator(path: ConvexPath) -> ZLaurent:
    return _h_ladder_numerator(tuple(path.points))


def _elem_bidegree(R):
    elem = R.elem if isinstance(R, ScaledElem) else R
    if elem.homogeneous is None:
        raise ValueError("element is not homogeneous")
    return elem.homogeneous


def pair_against_path(R, v: ConvexPath, family: str = "H") -> PairingValue:
    """<R, X_v> for X in {H, P, Pbar}, evaluated through the residue form
    with X_v in its chain presentation."""
    if family == "H":
        p = _h_ladder_numerator(tuple(v.points))
        extra = C_ONE
    elif family in ("P", "Pbar"):
        kern = path_kernel(tuple(v.points), family)
        p = ladder_numerator(kern)
        extra = C_ONE
        for c in kern.scalar_den:
            extra = extra * c
    else:
        raise ValueError("family must be H, P or Pbar")
    val = pair_residue(R, p)
    if not extra.is_one:
        val = val / PairingValue(extra)
    return val.normalize()


def integrality_check(R, window):
    """True iff <R, H_v> is integral for every convex path v of R's bidegree
    inside the window; returns (flag, offending path or None)."""
    n, d = _elem_bidegree(R)
    for v in convex_paths(n, d, window):
        if not pair_against_path(R, v, "H").is_integral:
            return False, v
    return True, None


def _solve(matrix, rhs):
    """Gaussian elimination over PairingValue; returns None when singular."""
    m = len(rhs)
    if m == 0:
        return []
    cols = len(matrix[0]) if matrix else 0
    A = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    piv_cols = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, m) if not A[i][c].is_zero), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c]
        A[r] = [x / inv for x in A[r]]
        for i in range(m):
            if i != r and not A[i][c].is_zero:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if not A[i][cols].is_zero:
            return None
    sol = [PV_ZERO] * cols
    for i, c in enumerate(piv_cols):
        sol[c] = A[i][cols]
    return sol


def pbw_expand(R, window):
    """Coefficients c_v with R = sum_v c_v Hbar_v over the window's paths,
    solved through the Gram system against the H_v and verified by exact
    re-expansion.  Raises :class:`NotInSpan` when the window is too small."""
    elem = ScaledElem.wrap(R)
    n, d = _elem_bidegree(elem)
    paths = convex_paths(n, d, window)
    if not paths:
        if elem.is_zero:
            return []
        raise NotInSpan(elem)
    rows = [
        [
            pair_against_path(path_element(tuple(v.points), "Hbar"), w, "H")
            for w in paths
        ]
        for v in paths
    ]
    rhs = [pair_against_path(elem, w, "H") for w in paths]
    # solve sum_i c_i <Hbar_{v_i}, H_{w_j}> = <R, H_{w_j}> for all j
    matrix = [[rows[i][j] for i in range(len(paths))] for j in range(len(paths))]
    sol = _solve(matrix, rhs)
    if sol is None:
        raise NotInSpan(elem)
    acc = ScaledElem(ShuffleElem.zero())
    for c, v in zip(sol, paths):
        hbar = path_element(tuple(v.points), "Hbar")
        acc = acc + ScaledElem(hbar.elem.scale(c.num), hbar.den * c.den)
    if not acc == elem:
        raise NotInSpan(acc - elem)
    return [(v, c.normalize()) for v, c in zip(paths, sol)]


def window_stable(R, window) -> bool:
    """True when enlarging the window by one unit on both sides changes
    neither the expansion coefficients nor adds a nonzero one."""
    lo, hi = (Fraction(w) for w in window)
    base = {tuple(map(tuple, v.to_doc())): c for v, c in pbw_expand(R, window)}
    wide = pbw_expand(R, (lo - 1, hi + 1))
    for v, c in wide:
        key = tuple(map(tuple, v.to_doc()))
        if key in base:
            if not c == base[key]:
                return False
        elif not c.is_zero:
            return False
    return True
