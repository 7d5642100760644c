"""Generator families P, Pbar, H, Hbar, Hbar', S' and the slope dictionary.

Every family is the full symmetrization of a ladder kernel

    prod_i z_i^{floor(i d/n) - floor((i-1) d/n)} * (extras)
    -----------------------------------------------------  * prod zeta
           prod_{i<n} (1 - z_{i+1} / (z_i w))

with ladder parameter w one of q2, q1, q3 = 1/(q1 q2), and family-specific
numerator extras and scalar prefactors.  Within a fixed slope d/n the
generators realize the ring of symmetric functions: Pbar plays the power
sums, Hbar the complete homogeneous ones, and the primed family is the
rescaling p_t -> p_t (q1^t - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arith import C_ONE, CoeffPoly, Q1, Q2, Q3, ZLaurent, exact_div, unit_quotient
from .errors import InternalContradiction, NotDivisible, NotPolynomial
from .membership import Partition
from .shuffle import (
    Kernel,
    ScaledElem,
    ShuffleElem,
    f_n,
    shuffle_mul,
    sym_full,
)


@dataclass(frozen=True)
class SlopePoint:
    """Lattice point (n, d) with n >= 1; t = gcd(n, d), a = n/t."""

    n: int
    d: int
    t: int = field(init=False)
    a: int = field(init=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        t = math.gcd(self.n, self.d)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "a", self.n // t)

    @property
    def slope(self) -> Fraction:
        return Fraction(self.d, self.n)

    @staticmethod
    def of(x) -> "SlopePoint":
        if isinstance(x, SlopePoint):
            return x
        return SlopePoint(int(x[0]), int(x[1]))


_LADDER = {"q1": Q1, "q2": Q2, "q3": Q3}


def _ladder_exponents(n: int, d: int):
    return [(i * d) // n - ((i - 1) * d) // n for i in range(1, n + 1)]


def _ladder_dens(n: int, w: CoeffPoly):
    """(1 - z_{i+1} / (z_i w)) for consecutive variables."""
    winv = w.unit_inverse()
    dens = []
    for i in range(n - 1):
        e = [0] * n
        e[i + 1] += 1
        e[i] -= 1
        dens.append(ZLaurent.one(n) - ZLaurent.mono(n, e, winv))
    return dens


def _ratio_mono(n: int, i: int, j: int, c: CoeffPoly) -> ZLaurent:
    e = [0] * n
    e[i] += 1
    e[j] -= 1
    return ZLaurent.mono(n, e, c)


def pnd_kernel(p: SlopePoint, flavor: str = "q2") -> Kernel:
    """Kernel of the power-sum generator: ladder numerator times the t-term
    correction sum, over the ladder denominators."""
    n, d, t, a = p.n, p.d, p.t, p.a
    w = _LADDER[flavor]
    winv = w.unit_inverse()
    num = ZLaurent.mono(n, _ladder_exponents(n, d))
    total = ZLaurent.zero(n)
    term = ZLaurent.one(n)
    total = total + term
    for s in range(1, t):
        # multiply by w^{-1} z_{a(t-s)+1} / z_{a(t-s)} (1-based indices)
        idx = a * (t - s)
        term = term * _ratio_mono(n, idx, idx - 1, winv)
        total = total + term
    return Kernel(n, num * total, _ladder_dens(n, w), check=False)


def h_kernel(p: SlopePoint) -> Kernel:
    """Kernel of the complete-homogeneous generator (plain q2 ladder)."""
    n = p.n
    return Kernel(
        n, ZLaurent.mono(n, _ladder_exponents(n, p.d)), _ladder_dens(n, Q2),
        check=False,
    )


def hbar_kernel(p: SlopePoint, via: str = "end1") -> Kernel:
    """Kernel of the integral complete-homogeneous generator, either the
    (q1, q3)-form (end1) or its mirror with q1 and q3 exchanged (end2).
    Carries the scalar denominator (w-1)(w^2-1)...(w^t-1)."""
    n, t, a = p.n, p.t, p.a
    if via == "end1":
        wlad, ws = Q3, Q1
        prefactor = ((Q1 - C_ONE) ** n) * ((Q2 - C_ONE) ** n)
    elif via == "end2":
        wlad, ws = Q1, Q3
        prefactor = ((Q2 - C_ONE) ** n) * ((Q3 - C_ONE) ** n)
    else:
        raise ValueError("via must be 'end1' or 'end2'")
    num = ZLaurent.mono(n, _ladder_exponents(n, p.d), prefactor)
    wladinv = wlad.unit_inverse()
    for s in range(1, t):
        idx = a * s
        factor = ZLaurent.scalar(n, ws**s) - _ratio_mono(n, idx, idx - 1, wladinv)
        num = num * factor
    scalar_den = tuple(ws**s - C_ONE for s in range(1, t + 1))
    return Kernel(n, num, _ladder_dens(n, wlad), scalar_den, check=False)


def hbar_prime_kernel(p: SlopePoint) -> Kernel:
    n = p.n
    num = ZLaurent.mono(
        n, _ladder_exponents(n, p.d), ((Q1 - C_ONE) ** n) * ((Q2 - C_ONE) ** n)
    )
    return Kernel(n, num, _ladder_dens(n, Q3), check=False)


def sprime_kernel(p: SlopePoint, eps) -> Kernel:
    eps = tuple(int(b) for b in eps)
    if len(eps) != p.t - 1:
        raise ValueError(f"epsilon must have length t-1 = {p.t - 1}")
    if any(b not in (0, 1) for b in eps):
        raise ValueError("epsilon entries must be 0 or 1")
    n, a = p.n, p.a
    num = ZLaurent.mono(
        n, _ladder_exponents(n, p.d), ((Q1 - C_ONE) ** n) * ((Q2 - C_ONE) ** n)
    )
    minus_q3inv = -(Q3.unit_inverse())
    for s, bit in enumerate(eps, start=1):
        if bit:
            idx = a * s
            num = num * _ratio_mono(n, idx, idx - 1, minus_q3inv)
    return Kernel(n, num, _ladder_dens(n, Q3), check=False)


def gamma(p: SlopePoint) -> tuple[CoeffPoly, CoeffPoly]:
    """(num, den) of (q2^t-1)(q1-1)^n(q3-1)^n / ((q1^t-1)(q3^t-1))."""
    n, t = p.n, p.t
    num = (Q2**t - C_ONE) * ((Q1 - C_ONE) ** n) * ((Q3 - C_ONE) ** n)
    den = (Q1**t - C_ONE) * (Q3**t - C_ONE)
    return num, den


def _gamma_alt(p: SlopePoint, flavor: str) -> tuple[CoeffPoly, CoeffPoly]:
    n, t = p.n, p.t
    w = _LADDER[flavor]
    num = (w**t - C_ONE) * ((Q2 - C_ONE) ** n)
    den = ((w - C_ONE) ** n) * (Q2**t - C_ONE)
    return num, den


@lru_cache(maxsize=None)
def gen_P(p) -> ShuffleElem:
    p = SlopePoint.of(p)
    return ShuffleElem([sym_full(pnd_kernel(p))], check=False)


@lru_cache(maxsize=None)
def gen_Pbar(p) -> ScaledElem:
    p = SlopePoint.of(p)
    num, den = gamma(p)
    return ScaledElem(gen_P(p).scale(num), den).normalize()


@lru_cache(maxsize=None)
def gen_P_alt(p, flavor: str) -> ScaledElem:
    """Alternate ladder-parameter formula for the power sum, including its
    prefactor; equal to gen_P exactly."""
    p = SlopePoint.of(p)
    if flavor not in ("q1", "q3"):
        raise ValueError("flavor must be 'q1' or 'q3'")
    num, den = _gamma_alt(p, flavor)
    raw = sym_full(pnd_kernel(p, flavor))
    return ScaledElem(ShuffleElem([raw], check=False).scale(num), den).normalize()


@lru_cache(maxsize=None)
def gen_H(p) -> ShuffleElem:
    p = SlopePoint.of(p)
    return ShuffleElem([sym_full(h_kernel(p))], check=False)


@lru_cache(maxsize=None)
def gen_Hbar(p, via: str = "end1") -> ShuffleElem:
    p = SlopePoint.of(p)
    kern = hbar_kernel(p, via)
    raw = sym_full(kern)
    for c in kern.scalar_den:
        try:
            raw = exact_div(raw, ZLaurent.scalar(0, c))
        except NotDivisible as exc:
            raise InternalContradiction(
                "scalar denominator of the integral generator failed to clear"
            ) from exc
    return ShuffleElem([raw], check=False)


@lru_cache(maxsize=None)
def gen_Hbar_prime(p) -> ShuffleElem:
    p = SlopePoint.of(p)
    return ShuffleElem([sym_full(hbar_prime_kernel(p))], check=False)


@lru_cache(maxsize=None)
def gen_Sprime(p, eps) -> ShuffleElem:
    p = SlopePoint.of(p)
    return ShuffleElem([sym_full(sprime_kernel(p, eps))], check=False)


def gen_F(n: int) -> ShuffleElem:
    return f_n(n)


FAMILIES = {
    "P": lambda p, eps=None: gen_P(p),
    "Pbar": lambda p, eps=None: gen_Pbar(p),
    "H": lambda p, eps=None: gen_H(p),
    "Hbar": lambda p, eps=None: gen_Hbar(p),
    "HbarPrime": lambda p, eps=None: gen_Hbar_prime(p),
    "Sprime": lambda p, eps=None: gen_Sprime(p, eps or ()),
    "F": lambda p, eps=None: gen_F(SlopePoint.of(p).n),
}


def z_lambda(lam) -> int:
    """prod of parts times prod over part values of multiplicity!."""
    lam = Partition(lam)
    out = 1
    for p in lam:
        out *= p
    for v in set(lam):
        out *= math.factorial(lam.multiplicity(v))
    return out


def _int_partitions(t: int):
    def rec(m, maxp):
        if m == 0:
            yield ()
            return
        for first in range(min(m, maxp), 0, -1):
            for rest in rec(m - first, first):
                yield (first,) + rest

    return list(rec(t, t))


def slope_H_from_P(n: int, d: int, t: int, barred: bool) -> ScaledElem:
    """h_t as sum over partitions mu of t of p_mu / z_mu, transported to the
    slope d/n subalgebra (gcd(n, d) = 1)."""
    total = ScaledElem(ShuffleElem.zero())
    for mu in _int_partitions(t):
        prod = ScaledElem(ShuffleElem.one())
        for part in mu:
            factor = (
                gen_Pbar((n * part, d * part))
                if barred
                else ScaledElem(gen_P((n * part, d * part)))
            )
            prod = prod * factor
        total = total + prod.scale_div(z_lambda(Partition(mu)))
    return total.normalize()


def slope_P_from_H(n: int, d: int, t: int, barred: bool) -> ScaledElem:
    """Newton recurrence p_t = t h_t - sum_{i<t} p_i h_{t-i} on the slope."""
    hs = {
        s: ScaledElem(
            ShuffleElem(
                [gen_Hbar((n * s, d * s)).single_component()]
                if barred
                else [gen_H((n * s, d * s)).single_component()],
                check=False,
            )
        )
        for s in range(1, t + 1)
    }
    ps: dict[int, ScaledElem] = {}
    for s in range(1, t + 1):
        acc = hs[s].scale(s)
        for i in range(1, s):
            acc = acc - ps[i] * hs[s - i]
        ps[s] = acc.normalize()
    return ps[t]


def series_convert(n: int, d: int, tmax: int, basis: str, barred: bool = False):
    """Exponential-series dictionary on the slope d/n (n, d coprime).

    basis 'PtoH': checks H_{nt,dt} = sum_{mu |- t} P_mu / z_mu for t <= tmax;
    basis 'HtoP': checks the Newton recurrence recovers P_{nt,dt}.
    Returns one record per t with the expansion table and verification flag;
    raises InternalContradiction when an identity fails.
    """
    if math.gcd(n, d) != 1:
        raise ValueError("slope base point must be coprime")
    records = []
    for t in range(1, tmax + 1):
        if basis == "PtoH":
            combo = slope_H_from_P(n, d, t, barred)
            ref = gen_Hbar((n * t, d * t)) if barred else gen_H((n * t, d * t))
            table = [
                {"partition": list(mu), "den": z_lambda(Partition(mu))}
                for mu in _int_partitions(t)
            ]
        elif basis == "HtoP":
            combo = slope_P_from_H(n, d, t, barred)
            ref = (
                gen_Pbar((n * t, d * t))
                if barred
                else ScaledElem(gen_P((n * t, d * t)))
            )
            table = [{"newton": t}]
        else:
            raise ValueError("basis must be 'PtoH' or 'HtoP'")
        ok = combo == ScaledElem.wrap(ref)
        if not ok:
            raise InternalContradiction(
                f"series identity failed at t={t} on slope {d}/{n}"
            )
        records.append({"t": t, "bidegree": [n * t, d * t], "table": table,
                        "verified": True})
    return records


def f_to_h_sign(n: int) -> int:
    """The unit with Hbar_{n,0} = sign * q1^{n(n-1)/2} * F_n; must be +-1."""
    lhs = gen_Hbar((n, 0)).single_component()
    rhs = f_n(n).single_component().scale(CoeffPoly.mono(n * (n - 1) // 2, 0))
    u = unit_quotient(lhs, rhs)
    if u is None:
        raise InternalContradiction(
            "Hbar at slope 0 is not a unit multiple of the rescaled F"
        )
    c = u.constant_coeff()
    if c == CoeffPoly.from_int(1):
        return 1
    if c == CoeffPoly.from_int(-1):
        return -1
    raise InternalContradiction("slope-0 comparison unit is not a bare sign")
