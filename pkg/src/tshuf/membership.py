"""Integral membership: specializations, divisibility kernels, reduction.

A symmetric Laurent polynomial R in n variables belongs to the integral
shuffle algebra iff for every partition (n_1 >= ... >= n_k) of n the
specialization of the z's to geometric q2-strings

    x_i q2^{n_i-1}, ..., x_i q2, x_i        (one string per part)

is divisible by a fixed product of scalar zeta values and cross-string
linear factors.  The reduction algorithm rewrites any member as a finite
sum of symmetrizations of block-symmetric kernels against products of F_t,
working down the lexicographic list of partitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arith import (
    C_ONE,
    CoeffPoly,
    Q1,
    Q2,
    RatExpr,
    ZLaurent,
    exact_div,
    monomial_symmetric,
    unit_quotient,
)
from .errors import (
    InternalContradiction,
    NonTermination,
    NotDivisible,
    NotInS,
    NotPolynomial,
)
from .shuffle import ShuffleElem, _sym_engine, f_n

REDUCE_LOOP_FACTOR = 10


class Partition(tuple):
    """Weakly decreasing positive parts."""

    def __new__(cls, parts):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError("parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("parts must be weakly decreasing")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def transpose(self) -> "Partition":
        if not self:
            return Partition(())
        return Partition(
            tuple(sum(1 for p in self if p >= i) for i in range(1, self[0] + 1))
        )

    def multiplicity(self, value: int) -> int:
        return sum(1 for p in self if p == value)


def partitions_desc(n: int):
    """All partitions of n in decreasing lexicographic order: (n) first,
    (1,...,1) last."""
    def rec(m, maxp):
        if m == 0:
            yield ()
            return
        for first in range(min(m, maxp), 0, -1):
            for rest in rec(m - first, first):
                yield (first,) + rest

    return [Partition(p) for p in rec(n, n)]


def _string_assignment(lam: Partition, ascending: bool = False):
    """Per-variable substitution for the geometric-string specialization."""
    k = len(lam)
    assign = {}
    pos = 0
    for i, ni in enumerate(lam):
        e = tuple(1 if j == i else 0 for j in range(k))
        for o in range(ni):
            power = o if ascending else ni - 1 - o
            assign[pos] = (CoeffPoly.mono(0, power), e)
            pos += 1
    return assign


def phi(R, lam: Partition, ascending: bool = False) -> ZLaurent:
    """Specialize the n z-variables to the q2-strings of lam, in x_1..x_k.

    For symmetric R the string orientation is immaterial.
    """
    if isinstance(R, ShuffleElem):
        R = R.single_component()
    lam = Partition(lam)
    if lam.size != R.arity:
        raise ValueError("partition size does not match arity")
    return R.substitute(_string_assignment(lam, ascending), len(lam))


@lru_cache(maxsize=None)
def zeta_q2(s: int) -> RatExpr:
    """zeta(q2^s) as an arity-0 rational expression."""
    num = (
        ZLaurent.scalar(0, C_ONE - CoeffPoly.mono(1, s))
        * ZLaurent.scalar(0, C_ONE - CoeffPoly.mono(0, s + 1))
        * ZLaurent.scalar(0, C_ONE - CoeffPoly.mono(1, 1 - s))
    )
    return RatExpr(num, [ZLaurent.scalar(0, C_ONE - CoeffPoly.mono(0, s))])


def _line1(lam: Partition) -> CoeffPoly:
    """prod_i (1-q2)^{n_i} prod_{s<n_i} zeta(q2^s)^{n_i-s}, a scalar."""
    acc = RatExpr(ZLaurent.one(0))
    for ni in lam:
        acc = acc * RatExpr(ZLaurent.scalar(0, (C_ONE - Q2) ** ni))
        for s in range(1, ni):
            z = zeta_q2(s)
            for _ in range(ni - s):
                acc = acc * z
    return acc.to_polynomial().as_coeff()


def _linear(k: int, i: int, ci: CoeffPoly, j: int, cj: CoeffPoly) -> ZLaurent:
    """ci*x_i - cj*x_j (0-based indices)."""
    ei = tuple(1 if m == i else 0 for m in range(k))
    ej = tuple(1 if m == j else 0 for m in range(k))
    return ZLaurent(k, {ei: ci, ej: -cj})


def _line2(lam: Partition) -> ZLaurent:
    k = len(lam)
    out = ZLaurent.one(k)
    for i in range(k):
        for j in range(i + 1, k):
            for a in range(1, lam[i]):
                for b in range(lam[j]):
                    out = out * _linear(k, i, Q1, j, CoeffPoly.mono(0, b - a))
            for a in range(1, lam[i]):
                for b in range(lam[j]):
                    out = out * _linear(k, j, Q1, i, CoeffPoly.mono(0, a - b - 1))
    return out


def _prod_final(lam: Partition) -> ZLaurent:
    """The symmetric rewriting of the cross-string factors."""
    k = len(lam)
    out = ZLaurent.one(k)
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            for a in range(min(lam[i] - lam[j], 0) + 1, lam[i]):
                for b in range(min(lam[i], lam[j])):
                    out = out * _linear(k, i, Q1, j, CoeffPoly.mono(0, b - a))
    return out


@lru_cache(maxsize=None)
def divisibility_kernel(lam) -> ZLaurent:
    """The divisor attached to a partition: scalar line times cross-string
    linear factors.  The two published forms of the cross-string product are
    both computed and must agree up to a unit monomial."""
    lam = Partition(lam)
    if not lam:
        raise ValueError("partition must be nonempty")
    line2 = _line2(lam)
    if len(lam) > 1:
        alt = _prod_final(lam)
        if unit_quotient(line2, alt) is None:
            raise InternalContradiction(
                "cross-string product and its symmetric form differ beyond a unit"
            )
    return line2.scale(_line1(lam))


@lru_cache(maxsize=None)
def pi3(lam) -> ZLaurent:
    """prod_{a != b} prod_{u=max(n_a-n_b,0)+1}^{n_a} (1 - x_a q2^u / x_b)."""
    lam = Partition(lam)
    k = len(lam)
    out = ZLaurent.one(k)
    for a in range(k):
        for b in range(k):
            if a == b:
                continue
            for u in range(max(lam[a] - lam[b], 0) + 1, lam[a] + 1):
                e = [0] * k
                e[a] += 1
                e[b] -= 1
                out = out * (ZLaurent.one(k) - ZLaurent.mono(k, e, CoeffPoly.mono(0, u)))
    return out


@dataclass(frozen=True)
class MembershipReport:
    member: bool
    witness_partition: Partition | None = None
    witness_remainder: ZLaurent | None = None

    def to_doc(self):
        doc = {"verdict": "in" if self.member else "out"}
        if not self.member:
            doc["witness"] = {
                "lambda": list(self.witness_partition),
                "remainder": self.witness_remainder.to_doc(),
            }
        return doc


def is_in_S(R: ShuffleElem) -> MembershipReport:
    """Divisibility test over every arity component and every partition."""
    for n in R.arities():
        if n == 0:
            continue
        comp = R.component(n)
        for lam in partitions_desc(n):
            spec = phi(comp, lam)
            if n <= 3 and spec != phi(comp, lam, ascending=True):
                raise InternalContradiction(
                    "string orientation changed a symmetric specialization"
                )
            try:
                exact_div(spec, divisibility_kernel(lam))
            except NotDivisible as exc:
                return MembershipReport(False, lam, exc.remainder)
    return MembershipReport(True)


def wheel_check(R: ShuffleElem) -> bool:
    """Vanishing at (x, x q2, x q1 q2, ...) and (x, x q2, x q1^{-1}, ...)."""
    comp = R.single_component()
    n = comp.arity
    if n < 3:
        raise ValueError("wheel conditions require arity >= 3")
    m = n - 2
    for third in (Q1 * Q2, Q1.unit_inverse()):
        assign = {
            0: (C_ONE, tuple(1 if j == 0 else 0 for j in range(m))),
            1: (Q2, tuple(1 if j == 0 else 0 for j in range(m))),
            2: (third, tuple(1 if j == 0 else 0 for j in range(m))),
        }
        for i in range(3, n):
            assign[i] = (C_ONE, tuple(1 if j == i - 2 else 0 for j in range(m)))
        if not comp.substitute(assign, m).is_zero:
            return False
    return True


def _block_layout(lam: Partition):
    """Transpose parts (block sizes) and their slot offsets."""
    t = lam.transpose()
    offsets = []
    s = 0
    for ti in t:
        offsets.append(s)
        s += ti
    return t, offsets


@lru_cache(maxsize=None)
def good_insertion_factor(lam) -> ZLaurent:
    """Value in x_1..x_k of prod_i F_{t_i} * (cross zeta product) at the one
    surviving insertion of the q2-strings into the block kernel.

    Equals the divisibility kernel times the pi3 product up to a unit
    monomial; computed directly and checked against that product.
    """
    lam = Partition(lam)
    k = len(lam)
    t, _ = _block_layout(lam)
    p = len(t)

    acc = RatExpr(ZLaurent.one(k))
    # F_{t_i} at block values x_a q2^{n_a - i}: factors 1 - q2^{1+n_a-n_b} x_a/x_b
    for i in range(1, p + 1):
        ti = t[i - 1]
        for a in range(ti):
            for b in range(ti):
                if a == b:
                    acc = acc * RatExpr(ZLaurent.scalar(k, C_ONE - Q2))
                else:
                    e = [0] * k
                    e[a] += 1
                    e[b] -= 1
                    f = ZLaurent.one(k) - ZLaurent.mono(
                        k, e, CoeffPoly.mono(0, 1 + lam[a] - lam[b])
                    )
                    acc = acc * RatExpr(f)
    # cross zeta between blocks i < j at ratio q2^{(n_a-i)-(n_b-j)} x_a/x_b
    for i in range(1, p + 1):
        for j in range(i + 1, p + 1):
            for a in range(t[i - 1]):
                for b in range(t[j - 1]):
                    if a == b:
                        zz = zeta_q2(j - i)
                        acc = acc * RatExpr(
                            ZLaurent.scalar(k, zz.num.as_coeff()),
                            [ZLaurent.scalar(k, f.as_coeff()) for f in zz.den],
                        )
                    else:
                        c = (lam[a] - i) - (lam[b] - j)
                        e = [0] * k
                        e[a] += 1
                        e[b] -= 1

                        def mono(extra: CoeffPoly, flip=False):
                            ee = tuple(-x for x in e) if flip else tuple(e)
                            return ZLaurent.mono(
                                k, ee, extra * CoeffPoly.mono(0, c if not flip else -c)
                            )

                        num = (
                            (ZLaurent.one(k) - mono(Q1))
                            * (ZLaurent.one(k) - mono(Q2))
                            * (ZLaurent.one(k) - mono(Q1 * Q2, flip=True))
                        )
                        acc = acc * RatExpr(num, [ZLaurent.one(k) - mono(C_ONE)])
    try:
        G = acc.to_polynomial()
    except NotPolynomial as exc:
        raise InternalContradiction(
            "good-insertion factor failed to clear to a polynomial"
        ) from exc
    ref = divisibility_kernel(lam) * pi3(lam)
    if unit_quotient(G, ref) is None:
        raise InternalContradiction(
            "good-insertion factor disagrees with kernel * pi3 beyond a unit"
        )
    return G


def phi_blocks(rho: ZLaurent, lam: Partition) -> ZLaurent:
    """Block insertion: slot o of block i is sent to x_{o+1} q2^{n_{o+1}-i}.

    For block-symmetric rho this is the value of every surviving insertion.
    """
    lam = Partition(lam)
    k = len(lam)
    t, offsets = _block_layout(lam)
    assign = {}
    for i in range(1, len(t) + 1):
        for o in range(t[i - 1]):
            e = tuple(1 if j == o else 0 for j in range(k))
            assign[offsets[i - 1] + o] = (CoeffPoly.mono(0, lam[o] - i), e)
    return rho.substitute(assign, k)


def expand_reduction_step(lam: Partition, rho: ZLaurent) -> ShuffleElem:
    """Coset symmetrization of rho * prod_i F_{t_i}(block i) against the
    cross-block zeta product."""
    lam = Partition(lam)
    n = lam.size
    t, offsets = _block_layout(lam)
    body = rho
    for i, ti in enumerate(t):
        emb = {
            o: (C_ONE, tuple(1 if j == offsets[i] + o else 0 for j in range(n)))
            for o in range(ti)
        }
        body = body * f_n(ti).component(ti).substitute(emb, n)
    return ShuffleElem([_sym_engine(n, tuple(t), body)], check=False)


def _group_ranges(lam: Partition):
    """x-index ranges by part value: group g (1-based) is the run of parts
    equal to g; empty groups are allowed."""
    t = lam.transpose() + (0,)
    p = lam[0] if lam else 0
    return {g: range(t[g], t[g - 1]) for g in range(1, p + 1)}


def _measure(poly: ZLaurent, groups) -> tuple:
    """Lexicographic max over monomials of the per-group degree sequence."""
    best = None
    for e in poly.terms:
        seq = tuple(sum(e[a] for a in groups[g]) for g in sorted(groups))
        if best is None or seq > best:
            best = seq
    return best if best is not None else ()


def solve_block_preimage(A: ZLaurent, lam: Partition) -> ZLaurent:
    """Find block-symmetric rho with phi_blocks(rho) = A.

    Works on a polynomial shift of A; each pass matches the monomial
    symmetric decomposition of the target on the diagonal and strictly
    decreases the per-group degree measure.
    """
    lam = Partition(lam)
    k = len(lam)
    n = lam.size
    t, offsets = _block_layout(lam)
    groups = _group_ranges(lam)
    for g, rng in groups.items():
        for a in rng:
            if lam[a] != g:
                raise InternalContradiction("group layout disagrees with parts")

    if A.is_zero:
        return ZLaurent.zero(n)
    for g, rng in groups.items():
        for a in rng:
            if a + 1 in rng:
                sigma = list(range(k))
                sigma[a], sigma[a + 1] = a + 1, a
                if A.permute(sigma) != A:
                    raise InternalContradiction(
                        "target is not symmetric within equal-part groups"
                    )
    shift = max(0, -min(x for e in A.terms for x in e))
    target = A.mul_mono((shift,) * k) if shift else A

    rho = ZLaurent.zero(n)
    limit = REDUCE_LOOP_FACTOR * len(target.terms) + 50
    last = None
    iterations = 0
    while not target.is_zero:
        iterations += 1
        if iterations > limit:
            raise NonTermination("correction loop exceeded its iteration cap")
        cur = _measure(target, groups)
        if last is not None and cur >= last:
            raise NonTermination("correction-loop measure failed to decrease")
        last = cur

        pieces: dict[tuple, CoeffPoly] = {}
        for e, c in target.terms.items():
            key = tuple(
                tuple(sorted((e[a] for a in groups[g]), reverse=True))
                for g in sorted(groups)
            )
            if e == _key_rep(key, groups, k):
                pieces[key] = c
        step = ZLaurent.zero(n)
        for key, c in pieces.items():
            term = ZLaurent.one(n)
            for gi, nu in enumerate(key, start=1):
                m = monomial_symmetric(nu, t[gi - 1])
                emb = {
                    o: (
                        C_ONE,
                        tuple(
                            1 if j == offsets[gi - 1] + o else 0 for j in range(n)
                        ),
                    )
                    for o in range(t[gi - 1])
                }
                term = term * m.substitute(emb, n)
            step = step + term.scale(c)
        rho = rho + step
        target = target - phi_blocks(step, lam)

    if shift:
        e1 = [0] * n
        for o in range(t[0]):
            e1[offsets[0] + o] = -shift
        rho = rho.mul_mono(
            tuple(e1), CoeffPoly.mono(0, shift * sum(ni - 1 for ni in lam))
        )
    return rho


def _key_rep(key, groups, k: int) -> tuple:
    """Representative monomial of a basis key: per-group exponents laid out
    descending along the group's variable range."""
    e = [0] * k
    for g, nu in zip(sorted(groups), key):
        for a, x in zip(groups[g], nu):
            e[a] = x
    return tuple(e)


def reduce_to_generators(R: ShuffleElem):
    """Rewrite a member as sum over partitions of coset symmetrizations of
    block-symmetric kernels rho against products of F_t.

    Returns [(lam, rho)] with the defining property that the expansions of
    the steps sum back to R exactly.
    """
    report = is_in_S(R)
    if not report.member:
        raise NotInS(report)
    comp = R.single_component()
    n = comp.arity
    steps = []
    cur = comp
    for lam in partitions_desc(n):
        spec = phi(cur, lam)
        if spec.is_zero:
            continue
        G = good_insertion_factor(lam)
        try:
            A = exact_div(spec, G)
        except NotDivisible as exc:
            raise InternalContradiction(
                "specialization not divisible by the good-insertion factor"
            ) from exc
        rho = solve_block_preimage(A, lam)
        steps.append((lam, rho))
        cur = cur - expand_reduction_step(lam, rho).component(n)
    if not cur.is_zero:
        raise InternalContradiction("reduction left a nonzero remainder")
    return steps
