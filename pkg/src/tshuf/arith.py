"""Exact sparse arithmetic over Z[q1^{+-1}, q2^{+-1}].

Three layers:

* ``CoeffPoly``   -- Laurent polynomials in q1, q2 with arbitrary-precision
                     integer coefficients.  The symbol q3 is never stored; it
                     abbreviates the monomial q1^{-1} q2^{-1}.
* ``ZLaurent``    -- sparse Laurent polynomials in z_1 .. z_n over CoeffPoly.
                     Arity 0 is a bare scalar and acts on every arity.
* ``RatExpr``     -- a ZLaurent numerator with an explicit multiset of
                     denominator factors; never reduced, cleared on demand by
                     :func:`to_polynomial`.

Everything is immutable after construction and exact: no rounding, no
floating point, no gcd.  Divisibility is decided by long division with a
lexicographic term order after stripping unit monomials.
"""

from __future__ import annotations

import heapq
from itertools import permutations

from .errors import (
    ArityMismatch,
    NotDivisible,
    NotPolynomial,
    RegionViolation,
    ZeroDenominator,
)


class CoeffPoly:
    """Element of Z[q1^{+-1}, q2^{+-1}], stored as {(a, b): int}."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}
        self._hash = None

    @staticmethod
    def _raw(terms: dict) -> "CoeffPoly":
        """Trusted constructor: no zero coefficients in ``terms``."""
        out = CoeffPoly.__new__(CoeffPoly)
        out.terms = terms
        out._hash = None
        return out

    @staticmethod
    def from_int(c: int) -> "CoeffPoly":
        return CoeffPoly({(0, 0): c} if c else {})

    @staticmethod
    def mono(a: int, b: int, c: int = 1) -> "CoeffPoly":
        """c * q1^a * q2^b"""
        return CoeffPoly({(a, b): c} if c else {})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_one(self) -> bool:
        return self.terms == {(0, 0): 1}

    @property
    def is_unit(self) -> bool:
        """True for +-(monomial), the units of the coefficient ring."""
        if len(self.terms) != 1:
            return False
        return abs(next(iter(self.terms.values()))) == 1

    def unit_inverse(self) -> "CoeffPoly":
        if not self.is_unit:
            raise ValueError("not a unit")
        (a, b), c = next(iter(self.terms.items()))
        return CoeffPoly({(-a, -b): c})

    def _coerce(self, other):
        if isinstance(other, CoeffPoly):
            return other
        if isinstance(other, int):
            return CoeffPoly.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                del out[e]
        return CoeffPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return CoeffPoly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        if not a:
            return C_ZERO
        if len(a) == 1:
            ((a1, b1), c1), = a.items()
            if c1 == 1:
                return CoeffPoly._raw(
                    {(a1 + a2, b1 + b2): c2 for (a2, b2), c2 in b.items()}
                )
            return CoeffPoly._raw(
                {(a1 + a2, b1 + b2): c1 * c2 for (a2, b2), c2 in b.items()}
            )
        out: dict = {}
        for (a1, b1), c1 in a.items():
            for (a2, b2), c2 in b.items():
                e = (a1 + a2, b1 + b2)
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return CoeffPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.unit_inverse() ** (-k)
        out = CoeffPoly.from_int(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = CoeffPoly.from_int(other)
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (a, b), c in self.sorted_terms():
            mono = "".join(
                f"{v}^{e}" for v, e in (("q1", a), ("q2", b)) if e
            )
            bits.append(f"{c}{'*' if mono else ''}{mono}")
        return " + ".join(bits)

    def to_doc(self):
        return [
            {"q": [a, b], "int": str(c)} for (a, b), c in self.sorted_terms()
        ]

    @staticmethod
    def from_doc(doc) -> "CoeffPoly":
        return CoeffPoly({(int(t["q"][0]), int(t["q"][1])): int(t["int"]) for t in doc})


C_ZERO = CoeffPoly.from_int(0)
C_ONE = CoeffPoly.from_int(1)
Q1 = CoeffPoly.mono(1, 0)
Q2 = CoeffPoly.mono(0, 1)
Q3 = CoeffPoly.mono(-1, -1)


def q3_pow(t: int) -> CoeffPoly:
    return CoeffPoly.mono(-t, -t)


class ZLaurent:
    """Sparse Laurent polynomial in z_1 .. z_n over CoeffPoly."""

    __slots__ = ("arity", "terms", "_hash")

    def __init__(self, arity: int, terms=None):
        self.arity = arity
        self.terms = {e: c for e, c in (terms or {}).items() if c}
        self._hash = None

    @staticmethod
    def zero(arity: int) -> "ZLaurent":
        return ZLaurent(arity, {})

    @staticmethod
    def one(arity: int) -> "ZLaurent":
        return ZLaurent(arity, {(0,) * arity: C_ONE})

    @staticmethod
    def scalar(arity: int, c) -> "ZLaurent":
        if isinstance(c, int):
            c = CoeffPoly.from_int(c)
        return ZLaurent(arity, {(0,) * arity: c} if c else {})

    @staticmethod
    def var(arity: int, i: int, power: int = 1) -> "ZLaurent":
        """z_i^power (i is 0-based)."""
        e = [0] * arity
        e[i] = power
        return ZLaurent(arity, {tuple(e): C_ONE})

    @staticmethod
    def mono(arity: int, exps, coeff=C_ONE) -> "ZLaurent":
        if isinstance(coeff, int):
            coeff = CoeffPoly.from_int(coeff)
        return ZLaurent(arity, {tuple(exps): coeff} if coeff else {})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def constant_coeff(self) -> CoeffPoly:
        return self.terms.get((0,) * self.arity, C_ZERO)

    def as_coeff(self) -> CoeffPoly:
        """Arity-0 value as a bare CoeffPoly."""
        if self.arity != 0:
            raise ArityMismatch("not an arity-0 value")
        return self.constant_coeff()

    def _match(self, other):
        """Broadcast arity-0 scalars; reject distinct positive arities."""
        if isinstance(other, int):
            other = ZLaurent.scalar(self.arity, other)
        elif isinstance(other, CoeffPoly):
            other = ZLaurent.scalar(self.arity, other)
        if not isinstance(other, ZLaurent):
            return NotImplemented, NotImplemented
        a, b = self, other
        if a.arity != b.arity:
            if a.arity == 0:
                a = ZLaurent(b.arity, {(0,) * b.arity: c for _, c in a.terms.items()})
            elif b.arity == 0:
                b = ZLaurent(a.arity, {(0,) * a.arity: c for _, c in b.terms.items()})
            else:
                raise ArityMismatch(f"arities {a.arity} and {b.arity}")
        return a, b

    def __add__(self, other):
        a, b = self._match(other)
        if a is NotImplemented:
            return NotImplemented
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.terms:
                out[e] = s
            else:
                out.pop(e, None)
        return ZLaurent(a.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return ZLaurent(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        a, b = self._match(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._match(other)
        if a is NotImplemented:
            return NotImplemented
        if len(a.terms) > len(b.terms):
            a, b = b, a
        out: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if s.terms:
                    out[e] = s
                else:
                    del out[e]
        return ZLaurent(a.arity, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a general Laurent polynomial")
        out = ZLaurent.one(self.arity)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_mono(self, exps, coeff=C_ONE) -> "ZLaurent":
        """Multiply by coeff * z^exps without the generic product loop."""
        if isinstance(coeff, int):
            coeff = CoeffPoly.from_int(coeff)
        if not coeff.terms:
            return ZLaurent.zero(self.arity)
        trivial = coeff.is_one
        out = {}
        for e, c in self.terms.items():
            out[tuple(x + y for x, y in zip(e, exps))] = c if trivial else c * coeff
        return ZLaurent(self.arity, out)

    def scale(self, coeff) -> "ZLaurent":
        return self.mul_mono((0,) * self.arity, coeff)

    def permute(self, sigma) -> "ZLaurent":
        """Relabel variables: z_i -> z_{sigma[i]}."""
        n = self.arity
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i in range(n):
                ne[sigma[i]] = e[i]
            out[tuple(ne)] = c
        return ZLaurent(n, out)

    def substitute(self, assignment, new_arity: int) -> "ZLaurent":
        """Monomial substitution z_i -> unit_i * prod_j w_j^{M[i][j]}.

        ``assignment`` maps every variable index to (CoeffPoly unit, exponent
        tuple of length ``new_arity``).  Total on such assignments; the
        symmetric flag of the input is irrelevant to the result.
        """
        units = []
        vecs = []
        for i in range(self.arity):
            u, vec = assignment[i]
            if isinstance(u, int):
                u = CoeffPoly.from_int(u)
            if not u.is_unit:
                raise ValueError("substitution coefficient must be a unit")
            if len(vec) != new_arity:
                raise ValueError("substitution vector has wrong arity")
            units.append(u)
            vecs.append(tuple(vec))
        out: dict = {}
        for e, c in self.terms.items():
            ne = [0] * new_arity
            coeff = c
            for i, p in enumerate(e):
                if not p:
                    continue
                for j, m in enumerate(vecs[i]):
                    ne[j] += m * p
                coeff = coeff * units[i] ** p
            ne = tuple(ne)
            s = out.get(ne)
            s = coeff if s is None else s + coeff
            if s.terms:
                out[ne] = s
            else:
                del out[ne]
        return ZLaurent(new_arity, out)

    def invert_vars(self) -> "ZLaurent":
        """z_i -> z_i^{-1} for all i."""
        return ZLaurent(
            self.arity, {tuple(-x for x in e): c for e, c in self.terms.items()}
        )

    def is_symmetric(self) -> bool:
        n = self.arity
        for i in range(n - 1):
            sigma = list(range(n))
            sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
            if self.permute(sigma) != self:
                return False
        return True

    def total_degrees(self):
        return {sum(e) for e in self.terms}

    def __eq__(self, other):
        if isinstance(other, (int, CoeffPoly)):
            try:
                a, b = self._match(other)
            except ArityMismatch:
                return False
            return a.terms == b.terms
        if not isinstance(other, ZLaurent):
            return NotImplemented
        if self.arity != other.arity:
            a, b = self._match(other)
            return a.terms == b.terms
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.arity, frozenset((e, hash(c)) for e, c in self.terms.items()))
            )
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "ZLaurent(0)"
        bits = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"z{i + 1}^{p}" for i, p in enumerate(e) if p)
            bits.append(f"({c}){'*' + mono if mono else ''}")
        return " + ".join(bits)

    def to_doc(self):
        return {
            "arity": self.arity,
            "terms": [
                {"z": list(e), "coeff": c.to_doc()} for e, c in self.sorted_terms()
            ],
        }

    @staticmethod
    def from_doc(doc) -> "ZLaurent":
        arity = int(doc["arity"])
        terms = {}
        for t in doc["terms"]:
            e = tuple(int(x) for x in t["z"])
            if len(e) != arity:
                raise ValueError("exponent vector length does not match arity")
            terms[e] = CoeffPoly.from_doc(t["coeff"])
        return ZLaurent(arity, terms)


def _flatten(p: ZLaurent):
    """dict[(z-exps..., a, b)] -> int, together with componentwise minima."""
    flat = {}
    for e, c in p.terms.items():
        for (a, b), k in c.terms.items():
            flat[e + (a, b)] = k
    mins = [min(key[i] for key in flat) for i in range(p.arity + 2)]
    shifted = {
        tuple(x - m for x, m in zip(key, mins)): k for key, k in flat.items()
    }
    return shifted, mins


def _unflatten(flat, arity: int, shift) -> ZLaurent:
    terms: dict = {}
    for key, k in flat.items():
        key = tuple(x + m for x, m in zip(key, shift))
        e, (a, b) = key[:arity], key[arity:]
        terms.setdefault(e, {})[(a, b)] = k
    return ZLaurent(arity, {e: CoeffPoly(d) for e, d in terms.items()})


def _binomial_div(p: ZLaurent, q: ZLaurent) -> ZLaurent:
    """Fast exact division by a two-term divisor with unit coefficients.

    Writing q = c0 z^{e0} (1 + c z^{e}), the quotient satisfies the
    telescoping recurrence s(mu) = phat(mu) - c * s(mu - e); monomials are
    swept in increasing <mu, e>.  Divisibility fails exactly when the sweep
    escapes the dividend's support with a nonzero value.
    """
    (e0, c0), (e1, c1) = sorted(q.terms.items())
    e = tuple(x - y for x, y in zip(e1, e0))
    c = c1 * c0.unit_inverse()
    phat = p.mul_mono(tuple(-x for x in e0), c0.unit_inverse())

    def h(mu):
        return sum(x * y for x, y in zip(mu, e))

    he = h(e)
    pend = dict(phat.terms)
    heap = [(h(mu), mu) for mu in pend]
    heapq.heapify(heap)
    maxh = max(hv for hv, _ in heap)
    quot: dict = {}
    while heap:
        hv, mu = heapq.heappop(heap)
        val = pend.pop(mu, None)
        if val is None or not val.terms:
            continue
        if hv > maxh:
            witness = ZLaurent(p.arity, {mu: val, **pend})
            raise NotDivisible(witness, q)
        quot[mu] = val
        nxt = tuple(x + y for x, y in zip(mu, e))
        carry = -(c * val)
        prev = pend.get(nxt)
        if prev is None:
            pend[nxt] = carry
            heapq.heappush(heap, (hv + he, nxt))
        else:
            pend[nxt] = prev + carry
    return ZLaurent(p.arity, quot)


def exact_div(p: ZLaurent, q: ZLaurent) -> ZLaurent:
    """Exact division p / q in Z[q1^{+-1},q2^{+-1}][z^{+-1}].

    Unit monomials of q are divided out by the exponent shift, then the
    quotient is computed by long division with lexicographic term order on
    the flattened (z, q1, q2) exponents.  Two-term divisors with unit
    coefficients (the zeta denominators and cross-string linear factors)
    take a linear telescoping path instead.  Raises :class:`NotDivisible`
    with the remainder at the point of failure.
    """
    if isinstance(q, (int, CoeffPoly)):
        q = ZLaurent.scalar(0, q)
    if isinstance(p, (int, CoeffPoly)):
        p = ZLaurent.scalar(0, p)
    if q.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero:
        return ZLaurent.zero(p.arity)
    p2, q2 = p._match(q)
    if len(q2.terms) == 2 and all(c.is_unit for c in q2.terms.values()):
        return _binomial_div(p2, q2)
    arity = p2.arity
    fp, sp = _flatten(p2)
    fq, sq = _flatten(q2)
    shift = tuple(a - b for a, b in zip(sp, sq))

    lead_q = max(fq)
    lc_q = fq[lead_q]
    quot: dict = {}
    rem = dict(fp)
    # Lazy-deletion max-heap over the remainder's monomials.
    heap = [tuple(-x for x in key) for key in rem]
    heapq.heapify(heap)

    def fail():
        raise NotDivisible(_unflatten(rem, arity, sp), q)

    while heap:
        lead = tuple(-x for x in heapq.heappop(heap))
        c = rem.get(lead)
        if not c:
            continue
        mono = tuple(x - y for x, y in zip(lead, lead_q))
        if any(x < 0 for x in mono):
            fail()
        k, r = divmod(c, lc_q)
        if r:
            fail()
        quot[mono] = k
        for key, kq in fq.items():
            tgt = tuple(x + y for x, y in zip(mono, key))
            s = rem.get(tgt, 0) - k * kq
            if s:
                if tgt not in rem:
                    heapq.heappush(heap, tuple(-x for x in tgt))
                rem[tgt] = s
            else:
                rem.pop(tgt, None)
    if any(rem.values()):
        fail()
    return _unflatten(quot, arity, shift)


def divides(q: ZLaurent, p: ZLaurent) -> bool:
    try:
        exact_div(p, q)
        return True
    except NotDivisible:
        return False


def unit_quotient(p: ZLaurent, q: ZLaurent):
    """Return the unit u with p = u*q (u a coefficient-ring unit times a
    z-monomial), or None if p/q is not such a unit."""
    try:
        r = exact_div(p, q)
    except NotDivisible:
        return None
    if len(r.terms) != 1:
        return None
    e, c = next(iter(r.terms.items()))
    if not c.is_unit:
        return None
    return r


class RatExpr:
    """num / prod(den); den is an unreduced multiset of factors."""

    __slots__ = ("num", "den")

    def __init__(self, num: ZLaurent, den=()):
        den = tuple(den)
        for f in den:
            if f.is_zero:
                raise ZeroDenominator("zero factor in denominator")
        self.num = num
        self.den = den

    @property
    def arity(self) -> int:
        return self.num.arity

    def __mul__(self, other):
        if isinstance(other, RatExpr):
            return RatExpr(self.num * other.num, self.den + other.den)
        return RatExpr(self.num * other, self.den)

    __rmul__ = __mul__

    def __neg__(self):
        return RatExpr(-self.num, self.den)

    def __add__(self, other):
        if not isinstance(other, RatExpr):
            other = RatExpr(self.num._match(other)[1])
        num = self.num
        for f in other.den:
            num = num * f
        onum = other.num
        for f in self.den:
            onum = onum * f
        return RatExpr(num + onum, self.den + other.den)

    def __sub__(self, other):
        if isinstance(other, RatExpr):
            return self + (-other)
        return self + RatExpr(-self.num._match(other)[1])

    def substitute(self, assignment, new_arity: int) -> "RatExpr":
        num = self.num.substitute(assignment, new_arity)
        den = []
        for f in self.den:
            g = f.substitute(assignment, new_arity)
            if g.is_zero:
                raise ZeroDenominator("substitution killed a denominator factor")
            den.append(g)
        return RatExpr(num, den)

    def to_polynomial(self) -> ZLaurent:
        """Clear all denominator factors by exact division.

        The result is independent of the order in which factors are cleared;
        raises :class:`NotPolynomial` if the value is not a Laurent
        polynomial.
        """
        out = self.num
        for f in self.den:
            try:
                out = exact_div(out, f)
            except NotDivisible as exc:
                raise NotPolynomial(f, exc.remainder) from None
        return out

    def __eq__(self, other):
        if not isinstance(other, RatExpr):
            other = RatExpr(self.num._match(other)[1])
        left = self.num
        for f in other.den:
            left = left * f
        right = other.num
        for f in self.den:
            right = right * f
        return left == right

    def __repr__(self):
        return f"RatExpr({self.num!r} / {list(self.den)!r})"


def binomial_parts(factor: ZLaurent):
    """Split a factor of shape c*(1 - m) into (c, m-exponents, m-coefficient).

    Returns None when the factor is not of that shape.  ``c`` must be a unit;
    ``m`` is a single monomial with unit coefficient.
    """
    if len(factor.terms) != 2:
        return None
    zero = (0,) * factor.arity
    if zero not in factor.terms:
        return None
    c = factor.terms[zero]
    if not c.is_unit:
        return None
    (e, mc), = [(e, mc) for e, mc in factor.terms.items() if e != zero]
    m_coeff = -(mc * c.unit_inverse())
    if not m_coeff.is_unit:
        return None
    return c, e, m_coeff


def geom_expand(factor: ZLaurent, order: int, region=None) -> ZLaurent:
    """Truncated inverse of c*(1 - m): c^{-1} * sum_{s=0}^{order} m^s.

    ``region`` lists variable indices from largest magnitude to smallest;
    the monomial m must be small there (its leading-magnitude variable must
    carry a negative exponent), else :class:`RegionViolation`.
    """
    parts = binomial_parts(factor)
    if parts is None:
        raise RegionViolation("factor is not of shape c*(1 - monomial)")
    c, e, mc = parts
    if region is None:
        region = tuple(range(factor.arity))
    lead = next((i for i in region if e[i]), None)
    if lead is None or e[lead] > 0:
        raise RegionViolation("monomial is not small in the declared region")
    cinv = c.unit_inverse()
    out = {}
    for s in range(order + 1):
        out[tuple(x * s for x in e)] = cinv * mc**s
    return ZLaurent(factor.arity, out)


def monomial_symmetric(nu, nvars: int) -> ZLaurent:
    """Monomial symmetric Laurent polynomial: distinct permutations of nu
    (padded with zeros to nvars), each with coefficient 1."""
    nu = tuple(nu)
    if len(nu) > nvars:
        raise ValueError("more exponents than variables")
    padded = nu + (0,) * (nvars - len(nu))
    return ZLaurent(nvars, {e: C_ONE for e in set(permutations(padded))})
