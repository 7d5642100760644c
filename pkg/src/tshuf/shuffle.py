"""The zeta kernel, symmetrization engine, shuffle product, and F_n.

The product on the graded space of symmetric Laurent polynomials is

    R * R' = sum over shuffles sigma of
             sigma( R(z_1..z_n) R'(z_{n+1}..z_{n+n'})
                    prod_{i <= n < j} zeta(z_i/z_j) )

with zeta(x) = (1-x*q1)(1-x*q2)(1-q1*q2/x) / (1-x).  Summing over the
binomial(n+n', n) coset representatives keeps every coefficient in
Z[q1^{+-1}, q2^{+-1}]; for symmetric inputs this agrees with the normalized
full symmetrization.

All symmetrizations here run through one engine: every permutation image is
put over the common denominator prod_{a<b} (1 - z_b/z_a) (times the maximal
multiset of denominator-factor images), the numerators are summed, and a
single exact division clears the result.  Orientation flips of binomial
factors contribute unit monomials to the numerators.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from . import config
from .arith import (
    C_ONE,
    CoeffPoly,
    Q1,
    Q2,
    RatExpr,
    ZLaurent,
    binomial_parts,
    exact_div,
)
from .errors import ArityCapExceeded, ArityMismatch, NotDivisible, NotPolynomial


def _check_cap(arity: int) -> None:
    cap = config.arity_cap()
    if arity > cap:
        raise ArityCapExceeded(arity, cap)


def _ratio(arity: int, i: int, j: int, coeff=C_ONE) -> ZLaurent:
    """coeff * z_i / z_j (0-based indices)."""
    e = [0] * arity
    e[i] += 1
    e[j] -= 1
    return ZLaurent.mono(arity, e, coeff)


def _one_minus(m: ZLaurent) -> ZLaurent:
    return ZLaurent.one(m.arity) - m


def zeta(i: int, j: int, arity: int | None = None) -> RatExpr:
    """zeta(z_i/z_j) as a rational expression (0-based variable indices)."""
    if i == j:
        raise ValueError("zeta requires distinct variables")
    n = arity if arity is not None else max(i, j) + 1
    num = (
        _one_minus(_ratio(n, i, j, Q1))
        * _one_minus(_ratio(n, i, j, Q2))
        * _one_minus(_ratio(n, j, i, Q1 * Q2))
    )
    return RatExpr(num, [_one_minus(_ratio(n, i, j))])


@lru_cache(maxsize=None)
def zeta_num(i: int, j: int, arity: int) -> ZLaurent:
    """Numerator of zeta(z_i/z_j)."""
    return (
        _one_minus(_ratio(arity, i, j, Q1))
        * _one_minus(_ratio(arity, i, j, Q2))
        * _one_minus(_ratio(arity, j, i, Q1 * Q2))
    )


def _block_of(sizes):
    out = []
    for b, t in enumerate(sizes):
        out.extend([b] * t)
    return out


@lru_cache(maxsize=None)
def _cross_zeta_num(nvars: int, sizes) -> ZLaurent:
    """prod of zeta numerators over cross-block pairs, identity labeling."""
    blocks = _block_of(sizes)
    out = ZLaurent.one(nvars)
    for a in range(nvars):
        for b in range(a + 1, nvars):
            if blocks[a] != blocks[b]:
                out = out * zeta_num(a, b, nvars)
    return out


@lru_cache(maxsize=None)
def _within_pairs_product(nvars: int, positions) -> ZLaurent:
    """prod_{u<v in positions} (1 - z_v/z_u): the zeta-denominator factors a
    coset representative does not own."""
    out = ZLaurent.one(nvars)
    for u, v in combinations(positions, 2):
        out = out * _one_minus(_ratio(nvars, v, u))
    return out


def _canonical_factor(f: ZLaurent):
    """Normalize a binomial factor to the orientation whose monomial is small
    in the region |z_1| >> ... >> |z_n| (first nonzero exponent negative).

    Returns (canonical factor, inverse-unit exponents, inverse-unit coeff)
    with f = u * canonical and u^{-1} = coeff * z^exps.
    """
    parts = binomial_parts(f)
    if parts is None:
        return f, (0,) * f.arity, C_ONE
    c, e, mc = parts
    lead = next((x for x in e if x), 0)
    if lead < 0:
        if c.is_one:
            return f, (0,) * f.arity, C_ONE
        canon = ZLaurent(f.arity, {(0,) * f.arity: C_ONE, e: -mc})
        return canon, (0,) * f.arity, c.unit_inverse()
    canon = ZLaurent(
        f.arity,
        {(0,) * f.arity: C_ONE, tuple(-x for x in e): -mc.unit_inverse()},
    )
    u_inv = -(c * mc).unit_inverse()
    return canon, tuple(-x for x in e), u_inv


def _coset_reps(nvars: int, sizes):
    """Assignments of sorted position tuples to blocks (shuffle cosets).

    Yields permutations sigma with sigma[slot] = position; slots are the
    contiguous block layout.  With all block sizes 1 this enumerates S_n.
    """
    def rec(remaining, idx):
        if idx == len(sizes):
            yield ()
            return
        for chosen in combinations(remaining, sizes[idx]):
            rest = tuple(p for p in remaining if p not in chosen)
            for tail in rec(rest, idx + 1):
                yield chosen + tail

    yield from rec(tuple(range(nvars)), 0)


def _sym_engine(nvars: int, sizes, body_num: ZLaurent, body_den=()) -> ZLaurent:
    """Sum over coset representatives of

        sigma( body_num * prod_cross zeta / prod body_den )

    cleared to a Laurent polynomial.  ``body_num`` and ``body_den`` are given
    in the contiguous block labeling; ``body_den`` factors must be ratio
    binomials (1 - c z_a/z_b).
    """
    if nvars == 0:
        return body_num
    base = body_num * _cross_zeta_num(nvars, tuple(sizes))
    blocks = _block_of(sizes)
    cross_pairs = [
        (a, b)
        for a in range(nvars)
        for b in range(a + 1, nvars)
        if blocks[a] != blocks[b]
    ]
    offsets = []
    s = 0
    for t in sizes:
        offsets.append(s)
        s += t

    terms = []
    common_body: dict = {}
    for sigma in _coset_reps(nvars, tuple(sizes)):
        num = base.permute(sigma)
        u_exps = [0] * nvars
        u_coeff = C_ONE
        # zeta denominators the representative owns, canonically oriented:
        # (1 - z_u/z_v) with u < v flips to -z_u/z_v * (1 - z_v/z_u), so the
        # numerator picks up the inverse unit -z_v/z_u.
        for a, b in cross_pairs:
            if sigma[a] < sigma[b]:
                u_exps[sigma[a]] -= 1
                u_exps[sigma[b]] += 1
                u_coeff = -u_coeff
        # zeta denominators it is missing: pairs within a block image
        for i, t in enumerate(sizes):
            if t > 1:
                pos = tuple(sorted(sigma[offsets[i] + o] for o in range(t)))
                num = num * _within_pairs_product(nvars, pos)
        own: dict = {}
        for f in body_den:
            canon, e, c = _canonical_factor(f.permute(sigma))
            own[canon] = own.get(canon, 0) + 1
            if c is not C_ONE or any(e):
                u_coeff = u_coeff * c
                for idx, x in enumerate(e):
                    u_exps[idx] += x
        if any(u_exps) or not u_coeff.is_one:
            num = num.mul_mono(tuple(u_exps), u_coeff)
        for f, m in own.items():
            if common_body.get(f, 0) < m:
                common_body[f] = m
        terms.append((num, own))

    total = ZLaurent.zero(nvars)
    for num, own in terms:
        for f, m in common_body.items():
            for _ in range(m - own.get(f, 0)):
                num = num * f
        total = total + num

    try:
        for f, m in common_body.items():
            for _ in range(m):
                total = exact_div(total, f)
        for a in range(nvars):
            for b in range(a + 1, nvars):
                total = exact_div(total, _one_minus(_ratio(nvars, b, a)))
    except NotDivisible as exc:
        raise NotPolynomial(exc.divisor, exc.remainder) from None
    return total


class Kernel:
    """Presentation of an element as Sym[ num / (den * scalar_den) * prod zeta ].

    ``den`` holds ratio binomials 1 - c*z_a/z_b; scalar denominators (which
    may be non-units, e.g. q1^t - 1) are kept apart in ``scalar_den``.
    On construction at small arity the kernel is symmetrized once to verify
    it clears to a Laurent polynomial; larger kernels are trusted.
    """

    __slots__ = ("arity", "num", "den", "scalar_den")

    def __init__(self, arity, num: ZLaurent, den=(), scalar_den=(), check=None):
        if num.arity != arity:
            raise ArityMismatch("kernel numerator arity mismatch")
        den = tuple(den)
        for f in den:
            parts = binomial_parts(f)
            if parts is None:
                raise ValueError("denominator factor is not c*(1 - monomial)")
            _, e, _ = parts
            nz = [x for x in e if x]
            if sorted(nz) != [-1, 1]:
                raise ValueError("denominator monomial is not a variable ratio")
        self.arity = arity
        self.num = num
        self.den = den
        self.scalar_den = tuple(
            c if isinstance(c, CoeffPoly) else CoeffPoly.from_int(c)
            for c in scalar_den
        )
        if check is None:
            check = arity <= config.KERNEL_CHECK_ARITY
        if check:
            _sym_engine(arity, (1,) * arity, num, den)

    def scaled(self, num_scalar=None, extra_scalar_den=()) -> "Kernel":
        num = self.num if num_scalar is None else self.num.scale(num_scalar)
        return Kernel(
            self.arity,
            num,
            self.den,
            self.scalar_den + tuple(extra_scalar_den),
            check=False,
        )

    def to_doc(self):
        return {
            "arity": self.arity,
            "num": self.num.to_doc(),
            "den": [f.to_doc() for f in self.den],
            "scalar_den": [c.to_doc() for c in self.scalar_den],
        }

    @staticmethod
    def from_doc(doc) -> "Kernel":
        return Kernel(
            int(doc["arity"]),
            ZLaurent.from_doc(doc["num"]),
            [ZLaurent.from_doc(f) for f in doc.get("den", [])],
            [CoeffPoly.from_doc(c) for c in doc.get("scalar_den", [])],
            check=False,
        )

    def __repr__(self):
        return f"Kernel(n={self.arity}, num={self.num!r}, den={list(self.den)!r})"


def sym_full(kernel: Kernel) -> ZLaurent:
    """Plain symmetrization over all of S_n (no factorial normalization) of
    the kernel body times the full zeta product, cleared to a polynomial.

    Scalar denominators of the kernel are not cleared here; callers that use
    them divide the result (or a rescaling of it) at the end.
    """
    _check_cap(kernel.arity)
    return _sym_engine(kernel.arity, (1,) * kernel.arity, kernel.num, kernel.den)


def kernel_shuffle(k: Kernel, kp: Kernel) -> Kernel:
    """Kernel presentation of the product: the juxtaposed bodies, with the
    cross zeta factors absorbed into the global zeta product.  Satisfies
    sym_full(kernel_shuffle(k, k')) = shuffle_mul(sym_full(k), sym_full(k'))."""
    n, np_ = k.arity, kp.arity
    N = n + np_
    emb = {i: (C_ONE, tuple(1 if j == i else 0 for j in range(N))) for i in range(n)}
    embp = {
        i: (C_ONE, tuple(1 if j == n + i else 0 for j in range(N)))
        for i in range(np_)
    }
    num = k.num.substitute(emb, N) * kp.num.substitute(embp, N)
    den = tuple(f.substitute(emb, N) for f in k.den) + tuple(
        f.substitute(embp, N) for f in kp.den
    )
    return Kernel(N, num, den, k.scalar_den + kp.scalar_den, check=False)


class ShuffleElem:
    """Graded element: one verified-symmetric Laurent polynomial per arity.

    ``homogeneous`` is (n, d) when the element lives in a single arity n and
    every term has total z-degree d.
    """

    __slots__ = ("components", "homogeneous")

    def __init__(self, components, check=True):
        if isinstance(components, ZLaurent):
            components = [components]
        if isinstance(components, dict):
            components = components.values()
        comps: dict[int, ZLaurent] = {}
        for c in components:
            if c.is_zero:
                continue
            if c.arity in comps:
                comps[c.arity] = comps[c.arity] + c
                if comps[c.arity].is_zero:
                    del comps[c.arity]
            else:
                comps[c.arity] = c
        if check:
            for c in comps.values():
                if not c.is_symmetric():
                    raise ValueError("component is not symmetric")
        self.components = comps
        self.homogeneous = None
        if len(comps) == 1:
            ((n, c),) = comps.items()
            degs = c.total_degrees()
            if len(degs) == 1:
                self.homogeneous = (n, next(iter(degs)))

    @staticmethod
    def from_scalar(c) -> "ShuffleElem":
        return ShuffleElem([ZLaurent.scalar(0, c)], check=False)

    @staticmethod
    def one() -> "ShuffleElem":
        return ShuffleElem.from_scalar(1)

    @staticmethod
    def zero() -> "ShuffleElem":
        return ShuffleElem([], check=False)

    @property
    def is_zero(self) -> bool:
        return not self.components

    def arities(self):
        return sorted(self.components)

    def component(self, n: int) -> ZLaurent:
        return self.components.get(n, ZLaurent.zero(n))

    def single_component(self) -> ZLaurent:
        if len(self.components) != 1:
            raise ValueError("element is not concentrated in one arity")
        return next(iter(self.components.values()))

    def __add__(self, other):
        if not isinstance(other, ShuffleElem):
            return NotImplemented
        comps = dict(self.components)
        for n, c in other.components.items():
            s = comps.get(n)
            s = c if s is None else s + c
            if s.is_zero:
                comps.pop(n, None)
            else:
                comps[n] = s
        return ShuffleElem(comps, check=False)

    def __neg__(self):
        return ShuffleElem(
            {n: -c for n, c in self.components.items()}, check=False
        )

    def __sub__(self, other):
        if not isinstance(other, ShuffleElem):
            return NotImplemented
        return self + (-other)

    def scale(self, coeff) -> "ShuffleElem":
        if isinstance(coeff, int):
            coeff = CoeffPoly.from_int(coeff)
        if coeff.is_zero:
            return ShuffleElem.zero()
        return ShuffleElem(
            {n: c.scale(coeff) for n, c in self.components.items()}, check=False
        )

    def __eq__(self, other):
        if not isinstance(other, ShuffleElem):
            return NotImplemented
        return self.components == other.components

    def __repr__(self):
        return f"ShuffleElem({self.components!r})"

    def to_doc(self):
        docs = [c.to_doc() for _, c in sorted(self.components.items())]
        if len(docs) == 1:
            doc = docs[0]
        else:
            doc = {"components": docs}
        if self.homogeneous is not None:
            doc = dict(doc)
            doc["homogeneous"] = list(self.homogeneous)
        return doc

    @staticmethod
    def from_doc(doc) -> "ShuffleElem":
        if "components" in doc:
            comps = [ZLaurent.from_doc(d) for d in doc["components"]]
        else:
            comps = [ZLaurent.from_doc(doc)]
        elem = ShuffleElem(comps)
        if "homogeneous" in doc:
            want = tuple(int(x) for x in doc["homogeneous"])
            if not elem.is_zero and elem.homogeneous != want:
                raise ValueError("homogeneous tag does not match the element")
        return elem


def shuffle_mul(R: ShuffleElem, Rp: ShuffleElem) -> ShuffleElem:
    """Bilinear shuffle product over coset representatives."""
    out = ShuffleElem.zero()
    for n, A in R.components.items():
        for m, B in Rp.components.items():
            if n == 0:
                piece = B.scale(A.as_coeff())
            elif m == 0:
                piece = A.scale(B.as_coeff())
            else:
                N = n + m
                _check_cap(N)
                embA = {
                    i: (C_ONE, tuple(1 if j == i else 0 for j in range(N)))
                    for i in range(n)
                }
                embB = {
                    i: (C_ONE, tuple(1 if j == n + i else 0 for j in range(N)))
                    for i in range(m)
                }
                body = A.substitute(embA, N) * B.substitute(embB, N)
                piece = _sym_engine(N, (n, m), body)
            out = out + ShuffleElem([piece], check=False)
    return out


def shuffle_product(*elems: ShuffleElem) -> ShuffleElem:
    out = ShuffleElem.one()
    for e in elems:
        out = shuffle_mul(out, e)
    return out


@lru_cache(maxsize=None)
def f_n(n: int) -> ShuffleElem:
    """F_n = prod_{1<=i,j<=n} (1 - q2 z_i/z_j), the Koszul ideal generator.

    Diagonal factors contribute the scalar (1-q2)^n; homogeneous of bidegree
    (n, 0).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = ZLaurent.scalar(n, (C_ONE - Q2) ** n)
    for i in range(n):
        for j in range(n):
            if i != j:
                out = out * _one_minus(_ratio(n, i, j, Q2))
    return ShuffleElem([out], check=False)


class ScaledElem:
    """A ShuffleElem divided by a scalar denominator (fraction-field scalars).

    Only the generator families that are honestly non-integral carry a
    nontrivial denominator; ``normalize`` clears it when it divides every
    component exactly.
    """

    __slots__ = ("elem", "den")

    def __init__(self, elem: ShuffleElem, den=C_ONE):
        if isinstance(den, int):
            den = CoeffPoly.from_int(den)
        if den.is_zero:
            raise ZeroDivisionError("zero scalar denominator")
        self.elem = elem
        self.den = den

    @staticmethod
    def wrap(x) -> "ScaledElem":
        if isinstance(x, ScaledElem):
            return x
        return ScaledElem(x)

    @property
    def is_zero(self) -> bool:
        return self.elem.is_zero

    def normalize(self) -> "ScaledElem":
        if self.den.is_one or self.elem.is_zero:
            return ScaledElem(self.elem)
        den0 = ZLaurent.scalar(0, self.den)
        try:
            comps = {
                n: exact_div(c, den0) for n, c in self.elem.components.items()
            }
        except Exception:
            return self
        return ScaledElem(ShuffleElem(comps, check=False))

    def as_elem(self) -> ShuffleElem:
        """The underlying ShuffleElem; requires the denominator to clear."""
        norm = self.normalize()
        if not norm.den.is_one:
            raise NotPolynomial(ZLaurent.scalar(0, norm.den))
        return norm.elem

    def scale(self, coeff) -> "ScaledElem":
        return ScaledElem(self.elem.scale(coeff), self.den)

    def scale_div(self, den) -> "ScaledElem":
        if isinstance(den, int):
            den = CoeffPoly.from_int(den)
        return ScaledElem(self.elem, self.den * den)

    def __add__(self, other):
        other = ScaledElem.wrap(other)
        if self.den == other.den:
            return ScaledElem(self.elem + other.elem, self.den)
        return ScaledElem(
            self.elem.scale(other.den) + other.elem.scale(self.den),
            self.den * other.den,
        )

    def __neg__(self):
        return ScaledElem(-self.elem, self.den)

    def __sub__(self, other):
        return self + (-ScaledElem.wrap(other))

    def __mul__(self, other):
        """Shuffle product."""
        other = ScaledElem.wrap(other)
        return ScaledElem(
            shuffle_mul(self.elem, other.elem), self.den * other.den
        )

    def __eq__(self, other):
        other = ScaledElem.wrap(other)
        return self.elem.scale(other.den) == other.elem.scale(self.den)

    def __repr__(self):
        return f"ScaledElem({self.elem!r} / ({self.den!r}))"
