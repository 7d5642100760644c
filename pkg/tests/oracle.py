"""Independent rational-point evaluation used to validate symbolic results.

Everything here works with exact fractions at generic sample points and
never touches the package's polynomial arithmetic beyond reading term
dictionaries, so agreement is meaningful evidence.
"""

from fractions import Fraction
from itertools import combinations, permutations

Q1 = Fraction(3, 5)
Q2 = Fraction(7, 11)
POINTS2 = (Fraction(2), Fraction(9, 2))
POINTS3 = (Fraction(2), Fraction(9, 2), Fraction(5, 3))
POINTS4 = (Fraction(2), Fraction(9, 2), Fraction(5, 3), Fraction(13, 7))


def eval_coeff(c, q1=Q1, q2=Q2):
    return sum(k * q1**a * q2**b for (a, b), k in c.terms.items())


def eval_z(p, zs, q1=Q1, q2=Q2):
    total = Fraction(0)
    for e, c in p.terms.items():
        m = eval_coeff(c, q1, q2)
        for x, pw in zip(zs, e):
            m *= Fraction(x) ** pw
        total += m
    return total


def zeta_value(x, q1=Q1, q2=Q2):
    x = Fraction(x)
    return (1 - x * q1) * (1 - x * q2) * (1 - q1 * q2 / x) / (1 - x)


def sym_kernel_value(body, zs, q1=Q1, q2=Q2):
    """Plain symmetrization of body(z) * prod_{i<j} zeta(z_i/z_j) at a
    point; ``body`` maps a tuple of coordinates to a Fraction."""
    total = Fraction(0)
    for perm in permutations(zs):
        term = body(perm)
        for i in range(len(perm)):
            for j in range(i + 1, len(perm)):
                term *= zeta_value(perm[i] / perm[j], q1, q2)
        total += term
    return total


def coset_shuffle_value(fa, fb, n, m, zs, q1=Q1, q2=Q2):
    """Shuffle product over coset representatives at a point: fa, fb map
    coordinate tuples to Fractions."""
    total = Fraction(0)
    idx = range(n + m)
    for first in combinations(idx, n):
        rest = tuple(i for i in idx if i not in first)
        term = fa(tuple(zs[i] for i in first)) * fb(tuple(zs[i] for i in rest))
        for i in first:
            for j in rest:
                term *= zeta_value(zs[i] / zs[j], q1, q2)
        total += term
    return total
