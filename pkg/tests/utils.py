"""
File containing utils intended to be used in unit testing rather than the
internal project codebase.
"""
import itertools
import random
from fractions import Fraction

from reflex.simplex import LatticeSimplex, is_equivalent

# The five two-dimensional reflexive simplices, as listed in the
# classical enumeration: (1,1,1) twice, (3,2,1) once, (2,1,1) twice.
D2_SIMPLICES = (
    ((1, 0), (0, 1), (-1, -1)),
    ((2, -1), (-1, 2), (-1, -1)),
    ((1, 0), (0, 1), (-3, -2)),
    ((1, 0), (0, 1), (-2, -1)),
    ((1, -1), (-1, 3), (-1, -1)),
)


def d2_simplices():
    """ the five classes as :class:`LatticeSimplex` values """
    return [LatticeSimplex.of(v) for v in D2_SIMPLICES]


def brute_force_partitions(n__, bound):
    """
    Every sorted n-tuple with entries in ``[2, bound]`` (or ``(1,)``)
    whose reciprocals sum to one, by plain exhaustion. Only sensible for
    n <= 4.
    """
    if n__ == 1:
        return [(1,)]
    return [ks for ks in itertools.combinations_with_replacement(range(2, bound + 1), n__)
            if sum(Fraction(1, k) for k in ks) == 1]


def greedy_bounded_partitions(n__):
    """
    Independent enumerator: each next entry ranges over
    ``[ceil(1/r), floor(slots/r)]`` for the remaining sum r, the last
    one is ``1/r`` when that is an integer.
    """
    out = []

    def rec(prefix, rest, slots):
        if slots == 1:
            if rest.numerator == 1 and (not prefix or rest.denominator >= prefix[-1]):
                out.append(prefix + (rest.denominator,))
            return
        low = max(prefix[-1] if prefix else 1, -((-rest.denominator) // rest.numerator))
        high = (slots * rest.denominator) // rest.numerator
        for k in range(low, high + 1):
            left = rest - Fraction(1, k)
            if left > 0:
                rec(prefix + (k,), left, slots - 1)

    rec((), Fraction(1), n__)
    return sorted(out)


def random_unimodular(d__, rng, steps=12):
    """ product of random elementary integer matrices, det = +-1 """
    mat = [[int(i == j) for j in range(d__)] for i in range(d__)]
    for _ in range(steps):
        i, j = rng.sample(range(d__), 2)
        factor = rng.choice((-2, -1, 1, 2))
        for row in mat:
            row[i] += factor * row[j]
        if rng.random() < 0.2:
            for row in mat:
                row[i], row[j] = row[j], row[i]
    return mat


def shuffled(simplex, rng):
    """ the same simplex with its vertices in random order """
    verts = list(simplex.vertices)
    rng.shuffle(verts)
    return LatticeSimplex(tuple(verts))


def dedup_by_equivalence(simplices):
    """ keep one representative per class, by pairwise equivalence tests """
    kept = []
    for candidate in simplices:
        if not any(is_equivalent(candidate, other) for other in kept):
            kept.append(candidate)
    return kept


def make_rng(seed=20240229):
    """ deterministic random source for property tests """
    return random.Random(seed)


def _euclid(a__, b__):
    """ ``(g, x, y)`` with ``a x + b y = g >= 0`` """
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b__ != 0:
        q__ = a__ // b__
        a__, b__ = b__, a__ - q__ * b__
        x0, x1 = x1, x0 - q__ * x1
        y0, y1 = y1, y0 - q__ * y1
    if a__ < 0:
        return -a__, -x0, -y0
    return a__, x0, y0


def bareiss_det(rows):
    """
    Determinant by fraction-free elimination, written out by hand as an
    independent check on the library kernels.
    """
    n__ = len(rows)
    if n__ == 0:
        return 1
    m__ = [list(row) for row in rows]
    sign = 1
    prev = 1
    for k in range(n__ - 1):
        if m__[k][k] == 0:
            for i in range(k + 1, n__):
                if m__[i][k] != 0:
                    m__[k], m__[i] = m__[i], m__[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n__):
            for j in range(k + 1, n__):
                m__[i][j] = (m__[i][j] * m__[k][k] - m__[i][k] * m__[k][j]) // prev
        prev = m__[k][k]
    return sign * m__[n__ - 1][n__ - 1]


def lower_column_hnf(rows):
    """
    Hand-written column Hermite normal form in the lower-triangular
    convention: rows scanned top to bottom, each pivot row gets a positive
    pivot in the next column, zeros to its right and entries to its left
    reduced into ``[0, pivot)``. Trailing columns of a rank-deficient
    matrix come out zero. Unique for the column lattice.
    """
    m__ = [list(row) for row in rows]
    n_cols = len(m__[0]) if m__ else 0
    piv = 0
    for r__, row in enumerate(m__):
        if piv == n_cols:
            break
        for c__ in range(piv + 1, n_cols):
            b__ = row[c__]
            if b__ == 0:
                continue
            a__ = row[piv]
            g__, x__, y__ = _euclid(a__, b__)
            u__, v__ = -b__ // g__, a__ // g__
            for rr in m__[r__:]:
                ca, cb = rr[piv], rr[c__]
                rr[piv] = x__ * ca + y__ * cb
                rr[c__] = u__ * ca + v__ * cb
        pivot = row[piv]
        if pivot == 0:
            continue
        if pivot < 0:
            for rr in m__[r__:]:
                rr[piv] = -rr[piv]
            pivot = -pivot
        for c__ in range(piv):
            f__ = row[c__] // pivot
            if f__:
                for rr in m__[r__:]:
                    rr[c__] -= f__ * rr[piv]
        piv += 1
    return m__


def pivot_product(form):
    """ product of the lower-triangular pivots, 0 when one is missing """
    out = 1
    for i, row in enumerate(form):
        if i >= len(row) or row[i] == 0:
            return 0
        out *= row[i]
    return out
