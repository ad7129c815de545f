"""
Exact integer and rational matrix kernels.

Matrices are lists of rows. Entries are Python ``int`` or
``fractions.Fraction``; the heavy lifting (determinants, linear solves,
Hermite normal forms) is done by sympy's ``DomainMatrix`` over ZZ and QQ,
so nothing here ever touches floating point.
"""
from fractions import Fraction

try:
    from sympy.core.intfunc import igcdex
except ImportError:
    from sympy.core.numbers import igcdex
from sympy.polys.domains import ZZ, QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form

from .utils import SimplexError


def matrix_multiply(a__, b__):
    """ exact matrix multiplication """
    return [[sum(i__ * j__ for i__, j__ in zip(row, col)) for col in zip(*b__)]
            for row in a__]


def mat_vec(a__, vec):
    """ matrix times column vector """
    return [sum(x * y for x, y in zip(row, vec)) for row in a__]


def transpose(a__):
    """ rows become columns """
    return [list(col) for col in zip(*a__)]


def identity(n__):
    """ n x n identity matrix """
    return [[int(i == j) for j in range(n__)] for i in range(n__)]


def _zz(rows):
    """ integer rows as a DomainMatrix over ZZ """
    n_cols = len(rows[0]) if rows else 0
    return DomainMatrix([[ZZ(int(x)) for x in row] for row in rows], (len(rows), n_cols), ZZ)


def _qq(rows):
    """ integer or Fraction rows as a DomainMatrix over QQ """
    n_cols = len(rows[0]) if rows else 0
    fracs = [[Fraction(x) for x in row] for row in rows]
    return DomainMatrix([[QQ(x.numerator, x.denominator) for x in row] for row in fracs],
                        (len(rows), n_cols), QQ)


def _to_ints(mat):
    return [[int(x) for x in row] for row in mat.to_Matrix().tolist()]


def _to_fractions(mat):
    return [[Fraction(int(x.p), int(x.q)) for x in row] for row in mat.to_Matrix().tolist()]


def det(a__):
    """ determinant of a square integer matrix, exact over ZZ """
    if not a__:
        return 1
    return int(_zz(a__).det())


def _invertible(a__):
    """ ``a`` over QQ, checked to be non-singular """
    mat = _qq(a__)
    if mat.det() == 0:
        raise SimplexError("singular linear system")
    return mat


def solve(a__, b__):
    """
    Solve the square system ``a x = b`` over the rationals.

    :raises SimplexError: if ``a`` is singular.
    """
    mat = _invertible(a__)
    sol = mat.lu_solve(_qq([[x] for x in b__]))
    return [row[0] for row in _to_fractions(sol)]


def inverse(a__):
    """
    Rational inverse of a square matrix.

    :raises SimplexError: if ``a`` is singular.
    """
    return _to_fractions(_invertible(a__).inv())


def is_integral(values):
    """ True if every entry of a vector or matrix is an integer """
    for x in values:
        if isinstance(x, (list, tuple)):
            if not is_integral(x):
                return False
        elif isinstance(x, Fraction) and x.denominator != 1:
            return False
    return True


def as_ints(values):
    """ integral Fractions (possibly nested) to ints """
    return [as_ints(x) if isinstance(x, (list, tuple)) else int(x) for x in values]


def ext_gcd(a__, b__):
    """
    Extended Euclid: returns ``(g, x, y)`` with ``a x + b y = g >= 0``.
    """
    x__, y__, g__ = igcdex(a__, b__)
    return int(g__), int(x__), int(y__)


def unimodular_completion(vec):
    """
    For a primitive integer vector ``q`` return a unimodular matrix ``W``
    with ``W q = e_0``. Built from 2 x 2 extended-gcd row operations, so
    ``det W = +-1`` by construction.

    :raises SimplexError: if ``q`` is not primitive.
    """
    n__ = len(vec)
    a__ = list(vec)
    w__ = identity(n__)

    for i in range(1, n__):
        if a__[i] == 0:
            continue
        g__, x__, y__ = ext_gcd(a__[0], a__[i])
        u__, v__ = -a__[i] // g__, a__[0] // g__
        row0, rowi = w__[0], w__[i]
        w__[0] = [x__ * r0 + y__ * ri for r0, ri in zip(row0, rowi)]
        w__[i] = [u__ * r0 + v__ * ri for r0, ri in zip(row0, rowi)]
        a__[0], a__[i] = g__, 0

    if a__[0] == -1:
        w__[0] = [-x for x in w__[0]]
        a__[0] = 1
    if a__[0] != 1:
        raise SimplexError("vector %r is not primitive" % (list(vec),))
    return w__


def _pivot_rows(rows):
    """
    Indices of a row basis picked greedily from the bottom up. The choice
    depends only on the column space, so it survives right multiplication
    by any invertible matrix.
    """
    picked = []
    for i in range(len(rows) - 1, -1, -1):
        trial = [rows[j] for j in [i] + picked]
        if _qq(trial).rank() == len(trial):
            picked.insert(0, i)
    return picked


def column_hnf(rows):
    """
    Column-style Hermite normal form of an integer matrix with full
    column rank, using unimodular column operations only.

    The bottom block of a row basis becomes upper triangular with positive
    pivots, the entries right of each pivot reduced into ``[0, pivot)``.
    The result is unique for the column lattice, so two matrices have the
    same form iff they differ by a right factor in GL(n, Z).

    :raises SimplexError: if the columns are linearly dependent.
    """
    n_cols = len(rows[0]) if rows else 0
    form = hermite_normal_form(_zz(rows))
    if form.shape[1] == n_cols:
        return _to_ints(form)

    # the last n rows are dependent: move a row basis to the bottom
    basis = _pivot_rows(rows)
    if len(basis) != n_cols:
        raise SimplexError("matrix does not have full column rank")
    order = [i for i in range(len(rows)) if i not in basis] + basis
    form = _to_ints(hermite_normal_form(_zz([rows[i] for i in order])))
    out = [None] * len(rows)
    for position, i in enumerate(order):
        out[i] = form[position]
    return out


def lattice_index(vectors):
    """
    Index in Z^d of the lattice generated by ``vectors`` (each of length
    d), read off as the product of the pivots of the Hermite normal form
    of the matrix having the vectors as columns.

    :raises SimplexError: if the vectors do not span a rank-d lattice.
    """
    cols = transpose(vectors)
    form = hermite_normal_form(_zz(cols))
    if form.shape[1] != len(cols):
        raise SimplexError("vectors do not span a full-rank lattice")
    out = 1
    for i, row in enumerate(_to_ints(form)):
        out *= row[i]
    return out
