"""
Exact lattice simplices with the origin in their interior.

A d-dimensional simplex is stored as its d+1 integer vertices (rows).
All derived quantities are computed exactly: maximal minors over ZZ,
dual vertices with rational linear algebra over QQ.
"""
import itertools
import math
from collections import namedtuple
from dataclasses import dataclass, field

import sympy

from . import linalg
from .utils import (SimplexError, WeightSystemError, LimitError, MAX_BOX_CELLS,
                    MAX_CANONICAL_DIMENSION, is_int, parse_int, gcd_all, pairs)
from .weights import WeightSystem, is_reduced, is_reflexive as is_reflexive_ws


@dataclass(frozen=True)
class LatticeSimplex(object):                                       #pylint: disable=useless-object-inheritance
    """
    ``conv(v_0, ..., v_d)`` for integer vectors ``v_i`` of length d.
    Only the shape is validated here; the functions below check that
    the origin is interior where they need it.
    """
    vertices: tuple

    def __post_init__(self):
        verts = self.vertices
        if not isinstance(verts, tuple) or len(verts) < 2:
            raise SimplexError("a simplex needs at least two vertices")
        d__ = len(verts) - 1
        for vert in verts:
            if not isinstance(vert, tuple) or len(vert) != d__:
                raise SimplexError("expected %d vertices of length %d" % (d__ + 1, d__))
            if not all(is_int(x) for x in vert):
                raise SimplexError("vertex coordinates must be integers: %r" % (vert,))

    @classmethod
    def of(cls, vertices):
        """ build from any nested sequence of integers """
        return cls(tuple(tuple(v) for v in vertices))

    @property
    def dim(self):
        """ d """
        return len(self.vertices) - 1

    def matrix(self):
        """ vertices as a list of rows """
        return [list(v) for v in self.vertices]

    def transform(self, matrix):
        """ image under the linear map ``x -> matrix x`` """
        return LatticeSimplex.of(linalg.mat_vec(matrix, v) for v in self.vertices)

    def scaled(self, factor):
        """ dilation by an integer factor """
        return LatticeSimplex.of([factor * x for x in v] for v in self.vertices)

    def to_json(self):
        """ {"dim": d, "vertices": [[...], ...]} with decimal strings """
        return {"dim": self.dim,
                "vertices": [[str(x) for x in v] for v in self.vertices]}

    @classmethod
    def from_json(cls, data):
        """ inverse of :meth:`to_json` """
        try:
            verts = [[parse_int(x, "coordinate") for x in v] for v in data["vertices"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise SimplexError("malformed simplex JSON: %s" % exc) from exc
        simplex = cls.of(verts)
        if "dim" in data and parse_int(data["dim"], "dim") != simplex.dim:
            raise SimplexError("dim %r does not match %d vertices" % (data["dim"],
                                                                    simplex.dim + 1))
        return simplex


@dataclass(frozen=True)
class RationalSimplex(object):                                      #pylint: disable=useless-object-inheritance
    """
    Simplex with exact rational vertices; ``vertices[i]`` is the facet
    normal ``eta_{F_i}`` of the facet of the primal simplex opposite to
    its vertex i, so ``<eta_{F_i}, v_j> = -1`` for ``j != i``.
    """
    vertices: tuple

    @property
    def dim(self):
        """ d """
        return len(self.vertices) - 1

    def is_integral(self):
        """ every coordinate is an integer """
        return linalg.is_integral(self.vertices)

    def as_lattice(self):
        """
        :raises SimplexError: if some vertex is not integral.
        """
        if not self.is_integral():
            raise SimplexError("dual simplex has non-integral vertices")
        return LatticeSimplex.of(linalg.as_ints(self.vertices))


@dataclass
class EdgeReport(object):                                           #pylint: disable=useless-object-inheritance
    """ ``counts[(i, j)]``: lattice points on the edge ``[v_i, v_j]`` """
    counts: dict = field(default_factory=dict)

    @property
    def max_points(self):
        """ largest per-edge count """
        return max(self.counts.values())

    def multiset(self):
        """ all counts, sorted """
        return sorted(self.counts.values())


LatticePoints = namedtuple("LatticePoints", ["count", "points"])


def _signed_minors(vertices):
    """ ``(-1)^i det(v_j : j != i)`` for i = 0..d """
    rows = [list(v) for v in vertices]
    return [(-1) ** i * linalg.det(rows[:i] + rows[i + 1:]) for i in range(len(rows))]


def vertex_weights(simplex):
    """
    The weights ``q_i = |det(v_j : j != i)|`` in vertex order.

    :raises SimplexError: unless the origin lies strictly inside, i.e.
        every signed minor is non-zero and they all share one sign.
    """
    minors = _signed_minors(simplex.vertices)
    if any(m == 0 for m in minors):
        raise SimplexError("degenerate simplex or origin on the boundary")
    if not (all(m > 0 for m in minors) or all(m < 0 for m in minors)):
        raise SimplexError("origin is not in the interior of the simplex")
    weights = tuple(abs(m) for m in minors)
    lam = gcd_all(weights)
    for coord in range(simplex.dim):
        assert sum(q // lam * v[coord] for q, v in zip(weights, simplex.vertices)) == 0
    return weights


def weight_system_of(simplex):
    """ Q_P, sorted descending; the vertex order is in :func:`vertex_weights` """
    return WeightSystem.of(vertex_weights(simplex))


def factor_of(simplex):
    """
    lambda_P, the index of the lattice generated by the vertices,
    computed as the gcd of the maximal minors and as a Hermite normal
    form determinant; both must agree.
    """
    by_minors = gcd_all(vertex_weights(simplex))
    by_hnf = linalg.lattice_index(simplex.matrix())
    assert by_minors == by_hnf, "factor mismatch: %d vs %d" % (by_minors, by_hnf)
    return by_minors


def _facet_normals(vertices):
    normals = []
    for i in range(len(vertices)):
        rows = [list(v) for j, v in enumerate(vertices) if j != i]
        normals.append(tuple(linalg.solve(rows, [-1] * len(rows))))
    return tuple(normals)


def dual(simplex):
    """
    P* as a :class:`RationalSimplex`. Accepts a lattice or a rational
    simplex, so ``dual(dual(P))`` has the vertex set of P.
    """
    if isinstance(simplex, LatticeSimplex):
        vertex_weights(simplex)
    return RationalSimplex(_facet_normals(simplex.vertices))


def is_reflexive(simplex):
    """ the dual simplex is a lattice simplex """
    return dual(simplex).is_integral()


def dual_lattice_simplex(simplex):
    """ P* as a :class:`LatticeSimplex`; P must be reflexive """
    return dual(simplex).as_lattice()


def build_PQ(q__):                                                  #pylint: disable=invalid-name
    """
    The simplex P_Q whose vertices generate the lattice and whose weight
    system is Q, in vertex order ``q_0, ..., q_d``.

    A unimodular W with ``W q = e_0`` identifies Z^(d+1)/Zq with Z^d; the
    images of the unit vectors, i.e. the columns of W without its first
    row, are the vertices.

    :raises WeightSystemError: if Q is not reduced.
    """
    if not is_reduced(q__):
        raise WeightSystemError("P_Q needs a reduced weight system, got %s" % q__)
    w__ = linalg.unimodular_completion(list(q__.qs))
    simplex = LatticeSimplex.of(linalg.transpose(w__[1:]))
    assert vertex_weights(simplex) == q__.qs
    return simplex


def explicit_PQ(q__):                                               #pylint: disable=invalid-name
    """
    ``conv(e_0, ..., e_{d-1}, -q_0 e_0 - ... - q_{d-1} e_{d-1})`` for a
    weight system with a weight equal to one (kept last).
    """
    if q__.qs[-1] != 1:
        raise WeightSystemError("the explicit P_Q needs a weight equal to 1, got %s" % q__)
    d__ = q__.dimension
    verts = linalg.identity(d__) + [[-q for q in q__.qs[:-1]]]
    return LatticeSimplex.of(verts)


def explicit_SQ(q__):                                               #pylint: disable=invalid-name
    """
    ``conv(k_0 e_0 - u, ..., k_{d-1} e_{d-1} - u, -u)`` with
    ``k_i = |Q|/q_i`` and ``u = e_0 + ... + e_{d-1}``, for a reflexive
    weight system with a weight equal to one.
    """
    if not is_reflexive_ws(q__):
        raise WeightSystemError("%s is not a reflexive weight system" % q__)
    if q__.qs[-1] != 1:
        raise WeightSystemError("the explicit S_Q needs a weight equal to 1, got %s" % q__)
    d__ = q__.dimension
    total = q__.total
    verts = [[(total // q__.qs[i]) * int(i == j) - 1 for j in range(d__)] for i in range(d__)]
    verts.append([-1] * d__)
    return LatticeSimplex.of(verts)


def build_SQ(q__):                                                  #pylint: disable=invalid-name
    """
    S_Q = (P_Q)* for a reflexive weight system.

    :raises WeightSystemError: if Q is not reflexive.
    """
    if not is_reflexive_ws(q__):
        raise WeightSystemError("%s is not a reflexive weight system" % q__)
    return dual_lattice_simplex(build_PQ(q__))


def volume(simplex):
    """
    Normalized volume (d! times euclidean). Computed as the total weight
    and as ``|det(v_1 - v_0, ..., v_d - v_0)|``; both must agree.
    """
    by_weights = sum(vertex_weights(simplex))
    v0 = simplex.vertices[0]
    edges = [[a - b for a, b in zip(v, v0)] for v in simplex.vertices[1:]]
    by_edges = abs(linalg.det(edges))
    assert by_weights == by_edges, "volume mismatch: %d vs %d" % (by_weights, by_edges)
    return by_weights


def _integer_facets(simplex):
    """ facet inequalities ``a . x >= -c`` scaled to integers """
    facets = []
    for eta in dual(simplex).vertices:
        den = math.lcm(*(x.denominator for x in eta))
        facets.append(([int(x * den) for x in eta], den))
    return facets


def _points_by_box(simplex, max_cells):
    d__ = simplex.dim
    lows = [min(v[c] for v in simplex.vertices) for c in range(d__)]
    highs = [max(v[c] for v in simplex.vertices) for c in range(d__)]
    cells = math.prod(h - l + 1 for l, h in zip(lows, highs))
    if cells > max_cells:
        raise LimitError("bounding box has %d cells, limit is %d" % (cells, max_cells))

    facets = _integer_facets(simplex)
    solved = max(range(d__), key=lambda c: highs[c] - lows[c])
    others = [c for c in range(d__) if c != solved]
    points = []

    for partial in itertools.product(*(range(lows[c], highs[c] + 1) for c in others)):
        lo_s, hi_s = lows[solved], highs[solved]
        for normal, den in facets:
            rest = -den - sum(normal[c] * x for c, x in zip(others, partial))
            coef = normal[solved]
            if coef > 0:
                lo_s = max(lo_s, -((-rest) // coef))
            elif coef < 0:
                hi_s = min(hi_s, rest // coef)
            elif rest > 0:
                hi_s = lo_s - 1
            if lo_s > hi_s:
                break
        for x_s in range(lo_s, hi_s + 1):
            point = list(partial)
            point.insert(solved, x_s)
            points.append(tuple(point))
    return points


def _compositions(weights, total):
    """ non-negative integer solutions of ``sum w_i y_i = total`` """
    head = weights[0]
    if len(weights) == 1:
        if total % head == 0:
            yield (total // head,)
        return
    for y__ in range(total // head + 1):
        for rest in _compositions(weights[1:], total - head * y__):
            yield (y__,) + rest


def _points_by_facets(simplex):
    """
    For reflexive P the facet distances ``y_i = <eta_i, x> + 1`` of a
    lattice point are non-negative integers with ``sum c_i y_i = sum c_i``,
    c the reduced weights of P*; every solution is mapped back to x and
    kept when x is integral.
    """
    normals = dual_lattice_simplex(simplex)
    weights = vertex_weights(normals)
    lam = gcd_all(weights)
    weights = [c // lam for c in weights]
    d__ = simplex.dim
    rows = [list(eta) for eta in normals.vertices[:d__]]
    det = linalg.det(rows)
    adj = linalg.as_ints([[x * det for x in row] for row in linalg.inverse(rows)])
    points = []

    for ys in _compositions(weights, sum(weights)):
        rhs = [y - 1 for y in ys[:d__]]
        coords = [sum(a * b for a, b in zip(row, rhs)) for row in adj]
        if all(c % det == 0 for c in coords):
            points.append(tuple(c // det for c in coords))
    return points


def lattice_points(simplex, max_cells=MAX_BOX_CELLS, method="box"):
    """
    Count the lattice points of P.

    ``method="box"`` scans the vertex bounding box; the longest box side
    is not scanned, for each point of the remaining box the facet
    inequalities cut out an exact interval on it. ``method="facets"``
    enumerates facet distances instead and needs P reflexive; its cost
    does not depend on how the simplex sits in the lattice.
    ``method="auto"`` picks facets for reflexive input.

    :raises LimitError: if the bounding box has more than ``max_cells``
        cells (box method only).
    :return: ``LatticePoints(count, points)``, points sorted.
    """
    if method == "auto":
        method = "facets" if is_reflexive(simplex) else "box"
    if method == "box":
        points = _points_by_box(simplex, max_cells)
    elif method == "facets":
        points = _points_by_facets(simplex)
    else:
        raise ValueError("unknown lattice point method %r" % (method,))
    points.sort()
    return LatticePoints(len(points), points)


def edge_lattice_counts(simplex):
    """ lattice points on every edge: gcd of the coordinate differences + 1 """
    verts = simplex.vertices
    report = EdgeReport()
    for i, j in pairs(verts):
        report.counts[(i, j)] = gcd_all(a - b for a, b in zip(verts[i], verts[j])) + 1
    return report


def canonical_form(simplex):
    """
    Canonical representative of the unimodular-equivalence class: the
    lexicographically smallest column Hermite normal form of the vertex
    matrix over all vertex orders.

    :raises LimitError: above ``MAX_CANONICAL_DIMENSION``.
    """
    if simplex.dim > MAX_CANONICAL_DIMENSION:
        raise LimitError("canonical form is limited to d <= %d" % MAX_CANONICAL_DIMENSION)
    rows = simplex.matrix()
    best = None
    for order in itertools.permutations(rows):
        form = tuple(tuple(r) for r in linalg.column_hnf(order))
        if best is None or form < best:
            best = form
    return best


def is_equivalent(first, second):
    """
    Direct unimodular-equivalence test: for every vertex bijection solve
    for the linear map sending the first d vertices across and accept it
    if it is integral, has determinant +-1 and maps the last vertex too.
    Independent of :func:`canonical_form`.
    """
    if first.dim != second.dim:
        return False
    if sorted(vertex_weights(first)) != sorted(vertex_weights(second)):
        return False
    d__ = first.dim
    base = linalg.transpose([list(v) for v in first.vertices[:d__]])
    base_inv = linalg.inverse(base)
    last = list(first.vertices[d__])

    for order in itertools.permutations(second.vertices):
        image = linalg.transpose([list(v) for v in order[:d__]])
        a__ = linalg.matrix_multiply(image, base_inv)
        if not linalg.is_integral(a__):
            continue
        a__ = linalg.as_ints(a__)
        if abs(linalg.det(a__)) != 1:
            continue
        if linalg.mat_vec(a__, last) == list(order[d__]):
            return True
    return False


def determinant_identity(ns):
    """
    The matrix with ``n_i - 1`` on the diagonal and ``-1`` elsewhere:
    returns its determinant computed over ZZ, by a sympy ``Matrix``
    and from the closed form ``n_1...n_d - sum_j prod_{i != j} n_i``.
    """
    size = len(ns)
    rows = [[(n - 1) if i == j else -1 for j in range(size)] for i, n in enumerate(ns)]
    closed = math.prod(ns) - sum(math.prod(ns[:j] + ns[j + 1:]) for j in range(size))
    return linalg.det(rows), int(sympy.Matrix(rows).det()), closed


__all__ = ["LatticeSimplex", "RationalSimplex", "EdgeReport", "LatticePoints",
           "vertex_weights", "weight_system_of", "factor_of", "dual", "is_reflexive",
           "dual_lattice_simplex", "build_PQ", "build_SQ", "explicit_PQ", "explicit_SQ",
           "volume", "lattice_points", "edge_lattice_counts", "canonical_form",
           "is_equivalent", "determinant_identity"]
