"""
Classification of reflexive simplices up to unimodular equivalence.

Every d-dimensional reflexive simplex P with reduced weight system Q is
``H P_Q`` for a lower-triangular Hermite normal form H whose determinant
is the factor of P, a divisor of ``m_Q``. The classifier runs over
those H, keeps the reflexive images and deduplicates them by canonical
form. Records persist as line-delimited JSON.
"""
import csv
import functools
import itertools
import json
import sys
import warnings
from dataclasses import dataclass

from sympy import divisors
from tqdm import tqdm
from tqdm.contrib.concurrent import process_map

from . import simplex as sx
from .numthy import UnitPartition
from .utils import (ClassificationError, LimitError, RecordFormatError, ReflexWarning,
                    SimplexError, WeightSystemError, MAX_CLASSIFY_DIMENSION,
                    OVERRIDE_CLASSIFY_DIMENSION, is_int, parse_int)
from .weights import (WeightSystem, is_reflexive, m_of, reduce, weights_to_partition,
                      reflexive_weight_systems)

CSV_HEADER = ["d", "weights", "partition", "m", "lambda", "volume", "points", "maxEdge",
              "selfDual"]


@dataclass(frozen=True)
class HNFMatrix(object):                                            #pylint: disable=useless-object-inheritance
    """
    d x d lower-triangular integer matrix with positive diagonal and
    ``0 <= h[i][j] < h[j][j]`` for ``i > j``.
    """
    entries: tuple

    def __post_init__(self):
        rows = self.entries
        size = len(rows)
        for i, row in enumerate(rows):
            if len(row) != size:
                raise ValueError("HNF matrix must be square")
            if row[i] <= 0:
                raise ValueError("HNF diagonal must be positive")
            for j, x in enumerate(row):
                if j > i and x != 0:
                    raise ValueError("HNF matrix must be lower triangular")
                if j < i and not 0 <= x < rows[j][j]:
                    raise ValueError("entry (%d,%d) not reduced modulo its diagonal" % (i, j))

    @property
    def dim(self):
        """ d """
        return len(self.entries)

    @property
    def det(self):
        """ product of the diagonal """
        out = 1
        for i, row in enumerate(self.entries):
            out *= row[i]
        return out

    def rows(self):
        """ entries as a list of lists """
        return [list(r) for r in self.entries]


def hnf_enumerate(d__, det, column_filter=None):
    """
    Every d x d HNF matrix of determinant ``det`` exactly once.

    Columns are filled from the last to the first: a diagonal entry
    dividing what is left of ``det``, then every residue choice below
    it. ``column_filter(h, j)``, if given, is called on the partially
    built matrix ``h`` (a list of rows) as soon as column j is complete,
    with columns ``j..d-1`` valid; returning False prunes every
    completion. Calls arrive in depth-first order, so a filter may cache
    per-column state.
    """
    if not is_int(d__) or d__ < 1:
        raise ValueError("dimension must be an integer >= 1, got %r" % (d__,))
    if not is_int(det) or det < 1:
        raise ValueError("determinant must be an integer >= 1, got %r" % (det,))
    h__ = [[0] * d__ for _ in range(d__)]

    def fill(j, remaining):
        if j < 0:
            yield HNFMatrix(tuple(tuple(row) for row in h__))
            return
        diagonals = [remaining] if j == 0 else divisors(remaining)
        below = range(j + 1, d__)
        for diag in diagonals:
            h__[j][j] = diag
            for entries in itertools.product(range(diag), repeat=len(below)):
                for k, e__ in zip(below, entries):
                    h__[k][j] = e__
                if column_filter is None or column_filter(h__, j):
                    yield from fill(j - 1, remaining // diag)
        for k in range(j, d__):
            h__[k][j] = 0

    yield from fill(d__ - 1, det)


class _DualIntegrality(object):                                     #pylint: disable=useless-object-inheritance,too-few-public-methods
    """
    Column filter accepting H iff ``H^T x = eta`` has an integral
    solution for every dual vertex eta of P_Q, i.e. iff ``H P_Q`` is
    reflexive. ``H^T`` is upper triangular, so column j fixes ``x_j``
    once the later columns are known.
    """

    def __init__(self, etas, d__):
        self.etas = etas
        self.xs = [[0] * d__ for _ in etas]

    def __call__(self, h__, j):
        col = [row[j] for row in h__]
        diag = col[j]
        solved = []
        for eta, x__ in zip(self.etas, self.xs):
            num = eta[j] - sum(col[k] * x__[k] for k in range(j + 1, len(col)))
            if num % diag:
                return False
            solved.append(num // diag)
        for x__, value in zip(self.xs, solved):
            x__[j] = value
        return True


@dataclass(frozen=True)
class ClassRecord(object):                                          #pylint: disable=useless-object-inheritance,too-many-instance-attributes
    """
    One isomorphism class of reflexive simplices; ``vertices`` is the
    canonical form.
    """
    d: int                                                          #pylint: disable=invalid-name
    weights: WeightSystem
    partition: UnitPartition
    m: int                                                          #pylint: disable=invalid-name
    lam: int
    vertices: tuple
    volume: int
    points: int
    max_edge: int
    self_dual: bool

    @property
    def simplex(self):
        """ the canonical representative """
        return sx.LatticeSimplex(self.vertices)

    def sort_key(self):
        """ volume descending, then canonical form """
        return (-self.volume, self.vertices)

    def to_json(self):
        """ the JSONL schema, in canonical field order """
        return {"d": self.d,
                "weights": [str(q) for q in self.weights.qs],
                "partition": self.partition.to_json(),
                "m": str(self.m),
                "lambda": str(self.lam),
                "vertices": [[str(x) for x in v] for v in self.vertices],
                "volume": str(self.volume),
                "points": str(self.points),
                "maxEdge": str(self.max_edge),
                "selfDual": self.self_dual}

    @classmethod
    def from_json(cls, data):
        """
        :raises RecordFormatError: on a missing or mistyped field.
        """
        try:
            self_dual = data["selfDual"]
            if not isinstance(self_dual, bool):
                raise ValueError("selfDual must be a boolean")
            return cls(d=parse_int(data["d"], "d"),
                       weights=WeightSystem.from_json(data["weights"]),
                       partition=UnitPartition.from_json(data["partition"]),
                       m=parse_int(data["m"], "m"),
                       lam=parse_int(data["lambda"], "lambda"),
                       vertices=sx.LatticeSimplex.from_json(data).vertices,
                       volume=parse_int(data["volume"], "volume"),
                       points=parse_int(data["points"], "points"),
                       max_edge=parse_int(data["maxEdge"], "maxEdge"),
                       self_dual=self_dual)
        except (KeyError, TypeError, ValueError) as exc:
            raise RecordFormatError("bad record: %s" % exc) from exc

    def check(self):
        """
        Recompute what the record claims from its vertices and weights.
        Lattice points are only checked against the upper bound
        ``d + volume`` since counting them again is the expensive part.

        :raises RecordFormatError: naming the first violated invariant.
        """
        def fail(msg):
            raise RecordFormatError("%s in record %s" % (msg, self.weights))

        if self.lam < 1 or self.m % self.lam:
            fail("lambda %d does not divide m %d" % (self.lam, self.m))
        if not is_reflexive(self.weights):
            fail("weights not reflexive")
        if self.m != m_of(self.weights):
            fail("wrong m")
        if self.partition != weights_to_partition(self.weights):
            fail("partition does not match the weights")
        if self.volume != self.lam * self.weights.total:
            fail("volume %d != lambda * |Q|" % self.volume)
        try:
            simplex = self.simplex
            if simplex.dim != self.d:
                fail("dimension mismatch")
            if reduce(sx.weight_system_of(simplex)) != self.weights:
                fail("vertices have another weight system")
            if sx.factor_of(simplex) != self.lam:
                fail("vertices have another factor")
            if sx.volume(simplex) != self.volume:
                fail("vertices have another volume")
            if not sx.is_reflexive(simplex):
                fail("vertices do not form a reflexive simplex")
            if sx.edge_lattice_counts(simplex).max_points != self.max_edge:
                fail("wrong maximal edge count")
        except (SimplexError, LimitError) as exc:
            fail(str(exc))
        if not self.d + 1 <= self.points <= self.d + self.volume:
            fail("lattice point count %d out of range" % self.points)


def _make_record(q__, lam, simplex, canonical):
    d__ = q__.dimension
    canon = sx.LatticeSimplex(canonical)
    dual_canon = sx.canonical_form(sx.dual_lattice_simplex(canon))
    return ClassRecord(d=d__,
                       weights=q__,
                       partition=weights_to_partition(q__),
                       m=int(m_of(q__)),
                       lam=lam,
                       vertices=canonical,
                       volume=sx.volume(simplex),
                       points=sx.lattice_points(canon, method="facets").count,
                       max_edge=sx.edge_lattice_counts(canon).max_points,
                       self_dual=dual_canon == canonical)


def classify_weight_system(q__, debug=False):
    """
    All classes of reflexive simplices whose reduced weight system is Q.

    :raises WeightSystemError: if Q is not reflexive.
    :return: records sorted by volume descending, then canonical form.
    """
    if not is_reflexive(q__):
        raise WeightSystemError("%s is not a reflexive weight system" % q__)
    d__ = q__.dimension
    p_q = sx.build_PQ(q__)
    etas = sx.dual_lattice_simplex(p_q).vertices
    m__ = int(m_of(q__))
    seen = set()
    records = []
    candidates = 0

    for lam in divisors(m__):
        for hnf in hnf_enumerate(d__, lam, column_filter=_DualIntegrality(etas, d__)):
            candidates += 1
            image = p_q.transform(hnf.rows())
            if not sx.is_reflexive(image) or reduce(sx.weight_system_of(image)) != q__:
                raise ClassificationError("HNF image %r of %s failed the reflexivity filter"
                                          % (hnf.entries, q__))
            assert sx.factor_of(image) == lam
            canonical = sx.canonical_form(image)
            if canonical in seen:
                continue
            seen.add(canonical)
            records.append(_make_record(q__, lam, image, canonical))

    if debug:
        print("%s: m=%d candidates=%d classes=%d" % (q__, m__, candidates, len(records)),
              file=sys.stderr)
    records.sort(key=ClassRecord.sort_key)
    return records


def _check_classify_dimension(d__, allow_high_dimension):
    if not is_int(d__) or d__ < 2:
        raise LimitError("classification dimension must be an integer >= 2, got %r" % (d__,))
    if d__ <= MAX_CLASSIFY_DIMENSION:
        return
    if allow_high_dimension and d__ <= OVERRIDE_CLASSIFY_DIMENSION:
        warnings.warn("classifying d = %d is far outside the tested range" % d__,
                      ReflexWarning)
        return
    raise LimitError("classification is limited to d <= %d (d = %d needs the override)"
                     % (MAX_CLASSIFY_DIMENSION, OVERRIDE_CLASSIFY_DIMENSION))


def classify_dimension(d__, allow_high_dimension=False, workers=1, progress=False,
                       debug=False):
    """
    Every d-dimensional reflexive simplex up to unimodular equivalence.

    Weight systems are independent work units; with ``workers > 1`` they
    are spread over processes. The result is sorted by volume
    descending, then canonical form, whatever the worker count.

    :raises LimitError: for ``d > MAX_CLASSIFY_DIMENSION`` unless
        ``allow_high_dimension`` (which unlocks one more dimension).
    """
    _check_classify_dimension(d__, allow_high_dimension)
    systems = list(reflexive_weight_systems(d__, allow_long=allow_high_dimension))
    work = functools.partial(classify_weight_system, debug=debug)
    if workers and workers > 1:
        chunks = process_map(work, systems, max_workers=workers, chunksize=1,
                             disable=not progress)
    else:
        chunks = [work(q__) for q__ in tqdm(systems, disable=not progress, desc="d=%d" % d__)]
    records = [rec for chunk in chunks for rec in chunk]
    records.sort(key=ClassRecord.sort_key)
    return records


def save_classification(records, path):
    """ one JSON object per line, fields in schema order """
    with open(path, "w", encoding="utf-8") as out:
        for rec in records:
            out.write(json.dumps(rec.to_json(), separators=(",", ":")) + "\n")


def load_classification(path, check=True):
    """
    Inverse of :func:`save_classification`. Blank lines are skipped.

    :raises RecordFormatError: with the path and line number of the
        first malformed or inconsistent record.
    """
    records = []
    with open(path, "r", encoding="utf-8") as inp:
        for lineno, line in enumerate(inp, 1):
            if not line.strip():
                continue
            try:
                rec = ClassRecord.from_json(json.loads(line))
                if check:
                    rec.check()
            except json.JSONDecodeError as exc:
                raise RecordFormatError("invalid JSON: %s" % exc.msg, path, lineno) from exc
            except RecordFormatError as exc:
                raise RecordFormatError(str(exc), path, lineno) from exc
            records.append(rec)
    return records


def _csv_row(rec):
    return [str(rec.d),
            "|".join(str(q) for q in rec.weights.qs),
            "|".join(str(k) for k in rec.partition.ks),
            str(rec.m), str(rec.lam), str(rec.volume), str(rec.points),
            str(rec.max_edge), "true" if rec.self_dual else "false"]


def export_csv(records, target):
    """
    Write the records as CSV with the standard header; vectors are
    joined by ``|``. ``target`` is a path or an open text stream.
    """
    if hasattr(target, "write"):
        writer = csv.writer(target)
        writer.writerow(CSV_HEADER)
        writer.writerows(_csv_row(rec) for rec in records)
        return
    with open(target, "w", encoding="utf-8", newline="") as out:
        export_csv(records, out)
