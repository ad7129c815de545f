"""
Replay the extremal statements about reflexive simplices against a
complete classification and against unit-partition sweeps.

Verdicts only read the records; nothing is cached between calls.
Extremal classes are compared by canonical form with simplices built
from their weight systems, never with hard-coded coordinates.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import simplex as sx
from .numthy import kprop_sweep, chain_sweep, curtiss_corollary_sweep, sylvester_t
from .utils import ClassificationError, LimitError, pairs
from .weights import (WeightSystem, m_of, reduce, sylvester_ws, enlarged_sylvester_ws,
                      reflexive_weight_systems)


@dataclass
class TheoremVerdict(object):                                       #pylint: disable=useless-object-inheritance,too-many-instance-attributes
    """
    Outcome of one statement in one dimension. ``unique`` reports the
    equality clause: the extremal classes are exactly the claimed ones.
    """
    theorem: str
    d: int                                                          #pylint: disable=invalid-name
    bound: object
    observed: object
    holds: bool
    unique: bool = True
    extremals: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_json(self):
        """ {"theorem", "d", "bound", "observed", "holds", "unique", "extremals"} """
        def _enc(item):
            if isinstance(item, tuple) and item and isinstance(item[0], tuple):
                return [[str(x) for x in row] for row in item]
            if isinstance(item, (tuple, list)):
                return [str(x) for x in item]
            return str(item)

        out = {"theorem": self.theorem,
               "d": self.d,
               "bound": None if self.bound is None else str(self.bound),
               "observed": None if self.observed is None else str(self.observed),
               "holds": self.holds,
               "unique": self.unique,
               "extremals": [_enc(e) for e in self.extremals]}
        if self.details:
            out["details"] = self.details
        return out


@lru_cache(maxsize=None)
def _canonical_sq(qs):
    return sx.canonical_form(sx.build_SQ(WeightSystem(qs)))


def canonical_sq(q__):
    """ canonical form of S_Q, memoized per weight system """
    return _canonical_sq(q__.qs)


def require_complete(d__, records):
    """
    :raises ClassificationError: unless ``records`` is a whole
        d-dimensional classification: every record has dimension d and
        every reflexive weight system of length d+1 has its ``S_Q``
        class (the one with ``lambda = m``).
    """
    if any(rec.d != d__ for rec in records):
        raise ClassificationError("records of another dimension mixed into d = %d" % d__)
    expected = set(reflexive_weight_systems(d__))
    top = {rec.weights for rec in records if rec.lam == rec.m}
    missing = expected - top
    if missing:
        raise ClassificationError("incomplete classification for d = %d: %d weight systems "
                                  "missing, e.g. %s" % (d__, len(missing), min(missing)))
    extra = {rec.weights for rec in records} - expected
    if extra:
        raise ClassificationError("unexpected weight system %s" % min(extra))


def _dual_volume(rec):
    return (rec.m // rec.lam) * rec.weights.total


def _argmax(records, key):
    best = max(key(rec) for rec in records)
    return best, sorted(rec.vertices for rec in records if key(rec) == best)


def verify_theorem_A(d__, records):                                 #pylint: disable=invalid-name
    """
    Largest volume: 9 for d = 2 (only ``S_(1,1,1)``), otherwise
    ``2 t_{d-1}^2``, attained only by ``S_{Q'_d}`` and, for d = 3, also by
    ``S_(3,1,1,1)``. For d <= 3 the largest lattice point counts 10 and
    39 are checked too; at d = 3 both extremal classes carry 39 points.
    """
    require_complete(d__, records)
    if d__ == 2:
        bound = 9
        expected = [canonical_sq(WeightSystem((1, 1, 1)))]
    else:
        bound = 2 * sylvester_t(d__ - 1) ** 2
        expected = [canonical_sq(enlarged_sylvester_ws(d__))]
        if d__ == 3:
            expected.append(canonical_sq(WeightSystem((3, 1, 1, 1))))
    observed, extremals = _argmax(records, lambda rec: rec.volume)
    unique = extremals == sorted(expected)
    details = {}
    holds = observed == bound and unique

    point_bounds = {2: 10, 3: 39}
    if d__ in point_bounds:
        max_points, _ = _argmax(records, lambda rec: rec.points)
        extremal_points = sorted(rec.points for rec in records if rec.vertices in extremals)
        details["max_points"] = max_points
        details["extremal_points"] = extremal_points
        holds = holds and max_points == point_bounds[d__]
        if d__ == 3:
            holds = holds and extremal_points == [39, 39]
    return TheoremVerdict("A", d__, bound, observed, holds, unique, extremals, details)


def verify_theorem_B(d__, records):                                 #pylint: disable=invalid-name
    """ largest number of lattice points on an edge is ``2 t_{d-1} + 1``, only for S_{Q'_d} """
    require_complete(d__, records)
    bound = 2 * sylvester_t(d__ - 1) + 1
    observed, extremals = _argmax(records, lambda rec: rec.max_edge)
    unique = extremals == [canonical_sq(enlarged_sylvester_ws(d__))]
    return TheoremVerdict("B", d__, bound, observed, observed == bound and unique, unique,
                          extremals)


def verify_theorem_C(d__, records):                                 #pylint: disable=invalid-name,too-many-locals
    """
    ``(d+1)^(d+1) <= Vol(P) Vol(P*) <= t_d^2`` for every class. The lower
    bound is attained exactly when the vertices sum to zero, the upper
    one exactly by the self-dual S_{Q_d}. Among classes whose dual has
    factor one, ``Vol(P*) <= t_d`` with equality only for S_{Q_d}. The
    product must also equal the product of the unit partition.
    """
    require_complete(d__, records)
    lower = (d__ + 1) ** (d__ + 1)
    t_d = sylvester_t(d__)
    upper = t_d * t_d
    sq_d = canonical_sq(sylvester_ws(d__))
    lower_ext = []
    violations = []

    for rec in records:
        prod = rec.volume * _dual_volume(rec)
        vertex_sum_zero = all(sum(col) == 0 for col in zip(*rec.vertices))
        all_equal = len(set(rec.weights.qs)) == 1
        if vertex_sum_zero != all_equal:
            violations.append(("vertex sum vs. weights", rec.vertices))
        if not lower <= prod <= upper:
            violations.append(("out of bounds", rec.vertices))
        if (prod == lower) != vertex_sum_zero:
            violations.append(("lower equality", rec.vertices))
        if (prod == upper) != (rec.vertices == sq_d):
            violations.append(("upper equality", rec.vertices))
        if prod != rec.partition.product:
            violations.append(("product of the partition", rec.vertices))
        if prod == lower:
            lower_ext.append(rec.vertices)

    observed, extremals = _argmax(records, lambda rec: rec.volume * _dual_volume(rec))
    unique = extremals == [sq_d] and all(rec.self_dual for rec in records
                                         if rec.vertices == sq_d)

    # duals generated by their vertices: lambda* = m / lambda = 1
    generated = [rec for rec in records if rec.lam == rec.m]
    restricted, restricted_ext = _argmax(generated, _dual_volume)
    restricted_ok = restricted == t_d and restricted_ext == [sq_d]

    holds = not violations and observed == upper and unique and restricted_ok
    details = {"lower": str(lower),
               "lower_extremals": [[[str(x) for x in v] for v in c] for c in sorted(lower_ext)],
               "restricted_bound": str(t_d),
               "restricted_observed": str(restricted),
               "violations": [[what, [[str(x) for x in v] for v in vs]]
                              for what, vs in violations[:5]]}
    return TheoremVerdict("C", d__, upper, observed, holds, unique, extremals, details)


def verify_corollary_bracket(d__, records):
    """
    ``t_{d-1}^2 / (3 (d-2)!) < J <= d + 2 t_{d-1}^2`` for the largest
    lattice point count J; stated for d >= 3.
    """
    if d__ < 3:
        raise LimitError("the lattice point bracket needs d >= 3, got %d" % d__)
    require_complete(d__, records)
    t__ = sylvester_t(d__ - 1)
    lower = Fraction(t__ * t__, 3 * math.factorial(d__ - 2))
    upper = d__ + 2 * t__ * t__
    observed, extremals = _argmax(records, lambda rec: rec.points)
    return TheoremVerdict("bracket", d__, upper, observed, lower < observed <= upper, True,
                          extremals, {"lower": str(lower)})


def verify_volume_bound(d__, records):
    """
    ``Vol(P) <= 2 t_{d-1}^2`` for d >= 3, with equality only for S_Q
    where Q is Q'_d or, at d = 3, (3,1,1,1); weight systems are compared
    as reduced tuples.
    """
    if d__ < 3:
        raise LimitError("the volume bound needs d >= 3, got %d" % d__)
    require_complete(d__, records)
    bound = 2 * sylvester_t(d__ - 1) ** 2
    allowed = {enlarged_sylvester_ws(d__)}
    if d__ == 3:
        allowed.add(WeightSystem((3, 1, 1, 1)))
    observed, extremals = _argmax(records, lambda rec: rec.volume)
    tops = [rec for rec in records if rec.volume == observed]
    unique = all(rec.lam == rec.m and rec.weights in allowed for rec in tops)
    return TheoremVerdict("volume", d__, bound, observed,
                          observed <= bound and (observed < bound or unique), unique,
                          extremals)


def _record_violations(rec, by_form):                               #pylint: disable=too-many-branches
    problems = []
    simplex = rec.simplex
    dual = sx.dual_lattice_simplex(simplex)
    q_p = sx.weight_system_of(simplex)
    q_dual = sx.weight_system_of(dual)
    lam_dual = sx.factor_of(dual)
    scale = m_of(q_p)

    if m_of(rec.weights).denominator != 1:
        problems.append("m not integral")
    if reduce(q_dual) != rec.weights:
        problems.append("dual has another reduced weight system")
    if q_dual.qs != tuple(scale * q for q in q_p.qs):
        problems.append("dual weights are not m * Q_P")
    if rec.lam * lam_dual != rec.m:
        problems.append("lambda * lambda* != m")
    if rec.volume > rec.m * rec.weights.total:
        problems.append("volume above Vol(S_Q)")
    if (rec.volume == rec.m * rec.weights.total) != (rec.lam == rec.m):
        problems.append("Vol(S_Q) attained off the lambda = m class")
    if rec.volume * sx.volume(dual) != rec.partition.product:
        problems.append("Vol(P) Vol(P*) != product of the partition")
    if rec.points > rec.d + rec.volume:
        problems.append("Blichfeldt bound")
    if rec.d == 3 and 2 * rec.points != rec.volume + 6:
        problems.append("points != Vol/2 + 3")
    dual_form = sx.canonical_form(dual)
    if sx.canonical_form(sx.dual_lattice_simplex(dual)) != rec.vertices:
        problems.append("dual of the dual is another class")
    if (dual_form == rec.vertices) != rec.self_dual:
        problems.append("selfDual flag")
    if by_form is not None:
        partner = by_form.get(dual_form)
        if partner is None or partner.lam != rec.m // rec.lam:
            problems.append("dual class missing or with the wrong factor")
    if rec.lam == rec.m:
        ks = rec.partition.ks
        expected = sorted(math.gcd(ks[i], ks[j]) + 1 for i, j in pairs(ks))
        if sx.edge_lattice_counts(simplex).multiset() != expected:
            problems.append("edge counts differ from gcd(k_i, k_j) + 1")
    return problems


def verify_record_properties(records, require_closure=True):
    """
    Per-record consistency between a class and its dual: weight
    scaling, the factor chain, the volume chain, the Blichfeldt bound,
    the d = 3 point formula and the edge/gcd law on S_Q classes. With
    ``require_closure`` the dual class of every record must be present.
    """
    by_form = {rec.vertices: rec for rec in records} if require_closure else None
    violations = []
    for rec in records:
        for problem in _record_violations(rec, by_form):
            violations.append((problem, rec))
    d__ = records[0].d if records else None
    return TheoremVerdict("properties", d__, 0, len(violations), not violations, True,
                          [rec.vertices for _, rec in violations[:5]],
                          {"records": len(records),
                           "violations": [[problem, str(rec.weights), str(rec.lam)]
                                          for problem, rec in violations[:20]]})


def verify_weight_bound(d__, **kwargs):
    """ ``|Q| <= t_d`` over every reflexive weight system, only Q_d attains it """
    bound = sylvester_t(d__)
    best, extremals, count = 0, [], 0
    for q__ in reflexive_weight_systems(d__, **kwargs):
        count += 1
        if q__.total > best:
            best, extremals = q__.total, [q__]
        elif q__.total == best:
            extremals.append(q__)
    unique = [q.qs for q in extremals] == [sylvester_ws(d__).qs]
    return TheoremVerdict("weights", d__, bound, best, best == bound and unique, unique,
                          [q.qs for q in extremals], {"count": count})


def verify_kprop(n__, **kwargs):
    """
    The three unit-partition bounds over every partition of length n,
    together with the reciprocal-chain and largest-denominator sweeps;
    ``d`` of the verdict is ``n - 1``.
    """
    sweep = kprop_sweep(n__, **kwargs)
    chain = chain_sweep(n__, **kwargs)
    curtiss = curtiss_corollary_sweep(n__, **kwargs)
    t_d = sylvester_t(n__ - 1)
    details = dict(sweep.details)
    details["count"] = sweep.count
    details["chain"] = chain.holds
    details["curtiss"] = curtiss.holds
    if sweep.counterexample is not None:
        details["counterexample"] = sweep.counterexample.to_json()
    return TheoremVerdict("kprop", n__ - 1, t_d * t_d, None,
                          sweep.holds and chain.holds and curtiss.holds, sweep.holds,
                          [p.ks for p in sweep.extremals], details)


def verify_all(d__, records, **kwargs):
    """ every verdict that applies in dimension d """
    verdicts = [verify_theorem_A(d__, records),
                verify_theorem_B(d__, records),
                verify_theorem_C(d__, records)]
    if d__ >= 3:
        verdicts.append(verify_corollary_bracket(d__, records))
        verdicts.append(verify_volume_bound(d__, records))
    verdicts.append(verify_weight_bound(d__, **kwargs))
    verdicts.append(verify_kprop(d__ + 1, **kwargs))
    verdicts.append(verify_record_properties(records))
    return verdicts
